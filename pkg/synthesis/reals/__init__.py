"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

from ._reals import ComputableReal, Less, Greater, IndistinguishableAt, from_rational, sqrt2_minus_one, locate, \
    compare, interval_to_json, comparison_to_json, real_by_name, build_rule

__all__ = ['ComputableReal', 'Less', 'Greater', 'IndistinguishableAt', 'from_rational', 'sqrt2_minus_one', 'locate',
           'compare', 'interval_to_json', 'comparison_to_json', 'real_by_name', 'build_rule']
