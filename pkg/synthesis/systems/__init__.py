"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

from ._intervals import RationalInterval, DyadicInterval, INTERVAL_ALPHABET, INTERVAL_LANGUAGE, interval_of, \
    interval_form, parse_interval_text, dyadic_depth, dyadic_children
from ._systems import FormalSystem, NATURALS_LANGUAGE, DECIMAL_LANGUAGE, RELATIONAL_ALPHABET, RELATION_SYMBOLS, \
    numeral, naturals_system, decimal_system, rational_interval_system, rational_shrink_system, holds_shrinking, \
    dyadic_system, trivial_system, relational_language, relational_system, diagonal_form, successor_rule, \
    constant_digit_rule, alphabets, cone_system, get_system, system_names

__all__ = ['RationalInterval', 'DyadicInterval', 'INTERVAL_ALPHABET', 'INTERVAL_LANGUAGE', 'interval_of',
           'interval_form', 'parse_interval_text', 'dyadic_depth', 'dyadic_children', 'FormalSystem',
           'NATURALS_LANGUAGE', 'DECIMAL_LANGUAGE', 'RELATIONAL_ALPHABET', 'RELATION_SYMBOLS', 'numeral',
           'naturals_system', 'decimal_system', 'rational_interval_system', 'rational_shrink_system',
           'holds_shrinking', 'dyadic_system', 'trivial_system', 'relational_language', 'relational_system',
           'diagonal_form', 'successor_rule', 'constant_digit_rule', 'alphabets', 'cone_system', 'get_system',
           'system_names']
