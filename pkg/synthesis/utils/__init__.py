"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

from ._utils import elapsed_timer, load_config, format_fraction, parse_fraction, dump_json, read_data_file, \
    DEFAULTS, NODE_BUDGET, MAX_CONSTITUENT_DEPTH, ENUMERATION_BUDGET, VALUATION_BUDGET, KURATOWSKI_MAX_WORLDS, \
    FG_SATURATION_BUDGET

__all__ = ['elapsed_timer', 'load_config', 'format_fraction', 'parse_fraction', 'dump_json', 'read_data_file',
           'DEFAULTS', 'NODE_BUDGET', 'MAX_CONSTITUENT_DEPTH', 'ENUMERATION_BUDGET', 'VALUATION_BUDGET',
           'KURATOWSKI_MAX_WORLDS', 'FG_SATURATION_BUDGET']
