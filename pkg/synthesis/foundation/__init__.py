"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

from ._foundation import SelectionRule, ChainPrefix, FoundationHandle, Cover, ConditionCover, chain_prefix, \
    fundamental_neighbourhood, canonical_cover, refines, complete, point_passes_through, rule_relation, path_rule, \
    enumerate_rules, condition_cover

__all__ = ['SelectionRule', 'ChainPrefix', 'FoundationHandle', 'Cover', 'ConditionCover', 'chain_prefix',
           'fundamental_neighbourhood', 'canonical_cover', 'refines', 'complete', 'point_passes_through',
           'rule_relation', 'path_rule', 'enumerate_rules', 'condition_cover']
