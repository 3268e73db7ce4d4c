"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

from ._relations import ExtensionRelation, RelationalNeighbourhood, Path, FiniteCarrier, stratified_apply, \
    neighbourhood_contains, transitive_step, power, related_star, enumerate_paths, relation_matrix, is_subrelation, \
    is_projective_chain, is_closed_chain, cone, chain_cone, path_alphabet, path_form, path_steps, path_relation, \
    trivial_relation

__all__ = ['ExtensionRelation', 'RelationalNeighbourhood', 'Path', 'FiniteCarrier', 'stratified_apply',
           'neighbourhood_contains', 'transitive_step', 'power', 'related_star', 'enumerate_paths',
           'relation_matrix', 'is_subrelation', 'is_projective_chain', 'is_closed_chain', 'cone', 'chain_cone',
           'path_alphabet', 'path_form', 'path_steps', 'path_relation', 'trivial_relation']
