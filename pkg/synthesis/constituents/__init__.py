"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

from ._formula import Vocabulary, FiniteModel, model_from_json, model_to_json, Atom, Truth, Not, And, Or, Exists, \
    Forall, Formula, conjoin, disjoin, quantifier_depth, free_variables, eval_formula, parse_formula
from ._constituents import CONSTITUENT_ALPHABET, Constituent, ConstituentSystem, atom_slots, atom_formula, \
    attributive_profile, constituent_of, constituent_count, enumerate_constituents, parent, constituent_chain, \
    formula_of, constituent_to_json, decode_constituent, as_formal_system

__all__ = ['Vocabulary', 'FiniteModel', 'model_from_json', 'model_to_json', 'Atom', 'Truth', 'Not', 'And', 'Or',
           'Exists', 'Forall', 'Formula', 'conjoin', 'disjoin', 'quantifier_depth', 'free_variables', 'eval_formula',
           'parse_formula', 'CONSTITUENT_ALPHABET', 'Constituent', 'ConstituentSystem', 'atom_slots', 'atom_formula',
           'attributive_profile', 'constituent_of', 'constituent_count', 'enumerate_constituents', 'parent',
           'constituent_chain', 'formula_of', 'constituent_to_json', 'decode_constituent', 'as_formal_system']
