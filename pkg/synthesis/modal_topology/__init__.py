"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

from ._kripke import KripkeFrame, frame_from_json, frame_to_json, is_reflexive, is_transitive, Prop, Neg, Conj, \
    Disj, Impl, Box, Dia, ModalFormula, T_AXIOM, FOUR_AXIOM, atoms_of, parse_modal, modal_eval, truth_sets, \
    Validity, valid_on_frame, validity_to_json, S4Report, s4_correspondence, all_frames, frame_sweep, closure, \
    KuratowskiReport, kuratowski_check, closure_sweep
from ._covers import CoverStructure, cover_structure_from_json, cover_structure_to_json, derive, AxiomReport, \
    fg_axiom_check, decimal_cover_structure

__all__ = ['KripkeFrame', 'frame_from_json', 'frame_to_json', 'is_reflexive', 'is_transitive', 'Prop', 'Neg', 'Conj',
           'Disj', 'Impl', 'Box', 'Dia', 'ModalFormula', 'T_AXIOM', 'FOUR_AXIOM', 'atoms_of', 'parse_modal',
           'modal_eval', 'truth_sets', 'Validity', 'valid_on_frame', 'validity_to_json', 'S4Report',
           's4_correspondence', 'all_frames', 'frame_sweep', 'closure', 'KuratowskiReport', 'kuratowski_check',
           'closure_sweep', 'CoverStructure', 'cover_structure_from_json', 'cover_structure_to_json', 'derive',
           'AxiomReport', 'fg_axiom_check', 'decimal_cover_structure']
