"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""
import unittest
from itertools import product

import numpy as np

from synthesis.exceptions import UnknownAtom, ParseError, IllFormed, SearchBudgetExceeded, SizeBudgetExceeded
from synthesis.modal_topology import KripkeFrame, frame_from_json, frame_to_json, Prop, Neg, Conj, Disj, Impl, \
    Box, Dia, T_AXIOM, FOUR_AXIOM, parse_modal, modal_eval, truth_sets, valid_on_frame, validity_to_json, \
    s4_correspondence, all_frames, frame_sweep, closure, kuratowski_check, closure_sweep

ONE_STEP = KripkeFrame(('1', '2'), frozenset({('1', '2')}))
THREE_CHAIN = KripkeFrame(('1', '2', '3'), frozenset({('1', '2'), ('2', '3')}))
PREORDER = KripkeFrame.from_matrix(np.triu(np.ones((3, 3), dtype=bool)))


def _random_modal(rng, atoms, size=4):
    roll = int(rng.integers(7)) if size > 0 else 0
    if roll == 0:
        return Prop(atoms[int(rng.integers(len(atoms)))])
    if roll == 1:
        return Neg(_random_modal(rng, atoms, size - 1))
    if roll == 2:
        return Box(_random_modal(rng, atoms, size - 1))
    if roll == 3:
        return Dia(_random_modal(rng, atoms, size - 1))
    left, right = _random_modal(rng, atoms, size - 1), _random_modal(rng, atoms, size - 1)
    return (Conj, Disj, Impl)[roll - 4](left, right)


class TestFormulas(unittest.TestCase):
    def test_parse(self):
        self.assertEqual(parse_modal('dia dia p -> dia p'), FOUR_AXIOM)
        self.assertEqual(parse_modal('□p → p'), T_AXIOM)
        self.assertEqual(parse_modal('p -> q -> r'), Impl(Prop('p'), Impl(Prop('q'), Prop('r'))))
        self.assertEqual(parse_modal('~p & q | r'), Disj(Conj(Neg(Prop('p')), Prop('q')), Prop('r')))

    def test_parse_errors(self):
        for text in ('p ->', '(p', 'p q', 'p $ q'):
            with self.assertRaises(ParseError):
                parse_modal(text)

    def test_printing_round_trip(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            phi = _random_modal(rng, ['p', 'q'])
            self.assertEqual(parse_modal(str(phi)), phi)


class TestEvaluation(unittest.TestCase):
    def test_one_step(self):
        val = {'p': ['2']}
        self.assertTrue(modal_eval(ONE_STEP, val, '1', parse_modal('dia p')))
        self.assertTrue(modal_eval(ONE_STEP, val, '1', parse_modal('box p')))

    def test_dead_end(self):
        val = {'p': []}
        self.assertTrue(modal_eval(ONE_STEP, val, '2', parse_modal('box p')))
        self.assertFalse(modal_eval(ONE_STEP, val, '2', parse_modal('dia p')))

    def test_unknown_atom(self):
        with self.assertRaises(UnknownAtom):
            modal_eval(ONE_STEP, {'p': ['1']}, '1', parse_modal('p & q'))

    def test_unknown_world(self):
        with self.assertRaises(IllFormed):
            modal_eval(ONE_STEP, {'p': ['3']}, '1', parse_modal('p'))
        with self.assertRaises(IllFormed):
            modal_eval(ONE_STEP, {'p': []}, '3', parse_modal('p'))

    def test_truth_sets(self):
        self.assertEqual(truth_sets(THREE_CHAIN, {'p': ['3']}, parse_modal('dia dia p')), ['1'])

    def test_duality(self):
        rng = np.random.default_rng(42)
        for _ in range(30):
            n = int(rng.integers(1, 6))
            f = KripkeFrame.from_matrix(rng.random((n, n)) < 0.4)
            val = {a: [w for w in f.worlds if rng.random() < 0.5] for a in ('p', 'q')}
            phi = _random_modal(rng, ['p', 'q'])
            for w in f.worlds:
                self.assertEqual(modal_eval(f, val, w, Box(phi)), not modal_eval(f, val, w, Dia(Neg(phi))))


class TestValidity(unittest.TestCase):
    def test_four_on_preorder(self):
        self.assertTrue(valid_on_frame(PREORDER, FOUR_AXIOM).valid)

    def test_four_counterexample(self):
        result = valid_on_frame(THREE_CHAIN, FOUR_AXIOM)
        self.assertFalse(result.valid)
        self.assertEqual(result.world, '1')
        self.assertEqual(result.valuation, {'p': ['3']})
        self.assertEqual(validity_to_json(result),
                         {"valid": False, "counterexample": {"valuation": {"p": ["3"]}, "world": "1"}})

    def test_tautology(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            f = KripkeFrame.from_matrix(rng.random((4, 4)) < 0.5)
            self.assertTrue(valid_on_frame(f, parse_modal('p -> p')).valid)

    def test_budget(self):
        f = KripkeFrame(tuple(str(i) for i in range(21)), frozenset())
        with self.assertRaises(SearchBudgetExceeded):
            valid_on_frame(f, T_AXIOM)


class TestS4(unittest.TestCase):
    def test_preorder(self):
        r = s4_correspondence(PREORDER)
        self.assertTrue(r.is_reflexive and r.is_transitive and r.t_valid and r.four_valid)

    def test_irreflexive(self):
        r = s4_correspondence(THREE_CHAIN)
        self.assertFalse(r.is_reflexive)
        self.assertFalse(r.t_valid)

    def test_sweep(self):
        df = frame_sweep(3)
        self.assertEqual(len(df), 512)
        self.assertTrue((df.reflexive == df.t_valid).all())
        self.assertTrue((df.transitive == df.four_valid).all())
        self.assertEqual(int(df.reflexive.sum()), 64)
        self.assertEqual(int(df.transitive.sum()), 171)

    def test_small_sweeps(self):
        for n in (1, 2):
            df = frame_sweep(n)
            self.assertEqual(len(df), 2 ** (n * n))
            self.assertTrue((df.reflexive == df.t_valid).all())


class TestClosure(unittest.TestCase):
    def test_laws(self):
        self.assertEqual(closure(THREE_CHAIN, []), frozenset())
        self.assertEqual(closure(THREE_CHAIN, ['3']), {'2', '3'})
        self.assertEqual(closure(THREE_CHAIN, ['2', '3']), {'1', '2', '3'})

    def test_idempotent_on_preorder(self):
        f = KripkeFrame.from_matrix(np.triu(np.ones((4, 4), dtype=bool)))
        for bits in product([False, True], repeat=4):
            a = f.worlds_of(np.array(bits))
            self.assertEqual(closure(f, closure(f, a)), closure(f, a))

    def test_three_chain_fails_on_three(self):
        r = kuratowski_check(THREE_CHAIN)
        self.assertFalse(r.idempotent)
        self.assertEqual(r.idempotency_failure, ('3',))
        self.assertTrue(r.empty and r.extensive and r.additive)

    def test_symmetric_pair(self):
        # 1 <-> 2 is not transitive, yet its closure is idempotent
        f = KripkeFrame(('1', '2'), frozenset({('1', '2'), ('2', '1')}))
        r = kuratowski_check(f)
        self.assertFalse(r.is_transitive)
        self.assertTrue(r.reflexive_closure_transitive)
        self.assertTrue(r.idempotent)

    def test_transitive_frame(self):
        r = kuratowski_check(KripkeFrame.from_matrix(np.triu(np.ones((5, 5), dtype=bool), 1)))
        self.assertTrue(r.is_transitive)
        self.assertTrue(r.idempotent)
        self.assertIsNone(r.idempotency_failure)

    def test_sweep(self):
        for n in (1, 2, 3):
            df = closure_sweep(n)
            self.assertEqual(len(df), 2 ** (n * n))
            self.assertTrue((df['empty'] & df['extensive'] & df['additive']).all())
            self.assertTrue((df.idempotent == df.reflexive_closure_transitive).all())
            reflexive = df[df.reflexive]
            self.assertTrue((reflexive.idempotent == reflexive.transitive).all())

    def test_reflexive_four_world_frames(self):
        eye = np.eye(4, dtype=bool)
        off = np.argwhere(~eye)
        for code in range(2 ** len(off)):
            m = eye.copy()
            m[tuple(off[((code >> np.arange(len(off))) & 1).astype(bool)].T)] = True
            r = kuratowski_check(KripkeFrame.from_matrix(m))
            self.assertEqual(r.idempotent, r.is_transitive)

    def test_size_budget(self):
        f = KripkeFrame(tuple(str(i) for i in range(13)), frozenset())
        with self.assertRaises(SizeBudgetExceeded):
            kuratowski_check(f)


class TestFrames(unittest.TestCase):
    def test_json(self):
        f = frame_from_json({"worlds": ["1", "2"], "access": [["1", "2"]]})
        self.assertEqual(f, ONE_STEP)
        self.assertEqual(frame_to_json(f), {"worlds": ["1", "2"], "access": [["1", "2"]]})

    def test_bad_json(self):
        with self.assertRaises(ParseError):
            frame_from_json({"access": []})
        with self.assertRaises(IllFormed):
            frame_from_json({"worlds": ["1"], "access": [["1", "2"]]})

    def test_all_frames(self):
        self.assertEqual(len(list(all_frames(2))), 16)
        self.assertTrue(np.array_equal(list(all_frames(2))[-1].matrix, np.ones((2, 2), dtype=bool)))


if __name__ == '__main__':
    unittest.main()
