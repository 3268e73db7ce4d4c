"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""
import unittest
from fractions import Fraction

from synthesis.exceptions import ClosednessViolation, NoSuccessor, NotEnumerable, DepthMismatch, NotOnChain, \
    SearchBudgetExceeded
from synthesis.forms import Alphabet, Form
from synthesis.foundation import SelectionRule, FoundationHandle, Cover, chain_prefix, fundamental_neighbourhood, canonical_cover, \
    refines, complete, point_passes_through, rule_relation, enumerate_rules, condition_cover
from synthesis.reals import from_rational, sqrt2_minus_one
from synthesis.relations import cone
from synthesis.systems import naturals_system, decimal_system, dyadic_system, rational_interval_system, \
    successor_rule, constant_digit_rule, interval_of, numeral


class TestChainPrefix(unittest.TestCase):
    def test_naturals(self):
        self.assertEqual([f.text for f in chain_prefix(successor_rule(), 5).forms], ['0', '1', '2', '3', '4', '5'])

    def test_constant_digit(self):
        self.assertEqual([f.text for f in chain_prefix(constant_digit_rule(3), 3).forms],
                         ['0.', '0.3', '0.33', '0.333'])

    def test_one_third_nests(self):
        prefix = chain_prefix(from_rational(Fraction(1, 3)).rule, 4)
        self.assertEqual(len(prefix), 5)
        for f in prefix.forms:
            self.assertTrue(interval_of(f).contains(Fraction(1, 3)))

    def test_prefixes_extend(self):
        rule = constant_digit_rule(7)
        self.assertTrue(chain_prefix(rule, 2).is_prefix_of(chain_prefix(rule, 6)))

    def test_stall_is_closedness_violation(self):
        decimal = decimal_system()
        rule = SelectionRule(decimal.root, lambda x: x.extend('1') if len(x) < 3 else None, decimal.relation,
                             label='stops')
        with self.assertRaises(ClosednessViolation):
            chain_prefix(rule, 5)

    def test_non_successor_is_closedness_violation(self):
        decimal = decimal_system()
        rule = SelectionRule(decimal.root, lambda x: x.extend('1', '2'), decimal.relation, label='jumps')
        with self.assertRaises(ClosednessViolation):
            chain_prefix(rule, 1)

    def test_terminal_chain(self):
        apex, r = cone('g', [Form(Alphabet('letters', ('a', 'b')), ('a',))])
        rule = SelectionRule(apex, lambda x: (r.successors(x) or (None,))[0], r, label='cone')
        prefix = chain_prefix(rule, 5)
        self.assertTrue(prefix.terminal)
        self.assertEqual([f.text for f in prefix.forms], ['g', 'a'])
        with self.assertRaises(NoSuccessor):
            fundamental_neighbourhood(rule, 3)


class TestFundamentalNeighbourhood(unittest.TestCase):
    def test_naturals(self):
        self.assertEqual(fundamental_neighbourhood(successor_rule(), 3).text, '3')

    def test_root(self):
        self.assertEqual(fundamental_neighbourhood(constant_digit_rule(4), 0), decimal_system().root)

    def test_one_third_width(self):
        iv = interval_of(fundamental_neighbourhood(from_rational(Fraction(1, 3)).rule, 10))
        self.assertTrue(iv.contains(Fraction(1, 3)))
        self.assertLessEqual(iv.width, Fraction(2, 2 ** 10))

    def test_chains_nest_to_depth_64(self):
        for x in (from_rational(Fraction(1, 3)), from_rational(Fraction(-5, 7)), sqrt2_minus_one()):
            previous = interval_of(fundamental_neighbourhood(x.rule, 0))
            for n in range(1, 65):
                current = interval_of(fundamental_neighbourhood(x.rule, n))
                self.assertTrue(current.within_closure_of(previous))
                self.assertEqual(current.width, previous.width / 2)
                previous = current
        self.assertTrue(interval_of(fundamental_neighbourhood(from_rational(Fraction(1, 3)).rule, 64)).contains(
            Fraction(1, 3)))


class TestCovers(unittest.TestCase):
    def setUp(self):
        self.decimal = decimal_system()
        self.h = self.decimal.handle()

    def test_decimal_counts(self):
        for k in range(4):
            self.assertEqual(len(canonical_cover(self.h, k)), 10 ** k)

    def test_depth_zero(self):
        self.assertEqual(canonical_cover(self.h, 0).parts, (self.decimal.root,))

    def test_rational_not_enumerable(self):
        with self.assertRaises(NotEnumerable):
            canonical_cover(rational_interval_system().handle(), 1)

    def test_budget(self):
        with self.assertRaises(SearchBudgetExceeded):
            canonical_cover(self.h, 3, budget=500)

    def test_dyadic_counts(self):
        q = dyadic_system()
        for k in range(6):
            self.assertEqual(len(canonical_cover(q.handle(), k)), 2 ** (k + 1) - 1)

    def test_refines(self):
        covers = [canonical_cover(self.h, k) for k in range(4)]
        for k in range(3):
            self.assertTrue(refines(covers[k + 1], covers[k]))
        self.assertTrue(refines(covers[2], covers[2]))
        self.assertFalse(refines(covers[1], Cover(self.decimal.root, 1, covers[1].parts[:3], self.decimal.relation)))

    def test_refinement_is_directional(self):
        partial = Cover(self.decimal.root, 1, canonical_cover(self.h, 1).parts[:4], self.decimal.relation)
        self.assertTrue(refines(partial, canonical_cover(self.h, 0)))
        self.assertFalse(complete(partial, self.h))
        self.assertTrue(complete(canonical_cover(self.h, 1), self.h))

    def test_depth_mismatch(self):
        with self.assertRaises(DepthMismatch):
            refines(canonical_cover(self.h, 1), canonical_cover(self.h, 2))

    def test_dyadic_refines(self):
        q = dyadic_system()
        self.assertTrue(refines(canonical_cover(q.handle(), 4), canonical_cover(q.handle(), 2)))

    def test_hand_built_covers_need_a_handle(self):
        parts = canonical_cover(self.h, 2).parts[:5]
        fine, coarse = Cover(self.decimal.root, 2, parts), Cover(self.decimal.root, 0, (self.decimal.root,))
        with self.assertRaises(NotEnumerable):
            refines(fine, coarse)
        self.assertTrue(refines(fine, coarse, h=self.h))
        stray = Cover(self.decimal.root, 2, (self.decimal.parse('0.25'),))
        self.assertFalse(refines(stray, Cover(self.decimal.root, 1, (self.decimal.parse('0.1'),)), h=self.h))


class TestPoints(unittest.TestCase):
    def test_digit_rule(self):
        cover = canonical_cover(decimal_system().handle(), 2)
        self.assertEqual(point_passes_through(constant_digit_rule(3), cover).text, '0.33')

    def test_naturals(self):
        cover = canonical_cover(naturals_system().handle(), 7)
        self.assertEqual(point_passes_through(successor_rule(), cover).text, '7')

    def test_one_third(self):
        rule = from_rational(Fraction(1, 3)).rule
        cover = canonical_cover(dyadic_system().handle(), 5)
        self.assertEqual(point_passes_through(rule, cover), chain_prefix(rule, 5).forms[5])

    def test_every_rule_meets_one_part(self):
        for k in range(4):
            cover = canonical_cover(decimal_system().handle(), k)
            for digit in range(10):
                chain = chain_prefix(constant_digit_rule(digit), k).forms
                self.assertEqual(sum(1 for p in cover.parts if p in chain), 1)

    def test_wrong_base(self):
        cover = canonical_cover(decimal_system().handle(decimal_system().parse('0.5')), 1)
        with self.assertRaises(NotOnChain):
            point_passes_through(constant_digit_rule(3), cover)

    def test_leaves_cover(self):
        cover = Cover(decimal_system().root, 1, (decimal_system().parse('0.1'),), decimal_system().relation)
        with self.assertRaises(NotOnChain):
            point_passes_through(constant_digit_rule(3), cover)


class TestRules(unittest.TestCase):
    def test_naturals_have_a_unique_chain(self):
        s = naturals_system()
        for depth in range(101):
            rules = enumerate_rules(s.relation, s.root, depth)
            self.assertEqual(len(rules), 1)
        self.assertEqual(fundamental_neighbourhood(rules[0], 100).text, '100')

    def test_decimal_rules(self):
        d = decimal_system()
        rules = enumerate_rules(d.relation, d.root, 2)
        self.assertEqual(len(rules), 100)
        self.assertEqual(len({chain_prefix(r, 2).forms for r in rules}), 100)

    def test_rule_relation(self):
        r = rule_relation(successor_rule(), 3)
        self.assertTrue(r(numeral(2), numeral(3)))
        self.assertFalse(r(numeral(3), numeral(4)))
        self.assertEqual(r.successors(numeral(0)), (numeral(1),))


class TestConditionCover(unittest.TestCase):
    def test_squares_close(self):
        q = dyadic_system()

        def close(f):
            iv = interval_of(f)
            return (iv.hi + 1) ** 2 - (iv.lo + 1) ** 2 < Fraction(1, 4)

        c = condition_cover(q.handle(), close, max_depth=8, label='squares')
        self.assertTrue(all(close(f) for f, _ in c.parts))
        self.assertEqual(c.depth, 5)
        # parts near -1 are reached before those near 1
        self.assertLess(min(d for _, d in c.parts), c.depth)

    def test_condition_never_met(self):
        with self.assertRaises(SearchBudgetExceeded):
            condition_cover(decimal_system().handle(), lambda f: False, max_depth=2)

    def test_empty_cone(self):
        apex, r = cone('g', [])
        c = condition_cover(FoundationHandle(r, apex), lambda f: False, max_depth=3)
        self.assertEqual(c.parts, ())
        self.assertEqual(c.depth, 0)


if __name__ == '__main__':
    unittest.main()
