"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""
import unittest
from fractions import Fraction

import numpy as np

from synthesis.exceptions import IllFormed, ParseError, UnknownSystem, ConfigError
from synthesis.foundation import canonical_cover
from synthesis.systems import RationalInterval, DyadicInterval, INTERVAL_LANGUAGE, interval_of, interval_form, \
    parse_interval_text, dyadic_depth, dyadic_children, numeral, naturals_system, decimal_system, dyadic_system, \
    rational_interval_system, holds_shrinking, trivial_system, constant_digit_rule, alphabets, get_system, \
    system_names
from synthesis.utils import DEFAULTS

CONE_CONFIG = dict(DEFAULTS, alphabets={'letters': ['a', 'b', 'c']},
                   relations=[{'apex': 'g', 'alphabet': 'letters', 'members': ['a', 'ab', 'c']}])


class TestIntervals(unittest.TestCase):
    def test_empty_interval(self):
        with self.assertRaises(IllFormed):
            RationalInterval(1, 1)

    def test_encoding(self):
        self.assertEqual(interval_form('1/4', '1/2').text, ']1/4,1/2[')
        self.assertEqual(interval_of(interval_form(-1, 1)), RationalInterval(-1, 1))

    def test_dyadic_shorthand(self):
        self.assertEqual(parse_interval_text('D(2,1)'), RationalInterval(Fraction(1, 4), Fraction(1, 2)))
        self.assertEqual(parse_interval_text('D(0,-1)'), RationalInterval(-1, 0))

    def test_dyadic_shorthand_out_of_range(self):
        with self.assertRaises(IllFormed):
            DyadicInterval(1, 2)

    def test_not_an_interval(self):
        for text in ('[0,1]', ']0;1[', ']1/0,1['):
            with self.assertRaises(ParseError):
                parse_interval_text(text)

    def test_language_wants_canonical_text(self):
        self.assertFalse(INTERVAL_LANGUAGE.well_formed(tuple(']2/4,1[')))
        self.assertTrue(INTERVAL_LANGUAGE.well_formed(tuple(']1/2,1[')))

    def test_strict_inclusion(self):
        a = RationalInterval(0, 1)
        self.assertTrue(a.holds(RationalInterval(Fraction(1, 4), Fraction(1, 2))))
        self.assertFalse(a.holds(RationalInterval(0, Fraction(1, 2))))

    def test_shrinking(self):
        self.assertTrue(holds_shrinking(interval_form(0, 1), interval_form('1/8', '1/2')))
        self.assertFalse(holds_shrinking(interval_form(0, 1), interval_form('1/8', '3/4')))
        self.assertFalse(holds_shrinking(numeral(1), interval_form('1/4', '1/2')))


class TestDyadic(unittest.TestCase):
    def test_depths(self):
        self.assertEqual(dyadic_depth(RationalInterval(-1, 1)), 0)
        self.assertEqual(dyadic_depth(RationalInterval(Fraction(-1, 2), Fraction(1, 2))), 1)
        self.assertEqual(dyadic_depth(parse_interval_text('D(2,1)')), 3)
        self.assertIsNone(dyadic_depth(RationalInterval(0, Fraction(1, 3))))
        self.assertIsNone(dyadic_depth(RationalInterval(Fraction(1, 8), Fraction(5, 8))))

    def test_children(self):
        children = dyadic_children(RationalInterval(-1, 1))
        self.assertEqual([c.encode() for c in children], [']-1,0[', ']-1/2,1/2[', ']0,1['])
        for c in children:
            self.assertEqual(dyadic_depth(c), 1)

    def test_children_are_related(self):
        q = dyadic_system()
        for child in q.relation.successors(q.root):
            self.assertTrue(q.relation(q.root, child))
            for grandchild in q.relation.successors(child):
                self.assertEqual(interval_of(grandchild).width, interval_of(child).width / 2)
        self.assertFalse(q.relation(q.root, interval_form('-1/4', '1/4')))

    def test_children_match_exact_grid(self):
        q = dyadic_system()
        rng = np.random.default_rng(30)
        for _ in range(40):
            k = int(rng.integers(0, 7))
            i = int(rng.integers(-2 ** k, 2 ** k))
            parent = DyadicInterval(k, i).interval
            step = Fraction(1, 2 ** (k + 2))
            expected = {RationalInterval(4 * i * step, (4 * i + 2) * step),
                        RationalInterval((4 * i + 1) * step, (4 * i + 3) * step),
                        RationalInterval((4 * i + 2) * step, (4 * i + 4) * step)}
            self.assertEqual(set(dyadic_children(parent)), expected)
            for j in range(-2 ** (k + 2), 2 ** (k + 2) - 1):
                candidate = RationalInterval(j * step, (j + 2) * step)
                self.assertEqual(q.relation(parent.to_form(), candidate.to_form()), candidate in expected)

    def test_every_inner_point_is_well_inside_a_part(self):
        # fails within 2^-(k+1) of -1 and 1, where no part is centred closely enough
        q = dyadic_system()
        rng = np.random.default_rng(31)
        for k in range(7):
            parts = [interval_of(f) for f in canonical_cover(q.handle(), k).parts]
            edge = Fraction(1, 2 ** (k + 1))
            for _ in range(50):
                x = Fraction(int(rng.integers(-2 ** 20 + 1, 2 ** 20)), 2 ** 20)
                if not -1 + edge < x < 1 - edge:
                    continue
                self.assertTrue(any(p.contains(x) and min(x - p.lo, p.hi - x) >= p.width / 4 for p in parts))

    def test_outside_grid_has_no_successors(self):
        self.assertEqual(dyadic_system().relation.successors(interval_form(0, '1/3')), ())


class TestSystems(unittest.TestCase):
    def test_naturals(self):
        s = naturals_system()
        self.assertEqual(s.relation.successors(numeral(9)), (numeral(10),))
        self.assertFalse(s.relation(numeral(3), numeral(5)))

    def test_leading_zero_is_ill_formed(self):
        with self.assertRaises(IllFormed):
            naturals_system().parse('07')

    def test_decimal_branching(self):
        d = decimal_system()
        self.assertEqual([f.text for f in d.relation.successors(d.parse('0.4'))],
                         ['0.4%d' % i for i in range(10)])

    def test_rational_has_no_enumerator(self):
        self.assertFalse(rational_interval_system().relation.enumerable)

    def test_trivial(self):
        t = trivial_system()
        self.assertTrue(t.relation(t.parse('0.1'), t.parse('0.')))

    def test_digit_range(self):
        with self.assertRaises(ConfigError):
            constant_digit_rule(10)


class TestRegistry(unittest.TestCase):
    def test_builtin_aliases(self):
        self.assertEqual(get_system('decimal-extend').name, 'decimal')
        self.assertEqual(get_system('dyadic').relation.label, 'dyadic-refine')

    def test_unknown(self):
        with self.assertRaises(UnknownSystem):
            get_system('hyperreal')

    def test_cone_from_config(self):
        s = get_system('cone:g', CONE_CONFIG)
        self.assertEqual([f.text for f in s.relation.successors(s.root)], ['a', 'ab', 'c'])
        self.assertEqual(get_system('g', CONE_CONFIG).root, s.root)
        self.assertIn('cone:g', system_names(CONE_CONFIG))

    def test_cone_needs_members(self):
        config = dict(DEFAULTS, relations=[{'apex': 'g'}])
        with self.assertRaises(ConfigError):
            get_system('g', config)

    def test_cone_unknown_alphabet(self):
        config = dict(DEFAULTS, relations=[{'apex': 'g', 'alphabet': 'greek', 'members': []}])
        with self.assertRaises(ConfigError):
            get_system('g', config)

    def test_alphabets_cannot_shadow_builtins(self):
        with self.assertRaises(ConfigError):
            alphabets(dict(DEFAULTS, alphabets={'decimal': ['0']}))
        self.assertIn('letters', alphabets(CONE_CONFIG))


if __name__ == '__main__':
    unittest.main()
