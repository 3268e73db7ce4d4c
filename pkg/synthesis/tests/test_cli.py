"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""
import json
import os
import unittest
from fractions import Fraction

import pkg_resources
from click.testing import CliRunner

from synthesis.__main__ import cli


def _data(name):
    return pkg_resources.resource_filename('synthesis.tests', os.path.join('data', name))


class TestCli(unittest.TestCase):
    def setUp(self):
        self.runner = CliRunner()

    def invoke(self, *args, exit_code=0):
        result = self.runner.invoke(cli, list(args))
        self.assertEqual(result.exit_code, exit_code, result.output)
        return json.loads(result.output) if exit_code != 2 else result


class TestForms(TestCli):
    def test_star(self):
        out = self.invoke('star', '--system', 'naturals', '--from', '0', '--to', '5', '--max-depth', '5')
        self.assertEqual(out, {"related": True})

    def test_star_dyadic_shorthand(self):
        out = self.invoke('star', '--system', 'dyadic', '--from', ']-1,1[', '--to', 'D(2,1)', '--max-depth', '3')
        self.assertEqual(out, {"related": True})

    def test_star_in_configured_cone(self):
        out = self.invoke('--config', _data('config.yaml'), 'star', '--system', 'cone:g', '--from', 'g', '--to', 'ab',
                          '--max-depth', '1')
        self.assertEqual(out, {"related": True})

    def test_paths(self):
        out = self.invoke('paths', '--system', 'naturals', '--from', '0', '-n', '3')
        self.assertEqual(out, {"count": 1, "paths": [["1", "2", "3"]]})

    def test_cover(self):
        out = self.invoke('cover', '--system', 'decimal', '--base', '0.', '--depth', '2')
        self.assertEqual(out['count'], 100)
        self.assertEqual(out['parts'][:2], ['0.00', '0.01'])

    def test_refine(self):
        out = self.invoke('refine', '--system', 'dyadic', '--fine', '3', '--coarse', '1')
        self.assertEqual(out, {"refines": True})

    def test_chain(self):
        out = self.invoke('chain', '--rule', 'digit:3', '--depth', '3')
        self.assertEqual(out, {"rule": "digit-3", "forms": ["0.", "0.3", "0.33", "0.333"], "terminal": False})
        out = self.invoke('chain', '--rule', '{"kind": "target-rational", "p": 1, "q": 3}', '--depth', '2')
        self.assertEqual(out['forms'][0], ']-1,1[')


class TestReals(TestCli):
    def test_locate(self):
        out = self.invoke('real', 'locate', '--name', 'sqrt2m1', '--precision', '20')
        self.assertLessEqual(Fraction(out['width']), Fraction(1, 2 ** 20))
        self.assertLess((Fraction(out['lo']) + 1) ** 2, 2)
        self.assertGreater((Fraction(out['hi']) + 1) ** 2, 2)

    def test_compare(self):
        out = self.invoke('real', 'compare', '-x', 'sqrt2m1', '-y', 'rational:41/100', '-k', '10')
        self.assertEqual(out, {"result": "Greater"})

    def test_out_of_range(self):
        out = self.invoke('real', 'locate', '--name', '3/2', '-k', '4', exit_code=1)
        self.assertEqual(out['error'], 'OutOfRange')


class TestConstituents(TestCli):
    def test_of(self):
        out = self.invoke('constituent', 'of', '--model', _data('model.json'), '-e', 'a', '-d', '1')
        self.assertEqual(out['depth'], 1)
        self.assertEqual(out['attributive'], [{"atom": "P(x1)", "sign": "+"}, {"atom": "R(x1,x1)", "sign": "-"}])
        self.assertEqual(len(out['branches']), 3)

    def test_enum(self):
        out = self.invoke('constituent', 'enum', '-v', 'P/1', '-d', '1')
        self.assertEqual(out['count'], 8)

    def test_enum_budget(self):
        out = self.invoke('constituent', 'enum', '-v', 'P/1,R/2', '-d', '1', exit_code=1)
        self.assertEqual(out['error'], 'EnumerationBudgetExceeded')

    def test_chain(self):
        out = self.invoke('constituent', 'chain', '--model', _data('model.json'), '-e', 'b', '-d', '2')
        self.assertEqual(len(out['chain']), 3)
        self.assertTrue(out['chain'][0].startswith('0['))

    def test_depth_budget_from_config(self):
        out = self.invoke('--config', _data('config.yaml'), 'constituent', 'chain', '--model', _data('model.json'),
                          '-e', 'b', '-d', '3', exit_code=1)
        self.assertEqual(out['error'], 'DepthBudgetExceeded')


class TestModal(TestCli):
    def test_eval(self):
        out = self.invoke('modal', 'eval', '--frame', _data('three_chain.json'), '--valuation', '{"p": ["3"]}',
                          '--world', '2', '--formula', 'dia p')
        self.assertEqual(out, {"holds": True})

    def test_valid(self):
        out = self.invoke('modal', 'valid', '--frame', _data('three_chain.json'), '--formula', 'dia dia p -> dia p')
        self.assertEqual(out, {"valid": False, "counterexample": {"valuation": {"p": ["3"]}, "world": "1"}})

    def test_s4(self):
        out = self.invoke('s4', '--frame', _data('preorder.json'))
        self.assertEqual(out, {"is_reflexive": True, "is_transitive": True, "t_valid": True, "four_valid": True})

    def test_kuratowski(self):
        out = self.invoke('kuratowski', '--frame', _data('three_chain.json'))
        self.assertFalse(out['idempotent'])
        self.assertEqual(out['idempotency_failure'], ['3'])

    def test_unknown_atom(self):
        out = self.invoke('modal', 'eval', '--frame', _data('three_chain.json'), '--world', '1', '--formula', 'q',
                          exit_code=1)
        self.assertEqual(out['error'], 'UnknownAtom')


class TestCovers(TestCli):
    def test_diamond(self):
        out = self.invoke('ftop', 'check', '--covers', _data('diamond.json'))
        self.assertEqual(out['A3'], 'not applicable')
        self.assertEqual(out['meet_undefined'], [['a', 'b']])

    def test_strict(self):
        out = self.invoke('ftop', 'check', '--covers', _data('diamond.json'), '--strict', exit_code=1)
        self.assertEqual(out['error'], 'MeetUndefined')

    def test_decimal(self):
        out = self.invoke('ftop', 'check', '--decimal-depth', '2')
        self.assertTrue(out['A1'] and out['A2'] and out['A3'] and out['A4'])

    def test_needs_one_source(self):
        self.invoke('ftop', 'check', exit_code=2)


class TestSurface(TestCli):
    def test_russell(self):
        out = self.invoke('russell', 'demo')
        self.assertEqual(out['diagonal'], '¬xRx')
        self.assertEqual(out['self_application']['error'], 'StratificationError')
        self.assertTrue(out['unrelated']['applied'])
        self.assertEqual(out['unrelated']['relation'], '⊤')

    def test_unknown_system(self):
        out = self.invoke('cover', '--system', 'hyperreal', '--depth', '1', exit_code=1)
        self.assertEqual(out['error'], 'UnknownSystem')

    def test_bad_config(self):
        out = self.invoke('--config', _data('bad_config.yaml'), 'russell', 'demo', exit_code=1)
        self.assertEqual(out['error'], 'ConfigError')

    def test_usage(self):
        self.invoke('star', '--system', 'naturals', exit_code=2)

    def test_deterministic(self):
        args = ['--log', 'debug', 'cover', '--system', 'dyadic', '--depth', '3']
        first, second = self.runner.invoke(cli, args), self.runner.invoke(cli, args)
        self.assertEqual(first.output, second.output)


if __name__ == '__main__':
    unittest.main()
