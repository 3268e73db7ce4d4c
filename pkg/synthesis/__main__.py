"""
Command-line interface: every verb prints one JSON document on stdout.

This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

import json
import logging
from functools import wraps

import click

from synthesis import __version__, logger
from synthesis.exceptions import SynthesisError, ParseError, ConfigError
from synthesis.forms import Form
from synthesis.foundation import canonical_cover, chain_prefix, refines
from synthesis.relations import related_star, enumerate_paths, stratified_apply, trivial_relation
from synthesis.systems import FormalSystem, INTERVAL_LANGUAGE, get_system, parse_interval_text, successor_rule, \
    constant_digit_rule, relational_system, relational_language, diagonal_form
from synthesis.reals import real_by_name, build_rule, locate, compare, interval_to_json, comparison_to_json
from synthesis.constituents import Vocabulary, model_from_json, constituent_of, constituent_chain, \
    enumerate_constituents, constituent_to_json
from synthesis.modal_topology import frame_from_json, parse_modal, modal_eval, valid_on_frame, validity_to_json, \
    s4_correspondence, kuratowski_check, cover_structure_from_json, decimal_cover_structure, fg_axiom_check
from synthesis.utils import load_config, dump_json, read_data_file, elapsed_timer

ROOT_COMMAND_HELP = """\
Recursive synthesis command-line interface\n
--------------------------------------
"""

CONTEXT_SETTINGS = dict(help_option_names=['-h', '--help'])


def _emit(obj):
    click.echo(dump_json(obj))


def reports_errors(f):
    """Library errors become {"error": Name, "message": ...} and exit status 1."""
    @wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except SynthesisError as e:
            logger.debug("%s: %s" % (e.name, e))
            _emit({"error": e.name, "message": str(e)})
            click.get_current_context().exit(1)
    return wrapper


def _config(ctx) -> dict:
    return ctx.obj['config']


def _form(system: FormalSystem, text: str) -> Form:
    if system.language is INTERVAL_LANGUAGE:
        return parse_interval_text(text).to_form()
    return system.parse(text)


def _rule(name: str):
    """successor, digit:D, sqrt2m1, rational:p/q, or a JSON rule specification."""
    name = name.strip()
    if name.startswith('{'):
        try:
            spec = json.loads(name)
        except ValueError:
            raise ParseError("Not a JSON rule specification: %r" % name)
        return build_rule(spec)
    if name == 'successor':
        return successor_rule()
    if name.startswith('digit:'):
        try:
            return constant_digit_rule(int(name[len('digit:'):]))
        except ValueError:
            raise ConfigError("Not a digit rule: %r" % name)
    return real_by_name(name).rule


@click.group(invoke_without_command=False, help=ROOT_COMMAND_HELP, context_settings=CONTEXT_SETTINGS)
@click.option('--log', type=click.Choice(('debug', 'info', 'warning', 'critical')), help="The log level to record.",
              default="warning")
@click.option('--config', type=click.Path(exists=True, dir_okay=False), default=None,
              help="A YAML or JSON file of budgets, alphabets and cone relations.")
@click.version_option(version=__version__)
@click.pass_context
@reports_errors
def cli(ctx, log, config):
    if log == 'debug':
        logger.setLevel(logging.DEBUG)
    elif log == 'info':
        logger.setLevel(logging.INFO)
    elif log == 'warning':
        logger.setLevel(logging.WARNING)
    else:
        logger.setLevel(logging.CRITICAL)

    ctx.obj = {'log': log, 'config': load_config(config)}


@cli.command(help="Is the second form reachable from the first within a number of extension steps?")
@click.option('-s', '--system', required=True, help="The formal system.")
@click.option('--from', 'from_', required=True, help="The starting form.")
@click.option('--to', 'to', required=True, help="The target form.")
@click.option('--max-depth', type=click.INT, required=True, help="The most extension steps to take.")
@click.pass_context
@reports_errors
def star(ctx, system, from_, to, max_depth):
    fs = get_system(system, _config(ctx))
    related = related_star(fs.relation, _form(fs, from_), _form(fs, to), max_depth,
                           budget=_config(ctx)['node_budget'])
    _emit({"related": related})


@cli.command(help="Enumerate every path of a given length from a form.")
@click.option('-s', '--system', required=True, help="The formal system.")
@click.option('--from', 'from_', required=True, help="The root form.")
@click.option('-n', '--length', type=click.INT, required=True, help="The number of steps.")
@click.pass_context
@reports_errors
def paths(ctx, system, from_, length):
    fs = get_system(system, _config(ctx))
    found = enumerate_paths(fs.relation, _form(fs, from_), length, budget=_config(ctx)['node_budget'])
    _emit({"count": len(found), "paths": [[f.text for f in p.steps] for p in found]})


@cli.command(help="The canonical cover of a base form at a depth.")
@click.option('-s', '--system', required=True, help="The formal system.")
@click.option('-b', '--base', default=None, help="The base form (the system's root by default).")
@click.option('-k', '--depth', type=click.INT, required=True, help="The cover depth.")
@click.pass_context
@reports_errors
def cover(ctx, system, base, depth):
    fs = get_system(system, _config(ctx))
    c = canonical_cover(fs.handle(_form(fs, base) if base else None), depth, budget=_config(ctx)['node_budget'])
    _emit({"base": c.base.text, "depth": c.depth, "count": len(c), "parts": [p.text for p in c.parts]})


@cli.command(help="Does the canonical cover at one depth refine the one at another?")
@click.option('-s', '--system', required=True, help="The formal system.")
@click.option('-b', '--base', default=None, help="The base form (the system's root by default).")
@click.option('--fine', type=click.INT, required=True, help="The depth of the finer cover.")
@click.option('--coarse', type=click.INT, required=True, help="The depth of the coarser cover.")
@click.pass_context
@reports_errors
def refine(ctx, system, base, fine, coarse):
    fs = get_system(system, _config(ctx))
    budget = _config(ctx)['node_budget']
    h = fs.handle(_form(fs, base) if base else None)
    _emit({"refines": refines(canonical_cover(h, fine, budget), canonical_cover(h, coarse, budget), budget)})


@cli.command(help="The chain prefix a selection rule picks out.")
@click.option('-r', '--rule', required=True, help="successor, digit:D, sqrt2m1, rational:p/q or a JSON rule.")
@click.option('-n', '--depth', type=click.INT, required=True, help="The prefix depth.")
@click.pass_context
@reports_errors
def chain(ctx, rule, depth):
    prefix = chain_prefix(_rule(rule), depth)
    _emit({"rule": prefix.rule.label, "forms": [f.text for f in prefix.forms], "terminal": prefix.terminal})


@cli.group(help="Exact real numbers as selection rules on dyadic intervals.")
def real():
    pass


@real.command(name='locate', help="An interval of width at most 2^-precision around a real.")
@click.option('--name', required=True, help="sqrt2m1 or rational:p/q")
@click.option('-k', '--precision', type=click.INT, required=True, help="The precision k.")
@reports_errors
def real_locate(name, precision):
    _emit(interval_to_json(locate(real_by_name(name), precision)))


@real.command(name='compare', help="Compare two reals at a precision.")
@click.option('-x', required=True, help="sqrt2m1 or rational:p/q")
@click.option('-y', required=True, help="sqrt2m1 or rational:p/q")
@click.option('-k', '--precision', type=click.INT, required=True, help="The precision k.")
@reports_errors
def real_compare(x, y, precision):
    _emit(comparison_to_json(compare(real_by_name(x), real_by_name(y), precision)))


@cli.group(help="Constituents of finite models.")
def constituent():
    pass


@constituent.command(name='of', help="The constituent of a tuple of elements at a depth.")
@click.option('-m', '--model', type=click.Path(exists=True, dir_okay=False), required=True, help="The model JSON.")
@click.option('-e', '--element', 'elements', multiple=True, required=True,
              help="An element of the tuple (repeat for width > 1).")
@click.option('-d', '--depth', type=click.INT, required=True, help="The constituent depth.")
@click.pass_context
@reports_errors
def constituent_of_cmd(ctx, model, elements, depth):
    m = model_from_json(read_data_file(model))
    c = constituent_of(m, elements, depth, max_depth=_config(ctx)['max_constituent_depth'])
    _emit(constituent_to_json(c))


@constituent.command(name='enum', help="Every constituent of a vocabulary, width and depth.")
@click.option('-v', '--vocab', required=True, help="The vocabulary, e.g. P/1,R/2")
@click.option('-w', '--width', type=click.INT, default=1, show_default=True, help="The number of free variables.")
@click.option('-d', '--depth', type=click.INT, required=True, help="The constituent depth.")
@click.pass_context
@reports_errors
def constituent_enum(ctx, vocab, width, depth):
    found = enumerate_constituents(Vocabulary.parse(vocab), width, depth, budget=_config(ctx)['enumeration_budget'])
    _emit({"count": len(found), "constituents": [c.encoding for c in found]})


@constituent.command(name='chain', help="The constituents of one element at every depth up to a bound.")
@click.option('-m', '--model', type=click.Path(exists=True, dir_okay=False), required=True, help="The model JSON.")
@click.option('-e', '--element', required=True, help="The element.")
@click.option('-d', '--depth', type=click.INT, required=True, help="The deepest constituent.")
@click.pass_context
@reports_errors
def constituent_chain_cmd(ctx, model, element, depth):
    m = model_from_json(read_data_file(model))
    found = constituent_chain(m, element, depth, max_depth=_config(ctx)['max_constituent_depth'])
    _emit({"element": element, "chain": [c.encoding for c in found]})


@cli.group(help="Kripke frames and modal formulas.")
def modal():
    pass


@modal.command(name='eval', help="Evaluate a modal formula at a world under a valuation.")
@click.option('-f', '--frame', type=click.Path(exists=True, dir_okay=False), required=True, help="The frame JSON.")
@click.option('--valuation', default='{}', help='Atoms to worlds, e.g. {"p": ["2"]}')
@click.option('-w', '--world', required=True, help="The world.")
@click.option('--formula', required=True, help="The modal formula, e.g. 'dia dia p -> dia p'.")
@reports_errors
def modal_eval_cmd(frame, valuation, world, formula):
    try:
        val = json.loads(valuation)
    except ValueError:
        raise ParseError("Not a JSON valuation: %r" % valuation)
    _emit({"holds": modal_eval(frame_from_json(read_data_file(frame)), val, world, parse_modal(formula))})


@modal.command(name='valid', help="Is a modal formula valid on a frame?")
@click.option('-f', '--frame', type=click.Path(exists=True, dir_okay=False), required=True, help="The frame JSON.")
@click.option('--formula', required=True, help="The modal formula.")
@click.pass_context
@reports_errors
def modal_valid_cmd(ctx, frame, formula):
    f = frame_from_json(read_data_file(frame))
    _emit(validity_to_json(valid_on_frame(f, parse_modal(formula), budget=_config(ctx)['valuation_budget'])))


@cli.command(help="Reflexivity and transitivity of a frame against the T and 4 axioms.")
@click.option('-f', '--frame', type=click.Path(exists=True, dir_okay=False), required=True, help="The frame JSON.")
@click.pass_context
@reports_errors
def s4(ctx, frame):
    r = s4_correspondence(frame_from_json(read_data_file(frame)), budget=_config(ctx)['valuation_budget'])
    _emit({"is_reflexive": r.is_reflexive, "is_transitive": r.is_transitive,
           "t_valid": r.t_valid, "four_valid": r.four_valid})


@cli.command(help="The Kuratowski closure laws of the closure operator a frame induces.")
@click.option('-f', '--frame', type=click.Path(exists=True, dir_okay=False), required=True, help="The frame JSON.")
@click.pass_context
@reports_errors
def kuratowski(ctx, frame):
    f = frame_from_json(read_data_file(frame))
    r = kuratowski_check(f, max_worlds=_config(ctx)['kuratowski_max_worlds'])
    _emit({"empty": r.empty, "extensive": r.extensive, "additive": r.additive, "idempotent": r.idempotent,
           "is_transitive": r.is_transitive, "reflexive_closure_transitive": r.reflexive_closure_transitive,
           "idempotency_failure": list(r.idempotency_failure) if r.idempotency_failure is not None else None})


@cli.group(help="Covering structures on finite posets.")
def ftop():
    pass


@ftop.command(name='check', help="Check the four covering axioms.")
@click.option('-c', '--covers', type=click.Path(exists=True, dir_okay=False), default=None,
              help="The cover structure JSON.")
@click.option('--decimal-depth', type=click.INT, default=None,
              help="Check the decimal cover structure of this depth instead of a file.")
@click.option('--strict/--no-strict', default=False, help="Fail when a needed meet is undefined.")
@reports_errors
def ftop_check(covers, decimal_depth, strict):
    if (covers is None) == (decimal_depth is None):
        raise click.UsageError("Give exactly one of --covers and --decimal-depth")
    with elapsed_timer() as elapsed:
        cs = decimal_cover_structure(decimal_depth) if covers is None else \
            cover_structure_from_json(read_data_file(covers))
        report = fg_axiom_check(cs, strict=strict)
    logger.debug("%.2f seconds" % elapsed())
    _emit(report.to_json())


@cli.group(help="The stratification guard on the diagonal concept.")
def russell():
    pass


@russell.command(help="Apply R to the diagonal concept ¬xRx, then apply an unrelated relation to it.")
def demo():
    diagonal = diagonal_form()
    out = {"diagonal": diagonal.text}
    try:
        stratified_apply(relational_system().relation, diagonal)
        out["self_application"] = {"applied": True}
    except SynthesisError as e:
        out["self_application"] = {"error": e.name, "message": str(e)}
    unrelated = trivial_relation(relational_language())
    neighbourhood = stratified_apply(unrelated, diagonal)
    out["unrelated"] = {"relation": unrelated.name, "applied": True, "reflexive": unrelated(diagonal, diagonal),
                        "base": neighbourhood.base.text}
    _emit(out)


if __name__ == '__main__':
    cli(obj={})
