"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

import json
import os
from contextlib import contextmanager
from fractions import Fraction
from timeit import default_timer

import yaml

from synthesis import logger
from synthesis.exceptions import ConfigError, ParseError

NODE_BUDGET = 10 ** 6
MAX_CONSTITUENT_DEPTH = 3
ENUMERATION_BUDGET = 10 ** 5
VALUATION_BUDGET = 2 ** 20
KURATOWSKI_MAX_WORLDS = 12
FG_SATURATION_BUDGET = 10 ** 6

DEFAULTS = {
    'node_budget': NODE_BUDGET,
    'max_constituent_depth': MAX_CONSTITUENT_DEPTH,
    'enumeration_budget': ENUMERATION_BUDGET,
    'valuation_budget': VALUATION_BUDGET,
    'kuratowski_max_worlds': KURATOWSKI_MAX_WORLDS,
    'fg_saturation_budget': FG_SATURATION_BUDGET,
    'alphabets': {},
    'relations': [],
}

BUDGET_ENV = 'SYNTH_NODE_BUDGET'


@contextmanager
def elapsed_timer():
    start = default_timer()
    elapser = lambda: default_timer() - start
    yield lambda: elapser()
    end = default_timer()
    elapser = lambda: end-start


def load_config(config_file=None, environ=None):
    """
    Load a YAML (or JSON) configuration file over the defaults.

    :param config_file: path to the file, or None for defaults only
    :param environ: mapping consulted for SYNTH_NODE_BUDGET (os.environ by default)
    :return: dict of settings
    """
    config = dict(DEFAULTS)
    if config_file is not None:
        if not os.path.exists(config_file):
            raise ConfigError("Unable to load config at %s" % os.path.abspath(config_file))
        with open(config_file, 'r') as stream:
            logger.debug("Attempting to load the config file at %s" % os.path.abspath(config_file))
            loaded = yaml.load(stream, Loader=yaml.SafeLoader) or {}
        if not isinstance(loaded, dict):
            raise ConfigError("Config %s must be a mapping" % config_file)
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise ConfigError("Unknown config keys: %s" % ", ".join(sorted(unknown)))
        config.update(loaded)

    environ = os.environ if environ is None else environ
    if environ.get(BUDGET_ENV):
        try:
            config['node_budget'] = int(environ[BUDGET_ENV])
        except ValueError:
            raise ConfigError("%s must be an integer, got %r" % (BUDGET_ENV, environ[BUDGET_ENV]))

    for key, default in DEFAULTS.items():
        if isinstance(default, int) and (not isinstance(config[key], int) or config[key] <= 0):
            raise ConfigError("Config value %s must be a positive integer" % key)
    return config


def format_fraction(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError("Not an exact rational: %r" % text)


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def read_data_file(filename):
    """Read a JSON or YAML data file (models, frames, cover structures)."""
    with open(filename) as stream:
        logger.debug("Reading data file %s" % os.path.abspath(filename))
        return yaml.load(stream, Loader=yaml.SafeLoader)
