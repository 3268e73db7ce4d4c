"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional

from synthesis import logger
from synthesis.exceptions import UnknownSystem, ConfigError
from synthesis.forms import Alphabet, Form, FormalLanguage, make_form, tokenize
from synthesis.foundation import FoundationHandle, SelectionRule
from synthesis.relations import ExtensionRelation, cone, trivial_relation
from synthesis.utils import DEFAULTS
from ._intervals import DIGITS, INTERVAL_ALPHABET, INTERVAL_LANGUAGE, RationalInterval, interval_of, \
    dyadic_depth, dyadic_children

NATURALS_ALPHABET = Alphabet('digits', DIGITS)
DECIMAL_ALPHABET = Alphabet('decimal', ('0.',) + DIGITS)
RELATIONAL_ALPHABET = Alphabet('relational', ('¬', 'x', 'y', 'z', 'R', 'P', '(', ')', ','))
# the symbols naming the built-in relations; kept apart from the alphabets they act on
RELATION_SYMBOLS = Alphabet('relation-symbols', ('S', 'E', 'Q', 'R', 'C', '⊤'))


@dataclass(frozen=True)
class FormalSystem:
    name: str
    language: FormalLanguage
    relation: ExtensionRelation
    root: Form

    def handle(self, base: Optional[Form] = None) -> FoundationHandle:
        return FoundationHandle(self.relation, self.root if base is None else base)

    def parse(self, text: str) -> Form:
        return self.language.parse(text)


def _numeral(tokens) -> bool:
    return bool(tokens) and all(t in DIGITS for t in tokens) and (tokens[0] != '0' or len(tokens) == 1)


NATURALS_LANGUAGE = FormalLanguage('naturals', NATURALS_ALPHABET, _numeral)


def numeral(n: int) -> Form:
    return make_form(NATURALS_LANGUAGE, tuple(str(n)))


def naturals_system() -> FormalSystem:
    def holds(f: Form, g: Form) -> bool:
        return _numeral(f.tokens) and _numeral(g.tokens) and int(g.text) == int(f.text) + 1

    def enumerate_(f: Form):
        return [numeral(int(f.text) + 1)] if _numeral(f.tokens) else []

    relation = ExtensionRelation('S', holds, enumerate_, branching_bound=1, label='successor')
    return FormalSystem('naturals', NATURALS_LANGUAGE, relation, numeral(0))


def _decimal(tokens) -> bool:
    return bool(tokens) and tokens[0] == '0.' and all(t in DIGITS for t in tokens[1:])


DECIMAL_LANGUAGE = FormalLanguage('decimal', DECIMAL_ALPHABET, _decimal)


def decimal_system() -> FormalSystem:
    def holds(f: Form, g: Form) -> bool:
        return _decimal(f.tokens) and _decimal(g.tokens) and len(g.tokens) == len(f.tokens) + 1 \
               and g.tokens[:-1] == f.tokens

    def enumerate_(f: Form):
        return [f.extend(d) for d in DIGITS] if _decimal(f.tokens) else []

    relation = ExtensionRelation('E', holds, enumerate_, branching_bound=10, label='decimal-extend')
    return FormalSystem('decimal', DECIMAL_LANGUAGE, relation, make_form(DECIMAL_LANGUAGE, ('0.',)))


def _interval_or_none(f: Form) -> Optional[RationalInterval]:
    if not INTERVAL_LANGUAGE.admits(f):
        return None
    return interval_of(f)


def rational_interval_system() -> FormalSystem:
    """Strict inclusion of rational intervals; infinitely branching, so no enumerator."""
    def holds(f: Form, g: Form) -> bool:
        a, b = _interval_or_none(f), _interval_or_none(g)
        return a is not None and b is not None and a.holds(b)

    relation = ExtensionRelation('R', holds, label='rational-interval')
    return FormalSystem('rational', INTERVAL_LANGUAGE, relation, RationalInterval(0, 1).to_form())


def holds_shrinking(f: Form, g: Form) -> bool:
    a, b = _interval_or_none(f), _interval_or_none(g)
    return a is not None and b is not None and a.holds_shrinking(b)


def rational_shrink_system() -> FormalSystem:
    relation = ExtensionRelation('R', holds_shrinking, label='rational-shrink')
    return FormalSystem('rational-shrink', INTERVAL_LANGUAGE, relation, RationalInterval(0, 1).to_form())


def _dyadic_or_none(f: Form) -> Optional[RationalInterval]:
    iv = _interval_or_none(f)
    if iv is None or dyadic_depth(iv) is None:
        return None
    return iv


def dyadic_system() -> FormalSystem:
    def holds(f: Form, g: Form) -> bool:
        a, b = _dyadic_or_none(f), _dyadic_or_none(g)
        return a is not None and b is not None and b in dyadic_children(a)

    def enumerate_(f: Form):
        iv = _dyadic_or_none(f)
        return [c.to_form() for c in dyadic_children(iv)] if iv is not None else []

    relation = ExtensionRelation('Q', holds, enumerate_, branching_bound=3, label='dyadic-refine')
    return FormalSystem('dyadic', INTERVAL_LANGUAGE, relation, RationalInterval(-1, 1).to_form())


def trivial_system() -> FormalSystem:
    return FormalSystem('trivial', DECIMAL_LANGUAGE, trivial_relation(DECIMAL_LANGUAGE),
                        make_form(DECIMAL_LANGUAGE, ('0.',)))


def relational_language() -> FormalLanguage:
    return FormalLanguage('relational', RELATIONAL_ALPHABET, lambda tokens: len(tokens) > 0)


def relational_system() -> FormalSystem:
    """A binary relation R on relational forms: g extends f by one symbol."""
    language = relational_language()

    def holds(f: Form, g: Form) -> bool:
        return len(g.tokens) == len(f.tokens) + 1 and g.tokens[:-1] == f.tokens

    def enumerate_(f: Form):
        return [f.extend(s) for s in RELATIONAL_ALPHABET.symbols]

    relation = ExtensionRelation('R', holds, enumerate_, branching_bound=len(RELATIONAL_ALPHABET),
                                 label='relational')
    return FormalSystem('relational', language, relation, make_form(language, ('x',)))


def diagonal_form() -> Form:
    """¬xRx: the concept of the forms not related to themselves, written with R's own symbol."""
    return make_form(relational_language(), ('¬', 'x', 'R', 'x'))


def successor_rule(system: Optional[FormalSystem] = None) -> SelectionRule:
    system = system or naturals_system()
    return SelectionRule(system.root, lambda x: system.relation.successors(x)[0], system.relation, label='successor')


def constant_digit_rule(digit: int, system: Optional[FormalSystem] = None) -> SelectionRule:
    if not 0 <= digit <= 9:
        raise ConfigError("A decimal digit must be in 0..9, got %d" % digit)
    system = system or decimal_system()
    return SelectionRule(system.root, lambda x: x.extend(str(digit)), system.relation, label='digit-%d' % digit)


BUILTIN_SYSTEMS = {
    'naturals': naturals_system,
    'successor': naturals_system,
    'decimal': decimal_system,
    'decimal-extend': decimal_system,
    'dyadic': dyadic_system,
    'dyadic-refine': dyadic_system,
    'rational': rational_interval_system,
    'rational-interval': rational_interval_system,
    'rational-shrink': rational_shrink_system,
    'trivial': trivial_system,
    'relational': relational_system,
}

BUILTIN_ALPHABETS = {a.name: a for a in (NATURALS_ALPHABET, DECIMAL_ALPHABET, INTERVAL_ALPHABET,
                                         RELATIONAL_ALPHABET, RELATION_SYMBOLS)}


def alphabets(config: Optional[dict] = None) -> Dict[str, Alphabet]:
    config = config or DEFAULTS
    registered = dict(BUILTIN_ALPHABETS)
    for name, symbols in config.get('alphabets', {}).items():
        if name in registered:
            raise ConfigError("Alphabet %s is already registered" % name)
        registered[name] = Alphabet(name, tuple(symbols))
    return registered


def cone_system(definition: dict, registered: Dict[str, Alphabet]) -> FormalSystem:
    try:
        apex_token = definition['apex']
        members_text = definition['members']
    except (KeyError, TypeError):
        raise ConfigError("Cone definitions need an apex and members: %r" % (definition,))
    alphabet = registered.get(definition.get('alphabet', 'relational'))
    if alphabet is None:
        raise ConfigError("Cone %s names an unknown alphabet %s" % (apex_token, definition.get('alphabet')))
    members = [Form(alphabet, tokenize(alphabet, text)) for text in members_text]
    apex, relation = cone(apex_token, members)
    listed = set(members) | {apex}
    language = FormalLanguage('cone:%s' % apex_token, apex.alphabet,
                              lambda tokens: Form(apex.alphabet, tuple(tokens)) in listed)
    return FormalSystem('cone:%s' % apex_token, language, relation, apex)


def get_system(name: str, config: Optional[dict] = None) -> FormalSystem:
    if name in BUILTIN_SYSTEMS:
        return BUILTIN_SYSTEMS[name]()
    config = config or DEFAULTS
    registered = alphabets(config)
    for definition in config.get('relations', []):
        if 'cone:%s' % definition.get('apex') == name or definition.get('apex') == name:
            logger.debug("Building cone system %s from config" % name)
            return cone_system(definition, registered)
    raise UnknownSystem("No formal system named %s" % name)


def system_names(config: Optional[dict] = None) -> List[str]:
    config = config or DEFAULTS
    return sorted(BUILTIN_SYSTEMS) + ['cone:%s' % d.get('apex') for d in config.get('relations', [])]
