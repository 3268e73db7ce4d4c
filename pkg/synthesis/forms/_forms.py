"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, FrozenSet, Iterable, Sequence, Tuple

from synthesis.exceptions import IllFormed, UnknownSymbol, ParseError


@dataclass(frozen=True)
class Alphabet:
    """An ordered, finite list of distinct symbols. Symbols may span several characters ("0.")."""
    name: str
    symbols: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, 'symbols', tuple(self.symbols))
        if not self.symbols:
            raise IllFormed("Alphabet %s is empty" % self.name)
        if len(set(self.symbols)) != len(self.symbols):
            raise IllFormed("Alphabet %s repeats a symbol" % self.name)
        if any(not isinstance(s, str) or s == '' for s in self.symbols):
            raise IllFormed("Alphabet %s has a symbol that is not a non-empty string" % self.name)

    @cached_property
    def _members(self) -> FrozenSet[str]:
        return frozenset(self.symbols)

    @cached_property
    def _by_length(self) -> Tuple[str, ...]:
        return tuple(sorted(self.symbols, key=len, reverse=True))

    def __contains__(self, symbol) -> bool:
        return symbol in self._members

    def __len__(self):
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        return self.symbols.index(symbol)

    def extended(self, name: str, extra: Iterable[str]) -> 'Alphabet':
        return Alphabet(name, self.symbols + tuple(s for s in extra if s not in self))


@dataclass(frozen=True, eq=False)
class Form:
    alphabet: Alphabet
    tokens: Tuple[str, ...] = field(default=())

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.tokens == other.tokens

    def __hash__(self):
        return hash(self.tokens)

    def __lt__(self, other):
        return self.tokens < other.tokens

    def __len__(self):
        return len(self.tokens)

    @property
    def text(self) -> str:
        return ''.join(self.tokens)

    def __str__(self):
        return self.text

    def __repr__(self):
        return "Form(%r)" % self.text

    def extend(self, *tokens) -> 'Form':
        return Form(self.alphabet, self.tokens + tuple(tokens))


@dataclass(frozen=True)
class FormalLanguage:
    """An alphabet with a total well-formedness decision procedure on token sequences."""
    name: str
    alphabet: Alphabet
    well_formed: Callable[[Tuple[str, ...]], bool]

    def admits(self, form: Form) -> bool:
        return all(t in self.alphabet for t in form.tokens) and bool(self.well_formed(form.tokens))

    def parse(self, text: str) -> Form:
        return make_form(self, tokenize(self.alphabet, text))


def make_form(language: FormalLanguage, tokens: Sequence[str]) -> Form:
    tokens = tuple(tokens)
    for t in tokens:
        if t not in language.alphabet:
            raise UnknownSymbol("Symbol %r is not in alphabet %s" % (t, language.alphabet.name))
    if not language.well_formed(tokens):
        raise IllFormed("%r is not well formed in %s" % (''.join(tokens), language.name))
    return Form(language.alphabet, tokens)


def footprint(f: Form) -> FrozenSet[str]:
    return frozenset(f.tokens)


def concat(f: Form, g: Form) -> Form:
    if f.alphabet.symbols != g.alphabet.symbols:
        raise UnknownSymbol("Cannot concatenate forms over %s and %s" % (f.alphabet.name, g.alphabet.name))
    return Form(f.alphabet, f.tokens + g.tokens)


def tokenize(alphabet: Alphabet, text: str) -> Tuple[str, ...]:
    """Split text into alphabet symbols by greedy longest match."""
    tokens = []
    pos = 0
    while pos < len(text):
        for symbol in alphabet._by_length:
            if text.startswith(symbol, pos):
                tokens.append(symbol)
                pos += len(symbol)
                break
        else:
            raise UnknownSymbol("No symbol of %s matches %r at offset %d" % (alphabet.name, text[pos:], pos))
    return tuple(tokens)


def form_to_json(f: Form) -> dict:
    return {"alphabet": f.alphabet.name, "tokens": list(f.tokens)}


def form_from_json(data: dict, alphabets: Dict[str, Alphabet]) -> Form:
    try:
        alphabet = alphabets[data["alphabet"]]
        tokens = tuple(data["tokens"])
    except (KeyError, TypeError):
        raise ParseError("Not a form encoding: %r" % (data,))
    for t in tokens:
        if t not in alphabet:
            raise UnknownSymbol("Symbol %r is not in alphabet %s" % (t, alphabet.name))
    return Form(alphabet, tokens)
