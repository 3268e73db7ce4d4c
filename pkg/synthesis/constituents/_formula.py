"""
First-order formulas over a relational vocabulary, finite models and satisfaction.

This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Mapping, Optional, Sequence, Tuple, Union

from synthesis.exceptions import UnboundVariable, ArityMismatch, ParseError, IllFormed


@dataclass(frozen=True)
class Vocabulary:
    predicates: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, 'predicates', tuple((str(n), int(a)) for n, a in self.predicates))
        names = [n for n, _ in self.predicates]
        if len(set(names)) != len(names):
            raise IllFormed("Predicate names must be distinct: %s" % ", ".join(names))
        if any(a < 1 for _, a in self.predicates):
            raise IllFormed("Predicate arities must be at least 1")

    @classmethod
    def parse(cls, text: str) -> 'Vocabulary':
        """`P/1,R/2`"""
        try:
            pairs = [item.split('/') for item in text.split(',') if item.strip()]
            return cls(tuple((name.strip(), int(arity)) for name, arity in pairs))
        except ValueError:
            raise ParseError("Not a vocabulary: %r (expected e.g. P/1,R/2)" % text)

    def arity(self, name: str) -> int:
        for n, a in self.predicates:
            if n == name:
                return a
        raise ArityMismatch("Predicate %s is not in the vocabulary" % name)


@dataclass(frozen=True)
class FiniteModel:
    vocabulary: Vocabulary
    universe: Tuple[Hashable, ...]
    interpretation: Mapping[str, FrozenSet[Tuple[Hashable, ...]]] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, 'universe', tuple(self.universe))
        if not self.universe:
            raise IllFormed("A model needs a non-empty universe")
        members = set(self.universe)
        interpretation = {}
        for name, arity in self.vocabulary.predicates:
            tuples = frozenset(tuple(t) for t in self.interpretation.get(name, ()))
            for t in tuples:
                if len(t) != arity:
                    raise ArityMismatch("Tuple %r does not fit %s/%d" % (t, name, arity))
                if not set(t) <= members:
                    raise IllFormed("Tuple %r of %s leaves the universe" % (t, name))
            interpretation[name] = tuples
        extra = set(self.interpretation) - set(interpretation)
        if extra:
            raise ArityMismatch("Predicates outside the vocabulary: %s" % ", ".join(sorted(extra)))
        object.__setattr__(self, 'interpretation', interpretation)


def model_from_json(data: dict, vocabulary: Optional[Vocabulary] = None) -> FiniteModel:
    """{"universe": [...], "predicates": {"P": [["a"]]}, "arities": {"P": 1}} (arities optional)"""
    try:
        universe = tuple(str(e) for e in data['universe'])
        predicates = {name: [tuple(str(e) for e in t) for t in tuples]
                      for name, tuples in data.get('predicates', {}).items()}
    except (KeyError, TypeError, AttributeError):
        raise ParseError("Not a model encoding: %r" % (data,))
    if vocabulary is None:
        arities = dict(data.get('arities', {}))
        for name, tuples in predicates.items():
            if tuples:
                arities.setdefault(name, len(tuples[0]))
            elif name not in arities:
                raise ParseError("Predicate %s is empty; give its arity under \"arities\"" % name)
        vocabulary = Vocabulary(tuple(sorted(arities.items())))
    return FiniteModel(vocabulary, universe, predicates)


def model_to_json(m: FiniteModel) -> dict:
    return {"universe": list(m.universe),
            "predicates": {n: sorted(list(t) for t in m.interpretation[n]) for n, _ in m.vocabulary.predicates},
            "arities": dict(m.vocabulary.predicates)}


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: Tuple[str, ...]

    def __str__(self):
        return "%s(%s)" % (self.predicate, ",".join(self.args))


@dataclass(frozen=True)
class Truth:
    value: bool

    def __str__(self):
        return 'T' if self.value else 'F'


@dataclass(frozen=True)
class Not:
    body: 'Formula'

    def __str__(self):
        return "~%s" % _wrap(self.body)


@dataclass(frozen=True)
class And:
    left: 'Formula'
    right: 'Formula'

    def __str__(self):
        return "(%s & %s)" % (self.left, self.right)


@dataclass(frozen=True)
class Or:
    left: 'Formula'
    right: 'Formula'

    def __str__(self):
        return "(%s | %s)" % (self.left, self.right)


@dataclass(frozen=True)
class Exists:
    var: str
    body: 'Formula'

    def __str__(self):
        return "E %s %s" % (self.var, _wrap(self.body))


@dataclass(frozen=True)
class Forall:
    var: str
    body: 'Formula'

    def __str__(self):
        return "A %s %s" % (self.var, _wrap(self.body))


Formula = Union[Atom, Truth, Not, And, Or, Exists, Forall]


def _wrap(phi) -> str:
    text = str(phi)
    return text if isinstance(phi, (Atom, Truth, Not, And, Or)) else "(%s)" % text


def conjoin(parts: Sequence[Formula]) -> Formula:
    if not parts:
        return Truth(True)
    result = parts[-1]
    for p in reversed(parts[:-1]):
        result = And(p, result)
    return result


def disjoin(parts: Sequence[Formula]) -> Formula:
    if not parts:
        return Truth(False)
    result = parts[-1]
    for p in reversed(parts[:-1]):
        result = Or(p, result)
    return result


def quantifier_depth(phi: Formula) -> int:
    if isinstance(phi, (Atom, Truth)):
        return 0
    if isinstance(phi, Not):
        return quantifier_depth(phi.body)
    if isinstance(phi, (And, Or)):
        return max(quantifier_depth(phi.left), quantifier_depth(phi.right))
    return 1 + quantifier_depth(phi.body)


def free_variables(phi: Formula) -> FrozenSet[str]:
    if isinstance(phi, Atom):
        return frozenset(phi.args)
    if isinstance(phi, Truth):
        return frozenset()
    if isinstance(phi, Not):
        return free_variables(phi.body)
    if isinstance(phi, (And, Or)):
        return free_variables(phi.left) | free_variables(phi.right)
    return free_variables(phi.body) - {phi.var}


def eval_formula(m: FiniteModel, phi: Formula, assignment: Mapping[str, Hashable]) -> bool:
    """Classical satisfaction; quantifiers range over the universe."""
    if isinstance(phi, Atom):
        arity = m.vocabulary.arity(phi.predicate)
        if len(phi.args) != arity:
            raise ArityMismatch("%s used with %d arguments, arity is %d" % (phi.predicate, len(phi.args), arity))
        try:
            values = tuple(assignment[v] for v in phi.args)
        except KeyError as e:
            raise UnboundVariable("Variable %s is unbound in %s" % (e.args[0], phi))
        return values in m.interpretation[phi.predicate]
    if isinstance(phi, Truth):
        return phi.value
    if isinstance(phi, Not):
        return not eval_formula(m, phi.body, assignment)
    if isinstance(phi, And):
        return eval_formula(m, phi.left, assignment) and eval_formula(m, phi.right, assignment)
    if isinstance(phi, Or):
        return eval_formula(m, phi.left, assignment) or eval_formula(m, phi.right, assignment)
    if isinstance(phi, Exists):
        return any(eval_formula(m, phi.body, {**assignment, phi.var: e}) for e in m.universe)
    if isinstance(phi, Forall):
        return all(eval_formula(m, phi.body, {**assignment, phi.var: e}) for e in m.universe)
    raise IllFormed("Formula is ill formed: %r" % (phi,))


_TOKEN_RE = re.compile(r'\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(.))')


def _tokens(text: str):
    out = []
    for m in _TOKEN_RE.finditer(text):
        if m.group(1):
            out.append(m.group(1))
        elif m.group(2) and not m.group(2).isspace():
            if m.group(2) not in '()&|~,':
                raise ParseError("Unexpected character %r in formula %r" % (m.group(2), text))
            out.append(m.group(2))
    return out


class _Parser:
    """
    formula := conj ('|' conj)*
    conj    := unary ('&' unary)*
    unary   := '~' unary | 'E' var unary | 'A' var unary | '(' formula ')' | atom | 'T' | 'F'
    """

    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.pos = 0

    def peek(self, offset=0):
        i = self.pos + offset
        return self.toks[i] if i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError("Expected %s at token %d of %r" % (expected or 'more input', self.pos, self.text))
        self.pos += 1
        return tok

    def parse(self) -> Formula:
        phi = self.formula()
        if self.peek() is not None:
            raise ParseError("Trailing input %r in %r" % (self.peek(), self.text))
        return phi

    def formula(self):
        phi = self.conj()
        while self.peek() == '|':
            self.take()
            phi = Or(phi, self.conj())
        return phi

    def conj(self):
        phi = self.unary()
        while self.peek() == '&':
            self.take()
            phi = And(phi, self.unary())
        return phi

    def unary(self):
        tok = self.peek()
        if tok == '~':
            self.take()
            return Not(self.unary())
        if tok == '(':
            self.take()
            phi = self.formula()
            self.take(')')
            return phi
        if tok in ('E', 'A') and self.peek(1) not in (None, '(') and self.peek(1).isidentifier():
            self.take()
            var = self.take()
            body = self.unary()
            return Exists(var, body) if tok == 'E' else Forall(var, body)
        if tok in ('T', 'F') and self.peek(1) != '(':
            self.take()
            return Truth(tok == 'T')
        if tok is not None and tok.isidentifier():
            name = self.take()
            self.take('(')
            args = [self.take()]
            while self.peek() == ',':
                self.take()
                args.append(self.take())
            self.take(')')
            return Atom(name, tuple(args))
        raise ParseError("Unexpected token %r in %r" % (tok, self.text))


def parse_formula(text: str) -> Formula:
    return _Parser(text).parse()
