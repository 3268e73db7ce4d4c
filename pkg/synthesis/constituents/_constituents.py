"""
Distributive normal form constituents of finite models.

A constituent of depth d over the variables x1..xk fixes the sign of every atomic
formula in those variables and, for d >= 1, says which depth d-1 constituents over
x1..xk+1 are realized by some witness for x_{k+1}.  Only the realized branches are
stored; every other compatible branch is negative.

This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

import math
import threading
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Dict, FrozenSet, Hashable, List, Optional, Sequence, Tuple

from synthesis import logger
from synthesis.exceptions import DepthBudgetExceeded, EnumerationBudgetExceeded, DepthZero, IllFormed, \
    ArityMismatch
from synthesis.forms import Alphabet, Form, FormalLanguage
from synthesis.foundation import Cover, SelectionRule, canonical_cover
from synthesis.relations import ExtensionRelation
from synthesis.systems import FormalSystem
from synthesis.utils import MAX_CONSTITUENT_DEPTH, ENUMERATION_BUDGET
from ._formula import Vocabulary, FiniteModel, Formula, Atom, Not, Exists, Forall, conjoin, disjoin

CONSTITUENT_ALPHABET = Alphabet('constituent', ('*', '[', ']', '{', '}', '+', '-', ',') + tuple('0123456789'))
ROOT = '*'


@lru_cache(maxsize=None)
def atom_slots(v: Vocabulary, k: int) -> Tuple[Tuple[str, Tuple[int, ...]], ...]:
    """Every atomic formula over k variables, sorted by predicate name then slot pattern."""
    return tuple(sorted((name, slots) for name, arity in v.predicates for slots in product(range(k), repeat=arity)))


def atom_formula(name: str, slots: Tuple[int, ...]) -> Atom:
    return Atom(name, tuple('x%d' % (s + 1) for s in slots))


@lru_cache(maxsize=None)
def _restriction(v: Vocabulary, k: int) -> Tuple[int, ...]:
    """Positions, among the atoms over k+1 variables, of the atoms over the first k."""
    position = {a: i for i, a in enumerate(atom_slots(v, k + 1))}
    return tuple(position[a] for a in atom_slots(v, k))


@dataclass(frozen=True, eq=False)
class Constituent:
    vocabulary: Vocabulary
    width: int
    depth: int
    attributive: Tuple[bool, ...]
    positives: FrozenSet['Constituent'] = field(default=frozenset())

    @cached_property
    def encoding(self) -> str:
        text = "%d[%s]" % (self.depth, "".join('+' if s else '-' for s in self.attributive))
        if self.depth >= 1:
            text += "{%s}" % ",".join(sorted(b.encoding for b in self.positives))
        return text

    def __eq__(self, other):
        return isinstance(other, Constituent) and (self.vocabulary, self.width, self.encoding) == \
               (other.vocabulary, other.width, other.encoding)

    def __hash__(self):
        return hash((self.width, self.encoding))

    def __str__(self):
        return self.encoding

    def restricted(self) -> Tuple[bool, ...]:
        """The attributive signs of the atoms that do not mention the last variable."""
        return tuple(self.attributive[i] for i in _restriction(self.vocabulary, self.width - 1))

    def branches(self) -> List['Constituent']:
        return sorted(self.positives, key=lambda b: b.encoding)


def attributive_profile(m: FiniteModel, t: Sequence[Hashable]) -> Tuple[Tuple[Atom, bool], ...]:
    return tuple(zip((atom_formula(*a) for a in atom_slots(m.vocabulary, len(t))), _signs(m, tuple(t))))


def _signs(m: FiniteModel, t: Tuple[Hashable, ...]) -> Tuple[bool, ...]:
    return tuple(tuple(t[s] for s in slots) in m.interpretation[name]
                 for name, slots in atom_slots(m.vocabulary, len(t)))


def constituent_of(m: FiniteModel, t: Sequence[Hashable], d: int,
                   max_depth: int = MAX_CONSTITUENT_DEPTH) -> Constituent:
    t = tuple(t)
    if not t:
        raise ValueError("Constituents need at least one element")
    if d < 0:
        raise ValueError("Depth must be non-negative, got %d" % d)
    if d > max_depth:
        raise DepthBudgetExceeded("Depth %d exceeds the constituent depth budget %d" % (d, max_depth))
    members = set(m.universe)
    missing = [e for e in t if e not in members]
    if missing:
        raise IllFormed("Elements %s are not in the universe" % ", ".join(map(str, missing)))

    memo: Dict[Tuple[Tuple[Hashable, ...], int], Constituent] = {}

    def build(u: Tuple[Hashable, ...], depth: int) -> Constituent:
        key = (u, depth)
        if key not in memo:
            positives = frozenset(build(u + (e,), depth - 1) for e in m.universe) if depth else frozenset()
            memo[key] = Constituent(m.vocabulary, len(u), depth, _signs(m, u), positives)
        return memo[key]

    return build(t, d)


def _log2_count(v: Vocabulary, k: int, d: int) -> float:
    n = len(atom_slots(v, k))
    if d == 0:
        return n
    below = _log2_count(v, k + 1, d - 1)
    if below - n > 256:
        return math.inf
    # children are split evenly among the attributive parts they restrict to
    return n + 2 ** (below - n)


def constituent_count(v: Vocabulary, k: int, d: int) -> float:
    """Number of syntactic constituents of width k and depth d; inf when astronomically large."""
    log = _log2_count(v, k, d)
    return math.inf if log > 1024 else 2 ** log


def enumerate_constituents(v: Vocabulary, k: int, d: int, budget: int = ENUMERATION_BUDGET) -> List[Constituent]:
    if k < 1:
        raise ValueError("Width must be at least 1, got %d" % k)
    if _log2_count(v, k, d) > math.log2(budget):
        raise EnumerationBudgetExceeded("Width %d depth %d constituents exceed the enumeration budget %d" % (
            k, d, budget))
    return list(_enumerate(v, k, d))


@lru_cache(maxsize=64)
def _enumerate(v: Vocabulary, k: int, d: int) -> Tuple[Constituent, ...]:
    signs = list(product((True, False), repeat=len(atom_slots(v, k))))
    if d == 0:
        return tuple(Constituent(v, k, 0, s) for s in signs)
    groups: Dict[Tuple[bool, ...], List[Constituent]] = {}
    for child in _enumerate(v, k + 1, d - 1):
        groups.setdefault(child.restricted(), []).append(child)
    out = []
    for s in signs:
        children = groups.get(s, [])
        for chosen in product((True, False), repeat=len(children)):
            out.append(Constituent(v, k, d, s, frozenset(c for c, keep in zip(children, chosen) if keep)))
    logger.debug("Enumerated %d constituents of width %d depth %d" % (len(out), k, d))
    return tuple(out)


def parent(c: Constituent) -> Constituent:
    """Truncate one level of depth."""
    if c.depth == 0:
        raise DepthZero("A depth 0 constituent has no parent")
    if c.depth == 1:
        return Constituent(c.vocabulary, c.width, 0, c.attributive)
    return Constituent(c.vocabulary, c.width, c.depth - 1, c.attributive, frozenset(parent(b) for b in c.positives))


def constituent_chain(m: FiniteModel, a: Hashable, d_max: int,
                      max_depth: int = MAX_CONSTITUENT_DEPTH) -> List[Constituent]:
    if d_max > max_depth:
        raise DepthBudgetExceeded("Chain depth %d exceeds the constituent depth budget %d" % (d_max, max_depth))
    return [constituent_of(m, (a,), d, max_depth=max_depth) for d in range(d_max + 1)]


def formula_of(c: Constituent) -> Formula:
    """
    The formula a constituent stands for, in the free variables x1..xk: its signed
    atoms, an existential per realized branch and a universal saying no other branch
    is realized.
    """
    literals = [atom if sign else Not(atom)
                for atom, sign in zip((atom_formula(*a) for a in atom_slots(c.vocabulary, c.width)), c.attributive)]
    if c.depth == 0:
        return conjoin(literals)
    z = 'x%d' % (c.width + 1)
    branches = [formula_of(b) for b in c.branches()]
    return conjoin(literals + [Exists(z, b) for b in branches] + [Forall(z, disjoin(branches))])


def constituent_to_json(c: Constituent) -> dict:
    out = {"depth": c.depth,
           "width": c.width,
           "encoding": c.encoding,
           "attributive": [{"atom": str(atom_formula(*a)), "sign": '+' if s else '-'}
                           for a, s in zip(atom_slots(c.vocabulary, c.width), c.attributive)]}
    if c.depth >= 1:
        out["branches"] = [constituent_to_json(b) for b in c.branches()]
    return out


class _Decoder:
    def __init__(self, text: str, v: Vocabulary):
        self.text = text
        self.v = v
        self.pos = 0

    def fail(self, why: str):
        raise IllFormed("Not a constituent encoding (%s at %d): %r" % (why, self.pos, self.text))

    def expect(self, ch: str):
        if self.text[self.pos:self.pos + 1] != ch:
            self.fail("expected %r" % ch)
        self.pos += 1

    def constituent(self, k: int) -> Constituent:
        start = self.pos
        while self.text[self.pos:self.pos + 1].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected a depth")
        depth = int(self.text[start:self.pos])
        self.expect('[')
        end = self.text.find(']', self.pos)
        if end < 0:
            self.fail("unclosed attributive part")
        signs = self.text[self.pos:end]
        if len(signs) != len(atom_slots(self.v, k)) or set(signs) - {'+', '-'}:
            self.fail("expected %d signs" % len(atom_slots(self.v, k)))
        self.pos = end + 1
        attributive = tuple(s == '+' for s in signs)
        if depth == 0:
            return Constituent(self.v, k, 0, attributive)
        self.expect('{')
        children = []
        while self.text[self.pos:self.pos + 1] != '}':
            if children:
                self.expect(',')
            child = self.constituent(k + 1)
            if child.depth != depth - 1 or child.restricted() != attributive:
                self.fail("incompatible branch %s" % child)
            if children and children[-1].encoding >= child.encoding:
                self.fail("branches out of order")
            children.append(child)
        self.expect('}')
        return Constituent(self.v, k, depth, attributive, frozenset(children))


@lru_cache(maxsize=4096)
def decode_constituent(text: str, v: Vocabulary, k: int) -> Constituent:
    decoder = _Decoder(text, v)
    c = decoder.constituent(k)
    if decoder.pos != len(text):
        decoder.fail("trailing input")
    return c


@dataclass(frozen=True)
class ConstituentSystem(FormalSystem):
    """Constituents of one width as a formal system: each constituent extends to its refinements."""
    vocabulary: Optional[Vocabulary] = None
    width: int = 1
    budget: int = ENUMERATION_BUDGET

    def form_of(self, c: Constituent) -> Form:
        return Form(CONSTITUENT_ALPHABET, tuple(c.encoding))

    def constituent(self, f: Form) -> Optional[Constituent]:
        """The constituent a form encodes; None for the root."""
        if f.text == ROOT:
            return None
        return decode_constituent(f.text, self.vocabulary, self.width)

    def cover(self, d: int) -> Cover:
        """All constituents of depth d, one level below the root per depth."""
        return canonical_cover(self.handle(), d + 1, budget=self.budget)

    def chain_rule(self, m: FiniteModel, a: Hashable, max_depth: int = MAX_CONSTITUENT_DEPTH) -> SelectionRule:
        if m.vocabulary != self.vocabulary or self.width != 1:
            raise ArityMismatch("Chains of %s need width 1 constituents over the model's vocabulary" % a)

        def choose(x: Form) -> Optional[Form]:
            c = self.constituent(x)
            depth = 0 if c is None else c.depth + 1
            if depth > max_depth:
                return None
            return self.form_of(constituent_of(m, (a,), depth, max_depth=max_depth))

        return SelectionRule(self.root, choose, self.relation, label='chain:%s' % a)


def as_formal_system(v: Vocabulary, k: int = 1, budget: int = ENUMERATION_BUDGET) -> ConstituentSystem:
    def decode(f: Form) -> Optional[Constituent]:
        try:
            return decode_constituent(f.text, v, k)
        except IllFormed:
            return None

    language = FormalLanguage('constituents', CONSTITUENT_ALPHABET,
                              lambda tokens: "".join(tokens) == ROOT or decode(Form(CONSTITUENT_ALPHABET,
                                                                                      tuple(tokens))) is not None)
    root = Form(CONSTITUENT_ALPHABET, (ROOT,))
    # depth -> parent encoding -> refinements; a depth's table is published only once it is complete
    tables: Dict[int, Dict[str, Tuple[Form, ...]]] = {}
    lock = threading.Lock()

    def as_form(c: Constituent) -> Form:
        return Form(CONSTITUENT_ALPHABET, tuple(c.encoding))

    def refinements(depth: int) -> Dict[str, Tuple[Form, ...]]:
        table = tables.get(depth)
        if table is None:
            with lock:
                table = tables.get(depth)
                if table is None:
                    grouped: Dict[str, List[Form]] = {}
                    for c in enumerate_constituents(v, k, depth + 1, budget):
                        grouped.setdefault(parent(c).encoding, []).append(as_form(c))
                    table = {key: tuple(forms) for key, forms in grouped.items()}
                    tables[depth] = table
        return table

    def holds(f: Form, g: Form) -> bool:
        cg = decode(g)
        if cg is None:
            return False
        if f == root:
            return cg.depth == 0
        cf = decode(f)
        return cf is not None and cg.depth == cf.depth + 1 and parent(cg) == cf

    def enumerate_(f: Form) -> List[Form]:
        if f == root:
            return [as_form(c) for c in enumerate_constituents(v, k, 0, budget)]
        cf = decode(f)
        if cf is None:
            return []
        return list(refinements(cf.depth).get(f.text, ()))

    relation = ExtensionRelation('C', holds, enumerate_, label='constituent-refine')
    return ConstituentSystem('constituents', language, relation, root, vocabulary=v, width=k, budget=budget)
