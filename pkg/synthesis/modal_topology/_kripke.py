"""
Kripke frames, modal satisfaction and the closure operator a frame induces.

Frames are boolean adjacency matrices; formulas are evaluated for all valuations
of their atoms at once, one row per valuation and one column per world.

This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

import numpy as np
import pandas as pd

from synthesis import logger
from synthesis.exceptions import UnknownAtom, ParseError, IllFormed, SearchBudgetExceeded, SizeBudgetExceeded, \
    CorrespondenceViolation
from synthesis.utils import VALUATION_BUDGET, KURATOWSKI_MAX_WORLDS


@dataclass(frozen=True)
class KripkeFrame:
    worlds: Tuple[str, ...]
    access: FrozenSet[Tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, 'worlds', tuple(str(w) for w in self.worlds))
        object.__setattr__(self, 'access', frozenset((str(a), str(b)) for a, b in self.access))
        if not self.worlds:
            raise IllFormed("A frame needs at least one world")
        if len(set(self.worlds)) != len(self.worlds):
            raise IllFormed("World names must be distinct")
        unknown = {w for pair in self.access for w in pair} - set(self.worlds)
        if unknown:
            raise IllFormed("Access mentions unknown worlds: %s" % ", ".join(sorted(unknown)))

    @classmethod
    def from_matrix(cls, matrix, worlds: Optional[Iterable[str]] = None) -> 'KripkeFrame':
        matrix = np.asarray(matrix, dtype=bool)
        worlds = tuple(worlds) if worlds is not None else tuple(str(i + 1) for i in range(matrix.shape[0]))
        return cls(worlds, frozenset((worlds[i], worlds[j]) for i, j in zip(*np.nonzero(matrix))))

    @property
    def n(self) -> int:
        return len(self.worlds)

    @cached_property
    def index(self) -> Dict[str, int]:
        return {w: i for i, w in enumerate(self.worlds)}

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for a, b in self.access:
            m[self.index[a], self.index[b]] = True
        m.setflags(write=False)
        return m

    def mask(self, worlds: Iterable[str]) -> np.ndarray:
        v = np.zeros(self.n, dtype=bool)
        for w in worlds:
            if str(w) not in self.index:
                raise IllFormed("Unknown world %s" % w)
            v[self.index[str(w)]] = True
        return v

    def worlds_of(self, mask) -> List[str]:
        return [self.worlds[i] for i in np.flatnonzero(mask)]


def frame_from_json(data: dict) -> KripkeFrame:
    """{"worlds": ["1", "2"], "access": [["1", "2"]]}"""
    try:
        return KripkeFrame(tuple(data['worlds']), frozenset(tuple(p) for p in data.get('access', [])))
    except (KeyError, TypeError, ValueError):
        raise ParseError("Not a frame encoding: %r" % (data,))


def frame_to_json(f: KripkeFrame) -> dict:
    return {"worlds": list(f.worlds), "access": sorted(list(p) for p in f.access)}


def is_reflexive(m: np.ndarray) -> bool:
    return bool(np.all(np.diagonal(m)))


def is_transitive(m: np.ndarray) -> bool:
    two_steps = (m.astype(np.int64) @ m.astype(np.int64)) > 0
    return not bool(np.any(two_steps & ~m))


@dataclass(frozen=True)
class Prop:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Neg:
    body: 'ModalFormula'

    def __str__(self):
        return "~%s" % self.body


@dataclass(frozen=True)
class Conj:
    left: 'ModalFormula'
    right: 'ModalFormula'

    def __str__(self):
        return "(%s & %s)" % (self.left, self.right)


@dataclass(frozen=True)
class Disj:
    left: 'ModalFormula'
    right: 'ModalFormula'

    def __str__(self):
        return "(%s | %s)" % (self.left, self.right)


@dataclass(frozen=True)
class Impl:
    left: 'ModalFormula'
    right: 'ModalFormula'

    def __str__(self):
        return "(%s -> %s)" % (self.left, self.right)


@dataclass(frozen=True)
class Box:
    body: 'ModalFormula'

    def __str__(self):
        return "box %s" % self.body


@dataclass(frozen=True)
class Dia:
    body: 'ModalFormula'

    def __str__(self):
        return "dia %s" % self.body


ModalFormula = Union[Prop, Neg, Conj, Disj, Impl, Box, Dia]

T_AXIOM = Impl(Box(Prop('p')), Prop('p'))
FOUR_AXIOM = Impl(Dia(Dia(Prop('p'))), Dia(Prop('p')))


def atoms_of(phi: ModalFormula) -> FrozenSet[str]:
    if isinstance(phi, Prop):
        return frozenset([phi.name])
    if isinstance(phi, (Neg, Box, Dia)):
        return atoms_of(phi.body)
    return atoms_of(phi.left) | atoms_of(phi.right)


_TOKEN_RE = re.compile(r'\s*(->|→|[A-Za-z_][A-Za-z0-9_]*|[()&|~¬□◇∧∨])')
_ALIASES = {'→': '->', '¬': '~', '∧': '&', '∨': '|', '□': 'box', '◇': 'dia'}


def _modal_tokens(text: str) -> List[str]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError("Unexpected input at %d in modal formula %r" % (pos, text))
        out.append(_ALIASES.get(m.group(1), m.group(1)))
        pos = m.end()
    return out


def parse_modal(text: str) -> ModalFormula:
    """
    Precedence from loosest: `->` (right associative), `|`, `&`, then the prefix
    operators `~`, `box`, `dia`.  Unicode □ ◇ ¬ ∧ ∨ → are accepted.
    """
    toks = _modal_tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError("Expected %s at token %d of %r" % (expected or 'more input', pos, text))
        pos += 1
        return tok

    def implication():
        left = disjunction()
        if peek() == '->':
            take()
            return Impl(left, implication())
        return left

    def disjunction():
        phi = conjunction()
        while peek() == '|':
            take()
            phi = Disj(phi, conjunction())
        return phi

    def conjunction():
        phi = unary()
        while peek() == '&':
            take()
            phi = Conj(phi, unary())
        return phi

    def unary():
        tok = peek()
        if tok == '~':
            take()
            return Neg(unary())
        if tok == 'box':
            take()
            return Box(unary())
        if tok == 'dia':
            take()
            return Dia(unary())
        if tok == '(':
            take()
            phi = implication()
            take(')')
            return phi
        if tok is not None and tok.isidentifier():
            return Prop(take())
        raise ParseError("Unexpected token %r in %r" % (tok, text))

    phi = implication()
    if peek() is not None:
        raise ParseError("Trailing input %r in %r" % (peek(), text))
    return phi


def _dia(truth: np.ndarray, m: np.ndarray) -> np.ndarray:
    # truth is (valuations, worlds); w sees a witness iff m[w, j] and truth[:, j]
    return (truth.astype(np.int64) @ m.T.astype(np.int64)) > 0


def _truth(phi: ModalFormula, m: np.ndarray, props: Mapping[str, np.ndarray]) -> np.ndarray:
    if isinstance(phi, Prop):
        if phi.name not in props:
            raise UnknownAtom("Atom %s has no valuation" % phi.name)
        return props[phi.name]
    if isinstance(phi, Neg):
        return ~_truth(phi.body, m, props)
    if isinstance(phi, Conj):
        return _truth(phi.left, m, props) & _truth(phi.right, m, props)
    if isinstance(phi, Disj):
        return _truth(phi.left, m, props) | _truth(phi.right, m, props)
    if isinstance(phi, Impl):
        return ~_truth(phi.left, m, props) | _truth(phi.right, m, props)
    if isinstance(phi, Dia):
        return _dia(_truth(phi.body, m, props), m)
    if isinstance(phi, Box):
        return ~_dia(~_truth(phi.body, m, props), m)
    raise IllFormed("Not a modal formula: %r" % (phi,))


def modal_eval(f: KripkeFrame, val: Mapping[str, Iterable[str]], w: str, phi: ModalFormula) -> bool:
    if str(w) not in f.index:
        raise IllFormed("Unknown world %s" % w)
    props = {name: f.mask(worlds)[None, :] for name, worlds in val.items()}
    return bool(_truth(phi, f.matrix, props)[0, f.index[str(w)]])


def truth_sets(f: KripkeFrame, val: Mapping[str, Iterable[str]], phi: ModalFormula) -> List[str]:
    """The worlds at which phi holds under one valuation."""
    props = {name: f.mask(worlds)[None, :] for name, worlds in val.items()}
    return f.worlds_of(_truth(phi, f.matrix, props)[0])


@dataclass(frozen=True)
class Validity:
    valid: bool
    valuation: Optional[Dict[str, List[str]]] = None
    world: Optional[str] = None


def _all_valuations(names: List[str], n: int) -> Dict[str, np.ndarray]:
    """Valuation v makes atom i true at world j iff bit i*n+j of v is set."""
    codes = np.arange(2 ** (len(names) * n), dtype=np.int64)[:, None]
    return {name: ((codes >> (i * n + np.arange(n))) & 1).astype(bool) for i, name in enumerate(names)}


def valid_on_frame(f: KripkeFrame, phi: ModalFormula, budget: int = VALUATION_BUDGET) -> Validity:
    """Check phi at every world under every valuation; the first counterexample in valuation order is returned."""
    names = sorted(atoms_of(phi))
    if len(names) * f.n > 62 or 2 ** (len(names) * f.n) > budget:
        raise SearchBudgetExceeded("%d atoms on %d worlds exceed the valuation budget %d" % (len(names), f.n, budget))
    props = _all_valuations(names, f.n)
    failures = np.argwhere(~_truth(phi, f.matrix, props))
    if not len(failures):
        return Validity(True)
    v, w = failures[0]
    valuation = {name: f.worlds_of(props[name][v]) for name in names}
    logger.debug("%s fails at world %s" % (phi, f.worlds[w]))
    return Validity(False, valuation, f.worlds[w])


def validity_to_json(result: Validity) -> dict:
    if result.valid:
        return {"valid": True}
    return {"valid": False, "counterexample": {"valuation": result.valuation, "world": result.world}}


@dataclass(frozen=True)
class S4Report:
    is_reflexive: bool
    is_transitive: bool
    t_valid: bool
    four_valid: bool


def _s4_report(f: KripkeFrame, budget: int) -> S4Report:
    return S4Report(is_reflexive(f.matrix), is_transitive(f.matrix),
                    valid_on_frame(f, T_AXIOM, budget).valid, valid_on_frame(f, FOUR_AXIOM, budget).valid)


def s4_correspondence(f: KripkeFrame, budget: int = VALUATION_BUDGET) -> S4Report:
    report = _s4_report(f, budget)
    if report.is_reflexive != report.t_valid or report.is_transitive != report.four_valid:
        raise CorrespondenceViolation("Frame %s breaks the S4 correspondence: %r" % (frame_to_json(f), report))
    return report


def all_frames(n: int) -> Iterable[KripkeFrame]:
    """Every frame on the worlds 1..n, in order of the bit code of its adjacency matrix."""
    bits = np.arange(n * n)
    for code in range(2 ** (n * n)):
        yield KripkeFrame.from_matrix(((code >> bits) & 1).astype(bool).reshape(n, n))


def frame_sweep(n: int, budget: int = VALUATION_BUDGET) -> pd.DataFrame:
    rows = []
    for code, f in enumerate(all_frames(n)):
        r = _s4_report(f, budget)
        rows.append({'frame': code, 'reflexive': r.is_reflexive, 'transitive': r.is_transitive,
                     't_valid': r.t_valid, 'four_valid': r.four_valid})
    logger.debug("Swept %d frames on %d worlds" % (len(rows), n))
    return pd.DataFrame(rows, columns=['frame', 'reflexive', 'transitive', 't_valid', 'four_valid'])


def _closure_rows(m: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Closure of every row of a, a (subsets, worlds) boolean matrix."""
    return a | _dia(a, m)


def closure(f: KripkeFrame, a: Iterable[str]) -> FrozenSet[str]:
    """A together with every world that sees into A."""
    return frozenset(f.worlds_of(_closure_rows(f.matrix, f.mask(a)[None, :])[0]))


@dataclass(frozen=True)
class KuratowskiReport:
    empty: bool
    extensive: bool
    additive: bool
    idempotent: bool
    is_transitive: bool
    reflexive_closure_transitive: bool
    idempotency_failure: Optional[Tuple[str, ...]] = None


def kuratowski_check(f: KripkeFrame, max_worlds: int = KURATOWSKI_MAX_WORLDS) -> KuratowskiReport:
    """
    Sweep the closure laws over all subsets.  Idempotency holds exactly when the
    reflexive closure of access is transitive, which on reflexive frames is
    transitivity itself.
    """
    if f.n > max_worlds:
        raise SizeBudgetExceeded("%d worlds exceed the subset sweep limit %d" % (f.n, max_worlds))
    m = f.matrix
    weights = 1 << np.arange(f.n, dtype=np.int64)
    subsets = ((np.arange(2 ** f.n, dtype=np.int64)[:, None] >> np.arange(f.n)) & 1).astype(bool)
    closed = _closure_rows(m, subsets)
    twice = _closure_rows(m, closed)
    codes = closed.astype(np.int64) @ weights

    additive = True
    for a in range(len(codes)):
        if np.any(codes[a | np.arange(len(codes))] != (codes[a] | codes)):
            additive = False
            break

    stable = np.all(twice == closed, axis=1)
    failure = None
    if not stable.all():
        failure = tuple(f.worlds_of(subsets[np.flatnonzero(~stable)[0]]))
    report = KuratowskiReport(empty=not bool(closed[0].any()),
                              extensive=not bool(np.any(subsets & ~closed)),
                              additive=additive,
                              idempotent=bool(stable.all()),
                              is_transitive=is_transitive(m),
                              reflexive_closure_transitive=is_transitive(m | np.eye(f.n, dtype=bool)),
                              idempotency_failure=failure)
    if report.idempotent != report.reflexive_closure_transitive:
        raise CorrespondenceViolation("Frame %s: idempotency %s but reflexive transitivity %s" % (
            frame_to_json(f), report.idempotent, report.reflexive_closure_transitive))
    return report


def closure_sweep(n: int, max_worlds: int = KURATOWSKI_MAX_WORLDS) -> pd.DataFrame:
    rows = []
    for code, f in enumerate(all_frames(n)):
        r = kuratowski_check(f, max_worlds)
        rows.append({'frame': code, 'empty': r.empty, 'extensive': r.extensive, 'additive': r.additive,
                     'idempotent': r.idempotent, 'transitive': r.is_transitive, 'reflexive': is_reflexive(f.matrix),
                     'reflexive_closure_transitive': r.reflexive_closure_transitive})
    return pd.DataFrame(rows)
