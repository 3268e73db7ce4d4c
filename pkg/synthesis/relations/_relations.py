"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix

from synthesis import logger
from synthesis.exceptions import StratificationError, SearchBudgetExceeded, NotASubrelation, SymbolClash, \
    NotEnumerable, IllFormed
from synthesis.forms import Alphabet, Form, FormalLanguage, footprint
from synthesis.utils import NODE_BUDGET


@dataclass(frozen=True)
class ExtensionRelation:
    """
    A decidable extension relation on forms.

    `name` is the relation's own symbol; it is what the stratification guard looks
    for in the footprint of a form.  `enumerate`, when present, lists the successors
    of a form in a fixed order and agrees with `holds`.
    """
    name: str
    holds: Callable[[Form, Form], bool]
    enumerate: Optional[Callable[[Form], Sequence[Form]]] = None
    branching_bound: Optional[int] = None
    label: str = ''

    def __call__(self, f: Form, g: Form) -> bool:
        return bool(self.holds(f, g))

    @property
    def enumerable(self) -> bool:
        return self.enumerate is not None

    def successors(self, f: Form) -> Tuple[Form, ...]:
        if self.enumerate is None:
            raise NotEnumerable("Relation %s has no successor enumerator" % (self.label or self.name))
        succ = tuple(self.enumerate(f))
        if self.branching_bound is not None and len(succ) > self.branching_bound:
            raise IllFormed("Relation %s yields %d successors of %s, bound is %d" % (
                self.label or self.name, len(succ), f, self.branching_bound))
        return succ


@dataclass(frozen=True)
class RelationalNeighbourhood:
    """The concept R[f]: queryable always, enumerable only when R is."""
    base: Form
    relation: ExtensionRelation

    def __contains__(self, g: Form) -> bool:
        return neighbourhood_contains(self, g)

    def members(self) -> Tuple[Form, ...]:
        return self.relation.successors(self.base)


@dataclass(frozen=True)
class Path:
    relation: ExtensionRelation
    steps: Tuple[Form, ...] = ()
    root: Optional[Form] = None

    def __post_init__(self):
        object.__setattr__(self, 'steps', tuple(self.steps))
        chain = ((self.root,) if self.root is not None else ()) + self.steps
        for f, g in zip(chain, chain[1:]):
            if not self.relation(f, g):
                raise IllFormed("Path step %s -> %s is not related by %s" % (f, g, self.relation.name))

    def __len__(self):
        return len(self.steps)

    @property
    def end(self) -> Optional[Form]:
        if self.steps:
            return self.steps[-1]
        return self.root


@dataclass(frozen=True)
class FiniteCarrier:
    forms: Tuple[Form, ...] = field(default=())

    def __post_init__(self):
        unique = tuple(dict.fromkeys(self.forms))
        if not unique:
            raise IllFormed("A finite carrier must be non-empty")
        object.__setattr__(self, 'forms', unique)

    def __len__(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __contains__(self, f):
        return f in self.index

    @property
    def index(self):
        cached = self.__dict__.get('_index')
        if cached is None:
            cached = {f: i for i, f in enumerate(self.forms)}
            object.__setattr__(self, '_index', cached)
        return cached


def _guard(r: ExtensionRelation, f: Form):
    if r.name in footprint(f):
        raise StratificationError(
            "Form %s is built with the symbol %s and cannot be an argument of %s" % (f, r.name, r.name))


def stratified_apply(r: ExtensionRelation, f: Form) -> RelationalNeighbourhood:
    _guard(r, f)
    return RelationalNeighbourhood(f, r)


def neighbourhood_contains(n: RelationalNeighbourhood, g: Form) -> bool:
    _guard(n.relation, n.base)
    _guard(n.relation, g)
    return n.relation(n.base, g)


def _ordered_unique(forms: Iterable[Form]) -> List[Form]:
    return list(dict.fromkeys(forms))


def transitive_step(rn: ExtensionRelation, r: ExtensionRelation,
                    carrier: Optional[FiniteCarrier] = None) -> ExtensionRelation:
    """
    From a relation for f <-^n g, build the one for f <-^(n+1) h.

    The intermediate g is found through rn's enumerator; when rn has none, a
    carrier must bound the search for g.
    """
    def holds(f: Form, h: Form) -> bool:
        if rn.enumerable:
            middle = rn.successors(f)
        elif carrier is not None:
            middle = [g for g in carrier if rn(f, g)]
        else:
            raise NotEnumerable("Composition with %s needs an enumerator or a carrier" % (rn.label or rn.name))
        return any(r(g, h) for g in middle)

    enumerate_ = None
    bound = None
    if rn.enumerable and r.enumerable:
        def enumerate_(f: Form) -> List[Form]:
            return _ordered_unique(h for g in rn.successors(f) for h in r.successors(g))
        if rn.branching_bound is not None and r.branching_bound is not None:
            bound = rn.branching_bound * r.branching_bound
    return ExtensionRelation(name=r.name, holds=holds, enumerate=enumerate_, branching_bound=bound,
                             label="%s;%s" % (rn.label or rn.name, r.label or r.name))


def power(r: ExtensionRelation, n: int) -> ExtensionRelation:
    """The n-fold iterate of r (n >= 1) built by repeated transitive_step."""
    if n < 1:
        raise ValueError("power needs n >= 1, got %d" % n)
    rn = r
    for _ in range(n - 1):
        rn = transitive_step(rn, r)
    return rn


def _successors_within(r: ExtensionRelation, f: Form, carrier: Optional[FiniteCarrier]) -> Sequence[Form]:
    if r.enumerable:
        succ = r.successors(f)
        if carrier is not None:
            succ = [g for g in succ if g in carrier]
        return succ
    if carrier is None:
        raise NotEnumerable("Search over %s needs an enumerator or a carrier" % (r.label or r.name))
    return [g for g in carrier if r(f, g)]


def related_star(r: ExtensionRelation, f: Form, g: Form, max_depth: int,
                 carrier: Optional[FiniteCarrier] = None, budget: int = NODE_BUDGET) -> bool:
    """Bounded breadth-first search for a path f -> ... -> g of 1 to max_depth steps."""
    if max_depth < 1:
        raise ValueError("max_depth must be positive, got %d" % max_depth)
    frontier = [f]
    seen = set()
    for depth in range(1, max_depth + 1):
        next_frontier = []
        for x in frontier:
            for y in _successors_within(r, x, carrier):
                if y == g:
                    logger.debug("Reached %s from %s in %d steps" % (g, f, depth))
                    return True
                if y not in seen:
                    seen.add(y)
                    next_frontier.append(y)
                    if len(seen) > budget:
                        logger.warning("Search from %s exceeded the node budget %d at depth %d" % (f, budget, depth))
                        raise SearchBudgetExceeded(
                            "Frontier from %s exceeds %d nodes at depth %d" % (f, budget, depth))
        if not next_frontier:
            break
        frontier = next_frontier
    return False


def enumerate_paths(r: ExtensionRelation, root: Form, n: int, budget: int = NODE_BUDGET) -> List[Path]:
    """All length-n paths from root, in lexicographic order of successor choices."""
    if n < 0:
        raise ValueError("Path length must be non-negative, got %d" % n)
    partial = [()]
    for depth in range(n):
        extended = []
        for steps in partial:
            last = steps[-1] if steps else root
            for g in r.successors(last):
                extended.append(steps + (g,))
                if len(extended) > budget:
                    logger.warning("Path enumeration from %s exceeded the node budget %d" % (root, budget))
                    raise SearchBudgetExceeded("More than %d paths of length %d from %s" % (budget, depth + 1, root))
        partial = extended
    logger.debug("Enumerated %d paths of length %d from %s" % (len(partial), n, root))
    return [Path(r, steps, root=root) for steps in partial]


def relation_matrix(r: ExtensionRelation, carrier: FiniteCarrier) -> csr_matrix:
    """Sparse 0/1 matrix of r restricted to the carrier (rows: f, columns: g)."""
    index = carrier.index
    rows, cols = [], []
    for i, f in enumerate(carrier.forms):
        if r.enumerable:
            targets = (index[g] for g in r.successors(f) if g in index)
        else:
            targets = (j for j, g in enumerate(carrier.forms) if r(f, g))
        for j in targets:
            rows.append(i)
            cols.append(j)
    n = len(carrier)
    return csr_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=(n, n))


def is_subrelation(r_prime: ExtensionRelation, r: ExtensionRelation, carrier: FiniteCarrier) -> bool:
    rp = relation_matrix(r_prime, carrier)
    rr = relation_matrix(r, carrier)
    return (rp - rp.multiply(rr)).count_nonzero() == 0


def _require_subrelation(r_prime, r, carrier):
    if not is_subrelation(r_prime, r, carrier):
        raise NotASubrelation("%s is not a subrelation of %s on the carrier" % (
            r_prime.label or r_prime.name, r.label or r.name))


def is_projective_chain(r_prime: ExtensionRelation, r: ExtensionRelation, carrier: FiniteCarrier) -> bool:
    """
    f R' g and f R' h imply g R' k and h R' k for some k in the carrier.
    The case g = h holds trivially.
    """
    _require_subrelation(r_prime, r, carrier)
    p = relation_matrix(r_prime, carrier)
    share_parent = (p.T @ p).toarray() > 0
    share_child = (p @ p.T).toarray() > 0
    np.fill_diagonal(share_parent, False)
    return not np.any(share_parent & ~share_child)


def is_closed_chain(r_prime: ExtensionRelation, r: ExtensionRelation, carrier: FiniteCarrier) -> bool:
    """
    Every form touched by R' has an R'-successor whenever it has an R-successor in
    the carrier, and an R'-predecessor whenever it has an R-predecessor.
    """
    _require_subrelation(r_prime, r, carrier)
    p = relation_matrix(r_prime, carrier).toarray() > 0
    q = relation_matrix(r, carrier).toarray() > 0
    touched = p.any(axis=1) | p.any(axis=0)
    stalls = touched & q.any(axis=1) & ~p.any(axis=1)
    orphans = touched & q.any(axis=0) & ~p.any(axis=0)
    if stalls.any() or orphans.any():
        logger.debug("Chain %s is not closed: %d stalls, %d orphans" % (
            r_prime.label or r_prime.name, int(stalls.sum()), int(orphans.sum())))
        return False
    return True


def cone(apex_token: str, members: Sequence[Form]) -> Tuple[Form, ExtensionRelation]:
    members = tuple(members)
    for m in members:
        if apex_token in footprint(m):
            raise SymbolClash("Apex %s occurs in member %s" % (apex_token, m))
    base = members[0].alphabet if members else Alphabet('cone', (apex_token,))
    apex = Form(base.extended('%s^%s' % (base.name, apex_token), [apex_token]), (apex_token,))
    listed = frozenset(members)

    def holds(g: Form, f: Form) -> bool:
        return g == apex and f in listed

    def enumerate_(g: Form) -> Tuple[Form, ...]:
        return members if g == apex else ()

    relation = ExtensionRelation(name='^' + apex_token, holds=holds, enumerate=enumerate_,
                                 branching_bound=len(members) or None, label='cone:%s' % apex_token)
    return apex, relation


def path_alphabet(base: Alphabet) -> Alphabet:
    separator = '|' if ',' in base else ','
    return base.extended('%s-paths' % base.name, ['<', '>', separator])


def _separator(alphabet: Alphabet) -> str:
    return alphabet.symbols[-1]


def path_form(steps: Sequence[Form], base: Alphabet) -> Form:
    alphabet = path_alphabet(base)
    sep = _separator(alphabet)
    tokens = ['<']
    for i, f in enumerate(steps):
        if i:
            tokens.append(sep)
        tokens.extend(f.tokens)
    tokens.append('>')
    return Form(alphabet, tuple(tokens))


def path_steps(p: Form, base: Alphabet) -> Tuple[Form, ...]:
    sep = _separator(path_alphabet(base))
    if len(p.tokens) < 2 or p.tokens[0] != '<' or p.tokens[-1] != '>':
        raise IllFormed("%s is not a path form" % p)
    body = p.tokens[1:-1]
    if not body:
        return ()
    chunks, current = [], []
    for t in body:
        if t == sep:
            chunks.append(current)
            current = []
        else:
            current.append(t)
    chunks.append(current)
    if any(not c for c in chunks):
        raise IllFormed("%s has an empty path step" % p)
    return tuple(Form(base, tuple(c)) for c in chunks)


def path_relation(r: ExtensionRelation, base: Alphabet, roots: Optional[Sequence[Form]] = None) -> ExtensionRelation:
    """
    The path relation derived from r: <f1..fn> extends to <f1..fn,g> when fn <- g,
    and the empty path <> extends to any one-step path <f>.
    """
    def holds(p: Form, q: Form) -> bool:
        try:
            ps, qs = path_steps(p, base), path_steps(q, base)
        except IllFormed:
            return False
        if len(qs) != len(ps) + 1 or qs[:-1] != ps:
            return False
        return not ps or r(ps[-1], qs[-1])

    enumerate_ = None
    if r.enumerable:
        def enumerate_(p: Form) -> List[Form]:
            ps = path_steps(p, base)
            if not ps:
                if roots is None:
                    raise NotEnumerable("The empty path extends to every form; supply roots")
                return [path_form((f,), base) for f in roots]
            return [path_form(ps + (g,), base) for g in r.successors(ps[-1])]

    return ExtensionRelation(name=r.name, holds=holds, enumerate=enumerate_, label='paths:%s' % (r.label or r.name))


def chain_cone(apex_token: str, parts: Sequence[Form]) -> Tuple[Form, ExtensionRelation]:
    """The cone over the finite initial parts f, (f, f1), ... of a chain, each encoded as a path form."""
    if not parts:
        return cone(apex_token, [])
    base = parts[0].alphabet
    return cone(apex_token, [path_form(parts[:i + 1], base) for i in range(len(parts))])


def trivial_relation(language: FormalLanguage) -> ExtensionRelation:
    """Relates any two well-formed forms; every relation of the language specifies it."""
    return ExtensionRelation(name='⊤', holds=lambda f, g: language.admits(f) and language.admits(g),
                             label='trivial:%s' % language.name)
