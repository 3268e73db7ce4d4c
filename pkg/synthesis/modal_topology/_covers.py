"""
Cover structures on finite posets and the four covering axioms.

A listed cover (a, B) says B covers a.  Listed covers are weakened by the order:
a is covered by U when some listed (a, B) has every element of B below some
element of U.

This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import shortest_path

from synthesis import logger
from synthesis.exceptions import IllFormed, ParseError, NotAPartialOrder, MeetUndefined, SearchBudgetExceeded
from synthesis.foundation import canonical_cover
from synthesis.systems import decimal_system
from synthesis.utils import FG_SATURATION_BUDGET

MAX_REPORTED = 5


@dataclass(frozen=True)
class CoverStructure:
    elements: Tuple[str, ...]
    order: FrozenSet[Tuple[str, str]]
    covers: Tuple[Tuple[str, FrozenSet[str]], ...]

    def __post_init__(self):
        known = set(self.elements)
        if len(known) != len(self.elements):
            raise IllFormed("Poset elements must be distinct")
        mentioned = {x for pair in self.order for x in pair} | \
                    {x for a, b in self.covers for x in (a,) + tuple(b)}
        if mentioned - known:
            raise IllFormed("Unknown poset elements: %s" % ", ".join(sorted(mentioned - known)))
        if any(not b for _, b in self.covers):
            raise IllFormed("A cover must be a non-empty set")
        leq = self.leq
        clash = leq & leq.T & ~np.eye(len(self.elements), dtype=bool)
        if clash.any():
            i, j = np.argwhere(clash)[0]
            raise NotAPartialOrder("%s and %s are below each other" % (self.elements[i], self.elements[j]))

    @cached_property
    def index(self) -> Dict[str, int]:
        return {x: i for i, x in enumerate(self.elements)}

    @cached_property
    def leq(self) -> np.ndarray:
        """leq[i, j] iff element i <= element j; the reflexive transitive closure of the listed order."""
        n = len(self.elements)
        rows = [self.index[a] for a, _ in self.order]
        cols = [self.index[b] for _, b in self.order]
        graph = sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
        dist = shortest_path(graph, method='D', directed=True, unweighted=True)
        out = np.isfinite(dist)
        out.setflags(write=False)
        return out

    @cached_property
    def _owners(self) -> np.ndarray:
        return np.array([self.index[a] for a, _ in self.covers], dtype=np.int64)

    @cached_property
    def _cover_matrix(self) -> sparse.csr_matrix:
        """Row c marks the elements of listed cover c."""
        rows, cols = [], []
        for c, (_, b) in enumerate(self.covers):
            for x in b:
                rows.append(c)
                cols.append(self.index[x])
        return sparse.csr_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)),
                                 shape=(len(self.covers), len(self.elements)))

    @cached_property
    def targets(self) -> Tuple[FrozenSet[str], ...]:
        """The distinct listed covering sets."""
        return tuple(dict.fromkeys(frozenset(b) for _, b in self.covers))

    def mask(self, u: Iterable[str]) -> np.ndarray:
        v = np.zeros(len(self.elements), dtype=bool)
        for x in u:
            if x not in self.index:
                raise IllFormed("Unknown poset element %s" % x)
            v[self.index[x]] = True
        return v

    def down(self, mask: np.ndarray) -> np.ndarray:
        """Everything below some element of the mask."""
        return self.leq[:, mask].any(axis=1)

    def _inside(self, region: np.ndarray) -> np.ndarray:
        """For every listed cover, whether all of its elements lie in region; region is (elements, k)."""
        outside = self._cover_matrix @ (~region).astype(np.int64)
        return np.asarray(outside) == 0

    def covered_mask(self, a: str, u_mask: np.ndarray) -> bool:
        region = self.down(u_mask)[:, None]
        inside = self._inside(region)[:, 0]
        return bool(np.any(inside[self._owners == self.index[a]]))

    def covered(self, a: str, u: Iterable[str]) -> bool:
        return self.covered_mask(a, self.mask(u))


def cover_structure_from_json(data: dict) -> CoverStructure:
    """{"order": [[a, b], ...] meaning a <= b, "covers": [{"of": a, "by": [...]}], "elements": [...] optional}"""
    try:
        order = frozenset((str(a), str(b)) for a, b in data.get('order', []))
        covers = tuple((str(c['of']), frozenset(str(x) for x in c['by'])) for c in data.get('covers', []))
    except (KeyError, TypeError, ValueError):
        raise ParseError("Not a cover structure encoding: %r" % (data,))
    elements = list(dict.fromkeys([str(x) for x in data.get('elements', [])] +
                                  [x for pair in sorted(order) for x in pair] +
                                  [x for a, b in covers for x in (a,) + tuple(sorted(b))]))
    return CoverStructure(tuple(elements), order, covers)


def cover_structure_to_json(cs: CoverStructure) -> dict:
    return {"elements": list(cs.elements),
            "order": sorted(list(p) for p in cs.order),
            "covers": [{"of": a, "by": sorted(b)} for a, b in cs.covers]}


def derive(cs: CoverStructure, a: str, u: Iterable[str], budget: int = FG_SATURATION_BUDGET) -> bool:
    """
    Whether a is covered by u in the least covering relation containing the listed
    covers that is downward closed and transitive: saturate from everything below u,
    adding the owner of every listed cover that lies inside.
    """
    reached = cs.down(cs.mask(u))
    steps = 0
    while True:
        owners = cs._owners[cs._inside(reached[:, None])[:, 0]]
        fresh = owners[~reached[owners]]
        if not len(fresh):
            break
        reached = reached | cs.down(np.isin(np.arange(len(cs.elements)), fresh))
        steps += len(cs.covers)
        if steps > budget:
            raise SearchBudgetExceeded("Cover saturation exceeds %d steps" % budget)
    return bool(reached[cs.index[a]])


@dataclass
class AxiomReport:
    a1: bool = True
    a2: bool = True
    a3: bool = True
    a4: bool = True
    a3_applicable: bool = True
    failures: Dict[str, List[str]] = field(default_factory=dict)
    meet_undefined: List[Tuple[str, str]] = field(default_factory=list)

    def fail(self, axiom: str, why: str):
        setattr(self, axiom, False)
        reported = self.failures.setdefault(axiom, [])
        if len(reported) < MAX_REPORTED:
            reported.append(why)

    def to_json(self) -> dict:
        return {"A1": self.a1, "A2": self.a2, "A3": self.a3 if self.a3_applicable else "not applicable",
                "A4": self.a4, "failures": self.failures,
                "meet_undefined": [list(p) for p in self.meet_undefined]}


def _meet(cs: CoverStructure, i: int, j: int) -> Optional[int]:
    """Index of the greatest lower bound of i and j; None if they have lower bounds but no greatest."""
    lower = np.flatnonzero(cs.leq[:, i] & cs.leq[:, j])
    below = cs.leq[np.ix_(lower, lower)]
    top = lower[below.all(axis=0)]
    return int(top[0]) if len(top) else None


def _minimal_covers(cs: CoverStructure, cover_down: np.ndarray) -> Dict[int, List[int]]:
    """Per element, its listed covers whose down-closure strictly contains no other's; one per distinct closure."""
    by_owner: Dict[int, Dict[bytes, int]] = {}
    for c, x in enumerate(cs._owners):
        by_owner.setdefault(int(x), {}).setdefault(cover_down[c].tobytes(), c)
    minimal = {}
    for x, distinct in by_owner.items():
        cands = list(distinct.values())
        minimal[x] = [c for c in cands
                      if not any(d != c and not (cover_down[d] & ~cover_down[c]).any() for d in cands)]
    return minimal


def fg_axiom_check(cs: CoverStructure, strict: bool = False, budget: int = FG_SATURATION_BUDGET) -> AxiomReport:
    """
    The four covering axioms over the listed data.

    A1 every element is covered by itself, and every set covers each of its members.
    A2 a <= b implies {b} covers a.
    A3 two covers of a meet to a cover of a; pairs without lower bounds drop out.
    A4 if A covers a and every x in A is covered by B_x, the union of the B_x covers a.  Taking B_x among
       the listed covers of x with a minimal down-closure decides every choice of covers.
    """
    report = AxiomReport()
    n = len(cs.elements)
    leq = cs.leq
    owners = cs._owners

    # covered[x, t]: x is covered by listed target t
    target_masks = np.array([cs.mask(t) for t in cs.targets]).T if cs.targets else np.zeros((n, 0), dtype=bool)
    regions = (leq.astype(np.float32) @ target_masks.astype(np.float32)) > 0
    inside = cs._inside(regions)
    covered = np.zeros((n, len(cs.targets)), dtype=bool)
    np.logical_or.at(covered, owners, inside)
    target_index = {t: k for k, t in enumerate(cs.targets)}

    # A1
    self_inside = cs._inside(leq)
    for x in range(n):
        if not self_inside[owners == x, x].any():
            report.fail('a1', "%s is not covered by {%s}" % (cs.elements[x], cs.elements[x]))
    for a, b in cs.covers:
        k = target_index[frozenset(b)]
        for x in sorted(b):
            if not covered[cs.index[x], k]:
                report.fail('a1', "%s is not covered by %s" % (x, sorted(b)))

    # A2: self_inside[c, b] says listed cover c lies below b
    below = np.zeros((n, n), dtype=bool)
    np.logical_or.at(below, owners, self_inside)
    for i, j in np.argwhere(leq & ~below)[:MAX_REPORTED]:
        report.fail('a2', "%s <= %s but {%s} does not cover it" % (cs.elements[i], cs.elements[j], cs.elements[j]))

    # A3
    has_lower = (leq.T.astype(np.float32) @ leq.astype(np.float32)) > 0
    meets_cache: Dict[Tuple[int, int], Optional[int]] = {}
    by_owner: Dict[int, List[np.ndarray]] = {}
    for c, (a, b) in enumerate(cs.covers):
        by_owner.setdefault(cs.index[a], []).append(np.array(sorted(cs.index[x] for x in b), dtype=np.int64))
    for a, sets in by_owner.items():
        for p in range(len(sets)):
            for q in range(p, len(sets)):
                left, right = sets[p], sets[q]
                lr = leq[np.ix_(left, right)]
                rl = leq[np.ix_(right, left)].T
                meets = set(left[lr.any(axis=1)].tolist()) | set(right[rl.any(axis=0)].tolist())
                undefined = False
                for i, j in np.argwhere(has_lower[np.ix_(left, right)] & ~lr & ~rl):
                    key = (int(left[i]), int(right[j]))
                    if key not in meets_cache:
                        meets_cache[key] = _meet(cs, *key)
                    if meets_cache[key] is None:
                        undefined = True
                        report.meet_undefined.append((cs.elements[key[0]], cs.elements[key[1]]))
                    else:
                        meets.add(meets_cache[key])
                if undefined:
                    report.a3_applicable = False
                    continue
                mask = np.zeros(n, dtype=bool)
                mask[list(meets)] = True
                if not meets or not cs.covered_mask(cs.elements[a], mask):
                    report.fail('a3', "the meet of two covers of %s does not cover it" % cs.elements[a])
    if report.meet_undefined and strict:
        x, y = report.meet_undefined[0]
        raise MeetUndefined("%s and %s have no greatest lower bound" % (x, y))

    # A4: one minimal listed cover per member of a listed cover; their union must cover its owner
    cover_down = np.asarray(cs._cover_matrix @ leq.T.astype(np.int64)) > 0
    minimal = _minimal_covers(cs, cover_down)
    combos = 0
    for c, (a, b) in enumerate(cs.covers):
        choices = [minimal.get(cs.index[x], []) for x in sorted(b)]
        if not all(choices):
            continue
        mine = owners == cs.index[a]
        for combo in itertools.product(*choices):
            combos += 1
            if combos > budget:
                raise SearchBudgetExceeded("Transitivity check exceeds %d unions" % budget)
            region = cover_down[list(combo)].any(axis=0)
            if not cs._inside(region[:, None])[mine, 0].any():
                union = sorted({y for k in combo for y in cs.covers[k][1]})
                report.fail('a4', "%s is covered through %s but not by %s" % (a, sorted(b), union))

    logger.info("Checked covering axioms on %d elements and %d covers" % (n, len(cs.covers)))
    return report


def decimal_cover_structure(depth: int = 3) -> CoverStructure:
    """Decimal forms of at most `depth` digits ordered by extension, with every canonical cover that fits."""
    system = decimal_system()
    levels = [[system.root]]
    for _ in range(depth):
        levels.append([g for f in levels[-1] for g in system.relation.successors(f)])
    elements = tuple(f.text for level in levels for f in level)
    order = frozenset((g.text, f.text) for level in levels[:-1] for f in level for g in system.relation.successors(f))
    covers = []
    for j, level in enumerate(levels):
        for f in level:
            for k in range(depth - j + 1):
                parts = canonical_cover(system.handle(f), k).parts
                covers.append((f.text, frozenset(p.text for p in parts)))
    logger.debug("Decimal cover structure of depth %d: %d elements, %d covers" % (depth, len(elements), len(covers)))
    return CoverStructure(elements, order, tuple(covers))
