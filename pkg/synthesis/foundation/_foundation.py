"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

import threading
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from synthesis import logger
from synthesis.exceptions import ClosednessViolation, NoSuccessor, NotEnumerable, DepthMismatch, NotOnChain, \
    SearchBudgetExceeded
from synthesis.forms import Form
from synthesis.relations import ExtensionRelation, FiniteCarrier, enumerate_paths, related_star
from synthesis.utils import NODE_BUDGET


class SelectionRule:
    """
    A point of a projective foundation: a root form and a deterministic choice of one
    successor per form.  Chain prefixes are memoized per rule; the cache only grows
    and is extended under the rule's lock.
    """

    def __init__(self, root: Form, choose: Callable[[Form], Optional[Form]], system: ExtensionRelation,
                 label: str = ''):
        self.root = root
        self.choose = choose
        self.system = system
        self.label = label
        self._forms = [root]
        self._terminal = False
        self._lock = threading.Lock()

    def __repr__(self):
        return "SelectionRule(%s from %s)" % (self.label or '?', self.root)

    def _extend_to(self, n: int):
        with self._lock:
            while len(self._forms) <= n and not self._terminal:
                x = self._forms[-1]
                y = self.choose(x)
                if y is None:
                    if self.system.enumerable and self.system.successors(x):
                        raise ClosednessViolation(
                            "Rule %s stalls at %s although %s offers successors" % (self.label, x, self.system.name))
                    logger.debug("Rule %s reached terminal form %s" % (self.label, x))
                    self._terminal = True
                elif not self.system(x, y):
                    raise ClosednessViolation(
                        "Rule %s chose %s, which does not extend %s" % (self.label, y, x))
                else:
                    self._forms.append(y)
            return tuple(self._forms[:n + 1]), self._terminal and len(self._forms) <= n


@dataclass(frozen=True)
class ChainPrefix:
    rule: SelectionRule
    forms: Tuple[Form, ...]
    terminal: bool = False

    def __len__(self):
        return len(self.forms)

    def is_prefix_of(self, other: 'ChainPrefix') -> bool:
        return other.forms[:len(self.forms)] == self.forms


@dataclass(frozen=True)
class FoundationHandle:
    """The projective foundation of a system at a base form, as an intension only."""
    system: ExtensionRelation
    base: Form


@dataclass(frozen=True)
class Cover:
    base: Form
    depth: int
    parts: Tuple[Form, ...]
    system: Optional[ExtensionRelation] = field(default=None, compare=False)

    def __len__(self):
        return len(self.parts)

    def __contains__(self, f):
        return f in self.parts


@dataclass(frozen=True)
class ConditionCover:
    """A cover whose parts are the first forms below the base that satisfy a condition."""
    base: Form
    condition: str
    parts: Tuple[Tuple[Form, int], ...]

    @property
    def depth(self) -> int:
        return max((d for _, d in self.parts), default=0)


def chain_prefix(rule: SelectionRule, n: int) -> ChainPrefix:
    if n < 0:
        raise ValueError("Depth must be non-negative, got %d" % n)
    forms, terminal = rule._extend_to(n)
    return ChainPrefix(rule, forms, terminal)


def fundamental_neighbourhood(rule: SelectionRule, n: int) -> Form:
    prefix = chain_prefix(rule, n)
    if len(prefix.forms) <= n:
        raise NoSuccessor("Chain of %s ends at depth %d before %d" % (rule.label, len(prefix.forms) - 1, n))
    return prefix.forms[n]


def canonical_cover(h: FoundationHandle, k: int, budget: int = NODE_BUDGET) -> Cover:
    if not h.system.enumerable:
        raise NotEnumerable("The foundation of %s has no enumerable covers" % (h.system.label or h.system.name))
    if k < 0:
        raise ValueError("Depth must be non-negative, got %d" % k)
    level = [h.base]
    for depth in range(1, k + 1):
        nxt = {}
        for f in level:
            for g in h.system.successors(f):
                nxt.setdefault(g, None)
                if len(nxt) > budget:
                    logger.warning("Cover of %s at depth %d exceeds the node budget %d" % (h.base, depth, budget))
                    raise SearchBudgetExceeded("Cover of %s at depth %d exceeds %d parts" % (h.base, depth, budget))
        level = list(nxt)
        logger.debug("Cover of %s at depth %d has %d parts" % (h.base, depth, len(level)))
    return Cover(h.base, k, tuple(level), h.system)


def _reachable_within(system: ExtensionRelation, starts: Sequence[Form], d: int, budget: int) -> set:
    reached = set(starts)
    frontier = list(starts)
    for _ in range(d):
        nxt = []
        for f in frontier:
            for g in system.successors(f):
                if g not in reached:
                    reached.add(g)
                    nxt.append(g)
        if len(reached) > budget:
            raise SearchBudgetExceeded("Refinement check exceeds %d forms" % budget)
        frontier = nxt
    return reached


def refines(fine: Cover, coarse: Cover, budget: int = NODE_BUDGET, h: Optional[FoundationHandle] = None) -> bool:
    """
    Every part of `fine` is reachable from some part of `coarse` within the depth gap.
    Covers built by hand carry no system; pass the foundation handle for those.
    """
    gap = fine.depth - coarse.depth
    if gap < 0:
        raise DepthMismatch("Cover of depth %d cannot refine one of depth %d" % (fine.depth, coarse.depth))
    if gap == 0:
        return set(fine.parts) <= set(coarse.parts)
    system = fine.system or coarse.system or (h.system if h is not None else None)
    if system is None:
        raise NotEnumerable("Neither cover of %s carries a system; refinement needs a foundation handle" % coarse.base)
    if system.enumerable:
        reached = _reachable_within(system, coarse.parts, gap, budget)
        return all(p in reached for p in fine.parts)
    carrier = FiniteCarrier(tuple(coarse.parts) + tuple(fine.parts))
    return all(any(related_star(system, c, p, gap, carrier=carrier, budget=budget) for c in coarse.parts)
               for p in fine.parts)


def complete(cover: Cover, h: FoundationHandle, budget: int = NODE_BUDGET) -> bool:
    """The converse of refinement: the cover contains every form of its depth."""
    return set(canonical_cover(h, cover.depth, budget=budget).parts) <= set(cover.parts)


def point_passes_through(rule: SelectionRule, cover: Cover) -> Form:
    if cover.base != rule.root:
        raise NotOnChain("Cover of %s does not start at the root %s of %s" % (cover.base, rule.root, rule.label))
    part = fundamental_neighbourhood(rule, cover.depth)
    if part not in cover.parts:
        raise NotOnChain("Chain of %s leaves the cover at %s" % (rule.label, part))
    return part


def rule_relation(rule: SelectionRule, n: int) -> ExtensionRelation:
    """The minimal chain of a rule up to depth n, as a subrelation of its system."""
    forms = chain_prefix(rule, n).forms
    pairs = frozenset(zip(forms, forms[1:]))
    successor = dict(pairs)

    return ExtensionRelation(name=rule.system.name, holds=lambda f, g: (f, g) in pairs,
                             enumerate=lambda f: (successor[f],) if f in successor else (),
                             branching_bound=1, label='rule:%s' % rule.label)


def path_rule(system: ExtensionRelation, root: Form, steps: Sequence[Form], label: str = '') -> SelectionRule:
    """A rule that follows the given path and then always takes the first successor."""
    follow = dict(zip((root,) + tuple(steps), steps))

    def choose(x: Form) -> Optional[Form]:
        if x in follow:
            return follow[x]
        succ = system.successors(x)
        return succ[0] if succ else None

    return SelectionRule(root, choose, system, label=label or 'path')


def enumerate_rules(system: ExtensionRelation, root: Form, depth: int, budget: int = NODE_BUDGET) -> List[SelectionRule]:
    """One selection rule per distinct chain prefix of the given depth."""
    return [path_rule(system, root, p.steps, label='path-%d' % i)
            for i, p in enumerate(enumerate_paths(system, root, depth, budget=budget))]


def condition_cover(h: FoundationHandle, condition: Callable[[Form], bool], max_depth: int,
                    label: str = 'condition', budget: int = NODE_BUDGET) -> ConditionCover:
    """
    Cover the base by the first forms along every branch that satisfy `condition`.
    Every branch must meet the condition within max_depth.
    """
    if not h.system.enumerable:
        raise NotEnumerable("Condition covers need an enumerable system")
    parts = {}
    frontier = [h.base]
    for depth in range(max_depth + 1):
        nxt = {}
        for f in frontier:
            if condition(f):
                parts.setdefault(f, depth)
            else:
                for g in h.system.successors(f):
                    nxt.setdefault(g, None)
        if len(parts) + len(nxt) > budget:
            raise SearchBudgetExceeded("Condition cover of %s exceeds %d forms" % (h.base, budget))
        frontier = [f for f in nxt if f not in parts]
        if not frontier:
            break
    if frontier:
        raise SearchBudgetExceeded("Condition %s is not met on every branch below %s within depth %d" % (
            label, h.base, max_depth))
    return ConditionCover(h.base, label, tuple(parts.items()))
