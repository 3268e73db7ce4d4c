"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from synthesis import logger
from synthesis.exceptions import OutOfRange, ConfigError, ParseError
from synthesis.forms import Form
from synthesis.foundation import SelectionRule, fundamental_neighbourhood
from synthesis.systems import RationalInterval, FormalSystem, dyadic_system, dyadic_children, interval_of, \
    constant_digit_rule, decimal_system
from synthesis.utils import format_fraction, parse_fraction

SQRT2_MINUS_ONE = 'sqrt2m1'


@dataclass(frozen=True)
class ComputableReal:
    rule: SelectionRule
    label: str

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class Less:
    def __str__(self):
        return 'Less'


@dataclass(frozen=True)
class Greater:
    def __str__(self):
        return 'Greater'


@dataclass(frozen=True)
class IndistinguishableAt:
    precision: int

    def __str__(self):
        return 'IndistinguishableAt(%d)' % self.precision


Comparison = Union[Less, Greater, IndistinguishableAt]


def _margin_rule(system: FormalSystem, margin: Callable[[RationalInterval], Optional[Fraction]],
                 label: str) -> SelectionRule:
    """
    Pick among the three dyadic children one admissible child with the largest margin;
    ties go to the leftmost child.  `margin` returns None for inadmissible children.
    """
    def choose(x: Form) -> Optional[Form]:
        best, best_margin = None, None
        for child in dyadic_children(interval_of(x)):
            m = margin(child)
            if m is not None and (best_margin is None or m > best_margin):
                best, best_margin = child, m
        return best.to_form() if best is not None else None

    return SelectionRule(system.root, choose, system.relation, label=label)


def from_rational(p) -> ComputableReal:
    p = Fraction(p)
    if not -1 < p < 1:
        raise OutOfRange("%s lies outside ]-1,1[" % format_fraction(p))

    def margin(iv: RationalInterval) -> Optional[Fraction]:
        if not iv.contains(p):
            return None
        return min(p - iv.lo, iv.hi - p)

    label = format_fraction(p)
    return ComputableReal(_margin_rule(dyadic_system(), margin, label), label)


def sqrt2_minus_one() -> ComputableReal:
    """sqrt(2) - 1, located by the exact test (lo+1)^2 < 2 < (hi+1)^2."""
    def margin(iv: RationalInterval) -> Optional[Fraction]:
        lo, hi = (iv.lo + 1) ** 2, (iv.hi + 1) ** 2
        if not (lo < 2 < hi):
            return None
        return min(2 - lo, hi - 2)

    return ComputableReal(_margin_rule(dyadic_system(), margin, SQRT2_MINUS_ONE), SQRT2_MINUS_ONE)


def locate(x: ComputableReal, k: int) -> RationalInterval:
    """An interval of x's chain of width at most 2^-k: its fundamental neighbourhood at depth k+1."""
    if k < 0:
        raise ValueError("Precision must be non-negative, got %d" % k)
    return interval_of(fundamental_neighbourhood(x.rule, k + 1))


def compare(x: ComputableReal, y: ComputableReal, k: int) -> Comparison:
    a, b = locate(x, k), locate(y, k)
    if a.hi <= b.lo:
        return Less()
    if b.hi <= a.lo:
        return Greater()
    logger.debug("%s and %s overlap at precision %d" % (x, y, k))
    return IndistinguishableAt(k)


def interval_to_json(iv: RationalInterval) -> dict:
    return {"lo": format_fraction(iv.lo), "hi": format_fraction(iv.hi), "width": format_fraction(iv.width)}


def comparison_to_json(c: Comparison) -> dict:
    if isinstance(c, IndistinguishableAt):
        return {"result": "IndistinguishableAt", "precision": c.precision}
    return {"result": str(c)}


def real_by_name(name: str) -> ComputableReal:
    """`sqrt2m1`, `rational:p/q` or a bare rational `p/q`."""
    if name == SQRT2_MINUS_ONE:
        return sqrt2_minus_one()
    text = name[len('rational:'):] if name.startswith('rational:') else name
    try:
        return from_rational(parse_fraction(text))
    except ParseError:
        raise ConfigError("Unknown real %r; use %s or rational:p/q" % (name, SQRT2_MINUS_ONE))


def build_rule(spec: dict) -> SelectionRule:
    """Selection rules from their config form: constant-digit, target-rational or builtin."""
    kind = spec.get('kind') if isinstance(spec, dict) else None
    try:
        if kind == 'constant-digit':
            return constant_digit_rule(int(spec['digit']), decimal_system())
        if kind == 'target-rational':
            return from_rational(Fraction(int(spec['p']), int(spec['q']))).rule
    except (KeyError, TypeError, ValueError, ZeroDivisionError):
        raise ConfigError("Incomplete %s rule %r" % (kind, spec))
    if kind == 'builtin':
        if spec.get('name') in ('sqrt2', SQRT2_MINUS_ONE):
            return sqrt2_minus_one().rule
        raise ConfigError("Unknown builtin rule %r" % spec.get('name'))
    raise ConfigError("Unknown rule specification %r" % (spec,))
