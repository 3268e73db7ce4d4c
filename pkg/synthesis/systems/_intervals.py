"""
Exact rational intervals and the dyadic grid.

This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

from synthesis.exceptions import IllFormed, ParseError
from synthesis.forms import Alphabet, Form, FormalLanguage, make_form
from synthesis.utils import format_fraction

DIGITS = tuple('0123456789')

INTERVAL_ALPHABET = Alphabet('interval', (']', '[', ',', '/', '-') + DIGITS)

_RATIONAL = r'-?\d+(?:/\d+)?'
_INTERVAL_RE = re.compile(r'^\](%s),(%s)\[$' % (_RATIONAL, _RATIONAL))
_DYADIC_RE = re.compile(r'^D\(\s*(\d+)\s*,\s*(-?\d+)\s*\)$')


@dataclass(frozen=True)
class RationalInterval:
    """An open, non-degenerate interval ]lo,hi[ with exact rational endpoints."""
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'lo', Fraction(self.lo))
        object.__setattr__(self, 'hi', Fraction(self.hi))
        if not self.lo < self.hi:
            raise IllFormed("Interval ]%s,%s[ is empty" % (format_fraction(self.lo), format_fraction(self.hi)))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, q) -> bool:
        return self.lo < q < self.hi

    def within_closure_of(self, other: 'RationalInterval') -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def holds(self, other: 'RationalInterval') -> bool:
        """]r1,r2[ R ]s1,s2[ iff r1 < s1 < s2 < r2."""
        return self.lo < other.lo and other.hi < self.hi

    def holds_shrinking(self, other: 'RationalInterval') -> bool:
        return self.holds(other) and other.width < self.width / 2

    def encode(self) -> str:
        return "]%s,%s[" % (format_fraction(self.lo), format_fraction(self.hi))

    def to_form(self) -> Form:
        return Form(INTERVAL_ALPHABET, tuple(self.encode()))

    def __str__(self):
        return self.encode()


@dataclass(frozen=True)
class DyadicInterval:
    """]i/2^k,(i+1)/2^k[ inside [-1,1]; written D(k,i) on input."""
    k: int
    i: int

    def __post_init__(self):
        if self.k < 0 or not -2 ** self.k <= self.i <= 2 ** self.k - 1:
            raise IllFormed("D(%d,%d) is not a dyadic interval inside [-1,1]" % (self.k, self.i))

    @property
    def interval(self) -> RationalInterval:
        return RationalInterval(Fraction(self.i, 2 ** self.k), Fraction(self.i + 1, 2 ** self.k))


@lru_cache(maxsize=1 << 16)
def parse_interval_text(text: str) -> RationalInterval:
    text = text.strip()
    m = _DYADIC_RE.match(text)
    if m:
        return DyadicInterval(int(m.group(1)), int(m.group(2))).interval
    m = _INTERVAL_RE.match(text)
    if not m:
        raise ParseError("Not an interval: %r" % text)
    try:
        return RationalInterval(Fraction(m.group(1)), Fraction(m.group(2)))
    except ZeroDivisionError:
        raise ParseError("Zero denominator in %r" % text)


def interval_of(f: Form) -> RationalInterval:
    return parse_interval_text(f.text)


def _interval_well_formed(tokens: Tuple[str, ...]) -> bool:
    text = ''.join(tokens)
    try:
        return parse_interval_text(text).encode() == text
    except (ParseError, IllFormed):
        return False


INTERVAL_LANGUAGE = FormalLanguage('rational-intervals', INTERVAL_ALPHABET, _interval_well_formed)


def interval_form(lo, hi) -> Form:
    return make_form(INTERVAL_LANGUAGE, tuple(RationalInterval(lo, hi).encode()))


def dyadic_depth(iv: RationalInterval) -> Optional[int]:
    """The depth n of a dyadic-system interval (width 2^(1-n), endpoints on the 2^-n grid), else None."""
    w = iv.width
    if w == 2:
        n = 0
    elif w.numerator == 1 and w.denominator & (w.denominator - 1) == 0:
        n = w.denominator.bit_length()
    else:
        return None
    if (iv.lo * 2 ** n).denominator != 1 or iv.lo < -1 or iv.hi > 1:
        return None
    return n


def dyadic_children(iv: RationalInterval) -> Tuple[RationalInterval, ...]:
    """Left half, centred half, right half: each of half the width."""
    half = iv.width / 2
    return tuple(RationalInterval(iv.lo + s, iv.lo + s + half) for s in (0, half / 2, half))
