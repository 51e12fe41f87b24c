"""Exact model of the oriented circle.

Parameters are extended rationals: the one-point compactification of the
rationals, with a single point INF sitting between the largest and the
smallest finite parameter. The positive direction runs through increasing
finite parameters, through INF, and wraps around. All predicates are exact;
nothing in this module touches floating point.
"""

from __future__ import annotations

import re
from bisect import bisect_left
from enum import Enum
from fractions import Fraction
from itertools import accumulate
from math import gcd
from typing import Iterable, Iterator

from .errors import MalformedInputError, NotDisjointError

__all__ = [
    "Orientation",
    "CirclePoint",
    "INF",
    "point",
    "OrientedInterval",
    "open_interval",
    "CircleSet",
    "cyclic_order",
    "in_interval",
    "complementary_intervals",
    "linked",
    "link_number",
    "link_number_counts",
    "separates",
]


class Orientation(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    DEGENERATE = "degenerate"


_PARAM_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


class CirclePoint:
    """One circle parameter: a reduced rational num/den, or INF when den == 0.

    Instances are immutable by convention, totally comparable in the linear
    order that puts INF above every finite value, and hashable.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            num = 1
        else:
            if den < 0:
                num, den = -num, -den
            g = gcd(num, den)
            if g > 1:
                num //= g
                den //= g
        self.num = num
        self.den = den

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    @property
    def frac(self) -> Fraction:
        if self.den == 0:
            raise ValueError("INF has no finite value")
        return Fraction(self.num, self.den)

    @classmethod
    def from_str(cls, text: str) -> "CirclePoint":
        s = text.strip()
        if s.lower() == "inf":
            return INF
        if not _PARAM_RE.match(s):
            raise MalformedInputError("not a circle parameter: %r" % text)
        if "/" in s:
            a, b = s.split("/")
            if int(b) == 0:
                raise MalformedInputError("zero denominator in %r" % text)
            return cls(int(a), int(b))
        return cls(int(s))

    def __str__(self) -> str:
        if self.den == 0:
            return "inf"
        if self.den == 1:
            return str(self.num)
        return "%d/%d" % (self.num, self.den)

    def __repr__(self) -> str:
        return "CirclePoint(%s)" % self

    def __eq__(self, other) -> bool:
        if not isinstance(other, CirclePoint):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # Linear order with INF greatest; cyclic predicates build on this.
    def __lt__(self, other: "CirclePoint") -> bool:
        if self.den == 0:
            return False
        if other.den == 0:
            return True
        return self.num * other.den < other.num * self.den

    def __le__(self, other: "CirclePoint") -> bool:
        return self == other or self < other

    def __gt__(self, other: "CirclePoint") -> bool:
        return other < self

    def __ge__(self, other: "CirclePoint") -> bool:
        return other <= self


INF = CirclePoint(1, 0)


def point(value) -> CirclePoint:
    """Coerce an int, Fraction, string, or CirclePoint to a CirclePoint."""
    if isinstance(value, CirclePoint):
        return value
    if isinstance(value, int):
        return CirclePoint(value)
    if isinstance(value, Fraction):
        return CirclePoint(value.numerator, value.denominator)
    if isinstance(value, str):
        return CirclePoint.from_str(value)
    raise TypeError("cannot make a CirclePoint from %r" % (value,))


def cyclic_order(a: CirclePoint, b: CirclePoint, c: CirclePoint) -> Orientation:
    """Orientation of the triple (a, b, c).

    POSITIVE means walking the positive direction from a meets b strictly
    before c. DEGENERATE means two of the arguments coincide.
    """
    if a == b or b == c or a == c:
        return Orientation.DEGENERATE
    if (a < b and b < c) or (b < c and c < a) or (c < a and a < b):
        return Orientation.POSITIVE
    return Orientation.NEGATIVE


class OrientedInterval:
    """Interval from a to b in the positive direction, with endpoint flags.

    Degenerate conventions: the open interval (a, a) is the complement of
    the single point a, while any interval from a to a that includes an
    endpoint is the whole circle.
    """

    __slots__ = ("a", "b", "closed_a", "closed_b")

    def __init__(self, a: CirclePoint, b: CirclePoint, closed_a: bool = False, closed_b: bool = False):
        self.a = a
        self.b = b
        self.closed_a = closed_a
        self.closed_b = closed_b

    def __contains__(self, x: CirclePoint) -> bool:
        if self.a == self.b:
            if self.closed_a or self.closed_b:
                return True
            return x != self.a
        if x == self.a:
            return self.closed_a
        if x == self.b:
            return self.closed_b
        return cyclic_order(self.a, x, self.b) is Orientation.POSITIVE

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrientedInterval):
            return NotImplemented
        return (self.a, self.b, self.closed_a, self.closed_b) == (
            other.a, other.b, other.closed_a, other.closed_b)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.closed_a, self.closed_b))

    def __repr__(self) -> str:
        left = "[" if self.closed_a else "("
        right = "]" if self.closed_b else ")"
        return "%s%s, %s%s" % (left, self.a, self.b, right)


def open_interval(a, b) -> OrientedInterval:
    return OrientedInterval(point(a), point(b))


def in_interval(x: CirclePoint, interval: OrientedInterval) -> bool:
    return x in interval


class CircleSet:
    """Nonempty finite set of circle points, canonically ordered.

    Points are stored without duplicates, sorted along the circle starting
    from the smallest finite parameter, with INF last.
    """

    __slots__ = ("points",)

    def __init__(self, pts: Iterable):
        ordered = sorted({point(p) for p in pts})
        if not ordered:
            raise ValueError("a CircleSet must be nonempty")
        self.points = tuple(ordered)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[CirclePoint]:
        return iter(self.points)

    def __contains__(self, x) -> bool:
        x = point(x)
        i = bisect_left(self.points, x)
        return i < len(self.points) and self.points[i] == x

    def __eq__(self, other) -> bool:
        if not isinstance(other, CircleSet):
            return NotImplemented
        return self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return "CircleSet({%s})" % ", ".join(str(p) for p in self.points)

    def gap_index(self, x: CirclePoint) -> int:
        """Index of the complementary interval containing x; x must not be a member.

        Interval t runs from points[t] to points[(t + 1) % len]; anything
        past the last point or before the first belongs to the wrap interval.
        """
        pts = self.points
        m = len(pts)
        i = bisect_left(pts, x)
        if i < m and pts[i] == x:
            raise ValueError("%s is a member, not in any complementary interval" % x)
        if i == 0 or i == m:
            return m - 1
        return i - 1

    def intersection(self, other: "CircleSet") -> tuple:
        mine = set(self.points)
        return tuple(p for p in other.points if p in mine)

    def to_json(self) -> list:
        return [str(p) for p in self.points]

    @classmethod
    def from_json(cls, data) -> "CircleSet":
        if not isinstance(data, list) or not data:
            raise MalformedInputError("a circle set must be a nonempty list of parameter strings")
        return cls(CirclePoint.from_str(s) for s in data)


def complementary_intervals(a_set: CircleSet) -> list:
    """Open arcs between cyclically consecutive points, in cyclic order.

    A singleton yields the single open interval (a, a), the complement of a.
    """
    pts = a_set.points
    m = len(pts)
    return [OrientedInterval(pts[t], pts[(t + 1) % m]) for t in range(m)]


def _merge_flags(a_set: CircleSet, b_set: CircleSet):
    """Distinct points of the union in linear order, with membership flags."""
    in_a = set(a_set.points)
    in_b = set(b_set.points)
    merged = sorted(in_a | in_b)
    return merged, [p in in_a for p in merged], [p in in_b for p in merged]


def linked(a_set: CircleSet, b_set: CircleSet) -> bool:
    """True iff some pair in A separates some pair in B.

    Equivalent to the existence of four distinct points in alternating
    cyclic order A, B, A, B. Sets may intersect; shared points can play
    either role but each position is used once.
    """
    merged, flag_a, flag_b = _merge_flags(a_set, b_set)
    m = len(merged)
    if m < 4:
        return False
    pre_b = list(accumulate((1 if f else 0 for f in flag_b), initial=0))
    total_b = pre_b[m]
    if total_b < 2:
        return False
    a_positions = [t for t in range(m) if flag_a[t]]
    if len(a_positions) < 2:
        return False
    for u in range(len(a_positions) - 1):
        i = a_positions[u]
        for v in range(u + 1, len(a_positions)):
            k = a_positions[v]
            inside = pre_b[k] - pre_b[i + 1]
            outside = pre_b[i] + (total_b - pre_b[k + 1])
            if inside > 0 and outside > 0:
                return True
    return False


def link_number_counts(a_set: CircleSet, b_set: CircleSet) -> tuple:
    """The four interval counts for a disjoint pair, computed independently.

    Returns (complementary intervals of A meeting B,
             complementary intervals of B meeting A,
             complementary intervals of the union running from A to B,
             complementary intervals of the union running from B to A).
    """
    shared = a_set.intersection(b_set)
    if shared:
        raise NotDisjointError(shared)

    c1 = len({a_set.gap_index(q) for q in b_set.points})
    c2 = len({b_set.gap_index(p) for p in a_set.points})

    merged, flag_a, _ = _merge_flags(a_set, b_set)
    m = len(merged)
    c3 = 0
    c4 = 0
    for t in range(m):
        first_in_a = flag_a[t]
        second_in_a = flag_a[(t + 1) % m]
        if first_in_a and not second_in_a:
            c3 += 1
        elif second_in_a and not first_in_a:
            c4 += 1
    return c1, c2, c3, c4


def link_number(a_set: CircleSet, b_set: CircleSet) -> int:
    """Linking number of a disjoint pair; n == 1 means unlinked."""
    c1, c2, c3, c4 = link_number_counts(a_set, b_set)
    assert c1 == c2 == c3 == c4, "interval counts disagree: %s" % ((c1, c2, c3, c4),)
    return c1


def separates(barrier: CircleSet, first: CircleSet, second: CircleSet) -> bool:
    """True iff the barrier set separates first from second on the circle.

    Requires the three sets pairwise disjoint. Holds when first and second
    each sit inside a single complementary interval of the barrier and those
    intervals differ.
    """
    for x, y in ((barrier, first), (barrier, second), (first, second)):
        shared = x.intersection(y)
        if shared:
            raise NotDisjointError(shared)
    gaps_first = {barrier.gap_index(p) for p in first.points}
    if len(gaps_first) != 1:
        return False
    gaps_second = {barrier.gap_index(p) for p in second.points}
    if len(gaps_second) != 1:
        return False
    return gaps_first != gaps_second
