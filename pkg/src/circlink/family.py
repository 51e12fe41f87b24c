"""Finite chord families on the circle and their linking structure.

A family pair holds two labelled lists of circle sets. Validation enforces
that each family is internally disjoint and unlinked and that cross-family
intersections have at most one point. The pair classification across the
two families produces the finite analogue of a decomposition disc: interior
points are the disjoint linked pairs, boundary points the intersecting ones.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .circle import (
    CirclePoint,
    CircleSet,
    complementary_intervals,
    link_number,
    linked,
    separates,
)
from .errors import (
    FamilyValidationError,
    MalformedInputError,
    NotInteriorError,
    NotLinearlyOrderedError,
)

__all__ = [
    "Violation",
    "FamilyPair",
    "validate",
    "IntersectingAt",
    "DisjointUnlinked",
    "DisjointLinked",
    "classify_pair",
    "EspecialDisc",
    "especial_disc",
    "fiber_plus",
    "fiber_minus",
    "separation_interval",
    "prong_count",
    "NestingEntry",
    "NestingReport",
    "nesting_report",
]


@dataclass(frozen=True)
class Violation:
    """One violated admissibility clause with the offending indices."""

    kind: str          # WithinFamilyOverlap | WithinFamilyLinked | CrossIntersectionTooBig
    family: str        # "plus", "minus", or "cross"
    i: int
    j: int
    witness: tuple = ()

    def describe(self) -> str:
        if self.witness:
            w = " witness " + ",".join(str(p) for p in self.witness)
        else:
            w = ""
        return "%s(%s, %d, %d)%s" % (self.kind, self.family, self.i, self.j, w)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "family": self.family,
            "i": self.i,
            "j": self.j,
            "witness": [str(p) for p in self.witness],
        }


class FamilyPair:
    """A validated pair of chord families. Construct through validate()."""

    __slots__ = ("plus", "minus", "plus_labels", "minus_labels")

    def __init__(self, plus, minus, plus_labels=None, minus_labels=None):
        self.plus = tuple(plus)
        self.minus = tuple(minus)
        self.plus_labels = tuple(plus_labels) if plus_labels else None
        self.minus_labels = tuple(minus_labels) if minus_labels else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, FamilyPair):
            return NotImplemented
        return self.plus == other.plus and self.minus == other.minus

    def __hash__(self) -> int:
        return hash((self.plus, self.minus))

    def __repr__(self) -> str:
        return "FamilyPair(plus=%r, minus=%r)" % (list(self.plus), list(self.minus))

    def family(self, name: str) -> tuple:
        if name == "plus":
            return self.plus
        if name == "minus":
            return self.minus
        raise ValueError("family must be 'plus' or 'minus', got %r" % name)

    def to_json(self) -> dict:
        out = {
            "plus": [s.to_json() for s in self.plus],
            "minus": [s.to_json() for s in self.minus],
        }
        if self.plus_labels:
            out["plus_labels"] = list(self.plus_labels)
        if self.minus_labels:
            out["minus_labels"] = list(self.minus_labels)
        return out

    @classmethod
    def from_json(cls, data) -> "FamilyPair":
        if not isinstance(data, dict):
            raise MalformedInputError("family pair must be a JSON object", "$")
        for key in ("plus", "minus"):
            if key not in data:
                raise MalformedInputError("missing key %r" % key, "$")
            if not isinstance(data[key], list) or not data[key]:
                raise MalformedInputError("%r must be a nonempty list" % key, "$.%s" % key)
        def parse_family(key):
            sets = []
            for idx, raw in enumerate(data[key]):
                try:
                    sets.append(CircleSet.from_json(raw))
                except MalformedInputError as exc:
                    raise MalformedInputError(str(exc), "$.%s[%d]" % (key, idx)) from None
            return sets
        plus = parse_family("plus")
        minus = parse_family("minus")
        plus_labels = data.get("plus_labels")
        minus_labels = data.get("minus_labels")
        for name, labels, sets in (("plus_labels", plus_labels, plus),
                                   ("minus_labels", minus_labels, minus)):
            if labels is not None:
                if (not isinstance(labels, list)
                        or len(labels) != len(sets)
                        or not all(isinstance(x, str) for x in labels)):
                    raise MalformedInputError("%s must list one string per element" % name, "$.%s" % name)
        return validate(plus, minus, plus_labels, minus_labels)


def _within_family_violations(sets: Sequence[CircleSet], name: str) -> list:
    out = []
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            shared = sets[i].intersection(sets[j])
            if shared:
                out.append(Violation("WithinFamilyOverlap", name, i, j, shared))
            if linked(sets[i], sets[j]):
                out.append(Violation("WithinFamilyLinked", name, i, j))
    return out


def validate(plus, minus, plus_labels=None, minus_labels=None) -> FamilyPair:
    """Check every admissibility clause; collect all violations before failing."""
    plus = [s if isinstance(s, CircleSet) else CircleSet(s) for s in plus]
    minus = [s if isinstance(s, CircleSet) else CircleSet(s) for s in minus]
    if not plus or not minus:
        raise ValueError("both families must be nonempty")
    violations = _within_family_violations(plus, "plus")
    violations += _within_family_violations(minus, "minus")
    for i, p in enumerate(plus):
        for j, m in enumerate(minus):
            shared = p.intersection(m)
            if len(shared) > 1:
                violations.append(Violation("CrossIntersectionTooBig", "cross", i, j, shared))
    if violations:
        raise FamilyValidationError(violations)
    return FamilyPair(plus, minus, plus_labels, minus_labels)


@dataclass(frozen=True)
class IntersectingAt:
    point: CirclePoint


@dataclass(frozen=True)
class DisjointUnlinked:
    pass


@dataclass(frozen=True)
class DisjointLinked:
    n: int


PairClass = Union[IntersectingAt, DisjointUnlinked, DisjointLinked]


def _check_index(n: int, idx: int, what: str) -> None:
    if not 0 <= idx < n:
        raise IndexError("%s index %d out of range [0, %d)" % (what, idx, n))


def _classify(p: CircleSet, m: CircleSet) -> PairClass:
    shared = p.intersection(m)
    if shared:
        # validation admits at most one shared point per cross pair
        return IntersectingAt(shared[0])
    n = link_number(p, m)
    if n == 1:
        return DisjointUnlinked()
    return DisjointLinked(n)


def classify_pair(fp: FamilyPair, i: int, j: int) -> PairClass:
    """Classify the cross pair (plus element i, minus element j)."""
    _check_index(len(fp.plus), i, "plus")
    _check_index(len(fp.minus), j, "minus")
    return _classify(fp.plus[i], fp.minus[j])


class EspecialDisc:
    """All cross-pair classifications of a family pair.

    interior holds (i, j, n) for disjoint linked pairs, boundary holds
    (i, j, s) for pairs meeting at the single circle point s. Both are
    sorted by (i, j).
    """

    __slots__ = ("n_plus", "n_minus", "interior", "boundary")

    def __init__(self, n_plus, n_minus, interior, boundary):
        self.n_plus = n_plus
        self.n_minus = n_minus
        self.interior = tuple(sorted(interior))
        self.boundary = tuple(sorted(boundary, key=lambda e: (e[0], e[1])))
        seen = [(i, j) for i, j, _ in self.interior] + [(i, j) for i, j, _ in self.boundary]
        assert len(seen) == len(set(seen)), "duplicate Z-point keys"

    def interior_map(self) -> dict:
        return {(i, j): n for i, j, n in self.interior}

    def boundary_map(self) -> dict:
        return {(i, j): s for i, j, s in self.boundary}

    def __eq__(self, other) -> bool:
        if not isinstance(other, EspecialDisc):
            return NotImplemented
        return (self.n_plus, self.n_minus, self.interior, self.boundary) == (
            other.n_plus, other.n_minus, other.interior, other.boundary)

    def __repr__(self) -> str:
        return "EspecialDisc(interior=%d, boundary=%d)" % (len(self.interior), len(self.boundary))

    def to_json(self) -> dict:
        return {
            "n_plus": self.n_plus,
            "n_minus": self.n_minus,
            "interior": [
                {"plus": i, "minus": j, "link_number": n} for i, j, n in self.interior
            ],
            "boundary": [
                {"plus": i, "minus": j, "point": str(s)} for i, j, s in self.boundary
            ],
        }


def especial_disc(fp: FamilyPair, workers: int = 0) -> EspecialDisc:
    """Classify every cross pair. workers > 1 parallelizes by plus row;
    the output is identical for any worker count."""

    def classify_row(i):
        p = fp.plus[i]
        row_interior = []
        row_boundary = []
        for j, m in enumerate(fp.minus):
            c = _classify(p, m)
            if isinstance(c, DisjointLinked):
                row_interior.append((i, j, c.n))
            elif isinstance(c, IntersectingAt):
                row_boundary.append((i, j, c.point))
        return row_interior, row_boundary

    rows = range(len(fp.plus))
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(classify_row, rows))
    else:
        results = [classify_row(i) for i in rows]

    interior = []
    boundary = []
    for row_interior, row_boundary in results:
        interior.extend(row_interior)
        boundary.extend(row_boundary)
    return EspecialDisc(len(fp.plus), len(fp.minus), interior, boundary)


def fiber_plus(disc: EspecialDisc, i: int) -> list:
    """All Z-points (interior and boundary) with plus component i, by minus index."""
    _check_index(disc.n_plus, i, "plus")
    zs = [(a, b) for a, b, _ in disc.interior if a == i]
    zs += [(a, b) for a, b, _ in disc.boundary if a == i]
    return sorted(zs)


def fiber_minus(disc: EspecialDisc, j: int) -> list:
    """All Z-points (interior and boundary) with minus component j, by plus index."""
    _check_index(disc.n_minus, j, "minus")
    zs = [(a, b) for a, b, _ in disc.interior if b == j]
    zs += [(a, b) for a, b, _ in disc.boundary if b == j]
    return sorted(zs)


def separation_interval(fp: FamilyPair, family: str, i: int, j: int) -> list:
    """Indices of elements separating element i from element j, as a chain.

    The result starts with i, ends with j, and lists the separating elements
    so that each one separates everything before it from everything after
    it. Raises NotLinearlyOrderedError when no such chain exists.
    """
    sets = fp.family(family)
    _check_index(len(sets), i, family)
    _check_index(len(sets), j, family)
    if i == j:
        return [i]
    middles = [k for k in range(len(sets))
               if k != i and k != j and separates(sets[k], sets[i], sets[j])]
    if not middles:
        return [i, j]

    def between(a: int, b: int, c: int) -> bool:
        return separates(sets[b], sets[a], sets[c])

    ranked = sorted(middles, key=lambda k: sum(1 for m in middles if m != k and between(i, m, k)))
    chain = [i] + ranked + [j]
    if len(middles) <= 20:
        for t in range(1, len(chain) - 1):
            for p in range(t):
                for s in range(t + 1, len(chain)):
                    if not between(chain[p], chain[t], chain[s]):
                        raise NotLinearlyOrderedError((chain[p], chain[t], chain[s]))
    else:
        # long chains: consecutive triples still pin the order, full check is cubic
        for t in range(1, len(chain) - 1):
            if not between(chain[t - 1], chain[t], chain[t + 1]):
                raise NotLinearlyOrderedError((chain[t - 1], chain[t], chain[t + 1]))
    return chain


def prong_count(fp: FamilyPair, z: tuple, disc: Optional[EspecialDisc] = None) -> int:
    """Number of prongs at an interior Z-point: twice its linking number.

    The count is recomputed directly from the mixed complementary intervals
    of the union and asserted against the stored linking number.
    """
    if disc is None:
        disc = especial_disc(fp)
    interior = disc.interior_map()
    if tuple(z) not in interior:
        raise NotInteriorError(tuple(z))
    i, j = z
    n = interior[(i, j)]

    merged = sorted(set(fp.plus[i].points) | set(fp.minus[j].points))
    in_plus = set(fp.plus[i].points)
    mixed = 0
    m = len(merged)
    for t in range(m):
        if (merged[t] in in_plus) != (merged[(t + 1) % m] in in_plus):
            mixed += 1
    assert mixed == 2 * n, "mixed interval count %d does not match 2 * %d" % (mixed, n)
    return mixed


@dataclass(frozen=True)
class NestingEntry:
    """Whether one complementary interval of an element is separated from it."""

    family: str
    element: int
    interval_start: CirclePoint
    interval_end: CirclePoint
    separated: bool
    separator: Optional[int]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "element": self.element,
            "interval": [str(self.interval_start), str(self.interval_end)],
            "separated": self.separated,
            "separator": self.separator,
        }


class NestingReport:
    """Finite nesting diagnostics; a defect is an interval with no separator."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(entries)

    @property
    def defect_count(self) -> int:
        return sum(1 for e in self.entries if not e.separated)

    def to_json(self) -> dict:
        return {
            "entries": [e.to_json() for e in self.entries],
            "defect_count": self.defect_count,
        }


def nesting_report(fp: FamilyPair) -> NestingReport:
    """For each element and complementary interval, find a same-family element
    that separates the interval's content from the element.

    The interval from a to b counts as separated when two other elements sit
    inside it with one separating the other from the reference element. A
    finite truncation always leaves some intervals unseparated; the report
    quantifies that defect instead of rejecting the family.
    """
    entries = []
    for name in ("plus", "minus"):
        sets = fp.family(name)
        for e, lam in enumerate(sets):
            buckets = {g: [] for g in range(len(lam))}
            for k, other in enumerate(sets):
                if k == e:
                    continue
                gaps = {lam.gap_index(pt) for pt in other.points}
                # family validity forces every other element into one gap
                assert len(gaps) == 1
                buckets[gaps.pop()].append(k)
            intervals = complementary_intervals(lam)
            for g, interval in enumerate(intervals):
                inside = buckets[g]
                separator = None
                for k in inside:
                    for m in inside:
                        if m != k and separates(sets[k], lam, sets[m]):
                            separator = k
                            break
                    if separator is not None:
                        break
                entries.append(NestingEntry(name, e, interval.a, interval.b,
                                            separator is not None, separator))
    return NestingReport(entries)
