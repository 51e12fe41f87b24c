"""Exact planar realization: circle embedding, convex hulls, cell intersections.

Circle parameters land on the unit circle through the tangent half-angle map,
so every marked point has rational coordinates and cyclic order becomes
counterclockwise order. All predicates are exact. Hot paths work on
homogeneous integer triples (X, Y, D) standing for (X/D, Y/D) with D > 0;
Fractions appear only at the public boundary.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from math import gcd
from typing import Optional

from .circle import INF, CirclePoint, CircleSet
from .circle import point as circle_point
from .errors import EmptyLinkedCellError, MalformedInputError, OutsideDiscError
from .family import EspecialDisc, FamilyPair, especial_disc

__all__ = [
    "PlanePoint",
    "ConvexCell",
    "param_to_point",
    "point_to_param",
    "hull",
    "cell_intersection",
    "locate",
    "linked_cells",
]


def _frac_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def _parse_frac(s, where: str) -> Fraction:
    if not isinstance(s, str):
        raise MalformedInputError("coordinate must be a rational string", where)
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise MalformedInputError("bad rational %r" % s, where) from None


class PlanePoint:
    """Exact point of the plane."""

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        self.x = Fraction(x)
        self.y = Fraction(y)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlanePoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def __repr__(self) -> str:
        return "PlanePoint(%s, %s)" % (_frac_str(self.x), _frac_str(self.y))

    def __str__(self) -> str:
        return "(%s, %s)" % (_frac_str(self.x), _frac_str(self.y))

    def key(self):
        return (self.x, self.y)

    def to_json(self) -> list:
        return [_frac_str(self.x), _frac_str(self.y)]

    @classmethod
    def from_json(cls, data, where: str = "$") -> "PlanePoint":
        if not isinstance(data, list) or len(data) != 2:
            raise MalformedInputError("point must be a [x, y] pair", where)
        return cls(_parse_frac(data[0], where + "[0]"), _parse_frac(data[1], where + "[1]"))


# ---------------------------------------------------------------------------
# homogeneous integer triples


def _h_norm(X: int, Y: int, D: int) -> tuple:
    if D < 0:
        X, Y, D = -X, -Y, -D
    g = gcd(gcd(abs(X), abs(Y)), D)
    if g > 1:
        X, Y, D = X // g, Y // g, D // g
    return (X, Y, D)


def _h_from_plane(p: PlanePoint) -> tuple:
    xd = p.x.denominator
    yd = p.y.denominator
    d = xd // gcd(xd, yd) * yd
    return (p.x.numerator * (d // xd), p.y.numerator * (d // yd), d)


def _h_to_plane(h: tuple) -> PlanePoint:
    return PlanePoint(Fraction(h[0], h[2]), Fraction(h[1], h[2]))


def _h_eq(p: tuple, q: tuple) -> bool:
    return p[0] * q[2] == q[0] * p[2] and p[1] * q[2] == q[1] * p[2]


def _h_cmp(p: tuple, q: tuple) -> int:
    a = p[0] * q[2] - q[0] * p[2]
    if a:
        return 1 if a > 0 else -1
    b = p[1] * q[2] - q[1] * p[2]
    if b:
        return 1 if b > 0 else -1
    return 0


def _orient(o: tuple, a: tuple, b: tuple) -> int:
    # sign of the cross product (a - o) x (b - o); denominators are positive
    s1x = a[0] * o[2] - o[0] * a[2]
    s1y = a[1] * o[2] - o[1] * a[2]
    s2x = b[0] * o[2] - o[0] * b[2]
    s2y = b[1] * o[2] - o[1] * b[2]
    v = s1x * s2y - s1y * s2x
    return (v > 0) - (v < 0)


def _h_between(a: tuple, b: tuple, p: tuple) -> bool:
    # p assumed collinear with a, b; lex order is monotone along a line
    lo, hi = (a, b) if _h_cmp(a, b) <= 0 else (b, a)
    return _h_cmp(lo, p) <= 0 and _h_cmp(p, hi) <= 0


def _h_line(p: tuple, q: tuple) -> tuple:
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def _h_line_cross(L: tuple, M: tuple) -> tuple:
    X = L[1] * M[2] - L[2] * M[1]
    Y = L[2] * M[0] - L[0] * M[2]
    D = L[0] * M[1] - L[1] * M[0]
    assert D != 0, "parallel lines have no crossing point"
    return _h_norm(X, Y, D)


def _h_from_param(u: CirclePoint) -> tuple:
    if u.is_infinite:
        return (-1, 0, 1)
    p, q = u.num, u.den
    return _h_norm(q * q - p * p, 2 * p * q, q * q + p * p)


# ---------------------------------------------------------------------------
# public types


def param_to_point(u) -> PlanePoint:
    """Embed a circle parameter on the unit circle, INF at (-1, 0)."""
    return _h_to_plane(_h_from_param(circle_point(u)))


def point_to_param(p: PlanePoint) -> CirclePoint:
    """Inverse embedding; p must lie exactly on the unit circle."""
    if p.x * p.x + p.y * p.y != 1:
        raise ValueError("%s is not on the unit circle" % (p,))
    if p.x == -1:
        return INF
    u = p.y / (1 + p.x)
    return CirclePoint(u.numerator, u.denominator)


class ConvexCell:
    """Convex cell of dimension 0, 1, or 2 with canonical vertex order.

    dim 2 vertices run counterclockwise starting at the lexicographically
    smallest; dim 1 stores the lex-smaller endpoint first.
    """

    __slots__ = ("dim", "vertices", "_h")

    def __init__(self, dim: int, vertices):
        vertices = tuple(vertices)
        if dim == 0:
            assert len(vertices) == 1
        elif dim == 1:
            assert len(vertices) == 2 and vertices[0] != vertices[1]
        elif dim == 2:
            assert len(vertices) >= 3
        else:
            raise ValueError("dim must be 0, 1, or 2")
        assert all(v.x * v.x + v.y * v.y <= 1 for v in vertices), "vertex outside the unit disc"
        self.dim = dim
        self.vertices = vertices
        self._h = tuple(_h_from_plane(v) for v in vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConvexCell):
            return NotImplemented
        return self.dim == other.dim and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash((self.dim, self.vertices))

    def __repr__(self) -> str:
        return "ConvexCell(dim=%d, vertices=%s)" % (
            self.dim, "[" + ", ".join(str(v) for v in self.vertices) + "]")

    def contains(self, p: PlanePoint) -> bool:
        return _cell_contains_h(self, _h_from_plane(p))

    def barycenter(self) -> PlanePoint:
        n = len(self.vertices)
        return PlanePoint(
            sum(v.x for v in self.vertices) / n,
            sum(v.y for v in self.vertices) / n,
        )

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [v.to_json() for v in self.vertices]}

    @classmethod
    def from_json(cls, data, where: str = "$") -> "ConvexCell":
        if not isinstance(data, dict) or "dim" not in data or "vertices" not in data:
            raise MalformedInputError("cell must be {dim, vertices}", where)
        if data["dim"] not in (0, 1, 2) or not isinstance(data["vertices"], list):
            raise MalformedInputError("bad cell fields", where)
        verts = [PlanePoint.from_json(v, "%s.vertices[%d]" % (where, k))
                 for k, v in enumerate(data["vertices"])]
        return cls(data["dim"], verts)


def _cell_contains_h(cell: ConvexCell, h: tuple) -> bool:
    hv = cell._h
    if cell.dim == 0:
        return _h_eq(hv[0], h)
    if cell.dim == 1:
        return _orient(hv[0], hv[1], h) == 0 and _h_between(hv[0], hv[1], h)
    for k in range(len(hv)):
        if _orient(hv[k], hv[(k + 1) % len(hv)], h) < 0:
            return False
    return True


def _cell_from_h(hpts) -> Optional[ConvexCell]:
    """Canonical cell from an arbitrary finite batch of homogeneous points."""
    uniq = []
    for h in hpts:
        hn = _h_norm(*h)
        if hn not in uniq:
            uniq.append(hn)
    if not uniq:
        return None
    if len(uniq) == 1:
        return ConvexCell(0, [_h_to_plane(uniq[0])])
    pts = sorted(uniq, key=cmp_to_key(_h_cmp))
    if len(pts) == 2:
        return ConvexCell(1, [_h_to_plane(pts[0]), _h_to_plane(pts[1])])

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull_pts = lower[:-1] + upper[:-1]
    if len(hull_pts) == 2:
        return ConvexCell(1, [_h_to_plane(hull_pts[0]), _h_to_plane(hull_pts[1])])
    # monotone chain emits counterclockwise order beginning at the lex minimum
    return ConvexCell(2, [_h_to_plane(h) for h in hull_pts])


def hull(a_set: CircleSet) -> ConvexCell:
    """Convex hull of the embedded circle set.

    Circle points are in convex position, so the stored cyclic order is
    already the counterclockwise vertex order; it only gets rotated to the
    canonical start.
    """
    hs = [_h_from_param(u) for u in a_set.points]
    if len(hs) == 1:
        return ConvexCell(0, [_h_to_plane(hs[0])])
    if len(hs) == 2:
        if _h_cmp(hs[0], hs[1]) > 0:
            hs.reverse()
        return ConvexCell(1, [_h_to_plane(h) for h in hs])
    start = 0
    for k in range(1, len(hs)):
        if _h_cmp(hs[k], hs[start]) < 0:
            start = k
    ordered = hs[start:] + hs[:start]
    return ConvexCell(2, [_h_to_plane(h) for h in ordered])


# ---------------------------------------------------------------------------
# intersections


def _seg_seg(a: tuple, b: tuple, c: tuple, d: tuple) -> list:
    o1 = _orient(a, b, c)
    o2 = _orient(a, b, d)
    o3 = _orient(c, d, a)
    o4 = _orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return [_h_line_cross(_h_line(a, b), _h_line(c, d))]
    pts = []
    if o1 == 0 and _h_between(a, b, c):
        pts.append(c)
    if o2 == 0 and _h_between(a, b, d):
        pts.append(d)
    if o3 == 0 and _h_between(c, d, a):
        pts.append(a)
    if o4 == 0 and _h_between(c, d, b):
        pts.append(b)
    return pts


def _clip_seg(seg: ConvexCell, poly: ConvexCell) -> Optional[ConvexCell]:
    a, b = seg.vertices
    lo = Fraction(0)
    hi = Fraction(1)
    verts = poly.vertices
    n = len(verts)
    for k in range(n):
        p = verts[k]
        q = verts[(k + 1) % n]
        ex = q.x - p.x
        ey = q.y - p.y
        fa = ex * (a.y - p.y) - ey * (a.x - p.x)
        fb = ex * (b.y - p.y) - ey * (b.x - p.x)
        if fa < 0 and fb < 0:
            return None
        if fa < 0:
            lo = max(lo, fa / (fa - fb))
        elif fb < 0:
            hi = min(hi, fa / (fa - fb))
    if lo > hi:
        return None

    def at(t: Fraction) -> PlanePoint:
        return PlanePoint(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))

    pa = at(lo)
    pb = at(hi)
    if pa == pb:
        return ConvexCell(0, [pa])
    return _cell_from_h([_h_from_plane(pa), _h_from_plane(pb)])


def _clip_poly(P: ConvexCell, Q: ConvexCell) -> Optional[ConvexCell]:
    out = list(P.vertices)
    qv = Q.vertices
    for k in range(len(qv)):
        p = qv[k]
        q = qv[(k + 1) % len(qv)]
        ex = q.x - p.x
        ey = q.y - p.y
        cur = out
        if not cur:
            return None
        sides = [ex * (v.y - p.y) - ey * (v.x - p.x) for v in cur]
        out = []
        m = len(cur)
        for t in range(m):
            v = cur[t]
            fv = sides[t]
            fw = sides[(t + 1) % m]
            if fv >= 0:
                out.append(v)
            if (fv > 0 > fw) or (fv < 0 < fw):
                w = cur[(t + 1) % m]
                s = fv / (fv - fw)
                out.append(PlanePoint(v.x + s * (w.x - v.x), v.y + s * (w.y - v.y)))
    if not out:
        return None
    return _cell_from_h([_h_from_plane(v) for v in out])


def cell_intersection(P: ConvexCell, Q: ConvexCell) -> Optional[ConvexCell]:
    """Exact intersection of two convex cells; None means empty."""
    if P.dim > Q.dim:
        P, Q = Q, P
    if P.dim == 0:
        return ConvexCell(0, P.vertices) if _cell_contains_h(Q, P._h[0]) else None
    if Q.dim == 1:
        return _cell_from_h(_seg_seg(P._h[0], P._h[1], Q._h[0], Q._h[1]))
    if P.dim == 1:
        return _clip_seg(P, Q)
    return _clip_poly(P, Q)


# ---------------------------------------------------------------------------
# families in the plane


def _family_hulls(sets) -> list:
    return [hull(s) for s in sets]


def _locate_in_hulls(hulls: list, hp: tuple) -> Optional[int]:
    hits = [i for i, c in enumerate(hulls) if _cell_contains_h(c, hp)]
    assert len(hits) <= 1, "hulls of a validated family overlap: %r" % hits
    return hits[0] if hits else None


def locate(fp: FamilyPair, p: PlanePoint) -> tuple:
    """Indices of the plus hull and minus hull containing p, None when absent."""
    if p.x * p.x + p.y * p.y > 1:
        raise OutsideDiscError(p)
    hp = _h_from_plane(p)
    return (
        _locate_in_hulls(_family_hulls(fp.plus), hp),
        _locate_in_hulls(_family_hulls(fp.minus), hp),
    )


def linked_cells(fp: FamilyPair, disc: Optional[EspecialDisc] = None) -> dict:
    """The nonempty hull intersection for every interior Z-point.

    Linking guarantees nonemptiness; an empty cell would mean the geometry
    disagrees with the combinatorics and raises immediately.
    """
    if disc is None:
        disc = especial_disc(fp)
    ph = _family_hulls(fp.plus)
    mh = _family_hulls(fp.minus)
    cells = {}
    for i, j, _n in disc.interior:
        c = cell_intersection(ph[i], mh[j])
        if c is None:
            raise EmptyLinkedCellError((i, j))
        cells[(i, j)] = c
    return cells
