"""Exact plane geometry: the circle embedding, hulls, and cell intersections.

The chord-crossing oracle below solves the two-segment system with Fractions
and Cramer's rule, sharing no code with the clipping ladder in the library.
"""

from fractions import Fraction
from itertools import combinations

import pytest

from circlink import (
    INF,
    CircleSet,
    ConvexCell,
    Orientation,
    OutsideDiscError,
    PlanePoint,
    cell_intersection,
    cyclic_order,
    hull,
    linked,
    linked_cells,
    locate,
    param_to_point,
    point,
    point_to_param,
    random_set_pair,
    validate,
)

F = Fraction


def pp(x, y):
    return PlanePoint(F(x), F(y))


def chord_cross_oracle(p1, p2, q1, q2):
    """Closed-segment intersection point of two circle chords, or None.

    Distinct chords of one circle are never collinear, so Cramer's rule with
    a parallel check covers every case.
    """
    dx1, dy1 = p2.x - p1.x, p2.y - p1.y
    dx2, dy2 = q2.x - q1.x, q2.y - q1.y
    den = dx1 * dy2 - dy1 * dx2
    if den == 0:
        return None
    t = ((q1.x - p1.x) * dy2 - (q1.y - p1.y) * dx2) / den
    s = ((q1.x - p1.x) * dy1 - (q1.y - p1.y) * dx1) / den
    if 0 <= t <= 1 and 0 <= s <= 1:
        return (p1.x + t * dx1, p1.y + t * dy1)
    return None


# ── embedding ────────────────────────────────────────────────────────────

def test_param_to_point_examples():
    assert param_to_point(point(0)) == pp(1, 0)
    assert param_to_point(point(1)) == pp(0, 1)
    assert param_to_point(INF) == pp(-1, 0)
    assert param_to_point(point(2)) == pp(F(-3, 5), F(4, 5))
    assert param_to_point(point(3)) == pp(F(-4, 5), F(3, 5))


def test_param_round_trip():
    for u in [point(0), point(1), point(-7), point(F(22, 7)), INF, point(F(-1, 3))]:
        img = param_to_point(u)
        assert img.x ** 2 + img.y ** 2 == 1
        assert point_to_param(img) == u


def test_param_preserves_cyclic_order():
    def ccw(a, b, c):
        return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)

    pts = [point(0), point(1), point(-2), point(F(1, 2)), INF, point(5), point(F(-8, 3))]
    for a, b, c in combinations(pts, 3):
        want = cyclic_order(a, b, c) is Orientation.POSITIVE
        got = ccw(param_to_point(a), param_to_point(b), param_to_point(c)) > 0
        assert want == got


# ── hulls ────────────────────────────────────────────────────────────────

def test_hull_examples():
    h0 = hull(CircleSet([0]))
    assert h0.dim == 0 and h0.vertices == (pp(1, 0),)

    h1 = hull(CircleSet([0, 3]))
    assert h1.dim == 1
    assert set(h1.vertices) == {pp(1, 0), pp(F(-4, 5), F(3, 5))}

    h2 = hull(CircleSet([0, 2, 4]))
    assert h2.dim == 2
    assert h2.vertices == (pp(F(-15, 17), F(8, 17)), pp(1, 0), pp(F(-3, 5), F(4, 5)))


def test_hull_vertices_map_back():
    for pts in ([0, 2, 4], [1, -1, 5, F(1, 2)], [INF, 0, 7, -3, F(9, 4)]):
        a_set = CircleSet(pts)
        back = CircleSet(point_to_param(v) for v in hull(a_set).vertices)
        assert back == a_set


def test_hull_canonical_order():
    # counterclockwise starting from the lexicographically smallest vertex
    h = hull(CircleSet([0, 1, 2, 3]))
    assert h.vertices[0] == min(h.vertices, key=lambda v: (v.x, v.y))
    for a, b, c in zip(h.vertices, h.vertices[1:], h.vertices[2:]):
        cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
        assert cross > 0


# ── intersections ────────────────────────────────────────────────────────

def test_cell_intersection_examples():
    crossing = cell_intersection(hull(CircleSet([0, 3])), hull(CircleSet([2, 5])))
    assert crossing.dim == 0
    assert crossing.vertices == (pp(F(-13, 17), F(10, 17)),)

    assert cell_intersection(hull(CircleSet([0, 3])), hull(CircleSet([4, 7]))) is None

    touch = cell_intersection(hull(CircleSet([0, 1])), hull(CircleSet([1, 5])))
    assert touch.dim == 0 and touch.vertices == (pp(0, 1),)


def test_chord_chord_against_cramer_oracle():
    for seed in range(400):
        a_set, b_set = random_set_pair(seed)
        a = CircleSet(list(a_set.points)[:2])
        b = CircleSet(list(b_set.points)[:2])
        if len(a) != 2 or len(b) != 2 or a.intersection(b):
            continue
        got = cell_intersection(hull(a), hull(b))
        p1, p2 = (param_to_point(u) for u in a.points)
        q1, q2 = (param_to_point(u) for u in b.points)
        want = chord_cross_oracle(p1, p2, q1, q2)
        if want is None:
            assert got is None
        else:
            assert got is not None and got.dim == 0
            assert (got.vertices[0].x, got.vertices[0].y) == want


def test_intersection_commutative_idempotent():
    cells = [
        hull(CircleSet([0, 3])),
        hull(CircleSet([2, 5])),
        hull(CircleSet([0, 2, 4])),
        hull(CircleSet([1, 3, 5])),
        hull(CircleSet([1])),
        hull(CircleSet([F(1, 2), 6, -2])),
    ]
    for a, b in combinations(cells, 2):
        ab = cell_intersection(a, b)
        ba = cell_intersection(b, a)
        assert ab == ba
    for c in cells:
        assert cell_intersection(c, c) == c


def test_tripod_cell_is_the_hexagon():
    ha = hull(CircleSet([0, 2, 4]))
    hb = hull(CircleSet([1, 3, 5]))
    cell = cell_intersection(ha, hb)
    assert cell.dim == 2 and len(cell.vertices) == 6

    # every hexagon vertex is a crossing of one triangle edge with the other
    verts_a = [param_to_point(point(u)) for u in (0, 2, 4)]
    verts_b = [param_to_point(point(u)) for u in (1, 3, 5)]
    crossings = set()
    for i in range(3):
        for j in range(3):
            hit = chord_cross_oracle(verts_a[i], verts_a[(i + 1) % 3],
                                     verts_b[j], verts_b[(j + 1) % 3])
            if hit is not None:
                crossings.add(hit)
    assert {(v.x, v.y) for v in cell.vertices} == crossings


def test_mini_hull_linking_oracle():
    agree = 0
    for seed in range(500):
        a_set, b_set = random_set_pair(seed)
        if a_set.intersection(b_set):
            continue
        want = linked(a_set, b_set)
        got = cell_intersection(hull(a_set), hull(b_set)) is not None
        assert got == want
        agree += 1
    assert agree > 400


# ── point location ───────────────────────────────────────────────────────

def grid_pair():
    return validate([CircleSet([0, 3]), CircleSet([4, 7])],
                    [CircleSet([2, 5]), CircleSet([6, 1])])


def test_locate_examples():
    fp = grid_pair()
    assert locate(fp, pp(F(-13, 17), F(10, 17))) == (0, 0)
    assert locate(fp, pp(0, 0)) == (None, None)
    assert locate(fp, pp(1, 0)) == (0, None)


def test_locate_rejects_outside():
    with pytest.raises(OutsideDiscError):
        locate(grid_pair(), pp(2, 0))
    with pytest.raises(OutsideDiscError):
        locate(grid_pair(), pp(F(4, 5), F(4, 5)))


def test_locate_agrees_with_containment():
    fp = grid_pair()
    hulls_plus = [hull(s) for s in fp.plus]
    hulls_minus = [hull(s) for s in fp.minus]
    samples = [pp(0, 0), pp(1, 0), pp(F(-13, 17), F(10, 17)), pp(F(1, 3), F(1, 3)),
               pp(F(-1, 2), 0), pp(0, F(9, 10)), pp(F(3, 5), F(-4, 5)), pp(F(-1, 5), F(2, 5))]
    for p in samples:
        i, j = locate(fp, p)
        for k, h in enumerate(hulls_plus):
            assert h.contains(p) == (k == i)
        for k, h in enumerate(hulls_minus):
            assert h.contains(p) == (k == j)


def test_within_family_hulls_disjoint():
    from circlink import random_family_pair
    for seed in range(25):
        fp = random_family_pair(seed)
        for fam in (fp.plus, fp.minus):
            hs = [hull(s) for s in fam]
            for a, b in combinations(hs, 2):
                assert cell_intersection(a, b) is None


# ── linked cells ─────────────────────────────────────────────────────────

def test_linked_cells_grid():
    cells = linked_cells(grid_pair())
    assert sorted(cells) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert all(c.dim == 0 for c in cells.values())
    assert cells[(0, 0)].vertices == (pp(F(-13, 17), F(10, 17)),)


def test_linked_cells_tripod():
    cells = linked_cells(validate([CircleSet([0, 2, 4])], [CircleSet([1, 3, 5])]))
    assert list(cells) == [(0, 0)]
    assert cells[(0, 0)].dim == 2


def test_linked_cells_skip_unlinked():
    fp = validate([CircleSet([0, 3])], [CircleSet([4, 7])])
    assert linked_cells(fp) == {}


# ── serialization ────────────────────────────────────────────────────────

def test_cell_json_round_trip():
    for cell in (hull(CircleSet([0])), hull(CircleSet([0, 3])), hull(CircleSet([0, 2, 4]))):
        data = cell.to_json()
        assert data["dim"] == cell.dim
        assert ConvexCell.from_json(data) == cell


def test_plane_point_json():
    p = pp(F(-13, 17), F(10, 17))
    assert p.to_json() == ["-13/17", "10/17"]
    assert PlanePoint.from_json(["-13/17", "10/17"]) == p
