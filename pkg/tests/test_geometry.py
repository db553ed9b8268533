from fractions import Fraction

import pytest

from virtpoly.geometry import (
    DimensionError,
    analogous,
    box,
    dilate,
    hull,
    lattice_points,
    minkowski_sum,
    normal_fan,
    origin,
    point,
    support_value,
    translate,
)

SQUARE = box((0, 0), (1, 1))
TRIANGLE = hull([(0, 0), (1, 0), (0, 1)])
TRAPEZOID = hull([(0, 0), (2, 0), (1, 1), (0, 1)])


def test_hull_drops_interior_and_collinear_points():
    p = hull([(0, 0), (2, 0), (2, 2), (0, 2), (1, 1), (1, 0)])
    assert set(p.vertices) == {(0, 0), (2, 0), (2, 2), (0, 2)}
    assert p.dim == 2


def test_hull_of_collinear_points_is_segment():
    p = hull([(0, 0), (1, 1), (3, 3), (2, 2)])
    assert p.dim == 1
    assert set(p.vertices) == {(0, 0), (3, 3)}


def test_single_point_has_dimension_zero():
    assert point((3, 4)).dim == 0


def test_hull_rejects_empty_and_mixed_input():
    with pytest.raises(ValueError):
        hull([])
    with pytest.raises(DimensionError):
        hull([(0, 0), (1,)])


def test_rationals_are_kept_exact():
    p = hull([("1/3", 0), (1, "2/7"), (0, 0)])
    assert Fraction(1, 3) in {v[0] for v in p.vertices}


def test_minkowski_sum_square_triangle():
    s = minkowski_sum(SQUARE, TRIANGLE)
    assert set(s.vertices) == {(0, 0), (2, 0), (2, 1), (1, 2), (0, 2)}


def test_minkowski_sum_with_point_translates():
    assert minkowski_sum(SQUARE, point((2, 3))) == translate(SQUARE, (2, 3))


def test_normal_fan_of_trapezoid():
    fan = normal_fan(TRAPEZOID)
    assert fan.rays == {(0, 1), (1, 1), (-1, 0), (0, -1)}
    assert len(fan.maximal_cones) == 4


def test_analogous_polytopes():
    wide = hull([(0, 0), (6, 0), (5, 1), (0, 1)])
    assert analogous(TRAPEZOID, wide)
    assert analogous(TRAPEZOID, dilate(TRAPEZOID, 3))
    assert not analogous(TRAPEZOID, SQUARE)


def test_support_value():
    assert support_value(TRAPEZOID, (1, 1)) == 2
    assert support_value(TRAPEZOID, (-1, 0)) == 0


def test_dilate_by_zero_is_origin():
    assert dilate(TRIANGLE, 0) == origin(2)


def test_lattice_points_match_brute_force():
    tri = hull([(0, 0), (4, 0), (0, 3)])
    brute = {(x, y) for x in range(5) for y in range(4) if 3 * x + 4 * y <= 12}
    assert set(lattice_points(tri)) == brute


def test_lattice_points_of_triangle():
    assert len(lattice_points(hull([(0, 0), (2, 0), (0, 2)]))) == 6


def test_cube_faces_and_cube_plus_octahedron():
    cube = box((0, 0, 0), (1, 1, 1))
    assert len(cube.facets) == 6
    assert len(cube.faces()) == 27  # 8 + 12 + 6 + the cube itself
    octa = hull([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    s = minkowski_sum(cube, octa)
    assert len(s.vertices) == 24
    assert len(s.facets) == 26


def test_contains():
    assert TRAPEZOID.contains((1, Fraction(1, 2)))
    assert not TRAPEZOID.contains((2, 1))
