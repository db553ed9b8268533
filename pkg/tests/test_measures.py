import itertools
import math
from fractions import Fraction

import pytest

from virtpoly.geometry import box, dilate, hull, lattice_points, minkowski_sum, origin
from virtpoly.measures import (
    FitError,
    VirtualBody,
    dilate_chain,
    fit_polynomial,
    lattice_measure,
    minkowski_polynomiality_check,
    mixed_volume,
    virtual_mixed_volume,
    virtual_volume,
    volume,
)
from virtpoly.polynomial import MultiPolynomial

SQUARE = box((0, 0), (1, 1))
TRIANGLE = hull([(0, 0), (1, 0), (0, 1)])
PENTAGON = hull([(0, 0), (2, 0), (2, 1), (1, 2), (0, 2)])


def pick_area(p):
    """Area from Pick's theorem, an oracle independent of the shoelace formula."""
    pts = lattice_points(p)
    cyc = p.boundary_cycle()
    boundary = 0
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        boundary += math.gcd(int(b[0] - a[0]), int(b[1] - a[1]))
    interior = len(pts) - boundary
    return Fraction(interior) + Fraction(boundary, 2) - 1


@pytest.mark.parametrize(
    "p", [SQUARE, TRIANGLE, PENTAGON, hull([(0, 0), (5, 1), (3, 4), (-1, 2)]), dilate(TRIANGLE, 3)]
)
def test_volume_matches_pick(p):
    assert volume(p) == pick_area(p)


def test_volume_values():
    assert volume(PENTAGON) == Fraction(7, 2)
    assert volume(hull([(0, 0), (1, 1)])) == 0
    assert volume(box((0, 0, 0), (1, 2, 3))) == 6
    assert volume(hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])) == Fraction(1, 6)


def test_mixed_volume_values():
    assert mixed_volume([SQUARE, TRIANGLE]) == 1
    assert mixed_volume([TRIANGLE, TRIANGLE]) == Fraction(1, 2)
    cube = box((0, 0, 0), (1, 1, 1))
    simplex = hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert mixed_volume([cube, cube, simplex]) == 1


def test_lattice_measure_counts_dilates():
    one = MultiPolynomial.constant(2)
    for k in range(5):
        assert lattice_measure(one, dilate_chain([SQUARE], [k])) == (k + 1) ** 2


def test_lattice_measure_negative_powers():
    one = MultiPolynomial.constant(2)
    # reciprocity: interior points of k*square, counted with sign (-1)^2
    assert lattice_measure(one, dilate_chain([SQUARE], [-1])) == 0
    assert lattice_measure(one, dilate_chain([SQUARE], [-2])) == 1
    assert lattice_measure(one, dilate_chain([SQUARE], [-3])) == 4


def test_lattice_measure_with_polynomial_weight():
    x = MultiPolynomial.variable(2, 0)
    # sum of x over {0,1,2}^2
    assert lattice_measure(x, dilate_chain([SQUARE], [2])) == 9


def test_fit_polynomial():
    samples = {(n,): (n + 1) ** 2 for n in range(5)}
    p = fit_polynomial(samples, 2)
    assert p.as_dict() == {(0,): 1, (1,): 2, (2,): 1}


def test_fit_polynomial_rejects_non_polynomial_data():
    with pytest.raises(FitError):
        fit_polynomial({(n,): 2**n for n in range(6)}, 4)


def test_virtual_volume():
    assert virtual_volume(VirtualBody(SQUARE, box((0, 0), (2, 2)))) == 1
    assert virtual_volume(VirtualBody(minkowski_sum(SQUARE, TRIANGLE), TRIANGLE)) == 1


def test_virtual_body_cancellation_law():
    a = VirtualBody(minkowski_sum(SQUARE, TRIANGLE), TRIANGLE)
    assert a == VirtualBody(SQUARE)
    assert a.scaled(-1) == VirtualBody(origin(2), SQUARE)


def test_virtual_mixed_volume_expansion():
    d = VirtualBody(SQUARE, TRIANGLE)
    assert virtual_mixed_volume([d, d]) == 1 - 2 + Fraction(1, 2)


def test_minkowski_polynomiality():
    r = minkowski_polynomiality_check(SQUARE, TRIANGLE)
    assert r.exact and r.mixed_volume_coefficients
    assert r.polynomial.as_dict() == {(2, 0): 1, (1, 1): 2, (0, 2): Fraction(1, 2)}


def test_minkowski_polynomiality_in_three_dimensions():
    cube = box((0, 0, 0), (1, 1, 1))
    simplex = hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    r = minkowski_polynomiality_check(cube, simplex)
    assert r.mixed_volume_coefficients
    assert r.polynomial.as_dict() == {(3, 0): 1, (2, 1): 3, (1, 2): Fraction(3, 2), (0, 3): Fraction(1, 6)}


def test_brute_force_lattice_sum_for_mixed_dilates():
    # independent count of lattice points of a*T + b*S for small a, b
    one = MultiPolynomial.constant(2)
    for a, b in itertools.product(range(3), repeat=2):
        body = minkowski_sum(dilate(TRIANGLE, a), dilate(SQUARE, b))
        brute = sum(
            1
            for x in range(-1, 6)
            for y in range(-1, 6)
            if body.contains((x, y))
        )
        assert lattice_measure(one, dilate_chain([TRIANGLE, SQUARE], [a, b])) == brute
