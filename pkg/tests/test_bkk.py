from fractions import Fraction

import numpy as np
import pytest

from virtpoly.bkk import (
    LaurentPolynomial,
    Tolerances,
    aberth_roots,
    bkk_number,
    count_torus_roots_2d,
    default_catalog,
    newton_polytope,
    resultant_in_y,
    run_harness,
    sample_system,
    virtual_bkk,
)
from virtpoly.geometry import box, dilate, hull, origin

TRI = hull([(0, 0), (1, 0), (0, 1)])
SQ = box((0, 0), (1, 1))


def test_newton_polytopes():
    assert newton_polytope(LaurentPolynomial.from_dict(2, {(0, 0): 1, (1, 0): 2, (0, 1): 3})) == TRI
    assert newton_polytope(LaurentPolynomial.from_dict(2, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})) == SQ
    assert newton_polytope(LaurentPolynomial.from_dict(1, {(-1,): 1, (1,): 1})) == hull([(-1,), (1,)])


def test_laurent_polynomial_rejects_empty():
    with pytest.raises(ValueError):
        LaurentPolynomial.from_dict(2, {(0, 0): 0})


def test_bkk_numbers():
    assert bkk_number([TRI, TRI]) == 1
    assert bkk_number([SQ, SQ]) == 2
    assert bkk_number([SQ, TRI]) == 2
    assert bkk_number([dilate(TRI, 2), SQ]) == 4


def test_bkk_is_symmetric_and_monotone():
    big = hull([(0, 0), (3, 0), (0, 2), (2, 2)])
    assert bkk_number([SQ, big]) == bkk_number([big, SQ])
    assert bkk_number([TRI, SQ]) <= bkk_number([TRI, big])
    assert bkk_number([TRI, TRI]) <= bkk_number([SQ, TRI])


def test_sample_system_is_deterministic():
    a = sample_system([TRI, SQ], seed=1)
    b = sample_system([TRI, SQ], seed=1)
    assert a == b
    assert len(a[0].terms) == 3 and len(a[1].terms) == 4
    assert sample_system([TRI, SQ], seed=2) != a


def test_aberth_roots_of_known_polynomial():
    roots = np.sort_complex(aberth_roots([-6, 11, -6, 1]))
    assert np.allclose(roots, [1, 2, 3])
    unity = aberth_roots([-1, 0, 0, 0, 0, 1])
    assert np.allclose(np.abs(unity), 1) and np.allclose(unity**5, 1)


def test_resultant_of_linear_system():
    # P = y - x, Q = y - 2x + 1: Res_y = (-x) - (-2x + 1) up to sign, root x = 1
    a = np.array([[0, 1], [-1, 0]], dtype=complex)
    b = np.array([[1, 1], [-2, 0]], dtype=complex)
    r = resultant_in_y(a, b)
    roots = aberth_roots(r[: int(np.max(np.nonzero(np.abs(r) > 1e-12)[0])) + 1])
    assert np.allclose(roots, [1])


@pytest.mark.parametrize("name", list(default_catalog()))
def test_root_count_matches_bkk(name):
    pair = default_catalog()[name]
    p1, p2 = sample_system(pair, seed=5)
    rc = count_torus_roots_2d(p1, p2)
    assert rc.certificate.reliable
    assert rc.count == bkk_number(pair)
    for x, y in rc.roots:
        assert abs(p1(x, y)) < 1e-7 and abs(p2(x, y)) < 1e-7


def test_root_count_with_negative_exponents():
    # x + 1/x - 3 = 0 and y - x = 0: two torus roots
    p1 = LaurentPolynomial.from_dict(2, {(1, 0): 1, (-1, 0): 1, (0, 0): -3})
    p2 = LaurentPolynomial.from_dict(2, {(0, 1): 1, (1, 0): -1})
    rc = count_torus_roots_2d(p1, p2)
    assert rc.count == 2 == bkk_number([newton_polytope(p1), newton_polytope(p2)])


def test_non_generic_system_has_fewer_roots():
    # x - 1 + y = 0 and x - 1 + 2y = 0 meet only at (1, 0)
    p1 = LaurentPolynomial.from_dict(2, {(1, 0): 1, (0, 0): -1, (0, 1): 1})
    p2 = LaurentPolynomial.from_dict(2, {(1, 0): 1, (0, 0): -1, (0, 1): 2})
    rc = count_torus_roots_2d(p1, p2)
    # that point lies off the torus
    assert rc.count == 0


def test_harness_passes():
    rep = run_harness(seeds=range(3))
    assert rep.ok and all(r.counted == r.bkk for r in rep.rows)


def test_harness_fault_injection_fails():
    rep = run_harness(seeds=range(2), tol=Tolerances(cluster=10))
    assert not rep.ok
    assert all(r.resamples == 3 and r.flags for r in rep.rows if r.bkk > 1)


def test_virtual_bkk():
    assert virtual_bkk([(SQ, origin(2)), (TRI, origin(2))]) == bkk_number([SQ, TRI])
    assert virtual_bkk([(SQ, SQ), (TRI, origin(2))]) == 0
    assert virtual_bkk([(SQ, TRI), (SQ, TRI)]) == -1


def test_virtual_bkk_inclusion_exclusion():
    big = hull([(0, 0), (2, 0), (0, 2), (1, 2)])
    pairs = [(big, TRI), (SQ, hull([(0, 0), (1, 0)]))]
    expected = (
        bkk_number([big, SQ])
        - bkk_number([big, hull([(0, 0), (1, 0)])])
        - bkk_number([TRI, SQ])
        + bkk_number([TRI, hull([(0, 0), (1, 0)])])
    )
    assert virtual_bkk(pairs) == expected


def test_bkk_three_dimensional():
    simplex = hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert bkk_number([simplex] * 3) == 1
    assert bkk_number([box((0, 0, 0), (1, 1, 1))] * 3) == 6


def test_non_lattice_bkk_number_is_rational():
    half = hull([(0, 0), (Fraction(1, 2), 0), (0, Fraction(1, 2))])
    assert bkk_number([half, TRI]) == Fraction(1, 2)
