from fractions import Fraction

import pytest

from virtpoly.chains import (
    ConvexChain,
    chain_of,
    chains_equal,
    euler_integral,
    evaluate,
    inverse,
    one,
    power,
    product,
    truncate_lower_dim,
    virtual_polytope,
)
from virtpoly.geometry import box, hull, point

SQUARE = box((0, 0), (1, 1))
SEG = hull([(0,), (1,)])


def test_inverse_of_segment_is_open_reflected_segment():
    # minus the indicator of the open interval (-1, 0)
    inv = inverse(SEG)
    assert evaluate(inv, (Fraction(-1, 2),)) == -1
    assert evaluate(inv, (-1,)) == 0
    assert evaluate(inv, (0,)) == 0
    assert evaluate(inv, (Fraction(1, 2),)) == 0


@pytest.mark.parametrize(
    "p",
    [
        SEG,
        SQUARE,
        hull([(0, 0), (2, 0), (3, 1), (1, 2), (-1, 1)]),
        hull([(0, 0), (2, 0), (3, 1), (2, 2), (0, 2), (-1, 1)]),
        point((1, 1)),
    ],
)
def test_inverse_times_polytope_is_unit(p):
    v = chains_equal(product(inverse(p), chain_of(p)), one(p.ambient))
    assert v.equal and v.exact


def test_inverse_identity_in_three_dimensions_is_flagged_inexact():
    cube = box((0, 0, 0), (1, 1, 1))
    v = chains_equal(product(inverse(cube), chain_of(cube)), one(3))
    assert v.equal and not v.exact


def test_power_identities():
    assert chains_equal(product(inverse(SQUARE), inverse(SQUARE)), power(SQUARE, -2).chain)
    assert chains_equal(power(SEG, -2).chain, inverse(hull([(0,), (2,)])))


def test_chains_equal_detects_decomposition():
    a = chain_of(hull([(0,), (2,)]))
    b = chain_of(hull([(0,), (1,)])) + chain_of(hull([(1,), (2,)])) - chain_of(point((1,)))
    assert chains_equal(a, b)
    assert not chains_equal(chain_of(hull([(0,), (1,)])), a)


def test_chains_equal_in_the_plane_finds_a_witness():
    a = chain_of(SQUARE)
    b = chain_of(box((0, 0), (1, 2)))
    v = chains_equal(a, b)
    assert not v.equal and v.witness is not None
    assert evaluate(a, v.witness) != evaluate(b, v.witness)


def test_euler_integral_of_a_polytope_is_one():
    assert euler_integral(chain_of(SQUARE)) == 1
    # the inverse of a polygon has Euler integral (+1) since the interior of a 2-cell counts +1
    assert euler_integral(inverse(SQUARE)) == 1


def test_truncation_drops_lower_dimensional_terms():
    f = chain_of(SQUARE) + chain_of(hull([(0, 0), (1, 0)]))
    assert truncate_lower_dim(f) == chain_of(SQUARE)


def test_virtual_polytope_product_of_powers():
    v = virtual_polytope([SQUARE, SQUARE], [2, -1])
    assert chains_equal(v.chain, chain_of(SQUARE))


def test_chain_arithmetic():
    f = chain_of(SQUARE)
    assert (f - f).is_zero()
    assert (2 * f)((Fraction(1, 2), Fraction(1, 2))) == 2
    assert isinstance(f * f, ConvexChain)
