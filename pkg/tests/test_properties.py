"""Randomized property checks driven by hypothesis."""

from hypothesis import given, settings
from hypothesis import strategies as st

from virtpoly.geometry import dilate, hull, minkowski_sum, translate
from virtpoly.measures import mixed_volume, volume
from virtpoly.nerve_homology import ArrangementX, homology_ranks, nerve
from virtpoly.polynomial import MultiPolynomial
from virtpoly.winding import (
    PLCycle,
    integrate_form_over_chain,
    integrate_pullback,
    winding_chain,
)

coord = st.integers(-4, 4)
point = st.tuples(coord, coord)
polygon = st.lists(point, min_size=3, max_size=7).filter(lambda pts: len(set(pts)) >= 3).map(hull)
full_polygon = polygon.filter(lambda p: volume(p) > 0)
small = st.integers(0, 3)
poly2 = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3), min_size=1, max_size=4
).map(lambda d: MultiPolynomial.from_dict(2, d))


@settings(max_examples=40, deadline=None)
@given(polygon, polygon)
def test_mixed_volume_symmetry(a, b):
    assert mixed_volume([a, b]) == mixed_volume([b, a])


@settings(max_examples=30, deadline=None)
@given(polygon, polygon, polygon)
def test_mixed_volume_linearity(a, b, c):
    assert mixed_volume([minkowski_sum(a, b), c]) == mixed_volume([a, c]) + mixed_volume([b, c])


@settings(max_examples=40, deadline=None)
@given(polygon, small)
def test_mixed_volume_diagonal_and_scaling(a, k):
    assert mixed_volume([a, a]) == volume(a)
    assert volume(dilate(a, k)) == k * k * volume(a)


@settings(max_examples=40, deadline=None)
@given(polygon, point)
def test_volume_translation_invariance(a, v):
    assert volume(translate(a, v)) == volume(a)


@settings(max_examples=40, deadline=None)
@given(st.lists(point, min_size=3, max_size=8), st.randoms(use_true_random=False))
def test_hull_ignores_point_order(pts, rnd):
    shuffled = list(pts)
    rnd.shuffle(shuffled)
    assert hull(pts) == hull(shuffled)


@settings(max_examples=30, deadline=None)
@given(st.lists(point, min_size=3, max_size=7), poly2)
def test_green_identity(pts, p):
    cyc = PLCycle.from_points(pts)
    if len(cyc.points) < 3:
        return
    try:
        chain = winding_chain(cyc)
    except ValueError:
        return
    assert integrate_pullback(cyc, p.antiderivative(0)) == integrate_form_over_chain(chain, p)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-5, 5)), min_size=1, max_size=6))
def test_nerve_euler_characteristic(triples):
    lines = [t for t in triples if (t[0], t[1]) != (0, 0)]
    if not lines:
        return
    try:
        x = ArrangementX.lines(lines)
    except ValueError:
        return
    k = nerve(x)
    b = homology_ranks(k)
    assert sum((-1) ** i * v for i, v in enumerate(b)) == k.euler_characteristic()
    assert b[0] >= 1


@settings(max_examples=30, deadline=None)
@given(full_polygon, st.fractions(min_value=0, max_value=3, max_denominator=4))
def test_fractional_dilation_volume(a, lam):
    assert volume(dilate(a, lam)) == lam * lam * volume(a)
