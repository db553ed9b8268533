import math
import random
from fractions import Fraction

import pytest

from virtpoly.acceptance import random_polynomial, random_self_intersecting_cycle
from virtpoly.geometry import box, dilate, hull, translate
from virtpoly.measures import fit_polynomial, volume
from virtpoly.polynomial import MultiPolynomial
from virtpoly.winding import (
    PLCycle,
    SupportFunctionPL,
    complement_regions,
    disk_gradient,
    gauss_type_map,
    gauss_vertex_images,
    integrate_form_over_chain,
    integrate_pullback,
    polygon_gradient,
    smooth_support_demo,
    virtual_volume_from_support,
    winding_chain,
    winding_number,
    winding_truncation_check,
)

SQ = PLCycle.from_points([(0, 0), (1, 0), (1, 1), (0, 1)])
# two triangles meeting at the origin, the right lobe CCW and the left lobe CW
FIG8 = PLCycle.from_points([(0, 0), (2, -1), (2, 1), (0, 0), (-2, -1), (-2, 1)])
X = MultiPolynomial.variable(2, 0)
ONE = MultiPolynomial.constant(2)
TRAP = hull([(0, 0), (2, 0), (1, 1), (0, 1)])


def shoelace(points):
    return sum(
        (p[0] * q[1] - p[1] * q[0] for p, q in zip(points, points[1:] + points[:1])), Fraction(0)
    ) / 2


def test_unit_square_region():
    regs = complement_regions(SQ.segments())
    assert len(regs) == 1 and regs[0].area == 1


def test_crossing_diagonals_bound_nothing():
    assert complement_regions([((0, 0), (1, 1)), ((1, 0), (0, 1))]) == []


def test_figure_eight_has_two_regions():
    assert len(complement_regions(FIG8.segments())) == 2


def test_degenerate_segment_rejected():
    with pytest.raises(ValueError):
        complement_regions([((0, 0), (0, 0))])


def test_region_with_hole():
    outer = PLCycle.from_points([(0, 0), (4, 0), (4, 4), (0, 4)])
    inner = PLCycle.from_points([(1, 1), (2, 1), (2, 2), (1, 2)])
    regs = sorted(complement_regions(outer.segments() + inner.segments()), key=lambda r: r.area)
    assert [r.area for r in regs] == [1, 15]
    assert len(regs[1].loops) == 2


def test_overlapping_collinear_segments_are_merged():
    segs = [((0, 0), (2, 0)), ((1, 0), (3, 0)), ((3, 0), (3, 1)), ((3, 1), (0, 1)), ((0, 1), (0, 0))]
    regs = complement_regions(segs)
    assert len(regs) == 1 and regs[0].area == 3


def test_winding_numbers():
    half = Fraction(1, 2)
    assert winding_number(SQ, (half, half)) == 1
    assert winding_number(SQ, (2, half)) == 0
    assert winding_number(SQ.reversed(), (half, half)) == -1
    assert winding_number(FIG8, (Fraction(3, 2), 0)) == 1
    assert winding_number(FIG8, (Fraction(-3, 2), 0)) == -1


def test_winding_number_ray_through_vertex():
    diamond = PLCycle.from_points([(0, -1), (1, 0), (0, 1), (-1, 0)])
    assert winding_number(diamond, (0, 0)) == 1
    assert winding_number(diamond, (-2, 0)) == 0


def test_point_on_curve_rejected():
    with pytest.raises(ValueError):
        winding_number(SQ, (Fraction(1, 2), 0))


def test_winding_chain_weights():
    assert winding_chain(SQ).weights == [1]
    assert winding_chain(SQ.reversed()).weights == [-1]
    assert sorted(winding_chain(FIG8).weights) == [-1, 1]


def test_twice_wound_square():
    twice = PLCycle.from_points([(0, 0), (2, 0), (2, 2), (0, 2)] * 2)
    w = winding_chain(twice)
    assert w.weights == [2]
    assert integrate_form_over_chain(w, ONE) == 8


def test_integrals_on_square():
    w = winding_chain(SQ)
    assert integrate_form_over_chain(w, ONE) == 1
    assert integrate_form_over_chain(w, X) == Fraction(1, 2)
    assert integrate_form_over_chain(winding_chain(FIG8), ONE) == 0
    assert integrate_pullback(SQ, X) == 1
    assert integrate_pullback(SQ.reversed(), X) == -1
    assert integrate_pullback(SQ, X * X * Fraction(1, 2)) == Fraction(1, 2)


def test_green_identity_on_random_cycles():
    rng = random.Random(20)
    for _ in range(20):
        cyc = random_self_intersecting_cycle(rng)
        p = random_polynomial(rng, 3)
        q = p.antiderivative(0)
        assert integrate_pullback(cyc, q) == integrate_form_over_chain(winding_chain(cyc), p)


def test_region_areas_sum_to_signed_area():
    # the signed area of a closed polyline equals the winding-weighted area
    rng = random.Random(21)
    for _ in range(10):
        cyc = random_self_intersecting_cycle(rng)
        w = winding_chain(cyc)
        assert sum(k * r.area for k, r in w.regions) == shoelace(list(cyc.points))


def test_orientation_reversal_negates():
    rng = random.Random(22)
    cyc = random_self_intersecting_cycle(rng)
    p = random_polynomial(rng, 2)
    a, b = winding_chain(cyc), winding_chain(cyc.reversed())
    assert sorted(a.weights) == sorted(-k for k in b.weights)
    assert integrate_form_over_chain(a, p) == -integrate_form_over_chain(b, p)


def test_translation_equivariance():
    rng = random.Random(23)
    cyc = random_self_intersecting_cycle(rng)
    v = (Fraction(3, 2), -2)
    a, b = winding_chain(cyc), winding_chain(cyc.translated(v))
    assert sorted((k, r.area) for k, r in a.regions) == sorted((k, r.area) for k, r in b.regions)
    assert integrate_form_over_chain(a, ONE) == integrate_form_over_chain(b, ONE)


def test_gauss_map_of_reference_polygon_is_its_boundary():
    h = SupportFunctionPL.of(TRAP, TRAP)
    assert set(gauss_type_map(h).points) == set(TRAP.vertices)
    w = winding_chain(gauss_type_map(h))
    assert w.weights == [1] and w.regions[0][1].area == volume(TRAP)


def test_gauss_map_of_translate():
    v = (3, -1)
    h = SupportFunctionPL.of(TRAP, translate(TRAP, v))
    base = gauss_type_map(SupportFunctionPL.of(TRAP, TRAP))
    assert gauss_type_map(h) == base.translated(v)


def test_gauss_map_is_linear_in_support_values():
    rng = random.Random(24)
    d0 = hull([(0, 0), (2, 0), (3, 1), (1, 2), (-1, 1)])
    k = len(d0.vertices)
    h1 = SupportFunctionPL.from_values(d0, [Fraction(rng.randint(-9, 9), 2) for _ in range(k)])
    h2 = SupportFunctionPL.from_values(d0, [Fraction(rng.randint(-9, 9), 3) for _ in range(k)])
    lam, mu = Fraction(2, 3), Fraction(-5, 4)
    combo = gauss_vertex_images(lam * h1 + mu * h2)
    for c, a, b in zip(combo, gauss_vertex_images(h1), gauss_vertex_images(h2)):
        assert c == (lam * a[0] + mu * b[0], lam * a[1] + mu * b[1])


def test_trapezoid_virtual_four_gon():
    pos = hull([(0, 0), (6, 0), (5, 1), (0, 1)])
    neg = dilate(TRAP, 2)
    h = SupportFunctionPL.of(TRAP, pos) - SupportFunctionPL.of(TRAP, neg)
    w = winding_chain(gauss_type_map(h))
    assert [(k, r.area) for k, r in w.regions] == [(-1, Fraction(5, 2))]
    assert virtual_volume_from_support(h) == Fraction(-5, 2)
    assert winding_truncation_check(h, pos, neg)


def test_truncation_check_square_cases():
    sq = box((0, 0), (1, 1))
    for pos, neg in [(dilate(sq, 2), sq), (sq, sq), (sq, dilate(sq, 3))]:
        h = SupportFunctionPL.of(sq, pos) - SupportFunctionPL.of(sq, neg)
        assert winding_truncation_check(h, pos, neg)


def test_truncation_check_rejects_wrong_witnesses():
    sq = box((0, 0), (1, 1))
    h = SupportFunctionPL.of(sq, dilate(sq, 2))
    with pytest.raises(ValueError):
        winding_truncation_check(h, TRAP, sq)
    with pytest.raises(ValueError):
        winding_truncation_check(h, dilate(sq, 3), dilate(sq, 2))


def test_virtual_volume_of_convex_support_equals_volume():
    wide = hull([(0, 0), (6, 0), (5, 1), (0, 1)])
    for body in (TRAP, wide, dilate(TRAP, 3), translate(wide, (1, 1))):
        assert virtual_volume_from_support(SupportFunctionPL.of(TRAP, body)) == volume(body)


def test_virtual_volume_homogeneity():
    base = SupportFunctionPL.of(TRAP, TRAP)
    for lam in range(-3, 4):
        assert virtual_volume_from_support(lam * base) == lam * lam * volume(TRAP)


def test_virtual_volume_is_quadratic_in_one_facet_value():
    # vary the value on the slanted edge normal (1, 1); fit on t in 0..2, predict t in 3..6
    base = SupportFunctionPL.of(TRAP, TRAP).as_mapping()

    def vol(t):
        vals = dict(base)
        vals[(1, 1)] = Fraction(t)
        return virtual_volume_from_support(SupportFunctionPL.from_mapping(TRAP, vals))

    p = fit_polynomial({(t,): vol(t) for t in range(3)}, 2)
    for t in range(-3, 7):
        assert p((t,)) == vol(t)


def test_homotopic_gauss_maps_give_equal_integrals():
    # an alternative compatible map overshoots along each translated edge line and comes back
    h = SupportFunctionPL.of(TRAP, hull([(0, 0), (6, 0), (5, 1), (0, 1)])) - SupportFunctionPL.of(TRAP, dilate(TRAP, 2))
    pts = gauss_vertex_images(h)
    detour = []
    for a, b in zip(pts, pts[1:] + pts[:1]):
        detour.append(a)
        over = (b[0] + (b[0] - a[0]) / 3, b[1] + (b[1] - a[1]) / 3)
        detour.extend([over])
    alt = PLCycle.from_points(detour)
    p = MultiPolynomial.from_dict(2, {(1, 1): 2, (0, 2): -1, (0, 0): 3})
    base = PLCycle.from_points(pts)
    assert integrate_form_over_chain(winding_chain(alt), p) == integrate_form_over_chain(winding_chain(base), p)


def test_pullback_is_polynomial_in_vertex_images():
    # integrals over PL maps with prescribed vertex images are polynomial in the images
    q = MultiPolynomial.from_dict(2, {(2, 0): 1, (0, 1): 1})

    def value(t):
        return integrate_pullback(PLCycle.from_points([(0, 0), (t, 0), (t, 1), (0, 2)]), q)

    poly = fit_polynomial({(t,): value(t + 1) for t in range(4)}, 3)
    for t in range(4, 9):
        assert poly((t,)) == value(t + 1)


def test_smooth_disk():
    for r in (1.0, 3.0):
        approx = smooth_support_demo(disk_gradient(r), 256)
        assert abs(approx - math.pi * r * r) / (math.pi * r * r) < 0.01


def test_smooth_difference_of_disks():
    g1, g2 = disk_gradient(3.0), disk_gradient(1.0)

    def grad(xi):
        a, b = g1(xi), g2(xi)
        return (a[0] - b[0], a[1] - b[1])

    approx = smooth_support_demo(grad, 256)
    assert abs(approx - math.pi * 4) / (math.pi * 4) < 0.01


def test_smooth_polygon_support_converges_to_area():
    p = hull([(0, 0), (3, 0), (2, 2), (0, 1)])
    errs = [abs(smooth_support_demo(polygon_gradient(p), n) - float(volume(p))) for n in (16, 64, 256)]
    assert errs[-1] <= errs[0]
    assert errs[-1] < 1e-9


def test_smooth_demo_rejects_small_samples():
    with pytest.raises(ValueError):
        smooth_support_demo(disk_gradient(1.0), 8)
