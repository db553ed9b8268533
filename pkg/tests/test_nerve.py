import itertools
import random
from fractions import Fraction

import pytest

from virtpoly.acceptance import random_lines
from virtpoly.nerve_homology import (
    AffineSubspace,
    ArrangementX,
    FitInconsistencyError,
    NotDominatedError,
    SimplicialComplex,
    TranslationTuple,
    compatible_map,
    compatible_space,
    dominates,
    equivalent,
    homology_ranks,
    integral_F,
    intersect,
    is_compatible,
    nerve,
    parallel_core,
    translate_map,
    translation_from_coords,
    wedge_check,
)
from virtpoly.polynomial import MultiPolynomial

H = AffineSubspace.hyperplane
FOUR = ArrangementX.lines([(1, 0, 0), (0, 1, 0), (1, 1, 3), (1, -2, 1)])
CONCURRENT = ArrangementX.lines([(1, 0, 0), (0, 1, 0), (1, 1, 0)])
X_, Y_ = MultiPolynomial.variable(2, 0), MultiPolynomial.variable(2, 1)
ZERO = MultiPolynomial(2)


def test_canonical_form_is_unique():
    a = AffineSubspace.make((1, 1), [(2, 2)])
    b = AffineSubspace.make((5, 5), [(-1, -1)])
    assert a == b


def test_dependent_directions_rejected():
    with pytest.raises(ValueError):
        AffineSubspace.make((0, 0, 0), [(1, 0, 0), (2, 0, 0)])


def test_intersections():
    assert intersect([H((1, 0), 1), H((0, 1), 2)]).point == (1, 2)
    assert intersect([H((1, 0), 1), H((1, 0), 2)]) is None
    p = intersect([H((1, 0, 0), 1), H((0, 1, 1), 2), H((1, 1, 0), 0)])
    assert p.dim == 0 and p.point == (1, -1, 3)
    line = intersect([H((1, 0, 0), 1), H((0, 1, 0), 2)])
    assert line.dim == 1


def test_nerve_of_four_generic_lines_is_complete_graph():
    k = nerve(FOUR)
    assert k.faces == frozenset({(i,) for i in range(4)} | set(itertools.combinations(range(4), 2)))


def test_nerve_of_concurrent_lines_is_a_triangle():
    assert (0, 1, 2) in nerve(CONCURRENT).faces


def test_nerve_of_parallel_lines():
    k = nerve(ArrangementX.lines([(1, 0, 0), (1, 0, 1)]))
    assert k.faces == frozenset({(0,), (1,)})


def test_nerve_size_bound():
    with pytest.raises(ValueError):
        nerve(ArrangementX.lines([(1, 0, i) for i in range(21)]))


def test_simplicial_complex_requires_closure():
    with pytest.raises(ValueError):
        SimplicialComplex(3, frozenset({(0,), (1,), (2,), (0, 1, 2)}))


def test_betti_numbers():
    simplex = SimplicialComplex.closure(4, [(0, 1, 2, 3)])
    assert homology_ranks(simplex) == [1, 0, 0, 0]
    triangle = SimplicialComplex.closure(3, [(0, 1), (1, 2), (0, 2)])
    assert homology_ranks(triangle) == [1, 1]
    assert homology_ranks(nerve(FOUR)) == [1, 3]
    # octahedron boundary is a 2-sphere
    octa = SimplicialComplex.closure(6, [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)])
    assert homology_ranks(octa) == [1, 0, 1]


def test_betti_numbers_match_euler_characteristic():
    rng = random.Random(1)
    for _ in range(20):
        k = nerve(random_lines(rng, rng.randint(3, 7), rng.choice([0, 3])))
        b = homology_ranks(k)
        assert sum((-1) ** i * v for i, v in enumerate(b)) == k.euler_characteristic()


def test_domination():
    assert equivalent(FOUR, FOUR)
    generic = ArrangementX.lines([(1, 0, 1), (0, 1, 1), (1, 1, 0)])
    assert dominates(generic, CONCURRENT) and not dominates(CONCURRENT, generic)
    apart = ArrangementX.lines([(1, 0, 0), (1, 0, 1)])
    crossing = ArrangementX.lines([(1, 0, 0), (0, 1, 0)])
    assert dominates(apart, crossing) and not equivalent(apart, crossing)


def test_domination_needs_same_index_set():
    with pytest.raises(ValueError):
        dominates(FOUR, CONCURRENT)


def test_compatible_map_into_own_nerve():
    g = compatible_map(nerve(FOUR), FOUR)
    assert g.verify()
    for i in range(4):
        assert FOUR.members[i].contains(g.images[(i,)])


def test_compatible_map_fails_without_inclusion():
    with pytest.raises(NotDominatedError):
        compatible_map(nerve(CONCURRENT), ArrangementX.lines([(1, 0, 1), (0, 1, 1), (1, 1, 0)]))


def test_compatible_map_iff_inclusion_randomized():
    rng = random.Random(2)
    for _ in range(40):
        k = rng.randint(2, 5)
        x1, x2 = random_lines(rng, k, rng.choice([0, 3])), random_lines(rng, k, rng.choice([0, 3]))
        inc = nerve(x1).is_subcomplex_of(nerve(x2))
        try:
            ok = compatible_map(nerve(x1), x2).verify()
        except NotDominatedError:
            ok = False
        assert ok == inc


def test_parallel_core():
    assert parallel_core(FOUR).dim == 0
    assert parallel_core(ArrangementX.lines([(1, 0, 0), (1, 0, 2), (2, 0, 5)])).dim == 1
    planes = ArrangementX.of([H((1, 0, 0), 1), H((0, 1, 0), 2), H((1, 1, 0), 5)])
    core = parallel_core(planes)
    assert core.dirs == ((0, 0, 1),)


def test_parallel_core_rejects_non_hyperplanes():
    with pytest.raises(ValueError):
        parallel_core(ArrangementX.of([AffineSubspace.make((0, 0, 0), [(1, 0, 0)])]))


@pytest.mark.parametrize(
    "lines, b1",
    [
        ([(1, 0, 0), (0, 1, 0), (1, 1, 3), (1, -2, 1)], 3),
        ([(1, 0, 0), (0, 1, 0), (1, 1, 1)], 1),
        ([(1, 0, 0), (0, 1, 0)], 0),
        ([(1, 0, 0), (0, 1, 0), (1, 1, 0)], 0),
    ],
)
def test_wedge_check(lines, b1):
    r = wedge_check(ArrangementX.lines(lines))
    assert r.ok and r.b1 == b1 and r.bounded == b1


def test_wedge_check_parallel_family():
    r = wedge_check(ArrangementX.lines([(1, 0, 0), (1, 0, 1), (1, 0, 3)]))
    assert r.ok and r.core_dim == 1 and r.sphere_dim == 0 and r.b0 == 3


def test_wedge_check_with_degenerate_concurrences():
    rng = random.Random(3)
    for _ in range(30):
        x = random_lines(rng, rng.randint(3, 8), rng.choice([0, 3, 4]))
        assert wedge_check(x).ok


def test_is_compatible():
    assert is_compatible(CONCURRENT, TranslationTuple.zero(CONCURRENT))
    y = TranslationTuple.from_flat(CONCURRENT, [1, 0, 0])
    assert not is_compatible(CONCURRENT, y)
    shift = TranslationTuple.from_vectors(CONCURRENT, [(2, 3)] * 3)
    assert is_compatible(CONCURRENT, shift)


def test_compatible_space_dimension():
    # three concurrent lines: one linear condition on three offsets
    assert len(compatible_space(CONCURRENT)) == 2
    assert len(compatible_space(FOUR)) == 4


def test_compatible_space_vectors_are_compatible():
    basis = compatible_space(CONCURRENT)
    for coords in [(1, 0), (0, 1), (3, -2)]:
        assert is_compatible(CONCURRENT, translation_from_coords(CONCURRENT, basis, coords))


def test_translate_map_rejects_incompatible():
    with pytest.raises(NotDominatedError):
        translate_map(CONCURRENT, TranslationTuple.from_flat(CONCURRENT, [1, 0, 0]))


def test_translate_map_is_affine_in_y():
    basis = compatible_space(FOUR)
    g = [translate_map(FOUR, translation_from_coords(FOUR, basis, (t, 2 * t, -t, 1))) for t in range(4)]
    for face in g[0].images:
        p0, p1, p3 = g[0].images[face], g[1].images[face], g[3].images[face]
        # three collinear samples predict the fourth
        assert p3 == tuple(a + 3 * (b - a) for a, b in zip(p0, p1))
    assert all(m.verify() for m in g)


def test_translate_map_linearity():
    basis = compatible_space(CONCURRENT)
    y1 = translation_from_coords(CONCURRENT, basis, (1, 2))
    y2 = translation_from_coords(CONCURRENT, basis, (-3, 1))
    g0 = translate_map(CONCURRENT, TranslationTuple.zero(CONCURRENT))
    g1, g2 = translate_map(CONCURRENT, y1), translate_map(CONCURRENT, y2)
    g12 = translate_map(CONCURRENT, y1 + y2)
    for face, p in g12.images.items():
        assert p == tuple(a + b - c for a, b, c in zip(g1.images[face], g2.images[face], g0.images[face]))


def test_integral_F_for_four_lines():
    r = integral_F(FOUR, {(0, 1): 1, (1, 2): 1, (2, 0): 1}, [ZERO, X_], holdout=5)
    assert r.exact and r.degree == 2 and not r.polynomial.is_zero()


def test_integral_F_concurrent_triple_is_zero():
    # the 3-cycle bounds the triple face, and its image is a star of spokes
    r = integral_F(CONCURRENT, {(0, 1): 1, (1, 2): 1, (2, 0): 1}, [ZERO, X_])
    assert r.polynomial.is_zero()


def test_integral_F_constant_form_on_zero_translation_family():
    r = integral_F(FOUR, {(0, 1): 1, (1, 2): 1, (2, 0): 1}, [ZERO, MultiPolynomial.constant(2, 3)])
    # the pullback of 3 dy along a closed path vanishes
    assert r.polynomial.is_zero()


def test_integral_F_rejects_non_cycles():
    with pytest.raises(ValueError):
        integral_F(FOUR, {(0, 1): 1}, [ZERO, X_])


def test_integral_F_reports_wrong_degree():
    with pytest.raises(FitInconsistencyError):
        integral_F(FOUR, {(0, 1): 1, (1, 2): 1, (2, 0): 1}, [ZERO, X_ * X_ * X_], degree=1)


def test_integral_F_with_explicit_samples():
    basis = compatible_space(CONCURRENT)
    samples = [(a, b) for a in range(-2, 3) for b in range(-2, 3)]
    r = integral_F(CONCURRENT, {(0, 1): 1, (1, 2): 1, (2, 0): 1}, [Y_, X_ * Y_], samples=samples, holdout=10)
    assert r.train + r.holdout + r.excluded == len(samples)
    assert len(r.basis) == len(basis)
