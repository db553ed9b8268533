"""The acceptance criteria as executable checks.

Each ``criterion_*`` function returns a :class:`CriterionResult`.  All random
inputs come from fixed seeds, so reports are identical across runs.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import bkk, chains, geometry, measures, winding
from . import nerve_homology as nerve
from .geometry import hull
from .polynomial import MultiPolynomial


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.2f}s)"

    def as_dict(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


# ---------------------------------------------------------------------------
# random inputs


def random_polygon(rng: random.Random, size: int = 4, max_vertices: int = 6) -> geometry.ConvexPolytope:
    """Hull of a few random lattice points, redrawn until it is full-dimensional."""
    while True:
        k = rng.randint(3, max_vertices)
        p = hull([(rng.randint(0, size), rng.randint(0, size)) for _ in range(k)])
        if p.dim == 2:
            return p


def random_polynomial(rng: random.Random, max_degree: int = 3) -> MultiPolynomial:
    data = {}
    for e in itertools.product(range(max_degree + 1), repeat=2):
        if sum(e) <= max_degree and rng.random() < 0.5:
            data[e] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return MultiPolynomial.from_dict(2, data or {(0, 0): 1})


def random_self_intersecting_cycle(rng: random.Random) -> winding.PLCycle:
    """A random closed polyline whose segment arrangement has an interior crossing."""
    while True:
        k = rng.randint(4, 9)
        pts = [(Fraction(rng.randint(-6, 6)), Fraction(rng.randint(-6, 6), rng.randint(1, 2))) for _ in range(k)]
        try:
            cyc = winding.PLCycle.from_points(pts)
        except ValueError:
            continue
        if len(cyc.points) >= 4 and _crosses(cyc):
            return cyc


def _crosses(cyc: winding.PLCycle) -> bool:
    segs = cyc.segments()
    for (i, (p, q)), (j, (r, s)) in itertools.combinations(enumerate(segs), 2):
        if abs(i - j) in (1, len(segs) - 1):
            continue
        d1 = geometry.cross2(p, q, r), geometry.cross2(p, q, s)
        d2 = geometry.cross2(r, s, p), geometry.cross2(r, s, q)
        if d1[0] * d1[1] < 0 and d2[0] * d2[1] < 0:
            return True
    return False


def random_lines(rng: random.Random, k: int, concurrences: int = 0) -> nerve.ArrangementX:
    """``k`` lines with small integer data; ``concurrences`` of them forced through one point."""
    triples = []
    centre = (rng.randint(-3, 3), rng.randint(-3, 3))
    while len(triples) < k:
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        if a == 0 and b == 0:
            continue
        if len(triples) < concurrences:
            c = a * centre[0] + b * centre[1]
        else:
            c = rng.randint(-6, 6)
        triples.append((a, b, c))
    return nerve.ArrangementX.lines(triples)


# ---------------------------------------------------------------------------
# criteria


def _timed(number: int, name: str, body: Callable[[], tuple[bool, str]]) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        ok, detail = body()
    except Exception as e:  # a crash is a failure with its message
        ok, detail = False, f"{type(e).__name__}: {e}"
    return CriterionResult(number, name, ok, detail, time.perf_counter() - t0)


def inverse_corpus() -> list[geometry.ConvexPolytope]:
    h = Fraction(1, 2)
    return [
        geometry.point((0,)),
        geometry.point((3,)),
        hull([(0,), (1,)]),
        hull([(-2,), (h,)]),
        geometry.point((1, 2)),
        hull([(0, 0), (2, 1)]),
        hull([(0, 0), (0, 3)]),
        hull([(0, 0), (1, 0), (0, 1)]),
        geometry.box((0, 0), (1, 1)),
        hull([(0, 0), (3, 0), (1, 2)]),
        hull([(0, 0), (2, 0), (1, 1), (0, 1)]),
        hull([(0, 0), (2, 0), (3, 1), (1, 2), (-1, 1)]),
        hull([(0, 0), (2, 0), (3, 1), (2, 2), (0, 2), (-1, 1)]),
        hull([(h, 0), (1, h), (0, 1)]),
    ]


def criterion_1() -> CriterionResult:
    def body():
        corpus = inverse_corpus()
        bad = []
        for p in corpus:
            v = chains.chains_equal(chains.product(chains.inverse(p), chains.chain_of(p)), chains.one(p.ambient))
            if not (v.equal and v.exact):
                bad.append(p)
        return not bad, f"{len(corpus) - len(bad)}/{len(corpus)} polytopes satisfy inverse(P) * chi_P = 1"

    return _timed(1, "inverse identity", body)


LATTICE_FAMILIES = {
    "square": [geometry.box((0, 0), (1, 1))],
    "triangle,segment": [hull([(0, 0), (1, 0), (0, 1)]), hull([(0, 0), (1, 1)])],
    "trapezoid,triangle": [hull([(0, 0), (2, 0), (1, 1), (0, 1)]), hull([(0, 0), (1, 0), (0, 1)])],
}


def _lattice_family_check(bases, poly) -> tuple[bool, str]:
    k = len(bases)
    deg = 2 + max(poly.degree, 0)
    samples = {
        e: measures.lattice_measure(poly, measures.dilate_chain(bases, e))
        for e in itertools.product(range(5), repeat=k)
    }
    fitted = measures.fit_polynomial(samples, deg)
    checked = 0
    for e in itertools.product(range(-2, 3), repeat=k):
        if min(e) >= 0:
            continue
        if fitted(e) != measures.lattice_measure(poly, measures.dilate_chain(bases, e)):
            return False, f"mismatch at exponents {e}"
        checked += 1
    return True, f"{checked} mixed-sign points"


def criterion_2() -> CriterionResult:
    def body():
        polys = {"1": MultiPolynomial.constant(2), "x": MultiPolynomial.variable(2, 0)}
        polys["x^2+y"] = polys["x"] * polys["x"] + MultiPolynomial.variable(2, 1)
        total = 0
        for fname, bases in LATTICE_FAMILIES.items():
            for pname, poly in polys.items():
                ok, msg = _lattice_family_check(bases, poly)
                if not ok:
                    return False, f"{fname} with P = {pname}: {msg}"
                total += int(msg.split()[0])
        return True, f"9 fits exact; {total} mixed-sign exponent tuples agree with the chain algebra"

    return _timed(2, "lattice measure polynomiality", body)


def criterion_3() -> CriterionResult:
    def body():
        rng = random.Random(3)
        for trial in range(10):
            a, b = random_polygon(rng), random_polygon(rng)
            r = measures.minkowski_polynomiality_check(a, b, grid=5)
            coeffs = r.polynomial.as_dict()
            if not r.exact or coeffs.get((1, 1), 0) != 2 * measures.mixed_volume([a, b]):
                return False, f"pair {trial}: {r.polynomial}"
            if coeffs.get((2, 0), 0) != measures.volume(a) or coeffs.get((0, 2), 0) != measures.volume(b):
                return False, f"pair {trial}: diagonal coefficients differ from volumes"
        return True, "10 random pairs fit exactly by a homogeneous quadratic with lam*mu coefficient 2 MV"

    return _timed(3, "Minkowski polynomiality", body)


def criterion_4() -> CriterionResult:
    def body():
        rng = random.Random(4)
        mv, vol = measures.mixed_volume, measures.volume
        for trial in range(12):
            a, a2, b, c = (random_polygon(rng) for _ in range(4))
            if mv([a, b]) != mv([b, a]):
                return False, f"trial {trial}: symmetry"
            if mv([geometry.minkowski_sum(a, a2), b]) != mv([a, b]) + mv([a2, b]):
                return False, f"trial {trial}: Minkowski linearity"
            if mv([a, a]) != vol(a):
                return False, f"trial {trial}: diagonal"
            va, vb = measures.VirtualBody(a, b), measures.VirtualBody(c, a2)
            expansion = mv([a, c]) - mv([a, a2]) - mv([b, c]) + mv([b, a2])
            if measures.virtual_mixed_volume([va, vb]) != expansion:
                return False, f"trial {trial}: 4-term expansion"
            # cancellation: (a + b) - b is a, so its virtual volume is vol(a)
            if measures.virtual_volume(measures.VirtualBody(geometry.minkowski_sum(a, b), b)) != vol(a):
                return False, f"trial {trial}: cancellation"
        return True, "symmetry, linearity, diagonal, 4-term expansion and cancellation on 12 random trials"

    return _timed(4, "mixed volume axioms", body)


def criterion_5() -> CriterionResult:
    def body():
        rng = random.Random(5)
        n = 24
        for trial in range(n):
            cyc = random_self_intersecting_cycle(rng)
            p = random_polynomial(rng, 3)
            q = p.antiderivative(0)
            lhs = winding.integrate_pullback(cyc, q)
            rhs = winding.integrate_form_over_chain(winding.winding_chain(cyc), p)
            if lhs != rhs:
                return False, f"cycle {trial}: {lhs} != {rhs}"
        return True, f"{n} self-intersecting cycles, exact equality with random P of degree <= 3"

    return _timed(5, "Green/winding identity", body)


def truncation_cases():
    sq = geometry.box((0, 0), (1, 1))
    trap = hull([(0, 0), (2, 0), (1, 1), (0, 1)])
    rect = lambda w, h: geometry.box((0, 0), (w, h))  # noqa: E731
    return [
        ("square 2D0 - D0", sq, geometry.dilate(sq, 2), sq),
        ("square D0 - 2D0", sq, sq, geometry.dilate(sq, 2)),
        ("square D0 - D0", sq, sq, sq),
        ("rectangles [0,3]x[0,1] - [0,1]x[0,2]", sq, rect(3, 1), rect(1, 2)),
        ("rectangles [0,1]x[0,3] - [0,2]x[0,1]", sq, rect(1, 3), rect(2, 1)),
        ("trapezoid virtual 4-gon", trap, hull([(0, 0), (6, 0), (5, 1), (0, 1)]), geometry.dilate(trap, 2)),
    ]


def criterion_6() -> CriterionResult:
    def body():
        negative_seen = False
        cases = truncation_cases()
        for name, d0, pos, neg in cases:
            h = winding.SupportFunctionPL.of(d0, pos) - winding.SupportFunctionPL.of(d0, neg)
            if not winding.winding_truncation_check(h, pos, neg):
                return False, f"{name}: chains differ"
            negative_seen |= any(w < 0 for w in winding.winding_chain(winding.gauss_type_map(h)).weights)
        if not negative_seen:
            return False, "no case produced a negative-weight region"
        return True, f"{len(cases)} cases agree as functions, including negative-weight regions"

    return _timed(6, "truncated virtual polytope = winding chain", body)


def criterion_7() -> CriterionResult:
    def body():
        for d0 in (hull([(0, 0), (2, 0), (1, 1), (0, 1)]), hull([(0, 0), (2, 0), (3, 1), (1, 2), (-1, 1)])):
            base = winding.SupportFunctionPL.of(d0, d0)
            for lam in range(-2, 3):
                got = winding.virtual_volume_from_support(lam * base)
                if got != lam * lam * measures.volume(d0):
                    return False, f"lambda = {lam}: {got}"
        return True, "vol(H of lam*D0) = lam^2 vol(D0) for lam in -2..2, two polygons"

    return _timed(7, "virtual volume homogeneity", body)


def criterion_8() -> CriterionResult:
    def body():
        worst, slowest = 0.0, 0.0
        for r in (1.0, 2.5):
            t0 = time.perf_counter()
            approx = winding.smooth_support_demo(winding.disk_gradient(r), 256)
            slowest = max(slowest, time.perf_counter() - t0)
            worst = max(worst, abs(approx - math.pi * r * r) / (math.pi * r * r))
        ok = worst < 0.01 and slowest < 1.0
        return ok, f"relative error {worst:.2e}, slowest run {slowest:.3f}s"

    return _timed(8, "smooth disk demo", body)


def criterion_9() -> CriterionResult:
    def body():
        rng = random.Random(9)
        n, concurrent = 0, 0
        while n < 60:
            k = rng.randint(3, 8)
            conc = rng.choice([0, 0, 3, min(4, k)])
            x = random_lines(rng, k, conc)
            if nerve.parallel_core(x).dim != 0:
                continue
            r = nerve.wedge_check(x)
            if not r.ok:
                return False, f"arrangement {n}: betti {r.betti}, bounded {r.bounded}"
            concurrent += conc > 0
            n += 1
        return True, f"{n} arrangements ({concurrent} with engineered concurrences): b1 = bounded regions, higher Betti 0"

    return _timed(9, "nerve Betti numbers vs bounded regions", body)


def criterion_10() -> CriterionResult:
    def body():
        rng = random.Random(10)
        succeeded = failed = 0
        for trial in range(120):
            k = rng.randint(2, 6)
            x2 = random_lines(rng, k, rng.choice([0, 3]))
            # x1 perturbs some members of x2, which may create or destroy intersections
            members = list(x2.members)
            for i in rng.sample(range(k), rng.randint(1, k)):
                a = (rng.randint(-2, 2), rng.randint(-2, 2))
                if a == (0, 0):
                    a = (1, 0)
                members[i] = nerve.AffineSubspace.hyperplane(a, rng.randint(-3, 3))
            x1 = nerve.ArrangementX.of(members)
            k1 = nerve.nerve(x1)
            included = k1.is_subcomplex_of(nerve.nerve(x2))
            try:
                g = nerve.compatible_map(k1, x2)
                works = g.verify()
            except nerve.NotDominatedError:
                works = False
            if works != included:
                return False, f"trial {trial}: map {works}, inclusion {included}"
            succeeded += works
            failed += not works
        return True, f"120 trials, {succeeded} maps built and verified, {failed} refused, all matching inclusion"

    return _timed(10, "compatible map exists iff nerve inclusion", body)


def integral_configurations():
    x_, y_ = MultiPolynomial.variable(2, 0), MultiPolynomial.variable(2, 1)
    zero = MultiPolynomial(2)
    return [
        (
            "4 generic lines, triangle cycle, x dy",
            nerve.ArrangementX.lines([(1, 0, 0), (0, 1, 0), (1, 1, 3), (1, -2, 1)]),
            {(0, 1): 1, (1, 2): 1, (2, 0): 1},
            [zero, x_],
        ),
        (
            "5 lines with a triple point, 4-cycle, y^2 dx + xy dy",
            nerve.ArrangementX.lines([(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 4), (2, 1, 5)]),
            {(0, 3): 1, (3, 4): 1, (4, 1): 1, (1, 0): 1},
            [y_ * y_, x_ * y_],
        ),
        (
            "4 lines with a parallel pair, 4-cycle, cubic form",
            nerve.ArrangementX.lines([(1, 0, 0), (1, 0, 3), (0, 1, 0), (1, 1, 5)]),
            {(0, 2): 1, (2, 1): 1, (1, 3): 1, (3, 0): 1},
            [x_ * x_ * y_, x_ * x_ * x_ + y_],
        ),
    ]


def criterion_11() -> CriterionResult:
    def body():
        details = []
        for name, x, cyc, form in integral_configurations():
            r = nerve.integral_F(x, cyc, form, holdout=6, seed=11)
            if not r.exact or r.holdout < 5 or r.polynomial.is_zero():
                return False, f"{name}: fit not determined or trivially zero"
            details.append(f"deg {r.polynomial.degree} on dim Y {len(r.basis)}")
        return True, "3 configurations predict 6 held-out samples exactly (" + "; ".join(details) + ")"

    return _timed(11, "polynomiality of cycle integrals", body)


def criterion_12(tol: bkk.Tolerances = bkk.Tolerances()) -> CriterionResult:
    def body():
        rep = bkk.run_harness(seeds=range(10), tol=tol)
        bad = [r for r in rep.rows if not r.ok]
        ok = rep.ok and rep.seconds < 60
        detail = (
            f"{len(rep.rows) - len(bad)}/{len(rep.rows)} counts equal 2!MV, "
            f"{100 * rep.flagged_fraction:.1f}% resampled, {rep.seconds:.2f}s"
        )
        if bad:
            detail += f"; first failure {bad[0].pair} seed {bad[0].seed}: {bad[0].flags[:1]}"
        return ok, detail

    return _timed(12, "BKK root-count harness", body)


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
]


def run_suite(tol: bkk.Tolerances = bkk.Tolerances()) -> list[CriterionResult]:
    return [c() for c in CRITERIA] + [criterion_12(tol)]


def format_table(results: list[CriterionResult]) -> str:
    lines = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines)
