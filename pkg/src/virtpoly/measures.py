"""Volumes, lattice-point measures, mixed volumes and their virtual extensions."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Mapping, Sequence

from . import linalg
from .chains import ConvexChain, virtual_polytope
from .geometry import (
    ConvexPolytope,
    DimensionError,
    MAX_DIM,
    cross2,
    cross3,
    dilate,
    lattice_points,
    minkowski_sum,
    origin,
    vsub,
)
from .polynomial import MultiPolynomial, homogeneous_monomials, monomials


class FitError(ArithmeticError):
    """No polynomial of the requested degree interpolates the samples."""


def volume(p: ConvexPolytope) -> Fraction:
    """Exact Lebesgue volume in the ambient space (0 for lower-dimensional polytopes)."""
    n = p.ambient
    if n > MAX_DIM:
        raise DimensionError(f"volume is implemented for ambient dimension <= {MAX_DIM}")
    if p.dim < n:
        return Fraction(0)
    if n == 1:
        return p.vertices[-1][0] - p.vertices[0][0]
    if n == 2:
        cyc = p.boundary_cycle()
        o = cyc[0]
        return sum((cross2(o, a, b) for a, b in zip(cyc[1:], cyc[2:])), Fraction(0)) / 2
    ref = p.vertices[0]
    total = Fraction(0)
    for cyc in p.facet_cycles():
        a = vsub(cyc[0], ref)
        for b, c in zip(cyc[1:], cyc[2:]):
            total += linalg.dot(a, cross3(vsub(b, ref), vsub(c, ref)))
    return total / 6


@lru_cache(maxsize=65536)
def _lattice_sum(poly: MultiPolynomial, p: ConvexPolytope) -> Fraction:
    return sum((poly(x) for x in lattice_points(p)), Fraction(0))


def lattice_measure(poly: MultiPolynomial, chain: ConvexChain) -> Fraction:
    """``sum_i c_i * sum_{x in Z^n cap P_i} poly(x)`` over the terms of the chain."""
    if poly.nvars != chain.ambient:
        raise DimensionError("polynomial and chain dimensions differ")
    for _, p in chain.terms:
        if not p.is_integral():
            raise ValueError(f"lattice measure needs integer vertices, got {p}")
    return sum((c * _lattice_sum(poly, p) for c, p in chain.terms), Fraction(0))


def dilate_chain(bases: Sequence[ConvexPolytope], exponents: Sequence[int]) -> ConvexChain:
    """``chi_{P_1}^{n_1} * ... * chi_{P_k}^{n_k}``; negative exponents use chain inverses."""
    return virtual_polytope(bases, exponents).chain


def interpolate(samples: Mapping[Sequence, object], exps: Sequence[tuple[int, ...]], nvars: int):
    """Exact solve for coefficients on the given monomials.

    Returns ``(polynomial, rank)``; free coefficients are set to zero when the
    samples do not determine them.  Raises :class:`FitError` if inconsistent.
    """
    pts = [tuple(linalg.as_fraction(c) for c in x) for x in samples]
    rows = [[math.prod((xi**k for xi, k in zip(x, e)), start=Fraction(1)) for e in exps] for x in pts]
    rhs = [linalg.as_fraction(samples[x]) for x in samples]
    sol = linalg.solve(rows, rhs, len(exps))
    if sol is None:
        raise FitError(f"no polynomial on {len(exps)} monomials interpolates {len(pts)} samples")
    return MultiPolynomial.from_dict(nvars, dict(zip(exps, sol))), linalg.rank(rows)


def fit_polynomial(samples: Mapping[Sequence[int], object], max_degree: int) -> MultiPolynomial:
    """Exact interpolating polynomial of total degree ``<= max_degree``.

    The samples must cover the integer box ``[0, max_degree]^k``; extra samples
    act as held-out checks and raise :class:`FitError` when violated.
    """
    keys = [tuple(int(c) for c in x) for x in samples]
    if not keys:
        raise ValueError("no samples")
    k = len(keys[0])
    have = set(keys)
    missing = [x for x in itertools.product(range(max_degree + 1), repeat=k) if x not in have]
    if missing:
        raise ValueError(f"samples must cover [0, {max_degree}]^{k}; missing {missing[:3]}...")
    poly, _ = interpolate(dict(zip(keys, samples.values())), monomials(k, max_degree), k)
    return poly


def mixed_volume(bodies: Sequence[ConvexPolytope]) -> Fraction:
    """Polarization of the volume via inclusion-exclusion over subset Minkowski sums."""
    if not bodies:
        raise ValueError("no bodies")
    n = bodies[0].ambient
    if len(bodies) != n:
        raise ValueError(f"mixed volume in R^{n} takes exactly {n} bodies, got {len(bodies)}")
    total = Fraction(0)
    for r in range(1, n + 1):
        for subset in itertools.combinations(bodies, r):
            total += (-1) ** (n - r) * volume(reduce(minkowski_sum, subset))
    return total / math.factorial(n)


class VirtualBody:
    """Formal difference ``positive - negative`` of convex polytopes.

    Equality follows the cancellation law: ``A - B == C - D`` iff ``A + D == C + B``.
    """

    __slots__ = ("positive", "negative")
    __hash__ = None  # equality is not representation-wise

    def __init__(self, positive: ConvexPolytope, negative: ConvexPolytope | None = None):
        negative = origin(positive.ambient) if negative is None else negative
        if positive.ambient != negative.ambient:
            raise DimensionError("parts of a virtual body live in different spaces")
        self.positive = positive
        self.negative = negative

    @property
    def ambient(self) -> int:
        return self.positive.ambient

    def __eq__(self, other) -> bool:
        if not isinstance(other, VirtualBody):
            return NotImplemented
        return minkowski_sum(self.positive, other.negative) == minkowski_sum(other.positive, self.negative)

    def __add__(self, other: "VirtualBody") -> "VirtualBody":
        return VirtualBody(
            minkowski_sum(self.positive, other.positive), minkowski_sum(self.negative, other.negative)
        )

    def __neg__(self) -> "VirtualBody":
        return VirtualBody(self.negative, self.positive)

    def __sub__(self, other: "VirtualBody") -> "VirtualBody":
        return self + (-other)

    def scaled(self, factor) -> "VirtualBody":
        """Multiple by any rational; negative factors swap the parts (group inverse)."""
        f = linalg.as_fraction(factor)
        body = self if f >= 0 else -self
        return VirtualBody(dilate(body.positive, abs(f)), dilate(body.negative, abs(f)))

    def __repr__(self) -> str:
        return f"VirtualBody({self.positive!r} - {self.negative!r})"


def virtual_mixed_volume(bodies: Sequence[VirtualBody]) -> Fraction:
    """Multilinear expansion of the mixed volume over formal differences."""
    total = Fraction(0)
    for choice in itertools.product((0, 1), repeat=len(bodies)):
        parts = [b.negative if c else b.positive for b, c in zip(bodies, choice)]
        total += (-1) ** sum(choice) * mixed_volume(parts)
    return total


def virtual_volume(body: VirtualBody) -> Fraction:
    if body.ambient > MAX_DIM:
        raise DimensionError(f"volume is implemented for ambient dimension <= {MAX_DIM}")
    return virtual_mixed_volume([body] * body.ambient)


@dataclass(frozen=True)
class PolynomialityReport:
    polynomial: MultiPolynomial  # in (lambda, mu)
    grid: int
    exact: bool
    mixed_volume_coefficients: bool

    def as_dict(self) -> dict:
        return {
            "polynomial": self.polynomial,
            "grid": self.grid,
            "exact": self.exact,
            "mixed_volume_coefficients": self.mixed_volume_coefficients,
        }


def minkowski_polynomiality_check(a: ConvexPolytope, b: ConvexPolytope, grid: int = 5) -> PolynomialityReport:
    """Fit ``Vol(lam*A + mu*B)`` on the grid ``0..grid-1`` squared by a homogeneous form of degree n.

    Also checks that the coefficient of ``lam^i mu^(n-i)`` is
    ``binom(n, i) * MV(A, ..., A, B, ..., B)``.
    """
    n = a.ambient
    if b.ambient != n:
        raise DimensionError("bodies live in different spaces")
    if grid < n + 1:
        raise ValueError(f"grid must have at least {n + 1} points per axis")
    samples = {}
    for lam, mu in itertools.product(range(grid), repeat=2):
        samples[(lam, mu)] = volume(minkowski_sum(dilate(a, lam), dilate(b, mu)))
    poly, rank = interpolate(samples, homogeneous_monomials(2, n), 2)
    coeffs = poly.as_dict()
    mv_ok = all(
        coeffs.get((i, n - i), 0) == math.comb(n, i) * mixed_volume([a] * i + [b] * (n - i))
        for i in range(n + 1)
    )
    return PolynomialityReport(poly, grid, rank == n + 1, mv_ok)
