"""Newton polytopes, BKK numbers and a numeric torus-root counter for two variables."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .geometry import ConvexPolytope, DimensionError, hull, lattice_points
from .measures import VirtualBody, mixed_volume, virtual_mixed_volume

TOL_RESIDUAL = 1e-10
TOL_TORUS = 1e-8
TOL_CLUSTER = 1e-6
MAX_RESAMPLES = 3


@dataclass(frozen=True)
class Tolerances:
    residual: float = TOL_RESIDUAL
    torus: float = TOL_TORUS
    cluster: float = TOL_CLUSTER


@dataclass(frozen=True)
class LaurentPolynomial:
    """Finite sum of ``c * x^e`` with integer (possibly negative) exponent vectors."""

    nvars: int
    terms: tuple[tuple[tuple[int, ...], complex | Fraction], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a Laurent polynomial needs at least one monomial")
        for e, c in self.terms:
            if len(e) != self.nvars:
                raise ValueError(f"exponent {e} does not have {self.nvars} entries")
            if c == 0:
                raise ValueError("zero coefficients are not stored")

    @classmethod
    def from_dict(cls, nvars: int, data: Mapping[Sequence[int], object]) -> "LaurentPolynomial":
        acc: dict[tuple[int, ...], object] = {}
        for e, c in data.items():
            e = tuple(int(k) for k in e)
            acc[e] = acc.get(e, 0) + c
        return cls(nvars, tuple(sorted((e, c) for e, c in acc.items() if c != 0)))

    @property
    def support(self) -> list[tuple[int, ...]]:
        return [e for e, _ in self.terms]

    def __call__(self, *x) -> complex:
        return sum(complex(c) * math.prod(complex(xi) ** k for xi, k in zip(x, e)) for e, c in self.terms)

    def _grid(self) -> tuple[np.ndarray, tuple[int, ...]]:
        """Dense coefficient array ``A[i, j]`` of ``x^i y^j`` after clearing negative exponents."""
        if self.nvars != 2:
            raise DimensionError("dense form is only used for two variables")
        lo = tuple(min(e[k] for e, _ in self.terms) for k in range(2))
        hi = tuple(max(e[k] for e, _ in self.terms) for k in range(2))
        a = np.zeros((hi[0] - lo[0] + 1, hi[1] - lo[1] + 1), dtype=complex)
        for e, c in self.terms:
            a[e[0] - lo[0], e[1] - lo[1]] += complex(c)
        return a, lo


def newton_polytope(p: LaurentPolynomial) -> ConvexPolytope:
    return hull(p.support)


def bkk_number(polytopes: Sequence[ConvexPolytope]) -> int | Fraction:
    """``n! * MV(P_1, ..., P_n)``; an integer for lattice polytopes."""
    n = len(polytopes)
    if n == 0 or any(p.ambient != n for p in polytopes):
        raise DimensionError("need n polytopes in R^n")
    value = math.factorial(n) * mixed_volume(list(polytopes))
    if all(p.is_integral() for p in polytopes):
        if value.denominator != 1:
            raise ArithmeticError(f"non-integral BKK number {value} for lattice polytopes")
        return int(value)
    return value


def virtual_bkk(pairs: Sequence[tuple[ConvexPolytope, ConvexPolytope]]) -> Fraction:
    """``n!`` times the mixed volume of the formal differences numerator - denominator."""
    n = len(pairs)
    return math.factorial(n) * virtual_mixed_volume([VirtualBody(a, b) for a, b in pairs])


def sample_system(polytopes: Sequence[ConvexPolytope], seed: int) -> list[LaurentPolynomial]:
    """Polynomials supported on all lattice points of each polytope with
    coefficients uniform in ``[0,1) + i[0,1)``, reproducible per seed."""
    rng = np.random.default_rng(seed)
    out = []
    for p in polytopes:
        if not p.is_integral():
            raise ValueError(f"{p} has non-integer vertices")
        pts = [tuple(int(c) for c in v) for v in lattice_points(p)]
        re, im = rng.random(len(pts)), rng.random(len(pts))
        coeffs = [complex(a, b) for a, b in zip(re, im)]
        out.append(LaurentPolynomial(p.ambient, tuple(zip(pts, coeffs))))
    return out


# ---------------------------------------------------------------------------
# univariate numerics


def aberth_roots(coeffs: Sequence[complex], max_iter: int = 500) -> np.ndarray:
    """All roots of ``sum coeffs[k] x^k`` (constant term first) by Aberth-Ehrlich iteration."""
    c = np.asarray(coeffs, dtype=complex)
    while len(c) and c[-1] == 0:
        c = c[:-1]
    deg = len(c) - 1
    if deg < 1:
        return np.zeros(0, dtype=complex)
    hi = c[::-1] / c[-1]  # monic, highest power first
    dhi = np.polyder(hi)
    # start on the circle of the geometric-mean root modulus, rotated off the real axis
    radius = abs(hi[-1]) ** (1 / deg) or 0.5 * max(abs(hi[k]) ** (1 / k) for k in range(1, deg + 1)) or 1.0
    z = radius * np.exp(1j * (2 * np.pi * np.arange(deg) / deg + 0.4))
    for _ in range(max_iter):
        w = np.polyval(hi, z) / np.polyval(dhi, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1)
        s = (1 / diff).sum(axis=1) - 1  # drop the diagonal term 1/1
        step = w / (1 - w * s)
        z = z - step
        if np.all(np.abs(step) <= 1e-15 * np.maximum(1, np.abs(z))):
            break
    return z


def backward_error(coeffs: Sequence[complex], z: complex) -> float:
    """``|p(z)| / sum |c_k| |z|^k``, the relative residual of a computed root."""
    c = np.asarray(coeffs, dtype=complex)
    powers = np.abs(z) ** np.arange(len(c))
    denom = float(np.sum(np.abs(c) * powers))
    return float(abs(np.polyval(c[::-1], z)) / denom) if denom else 0.0


def grid_backward_error(a: np.ndarray, x: complex, y: complex) -> float:
    """Relative residual of a dense bivariate polynomial at ``(x, y)``."""
    px = np.abs(x) ** np.arange(a.shape[0])
    py = np.abs(y) ** np.arange(a.shape[1])
    denom = float(px @ np.abs(a) @ py)
    val = np.polynomial.polynomial.polyval2d(x, y, a)
    return float(abs(val) / denom) if denom else 0.0


def _trim(c: np.ndarray, rel: float = 1e-11) -> tuple[np.ndarray, int]:
    """Drop negligible trailing (top-degree) and leading (zero-root) coefficients."""
    scale = float(np.max(np.abs(c))) if len(c) else 0.0
    keep = np.nonzero(np.abs(c) > rel * scale)[0]
    if len(keep) == 0:
        return np.zeros(0, dtype=complex), 0
    return c[keep[0] : keep[-1] + 1], int(keep[0])


def _sylvester(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Sylvester matrix of two univariate coefficient vectors (constant term first)."""
    m, n = len(p) - 1, len(q) - 1
    s = np.zeros((m + n, m + n), dtype=complex)
    for i in range(n):
        s[i, i : i + m + 1] = p[::-1]
    for i in range(m):
        s[n + i, i : i + n + 1] = q[::-1]
    return s


def resultant_in_y(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Coefficients (constant first) of ``Res_y(P, Q)`` for dense arrays ``A[i, j] ~ x^i y^j``.

    The determinant is evaluated at roots of unity and interpolated by FFT,
    which is well conditioned on the unit circle.
    """
    m, n = a.shape[1] - 1, b.shape[1] - 1
    bound = (a.shape[0] - 1) * n + (b.shape[0] - 1) * m
    npts = bound + 1
    xs = np.exp(2j * np.pi * np.arange(npts) / npts)
    vals = np.empty(npts, dtype=complex)
    for k, x in enumerate(xs):
        pa = np.polynomial.polynomial.polyval(x, a)  # coefficients in y
        pb = np.polynomial.polynomial.polyval(x, b)
        vals[k] = np.linalg.det(_sylvester(pa, pb))
    return np.fft.fft(vals) / npts


# ---------------------------------------------------------------------------
# torus root counting


@dataclass
class Certificate:
    resultant_degree: int = 0
    zero_roots_dropped: int = 0
    max_x_residual: float = 0.0
    max_system_residual: float = 0.0
    min_separation: float = math.inf
    clusters: list[int] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    @property
    def reliable(self) -> bool:
        return not self.flags

    def as_dict(self) -> dict:
        return {
            "resultant_degree": self.resultant_degree,
            "zero_roots_dropped": self.zero_roots_dropped,
            "max_x_residual": self.max_x_residual,
            "max_system_residual": self.max_system_residual,
            "min_separation": None if math.isinf(self.min_separation) else self.min_separation,
            "multiplicities": self.clusters,
            "flags": list(self.flags),
            "reliable": self.reliable,
        }


@dataclass(frozen=True)
class RootCount:
    count: int
    roots: tuple[tuple[complex, complex], ...]
    certificate: Certificate


def _clusters(z: np.ndarray, tol: float) -> list[list[int]]:
    """Connected components of the relation ``|z_i - z_j| <= tol``."""
    n = len(z)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def count_torus_roots_2d(p1: LaurentPolynomial, p2: LaurentPolynomial, tol: Tolerances = Tolerances()) -> RootCount:
    """Number of common zeros in ``(C*)^2``, by resultant elimination of ``y``."""
    if p1.nvars != 2 or p2.nvars != 2:
        raise DimensionError("root counting is implemented for two variables")
    cert = Certificate()
    a, _ = p1._grid()
    b, _ = p2._grid()
    if a.shape[1] == 1 and b.shape[1] == 1:
        cert.flags.append("neither polynomial depends on y")
        return RootCount(0, (), cert)
    res, dropped = _trim(resultant_in_y(a, b))
    cert.zero_roots_dropped = dropped
    cert.resultant_degree = len(res) - 1 + dropped if len(res) else -1
    if len(res) == 0:
        cert.flags.append("resultant vanishes identically")
        return RootCount(0, (), cert)
    xs = aberth_roots(res)
    xs = xs[np.abs(xs) > tol.torus]
    if len(xs):
        cert.max_x_residual = max(backward_error(res, x) for x in xs)
        if cert.max_x_residual > tol.residual:
            cert.flags.append(f"resultant residual {cert.max_x_residual:.2e} exceeds tolerance")
    groups = _clusters(xs, tol.cluster)
    cert.clusters = sorted(len(g) for g in groups)
    if any(len(g) > 1 for g in groups):
        cert.flags.append("clustered resultant roots (multiplicity or ill-conditioning)")
    if len(xs) > 1:
        d = np.abs(xs[:, None] - xs[None, :])
        np.fill_diagonal(d, np.inf)
        cert.min_separation = float(d.min())

    solutions = []
    for g in groups:
        x = complex(np.mean(xs[g]))
        ca = np.polynomial.polynomial.polyval(x, a)
        cb = np.polynomial.polynomial.polyval(x, b)
        # search the lower-degree specialization that still depends on y,
        # then accept roots by the residual of both full polynomials
        usable = [c for c in (ca, cb) if _degree(c) > 0]
        found = 0
        for y in aberth_roots(min(usable, key=_degree)) if usable else ():
            if abs(y) <= tol.torus:
                continue
            r = max(grid_backward_error(a, x, y), grid_backward_error(b, x, y))
            if r <= math.sqrt(tol.residual):
                found += 1
                solutions.append((x, complex(y)))
                cert.max_system_residual = max(cert.max_system_residual, r)
        if found == 0:
            cert.flags.append(f"no common y-root at x = {x:.6g}")
    return RootCount(len(solutions), tuple(solutions), cert)


def _degree(c: np.ndarray) -> int:
    nz = np.nonzero(np.abs(c) > 1e-13 * (np.max(np.abs(c)) if len(c) else 0))[0]
    return int(nz[-1]) if len(nz) else -1


# ---------------------------------------------------------------------------
# harness


@dataclass(frozen=True)
class HarnessRow:
    pair: str
    seed: int
    bkk: int
    counted: int
    resamples: int
    flags: tuple[str, ...]
    certificate: dict

    @property
    def ok(self) -> bool:
        return self.counted == self.bkk

    def as_dict(self) -> dict:
        return {
            "pair": self.pair,
            "seed": self.seed,
            "bkk": self.bkk,
            "counted": self.counted,
            "resamples": self.resamples,
            "flags": list(self.flags),
            "ok": self.ok,
            "certificate": self.certificate,
        }


def run_system(polytopes: Sequence[ConvexPolytope], seed: int, tol: Tolerances = Tolerances(), name: str = "") -> HarnessRow:
    """Count roots of one sampled system, resampling (new seed) while the certificate is flagged."""
    bkk = bkk_number(polytopes)
    flags: list[str] = []
    for attempt in range(MAX_RESAMPLES + 1):
        s = seed + 7919 * attempt
        p1, p2 = sample_system(polytopes, s)
        rc = count_torus_roots_2d(p1, p2, tol)
        if rc.certificate.reliable:
            break
        flags.extend(f"seed {s}: {f}" for f in rc.certificate.flags)
    return HarnessRow(name, seed, bkk, rc.count if rc.certificate.reliable else -1, attempt, tuple(flags), rc.certificate.as_dict())


def default_catalog() -> dict[str, tuple[ConvexPolytope, ConvexPolytope]]:
    tri = hull([(0, 0), (1, 0), (0, 1)])
    sq = hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    big = hull([(0, 0), (2, 0), (0, 2)])
    return {
        "triangle,triangle": (tri, tri),
        "square,square": (sq, sq),
        "square,triangle": (sq, tri),
        "big-triangle-2x,square": (big, sq),
    }


@dataclass(frozen=True)
class HarnessReport:
    rows: tuple[HarnessRow, ...]
    seconds: float

    @property
    def flagged_fraction(self) -> float:
        return sum(1 for r in self.rows if r.resamples) / max(1, len(self.rows))

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows) and self.flagged_fraction <= 0.05

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "flagged_fraction": self.flagged_fraction,
            "seconds": self.seconds,
            "rows": [r.as_dict() for r in self.rows],
        }


def run_harness(
    catalog: Mapping[str, Sequence[ConvexPolytope]] | None = None,
    seeds: Sequence[int] = range(10),
    tol: Tolerances = Tolerances(),
) -> HarnessReport:
    catalog = default_catalog() if catalog is None else catalog
    t0 = time.perf_counter()
    rows = tuple(run_system(pair, s, tol, name) for name, pair in catalog.items() for s in seeds)
    return HarnessReport(rows, time.perf_counter() - t0)
