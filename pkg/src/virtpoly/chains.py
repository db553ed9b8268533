"""Convex chains and the Minkowski product.

A convex chain is a rational combination of characteristic functions of closed
convex polytopes.  Chains are kept normalized: like polytopes merged, zero
coefficients dropped, terms sorted.  Open polytopes never appear as terms;
they are expanded over their closed faces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .geometry import (
    ConvexPolytope,
    DimensionError,
    MAX_DIM,
    Vector,
    minkowski_sum,
    negate,
    origin,
    vector,
)
from .linalg import as_fraction, dot, primitive_integer


@dataclass(frozen=True)
class ConvexChain:
    ambient: int
    terms: tuple[tuple[Fraction, ConvexPolytope], ...] = ()

    @classmethod
    def from_terms(cls, ambient: int, terms: Iterable[tuple]) -> "ConvexChain":
        acc: dict[ConvexPolytope, Fraction] = {}
        for c, p in terms:
            if p.ambient != ambient:
                raise DimensionError(f"term in R^{p.ambient} inside a chain in R^{ambient}")
            acc[p] = acc.get(p, Fraction(0)) + as_fraction(c)
        items = sorted(((c, p) for p, c in acc.items() if c != 0), key=lambda t: (t[1].vertices, t[0]))
        return cls(ambient, tuple(items))

    def __add__(self, other: "ConvexChain") -> "ConvexChain":
        return add(self, other)

    def __sub__(self, other: "ConvexChain") -> "ConvexChain":
        return add(self, scale(other, -1))

    def __neg__(self) -> "ConvexChain":
        return scale(self, -1)

    def __mul__(self, other: "ConvexChain") -> "ConvexChain":
        return product(self, other)

    def __rmul__(self, c) -> "ConvexChain":
        return scale(self, c)

    def __call__(self, x: Sequence) -> Fraction:
        return evaluate(self, x)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        if not self.terms:
            return f"ConvexChain[R^{self.ambient}](0)"
        body = " + ".join(f"{c}*chi{p.vertices}" for c, p in self.terms)
        return f"ConvexChain[R^{self.ambient}]({body})"


def _same(f: ConvexChain, g: ConvexChain) -> None:
    if f.ambient != g.ambient:
        raise DimensionError(f"chains live in R^{f.ambient} and R^{g.ambient}")


def zero(n: int) -> ConvexChain:
    return ConvexChain(n)


def one(n: int) -> ConvexChain:
    """The identity for the Minkowski product: the indicator of the origin."""
    return chain_of(origin(n))


def chain_of(p: ConvexPolytope) -> ConvexChain:
    return ConvexChain(p.ambient, ((Fraction(1), p),))


def add(f: ConvexChain, g: ConvexChain) -> ConvexChain:
    _same(f, g)
    return ConvexChain.from_terms(f.ambient, f.terms + g.terms)


def scale(f: ConvexChain, c) -> ConvexChain:
    c = as_fraction(c)
    return ConvexChain.from_terms(f.ambient, [(c * a, p) for a, p in f.terms])


def product(f: ConvexChain, g: ConvexChain) -> ConvexChain:
    """Bilinear extension of ``chi_A * chi_B = chi_{A+B}``."""
    _same(f, g)
    return ConvexChain.from_terms(
        f.ambient, [(a * b, minkowski_sum(p, q)) for a, p in f.terms for b, q in g.terms]
    )


def _check_bound(p: ConvexPolytope) -> None:
    if p.ambient > MAX_DIM:
        raise DimensionError(f"face expansion is implemented for ambient dimension <= {MAX_DIM}")


def open_polytope_chain(p: ConvexPolytope) -> ConvexChain:
    """Indicator of the relative interior of ``p``, as an alternating sum over closed faces."""
    _check_bound(p)
    return ConvexChain.from_terms(p.ambient, [((-1) ** (p.dim - f.dim), f) for f in p.faces()])


def inverse(p: ConvexPolytope) -> ConvexChain:
    """The product-inverse of ``chi_p``: signed indicator of the relative interior of ``-p``."""
    _check_bound(p)
    return scale(open_polytope_chain(negate(p)), (-1) ** p.dim)


@dataclass(frozen=True)
class VirtualPolytope:
    """A chain together with the powers of characteristic functions it is the product of."""

    chain: ConvexChain
    exponents: tuple[tuple[ConvexPolytope, int], ...]
    verify: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if not self.verify:
            return
        expected = _product_of_powers(self.chain.ambient, self.exponents)
        if not chains_equal(expected, self.chain):
            raise ValueError("chain does not equal the product of the recorded powers")


def _chain_power(p: ConvexPolytope, k: int) -> ConvexChain:
    _check_bound(p)
    base = chain_of(p) if k >= 0 else inverse(p)
    out = one(p.ambient)
    for _ in range(abs(k)):
        out = product(out, base)
    return out


def _product_of_powers(n: int, exponents) -> ConvexChain:
    out = one(n)
    for p, k in exponents:
        out = product(out, _chain_power(p, k))
    return out


def power(p: ConvexPolytope, k: int) -> VirtualPolytope:
    """``chi_p`` raised to an integer power under the Minkowski product."""
    return VirtualPolytope(_chain_power(p, k), ((p, int(k)),), verify=False)


def virtual_polytope(bases: Sequence[ConvexPolytope], exponents: Sequence[int]) -> VirtualPolytope:
    if len(bases) != len(exponents):
        raise ValueError("one exponent per base polytope")
    if not bases:
        raise ValueError("at least one base polytope is needed")
    rec = tuple((p, int(k)) for p, k in zip(bases, exponents))
    return VirtualPolytope(_product_of_powers(bases[0].ambient, rec), rec, verify=False)


def evaluate(f: ConvexChain, x: Sequence) -> Fraction:
    x = vector(x)
    if len(x) != f.ambient:
        raise DimensionError("point dimension does not match chain")
    return sum((c for c, p in f.terms if p.contains(x)), Fraction(0))


def euler_integral(f: ConvexChain) -> Fraction:
    """Integral against the Euler characteristic; every closed convex polytope counts 1."""
    return sum((c for c, _ in f.terms), Fraction(0))


def truncate_lower_dim(f: ConvexChain) -> ConvexChain:
    return ConvexChain(f.ambient, tuple((c, p) for c, p in f.terms if p.dim == f.ambient))


# ---------------------------------------------------------------------------
# equality of chains as functions


@dataclass(frozen=True)
class EqualityVerdict:
    """Result of :func:`chains_equal`; truthy when the chains agree.

    ``exact`` is False for the sampling semi-decision used in R^3.
    """

    equal: bool
    exact: bool
    witness: Vector | None = None

    def __bool__(self) -> bool:
        return self.equal


def _interval_on_vertical(p: ConvexPolytope, c: Fraction):
    """Intersection of ``p`` (in R^2) with the line ``x = c`` as a closed y-interval, or None."""
    lo, hi = None, None
    for a, b in p.equations:
        if a[1] == 0:
            if a[0] * c != b:
                return None
        else:
            y = (b - a[0] * c) / a[1]
            lo = y if lo is None else max(lo, y)
            hi = y if hi is None else min(hi, y)
    for a, b in p.inequalities:
        if a[1] == 0:
            if a[0] * c > b:
                return None
        elif a[1] > 0:
            y = (b - a[0] * c) / a[1]
            hi = y if hi is None else min(hi, y)
        else:
            y = (b - a[0] * c) / a[1]
            lo = y if lo is None else max(lo, y)
    if lo is None or hi is None:
        raise RuntimeError("unbounded slice of a polytope")
    if lo > hi:
        return None
    return lo, hi


def _zero_on_line(intervals) -> Fraction | None:
    """For ``sum c_i * chi[lo_i, hi_i]`` on a line: a point where it is nonzero, or None."""
    if not intervals:
        return None
    cuts = sorted({t for _, lo, hi in intervals for t in (lo, hi)})
    probes = list(cuts) + [(s + t) / 2 for s, t in zip(cuts, cuts[1:])]
    for t in probes:
        if sum((c for c, lo, hi in intervals if lo <= t <= hi), Fraction(0)) != 0:
            return t
    return None


def _lines_2d(polytopes: Iterable[ConvexPolytope]):
    lines = set()
    for p in polytopes:
        for a, b in list(p.equations) + list(p.inequalities):
            if a[0] != 0 or a[1] != 0:
                lines.add((a, b))
    return sorted(lines)


def line_intersection_xs(lines) -> set[Fraction]:
    xs = set()
    for (a1, b1), (a2, b2) in itertools.combinations(lines, 2):
        d = a1[0] * a2[1] - a1[1] * a2[0]
        if d != 0:
            xs.add((b1 * a2[1] - b2 * a1[1]) / d)
    for a, b in lines:
        if a[1] == 0:
            xs.add(Fraction(b) / a[0])
    return xs


def _slab_xs(breaks: set[Fraction]) -> list[Fraction]:
    bs = sorted(breaks)
    if not bs:
        return [Fraction(0)]
    mids = [(s + t) / 2 for s, t in zip(bs, bs[1:])]
    return [bs[0] - 1] + mids + [bs[-1] + 1]


def _equal_1d(h: ConvexChain) -> EqualityVerdict:
    ivs = [(c, p.vertices[0][0], p.vertices[-1][0]) for c, p in h.terms]
    t = _zero_on_line(ivs)
    return EqualityVerdict(t is None, True, None if t is None else (t,))


def _equal_2d(h: ConvexChain) -> EqualityVerdict:
    polys = [p for _, p in h.terms]
    lines = _lines_2d(polys)
    breaks = line_intersection_xs(lines) | {v[0] for p in polys for v in p.vertices}
    # every cell of the arrangement meets a vertical line through a breakpoint
    # or through the midpoint of an open slab between breakpoints
    for c in sorted(breaks) + _slab_xs(breaks):
        ivs = []
        for coef, p in h.terms:
            iv = _interval_on_vertical(p, c)
            if iv is not None:
                ivs.append((coef, iv[0], iv[1]))
        t = _zero_on_line(ivs)
        if t is not None:
            return EqualityVerdict(False, True, (c, t))
    return EqualityVerdict(True, True)


GRID_3D = 7
GRID_3D_SHIFT = Fraction(1, 97)


def sample_points_3d(polytopes: Sequence[ConvexPolytope]) -> list[Vector]:
    """Probe set for the R^3 semi-decision.

    Vertices, edge midpoints and face centroids of every term, plus a
    ``GRID_3D``-per-axis grid over the bounding box shifted by ``GRID_3D_SHIFT``
    of the box width so that it avoids the lattice hyperplanes.
    """
    pts = set()
    for p in polytopes:
        for f in p.faces():
            pts.add(f.centroid())
    allv = [v for p in polytopes for v in p.vertices]
    lo = [min(v[j] for v in allv) for j in range(3)]
    hi = [max(v[j] for v in allv) for j in range(3)]
    axes = []
    for j in range(3):
        w = hi[j] - lo[j] or Fraction(1)
        axes.append([lo[j] + w * (Fraction(k, GRID_3D - 1) + GRID_3D_SHIFT) for k in range(GRID_3D)])
    pts.update(itertools.product(*axes))
    return sorted(pts)


def chains_equal(f: ConvexChain, g: ConvexChain) -> EqualityVerdict:
    """Decide whether two chains are the same function on R^n.

    Exact for n <= 2 (every cell of the refining arrangement is probed); for
    n = 3 a sampling semi-decision with ``exact=False``.
    """
    _same(f, g)
    h = f - g
    if h.is_zero():
        return EqualityVerdict(True, True)
    n = f.ambient
    if n == 1:
        return _equal_1d(h)
    if n == 2:
        return _equal_2d(h)
    if n == 3:
        for x in sample_points_3d([p for _, p in h.terms]):
            if evaluate(h, x) != 0:
                return EqualityVerdict(False, False, x)
        return EqualityVerdict(True, False)
    raise DimensionError(f"chain comparison is implemented for n <= {MAX_DIM}")


def generic_points_2d(lines, extra_breaks: Iterable[Fraction] = ()) -> list[Vector]:
    """One interior point in every 2-cell of the arrangement of the given lines.

    Lines are ``(a, b)`` pairs meaning ``a . x = b``.
    """
    breaks = line_intersection_xs(lines) | set(extra_breaks)
    out = []
    for x in _slab_xs(breaks):
        ys = sorted({(b - a[0] * x) / a[1] for a, b in lines if a[1] != 0})
        if not ys:
            out.append((x, Fraction(0)))
            continue
        out.append((x, ys[0] - 1))
        out.extend((x, (s + t) / 2) for s, t in zip(ys, ys[1:]))
        out.append((x, ys[-1] + 1))
    return out


def equal_almost_everywhere_2d(
    f: ConvexChain, other: Callable[[Vector], Fraction], other_lines=()
) -> EqualityVerdict:
    """Compare a planar chain with a function constant on the cells of ``other_lines``,
    ignoring sets of measure zero."""
    if f.ambient != 2:
        raise DimensionError("almost-everywhere comparison is planar")
    lines = sorted(set(_lines_2d([p for _, p in f.terms])) | set(other_lines))
    for x in generic_points_2d(lines):
        if evaluate(f, x) != other(x):
            return EqualityVerdict(False, True, x)
    return EqualityVerdict(True, True)


def line_through(p: Sequence, q: Sequence):
    """``(a, b)`` with primitive integer ``a`` such that ``a . x = b`` is the line through p and q."""
    a = primitive_integer((q[1] - p[1], p[0] - q[0]))
    return a, dot(a, p)


__all__ = [
    "ConvexChain",
    "EqualityVerdict",
    "VirtualPolytope",
    "add",
    "chain_of",
    "chains_equal",
    "equal_almost_everywhere_2d",
    "euler_integral",
    "evaluate",
    "inverse",
    "one",
    "open_polytope_chain",
    "power",
    "product",
    "scale",
    "truncate_lower_dim",
    "virtual_polytope",
    "zero",
]
