"""Exact convex polytopes with rational vertices.

Polytopes are stored in vertex form, canonically: extreme points only, sorted
lexicographically, so two polytopes are equal exactly when their vertex tuples
are. Hull and face machinery is complete for intrinsic dimension up to 3 in
ambient dimension up to 3; point sets of dimension at most 2 are accepted in
any ambient dimension.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import linalg
from .linalg import as_fraction, dot, primitive_integer

Vector = tuple[Fraction, ...]

MAX_DIM = 3


class DimensionError(ValueError):
    """Raised on mismatched dimensions or when a dimension bound is exceeded."""


def vector(coords: Iterable) -> Vector:
    v = tuple(as_fraction(c) for c in coords)
    if not v:
        raise DimensionError("vectors need at least one coordinate")
    return v


def vadd(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> Vector:
    c = as_fraction(c)
    return tuple(c * a for a in v)


def cross2(o: Sequence, a: Sequence, b: Sequence) -> Fraction:
    """Twice the signed area of triangle ``o, a, b`` (positive when counterclockwise)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def cross3(u: Sequence, v: Sequence) -> Vector:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


# ---------------------------------------------------------------------------
# intrinsic frames and low-dimensional hulls


@dataclass(frozen=True)
class _Frame:
    base: Vector
    pivots: tuple[int, ...]
    directions: tuple[Vector, ...]  # rref basis of the direction space

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def project(self, p: Sequence) -> Vector:
        return tuple(p[c] for c in self.pivots)


def _frame(points: Sequence[Vector]) -> _Frame:
    base = points[0]
    diffs = [vsub(p, base) for p in points[1:]]
    r, pivots = linalg.rref(diffs, len(base)) if diffs else ([], [])
    return _Frame(base, tuple(pivots), tuple(tuple(row) for row in r))


def _hull2(pts: Sequence[Sequence]) -> list[int]:
    """Indices of the extreme points of a planar point set, counterclockwise.

    Andrew's monotone chain; collinear boundary points are dropped.
    """
    order = sorted(range(len(pts)), key=lambda i: (pts[i][0], pts[i][1]))
    if len(order) <= 2:
        return order

    def chain(idx):
        out: list[int] = []
        for i in idx:
            while len(out) >= 2 and cross2(pts[out[-2]], pts[out[-1]], pts[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    return lower[:-1] + upper[:-1]


def _idot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _isub(u, v):
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def _supporting(pts, normal, offset):
    """Orient a plane so every point satisfies ``normal . p <= offset``; ``None`` if it cuts."""
    pos = neg = False
    for p in pts:
        s = _idot(normal, p) - offset
        if s > 0:
            pos = True
        elif s < 0:
            neg = True
        if pos and neg:
            return None
    if pos:
        return tuple(-x for x in normal), -offset
    return normal, offset


def _facet_cycle(pts, normal, offset):
    """Indices of the facet polygon lying on a supporting plane, counterclockwise seen from outside."""
    on = [i for i, p in enumerate(pts) if _idot(normal, p) == offset]
    drop = max(range(3), key=lambda k: abs(normal[k]))
    keep = [k for k in range(3) if k != drop]
    proj = [(pts[i][keep[0]], pts[i][keep[1]]) for i in on]
    cyc = [on[j] for j in _hull2(proj)]
    a, b, c = (pts[cyc[0]], pts[cyc[1]], pts[cyc[2]])
    if _idot(cross3(_isub(b, a), _isub(c, a)), normal) < 0:
        cyc.reverse()
    return cyc


def _hull3(points: Sequence[Vector]):
    """Exact gift wrapping for a full-dimensional point set in R^3.

    Returns ``(extreme_indices, facets)`` where each facet is
    ``(primitive_normal, offset, vertex_cycle)``.  Works on integer-scaled
    coordinates internally.
    """
    den = 1
    for p in points:
        for c in p:
            den = den * c.denominator // math.gcd(den, c.denominator)
    pts = [tuple(int(c * den) for c in p) for p in points]
    m = len(pts)
    i0 = min(range(m), key=lambda i: pts[i])
    start = None
    for j, k in itertools.combinations(range(m), 2):
        if i0 in (j, k):
            continue
        n = cross3(_isub(pts[j], pts[i0]), _isub(pts[k], pts[i0]))
        if n == (0, 0, 0):
            continue
        sup = _supporting(pts, n, _idot(n, pts[i0]))
        if sup is not None:
            start = sup
            break
    if start is None:
        raise DimensionError("point set is not full-dimensional")

    def normalize(n, b):
        g = math.gcd(*n)
        return tuple(x // g for x in n), b // g

    facets: dict = {}
    queue = [normalize(*start)]
    while queue:
        n, b = queue.pop()
        if (n, b) in facets:
            continue
        cyc = _facet_cycle(pts, n, b)
        facets[(n, b)] = cyc
        for u, v in zip(cyc, cyc[1:] + cyc[:1]):
            pu, pv = pts[u], pts[v]
            axis = _isub(pv, pu)
            cands = [r for r in range(m) if cross3(axis, _isub(pts[r], pu)) != (0, 0, 0)]
            found = None
            for sign in (1, -1):
                w = cands[0]
                nw = cross3(axis, _isub(pts[w], pu))
                for r in cands:
                    if sign * _idot(nw, _isub(pts[r], pu)) > 0:
                        w = r
                        nw = cross3(axis, _isub(pts[w], pu))
                sup = _supporting(pts, nw, _idot(nw, pu))
                # sweeping the wrong way returns the current facet
                if sup is not None and normalize(*sup) != (n, b):
                    found = normalize(*sup)
                    break
            if found is None:
                raise RuntimeError("gift wrapping failed to find an adjacent facet")
            if found not in facets:
                queue.append(found)
    extremes = sorted({i for cyc in facets.values() for i in cyc})
    return extremes, [(n, Fraction(b, den), cyc) for (n, b), cyc in facets.items()]


def _extreme_indices(points: Sequence[Vector], frame: _Frame) -> list[int]:
    d = frame.dim
    if d == 0:
        return [0]
    proj = [frame.project(p) for p in points]
    if d == 1:
        lo = min(range(len(proj)), key=lambda i: proj[i])
        hi = max(range(len(proj)), key=lambda i: proj[i])
        return [lo, hi]
    if d == 2:
        return _hull2(proj)
    if d == 3:
        return _hull3(proj)[0]
    raise DimensionError(f"hulls of intrinsic dimension {d} > {MAX_DIM} are not supported")


# ---------------------------------------------------------------------------
# polytopes


@dataclass(frozen=True)
class Cone:
    rays: frozenset
    dim: int


@dataclass(frozen=True)
class Fan:
    """Normal fan: one cone per face, generated by the normals of the facets containing it."""

    ambient: int
    cones: frozenset

    @property
    def rays(self) -> frozenset:
        return frozenset(r for c in self.cones if c.dim == 1 for r in c.rays)

    @property
    def maximal_cones(self) -> list[Cone]:
        return sorted((c for c in self.cones if c.dim == self.ambient), key=lambda c: sorted(c.rays))


@dataclass(frozen=True)
class ConvexPolytope:
    """Vertex representation of a nonempty closed convex polytope.

    Build with :func:`hull`; the constructor trusts its arguments.
    """

    vertices: tuple[Vector, ...]
    dim: int = field(compare=False)

    @property
    def ambient(self) -> int:
        return len(self.vertices[0])

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient

    def __repr__(self) -> str:
        vs = ", ".join("(" + ",".join(str(c) for c in v) + ")" for v in self.vertices)
        return f"ConvexPolytope[{self.dim}]({vs})"

    @cached_property
    def _frame(self) -> _Frame:
        return _frame(self.vertices)

    @cached_property
    def _structure(self):
        """Equations, facet inequalities and face index sets, all exact."""
        fr = self._frame
        n, d = self.ambient, fr.dim
        if d > MAX_DIM:
            raise DimensionError(f"intrinsic dimension {d} exceeds {MAX_DIM}")
        eqs = []
        for a in linalg.nullspace(fr.directions, n):
            a = primitive_integer(a)
            eqs.append((a, dot(a, fr.base)))
        verts = self.vertices
        proj = [fr.project(v) for v in verts]

        def lift(normal_intr):
            a = [0] * n
            for c, x in zip(fr.pivots, normal_intr):
                a[c] = x
            return tuple(a)

        ineqs: list[tuple[tuple[int, ...], Fraction]] = []
        faces: list[tuple[frozenset, int]] = [(frozenset(range(len(verts))), d)]
        cycle = None
        if d == 1:
            lo, hi = (0, 1) if proj[0] < proj[1] else (1, 0)
            for normal, idx in (((-1,), lo), ((1,), hi)):
                a = lift(normal)
                ineqs.append((a, dot(a, verts[idx])))
            faces += [(frozenset([0]), 0), (frozenset([1]), 0)]
        elif d == 2:
            cycle = _hull2(proj)
            for u, v in zip(cycle, cycle[1:] + cycle[:1]):
                pu, pv = proj[u], proj[v]
                a = lift(primitive_integer((pv[1] - pu[1], pu[0] - pv[0])))
                ineqs.append((a, dot(a, verts[u])))
                faces.append((frozenset([u, v]), 1))
            faces += [(frozenset([i]), 0) for i in range(len(verts))]
        elif d == 3:
            _, fcts = _hull3(proj)
            edges = set()
            cycle = []
            for normal, _, cyc in fcts:
                a = lift(normal)
                ineqs.append((a, dot(a, verts[cyc[0]])))
                faces.append((frozenset(cyc), 2))
                cycle.append(cyc)
                for u, v in zip(cyc, cyc[1:] + cyc[:1]):
                    edges.add(frozenset([u, v]))
            faces += [(e, 1) for e in sorted(edges, key=sorted)]
            faces += [(frozenset([i]), 0) for i in range(len(verts))]
        return {"equations": eqs, "inequalities": ineqs, "faces": faces, "cycle": cycle}

    @property
    def equations(self) -> list:
        """Affine-span equations ``a . x = b``."""
        return self._structure["equations"]

    @property
    def inequalities(self) -> list:
        """Relative facet inequalities ``a . x <= b`` with primitive integer ``a``."""
        return self._structure["inequalities"]

    @property
    def facets(self) -> list:
        """Outward primitive facet normals and offsets (full-dimensional polytopes)."""
        if not self.is_full_dimensional:
            raise DimensionError("facets are defined here only for full-dimensional polytopes")
        return self.inequalities

    def boundary_cycle(self) -> list[Vector]:
        """Vertices of a full-dimensional polygon in counterclockwise order."""
        if self.ambient != 2 or self.dim != 2:
            raise DimensionError("boundary_cycle needs a full-dimensional polygon in R^2")
        return [self.vertices[i] for i in self._structure["cycle"]]

    def facet_cycles(self) -> list[list[Vector]]:
        """Facet polygons of a 3-polytope, each counterclockwise seen from outside."""
        if self.ambient != 3 or self.dim != 3:
            raise DimensionError("facet_cycles needs a full-dimensional polytope in R^3")
        return [[self.vertices[i] for i in cyc] for cyc in self._structure["cycle"]]

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.ambient:
            raise DimensionError("point dimension does not match polytope")
        return all(dot(a, x) == b for a, b in self.equations) and all(
            dot(a, x) <= b for a, b in self.inequalities
        )

    def faces(self) -> list["ConvexPolytope"]:
        """All nonempty faces, the polytope itself first."""
        return [
            ConvexPolytope(tuple(self.vertices[i] for i in sorted(idx)), fd)
            for idx, fd in self._structure["faces"]
        ]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for v in self.vertices for c in v)

    def centroid(self) -> Vector:
        k = len(self.vertices)
        return tuple(sum(v[j] for v in self.vertices) / k for j in range(self.ambient))


def hull(points: Iterable[Sequence]) -> ConvexPolytope:
    """Canonical convex hull of a nonempty finite point set."""
    pts = [vector(p) for p in points]
    if not pts:
        raise ValueError("hull of an empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionError("points have mixed dimensions")
    pts = sorted(set(pts))
    fr = _frame(pts)
    if fr.dim > 2 and n > MAX_DIM:
        raise DimensionError(f"full hulls are implemented for ambient dimension <= {MAX_DIM}")
    ext = _extreme_indices(pts, fr)
    return ConvexPolytope(tuple(sorted(pts[i] for i in ext)), fr.dim)


def point(p: Sequence) -> ConvexPolytope:
    return ConvexPolytope((vector(p),), 0)


def origin(n: int) -> ConvexPolytope:
    return point([0] * n)


def box(lo: Sequence, hi: Sequence) -> ConvexPolytope:
    return hull(itertools.product(*[(a, b) for a, b in zip(lo, hi)]))


def _check_same(a: ConvexPolytope, b: ConvexPolytope) -> None:
    if a.ambient != b.ambient:
        raise DimensionError(f"ambient dimensions differ: {a.ambient} vs {b.ambient}")


@lru_cache(maxsize=65536)
def minkowski_sum(a: ConvexPolytope, b: ConvexPolytope) -> ConvexPolytope:
    _check_same(a, b)
    if len(a.vertices) == 1 or len(b.vertices) == 1:
        (t, other) = (a.vertices[0], b) if len(a.vertices) == 1 else (b.vertices[0], a)
        return translate(other, t)
    return hull(vadd(u, v) for u in a.vertices for v in b.vertices)


def translate(p: ConvexPolytope, v: Sequence) -> ConvexPolytope:
    v = vector(v)
    if len(v) != p.ambient:
        raise DimensionError("translation vector dimension mismatch")
    return ConvexPolytope(tuple(sorted(vadd(x, v) for x in p.vertices)), p.dim)


def negate(p: ConvexPolytope) -> ConvexPolytope:
    """The polytope reflected through the origin."""
    return ConvexPolytope(tuple(sorted(vscale(-1, x) for x in p.vertices)), p.dim)


def dilate(p: ConvexPolytope, factor) -> ConvexPolytope:
    """``factor * p`` for a nonnegative rational factor (the origin for factor 0)."""
    f = as_fraction(factor)
    if f < 0:
        raise ValueError("set-level dilation needs a nonnegative factor")
    if f == 0:
        return origin(p.ambient)
    return ConvexPolytope(tuple(vscale(f, x) for x in p.vertices), p.dim)


def support_value(p: ConvexPolytope, xi: Sequence) -> Fraction:
    """Support function ``max_{x in p} <xi, x>``."""
    xi = vector(xi)
    if len(xi) != p.ambient:
        raise DimensionError("covector dimension mismatch")
    return max(dot(xi, v) for v in p.vertices)


def normal_fan(p: ConvexPolytope) -> Fan:
    """Fan of the cones of covectors maximized on each face, with primitive integer rays."""
    n = p.ambient
    if n > MAX_DIM:
        raise DimensionError(f"normal fans are implemented for ambient dimension <= {MAX_DIM}")
    if not p.is_full_dimensional:
        raise DimensionError("normal_fan needs a full-dimensional polytope")
    facets = p.facets
    cones = set()
    for face in p.faces():
        rays = frozenset(a for a, b in facets if all(dot(a, v) == b for v in face.vertices))
        cones.add(Cone(rays, n - face.dim))
    return Fan(n, frozenset(cones))


def analogous(a: ConvexPolytope, b: ConvexPolytope) -> bool:
    """True when the two polytopes have the same normal fan."""
    _check_same(a, b)
    return normal_fan(a) == normal_fan(b)


def lattice_points(p: ConvexPolytope) -> list[Vector]:
    """Integer points of ``p`` (boundary included) in lexicographic order."""
    if p.ambient > MAX_DIM:
        raise DimensionError(f"lattice enumeration is implemented for ambient dimension <= {MAX_DIM}")
    ranges = []
    for j in range(p.ambient):
        lo = min(v[j] for v in p.vertices)
        hi = max(v[j] for v in p.vertices)
        ranges.append(range(math.ceil(lo), math.floor(hi) + 1))
    out = []
    for x in itertools.product(*ranges):
        fx = tuple(Fraction(c) for c in x)
        if p.contains(fx):
            out.append(fx)
    return out
