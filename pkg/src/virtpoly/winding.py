"""Winding-number chains of planar piecewise-linear cycles.

Everything here is planar and exact except :func:`smooth_support_demo`, which
snaps floating-point gradient samples to rationals and is approximate by
nature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Iterable, Mapping, Sequence

from . import linalg
from .chains import (
    ConvexChain,
    EqualityVerdict,
    chain_of,
    equal_almost_everywhere_2d,
    inverse,
    line_through,
    product,
    truncate_lower_dim,
)
from .geometry import ConvexPolytope, DimensionError, Vector, analogous, cross2, support_value, vector
from .polynomial import MultiPolynomial, integrate_unit_interval

Segment = tuple[Vector, Vector]


# ---------------------------------------------------------------------------
# cycles


@dataclass(frozen=True)
class PLCycle:
    """Closed oriented polyline in R^2; the last point connects back to the first.

    A single point is allowed and stands for a constant map (no segments).
    """

    points: tuple[Vector, ...]

    def __post_init__(self):
        if not self.points:
            raise ValueError("a cycle needs at least one point")
        if any(len(p) != 2 for p in self.points):
            raise DimensionError("cycles are planar")
        if len(self.points) > 1:
            for p, q in zip(self.points, self.points[1:] + self.points[:1]):
                if p == q:
                    raise ValueError(f"consecutive cycle points coincide at {p}")

    @classmethod
    def from_points(cls, points: Iterable[Sequence]) -> "PLCycle":
        """Build a cycle, collapsing repeated consecutive points (cyclically)."""
        pts: list[Vector] = []
        for p in points:
            v = vector(p)
            if not pts or pts[-1] != v:
                pts.append(v)
        while len(pts) > 1 and pts[-1] == pts[0]:
            pts.pop()
        return cls(tuple(pts))

    def segments(self) -> list[Segment]:
        if len(self.points) == 1:
            return []
        return list(zip(self.points, self.points[1:] + self.points[:1]))

    def reversed(self) -> "PLCycle":
        return PLCycle(tuple(reversed(self.points)))

    def translated(self, v: Sequence) -> "PLCycle":
        v = vector(v)
        return PLCycle(tuple((p[0] + v[0], p[1] + v[1]) for p in self.points))

    def scaled(self, c) -> "PLCycle":
        c = linalg.as_fraction(c)
        if c == 0:
            return PLCycle(((Fraction(0), Fraction(0)),))
        return PLCycle(tuple((c * p[0], c * p[1]) for p in self.points))


def _on_segment(a: Sequence, p: Sequence, q: Sequence) -> bool:
    return (
        cross2(p, q, a) == 0
        and min(p[0], q[0]) <= a[0] <= max(p[0], q[0])
        and min(p[1], q[1]) <= a[1] <= max(p[1], q[1])
    )


def _crossing_number(segments: Iterable[Segment], a: Sequence) -> int:
    wn = 0
    ay = a[1]
    for p, q in segments:
        if p[1] <= ay:
            if q[1] > ay and cross2(p, q, a) > 0:
                wn += 1
        elif q[1] <= ay and cross2(p, q, a) < 0:
            wn -= 1
    return wn


def winding_number(cycle: PLCycle, a: Sequence) -> int:
    """Degree of ``x -> (gamma(x) - a)/|gamma(x) - a|`` by signed crossings of a rightward ray.

    Vertices on the ray are counted with the half-open rule (lower endpoint
    inclusive), which is the lexicographic tie-break that keeps the count exact.
    """
    a = vector(a)
    segs = cycle.segments()
    if len(cycle.points) == 1:
        if a == cycle.points[0]:
            raise ValueError("point lies on the cycle")
        return 0
    if any(_on_segment(a, p, q) for p, q in segs):
        raise ValueError(f"point {a} lies on the cycle")
    return _crossing_number(segs, a)


# ---------------------------------------------------------------------------
# planar arrangements


@dataclass(frozen=True)
class Region:
    """A bounded open face of a segment arrangement.

    ``loops`` are closed vertex lists, each oriented with the region on its
    left: the outer boundary counterclockwise, holes clockwise.  Dangling
    edges inside the face appear traversed in both directions.
    """

    loops: tuple[tuple[Vector, ...], ...]
    area: Fraction
    sample: Vector

    def edges(self) -> list[Segment]:
        return [e for loop in self.loops for e in zip(loop, loop[1:] + loop[:1])]

    def contains(self, x: Sequence) -> bool:
        """Membership of a point known not to lie on any arrangement edge."""
        return _parity(self.edges(), x)


def _parity(edges, x) -> bool:
    # even-odd count without orientation
    c = 0
    for p, q in edges:
        if (p[1] <= x[1]) != (q[1] <= x[1]):
            xi = p[0] + (x[1] - p[1]) * (q[0] - p[0]) / (q[1] - p[1])
            if xi > x[0]:
                c += 1
    return c % 2 == 1


def _bbox_float(p, q, pad=1e-9):
    return (
        float(min(p[0], q[0])) - pad,
        float(max(p[0], q[0])) + pad,
        float(min(p[1], q[1])) - pad,
        float(max(p[1], q[1])) + pad,
    )


def _candidate_pairs(segs: Sequence[Segment]):
    """Index pairs whose (slightly padded) bounding boxes overlap; a sweep over x."""
    boxes = [_bbox_float(p, q, 1e-9 * (1 + abs(float(p[0])) + abs(float(p[1])))) for p, q in segs]
    order = sorted(range(len(segs)), key=lambda i: boxes[i][0])
    active: list[int] = []
    for i in order:
        x0 = boxes[i][0]
        active = [j for j in active if boxes[j][1] >= x0]
        for j in active:
            if boxes[j][2] <= boxes[i][3] and boxes[i][2] <= boxes[j][3]:
                yield (j, i) if j < i else (i, j)
        active.append(i)


def _split_points(segs: Sequence[Segment]) -> list[set[Vector]]:
    cuts = [{p, q} for p, q in segs]
    for i, j in _candidate_pairs(segs):
        p, q = segs[i]
        r, s = segs[j]
        d1 = (q[0] - p[0], q[1] - p[1])
        d2 = (s[0] - r[0], s[1] - r[1])
        den = d1[0] * d2[1] - d1[1] * d2[0]
        rp = (r[0] - p[0], r[1] - p[1])
        if den != 0:
            t = (rp[0] * d2[1] - rp[1] * d2[0]) / den
            u = (rp[0] * d1[1] - rp[1] * d1[0]) / den
            if 0 <= t <= 1 and 0 <= u <= 1:
                x = (p[0] + t * d1[0], p[1] + t * d1[1])
                cuts[i].add(x)
                cuts[j].add(x)
        elif rp[0] * d1[1] - rp[1] * d1[0] == 0:
            for a in (r, s):
                if _on_segment(a, p, q):
                    cuts[i].add(a)
            for a in (p, q):
                if _on_segment(a, r, s):
                    cuts[j].add(a)
    return cuts


def _angle_cmp(a, b) -> int:
    ha = 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1
    hb = 0 if (b[1] > 0 or (b[1] == 0 and b[0] > 0)) else 1
    if ha != hb:
        return ha - hb
    c = a[0] * b[1] - a[1] * b[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _signed_area(loop: Sequence[Vector]) -> Fraction:
    return sum(
        (p[0] * q[1] - p[1] * q[0] for p, q in zip(loop, list(loop[1:]) + [loop[0]])), Fraction(0)
    ) / 2


def _sample_inside(loops: Sequence[Sequence[Vector]]) -> Vector:
    edges = [e for loop in loops for e in zip(loop, list(loop[1:]) + [loop[0]])]
    outer = loops[0]
    ylo, yhi = min(p[1] for p in outer), max(p[1] for p in outer)
    ys = sorted({p[1] for loop in loops for p in loop if ylo <= p[1] <= yhi})
    for y0 in ((s + t) / 2 for s, t in zip(ys, ys[1:])):
        xs = sorted(
            p[0] + (y0 - p[1]) * (q[0] - p[0]) / (q[1] - p[1])
            for p, q in edges
            if (p[1] < y0) != (q[1] < y0)
        )
        for k in range(0, len(xs) - 1):
            if k % 2 == 0 and xs[k + 1] > xs[k]:
                return ((xs[k] + xs[k + 1]) / 2, y0)
    raise RuntimeError("could not locate an interior point of a region")


def complement_regions(segments: Iterable[Sequence[Sequence]]) -> list[Region]:
    """Bounded faces of the planar arrangement of the given segments."""
    segs = []
    for p, q in segments:
        p, q = vector(p), vector(q)
        if p == q:
            raise ValueError(f"degenerate segment at {p}")
        segs.append((p, q))
    if not segs:
        return []
    cuts = _split_points(segs)
    adj: dict[Vector, set[Vector]] = {}
    for (p, q), pts in zip(segs, cuts):
        d = (q[0] - p[0], q[1] - p[1])
        ordered = sorted(pts, key=lambda x: (x[0] - p[0]) * d[0] + (x[1] - p[1]) * d[1])
        for u, v in zip(ordered, ordered[1:]):
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)

    rot: dict[Vector, list[Vector]] = {}
    pos: dict[tuple[Vector, Vector], int] = {}
    for v, nbrs in adj.items():
        order = sorted(nbrs, key=cmp_to_key(lambda a, b: _angle_cmp((a[0] - v[0], a[1] - v[1]), (b[0] - v[0], b[1] - v[1]))))
        rot[v] = order
        for k, w in enumerate(order):
            pos[(v, w)] = k

    # face tracing with the face on the left of every half-edge
    seen: set[tuple[Vector, Vector]] = set()
    cycles: list[list[Vector]] = []
    for u in adj:
        for v in adj[u]:
            if (u, v) in seen:
                continue
            loop = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                loop.append(a)
                nb = rot[b]
                c = nb[(pos[(b, a)] - 1) % len(nb)]
                a, b = b, c
            cycles.append(loop)

    # connected components
    parent = {v: v for v in adj}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u in adj:
        for v in adj[u]:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv

    areas = [_signed_area(c) for c in cycles]
    faces = [k for k, a in enumerate(areas) if a > 0]
    holes: dict[int, list[int]] = {k: [] for k in faces}
    for k, a in enumerate(areas):
        if a > 0:
            continue
        comp = find(cycles[k][0])
        probe = cycles[k][0]
        best = None
        for f in faces:
            if find(cycles[f][0]) == comp:
                continue
            fedges = list(zip(cycles[f], cycles[f][1:] + cycles[f][:1]))
            if _crossing_number(fedges, probe) != 0 and (best is None or areas[f] < areas[best]):
                best = f
        if best is not None:
            holes[best].append(k)

    regions = []
    for f in faces:
        loops = [cycles[f]] + [cycles[h] for h in holes[f]]
        area = sum((areas[i] for i in [f] + holes[f]), Fraction(0))
        regions.append(Region(tuple(tuple(l) for l in loops), area, _sample_inside(loops)))
    regions.sort(key=lambda r: r.sample)
    return regions


# ---------------------------------------------------------------------------
# winding chains and integrals


@dataclass(frozen=True)
class WindingChain:
    """Bounded complementary regions of a cycle weighted by winding number."""

    regions: tuple[tuple[int, Region], ...]

    def weight_at(self, x: Sequence) -> int:
        """Value of the chain at a point off every region boundary."""
        return sum(w for w, r in self.regions if r.contains(x))

    def nonzero(self) -> list[tuple[int, Region]]:
        return [(w, r) for w, r in self.regions if w != 0]

    @property
    def weights(self) -> list[int]:
        return [w for w, _ in self.regions]


def winding_chain(cycle: PLCycle) -> WindingChain:
    regions = complement_regions(cycle.segments())
    return WindingChain(tuple((winding_number(cycle, r.sample), r) for r in regions))


def _loop_integral_q_dy(loop: Sequence[Vector], q: MultiPolynomial) -> Fraction:
    total = Fraction(0)
    for p, r in zip(loop, list(loop[1:]) + [loop[0]]):
        dy = r[1] - p[1]
        if dy == 0:
            continue
        coeffs = q.along_segment(p, (r[0] - p[0], dy))
        total += dy * integrate_unit_interval(coeffs)
    return total


def _check_planar(poly: MultiPolynomial) -> None:
    if poly.nvars != 2:
        raise DimensionError("planar integrals need a polynomial in 2 variables")


def integrate_form_over_chain(chain: WindingChain, poly: MultiPolynomial) -> Fraction:
    """``sum_U W(U) * int_U poly dx dy`` by Green's theorem on every boundary loop."""
    _check_planar(poly)
    q = poly.antiderivative(0)
    total = Fraction(0)
    for w, region in chain.regions:
        if w:
            total += w * sum((_loop_integral_q_dy(l, q) for l in region.loops), Fraction(0))
    return total


def integrate_pullback(cycle: PLCycle, q: MultiPolynomial) -> Fraction:
    """Line integral of the 1-form ``q dy`` along the oriented cycle."""
    _check_planar(q)
    if len(cycle.points) == 1:
        return Fraction(0)
    return _loop_integral_q_dy(cycle.points, q)


# ---------------------------------------------------------------------------
# piecewise-linear support functions and Gauss-type maps


@dataclass(frozen=True)
class SupportFunctionPL:
    """A function linear on each cone of the normal fan of ``delta0``.

    ``values[i]`` is the value on the primitive outward normal of the i-th edge
    of ``delta0`` in counterclockwise order (edge i joins vertex i to i+1).
    """

    delta0: ConvexPolytope
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if self.delta0.ambient != 2 or self.delta0.dim != 2:
            raise DimensionError("the reference polytope must be a full-dimensional polygon")
        if len(self.values) != len(self.normals):
            raise ValueError(f"need {len(self.normals)} values, got {len(self.values)}")

    @property
    def normals(self) -> list[tuple[int, int]]:
        return edge_normals(self.delta0)

    @classmethod
    def from_values(cls, delta0: ConvexPolytope, values: Sequence) -> "SupportFunctionPL":
        return cls(delta0, tuple(linalg.as_fraction(v) for v in values))

    @classmethod
    def from_mapping(cls, delta0: ConvexPolytope, values: Mapping[tuple, object]) -> "SupportFunctionPL":
        norm = {tuple(int(c) for c in k): v for k, v in values.items()}
        missing = [e for e in edge_normals(delta0) if e not in norm]
        if missing:
            raise ValueError(f"no value given for normals {missing}")
        return cls.from_values(delta0, [norm[e] for e in edge_normals(delta0)])

    @classmethod
    def of(cls, delta0: ConvexPolytope, body: ConvexPolytope) -> "SupportFunctionPL":
        """Restriction of the support function of ``body`` to the normals of ``delta0``."""
        return cls.from_values(delta0, [support_value(body, e) for e in edge_normals(delta0)])

    def as_mapping(self) -> dict[tuple[int, int], Fraction]:
        return dict(zip(self.normals, self.values))

    def __add__(self, other: "SupportFunctionPL") -> "SupportFunctionPL":
        self._compatible(other)
        return SupportFunctionPL(self.delta0, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "SupportFunctionPL") -> "SupportFunctionPL":
        self._compatible(other)
        return SupportFunctionPL(self.delta0, tuple(a - b for a, b in zip(self.values, other.values)))

    def __rmul__(self, c) -> "SupportFunctionPL":
        c = linalg.as_fraction(c)
        return SupportFunctionPL(self.delta0, tuple(c * a for a in self.values))

    def _compatible(self, other: "SupportFunctionPL") -> None:
        if self.normals != other.normals:
            raise ValueError("support functions are tied to different fans")


def edge_normals(delta0: ConvexPolytope) -> list[tuple[int, int]]:
    """Primitive outward normals of the edges of a polygon, counterclockwise from vertex 0."""
    cyc = delta0.boundary_cycle()
    return [
        linalg.primitive_integer((q[1] - p[1], p[0] - q[0])) for p, q in zip(cyc, cyc[1:] + cyc[:1])
    ]


def gauss_vertex_images(h: SupportFunctionPL) -> list[Vector]:
    """Image of every vertex of ``delta0``: the meet of its two adjacent translated edge lines.

    Each image solves a fixed 2x2 system whose right-hand side is linear in
    the values of ``h``, so the images depend linearly on ``h``.
    """
    normals = h.normals
    k = len(normals)
    out = []
    for i in range(k):
        e1, e2 = normals[i - 1], normals[i]
        h1, h2 = h.values[i - 1], h.values[i]
        d = e1[0] * e2[1] - e1[1] * e2[0]
        if d == 0:
            raise ValueError("adjacent edge normals are parallel")
        out.append(((h1 * e2[1] - h2 * e1[1]) / d, (e1[0] * h2 - e2[0] * h1) / d))
    return out


def gauss_type_map(h: SupportFunctionPL) -> PLCycle:
    """Canonical Gauss-type map of the boundary of ``delta0``, as a PL cycle."""
    return PLCycle.from_points(gauss_vertex_images(h))


def virtual_volume_from_support(h: SupportFunctionPL) -> Fraction:
    return integrate_form_over_chain(winding_chain(gauss_type_map(h)), MultiPolynomial.constant(2))


def virtual_chain_2d(positive: ConvexPolytope, negative: ConvexPolytope) -> ConvexChain:
    """Full-dimensional part of ``chi_positive * chi_negative^{-1}``."""
    return truncate_lower_dim(product(chain_of(positive), inverse(negative)))


def compare_with_virtual_polytope(
    h: SupportFunctionPL, positive: ConvexPolytope, negative: ConvexPolytope
) -> EqualityVerdict:
    """Compare the winding chain of ``h`` with the truncated virtual polytope, almost everywhere."""
    d0 = h.delta0
    for w in (positive, negative):
        if w.ambient != 2 or w.dim != 2 or not analogous(w, d0):
            raise ValueError(f"witness {w} is not analogous to the reference polygon")
    if SupportFunctionPL.of(d0, positive) - SupportFunctionPL.of(d0, negative) != h:
        raise ValueError("witnesses do not realize the given support function")
    cyc = gauss_type_map(h)
    wc = winding_chain(cyc)
    lines = sorted({line_through(p, q) for p, q in cyc.segments()})
    return equal_almost_everywhere_2d(virtual_chain_2d(positive, negative), wc.weight_at, lines)


def winding_truncation_check(h: SupportFunctionPL, positive: ConvexPolytope, negative: ConvexPolytope) -> bool:
    """True when the winding chain of the Gauss-type map of ``h`` equals the
    full-dimensional part of the virtual polytope ``positive - negative``."""
    return compare_with_virtual_polytope(h, positive, negative).equal


# ---------------------------------------------------------------------------
# smooth support functions (approximate)


def smooth_support_demo(
    gradient: Callable[[tuple[float, float]], Sequence[float]],
    samples: int = 256,
    integrand: MultiPolynomial | None = None,
) -> float:
    """Approximate volume of the virtual body whose support function has the given gradient.

    The gradient is sampled at ``samples`` equally spaced unit covectors, snapped
    exactly to rationals, joined into a PL cycle and integrated over its winding
    chain.  Error decays like ``1/samples**2`` for smooth strictly convex data.
    """
    if samples < 16:
        raise ValueError("use at least 16 samples")
    pts = []
    for k in range(samples):
        t = 2 * math.pi * k / samples
        g = gradient((math.cos(t), math.sin(t)))
        if g is None or len(g) != 2 or not all(math.isfinite(c) for c in g):
            raise ValueError(f"gradient undefined at direction angle {t}")
        pts.append((Fraction(float(g[0])), Fraction(float(g[1]))))
    cyc = PLCycle.from_points(pts)
    if len(cyc.points) < 3:
        return 0.0
    poly = MultiPolynomial.constant(2) if integrand is None else integrand
    return float(integrate_form_over_chain(winding_chain(cyc), poly))


def disk_gradient(radius: float, center: Sequence[float] = (0.0, 0.0)):
    """Gradient of ``xi -> <center, xi> + radius * |xi|`` (support function of a disk)."""

    def grad(xi):
        n = math.hypot(xi[0], xi[1])
        return (center[0] + radius * xi[0] / n, center[1] + radius * xi[1] / n)

    return grad


def polygon_gradient(p: ConvexPolytope):
    """Gradient of the support function of a polygon: the maximizing vertex (generic directions)."""
    verts = [(float(v[0]), float(v[1])) for v in p.vertices]

    def grad(xi):
        return max(verts, key=lambda v: v[0] * xi[0] + v[1] * xi[1])

    return grad
