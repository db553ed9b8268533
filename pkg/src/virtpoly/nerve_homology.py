"""Unions of affine subspaces, their nerves, and maps compatible with the coverings.

Translations of an arrangement are stored in quotient coordinates: for a
member ``L_i = {x : A_i x = b_i}`` (``A_i`` the canonical equation rows), a
translate ``L_i + y_i`` is ``{x : A_i x = b_i + o_i}`` with ``o_i = A_i y_i``.
The offsets ``o_i`` identify ``L / L~_i`` with ``Q^(codim L_i)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .geometry import DimensionError, Vector, vector
from .polynomial import MultiPolynomial, integrate_unit_interval, monomials

MAX_MEMBERS = 20
MAX_FACES = 10**5


class NotDominatedError(ValueError):
    """A face of the source complex has empty intersection in the target arrangement."""


class FitInconsistencyError(ArithmeticError):
    """A held-out sample disagrees with the fitted polynomial."""


@dataclass(frozen=True)
class AffineSubspace:
    """``point + span(dirs)`` in canonical form.

    ``dirs`` is the reduced echelon basis of the direction space and ``point``
    has zero coordinates at its pivot columns.
    """

    point: Vector
    dirs: tuple[Vector, ...]

    @classmethod
    def make(cls, point: Sequence, dirs: Iterable[Sequence] = ()) -> "AffineSubspace":
        p = list(vector(point))
        n = len(p)
        d = [vector(v) for v in dirs]
        if any(len(v) != n for v in d):
            raise DimensionError("direction vectors do not match the base point")
        r, piv = linalg.rref(d, n) if d else ([], [])
        if len(r) != len(d):
            raise ValueError("direction vectors are linearly dependent")
        for row, c in zip(r, piv):
            if p[c]:
                f = p[c]
                p = [a - f * b for a, b in zip(p, row)]
        return cls(tuple(p), tuple(tuple(row) for row in r))

    @classmethod
    def hyperplane(cls, normal: Sequence, offset) -> "AffineSubspace":
        """``{x : normal . x = offset}``."""
        a = vector(normal)
        if not any(a):
            raise ValueError("zero normal")
        p = linalg.solve([a], [linalg.as_fraction(offset)], len(a))
        return cls.make(p, linalg.nullspace([a], len(a)))

    @property
    def ambient(self) -> int:
        return len(self.point)

    @property
    def dim(self) -> int:
        return len(self.dirs)

    @property
    def codim(self) -> int:
        return self.ambient - self.dim

    def equations(self) -> tuple[list[Vector], list[Fraction]]:
        """Canonical rows ``A`` (reduced echelon basis of the normal space) and ``b = A . point``."""
        n = self.ambient
        rows = linalg.nullspace(self.dirs, n) if self.dirs else [
            tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
        ]
        rows, _ = linalg.rref(rows, n) if rows else ([], [])
        rows = [tuple(r) for r in rows]
        return rows, [linalg.dot(r, self.point) for r in rows]

    def contains(self, x: Sequence) -> bool:
        a, b = self.equations()
        return all(linalg.dot(r, x) == c for r, c in zip(a, b))

    def shifted(self, offset: Sequence) -> "AffineSubspace":
        """The translate with equations ``A x = b + offset``."""
        a, b = self.equations()
        off = [linalg.as_fraction(o) for o in offset]
        if len(off) != len(a):
            raise ValueError(f"offset needs {len(a)} coordinates")
        p = linalg.solve(a, [c + o for c, o in zip(b, off)], self.ambient)
        return AffineSubspace.make(p, self.dirs)

    def offset_of(self, y: Sequence) -> tuple[Fraction, ...]:
        """Quotient coordinates of the ambient vector ``y``."""
        a, _ = self.equations()
        return tuple(linalg.dot(r, vector(y)) for r in a)


def _system(members: Sequence[AffineSubspace], offsets=None):
    rows, rhs = [], []
    for k, s in enumerate(members):
        a, b = s.equations()
        if offsets is not None:
            b = [c + o for c, o in zip(b, offsets[k])]
        rows.extend(a)
        rhs.extend(b)
    return rows, rhs


def intersect(members: Sequence[AffineSubspace]) -> AffineSubspace | None:
    """Exact affine intersection; ``None`` stands for the empty set."""
    if not members:
        raise ValueError("nothing to intersect")
    n = members[0].ambient
    if any(m.ambient != n for m in members):
        raise DimensionError("subspaces live in different spaces")
    rows, rhs = _system(members)
    p = linalg.solve(rows, rhs, n)
    if p is None:
        return None
    return AffineSubspace.make(p, linalg.nullspace(rows, n) if rows else [])


@dataclass(frozen=True)
class ArrangementX:
    """Indexed family of affine subspaces of a common ambient space."""

    members: tuple[AffineSubspace, ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError("empty arrangement")
        n = self.members[0].ambient
        if any(m.ambient != n for m in self.members):
            raise DimensionError("members live in different spaces")

    @classmethod
    def of(cls, members: Iterable[AffineSubspace]) -> "ArrangementX":
        return cls(tuple(members))

    @classmethod
    def lines(cls, triples: Iterable[Sequence]) -> "ArrangementX":
        """Lines ``a x + b y = c`` from ``(a, b, c)`` triples."""
        return cls(tuple(AffineSubspace.hyperplane(t[:2], t[2]) for t in triples))

    @property
    def ambient(self) -> int:
        return self.members[0].ambient

    def __len__(self) -> int:
        return len(self.members)

    @property
    def offset_dims(self) -> list[int]:
        return [m.codim for m in self.members]

    def shifted(self, y: "TranslationTuple") -> "ArrangementX":
        _check_shape(self, y)
        return ArrangementX(tuple(m.shifted(o) for m, o in zip(self.members, y.offsets)))


@dataclass(frozen=True)
class TranslationTuple:
    """One offset vector per member, in that member's quotient coordinates."""

    offsets: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def zero(cls, x: ArrangementX) -> "TranslationTuple":
        return cls(tuple((Fraction(0),) * k for k in x.offset_dims))

    @classmethod
    def from_vectors(cls, x: ArrangementX, vectors: Sequence[Sequence]) -> "TranslationTuple":
        """Translate member i by the ambient vector ``vectors[i]``."""
        if len(vectors) != len(x):
            raise ValueError("one vector per member required")
        return cls(tuple(m.offset_of(v) for m, v in zip(x.members, vectors)))

    @classmethod
    def from_flat(cls, x: ArrangementX, flat: Sequence) -> "TranslationTuple":
        flat = [linalg.as_fraction(c) for c in flat]
        if len(flat) != sum(x.offset_dims):
            raise ValueError("wrong number of offset coordinates")
        out, k = [], 0
        for d in x.offset_dims:
            out.append(tuple(flat[k : k + d]))
            k += d
        return cls(tuple(out))

    def flat(self) -> tuple[Fraction, ...]:
        return tuple(c for o in self.offsets for c in o)

    def __add__(self, other: "TranslationTuple") -> "TranslationTuple":
        return TranslationTuple(tuple(tuple(a + b for a, b in zip(u, v)) for u, v in zip(self.offsets, other.offsets)))

    def __rmul__(self, c) -> "TranslationTuple":
        c = linalg.as_fraction(c)
        return TranslationTuple(tuple(tuple(c * a for a in u) for u in self.offsets))


def _check_shape(x: ArrangementX, y: TranslationTuple) -> None:
    if [len(o) for o in y.offsets] != x.offset_dims:
        raise ValueError("translation tuple does not match the arrangement")


# ---------------------------------------------------------------------------
# simplicial complexes


Face = tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed family of nonempty sorted index tuples over ``range(nvertices)``."""

    nvertices: int
    faces: frozenset[Face]
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if not self.check:
            return
        for f in self.faces:
            if list(f) != sorted(set(f)) or not f or f[0] < 0 or f[-1] >= self.nvertices:
                raise ValueError(f"bad face {f}")
            for k in range(len(f)):
                if f[:k] + f[k + 1 :] and f[:k] + f[k + 1 :] not in self.faces:
                    raise ValueError(f"face {f} is present without its facet {f[:k] + f[k + 1:]}")
        for v in range(self.nvertices):
            if (v,) not in self.faces:
                raise ValueError(f"vertex {v} missing")

    @classmethod
    def closure(cls, nvertices: int, generators: Iterable[Iterable[int]]) -> "SimplicialComplex":
        faces = {(v,) for v in range(nvertices)}
        for g in generators:
            g = tuple(sorted(set(g)))
            for r in range(1, len(g) + 1):
                faces.update(itertools.combinations(g, r))
        return cls(nvertices, frozenset(faces))

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def faces_of_dim(self, k: int) -> list[Face]:
        return sorted(f for f in self.faces if len(f) == k + 1)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self.nvertices == other.nvertices and self.faces <= other.faces

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(f) - 1) for f in self.faces)


def nerve(x: ArrangementX) -> SimplicialComplex:
    """All index sets with nonempty common intersection, grown level by level."""
    m = len(x)
    if m > MAX_MEMBERS:
        raise ValueError(f"nerve is limited to {MAX_MEMBERS} members")
    level: dict[Face, AffineSubspace] = {(i,): s for i, s in enumerate(x.members)}
    faces = set(level)
    while level:
        nxt = {}
        for f, s in level.items():
            for j in range(f[-1] + 1, m):
                g = f + (j,)
                # every facet of g must already be a face
                if any(g[:k] + g[k + 1 :] not in faces for k in range(len(g) - 1)):
                    continue
                t = intersect([s, x.members[j]])
                if t is not None:
                    nxt[g] = t
        faces.update(nxt)
        if len(faces) > MAX_FACES:
            raise ValueError("nerve exceeds the face bound")
        level = nxt
    return SimplicialComplex(m, frozenset(faces), check=False)


def _same_index(x1: ArrangementX, x2: ArrangementX) -> None:
    if len(x1) != len(x2):
        raise ValueError("arrangements are indexed by different sets")


def dominates(x1: ArrangementX, x2: ArrangementX) -> bool:
    """Whether the nerve of ``x1`` is a subcomplex of the nerve of ``x2``."""
    _same_index(x1, x2)
    return nerve(x1).is_subcomplex_of(nerve(x2))


def equivalent(x1: ArrangementX, x2: ArrangementX) -> bool:
    _same_index(x1, x2)
    return nerve(x1) == nerve(x2)


# ---------------------------------------------------------------------------
# compatible maps


@dataclass(frozen=True)
class CompatibleMap:
    """A map from the barycentric subdivision of ``complex`` into the union of ``target``.

    Each barycenter of a face ``J`` goes to ``images[J]``, a point of the
    intersection of the members indexed by ``J``; the map is affine on every
    simplex of the subdivision.
    """

    complex: SimplicialComplex
    target: ArrangementX
    images: Mapping[Face, Vector]

    def verify(self) -> bool:
        """Covering compatibility: every image of a barycenter of J lies in each member indexed by J."""
        return all(
            all(self.target.members[i].contains(p) for i in face) for face, p in self.images.items()
        )

    def edge_path(self, i: int, j: int) -> list[Vector]:
        """Image of the oriented edge ``i -> j``: through the barycenter of ``{i, j}``."""
        e = (min(i, j), max(i, j))
        return [self.images[(i,)], self.images[e], self.images[(j,)]]


def _canonical_point(target: ArrangementX, face: Face, offsets=None):
    members = [target.members[i] for i in face]
    offs = None if offsets is None else [offsets[i] for i in face]
    rows, rhs = _system(members, offs)
    return linalg.least_norm_solution(rows, rhs, target.ambient)


def compatible_map(k: SimplicialComplex, target: ArrangementX) -> CompatibleMap:
    """Least-norm barycenter images; fails on the first face whose members do not meet."""
    if k.nvertices != len(target):
        raise ValueError("complex and arrangement are indexed by different sets")
    images = {}
    for face in sorted(k.faces, key=lambda f: (len(f), f)):
        p = _canonical_point(target, face)
        if p is None:
            raise NotDominatedError(f"members {face} do not intersect in the target")
        images[face] = tuple(p)
    return CompatibleMap(k, target, images)


# ---------------------------------------------------------------------------
# homology


def _boundary_rank(k: SimplicialComplex, dim: int) -> int:
    """Rank of the boundary map from dim-chains to (dim-1)-chains."""
    if dim <= 0:
        return 0
    src = k.faces_of_dim(dim)
    tgt = {f: i for i, f in enumerate(k.faces_of_dim(dim - 1))}
    if not src or not tgt:
        return 0
    rows = []
    for f in src:
        row = [0] * len(tgt)
        for j in range(len(f)):
            row[tgt[f[:j] + f[j + 1 :]]] = (-1) ** j
        rows.append(row)
    return linalg.rank(rows)


def homology_ranks(k: SimplicialComplex) -> list[int]:
    """Betti numbers over Q, indices 0..dim."""
    if len(k.faces) > MAX_FACES:
        raise ValueError("complex exceeds the face bound")
    top = k.dimension
    ranks = [_boundary_rank(k, d) for d in range(top + 2)]
    return [len(k.faces_of_dim(d)) - ranks[d] - ranks[d + 1] for d in range(top + 1)]


def is_cycle(k: SimplicialComplex, chain: Mapping[tuple[int, int], object]) -> bool:
    """Whether an integer combination of oriented edges has zero boundary in ``k``."""
    bd: dict[int, Fraction] = {}
    for (i, j), c in chain.items():
        if (min(i, j), max(i, j)) not in k.faces or i == j:
            raise ValueError(f"({i}, {j}) is not an edge of the complex")
        c = linalg.as_fraction(c)
        bd[j] = bd.get(j, 0) + c
        bd[i] = bd.get(i, 0) - c
    return all(v == 0 for v in bd.values())


# ---------------------------------------------------------------------------
# hyperplane arrangements


def _check_hyperplanes(x: ArrangementX) -> None:
    for m in x.members:
        if m.codim != 1:
            raise ValueError("every member must be a hyperplane")


def parallel_core(x: ArrangementX) -> AffineSubspace:
    """Largest linear subspace parallel to every member."""
    _check_hyperplanes(x)
    n = x.ambient
    normals = [m.equations()[0][0] for m in x.members]
    return AffineSubspace.make((0,) * n, linalg.nullspace(normals, n))


def _clip_line(a: Sequence, c, lo: Sequence, hi: Sequence):
    """Segment of ``a . x = c`` inside the box ``[lo, hi]``, or None."""
    p = linalg.solve([a], [c], 2)
    d = (-a[1], a[0])
    tlo, thi = None, None
    for j in range(2):
        if d[j] == 0:
            if not lo[j] <= p[j] <= hi[j]:
                return None
            continue
        t1, t2 = sorted(((lo[j] - p[j]) / d[j], (hi[j] - p[j]) / d[j]))
        tlo = t1 if tlo is None else max(tlo, t1)
        thi = t2 if thi is None else min(thi, t2)
    if tlo is None or tlo >= thi:
        return None
    return tuple(p[j] + tlo * d[j] for j in range(2)), tuple(p[j] + thi * d[j] for j in range(2))


def clipped_segments(x: ArrangementX, margin=1):
    """Lines clipped to the box around all pairwise intersection points, grown by ``margin``."""
    eqs = [m.equations() for m in x.members]
    pts = []
    for (a1, b1), (a2, b2) in itertools.combinations(eqs, 2):
        p = linalg.solve([a1[0], a2[0]], [b1[0], b2[0]], 2)
        if p is not None and linalg.rank([a1[0], a2[0]]) == 2:
            pts.append(p)
    if not pts:
        return []
    margin = linalg.as_fraction(margin)
    lo = [min(p[j] for p in pts) - margin for j in range(2)]
    hi = [max(p[j] for p in pts) + margin for j in range(2)]
    segs = []
    for a, b in eqs:
        s = _clip_line(a[0], b[0], lo, hi)
        if s is not None:
            segs.append(s)
    return segs


@dataclass(frozen=True)
class WedgeReport:
    betti: tuple[int, ...]
    bounded: int
    core_dim: int
    sphere_dim: int
    ok: bool

    @property
    def b0(self) -> int:
        return self.betti[0]

    @property
    def b1(self) -> int:
        return self.betti[1] if len(self.betti) > 1 else 0

    def as_dict(self) -> dict:
        return {
            "b0": self.b0,
            "b1": self.b1,
            "betti": list(self.betti),
            "bounded": self.bounded,
            "core_dim": self.core_dim,
            "sphere_dim": self.sphere_dim,
            "ok": self.ok,
        }


def wedge_check(x: ArrangementX) -> WedgeReport:
    """Compare the nerve's Betti numbers with the bounded complementary regions of lines in the plane.

    With a trivial parallel core the union is a wedge of circles, one per bounded
    region.  With a one-dimensional core (all lines parallel) it is a wedge of
    0-spheres, one per bounded interval of the quotient line.
    """
    from .winding import complement_regions

    if x.ambient != 2:
        raise DimensionError("wedge_check is planar")
    _check_hyperplanes(x)
    betti = homology_ranks(nerve(x))
    m = parallel_core(x).dim
    if m == 0:
        bounded = len(complement_regions(clipped_segments(x)))
        expected = [1, bounded]
    else:
        offsets = {m_.equations()[1][0] for m_ in x.members}
        bounded = len(offsets) - 1
        expected = [bounded + 1]
    padded = list(betti) + [0] * max(0, len(expected) - len(betti))
    ok = padded[: len(expected)] == expected and all(b == 0 for b in padded[len(expected) :])
    return WedgeReport(tuple(betti), bounded, m, x.ambient - 1 - m, ok)


# ---------------------------------------------------------------------------
# compatible translations


def is_compatible(x: ArrangementX, y: TranslationTuple, k: SimplicialComplex | None = None) -> bool:
    """Every face of the nerve keeps a nonempty intersection after translating by ``y``."""
    _check_shape(x, y)
    k = nerve(x) if k is None else k
    for face in k.faces:
        if len(face) > 1 and _canonical_point(x, face, y.offsets) is None:
            return False
    return True


def compatible_space(x: ArrangementX) -> list[tuple[Fraction, ...]]:
    """Basis of the linear space Y of compatible translations, in flat offset coordinates.

    For a face J with stacked system ``A_J z = b_J`` (consistent), a translate is
    consistent iff ``N_J o_J = 0`` for ``N_J`` spanning the left kernel of ``A_J``.
    """
    dims = x.offset_dims
    starts = list(itertools.accumulate([0] + dims))
    total = starts[-1]
    constraints = []
    for face in nerve(x).faces:
        if len(face) < 2:
            continue
        rows, _ = _system([x.members[i] for i in face])
        cols = [c for i in face for c in range(starts[i], starts[i] + dims[i])]
        left = linalg.nullspace([list(col) for col in zip(*rows)], len(rows))
        for v in left:
            r = [Fraction(0)] * total
            for c, a in zip(cols, v):
                r[c] += a
            constraints.append(r)
    return [tuple(v) for v in linalg.nullspace(constraints, total)] if constraints else [
        tuple(Fraction(int(i == j)) for j in range(total)) for i in range(total)
    ]


def translation_from_coords(x: ArrangementX, basis, coords: Sequence) -> TranslationTuple:
    coords = [linalg.as_fraction(c) for c in coords]
    flat = [sum((c * b[j] for c, b in zip(coords, basis)), Fraction(0)) for j in range(sum(x.offset_dims))]
    return TranslationTuple.from_flat(x, flat)


def translate_map(x: ArrangementX, y: TranslationTuple) -> CompatibleMap:
    """Compatible map of the nerve of ``x`` into ``x`` translated by ``y``.

    Barycenter images are least-norm solutions of fixed linear systems whose
    right-hand sides are affine in ``y``, so they depend affinely on ``y``.
    """
    k = nerve(x)
    if not is_compatible(x, y, k):
        raise NotDominatedError("translation is not compatible with the arrangement")
    return compatible_map(k, x.shifted(y))


# ---------------------------------------------------------------------------
# integrals over cycles of the nerve


def _segment_integral(p: Vector, q: Vector, form: Sequence[MultiPolynomial]) -> Fraction:
    d = tuple(b - a for a, b in zip(p, q))
    total = Fraction(0)
    for coef, dj in zip(form, d):
        if dj:
            total += dj * integrate_unit_interval(coef.along_segment(p, d))
    return total


def pullback_integral(g: CompatibleMap, cycle: Mapping[tuple[int, int], object], form: Sequence[MultiPolynomial]) -> Fraction:
    """``int_gamma g^* alpha`` for a 1-cycle ``gamma`` and a 1-form ``sum form[j] dx_j``."""
    if len(form) != g.target.ambient or any(f.nvars != g.target.ambient for f in form):
        raise DimensionError("form does not match the ambient dimension")
    total = Fraction(0)
    for (i, j), c in cycle.items():
        path = g.edge_path(i, j)
        total += linalg.as_fraction(c) * sum(
            (_segment_integral(a, b, form) for a, b in zip(path, path[1:])), Fraction(0)
        )
    return total


@dataclass(frozen=True)
class FitReport:
    polynomial: MultiPolynomial  # in coordinates on the basis of Y
    basis: tuple[tuple[Fraction, ...], ...]
    degree: int
    train: int
    holdout: int
    excluded: int
    exact: bool

    def as_dict(self) -> dict:
        return {
            "polynomial": self.polynomial,
            "degree": self.degree,
            "dim_Y": len(self.basis),
            "train": self.train,
            "holdout": self.holdout,
            "excluded": self.excluded,
            "exact": self.exact,
        }


def integral_F(
    x: ArrangementX,
    cycle: Mapping[tuple[int, int], object],
    form: Sequence[MultiPolynomial],
    samples: Sequence[Sequence] | None = None,
    *,
    degree: int | None = None,
    holdout: int = 5,
    seed: int = 0,
) -> FitReport:
    """Fit ``y -> int_gamma g_y^* alpha`` exactly as a polynomial on Y and test held-out samples.

    ``samples`` are coordinate tuples on the basis returned by
    :func:`compatible_space`; when omitted, random small-integer samples are drawn.
    Samples whose translated nerve differs from the nerve of ``x`` are skipped.
    Raises :class:`FitInconsistencyError` when a held-out value is missed.
    """
    from .measures import FitError, interpolate

    k = nerve(x)
    if not is_cycle(k, cycle):
        raise ValueError("the given chain has nonzero boundary")
    basis = compatible_space(x)
    dim = len(basis)
    if degree is None:
        degree = max(f.degree for f in form) + 1
        degree = max(degree, 1)
    exps = monomials(dim, degree)
    need = len(exps) + holdout
    if samples is None:
        rng = random.Random(seed)
        pool, seen = [], set()
        while len(pool) < 3 * need + 10:
            c = tuple(rng.randint(-4, 4) for _ in range(dim))
            if c not in seen:
                seen.add(c)
                pool.append(c)
    else:
        pool = [tuple(linalg.as_fraction(c) for c in s) for s in samples]
    values, excluded = [], 0
    for c in pool:
        y = translation_from_coords(x, basis, c)
        if nerve(x.shifted(y)) != k:
            excluded += 1
            continue
        values.append((tuple(Fraction(v) for v in c), pullback_integral(translate_map(x, y), cycle, form)))
        if samples is None and len(values) >= need:
            break
    if len(values) < need:
        raise ValueError(f"only {len(values)} usable samples, need {need}")
    train, test = values[: len(values) - holdout], values[len(values) - holdout :]
    try:
        poly, rank = interpolate(dict(train), exps, dim)
    except FitError as e:
        raise FitInconsistencyError(str(e)) from e
    for c, v in test:
        if poly(c) != v:
            raise FitInconsistencyError(f"held-out sample {c}: fitted {poly(c)}, direct {v}")
    return FitReport(poly, tuple(basis), degree, len(train), len(test), excluded, rank == len(exps))
