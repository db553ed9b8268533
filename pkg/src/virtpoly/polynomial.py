"""Sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .linalg import as_fraction


@dataclass(frozen=True)
class MultiPolynomial:
    nvars: int
    coeffs: tuple[tuple[tuple[int, ...], Fraction], ...] = ()

    @classmethod
    def from_dict(cls, nvars: int, data: Mapping[Sequence[int], object]) -> "MultiPolynomial":
        acc: dict[tuple[int, ...], Fraction] = {}
        for e, c in data.items():
            e = tuple(int(k) for k in e)
            if len(e) != nvars or any(k < 0 for k in e):
                raise ValueError(f"bad exponent vector {e} for {nvars} variables")
            acc[e] = acc.get(e, Fraction(0)) + as_fraction(c)
        return cls(nvars, tuple(sorted((e, c) for e, c in acc.items() if c != 0)))

    @classmethod
    def constant(cls, nvars: int, c=1) -> "MultiPolynomial":
        return cls.from_dict(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPolynomial":
        e = [0] * nvars
        e[i] = 1
        return cls.from_dict(nvars, {tuple(e): 1})

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.coeffs)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e, _ in self.coeffs), default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, *x) -> Fraction:
        if len(x) == 1 and isinstance(x[0], (tuple, list)):
            x = tuple(x[0])
        if len(x) != self.nvars:
            raise ValueError(f"expected {self.nvars} arguments")
        total = Fraction(0)
        for e, c in self.coeffs:
            term = c
            for xi, k in zip(x, e):
                if k:
                    term *= xi**k
            total += term
        return total

    def __add__(self, other: "MultiPolynomial") -> "MultiPolynomial":
        d = self.as_dict()
        for e, c in other.coeffs:
            d[e] = d.get(e, Fraction(0)) + c
        return MultiPolynomial.from_dict(self.nvars, d)

    def __neg__(self) -> "MultiPolynomial":
        return MultiPolynomial(self.nvars, tuple((e, -c) for e, c in self.coeffs))

    def __sub__(self, other: "MultiPolynomial") -> "MultiPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "MultiPolynomial":
        if not isinstance(other, MultiPolynomial):
            c = as_fraction(other)
            return MultiPolynomial.from_dict(self.nvars, {e: c * a for e, a in self.coeffs})
        d: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, Fraction(0)) + c1 * c2
        return MultiPolynomial.from_dict(self.nvars, d)

    __rmul__ = __mul__

    def derivative(self, i: int) -> "MultiPolynomial":
        d = {}
        for e, c in self.coeffs:
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                d[tuple(e2)] = c * e[i]
        return MultiPolynomial.from_dict(self.nvars, d)

    def antiderivative(self, i: int) -> "MultiPolynomial":
        """The antiderivative in variable ``i`` with no terms free of that variable."""
        d = {}
        for e, c in self.coeffs:
            e2 = list(e)
            e2[i] += 1
            d[tuple(e2)] = c / e2[i]
        return MultiPolynomial.from_dict(self.nvars, d)

    def along_segment(self, start: Sequence, direction: Sequence) -> list[Fraction]:
        """Coefficients (constant term first) of ``t -> P(start + t * direction)``."""
        out = [Fraction(0)] * (max(self.degree, 0) + 1)
        for e, c in self.coeffs:
            poly = [c]
            for s, v, k in zip(start, direction, e):
                if not k:
                    continue
                factor = [comb(k, j) * s ** (k - j) * v**j for j in range(k + 1)]
                poly = _umul(poly, factor)
            for j, a in enumerate(poly):
                out[j] += a
        return out

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        names = "xyzw" if self.nvars <= 4 else None
        parts = []
        for e, c in reversed(self.coeffs):
            mono = "*".join(
                (names[i] if names else f"x{i}") + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e)
                if k
            )
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def _umul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def integrate_unit_interval(coeffs: Iterable[Fraction]) -> Fraction:
    return sum((Fraction(c) / (j + 1) for j, c in enumerate(coeffs)), Fraction(0))


def monomials(nvars: int, max_degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree at most ``max_degree``, graded order."""
    out = []
    for d in range(max_degree + 1):
        for e in itertools.product(range(d + 1), repeat=nvars):
            if sum(e) == d:
                out.append(e)
    return out


def homogeneous_monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    return [e for e in monomials(nvars, degree) if sum(e) == degree]
