"""JSON encodings.  Rationals travel as ``"p/q"`` strings (integers as ``"p"``)."""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from . import linalg
from .bkk import LaurentPolynomial
from .chains import ConvexChain
from .geometry import ConvexPolytope, hull
from .nerve_homology import AffineSubspace, ArrangementX, SimplicialComplex
from .polynomial import MultiPolynomial
from .winding import PLCycle, Region, SupportFunctionPL, WindingChain


class SchemaError(ValueError):
    """Input JSON does not match the expected schema."""


def rational(value) -> Fraction:
    """A scalar from JSON: ``"p/q"``, an integer, or a ``[num, den]`` pair."""
    if isinstance(value, bool):
        raise SchemaError(f"boolean {value!r} where a rational is required")
    if isinstance(value, float):
        raise SchemaError(f"floating-point value {value!r} where an exact rational is required")
    if isinstance(value, list):
        value = tuple(value)
    try:
        return linalg.as_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise SchemaError(f"not a rational: {value!r}") from e


def rational_str(q) -> str:
    return str(Fraction(q))


def _need(obj: dict, key: str):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"missing key {key!r}")
    return obj[key]


def _vec(v) -> tuple[Fraction, ...]:
    if not isinstance(v, list):
        raise SchemaError(f"expected a coordinate list, got {v!r}")
    return tuple(rational(c) for c in v)


def _vec_out(v) -> list[str]:
    return [rational_str(c) for c in v]


# polytopes and chains


def polytope_to_json(p: ConvexPolytope) -> dict:
    return {"dim": p.ambient, "vertices": [_vec_out(v) for v in p.vertices]}


def polytope_from_json(obj: dict) -> ConvexPolytope:
    n = _need(obj, "dim")
    verts = [_vec(v) for v in _need(obj, "vertices")]
    if not verts:
        raise SchemaError("a polytope needs at least one vertex")
    if any(len(v) != n for v in verts):
        raise SchemaError(f"vertex length differs from dim = {n}")
    return hull(verts)


def chain_to_json(f: ConvexChain) -> dict:
    return {
        "dim": f.ambient,
        "terms": [{"coeff": rational_str(c), "polytope": polytope_to_json(p)} for c, p in f.terms],
    }


def chain_from_json(obj: dict) -> ConvexChain:
    n = _need(obj, "dim")
    terms = []
    for t in _need(obj, "terms"):
        p = polytope_from_json(_need(t, "polytope"))
        if p.ambient != n:
            raise SchemaError("term dimension differs from chain dimension")
        terms.append((rational(_need(t, "coeff")), p))
    return ConvexChain.from_terms(n, terms)


# polynomials


def polynomial_to_json(p: MultiPolynomial) -> dict:
    return {
        "vars": p.nvars,
        "monomials": [{"exps": list(e), "coeff": rational_str(c)} for e, c in p.coeffs],
    }


def polynomial_from_json(obj: dict) -> MultiPolynomial:
    n = _need(obj, "vars")
    data = {}
    for m in _need(obj, "monomials"):
        e = tuple(int(k) for k in _need(m, "exps"))
        data[e] = data.get(e, 0) + rational(_need(m, "coeff"))
    try:
        return MultiPolynomial.from_dict(n, data)
    except ValueError as e:
        raise SchemaError(str(e)) from e


# cycles, support functions, winding chains


def cycle_to_json(c: PLCycle) -> dict:
    return {"points": [_vec_out(p) for p in c.points]}


def cycle_from_json(obj: dict) -> PLCycle:
    return PLCycle.from_points([_vec(p) for p in _need(obj, "points")])


def support_to_json(h: SupportFunctionPL) -> dict:
    return {
        "delta0": polytope_to_json(h.delta0),
        "values": [{"normal": list(e), "h": rational_str(v)} for e, v in zip(h.normals, h.values)],
    }


def support_from_json(obj: dict) -> SupportFunctionPL:
    d0 = polytope_from_json(_need(obj, "delta0"))
    values = {tuple(int(c) for c in _need(v, "normal")): rational(_need(v, "h")) for v in _need(obj, "values")}
    return SupportFunctionPL.from_mapping(d0, values)


def region_to_json(r: Region) -> dict:
    return {
        "loops": [[_vec_out(p) for p in loop] for loop in r.loops],
        "area": rational_str(r.area),
        "sample": _vec_out(r.sample),
    }


def region_from_json(obj: dict) -> Region:
    return Region(
        tuple(tuple(_vec(p) for p in loop) for loop in _need(obj, "loops")),
        rational(_need(obj, "area")),
        _vec(_need(obj, "sample")),
    )


def winding_chain_to_json(w: WindingChain) -> dict:
    return {"regions": [{"weight": k, "region": region_to_json(r)} for k, r in w.regions]}


def winding_chain_from_json(obj: dict) -> WindingChain:
    return WindingChain(tuple((int(_need(t, "weight")), region_from_json(_need(t, "region"))) for t in _need(obj, "regions")))


# arrangements and complexes


def arrangement_to_json(x: ArrangementX) -> dict:
    return {
        "ambient": x.ambient,
        "subspaces": [{"point": _vec_out(m.point), "dirs": [_vec_out(d) for d in m.dirs]} for m in x.members],
    }


def arrangement_from_json(obj: dict) -> ArrangementX:
    n = _need(obj, "ambient")
    members = []
    for s in _need(obj, "subspaces"):
        p = _vec(_need(s, "point"))
        if len(p) != n:
            raise SchemaError("subspace point has the wrong dimension")
        try:
            members.append(AffineSubspace.make(p, [_vec(d) for d in s.get("dirs", [])]))
        except ValueError as e:
            raise SchemaError(str(e)) from e
    return ArrangementX.of(members)


def complex_to_json(k: SimplicialComplex) -> dict:
    return {"vertices": k.nvertices, "faces": [list(f) for f in sorted(k.faces, key=lambda f: (len(f), f))]}


def complex_from_json(obj: dict) -> SimplicialComplex:
    return SimplicialComplex(int(_need(obj, "vertices")), frozenset(tuple(sorted(f)) for f in _need(obj, "faces")))


# Laurent systems (machine-float coefficients)


def laurent_to_json(p: LaurentPolynomial) -> dict:
    return {
        "monomials": [
            {"exps": list(e), "re": complex(c).real, "im": complex(c).imag} for e, c in p.terms
        ]
    }


def system_to_json(polys) -> dict:
    return {"vars": polys[0].nvars, "polys": [laurent_to_json(p) for p in polys]}


def system_from_json(obj: dict) -> list[LaurentPolynomial]:
    n = _need(obj, "vars")
    out = []
    for p in _need(obj, "polys"):
        data: dict[tuple[int, ...], complex] = {}
        for m in _need(p, "monomials"):
            e = tuple(int(k) for k in _need(m, "exps"))
            data[e] = data.get(e, 0) + complex(float(m.get("re", 0.0)), float(m.get("im", 0.0)))
        try:
            out.append(LaurentPolynomial.from_dict(n, data))
        except ValueError as e:
            raise SchemaError(str(e)) from e
    return out


def jsonable(value: Any) -> Any:
    """Recursively convert library values into plain JSON types."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return rational_str(value)
    if isinstance(value, float):
        return value
    if isinstance(value, MultiPolynomial):
        return polynomial_to_json(value)
    if isinstance(value, ConvexPolytope):
        return polytope_to_json(value)
    if isinstance(value, ConvexChain):
        return chain_to_json(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    raise TypeError(f"cannot encode {type(value).__name__}")
