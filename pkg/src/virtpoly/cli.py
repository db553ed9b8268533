"""Command-line front end: one subcommand per operation, JSON in and out.

Exit status is 0 on success, 2 when a verification verdict is negative and
1 on malformed input (with a machine-readable error object on stdout).
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Callable

from . import bkk, chains, geometry, io, measures, svg, winding
from . import nerve_homology as nerve
from .polynomial import MultiPolynomial

EXIT_OK, EXIT_INPUT, EXIT_VERDICT = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    data: Any
    out: str | None = None
    svg: str | None = None
    seed: int = 0
    tol: bkk.Tolerances = bkk.Tolerances()


Handler = Callable[[RunConfig], "tuple[dict, str | None]"]
COMMANDS: dict[str, tuple[Handler, str]] = {}
ALIASES: dict[str, list[str]] = {}


def command(name: str, help: str, aliases: tuple[str, ...] = ()):
    def deco(fn: Handler) -> Handler:
        COMMANDS[name] = (fn, help)
        ALIASES[name] = list(aliases)
        return fn

    return deco


# -- input helpers ------------------------------------------------------------


def _polytopes(data) -> list[geometry.ConvexPolytope]:
    items = data.get("polytopes") if isinstance(data, dict) else data
    if not isinstance(items, list) or not items:
        raise io.SchemaError('expected {"polytopes": [<polytope>, ...]}')
    return [io.polytope_from_json(p) for p in items]


def _polytope(data) -> geometry.ConvexPolytope:
    if isinstance(data, dict) and "polytope" in data:
        data = data["polytope"]
    return io.polytope_from_json(data)


def _chain(data, key):
    if not isinstance(data, dict) or key not in data:
        raise io.SchemaError(f"missing chain {key!r}")
    return io.chain_from_json(data[key])


def _poly(data, key="polynomial", nvars=2) -> MultiPolynomial:
    if isinstance(data, dict) and key in data:
        p = io.polynomial_from_json(data[key])
        if p.nvars != nvars:
            raise io.SchemaError(f"{key} must have {nvars} variables")
        return p
    return MultiPolynomial.constant(nvars)


def _cycle(data) -> winding.PLCycle:
    if isinstance(data, dict) and "cycle" in data:
        data = data["cycle"]
    return io.cycle_from_json(data)


def _support(data) -> winding.SupportFunctionPL:
    if isinstance(data, dict) and "support" in data:
        data = data["support"]
    return io.support_from_json(data)


def _arrangement(data, key="arrangement") -> nerve.ArrangementX:
    if isinstance(data, dict) and key in data:
        data = data[key]
    return io.arrangement_from_json(data)


def _edge_chain(items) -> dict[tuple[int, int], Any]:
    if not isinstance(items, list):
        raise io.SchemaError('expected "cycle": [{"edge": [i, j], "coeff": c}, ...]')
    out: dict[tuple[int, int], Any] = {}
    for t in items:
        i, j = (int(v) for v in t["edge"])
        out[(i, j)] = out.get((i, j), 0) + io.rational(t.get("coeff", 1))
    return out


def _verdict(v: chains.EqualityVerdict) -> dict:
    return {"ok": v.equal, "exact": v.exact, "witness": None if v.witness is None else list(v.witness)}


# -- geometry and chains -------------------------------------------------------


@command("hull", "convex hull of a point list")
def _hull(cfg):
    pts = cfg.data.get("points") if isinstance(cfg.data, dict) else cfg.data
    if not isinstance(pts, list) or not pts:
        raise io.SchemaError('expected {"points": [[..], ...]}')
    p = geometry.hull([io._vec(v) for v in pts])
    return io.polytope_to_json(p), svg.polygons_svg([p]) if p.ambient == 2 else None


@command("minkowski-sum", "Minkowski sum of the given polytopes")
def _msum(cfg):
    ps = _polytopes(cfg.data)
    s = ps[0]
    for p in ps[1:]:
        s = geometry.minkowski_sum(s, p)
    return io.polytope_to_json(s), svg.polygons_svg(ps + [s]) if s.ambient == 2 else None


@command("normal-fan", "rays and maximal cones of the normal fan")
def _fan(cfg):
    fan = geometry.normal_fan(_polytope(cfg.data))
    return {
        "ambient": fan.ambient,
        "rays": [list(r) for r in sorted(fan.rays)],
        "maximal_cones": [[list(r) for r in sorted(c.rays)] for c in fan.maximal_cones],
    }, None


@command("analogous", "whether two polytopes have the same normal fan")
def _analogous(cfg):
    a, b = _polytopes(cfg.data)[:2]
    return {"analogous": geometry.analogous(a, b)}, None


@command("lattice-points", "integer points of a polytope")
def _lattice(cfg):
    pts = geometry.lattice_points(_polytope(cfg.data))
    return {"count": len(pts), "points": [io._vec_out(v) for v in pts]}, None


@command("chain-product", "Minkowski product of chains f and g")
def _cprod(cfg):
    return io.chain_to_json(chains.product(_chain(cfg.data, "f"), _chain(cfg.data, "g"))), None


@command("chain-inverse", "inverse of the characteristic function of a polytope")
def _cinv(cfg):
    return io.chain_to_json(chains.inverse(_polytope(cfg.data))), None


@command("chains-equal", "compare chains f and g as functions")
def _ceq(cfg):
    return _verdict(chains.chains_equal(_chain(cfg.data, "f"), _chain(cfg.data, "g"))), None


@command("virtual-polytope", "chain of a product of polytope powers")
def _vpoly(cfg):
    ps = _polytopes(cfg.data)
    exps = [int(k) for k in cfg.data.get("exponents", [])]
    return io.chain_to_json(chains.virtual_polytope(ps, exps).chain), None


@command("inverse-identity", "check that inverse(P) * chi_P is the unit", aliases=("theorem1",))
def _invid(cfg):
    p = _polytope(cfg.data)
    v = chains.chains_equal(chains.product(chains.inverse(p), chains.chain_of(p)), chains.one(p.ambient))
    return _verdict(v), None


# -- measures -------------------------------------------------------------------


@command("volume", "exact volume of a polytope")
def _vol(cfg):
    return {"volume": measures.volume(_polytope(cfg.data))}, None


@command("mixed-volume", "mixed volume of n polytopes in R^n")
def _mv(cfg):
    return {"mv": measures.mixed_volume(_polytopes(cfg.data))}, None


@command("virtual-mixed-volume", "mixed volume of formal differences")
def _vmv(cfg):
    pairs = cfg.data.get("pairs") if isinstance(cfg.data, dict) else None
    if not pairs:
        raise io.SchemaError('expected {"pairs": [[<positive>, <negative>], ...]}')
    bodies = [measures.VirtualBody(io.polytope_from_json(a), io.polytope_from_json(b)) for a, b in pairs]
    return {"mv": measures.virtual_mixed_volume(bodies)}, None


@command("lattice-measure", "sum of a polynomial over lattice points, weighted by a chain")
def _lm(cfg):
    f = _chain(cfg.data, "chain")
    return {"value": measures.lattice_measure(_poly(cfg.data, nvars=f.ambient), f)}, None


@command("lattice-fit", "fit the lattice measure of dilated chains and check mixed-sign exponents")
def _lfit(cfg):
    ps = _polytopes(cfg.data)
    n = ps[0].ambient
    poly = _poly(cfg.data, nvars=n)
    grid = int(cfg.data.get("grid", 4))
    deg = n + max(poly.degree, 0)
    samples = {
        e: measures.lattice_measure(poly, measures.dilate_chain(ps, e))
        for e in itertools.product(range(grid + 1), repeat=len(ps))
    }
    fitted = measures.fit_polynomial(samples, deg)
    checks = []
    for e in cfg.data.get("check", []):
        e = tuple(int(k) for k in e)
        direct = measures.lattice_measure(poly, measures.dilate_chain(ps, e))
        checks.append({"exponents": list(e), "fitted": fitted(e), "direct": direct, "ok": fitted(e) == direct})
    return {"polynomial": fitted, "checks": checks, "ok": all(c["ok"] for c in checks)}, None


@command("polynomiality", "fit vol(lam*A + mu*B) on a grid")
def _polyn(cfg):
    a, b = _polytopes(cfg.data)[:2]
    r = measures.minkowski_polynomiality_check(a, b, int(cfg.data.get("grid", 5)))
    d = r.as_dict()
    d["ok"] = r.exact and r.mixed_volume_coefficients
    return d, None


# -- winding ----------------------------------------------------------------------


@command("regions", "bounded faces of a segment arrangement")
def _regions(cfg):
    segs = cfg.data.get("segments") if isinstance(cfg.data, dict) else None
    if not isinstance(segs, list):
        raise io.SchemaError('expected {"segments": [[p, q], ...]}')
    segs = [(io._vec(p), io._vec(q)) for p, q in segs]
    regs = winding.complement_regions(segs)
    return {"regions": [io.region_to_json(r) for r in regs]}, svg.segments_svg(segs, regs)


@command("winding-number", "winding number of a cycle around a point")
def _wn(cfg):
    return {"winding": winding.winding_number(_cycle(cfg.data), io._vec(cfg.data["point"]))}, None


@command("winding-chain", "bounded regions of a cycle weighted by winding number")
def _wc(cfg):
    c = _cycle(cfg.data)
    w = winding.winding_chain(c)
    return io.winding_chain_to_json(w), svg.winding_chain_svg(w, c)


@command("integrate-form", "sum of weight * integral of P over the winding chain of a cycle")
def _iform(cfg):
    w = winding.winding_chain(_cycle(cfg.data))
    return {"value": winding.integrate_form_over_chain(w, _poly(cfg.data))}, None


@command("integrate-pullback", "line integral of Q dy along a cycle")
def _ipull(cfg):
    return {"value": winding.integrate_pullback(_cycle(cfg.data), _poly(cfg.data))}, None


@command("green-check", "compare the pullback of Q dy with the chain integral of dQ/dx")
def _green(cfg):
    c, q = _cycle(cfg.data), _poly(cfg.data)
    lhs = winding.integrate_pullback(c, q)
    rhs = winding.integrate_form_over_chain(winding.winding_chain(c), q.derivative(0))
    return {"pullback": lhs, "chain": rhs, "ok": lhs == rhs}, None


@command("gauss-map", "canonical Gauss-type map of a piecewise-linear support function")
def _gmap(cfg):
    h = _support(cfg.data)
    c = winding.gauss_type_map(h)
    w = winding.winding_chain(c)
    return {"cycle": io.cycle_to_json(c), "chain": io.winding_chain_to_json(w)}, svg.winding_chain_svg(w, c)


@command("virtual-volume", "volume of the virtual polygon of a support function")
def _vvol(cfg):
    return {"volume": winding.virtual_volume_from_support(_support(cfg.data))}, None


@command("truncation-check", "winding chain vs truncated virtual polytope of witnesses")
def _trunc(cfg):
    h = _support(cfg.data)
    pos = io.polytope_from_json(cfg.data["positive"])
    neg = io.polytope_from_json(cfg.data["negative"])
    v = winding.compare_with_virtual_polytope(h, pos, neg)
    c = winding.gauss_type_map(h)
    return _verdict(v), svg.winding_chain_svg(winding.winding_chain(c), c)


@command("smooth-demo", "approximate area of a disk from its support-function gradient")
def _smooth(cfg):
    d = cfg.data if isinstance(cfg.data, dict) else {}
    r = float(d.get("radius", 1.0))
    n = int(d.get("samples", 256))
    approx = winding.smooth_support_demo(winding.disk_gradient(r, d.get("center", (0.0, 0.0))), n)
    exact = math.pi * r * r
    return {"approx": approx, "exact": exact, "relative_error": abs(approx - exact) / exact}, None


# -- nerves ---------------------------------------------------------------------------


@command("nerve", "nerve of an affine arrangement")
def _nerve(cfg):
    return io.complex_to_json(nerve.nerve(_arrangement(cfg.data))), None


@command("homology", "Betti numbers over Q of a complex or an arrangement's nerve")
def _hom(cfg):
    if isinstance(cfg.data, dict) and "faces" in cfg.data:
        k = io.complex_from_json(cfg.data)
    else:
        k = nerve.nerve(_arrangement(cfg.data))
    return {"betti": nerve.homology_ranks(k)}, None


@command("wedge-check", "Betti numbers of the nerve vs bounded regions of a line arrangement")
def _wedge(cfg):
    x = _arrangement(cfg.data)
    r = nerve.wedge_check(x)
    segs = nerve.clipped_segments(x) if r.core_dim == 0 else []
    picture = svg.segments_svg(segs, winding.complement_regions(segs)) if segs else None
    return r.as_dict(), picture


@command("dominates", "whether the nerve of X1 is a subcomplex of the nerve of X2")
def _dom(cfg):
    x1, x2 = _arrangement(cfg.data, "x1"), _arrangement(cfg.data, "x2")
    return {"dominates": nerve.dominates(x1, x2), "equivalent": nerve.equivalent(x1, x2)}, None


@command("compatible-map", "barycenter images of a map from the nerve of X1 into X2")
def _cmap(cfg):
    x1, x2 = _arrangement(cfg.data, "x1"), _arrangement(cfg.data, "x2")
    try:
        g = nerve.compatible_map(nerve.nerve(x1), x2)
    except nerve.NotDominatedError as e:
        return {"ok": False, "reason": str(e)}, None
    images = [{"face": list(f), "image": io._vec_out(p)} for f, p in sorted(g.images.items(), key=lambda t: (len(t[0]), t[0]))]
    return {"ok": g.verify(), "images": images}, None


@command("compatible-space", "basis of the compatible translations, in offset coordinates")
def _cspace(cfg):
    x = _arrangement(cfg.data)
    return {"offset_dims": x.offset_dims, "basis": [io._vec_out(v) for v in nerve.compatible_space(x)]}, None


@command("integral-fit", "fit the integral of a 1-form over the image of a nerve cycle as a polynomial on Y")
def _ifit(cfg):
    x = _arrangement(cfg.data)
    cyc = _edge_chain(cfg.data.get("cycle"))
    form = [io.polynomial_from_json(f) for f in cfg.data["form"]]
    degree = cfg.data.get("degree")
    r = nerve.integral_F(
        x,
        cyc,
        form,
        cfg.data.get("samples"),
        degree=None if degree is None else int(degree),
        holdout=int(cfg.data.get("holdout", 5)),
        seed=cfg.seed,
    )
    d = r.as_dict()
    d["basis"] = [io._vec_out(v) for v in r.basis]
    d["ok"] = True
    return d, None


# -- bkk --------------------------------------------------------------------------------


@command("newton-polytope", "Newton polytope of each polynomial of a system")
def _newton(cfg):
    return {"polytopes": [io.polytope_to_json(bkk.newton_polytope(p)) for p in io.system_from_json(cfg.data)]}, None


@command("bkk-number", "n! times the mixed volume")
def _bkkn(cfg):
    return {"bkk": bkk.bkk_number(_polytopes(cfg.data))}, None


@command("virtual-bkk", "n! times the mixed volume of numerator minus denominator polytopes")
def _vbkk(cfg):
    pairs = cfg.data.get("pairs") if isinstance(cfg.data, dict) else None
    if not pairs:
        raise io.SchemaError('expected {"pairs": [[<numerator>, <denominator>], ...]}')
    return {"value": bkk.virtual_bkk([(io.polytope_from_json(a), io.polytope_from_json(b)) for a, b in pairs])}, None


@command("sample-system", "random system supported on the lattice points of two polygons")
def _sample(cfg):
    return io.system_to_json(bkk.sample_system(_polytopes(cfg.data), cfg.seed)), None


@command("count-roots", "numeric count of common zeros in the complex torus")
def _count(cfg):
    if isinstance(cfg.data, dict) and "polys" in cfg.data:
        p1, p2 = io.system_from_json(cfg.data)[:2]
        expected = None
    else:
        ps = _polytopes(cfg.data)
        p1, p2 = bkk.sample_system(ps, cfg.seed)
        expected = bkk.bkk_number(ps)
    r = bkk.count_torus_roots_2d(p1, p2, cfg.tol)
    out = {
        "counted": r.count,
        "roots": [[[z.real, z.imag] for z in sol] for sol in r.roots],
        "certificate": r.certificate.as_dict(),
    }
    if expected is not None:
        out["bkk"] = expected
        out["ok"] = r.certificate.reliable and r.count == expected
    elif not r.certificate.reliable:
        out["ok"] = False
    return out, None


@command("harness", "root counts vs BKK numbers over the polygon catalog")
def _harness(cfg):
    d = cfg.data if isinstance(cfg.data, dict) else {}
    seeds = range(cfg.seed, cfg.seed + int(d.get("seeds", 10)))
    return bkk.run_harness(seeds=seeds, tol=cfg.tol).as_dict(), None


# -- driver ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--in", dest="input", metavar="PATH", help="input JSON file ('-' for stdin)")
    src.add_argument("--json", dest="inline", metavar="TEXT", help="inline input JSON")
    common.add_argument("--out", metavar="PATH", help="write result JSON here instead of stdout")
    common.add_argument("--svg", metavar="PATH", help="also write an SVG picture when available")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol-residual", type=float, default=bkk.TOL_RESIDUAL)
    common.add_argument("--tol-torus", type=float, default=bkk.TOL_TORUS)
    common.add_argument("--tol-cluster", type=float, default=bkk.TOL_CLUSTER)

    parser = argparse.ArgumentParser(prog="virtpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help, aliases=ALIASES[name])
    sub.add_parser("suite", parents=[common], help="run the acceptance criteria and print a table")
    return parser


def _canonical(name: str) -> str:
    for k, al in ALIASES.items():
        if name in al:
            return k
    return name


def _emit(obj: dict, out: str | None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load(args) -> Any:
    if args.inline is not None:
        return json.loads(args.inline)
    if args.input is None:
        raise io.SchemaError("no input given (use --in PATH or --json TEXT)")
    if args.input == "-":
        return json.load(sys.stdin)
    with open(args.input) as fh:
        return json.load(fh)


def run(cfg: RunConfig) -> tuple[int, dict, str | None]:
    """Run one subcommand; returns ``(status, result, svg_text)``."""
    handler, _ = COMMANDS[cfg.command]
    result, picture = handler(cfg)
    result = io.jsonable(result)
    status = EXIT_VERDICT if result.get("ok") is False else EXIT_OK
    return status, result, picture


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    tol = bkk.Tolerances(args.tol_residual, args.tol_torus, args.tol_cluster)
    if args.command == "suite":
        from .acceptance import format_table, run_suite

        results = run_suite(tol=tol)
        print(format_table(results))
        if args.out:
            _emit({"criteria": [r.as_dict() for r in results]}, args.out)
        return EXIT_OK if all(r.passed for r in results) else EXIT_VERDICT
    name = _canonical(args.command)
    try:
        cfg = RunConfig(name, _load(args), args.out, args.svg, args.seed, tol)
        status, result, picture = run(cfg)
    except (json.JSONDecodeError, io.SchemaError, geometry.DimensionError, ValueError, KeyError, TypeError, OSError) as e:
        _emit({"error": {"type": type(e).__name__, "message": str(e)}}, args.out)
        return EXIT_INPUT
    except ArithmeticError as e:
        # inconsistent fits and non-integral counts are failed verdicts, not bad input
        _emit({"ok": False, "error": {"type": type(e).__name__, "message": str(e)}}, args.out)
        return EXIT_VERDICT
    _emit(result, args.out)
    if args.svg and picture is not None:
        with open(args.svg, "w") as fh:
            fh.write(picture)
    return status


if __name__ == "__main__":
    sys.exit(main())
