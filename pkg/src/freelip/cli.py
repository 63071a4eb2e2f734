"""Command-line front end: ``freelip <command> [files] [options]``.

Every invocation prints one JSON object on stdout. Exit status is 0 on
success, 2 when the input is rejected (the object then has an ``error``
key) and 1 on an internal failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import certificates, io
from .extension import (
    ExtensionError,
    ExtensionProblem,
    coincidence_set,
    forced_pairs,
    forced_set,
    interpolate_extension,
    lower_extension,
    mcshane_lower,
    mcshane_upper,
    upper_extension,
)
from .extremal import face_support_bound, is_extreme_molecule, splitting_witness
from .free import DeLeeuwMeasure, FreeElement, Measure, mass
from .line_lab import cantor_demo, lebesgue_series, snowflake_demo
from .metric import DEFAULT_TOL, FiniteMetricSpace, MetricError
from .monotonicity import check_monotone_lp
from .selftest import selftest
from .transport import TransportError, coupling_to_deleeuw, optimal_coupling, solve


class InputError(Exception):
    """Rejected input; reported with exit status 2."""


# loading ------------------------------------------------------------------


def _read(path: str, exact: bool):
    try:
        return io.read_json(path, exact=exact)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}")


def load_space(path: str, args) -> FiniteMetricSpace:
    data = _read(path, args.exact)
    if isinstance(data, dict) and "space" in data:
        data = data["space"]
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object describing a space")
    space = FiniteMetricSpace.from_json(data, exact=args.exact, tol=args.tol)
    report = space.validate()
    if not report.ok:
        raise InputError(f"{path}: not a metric", report.to_json())
    return space


def _object(path: str, args, key: Optional[str] = None) -> dict:
    data = _read(path, args.exact)
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    if key and key in data and isinstance(data[key], dict):
        return data[key]
    return data


def _index(space: FiniteMetricSpace, x) -> int:
    i = int(x)
    space.check_index(i)
    return i


# commands -------------------------------------------------------------------


def cmd_norm(args) -> dict:
    space = load_space(args.space, args)
    m = FreeElement.from_json(space, _object(args.element, args, "element"))
    sol = solve(m)
    payload = {
        "exact": space.exact,
        "tol": space.tol,
        "space": space,
        "element": m,
        "norm": sol.cost,
        "norming": sol.potential,
        "coupling": sol.coupling,
    }
    cert = certificates.build("norm", payload)
    return {
        "norm": sol.cost,
        "norming": sol.potential,
        "coupling": sol.coupling,
        "certificate": cert,
    }


def cmd_decompose(args) -> dict:
    space = load_space(args.space, args)
    m = FreeElement.from_json(space, _object(args.element, args, "element"))
    sol = solve(m)
    mu = coupling_to_deleeuw(sol.coupling)
    payload = {
        "exact": space.exact,
        "tol": space.tol,
        "space": space,
        "element": m,
        "measure": mu,
        "norm": sol.cost,
        "norming": sol.potential,
    }
    cert = certificates.build("decomposition", payload)
    return {"measure": mu, "mass": mass(mu), "norm": sol.cost, "certificate": cert}


def _pairs_from(data: dict, space):
    """A measure file lists {"x", "y", "w"} records; a bare pair set lists [x, y]."""
    items = data.get("pairs", data.get("E"))
    if items is None:
        raise InputError("expected a 'pairs' list")
    if items and isinstance(items[0], (list, tuple)):
        return None, [(_index(space, x), _index(space, y)) for x, y in items]
    mu = DeLeeuwMeasure.from_json(space, {"pairs": items})
    return mu, mu.pairs()


def cmd_certify(args) -> dict:
    space = load_space(args.space, args)
    mu, pairs = _pairs_from(_object(args.measure, args, "measure"), space)
    cert = check_monotone_lp(space, pairs)
    payload = {
        "exact": space.exact,
        "tol": space.tol,
        "space": space,
        "pairs": [list(p) for p in pairs],
        "certificate": cert,
    }
    if mu is not None:
        payload["measure"] = mu
    out = cert.to_json()
    out["certificate"] = certificates.build("monotonicity", payload)
    return out


def cmd_extend(args) -> dict:
    space = load_space(args.space, args)
    prob = ExtensionProblem.from_json(space, _object(args.problem, args, "problem"))
    S = forced_set(prob)
    payload = {
        "exact": space.exact,
        "tol": space.tol,
        "space": space,
        "problem": prob,
        "forced_set": S.sorted(),
    }
    out = {}
    if args.point is not None:
        x = _index(space, args.point)
        lo, hi = mcshane_lower(prob, x), mcshane_upper(prob, x)
        out.update(point=x, lower=lo, upper=hi, forced=space.eq(lo, hi, 1 + space.diameter()))
    elif args.t is not None:
        t = space.num(args.t)
        out.update(t=t, values=list(interpolate_extension(prob, t)))
    elif args.forced_pairs:
        P = [list(p) for p in sorted(forced_pairs(prob))]
        out["forced_pairs"] = payload["forced_pairs"] = P
    else:
        if not args.forced_set:
            out.update(lower=list(lower_extension(prob)), upper=list(upper_extension(prob)))
        out.update(forced_set=S.sorted(), coincidence_set=coincidence_set(prob).sorted())
    out["certificate"] = certificates.build("extension", payload)
    return out


def cmd_segments(args) -> dict:
    space = load_space(args.space, args)
    if args.pair:
        p, q = (_index(space, v) for v in args.pair)
        pairs = [(p, q)]
    else:
        pairs = [(p, q) for p in range(space.n) for q in range(p + 1, space.n)]
    if args.eps is not None:
        eps = space.num(args.eps)
        segs = {f"{p},{q}": space.segment_eps(p, q, eps).sorted() for p, q in pairs}
    else:
        segs = {f"{p},{q}": space.segment(p, q).sorted() for p, q in pairs}
    return {"segments": segs, "concave": space.is_concave()}


def cmd_extreme(args) -> dict:
    space = load_space(args.space, args)
    x, y = (_index(space, v) for v in args.pair)
    if x == y:
        raise InputError("a molecule needs two distinct points")
    ext = is_extreme_molecule(space, x, y)
    w = splitting_witness(space, x, y)
    payload = {
        "exact": space.exact,
        "tol": space.tol,
        "space": space,
        "pair": [x, y],
        "extreme": ext,
        "segment": space.segment(x, y).sorted(),
        "witness": None if w is None else w[1],
    }
    out = {"pair": [x, y], "extreme": ext, "segment": payload["segment"]}
    if w is not None:
        out["split_point"], out["splitting"] = w
    out["certificate"] = certificates.build("extremality", payload)
    return out


def cmd_face_bound(args) -> dict:
    space = load_space(args.space, args)
    m = FreeElement.from_json(space, _object(args.element, args, "element"))
    bound = face_support_bound(space, m).sorted()
    payload = {"exact": space.exact, "tol": space.tol, "space": space, "element": m, "bound": bound}
    return {"bound": bound, "certificate": certificates.build("extremality", payload)}


def cmd_wasserstein(args) -> dict:
    space = load_space(args.space, args)
    alpha = Measure.from_json(space, _object(args.alpha, args, "measure"))
    beta = Measure.from_json(space, _object(args.beta, args, "measure"))
    sol = optimal_coupling(alpha, beta)
    payload = {
        "exact": space.exact,
        "tol": space.tol,
        "space": space,
        "alpha": alpha,
        "beta": beta,
        "norm": sol.cost,
        "norming": sol.potential,
        "coupling": sol.coupling,
    }
    return {
        "distance": sol.cost,
        "coupling": sol.coupling,
        "potential": sol.potential,
        "certificate": certificates.build("norm", payload),
    }


def _demo(which: str, report, exact: bool) -> dict:
    data = report.to_json()
    payload = {"exact": exact, "demo": which, "report": data}
    return {"report": data, "certificate": certificates.build("demo", payload)}


def cmd_demo_lebesgue(args) -> dict:
    # exact by default: the identities are rational
    return _demo("lebesgue", lebesgue_series(args.depth, exact=True), True)


def cmd_demo_cantor(args) -> dict:
    return _demo("cantor", cantor_demo(args.depth, exact=True), True)


def cmd_demo_snowflake(args) -> dict:
    theta = Fraction(args.theta)
    if not 0 < theta < 1:
        raise InputError("theta must lie in (0, 1)")
    rep = snowflake_demo(args.grid, float(theta), exact=args.exact, seed=args.seed)
    return _demo("snowflake", rep, args.exact)


def cmd_selftest(args) -> dict:
    return selftest(seed=args.seed, n_cases=args.cases, exact=args.exact)


def cmd_verify(args) -> dict:
    data = _read(args.certificate, False)
    if isinstance(data, dict) and "certificate" in data:
        data = data["certificate"]
    if not isinstance(data, dict) or "kind" not in data:
        raise InputError("expected a certificate object with a 'kind'")
    same, checks = certificates.verify(data)
    return {
        "reproduced": same,
        "ok": all(c.passed for c in checks),
        "checks": [c.to_json() for c in checks],
    }


# parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--exact", action="store_true", help="rational arithmetic")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cases", type=int, default=100)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="float-mode tolerance")

    parser = argparse.ArgumentParser(prog="freelip", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("norm", cmd_norm, "free norm and a norming function")
    p.add_argument("space")
    p.add_argument("element")
    p = add("decompose", cmd_decompose, "optimal convex series of molecules")
    p.add_argument("space")
    p.add_argument("element")
    p = add("certify", cmd_certify, "cyclical monotonicity of a measure's support")
    p.add_argument("space")
    p.add_argument("measure")
    p = add("extend", cmd_extend, "McShane extensions and forced sets")
    p.add_argument("space")
    p.add_argument("problem")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--point", type=int)
    g.add_argument("--forced-set", action="store_true")
    g.add_argument("--forced-pairs", action="store_true")
    g.add_argument("--t", type=str, help="interpolation parameter in [0, 1]")
    p = add("segments", cmd_segments, "metric segments")
    p.add_argument("space")
    p.add_argument("--pair", nargs=2, type=int, metavar=("P", "Q"))
    p.add_argument("--eps", type=str)
    p = add("extreme", cmd_extreme, "extremality of a molecule")
    p.add_argument("space")
    p.add_argument("--pair", nargs=2, type=int, required=True, metavar=("X", "Y"))
    p = add("face-bound", cmd_face_bound, "support bound for a face of the unit ball")
    p.add_argument("space")
    p.add_argument("element")
    p = add("wasserstein", cmd_wasserstein, "transport distance between two measures")
    p.add_argument("space")
    p.add_argument("alpha")
    p.add_argument("beta")
    p = add("demo-lebesgue", cmd_demo_lebesgue, "dyadic series for Lebesgue measure")
    p.add_argument("--depth", type=int, default=3)
    p = add("demo-cantor", cmd_demo_cantor, "fat Cantor set truncations")
    p.add_argument("--depth", type=int, default=3)
    p = add("demo-snowflake", cmd_demo_snowflake, "snowflaked grid margins")
    p.add_argument("--grid", type=int, default=10)
    p.add_argument("--theta", type=str, default="1/2")
    add("selftest", cmd_selftest, "randomized cross-validation")
    p = add("verify", cmd_verify, "re-run the checks of a certificate")
    p.add_argument("certificate")
    return parser


def _emit(obj) -> None:
    sys.stdout.write(io.dumps(obj) + "\n")


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage on stderr
        if exc.code == 0:
            return 0
        _emit({"error": "usage", "detail": "invalid command line"})
        return 2
    try:
        result = args.func(args)
    except InputError as exc:
        err = {"error": str(exc.args[0])}
        if len(exc.args) > 1:
            err["validation"] = exc.args[1]
        _emit(err)
        return 2
    except (MetricError, ExtensionError, TransportError, ValueError, KeyError, TypeError, IndexError) as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return 2
    except Exception as exc:  # pragma: no cover - reported, not raised
        _emit({"error": "internal", "detail": f"{type(exc).__name__}: {exc}"})
        return 1
    _emit(result)
    if args.command == "selftest" and not result["ok"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
