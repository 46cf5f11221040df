"""Command-line entry point: ``proglab <command> ...``.

Every command writes one JSON document to stdout.  Exit status is 0 on
success, 1 when a computation fails (solver, budget) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

from . import behrend, bounds, codim, entropy, oracle, regularize, ring
from .errors import BudgetExceeded, InvalidArgumentError, NoSolutionError, SolverFailure, TooLargeError
from .groups import GroupSpec
from .setfile import read_set, write_set

SCHEMA_VERSION = 1


def _sig(x, digits=6):
    if isinstance(x, float) and math.isfinite(x) and x != 0:
        return float(f"{x:.{digits}g}")
    return x


def _emit(payload: dict, summary: str | None = None) -> int:
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    print(json.dumps(payload, default=_json_default))
    if summary:
        print(summary, file=sys.stderr)
    return 0


def _json_default(obj):
    if isinstance(obj, Fraction):
        return float(obj)
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _floats(text: str) -> list[float]:
    return [float(Fraction(x)) for x in text.split(",") if x.strip()]


def _cmd_bounds(args):
    rep = bounds.headline_constants(args.tol)
    d = rep.to_dict()
    d["constants"] = {k: _sig(v) for k, v in d["constants"].items()}
    for key in ("x0", "gamma_clp", "kappa4", "theta1", "rho1", "bound_c8"):
        d[key] = _sig(d[key])
    return _emit(d, f"bound for C_8^n: {rep.bound_c8:.6f}^n")


def _cmd_solve_c8(args):
    rep = bounds.solve_c8_system(args.tol)
    return _emit(
        {
            "theta1": _sig(rep.theta1),
            "rho1": _sig(rep.rho1),
            "bound": _sig(rep.bound_c8),
            "residuals": rep.residuals,
        }
    )


def _cmd_entropy(args):
    value = entropy.entropy_h(args.k, args.theta)
    return _emit({"k": args.k, "theta": args.theta, "value": value, "argmin_x": entropy.entropy_argmin(args.k, args.theta)})


def _cmd_kappa(args):
    res = entropy.kappa_result(args.k)
    return _emit({"k": args.k, "value": res.value, "argmin_x": res.argmin})


def _cmd_codim(args):
    weights = _floats(args.weights) if args.weights else None
    if weights is not None and len(weights) != args.n:
        raise InvalidArgumentError("--weights needs one entry per variable")
    exact = codim.codim_weighted((args.k,) * args.n, args.theta, weights)
    log2_bound = codim.chernoff_log2_bound_weighted((args.k,) * args.n, args.theta, weights)
    return _emit({"exact": exact, "log2_exact": codim.exact_log2(exact), "log2_bound": log2_bound})


def _cmd_ring_check(args):
    spec = GroupSpec.parse(args.group)
    weights = _floats(args.weights) if args.weights else None
    thetas = _floats(args.thetas)
    subs = [ring.subspace_X(spec, t, weights) for t in thetas]
    rep = ring.verify_zero_product(spec, subs, args.samples, args.seed)
    out = {
        "group": str(spec),
        "thetas": thetas,
        "theta_sum": sum(thetas),
        "samples": rep.samples,
        "all_zero": rep.all_zero,
        "nonzero_count": rep.nonzero_count,
    }
    if rep.counterexample is not None:
        out["counterexample"] = [sorted(f.support) for f in rep.counterexample]
    return _emit(out)


def _cmd_regularize(args):
    spec, A = read_set(args.input)
    part = regularize.partition_by_power(spec, A, args.level)
    sub = regularize.extract_regular(part) if args.level == 1 else regularize.extract_super_regular(part)
    total = part.total_weight
    out = {
        "k": sub.k,
        "size": len(sub.ids),
        "weight": sub.weight,
        "ratio": float(Fraction(sub.weight) / total) if total else 0.0,
        "elements": sorted(sub.ids),
    }
    if args.level == 2:
        out["k_prime"] = sub.k_prime
    return _emit(out)


def _parse_range(text: str) -> range:
    lo, _, hi = text.partition(":")
    return range(int(lo), int(hi or lo) + 1)


def _cmd_behrend(args):
    if args.growth:
        rows = behrend.growth_report(_parse_range(args.growth), args.modulus)
        if args.csv:
            with open(args.csv, "w", newline="") as fh:
                w = csv.DictWriter(fh, fieldnames=["n", "radius2", "count", "ratio"])
                w.writeheader()
                w.writerows(rows)
        return _emit({"modulus": args.modulus, "rows": [{**r, "count": str(r["count"])} for r in rows]})
    if args.dim is None:
        raise InvalidArgumentError("--dim is required unless --growth is given")
    r2 = args.radius2 if args.radius2 is not None else behrend.default_radius2(args.dim, args.modulus)
    sphere = behrend.SphereSpec(args.dim, args.modulus, r2)
    out = {"n": args.dim, "modulus": args.modulus, "radius2": r2}
    if args.count_only:
        out["size"] = behrend.sphere_count(sphere)
        return _emit(out)
    pts = behrend.build_behrend_set(args.dim, args.modulus, r2)
    spec = behrend.group_of(args.dim, args.modulus)
    out["size"] = len(pts)
    if args.verify:
        rep = oracle.verify_ap_free(spec, pts)
        out["ap_free"] = rep.free
        if rep.witness:
            out["witness"] = rep.witness
    if args.emit:
        write_set(args.emit, spec, pts)
        out["emitted"] = args.emit
    return _emit(out, f"{len(pts)} points on the sphere of squared radius {r2}")


def _cmd_oracle(args):
    budget = oracle.SearchBudget(max_nodes=args.budget_nodes, time_limit=args.time_limit,
                                 restarts=args.restarts, seed=args.seed)
    if args.input:
        spec, A = read_set(args.input)
        rep = oracle.verify_ap_free(spec, A)
        out = {"group": str(spec), "size": len(A), "free": rep.free, "elements": sorted(A)}
        if rep.witness:
            out["witness"] = rep.witness
        return _emit(out)
    if not args.group:
        raise InvalidArgumentError("--group or --input is required")
    spec = GroupSpec.parse(args.group)
    if args.greedy:
        res = oracle.r3_greedy(spec, budget, args.forbid_semitrivial)
    else:
        res = oracle.r3_exact(spec, budget, args.forbid_semitrivial)
    return _emit(
        {
            "group": str(spec),
            "size": res.size,
            "exact": res.exact,
            "upper_bound": res.upper_bound,
            "witness": list(res.witness),
        }
    )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="proglab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bounds", help="all headline constants")
    s.add_argument("--tol", type=float, default=1e-12)
    s.set_defaults(func=_cmd_bounds)

    s = sub.add_parser("solve-c8", help="solve the C_8^n optimality system")
    s.add_argument("--tol", type=float, default=1e-12)
    s.set_defaults(func=_cmd_solve_c8)

    s = sub.add_parser("entropy", help="H_k(theta)")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--theta", type=float, required=True)
    s.set_defaults(func=_cmd_entropy)

    s = sub.add_parser("kappa", help="kappa_k")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=_cmd_kappa)

    s = sub.add_parser("codim", help="exact codim X(theta) and its entropy bound")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--theta", type=float, required=True)
    s.add_argument("--weights")
    s.set_defaults(func=_cmd_codim)

    s = sub.add_parser("ring-check", help="sample products of X(theta_i)")
    s.add_argument("--group", required=True)
    s.add_argument("--thetas", required=True, help="comma-separated, e.g. 1/3,1/3,1/3")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--weights")
    s.set_defaults(func=_cmd_ring_check)

    s = sub.add_parser("regularize", help="regular / super-regular subset of a set file")
    s.add_argument("--input", required=True)
    s.add_argument("--level", type=int, choices=(1, 2), default=1)
    s.set_defaults(func=_cmd_regularize)

    s = sub.add_parser("behrend", help="sphere constructions in (Z/4)^n and (Z/8)^n")
    s.add_argument("--modulus", type=int, choices=(4, 8), default=8)
    s.add_argument("--dim", type=int)
    s.add_argument("--radius2", type=int)
    s.add_argument("--emit")
    s.add_argument("--verify", action="store_true")
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--growth", help="N or LO:HI, report counts by dimension")
    s.add_argument("--csv", help="with --growth, also write the table as CSV")
    s.set_defaults(func=_cmd_behrend)

    s = sub.add_parser("oracle", help="r_3 of a small group, or AP check of a set file")
    s.add_argument("--group")
    s.add_argument("--input")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--greedy", action="store_true")
    s.add_argument("--budget-nodes", type=int, default=2_000_000)
    s.add_argument("--time-limit", type=float, default=60.0)
    s.add_argument("--restarts", type=int, default=64)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--forbid-semitrivial", action="store_true")
    s.set_defaults(func=_cmd_oracle)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (SolverFailure, BudgetExceeded, NoSolutionError, TooLargeError) as exc:
        print(f"proglab: {exc}", file=sys.stderr)
        return 1
    except (InvalidArgumentError, ValueError, OSError) as exc:
        print(f"proglab: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
