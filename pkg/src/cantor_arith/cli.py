"""Command line front end.

Every command prints one JSON document (schema ``cantor-arith/1``) except
``alpha1``, which prints CSV.  Fractions are read and written as ``p/q``
strings.  Exit codes: 0 success, 1 usage error, 2 infeasible or out of
interval, 3 resource limit, 4 budget violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import c1_maps, intervals, oracle, parameters, product_solver, sum_solver
from .cantor_model import as_ratio, params
from .errors import (
    BudgetViolation,
    CantorArithError,
    DomainError,
    Infeasible,
    NoSolution,
    OutOfInterval,
    ResourceLimit,
)
from .phi import parse_phi, phi_power
from .serialize import SCHEMA, decomposition_from_json, frac, to_jsonable

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_RESOURCE, EXIT_BUDGET = 0, 1, 2, 3, 4


def _ratio(text: str) -> Fraction:
    try:
        return as_ratio(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact fraction: {text!r}") from exc


def _ratio_list(text: str) -> list:
    """Comma-separated fractions; ``a*n`` repeats a n times."""
    out = []
    for item in text.split(","):
        item = item.strip()
        if "*" in item:
            value, _, count = item.partition("*")
            out.extend([_ratio(value)] * int(count))
        elif item:
            out.append(_ratio(item))
    return out


def _emit(command, inputs, outputs, certificates, start):
    doc = {
        "schema": SCHEMA,
        "command": command,
        "inputs": to_jsonable(inputs),
        "outputs": to_jsonable(outputs),
        "certificates": to_jsonable(certificates),
        "timing": {"seconds": f"{time.perf_counter() - start:.6f}"},
    }
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _interval(iv):
    return {"lo": frac(iv.lo), "hi": frac(iv.hi)}


# --- commands ---------------------------------------------------------------


def cmd_params_sum(args, start):
    if args.phi:
        counts = c1_maps.c1_sum_counts(args.alpha, parse_phi(args.phi))
    else:
        counts = parameters.sum_counts(args.alpha, args.m)
    out = {"s": counts.s, "k": counts.k, "r": counts.r}
    _emit("params-sum", {"alpha": args.alpha, "m": args.m, "phi": args.phi}, out, {}, start)


def cmd_params_product(args, start):
    if args.phi:
        counts = c1_maps.c1_product_params(args.alpha, parse_phi(args.phi))
    else:
        counts = parameters.product_counts(args.alpha)
    certs = {}
    if counts.beta_alpha is not None:
        a1 = parameters.solve_a1(counts.beta_alpha)
        certs["a1"] = {"lo": a1.lo, "hi": a1.hi, "decimal": a1.decimal(15)}
    a0 = parameters.solve_a0()
    certs["a0"] = {"lo": a0.lo, "hi": a0.hi, "decimal": a0.decimal(15)}
    _emit("params-product", {"alpha": args.alpha, "phi": args.phi}, counts, certs, start)


def _family_json(fam):
    return {
        "members": [{"t": t, **_interval(iv)} for t, iv in fam.members],
        "merged": [_interval(iv) for iv in fam.merged],
        "classification": fam.classification.value,
        "total_length": fam.total_length,
        "formula_length": fam.formula_length,
        "inequality_holds": fam.inequality_holds,
        "adjacency_holds": fam.adjacency_holds,
    }


def cmd_interval(args, start):
    which = args.which
    inputs = {k: v for k, v in vars(args).items() if k not in ("func", "command") and v is not None}
    if which == "lemma2":
        out = _interval(intervals.lemma2_interval(args.alpha, args.m))
    elif which == "thm3":
        out = {
            "upper": _family_json(intervals.thm3_family_Iupper(args.alpha, args.m)),
            "lower": _family_json(intervals.thm3_family_Ilower(args.alpha, args.m)),
        }
    elif which == "thm4":
        out = _interval(intervals.thm4_interval(args.alphas, args.betas, args.m, swapped=args.swapped))
    elif which == "thm5":
        out = _interval(intervals.thm5_interval(args.alpha))
    elif which == "thm6":
        first, second = intervals.thm6_intervals(args.alphas, args.betas)
        out = {"first": _interval(first), "second": _interval(second)}
    elif which == "gamma":
        g = intervals.gamma_split_intervals(args.alphas, args.betas)
        out = {
            "intervals": [None if iv is None else _interval(iv) for iv in g.intervals],
            "feasible": list(g.feasible),
            "reasons": list(g.reasons),
            "chi1": g.chi1,
            "chi2": g.chi2,
        }
    elif which == "c1sum":
        out = _interval(c1_maps.c1_sum_interval(args.alpha, parse_phi(args.phi)))
    else:
        out = _interval(c1_maps.c1_product_interval(args.alpha, parse_phi(args.phi)))
    _emit(f"interval {which}", inputs, out, {}, start)


def _tolerance(args, bound_constant, ref_alpha) -> Fraction:
    if args.tol is not None:
        return args.tol
    return bound_constant * params(ref_alpha).eta_minus_pow(args.scale)


def _decompose(args):
    kind = args.kind
    depth = args.depth
    if kind == "sum":
        tol = _tolerance(args, Fraction(args.m), args.alpha)
        return sum_solver.decompose_sum(args.alpha, args.m, args.x, tol, depth)
    if kind == "sum-variant":
        tol = _tolerance(args, Fraction(args.m), args.alpha)
        return sum_solver.decompose_sum_variant(args.alpha, args.m, args.t, args.family, args.x, tol, depth)
    if kind == "mixed-sum":
        tol = _tolerance(args, Fraction(args.m), args.alphas[0])
        return sum_solver.decompose_mixed_sum(args.alphas, args.betas, args.m, args.x, tol, depth)
    if kind == "product":
        tol = _tolerance(args, Fraction(1), args.alpha)
        return product_solver.decompose_product(args.alpha, args.x, tol, depth)
    if kind == "mixed-product":
        tol = _tolerance(args, Fraction(1), args.alphas[0])
        return product_solver.decompose_mixed_product(args.alphas, args.betas, args.x, tol, depth)
    phi = parse_phi(args.phi) if args.phi else phi_power(args.m)
    _, g1 = c1_maps.sum_bounds(args.alpha, phi)
    tol = _tolerance(args, g1, args.alpha)
    return c1_maps.decompose_c1_sum(args.alpha, phi, args.x, tol, depth)


def _certificates(d, report):
    return {
        "status": d.status,
        "residual": d.residual,
        "certified_bound": d.certified_bound,
        "rounds": sum(1 for s in d.trace if s.kind == "round"),
        "final_scale": d.trace[-1].scale,
        "verify": {name: ok for name, (ok, _) in report.checks.items()},
    }


def cmd_decompose(args, start):
    d = _decompose(args)
    report = oracle.verify_decomposition(d)
    inputs = {k: v for k, v in vars(args).items() if k not in ("func", "command") and v is not None}
    _emit(f"decompose {args.kind}", inputs, d, _certificates(d, report), start)


def cmd_verify(args, start):
    if args.what == "coverage":
        target = intervals.RatInterval(args.lo, args.hi)
        alphas = args.alphas if args.alphas else args.alpha
        phi = parse_phi(args.phi) if args.phi else None
        reports = []
        for l in range(1, args.level + 1):
            rep = oracle.coverage_check(target, alphas, l, terms=args.terms, m=args.m, op=args.op, phi=phi)
            reports.append({"level": l, "covered": rep.covered, "uncovered": [_interval(g) for g in rep.uncovered],
                            "final_parts": rep.final_parts})
        out = {"covered": all(r["covered"] for r in reports), "levels": reports}
        inputs = {"lo": args.lo, "hi": args.hi, "alphas": alphas, "terms": args.terms, "m": args.m,
                  "op": args.op, "level": args.level, "phi": args.phi}
        _emit("verify coverage", inputs, out, {}, start)
        return EXIT_OK if out["covered"] else EXIT_INFEASIBLE
    with open(args.input) as fh:
        doc = json.load(fh)
    d = decomposition_from_json(doc["outputs"] if "outputs" in doc else doc)
    rep = oracle.verify_decomposition(d)
    out = {"ok": rep.ok, "checks": {k: {"passed": ok, "detail": det} for k, (ok, det) in rep.checks.items()}}
    _emit("verify decomposition", {"input": args.input}, out, {}, start)
    return EXIT_OK if rep.ok else EXIT_BUDGET


def cmd_alpha1(args, start):
    if args.enclosure:
        enc = parameters.alpha1_of_m(args.m)
        _emit("alpha1", {"m": args.m}, {"alpha1": {"lo": enc.lo, "hi": enc.hi, "decimal": enc.decimal(15)}},
              {"radius": enc.radius}, start)
        return EXIT_OK
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["alpha", "E", "E_decimal", "sign"])
    for a, e, sign in parameters.sign_pattern(args.m, args.grid):
        writer.writerow([frac(a), frac(e), f"{float(e):.12g}", sign])
    return EXIT_OK


def _batch_one(job):
    args_dict, index, x = job
    ns = argparse.Namespace(**args_dict)
    ns.x = x
    try:
        d = _decompose(ns)
    except OutOfInterval as exc:
        return {"index": index, "x": frac(x), "error": f"OutOfInterval: {exc}"}
    rep = oracle.verify_decomposition(d)
    return {"index": index, "x": frac(x), "status": d.status, "certified_bound": frac(d.certified_bound),
            "residual": frac(d.residual), "verified": rep.ok, "failures": rep.failures()}


def _target_interval(args):
    if args.kind == "sum":
        return intervals.lemma2_interval(args.alpha, args.m)
    if args.kind == "product":
        return intervals.thm5_interval(args.alpha)
    if args.kind == "sum-variant":
        fam = (intervals.thm3_family_Iupper if args.family == "upper" else intervals.thm3_family_Ilower)(args.alpha, args.m)
        return fam.member(args.t)
    if args.kind == "mixed-sum":
        return intervals.thm4_interval(args.alphas, args.betas, args.m)
    if args.kind == "mixed-product":
        return intervals.thm6_intervals(args.alphas, args.betas)[1]
    phi = parse_phi(args.phi) if args.phi else phi_power(args.m)
    return c1_maps.c1_sum_interval(args.alpha, phi)


def cmd_batch(args, start):
    target = _target_interval(args)
    rng = random.Random(args.seed)
    den = args.denominator
    xs = [target.lo + target.length * Fraction(rng.randrange(den + 1), den) for _ in range(args.count)]
    base = {k: v for k, v in vars(args).items() if k != "func"}
    jobs = [(base, i, x) for i, x in enumerate(xs)]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            results = list(pool.map(_batch_one, jobs))
    else:
        results = [_batch_one(j) for j in jobs]
    passed = sum(1 for r in results if r.get("verified"))
    inputs = {k: v for k, v in base.items() if k not in ("command",) and v is not None}
    _emit(f"batch {args.kind}", inputs, {"interval": _interval(target), "results": results},
          {"verified": passed, "total": len(results)}, start)
    return EXIT_OK if passed == len(results) else EXIT_BUDGET


# --- parser -----------------------------------------------------------------


def _add_problem_args(p, with_x=True):
    p.add_argument("kind", choices=["sum", "sum-variant", "mixed-sum", "product", "mixed-product", "c1-sum"])
    p.add_argument("--alpha", type=_ratio)
    p.add_argument("--alphas", type=_ratio_list)
    p.add_argument("--betas", type=_ratio_list)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--family", choices=["upper", "lower"], default="upper")
    p.add_argument("--phi")
    if with_x:
        p.add_argument("--x", type=_ratio, required=True)
    tol = p.add_mutually_exclusive_group()
    tol.add_argument("--tol", type=_ratio, help="absolute tolerance p/q")
    tol.add_argument("--scale", type=int, default=30, help="tolerance M*eta_minus**scale (default 30)")
    p.add_argument("--depth", type=int, default=200)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cantor-arith", description="Exact arithmetic on central Cantor sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params-sum", help="term counts s, k, r for sums")
    p.add_argument("--alpha", type=_ratio, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--phi")
    p.set_defaults(func=cmd_params_sum)

    p = sub.add_parser("params-product", help="k, t, s, p and theta for products")
    p.add_argument("--alpha", type=_ratio, required=True)
    p.add_argument("--phi")
    p.set_defaults(func=cmd_params_product)

    p = sub.add_parser("interval", help="certified intervals")
    p.add_argument("which", choices=["lemma2", "thm3", "thm4", "thm5", "thm6", "gamma", "c1sum", "c1prod"])
    p.add_argument("--alpha", type=_ratio)
    p.add_argument("--alphas", type=_ratio_list)
    p.add_argument("--betas", type=_ratio_list)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--phi", default=None)
    p.add_argument("--swapped", action="store_true")
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("decompose", help="decompose x and verify the result")
    _add_problem_args(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="coverage check or decomposition re-check")
    p.add_argument("what", choices=["coverage", "decomposition"])
    p.add_argument("--input", help="JSON written by 'decompose'")
    p.add_argument("--lo", type=_ratio)
    p.add_argument("--hi", type=_ratio)
    p.add_argument("--alpha", type=_ratio)
    p.add_argument("--alphas", type=_ratio_list)
    p.add_argument("--terms", type=int)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--op", choices=["sum", "product"], default="sum")
    p.add_argument("--phi")
    p.add_argument("--level", type=int, default=4)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("alpha1", help="sign table of the adjacency expression as CSV")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--grid", type=int, default=99)
    p.add_argument("--enclosure", action="store_true", help="print the certified alpha_1(m) instead")
    p.set_defaults(func=cmd_alpha1)

    p = sub.add_parser("batch", help="decompose and verify random x in the target interval")
    _add_problem_args(p, with_x=False)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--denominator", type=int, default=10**6)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_batch)
    return parser


def _validate(args, parser):
    kind = getattr(args, "kind", None) or getattr(args, "which", None)
    needs_alpha = {"sum", "sum-variant", "product", "c1-sum", "lemma2", "thm3", "thm5", "c1sum", "c1prod"}
    needs_lists = {"mixed-sum", "mixed-product", "thm4", "thm6", "gamma"}
    if kind in needs_alpha and args.alpha is None:
        parser.error(f"{kind} needs --alpha")
    if kind in needs_lists and (not args.alphas or not args.betas):
        parser.error(f"{kind} needs --alphas and --betas")
    if kind in ("c1sum", "c1prod") and not args.phi:
        parser.error(f"{kind} needs --phi")
    if args.command == "verify":
        if args.what == "decomposition" and not args.input:
            parser.error("verify decomposition needs --input")
        if args.what == "coverage":
            if args.lo is None or args.hi is None:
                parser.error("verify coverage needs --lo and --hi")
            if args.alphas is None and (args.alpha is None or args.terms is None):
                parser.error("verify coverage needs --alphas, or --alpha with --terms")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(args, parser)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    start = time.perf_counter()
    try:
        code = args.func(args, start)
    except (Infeasible, OutOfInterval, NoSolution) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ResourceLimit as exc:
        print(f"error: ResourceLimit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except BudgetViolation as exc:
        print(f"error: BudgetViolation: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, CantorArithError, TypeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if code is None else code


def main() -> None:
    sys.exit(run())
