"""Command-line front end.

Subcommands
-----------
inspect    classify a matrix file and print norms and dominance stats
limit      limit matrix of (S + t*P)^{-1} for a graph file, three routes
detbounds  determinant factorization and determinant/adjugate bounds
verify     randomized suite for one inequality family, optional CSV
mle        degree-sequence recovery experiment, optional CSV
explore    seeded random search over a conjectured inequality

Exit codes: 0 all checks passed, 1 a bound was violated or a solver failed,
2 usage or file errors.  Runs are replayable: identical arguments, seeds,
and input files produce identical stdout and CSV bytes.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from . import bounds as bnd
from . import retina as ret
from .matcore import (
    MatrixError,
    SingularMatrixError,
    classify,
    inf_norm,
    inverse_dense,
    load_matrix,
)
from .sform import SForm, sform_inf_norm_inverse
from .graphlimit import (
    BipartiteComponent,
    GraphFormatError,
    analyze_bipartition,
    limit_closed_form,
    limit_inf_norm,
    limit_numeric,
    limit_u_route,
    load_graph,
)


def _fmt(x: float) -> str:
    return format(x, ".12g")


def _print_matrix(entries: np.ndarray) -> None:
    for row in entries:
        print(" ".join(_fmt(v) for v in row))


def _parse_sform(text: str) -> SForm:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"expected 'n,alpha,ell', got {text!r}")
    return SForm(int(parts[0]), float(parts[1]), float(parts[2]))


def _parse_pair(text: str, name: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected '{name}' as 'a,b', got {text!r}")
    return float(parts[0]), float(parts[1])


def _parse_int_pair(text: str, name: str) -> tuple[int, int]:
    a, b = _parse_pair(text, name)
    return int(a), int(b)


def _params_str(params: dict) -> str:
    return ";".join(f"{k}={_fmt(v) if isinstance(v, float) else v}"
                    for k, v in sorted(params.items()))


def _print_report(r: bnd.BoundReport) -> None:
    if not r.applicable:
        print(f"{r.name}: inapplicable ({r.context.get('reason', '?')})")
        return
    status = "holds" if r.holds else "VIOLATED"
    vac = " [vacuous]" if r.vacuous else ""
    print(f"{r.name}: lhs={_fmt(r.lhs)} rhs={_fmt(r.rhs)} "
          f"slack={_fmt(r.slack)} {status}{vac}")


def cmd_inspect(args) -> int:
    J = load_matrix(args.matrix)
    rep = classify(J)
    print(f"matrix: {args.matrix} (n={J.n})")
    kinds = []
    if rep.is_balanced:
        kinds.append("balanced")
    if rep.is_strictly_dominant:
        kinds.append("strictly dominant")
    elif rep.is_dominant:
        kinds.append("dominant")
    if not kinds:
        kinds.append("not diagonally dominant")
    print("classification: " + ", ".join(kinds))
    print("deltas: " + " ".join(_fmt(v) for v in rep.deltas))
    if rep.min_offdiag is None:
        print("off-diagonal: none (n=1)")
    else:
        print(f"ell_hat={_fmt(rep.min_offdiag)} m_hat={_fmt(rep.max_offdiag)} "
              f"delta_hat={_fmt(rep.max_delta)}")
    print(f"inf_norm={_fmt(inf_norm(J))}")
    try:
        inv = inverse_dense(J)
    except SingularMatrixError as exc:
        print(f"inverse: FAILED ({exc})")
        return 1
    inv_norm = inf_norm(inv)
    print(f"inv_inf_norm={_fmt(inv_norm)}")
    print(f"cond_inf={_fmt(inf_norm(J) * inv_norm)}")
    v = bnd.varah_bound(J)
    _print_report(v)
    return 0


def cmd_limit(args) -> int:
    S = _parse_sform(args.sform)
    G = load_graph(args.graph)
    B = analyze_bipartition(G)
    print(f"sform: n={S.n} alpha={_fmt(S.alpha)} ell={_fmt(S.ell)}")
    print(f"graph: {G.n} vertices, {G.num_edges} edges")
    comps = []
    for c in B.components:
        if isinstance(c, BipartiteComponent):
            comps.append(f"bipartite(p={c.p},q={c.q})")
        else:
            comps.append(f"non-bipartite({len(c.vertices)})")
    print(f"bipartition: r={B.r} s={B.s} gamma={_fmt(B.gamma)} d={_fmt(B.d)} "
          f"[{', '.join(comps)}]")
    if args.t is not None:
        mode = f"numeric t={_fmt(args.t)}"
        N = limit_numeric(S, G, args.t)
    elif args.u_route:
        mode = "u-route"
        N = limit_u_route(S, B)
    else:
        mode = "closed-form"
        N = limit_closed_form(S, B)
    print(f"mode: {mode}")
    _print_matrix(N.entries)
    print(f"inf_norm={_fmt(inf_norm(N))}")
    print(f"limit_inf_norm={_fmt(limit_inf_norm(S, B))}")
    print(f"sform_inv_inf_norm={_fmt(sform_inf_norm_inverse(S))}")
    return 0


def cmd_detbounds(args) -> int:
    J = load_matrix(args.matrix)
    rep = classify(J)
    factors, ratio = bnd.block_det_ratio(J)
    print(f"matrix: {args.matrix} (n={J.n})")
    print("factors: " + " ".join(_fmt(f) for f in factors))
    print(f"det_ratio={_fmt(ratio)}")
    print(f"det_ratio_lu={_fmt(bnd.det_ratio_lu(J))}")
    reports = [bnd.det_lower_bound(J, args.ell, args.m)]
    if rep.is_balanced:
        reports.append(bnd.det_upper_bound_balanced(J, args.ell, args.m))
        reports.append(bnd.adjugate_bound(J, args.ell, args.m))
    reports.append(bnd.hadamard_sanity(J))
    failed = False
    for r in reports:
        _print_report(r)
        if r.applicable and not r.holds:
            failed = True
    return 1 if failed else 0


def cmd_verify(args) -> int:
    n_range = _parse_int_pair(args.n_range, "--n-range")
    records = bnd.verify_suite(args.suite, n_range, args.trials, args.seed)
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["suite", "trial", "n", "params", "lhs", "rhs",
                        "slack", "holds", "vacuous"])
            for rec in records:
                r = rec.report
                w.writerow([rec.suite, rec.trial, rec.n, _params_str(rec.params),
                            format(r.lhs, ".17g"), format(r.rhs, ".17g"),
                            format(r.slack, ".17g"), int(r.holds), int(r.vacuous)])
    applicable = [r for r in records if r.report.applicable]
    violated = [r for r in applicable if not r.report.holds]
    vacuous = sum(1 for r in applicable if r.report.vacuous)
    slacks = [r.report.slack for r in applicable if not r.report.vacuous]
    print(f"suite={args.suite} trials={args.trials} n_range={n_range[0]},{n_range[1]} "
          f"seed={args.seed}")
    print(f"reports={len(records)} applicable={len(applicable)} "
          f"violations={len(violated)} vacuous={vacuous}")
    if slacks:
        print(f"min_slack={_fmt(min(slacks))}")
    for r in violated:
        print(f"VIOLATED trial={r.trial} n={r.n} params={_params_str(r.params)} "
              f"lhs={_fmt(r.report.lhs)} rhs={_fmt(r.report.rhs)}")
    return 1 if violated else 0


def cmd_mle(args) -> int:
    theta_range = _parse_pair(args.theta_range, "--theta-range")
    trials, summary = ret.consistency_experiment(
        args.n, args.k, args.trials, theta_range, args.seed)
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["trial", "n", "err_inf", "bound", "within_bound",
                        "residual_inf", "iterations", "converged"])
            for t, r in enumerate(trials):
                w.writerow([t, summary.n, format(r.err_inf, ".17g"),
                            format(r.bound, ".17g"), int(r.within_bound),
                            format(r.residual_inf, ".17g"), r.iterations,
                            int(r.converged)])
    print(f"n={summary.n} k={_fmt(summary.k)} trials={summary.trials} seed={args.seed}")
    print(f"converged={summary.converged} within_bound={summary.within} "
          f"fraction={_fmt(summary.fraction_within)} target={_fmt(summary.target)}")
    print(f"median_err={_fmt(summary.median_err)} bound={_fmt(summary.bound)}")
    failed = summary.converged < summary.trials or not summary.meets_target
    print("result: " + ("FAIL" if failed else "ok"))
    return 1 if failed else 0


def cmd_explore(args) -> int:
    mode = args.conjecture.replace("-", "_")
    ledger = bnd.conjecture_search(mode, args.trials, args.seed)
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["trial", "n", "params", "lhs", "rhs", "slack", "violation"])
            for r in ledger.records:
                w.writerow([r.trial, r.n, _params_str(r.params),
                            format(r.lhs, ".17g"), format(r.rhs, ".17g"),
                            format(r.slack, ".17g"), int(r.violation)])
    print(f"conjecture={args.conjecture} trials={ledger.trials} seed={ledger.seed}")
    print(f"min_slack={_fmt(ledger.min_slack)} violations={len(ledger.violations)}")
    for t in ledger.violations[:20]:
        r = ledger.records[t]
        print(f"FINDING trial={t} n={r.n} params={_params_str(r.params)} "
              f"lhs={_fmt(r.lhs)} rhs={_fmt(r.rhs)} slack={_fmt(r.slack)}")
    # A violation is a finding about the conjecture, not a failed check.
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sddkit", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("inspect", help="classify a matrix file")
    sp.add_argument("--matrix", required=True)
    sp.set_defaults(func=cmd_inspect)

    sp = sub.add_parser("limit", help="limit matrix for a graph file")
    sp.add_argument("--sform", required=True, metavar="n,alpha,ell")
    sp.add_argument("--graph", required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--t", type=float, default=None,
                   help="finite-t numeric inverse instead of the limit")
    g.add_argument("--closed-form", action="store_true",
                   help="closed-form limit (default)")
    g.add_argument("--u-route", action="store_true",
                   help="limit via the column-basis route")
    sp.set_defaults(func=cmd_limit)

    sp = sub.add_parser("detbounds", help="determinant bounds for a matrix file")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--ell", type=float, default=None)
    sp.add_argument("--m", type=float, default=None)
    sp.set_defaults(func=cmd_detbounds)

    sp = sub.add_parser("verify", help="randomized inequality suite")
    sp.add_argument("--suite", required=True, choices=list(bnd.SUITES))
    sp.add_argument("--n-range", default="3,12", metavar="a,b")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--csv", default=None)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("mle", help="degree-sequence recovery experiment")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=float, default=2.0)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--theta-range", default="0.5,2.0", metavar="a,b")
    sp.add_argument("--csv", default=None)
    sp.set_defaults(func=cmd_mle)

    sp = sub.add_parser("explore", help="seeded search over a conjecture")
    sp.add_argument("--conjecture", required=True,
                    choices=["lower-norm", "det-upper"])
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--csv", default=None)
    sp.set_defaults(func=cmd_explore)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SingularMatrixError, bnd.SingularBlockError) as exc:
        print(f"error: solver failed: {exc}", file=sys.stderr)
        return 1
    except (MatrixError, GraphFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
