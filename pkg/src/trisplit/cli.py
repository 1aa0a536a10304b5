"""Command-line entry point.

Subcommands:

  generate   emit a family tournament (optionally with vertex 0 deleted)
  verify     exhaustively check one level's subset degree cap
  certify    print the recursive bound certificate for one subset
  search     exact max of min-out-degree at one subset size
  split      random balanced-split trials on any even-order digraph
  table      exact gap table as CSV

Data goes to standard output, diagnostics to standard error.  Exit
codes: 0 success or pass, 1 verification failure, 2 usage trouble
(bad flags, unreadable or malformed input, refused budgets).

`--input -` reads the digraph text format from standard input, so
`generate` pipes straight into `search` or `split`.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .certify import actual_min_out_degree, certify_bound
from .construction import (
    DEFAULT_MAX_VERTICES,
    level_params,
    punctured_tournament,
    ternary_tournament,
)
from .digraph import Digraph, VertexSet, read_digraph, write_digraph
from .experiments import gap_table, reference_curves, split_experiment
from .search import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    branch_bound_max,
    enumerate_max,
    verify_bound,
)


def _load_digraph(path: str) -> Digraph:
    if path == "-":
        text = sys.stdin.read()
    else:
        text = Path(path).read_text(encoding="ascii")
    return read_digraph(text)


def _ids_str(vs: VertexSet) -> str:
    return ",".join(str(v) for v in vs.ids()) if len(vs) else "-"


def _parse_id_list(text: str) -> list[int]:
    toks = [t.strip() for t in text.split(",")]
    return [int(t) for t in toks if t]


def _report_lines(pairs) -> str:
    width = max(len(name) for name, _ in pairs)
    return "\n".join(f"{name:<{width}}  {value}" for name, value in pairs)


def _cmd_generate(args) -> int:
    if args.delete_vertex and args.k < 1:
        print("generate: --delete-vertex needs k >= 1", file=sys.stderr)
        return 2
    build = punctured_tournament if args.delete_vertex else ternary_tournament
    digraph = build(args.k, max_vertices=args.max_vertices)
    sys.stdout.write(write_digraph(digraph))
    return 0


def _cmd_verify(args) -> int:
    outcome = verify_bound(args.k, budget=args.budget, threads=args.threads)
    if outcome.passed is None:
        print(
            f"verify: level {args.k} needs {outcome.required} subsets, "
            f"budget allows {args.budget}",
            file=sys.stderr,
        )
        return 2
    r = outcome.report
    print(_report_lines([
        ("level", args.k),
        ("bound", outcome.bound),
        ("exact max", r.best_value),
        ("witness", _ids_str(r.best_set)),
        ("subsets", r.nodes_visited),
        ("elapsed", f"{r.elapsed:.3f}s"),
        ("verdict", "PASS" if outcome.passed else "FAIL"),
    ]))
    return 0 if outcome.passed else 1


def _cmd_certify(args) -> int:
    params = level_params(args.k)
    ids = _parse_id_list(args.set)
    subset = VertexSet.from_ids(ids, params.order)
    bound, cert = certify_bound(args.k, subset)
    cert.replay()
    actual = actual_min_out_degree(args.k, subset)
    print(_report_lines([
        ("level", args.k),
        ("subset", _ids_str(subset)),
        ("size", len(subset)),
        ("bound", bound),
        ("actual", actual),
    ]))
    print("certificate:")
    print(cert.render())
    return 0


def _cmd_search(args) -> int:
    digraph = _load_digraph(args.input)
    if args.engine == "bb":
        report = branch_bound_max(digraph, args.size)
        engine = "bb"
    else:
        report = enumerate_max(
            digraph, args.size,
            budget=args.budget, threads=args.threads, engine=args.engine,
        )
        engine = args.engine
    print(_report_lines([
        ("vertices", digraph.n),
        ("size", args.size),
        ("engine", engine),
        ("best value", report.best_value),
        ("witness", _ids_str(report.best_set)),
        ("visited", report.nodes_visited),
        ("elapsed", f"{report.elapsed:.3f}s"),
    ]))
    print(
        f"RESULT max={report.best_value} set={_ids_str(report.best_set)} "
        f"exact={'true' if report.exact else 'false'} "
        f"visited={report.nodes_visited}"
    )
    return 0


def _cmd_split(args) -> int:
    digraph = _load_digraph(args.input)
    summary = split_experiment(digraph, args.trials, args.seed)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["trial", "seed", "delta_one", "delta_two"])
    for i, t in enumerate(summary.trials):
        writer.writerow([i, t.seed, t.delta_one, t.delta_two])
    print(
        f"split: {args.trials} trials, max delta {summary.max_delta}, "
        f"mean {summary.mean_delta:.4f}",
        file=sys.stderr,
    )
    return 0


def _cmd_table(args) -> int:
    rows = gap_table(args.kmax)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    header = ["k", "n", "s", "bound", "gap_num", "gap_den", "log3_s"]
    if args.curves:
        header += ["ref_log", "ref_sqrt"]
        print("table: reference curves use constant 1, reference shape only",
              file=sys.stderr)
    writer.writerow(header)
    for row in rows:
        rec = [row.k, row.n, row.s, row.bound,
               row.gap_exact.numerator, row.gap_exact.denominator,
               repr(row.log3_s)]
        if args.curves:
            lo, hi = reference_curves(row)
            rec += [repr(lo), repr(hi)]
        writer.writerow(rec)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trisplit",
        description="recursive ternary tournaments: construction, "
                    "subset-degree verification, certificates, splits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a family digraph as text")
    p.add_argument("--k", type=int, required=True, help="recursion level")
    p.add_argument("--delete-vertex", action="store_true",
                   help="delete vertex 0 (the counterexample form)")
    p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES,
                   help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("verify", help="exhaustive subset degree cap check")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="max subsets to visit (default %(default)s)")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("certify", help="recursive bound certificate for a subset")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--set", required=True,
                   help="comma-separated vertex ids (empty string for the empty set)")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("search", help="exact max min-out-degree at one size")
    p.add_argument("--input", required=True, help="digraph file, or - for stdin")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--engine", choices=["auto", "blocks", "gosper", "bb"],
                   default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("split", help="random balanced split trials, CSV out")
    p.add_argument("--input", required=True, help="digraph file, or - for stdin")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("table", help="exact gap table, CSV out")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--curves", action="store_true",
                   help="append shape-only reference curve columns")
    p.set_defaults(func=_cmd_table)

    return parser


def run(argv=None) -> int:
    """Parse and dispatch; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
