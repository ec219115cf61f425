"""Command line: ``vbplan plan | suite | validate | corpus``.

Exit codes: 0 plan found (or valid), 10 unsolvable, 11 timeout, 2 usage or
input error, 1 invalid plan.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench, kitchen, vbp
from ._backend import available_backends
from .ground import instantiate
from .model import ModelError, validate
from .parser import ParseError, parse_domain, parse_plan, parse_problem, parse_views, serialize_plan
from .search import DEFAULT_BUDGET, Outcome, SolverKind, solve

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_UNSOLVABLE, EXIT_TIMEOUT = 0, 1, 2, 10, 11


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load(args):
    domain = parse_domain(_read(args.domain))
    return domain, parse_problem(_read(args.problem), domain)


def cmd_plan(args) -> int:
    domain, problem = _load(args)
    mix = args.mix or ("OSO" if args.views else "S")
    if any(c not in "SOso" for c in mix):
        raise UsageError(f"bad mix {mix!r}: use letters S and O")
    if len(mix) > 1:
        if not args.views:
            raise UsageError(f"mix {mix!r} needs --views")
        views = parse_views(_read(args.views), domain)
        run = vbp.run(problem, views, mix.upper(), args.budget, backend=args.backend)
        result = run.result
        for rec in run.records:
            print(f"view {rec.view} ({rec.kind.value}): {rec.n_ground} ground actions, "
                  f"{rec.result.outcome.value}, {rec.wall_time:.2f}s")
    else:
        task = instantiate(domain, problem)
        result = solve(task, SolverKind.parse(mix), args.budget, backend=args.backend)
    if result.outcome is Outcome.PLAN:
        print(f"plan found: cost {result.plan.cost}, {result.wall_time:.2f}s")
        if args.print_plan:
            sys.stdout.write(serialize_plan(result.plan))
        return EXIT_OK
    if result.outcome is Outcome.UNSOLVABLE:
        print("unsolvable")
        return EXIT_UNSOLVABLE
    print(f"timeout{': ' + result.note if result.note else ''}")
    return EXIT_TIMEOUT


def cmd_suite(args) -> int:
    mixes = [m.strip().upper() for m in args.mixes.split(",") if m.strip()]
    goals = [g.strip() for g in args.goals.split(",")] if args.goals else None

    def progress(rec):
        if args.verbose:
            print(f"goal {rec.goal} {rec.mix}: {bench.format_cost(rec.cost)} "
                  f"({rec.wall_time:.2f}s)", file=sys.stderr)

    try:
        records = bench.run_suite(args.corpus, mixes, args.budget, workers=args.workers,
                                  backend=args.backend, goals=goals, progress=progress)
    except (FileNotFoundError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    table = bench.emit_table(records, args.format)
    if args.out:
        Path(args.out).write_text(table)
    else:
        sys.stdout.write(table)
    sys.stdout.write(bench.summary(records))
    return EXIT_INVALID if any(r.valid is False for r in records) else EXIT_OK


def cmd_validate(args) -> int:
    _, problem = _load(args)
    report = validate(problem, parse_plan(_read(args.plan)))
    print("valid" if report else f"invalid: {report.message}")
    return EXIT_OK if report else EXIT_INVALID


def cmd_corpus(args) -> int:
    goals = args.goals.split(",") if args.goals else kitchen.SUITE_GOALS
    try:
        written = kitchen.emit_corpus(args.out, goals)
    except KeyError as exc:
        raise UsageError(f"unknown goal {exc.args[0]!r}") from None
    print(f"wrote {len(written)} files to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vbplan", description="View-based STRIPS planning.")
    parser.add_argument("--backend", choices=available_backends(), default=None,
                        help="search kernel (default: compiled when built)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="solve one problem, standalone or view by view")
    p.add_argument("--domain", required=True)
    p.add_argument("--problem", required=True)
    p.add_argument("--views", help="view file; required by mixes longer than one letter")
    p.add_argument("--mix", help="S, O, or one letter per view such as OSO")
    p.add_argument("--budget", type=float, default=DEFAULT_BUDGET,
                   help="seconds per standalone solve or per view (default 20)")
    p.add_argument("--print-plan", action="store_true")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("suite", help="run every goal of a corpus under several mixes")
    p.add_argument("--corpus", default=str(kitchen.corpus_dir()))
    p.add_argument("--mixes", default=",".join(bench.DEFAULT_MIXES))
    p.add_argument("--goals", help="comma-separated goal ids, e.g. 3,0+1")
    p.add_argument("--budget", type=float, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "md"), default="csv")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("validate", help="check a plan file against a problem")
    p.add_argument("--domain", required=True)
    p.add_argument("--problem", required=True)
    p.add_argument("--plan", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("corpus", help="write the kitchen corpus to a directory")
    p.add_argument("--out", required=True)
    p.add_argument("--goals")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on usage errors
    if getattr(args, "budget", 1) <= 0:
        parser.error("--budget must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"vbplan: {exc}", file=sys.stderr)
    except (ParseError, ModelError) as exc:
        print(f"vbplan: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
