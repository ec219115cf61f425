"""Experiment harness: every goal of a corpus under every planner mix.

A mix of one letter (``S`` or ``O``) is a standalone solve on the full task;
longer mixes run view-based planning with one solver kind per view.  Costs
follow the usual table convention: ``nan`` when a budget ran out, ``inf`` when
unsolvability was proved.
"""

from __future__ import annotations

import csv
import io
import math
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import kitchen, vbp
from .ground import instantiate
from .model import Plan, Problem, validate
from .parser import ViewSpec, parse_domain, parse_problem, parse_views
from .search import DEFAULT_BUDGET, Outcome, SolveResult, SolverKind, solve

DEFAULT_MIXES = ("S", "O", "SSS", "OOO", "OSO", "SSO")
DOMAIN_FILE = "kitchen.dom"
VIEWS_FILE = "kitchen.views"
_PROBLEM_RE = re.compile(r"goal_([0-9]+(?:_[0-9]+)*)\.prob$")


@dataclass
class ExperimentRecord:
    goal: str
    mix: str
    wall_time: float
    cost: float  # int when solved, nan on timeout, inf when unsolvable
    plan: Plan | None = None
    failed_view: int | None = None
    valid: bool | None = None  # None when there is no plan to check

    @property
    def finished(self) -> bool:
        return not math.isnan(self.cost)


@dataclass
class Corpus:
    directory: Path
    domain_text: str
    views_text: str
    problems: dict[str, str]  # goal id -> problem text


def goal_id_of(path: str | Path) -> str:
    """``goal_0_1.prob`` -> ``0+1``."""
    m = _PROBLEM_RE.search(Path(path).name)
    if not m:
        raise ValueError(f"{path}: not a goal problem file")
    return m.group(1).replace("_", "+")


def _goal_order(goal: str) -> tuple:
    known = list(kitchen.SUITE_GOALS)
    if goal in known:
        return (0, known.index(goal), goal)
    return (1, 0, goal)


def load_corpus(directory: str | Path) -> Corpus:
    directory = Path(directory)
    for name in (DOMAIN_FILE, VIEWS_FILE):
        if not (directory / name).is_file():
            raise FileNotFoundError(f"corpus {directory} lacks {name}")
    problems = {goal_id_of(p): p.read_text() for p in directory.glob("goal_*.prob")}
    if not problems:
        raise FileNotFoundError(f"corpus {directory} holds no goal_*.prob files")
    ordered = dict(sorted(problems.items(), key=lambda kv: _goal_order(kv[0])))
    return Corpus(directory, (directory / DOMAIN_FILE).read_text(),
                  (directory / VIEWS_FILE).read_text(), ordered)


def _cost_of(result: SolveResult) -> float:
    if result.outcome is Outcome.PLAN:
        return result.plan.cost
    return math.inf if result.outcome is Outcome.UNSOLVABLE else math.nan


def run_cell(problem: Problem, views: ViewSpec, goal: str, mix: str,
             budget: float = DEFAULT_BUDGET, backend: str | None = None) -> ExperimentRecord:
    """Solve one (goal, mix) cell and validate any plan on the full problem."""
    t0 = time.perf_counter()
    failed_view = None
    if len(mix) == 1:
        task = instantiate(problem.domain, problem)
        result = solve(task, SolverKind.parse(mix), budget, backend=backend)
    else:
        outcome = vbp.run(problem, views, mix, budget, backend=backend)
        result, failed_view = outcome.result, outcome.failed_view
    elapsed = time.perf_counter() - t0
    valid = bool(validate(problem, result.plan)) if result.plan is not None else None
    return ExperimentRecord(goal, mix, elapsed, _cost_of(result), result.plan,
                            failed_view, valid)


def _cell_job(args) -> ExperimentRecord:
    domain_text, views_text, problem_text, goal, mix, budget, backend = args
    domain = parse_domain(domain_text)
    problem = parse_problem(problem_text, domain)
    return run_cell(problem, parse_views(views_text, domain), goal, mix, budget, backend)


def run_suite(corpus_dir: str | Path, mixes: Sequence[str] = DEFAULT_MIXES,
              budget: float = DEFAULT_BUDGET, *, workers: int = 1,
              backend: str | None = None, goals: Iterable[str] | None = None,
              progress=None) -> list[ExperimentRecord]:
    """Run every (goal, mix) cell of the corpus.

    Cells are independent, so ``workers > 1`` spreads them over processes.
    Records come back grouped by goal, goals ordered by their standalone ``S``
    cost (unfinished and unsolvable last) when ``S`` is among the mixes.
    ``progress`` is called with each finished record.
    """
    corpus = load_corpus(corpus_dir)
    mixes = [m.upper() for m in mixes]
    for m in mixes:
        if not m or any(c not in "SO" for c in m):
            raise ValueError(f"bad mix {m!r}: use letters S and O")
    selected = list(corpus.problems)
    if goals is not None:
        wanted = list(goals)
        missing = [g for g in wanted if g not in corpus.problems]
        if missing:
            raise FileNotFoundError(f"corpus has no problem for goals {missing}")
        selected = [g for g in selected if g in wanted]
    jobs = [(corpus.domain_text, corpus.views_text, corpus.problems[g], g, m, budget, backend)
            for g in selected for m in mixes]
    records: list[ExperimentRecord] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for rec in pool.map(_cell_job, jobs):
                records.append(rec)
                if progress:
                    progress(rec)
    else:
        domain = parse_domain(corpus.domain_text)
        views = parse_views(corpus.views_text, domain)
        parsed = {g: parse_problem(corpus.problems[g], domain) for g in selected}
        for _, _, _, g, m, b, be in jobs:
            rec = run_cell(parsed[g], views, g, m, b, be)
            records.append(rec)
            if progress:
                progress(rec)
    return sort_records(records)


def sort_records(records: Sequence[ExperimentRecord]) -> list[ExperimentRecord]:
    s_cost = {r.goal: r.cost for r in records if r.mix == "S"}

    def key(goal: str):
        c = s_cost.get(goal, math.inf)
        return (math.isnan(c), c if not math.isnan(c) else 0, _goal_order(goal))

    goals = sorted({r.goal for r in records}, key=key)
    rank = {g: i for i, g in enumerate(goals)}
    return sorted(records, key=lambda r: rank[r.goal])  # stable within a goal


# ---------------------------------------------------------------- reporting

def format_cost(cost: float) -> str:
    if math.isnan(cost):
        return "nan"
    if math.isinf(cost):
        return "inf"
    return str(int(cost))


def _pivot(records: Sequence[ExperimentRecord]):
    goals: list[str] = []
    mixes: list[str] = []
    cells: dict[tuple[str, str], ExperimentRecord] = {}
    for r in records:
        if r.goal not in goals:
            goals.append(r.goal)
        if r.mix not in mixes:
            mixes.append(r.mix)
        cells[r.goal, r.mix] = r
    return goals, mixes, cells


def emit_table(records: Sequence[ExperimentRecord], fmt: str = "csv") -> str:
    """Render records as one row per goal with a time and a cost column per mix."""
    if fmt not in ("csv", "md"):
        raise ValueError(f"unknown format {fmt!r}; use 'csv' or 'md'")
    if not records:
        raise ValueError("no records to render")
    goals, mixes, cells = _pivot(records)
    header = ["goal"] + [f"{m}_{what}" for m in mixes for what in ("time", "cost")]
    rows = []
    for g in goals:
        row = [g]
        for m in mixes:
            r = cells.get((g, m))
            row += ["", ""] if r is None else [f"{r.wall_time:.2f}", format_cost(r.cost)]
        rows.append(row)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]

    def line(cells_):
        return "| " + " | ".join(str(c).rjust(w) for c, w in zip(cells_, widths)) + " |"

    out = [line(header), "|" + "|".join("-" * (w + 1) + ":" for w in widths) + "|"]
    out += [line(r) for r in rows]
    return "\n".join(out) + "\n"


def read_table(text: str) -> list[ExperimentRecord]:
    """Parse the CSV written by :func:`emit_table` back into records."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    mixes = [h[:-len("_time")] for h in header[1::2]]
    out = []
    for row in reader:
        for i, m in enumerate(mixes):
            t, c = row[1 + 2 * i], row[2 + 2 * i]
            if t:
                out.append(ExperimentRecord(row[0], m, float(t), float(c)))
    return out


@dataclass
class CostReport:
    violations: list[str] = field(default_factory=list)
    checked: dict[str, int] = field(default_factory=dict)
    degenerate: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        if self.degenerate:
            return ["too few goals to compare orderings"]
        out = [f"{name}: {n} goal(s) compared" for name, n in self.checked.items()]
        out += [f"VIOLATION {v}" for v in self.violations]
        return out


def _same_cost(a: float, b: float) -> bool:
    return a == b or (math.isnan(a) and math.isnan(b))


def compare_costs(records: Sequence[ExperimentRecord]) -> CostReport:
    """Check the expected orderings between mixes.

    a. ``O`` never costs more than ``S`` where both finish.
    b. ``OSO`` and ``SSO`` cost the same on every goal.
    c. ``OSO`` and ``SSO`` finish every goal within budget.
    d. ``OOO`` never costs more than ``SSS`` where both finish.
    """
    goals, _, cells = _pivot(records)
    report = CostReport()
    if len(goals) < 2:
        report.degenerate = True
        return report

    def cost(g, m):
        r = cells.get((g, m))
        return None if r is None else r.cost

    def bounded(name, low, high):
        n = 0
        for g in goals:
            a, b = cost(g, low), cost(g, high)
            if a is None or b is None or math.isnan(a) or math.isnan(b):
                continue
            n += 1
            if a > b:
                report.violations.append(
                    f"({name}) goal {g}: {low} cost {format_cost(a)} > {high} cost {format_cost(b)}")
        report.checked[f"{name} {low} <= {high}"] = n

    bounded("a", "O", "S")
    n = 0
    for g in goals:
        a, b = cost(g, "OSO"), cost(g, "SSO")
        if a is None or b is None:
            continue
        n += 1
        if not _same_cost(a, b):
            report.violations.append(
                f"(b) goal {g}: OSO cost {format_cost(a)} != SSO cost {format_cost(b)}")
    report.checked["b OSO == SSO"] = n
    n = 0
    for g in goals:
        for m in ("OSO", "SSO"):
            c = cost(g, m)
            if c is None:
                continue
            n += 1
            if math.isnan(c):
                report.violations.append(f"(c) goal {g}: {m} ran out of budget")
    report.checked["c OSO/SSO finish"] = n
    bounded("d", "OOO", "SSS")
    return report


def optimal_deltas(records: Sequence[ExperimentRecord],
                   reference: dict[str, int] | None = None) -> dict[str, float]:
    """``O`` cost minus the reference optimum, per reference goal present."""
    reference = kitchen.REFERENCE_OPTIMAL if reference is None else reference
    return {r.goal: r.cost - reference[r.goal] for r in records
            if r.mix == "O" and r.goal in reference}


def summary(records: Sequence[ExperimentRecord]) -> str:
    """Plain-text report: orderings, optimal-cost deltas and plan validity."""
    out = ["orderings:"]
    out += ["  " + line for line in compare_costs(records).lines()]
    deltas = optimal_deltas(records)
    if deltas:
        out.append("optimal cost deltas against the reference:")
        out += [f"  goal {g}: {d:+g}" for g, d in deltas.items()]
    invalid = [f"{r.goal}/{r.mix}" for r in records if r.valid is False]
    out.append("invalid plans: " + (", ".join(invalid) if invalid else "none"))
    return "\n".join(out) + "\n"
