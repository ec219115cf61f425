"""View-based planning.

A problem is solved once per view, each view seeing a larger subset of the
predicates.  Between views the plan of the previous view is used to partially
ground the original schemas that the plan used, while schemas that no solver
has seen yet are handed over whole.  Schemas that were available but unused
are not carried forward.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .ground import instantiate
from .model import ActionSchema, Literal, ModelError, Plan, Problem, validate
from .parser import ViewSpec
from .search import DEFAULT_BUDGET, Outcome, SolveResult, SolverKind, solve

COPY_SEPARATOR = "__"


def filter_action(action: ActionSchema, keep: Iterable[str]) -> ActionSchema | None:
    """Restrict ``action`` to predicates in ``keep``.

    Parameters no longer mentioned by any literal are dropped.  Returns ``None``
    when the action has no effect left, i.e. it is removed from the view.
    """
    keep = frozenset(keep)
    pre = tuple(l for l in action.pre if l.predicate in keep)
    add = tuple(l for l in action.add if l.predicate in keep)
    delete = tuple(l for l in action.delete if l.predicate in keep)
    if not add and not delete:
        return None
    if len(pre) == len(action.pre) and len(add) == len(action.add) \
            and len(delete) == len(action.delete):
        return action
    used = set().union(*(l.variables() for l in (*pre, *add, *delete)))
    params = tuple((v, t) for v, t in action.params if v in used)
    return ActionSchema(action.name, params, pre, add, delete,
                        origin=action.origin, binding=action.binding,
                        origin_params=action.origin_params)


def _dedup(actions: Iterable[ActionSchema]) -> tuple[ActionSchema, ...]:
    out, seen = [], set()
    for a in actions:
        key = (a.origin, a.params, frozenset(a.pre), frozenset(a.add), frozenset(a.delete))
        if key not in seen:
            seen.add(key)
            out.append(a)
    return tuple(out)


def filter_problem(problem: Problem, keep: Iterable[str],
                   actions: Sequence[ActionSchema] | None = None) -> Problem:
    """Restrict init, goal and actions of ``problem`` to the predicates in ``keep``.

    ``actions`` defaults to the domain's own schemas.  The view must contain
    every required-group predicate.
    """
    keep = frozenset(keep)
    domain = problem.domain
    missing = domain.group("required") - keep
    if missing:
        raise ModelError(f"view lacks required predicates {sorted(missing)}")
    unknown = keep - domain.predicate_names()
    if unknown:
        raise ModelError(f"view names unknown predicates {sorted(unknown)}")
    source = domain.actions if actions is None else actions
    filtered = _dedup(f for f in (filter_action(a, keep) for a in source) if f is not None)
    return problem.replace(
        domain=domain.with_actions(filtered),
        init=frozenset(a for a in problem.init if a[0] in keep),
        goal=frozenset(a for a in problem.goal if a[0] in keep),
    )


def partially_ground(schema: ActionSchema, binding: Sequence[tuple[str, str]],
                     name: str) -> ActionSchema:
    """Copy the original ``schema`` with the given origin parameters fixed."""
    fixed = dict(binding)
    unknown = set(fixed) - set(schema.param_names)
    if unknown:
        raise ModelError(f"{schema.name}: cannot bind unknown parameters {sorted(unknown)}")

    def sub(lits: tuple[Literal, ...]) -> tuple[Literal, ...]:
        return tuple(l.substitute(fixed) for l in lits)

    return ActionSchema(
        name=name,
        params=tuple((v, t) for v, t in schema.params if v not in fixed),
        pre=sub(schema.pre),
        add=sub(schema.add),
        delete=sub(schema.delete),
        origin=schema.name,
        binding=tuple((v, fixed[v]) for v in schema.param_names if v in fixed),
        origin_params=schema.param_names,
    )


def modify(originals: Sequence[ActionSchema], plan: Plan | Iterable,
           considered: Iterable[str]) -> tuple[ActionSchema, ...]:
    """Build the schemas for the next view.

    Each step of ``plan`` yields a copy of its original schema, ground on the
    parameters the step had in its view (one copy per distinct binding).  Every
    original schema whose name is not in ``considered`` is added whole.
    """
    by_name = {a.name: a for a in originals}
    bindings: dict[str, set[tuple]] = {}
    for step in plan:
        if step.origin not in by_name:
            raise ModelError(f"plan step {step} refers to unknown schema {step.origin!r}")
        bindings.setdefault(step.origin, set()).add(step.binding)
    considered = frozenset(considered)
    out: list[ActionSchema] = []
    for schema in originals:
        if schema.name in bindings:
            for k, binding in enumerate(sorted(bindings[schema.name])):
                out.append(partially_ground(schema, binding,
                                            f"{schema.name}{COPY_SEPARATOR}{k}"))
        elif schema.name not in considered:
            out.append(schema)
    return tuple(out)


@dataclass
class ViewRecord:
    view: int  # 1-based
    kind: SolverKind
    n_predicates: int
    n_schemas: int
    n_ground: int
    result: SolveResult
    wall_time: float

    @property
    def plan(self) -> Plan | None:
        return self.result.plan


@dataclass
class VbpRun:
    records: list[ViewRecord] = field(default_factory=list)
    result: SolveResult = field(default_factory=lambda: SolveResult(Outcome.UNSOLVABLE))
    considered: frozenset[str] = frozenset()
    failed_view: int | None = None
    wall_time: float = 0.0

    @property
    def cost(self) -> float:
        return self.result.cost


def _views_of(views: ViewSpec | Sequence[Iterable[str]]) -> list[frozenset[str]]:
    return [frozenset(v) for v in views]


def run(problem: Problem, views: ViewSpec | Sequence[Iterable[str]], mix: str | Sequence,
        budget: float = DEFAULT_BUDGET, *, backend: str | None = None) -> VbpRun:
    """Solve ``problem`` view by view with the solver kinds listed in ``mix``.

    The required group is added to every view.  A failure in any view ends the
    run with that outcome; there is no backtracking to earlier views.
    """
    views = _views_of(views)
    kinds = [SolverKind.parse(k) for k in mix]
    if len(kinds) != len(views):
        raise ValueError(f"mix {''.join(k.value for k in kinds)!r} has {len(kinds)} "
                         f"entries for {len(views)} views")
    domain = problem.domain
    if views[-1] | domain.group("required") != domain.predicate_names():
        raise ValueError("the final view must contain every predicate")
    required = domain.group("required")
    originals = domain.actions
    current: tuple[ActionSchema, ...] = originals
    considered: set[str] = set()
    out = VbpRun()
    t0 = time.perf_counter()
    for n, (keep, kind) in enumerate(zip(views, kinds), 1):
        t_view = time.perf_counter()
        keep = keep | required
        filtered = filter_problem(problem, keep, current)
        considered |= {a.origin for a in filtered.domain.actions}
        task = instantiate(filtered.domain, filtered)
        result = solve(task, kind, budget, backend=backend)
        out.records.append(ViewRecord(n, kind, len(keep), len(filtered.domain.actions),
                                      len(task.actions), result,
                                      time.perf_counter() - t_view))
        if not result.solved:
            out.result = result
            out.failed_view = n
            break
        if n < len(views):
            current = modify(originals, result.plan, considered)
        else:
            report = validate(problem, result.plan)
            if not report:
                # the last view sees every predicate, so this signals a bug
                raise ModelError(f"final plan failed validation: {report.message}")
            out.result = result
    out.considered = frozenset(considered)
    out.wall_time = time.perf_counter() - t0
    out.result = replace(out.result, wall_time=out.wall_time)
    return out
