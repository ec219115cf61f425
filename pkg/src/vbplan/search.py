"""Forward state-space solvers.

``S`` is greedy best-first search on h_add with preferred operators; ``O`` is A* with an admissible
heuristic, LM-cut by default or h_max on request.  Both run on a
relevance-pruned projection of the task: only actions that can contribute to
the goal through a chain of preconditions are kept, and states are projected
onto the atoms those actions and the goal mention.  Irrelevant actions can be
dropped from any plan, so this keeps both solvers sound and complete.

Successor generation can further be restricted to strong stubborn sets, a
partial-order reduction that keeps at least one optimal plan reachable.
"""

from __future__ import annotations

import enum
import math
import time
from collections import deque
from dataclasses import dataclass

from . import _backend
from ._pysearch import H_ADD, H_LMCUT, H_MAX, SOLVED, STATE_LIMIT, TIMEOUT
from .ground import GroundTask
from .model import Plan

DEFAULT_BUDGET = 20.0

HEURISTICS = {"hadd": H_ADD, "hmax": H_MAX, "lmcut": H_LMCUT}


class SolverKind(str, enum.Enum):
    S = "S"  # satisficing
    O = "O"  # optimal

    @classmethod
    def parse(cls, value) -> SolverKind:
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValueError(f"solver kind must be S or O, not {value!r}") from None


class Outcome(str, enum.Enum):
    PLAN = "plan"
    UNSOLVABLE = "unsolvable"
    TIMEOUT = "timeout"


@dataclass
class SolveResult:
    outcome: Outcome
    plan: Plan | None = None
    expansions: int = 0
    evaluations: int = 0
    generated: int = 0
    wall_time: float = 0.0
    note: str = ""

    @property
    def solved(self) -> bool:
        return self.outcome is Outcome.PLAN

    @property
    def cost(self) -> float:
        """Plan cost, ``inf`` when unsolvable, ``nan`` on timeout."""
        if self.outcome is Outcome.PLAN:
            return self.plan.cost
        return math.inf if self.outcome is Outcome.UNSOLVABLE else math.nan


@dataclass(frozen=True)
class RelevantTask:
    """Index-form projection of a task onto goal-relevant atoms and actions."""

    actions: tuple[int, ...]  # original action indices
    n_atoms: int
    pre: tuple
    add: tuple
    delete: tuple
    init: tuple[int, ...]
    goal: tuple[int, ...]


def relevant_projection(task: GroundTask) -> RelevantTask:
    achievers: dict[int, list[int]] = {}
    for k, add in enumerate(task.add):
        for a in add:
            achievers.setdefault(a, []).append(k)
    atoms = set(task.goal)
    chosen: set[int] = set()
    queue = deque(task.goal)
    while queue:
        a = queue.popleft()
        for k in achievers.get(a, ()):
            if k in chosen:
                continue
            chosen.add(k)
            for p in task.pre[k]:
                if p not in atoms:
                    atoms.add(p)
                    queue.append(p)
    remap = {a: i for i, a in enumerate(sorted(atoms))}
    kept = tuple(sorted(chosen))

    def project(items):
        return tuple(sorted(remap[a] for a in items if a in remap))

    return RelevantTask(
        actions=kept,
        n_atoms=len(remap),
        pre=tuple(project(task.pre[k]) for k in kept),
        add=tuple(project(task.add[k]) for k in kept),
        delete=tuple(project(task.delete[k]) for k in kept),
        init=project(task.init),
        goal=project(task.goal),
    )


def default_state_limit(backend: str) -> int:
    return 12_000_000 if backend == "compiled" else 2_000_000


def default_heuristic(kind: SolverKind) -> str:
    return "lmcut" if kind is SolverKind.O else "hadd"


def solve(task: GroundTask, kind: SolverKind | str, budget: float = DEFAULT_BUDGET, *,
          backend: str | None = None, max_states: int | None = None,
          heuristic: str | None = None, prune: bool = True,
          preferred: bool = True) -> SolveResult:
    """Solve ``task`` with the satisficing (S) or optimal (O) solver.

    ``heuristic`` overrides the default of the solver kind (``hadd`` for S,
    ``lmcut`` for O); O only accepts the admissible ``hmax`` and ``lmcut``.
    ``prune`` enables stubborn-set pruning.  ``preferred`` lets the greedy
    solver favour successors reached by actions of the relaxed plan; it has no
    effect on O or with LM-cut.

    Unsolvability is proved by exhausting the reachable (pruned) state space or
    by an infinite heuristic value at the initial state.  Running out of time
    or of the state-storage limit yields ``Outcome.TIMEOUT``.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    kind = SolverKind.parse(kind)
    heuristic = heuristic or default_heuristic(kind)
    if heuristic not in HEURISTICS:
        raise ValueError(f"unknown heuristic {heuristic!r}; choose from {sorted(HEURISTICS)}")
    if kind is SolverKind.O and heuristic == "hadd":
        raise ValueError("the optimal solver needs an admissible heuristic (hmax or lmcut)")
    backend = backend or _backend.BACKEND
    t0 = time.perf_counter()
    if task.goal <= task.init:
        return SolveResult(Outcome.PLAN, Plan(), wall_time=time.perf_counter() - t0)
    rel = relevant_projection(task)
    kernel = _backend.kernel_class(backend)(rel.n_atoms, rel.pre, rel.add, rel.delete, rel.goal)
    astar = kind is SolverKind.O
    limit = max_states or default_state_limit(backend)
    status, steps, expansions, evaluations, generated = kernel.search(
        rel.init, astar, HEURISTICS[heuristic], bool(prune), float(budget), limit,
        bool(preferred))
    elapsed = time.perf_counter() - t0
    stats = dict(expansions=expansions, evaluations=evaluations, generated=generated,
                 wall_time=elapsed)
    if status == SOLVED:
        plan = Plan(tuple(task.actions[rel.actions[k]] for k in steps))
        return SolveResult(Outcome.PLAN, plan, **stats)
    if status == TIMEOUT:
        return SolveResult(Outcome.TIMEOUT, note="time budget exhausted", **stats)
    if status == STATE_LIMIT:
        return SolveResult(Outcome.TIMEOUT, note=f"state limit {limit} reached", **stats)
    return SolveResult(Outcome.UNSOLVABLE, **stats)


class StateCapExceeded(RuntimeError):
    pass


def brute_force_optimal(task: GroundTask, state_cap: int = 100_000) -> SolveResult:
    """Breadth-first search over the full, unpruned task; exact for unit costs.

    Independent of the heuristic machinery, for use as a test oracle.  Raises
    :class:`StateCapExceeded` once more than ``state_cap`` states are reached.
    """
    t0 = time.perf_counter()
    init = frozenset(task.init)
    goal = task.goal
    ops = [(frozenset(p), frozenset(a), frozenset(d))
           for p, a, d in zip(task.pre, task.add, task.delete)]
    parent: dict[frozenset, tuple] = {init: None}
    frontier = deque([init])
    found = init if goal <= init else None
    while frontier and found is None:
        state = frontier.popleft()
        for k, (pre, add, dele) in enumerate(ops):
            if not pre <= state:
                continue
            succ = (state - dele) | add
            if succ in parent:
                continue
            parent[succ] = (state, k)
            if len(parent) > state_cap:
                raise StateCapExceeded(f"more than {state_cap} reachable states")
            if goal <= succ:
                found = succ
                break
            frontier.append(succ)
    elapsed = time.perf_counter() - t0
    if found is None:
        return SolveResult(Outcome.UNSOLVABLE, generated=len(parent), wall_time=elapsed)
    steps = []
    while parent[found] is not None:
        found, k = parent[found]
        steps.append(task.actions[k])
    return SolveResult(Outcome.PLAN, Plan(tuple(reversed(steps))), generated=len(parent),
                       wall_time=elapsed)
