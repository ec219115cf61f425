import math

import pytest

from conftest import random_tasks
from vbplan import kitchen
from vbplan._backend import available_backends
from vbplan.ground import GroundTask, instantiate
from vbplan.search import (Outcome, SolverKind, StateCapExceeded, brute_force_optimal,
                           relevant_projection, solve)


def reaches_goal(task, plan):
    state = set(task.state_atoms(task.init))
    for step in plan:
        if not step.pre <= state:
            return False
        state = (state - step.delete) | step.add
    return task.state_atoms(task.goal) <= state


def grid(n):
    """An n x n grid walk with a token; large enough to need real search."""
    idx = lambda x, y: x * n + y
    acts = []
    for x in range(n):
        for y in range(n):
            for dx, dy in ((1, 0), (0, 1), (-1, 0), (0, -1)):
                if 0 <= x + dx < n and 0 <= y + dy < n:
                    acts.append(({idx(x, y)}, {idx(x + dx, y + dy)}, {idx(x, y)}))
    return GroundTask.from_strips(n * n, acts, {0}, {n * n - 1})


ORACLE_TASKS = random_tasks(70, seed=3)


@pytest.mark.parametrize("heuristic", ["lmcut", "hmax"])
@pytest.mark.parametrize("prune", [True, False])
def test_optimal_solver_matches_breadth_first_oracle(backend, heuristic, prune):
    for task in ORACLE_TASKS:
        expected = brute_force_optimal(task)
        got = solve(task, "O", backend=backend, heuristic=heuristic, prune=prune)
        assert got.outcome == expected.outcome
        if got.solved:
            assert got.cost == expected.cost
            assert reaches_goal(task, got.plan)


@pytest.mark.parametrize("prune", [True, False])
def test_greedy_solver_is_sound_and_complete_on_small_tasks(backend, prune):
    for task in ORACLE_TASKS:
        expected = brute_force_optimal(task)
        got = solve(task, "S", backend=backend, prune=prune)
        assert got.outcome == expected.outcome
        if got.solved:
            assert got.cost >= expected.cost
            assert reaches_goal(task, got.plan)


@pytest.mark.skipif(len(available_backends()) < 2, reason="compiled kernel not built")
@pytest.mark.parametrize("kind, heuristic", [("S", "hadd"), ("S", "lmcut"), ("O", "lmcut"),
                                             ("O", "hmax")])
def test_backends_search_identically(kind, heuristic):
    for task in random_tasks(60, seed=8) + [grid(5)]:
        a = solve(task, kind, backend="compiled", heuristic=heuristic)
        b = solve(task, kind, backend="python", heuristic=heuristic)
        assert (a.outcome, a.expansions, a.evaluations, a.generated) == \
               (b.outcome, b.expansions, b.evaluations, b.generated)
        if a.solved:
            assert [str(s) for s in a.plan] == [str(s) for s in b.plan]


def test_grid_costs(backend):
    task = grid(6)
    assert solve(task, "O", backend=backend).cost == 10
    s = solve(task, "S", backend=backend)
    assert s.solved and s.cost >= 10


def test_goal_already_true_gives_empty_plan():
    task = GroundTask.from_strips(2, [({0}, {1}, set())], {0, 1}, {1})
    for kind in "SO":
        r = solve(task, kind)
        assert r.solved and r.cost == 0 and len(r.plan) == 0


def test_unsolvable_task_is_proved_unsolvable(backend):
    # the only way to reach p2 consumes p0, which p1 needs
    task = GroundTask.from_strips(3, [({0}, {2}, {0}), ({0}, {1}, {0})], {0}, {1, 2})
    for kind in "SO":
        r = solve(task, kind, backend=backend)
        assert r.outcome is Outcome.UNSOLVABLE and r.cost == math.inf


def test_state_limit_reports_timeout(backend):
    r = solve(grid(8), "O", backend=backend, heuristic="hmax", prune=False, max_states=20)
    assert r.outcome is Outcome.TIMEOUT and math.isnan(r.cost)
    assert "state limit" in r.note


def test_time_budget_is_honoured():
    task = instantiate(kitchen.build_domain(), kitchen.build_problem("0+1"))
    r = solve(task, "O", budget=0.3)
    assert r.outcome is Outcome.TIMEOUT
    assert r.wall_time < 5


def test_argument_checks():
    task = grid(2)
    with pytest.raises(ValueError, match="admissible"):
        solve(task, "O", heuristic="hadd")
    with pytest.raises(ValueError, match="unknown heuristic"):
        solve(task, "S", heuristic="ff")
    with pytest.raises(ValueError, match="positive"):
        solve(task, "S", budget=0)
    with pytest.raises(ValueError, match="S or O"):
        SolverKind.parse("X")
    assert SolverKind.parse("o") is SolverKind.O
    assert SolverKind.parse(SolverKind.S) is SolverKind.S


def test_relevance_projection_drops_unrelated_actions():
    # a1 only reaches p3, which nothing needs
    task = GroundTask.from_strips(4, [({0}, {1}, set()), ({0}, {3}, set()), ({1}, {2}, set())],
                                  {0}, {2})
    rel = relevant_projection(task)
    assert rel.actions == (0, 2)
    assert rel.n_atoms == 3


def test_brute_force_state_cap():
    with pytest.raises(StateCapExceeded):
        brute_force_optimal(grid(6), state_cap=10)


def test_stubborn_sets_prune_independent_actions(backend):
    from vbplan._backend import kernel_class
    # three independent switches, only one of them matters for the goal
    task = GroundTask.from_strips(6, [({0}, {1}, {0}), ({2}, {3}, {2}), ({4}, {5}, {4})],
                                  {0, 2, 4}, {1})
    k = kernel_class(backend)(task.n_atoms, task.pre, task.add, task.delete, task.goal)
    assert k.stubborn([0, 2, 4]) == [0]
    assert solve(task, "O", backend=backend).expansions <= \
        solve(task, "O", backend=backend, prune=False).expansions
