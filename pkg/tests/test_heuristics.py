import math

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_task, random_tasks
from vbplan._backend import kernel_class
from vbplan.ground import GroundTask
from vbplan.heuristics import INF, RelaxationEvaluator, h_add, h_max, lmcut
from vbplan.search import brute_force_optimal


def chain(n):
    """p0 -> p1 -> ... -> pn, one action per link."""
    return GroundTask.from_strips(n + 1, [({i}, {i + 1}, set()) for i in range(n)], {0}, {n})


def test_values_on_a_chain():
    t = chain(4)
    assert h_add(t) == h_max(t) == lmcut(t) == 4


def test_additive_versus_max_on_independent_goals():
    # two goals, each one step away
    t = GroundTask.from_strips(3, [({0}, {1}, set()), ({0}, {2}, set())], {0}, {1, 2})
    assert h_add(t) == 2
    assert h_max(t) == 1
    assert lmcut(t) == 2


def test_unreachable_goal_is_infinite():
    t = GroundTask.from_strips(3, [({0}, {1}, set())], {0}, {2})
    assert h_add(t) == h_max(t) == lmcut(t) == INF


def test_goal_in_state_is_zero():
    t = chain(3)
    assert h_add(t, {3}) == h_max(t, {0, 3}) == lmcut(t, {3}) == 0


def test_helpful_actions_are_applicable_relaxed_plan_steps():
    t = GroundTask.from_strips(4, [({0}, {1}, set()), ({1}, {2}, set()), ({0}, {3}, set()),
                                   ({0}, {2}, set())], {0}, {2})
    value, helpful = RelaxationEvaluator(t).helpful(t.init)
    assert value == 1 and helpful == [3]


def test_evaluator_buffers_are_reusable():
    t = chain(5)
    ev = RelaxationEvaluator(t)
    assert [ev.h_add({i}) for i in range(6)] == [5, 4, 3, 2, 1, 0]


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_relaxation_invariants(rng):
    task = random_task(rng)
    hmax, hadd, hlm = h_max(task), h_add(task), lmcut(task)
    assert hmax <= hadd
    assert hmax <= hlm
    assert (hmax == INF) == (hadd == INF) == (hlm == INF)
    if task.goal <= task.init:
        assert hmax == hadd == hlm == 0
    else:
        assert hmax > 0 and hadd > 0
    if hmax == INF:
        assert not brute_force_optimal(task).solved


def test_lmcut_and_hmax_are_admissible_on_random_tasks():
    for task in random_tasks(120, seed=11):
        opt = brute_force_optimal(task)
        bound = opt.cost if opt.solved else math.inf
        assert lmcut(task) <= bound
        assert h_max(task) <= bound


@pytest.mark.parametrize("backend", ["compiled", "python"])
def test_kernels_agree_with_reference_functions(backend):
    try:
        cls = kernel_class(backend)
    except RuntimeError:
        pytest.skip("compiled kernel not built")
    for task in random_tasks(80, seed=5):
        k = cls(task.n_atoms, task.pre, task.add, task.delete, task.goal)
        assert k.h_add(task.init) == h_add(task)
        assert k.h_max(task.init) == h_max(task)
        assert k.lmcut(task.init) == lmcut(task)
        assert k.helpful(task.init) == RelaxationEvaluator(task).helpful(task.init)
