"""Delete-relaxation heuristics h_add and h_max.

Both are computed by a generalized Dijkstra over atoms: an action fires once
its last precondition is finalized, its cost being the sum (h_add) or maximum
(h_max) of its precondition costs plus one.  Values are ints, or ``INF`` when
some goal atom is unreachable in the relaxation.
"""

from __future__ import annotations

import heapq
import math
from typing import Iterable

from .ground import GroundTask

INF = math.inf


class RelaxationEvaluator:
    """Precomputed precondition index plus per-search scratch buffers.

    One evaluator belongs to one search; it is not safe to share across
    threads.
    """

    def __init__(self, task: GroundTask, goal: Iterable[int] | None = None):
        self.n_actions = len(task.pre)
        self.pre_count = [len(p) for p in task.pre]
        self.pre = task.pre
        self.add = task.add
        self.users: list[list[int]] = [[] for _ in range(task.n_atoms)]
        for k, pre in enumerate(task.pre):
            for a in pre:
                self.users[a].append(k)
        self.no_pre = [k for k, p in enumerate(task.pre) if not p]
        self.goal = frozenset(task.goal if goal is None else goal)

    def evaluate(self, state: Iterable[int], use_max: bool) -> float:
        return self._run(state, use_max)[0]

    def helpful(self, state: Iterable[int], use_max: bool = False) -> tuple[float, list[int]]:
        """Heuristic value plus the applicable actions of the relaxed plan.

        The relaxed plan follows best supporters back from the goal; those
        supporters whose value is 1 are applicable in ``state`` (preferred
        operators).
        """
        value, cost, sup = self._run(state, use_max)
        if value == INF:
            return value, []
        out: set[int] = set()
        used: set[int] = set()
        stack = [g for g in self.goal if cost[g] > 0]
        seen = set(stack)
        while stack:
            a = stack.pop()
            k = sup[a]
            if k in used:
                continue
            used.add(k)
            if cost[a] == 1:
                out.add(k)
            for p in self.pre[k]:
                if cost[p] > 0 and p not in seen:
                    seen.add(p)
                    stack.append(p)
        return value, sorted(out)

    def _run(self, state: Iterable[int], use_max: bool):
        goal = self.goal
        cost: dict[int, int] = {}
        sup: dict[int, int] = {}
        heap: list[tuple[int, int]] = []
        for a in state:
            cost[a] = 0
            heap.append((0, a))
        if goal <= cost.keys():
            return 0, cost, sup
        heapq.heapify(heap)
        unsat = self.pre_count[:]
        acc = [0] * self.n_actions
        for k in self.no_pre:
            for q in self.add[k]:
                if q not in cost:
                    cost[q] = 1
                    sup[q] = k
                    heapq.heappush(heap, (1, q))
        done: set[int] = set()
        left = len(goal)
        users, add = self.users, self.add
        while heap:
            c, p = heapq.heappop(heap)
            if p in done or c > cost[p]:
                continue
            done.add(p)
            if p in goal:
                left -= 1
                if left == 0:
                    break
            for k in users[p]:
                unsat[k] -= 1
                if use_max:
                    if c > acc[k]:
                        acc[k] = c
                else:
                    acc[k] += c
                if unsat[k] == 0:
                    v = acc[k] + 1
                    for q in add[k]:
                        if v < cost.get(q, v + 1):
                            cost[q] = v
                            sup[q] = k
                            heapq.heappush(heap, (v, q))
        if left:
            return INF, cost, sup
        vals = [cost[g] for g in goal]
        return (max(vals) if use_max else sum(vals)), cost, sup

    def h_add(self, state: Iterable[int]) -> float:
        return self.evaluate(state, False)

    def h_max(self, state: Iterable[int]) -> float:
        return self.evaluate(state, True)


def h_add(task: GroundTask, state: Iterable[int] | None = None) -> float:
    """Additive relaxed cost of the goal from ``state`` (atom ids; default init)."""
    return RelaxationEvaluator(task).h_add(task.init if state is None else state)


def h_max(task: GroundTask, state: Iterable[int] | None = None) -> float:
    """Admissible max-cost relaxation estimate from ``state`` (atom ids; default init)."""
    return RelaxationEvaluator(task).h_max(task.init if state is None else state)


class LMCutEvaluator:
    """LM-cut: repeatedly find a cut of the h_max justification graph.

    Each cut is a disjunctive action landmark; its minimum remaining cost is
    added to the estimate and subtracted from the cut's actions.  Admissible
    and never below h_max.  Unit action costs are assumed.
    """

    def __init__(self, task: GroundTask):
        n = task.n_atoms
        self.init_atom, self.goal_atom = n, n + 1
        self.n_actions = len(task.pre)
        # the extra last action turns the goal into the single atom goal_atom
        self.pre = [tuple(p) if p else (n,) for p in task.pre] + [tuple(sorted(task.goal)) or (n,)]
        self.add = [tuple(a) for a in task.add] + [(n + 1,)]
        self.users: list[list[int]] = [[] for _ in range(n + 2)]
        self.achievers: list[list[int]] = [[] for _ in range(n + 2)]
        for k, pre in enumerate(self.pre):
            for a in pre:
                self.users[a].append(k)
            for a in self.add[k]:
                self.achievers[a].append(k)

    def _hmax(self, state, cost):
        n = len(self.users)
        hv = [INF] * n
        done = [False] * n
        unsat = [len(p) for p in self.pre]
        pcf = [-1] * len(self.pre)
        heap = [(0, a) for a in state]
        heap.append((0, self.init_atom))
        for _, a in heap:
            hv[a] = 0
        heapq.heapify(heap)
        while heap:
            c, p = heapq.heappop(heap)
            if done[p] or c > hv[p]:
                continue
            done[p] = True
            for k in self.users[p]:
                unsat[k] -= 1
                if unsat[k] == 0:
                    pre = self.pre[k]
                    best = pre[0]
                    for q in pre:
                        if hv[q] > hv[best]:
                            best = q
                    pcf[k] = best
                    v = hv[best] + cost[k]
                    for q in self.add[k]:
                        if v < hv[q]:
                            hv[q] = v
                            heapq.heappush(heap, (v, q))
        return hv, pcf

    def __call__(self, state: Iterable[int]) -> float:
        state = list(state)
        cost = [1] * self.n_actions + [0]
        total = 0
        while True:
            hv, pcf = self._hmax(state, cost)
            if hv[self.goal_atom] == INF:
                return INF
            if hv[self.goal_atom] == 0:
                return total
            zone = {self.goal_atom}
            stack = [self.goal_atom]
            while stack:
                q = stack.pop()
                for k in self.achievers[q]:
                    if pcf[k] >= 0 and cost[k] == 0 and pcf[k] not in zone:
                        zone.add(pcf[k])
                        stack.append(pcf[k])
            reached = set(state)
            reached.add(self.init_atom)
            stack = list(reached)
            cut = set()
            while stack:
                p = stack.pop()
                for k in self.users[p]:
                    if pcf[k] != p:
                        continue
                    for q in self.add[k]:
                        if q in zone:
                            cut.add(k)
                        elif q not in reached:
                            reached.add(q)
                            stack.append(q)
            m = min(cost[k] for k in cut)
            for k in cut:
                cost[k] -= m
            total += m


def lmcut(task: GroundTask, state: Iterable[int] | None = None) -> float:
    """LM-cut estimate from ``state`` (atom ids; default init)."""
    return LMCutEvaluator(task)(task.init if state is None else state)
