"""Pure-Python search kernel, used when the compiled core is unavailable.

Mirrors ``vbplan._core.Kernel`` step for step (same successor order, same
open-list keys, same budget cadence) so both produce identical plans.  States
are Python ints used as bitsets.
"""

from __future__ import annotations

import heapq
import time

from .heuristics import INF, LMCutEvaluator, RelaxationEvaluator

SOLVED, UNSOLVABLE, TIMEOUT, STATE_LIMIT = 0, 1, 2, 3
H_ADD, H_MAX, H_LMCUT = 0, 1, 2
CHECK_EVERY = 1  # expansions between clock reads; LM-cut makes each one costly


class _Arrays:
    def __init__(self, n_atoms, pre, add, goal):
        self.n_atoms = n_atoms
        self.pre = pre
        self.add = add
        self.goal = frozenset(goal)


class Kernel:
    def __init__(self, n_atoms: int, pre, add, delete, goal):
        self.n_atoms = n_atoms
        self.n_actions = len(pre)
        self.pre, self.add, self.delete = pre, add, delete
        self.pre_mask = [_mask(p) for p in pre]
        self.add_mask = [_mask(a) for a in add]
        self.keep_mask = [~_mask(d) for d in delete]
        self.goal = sorted(goal)
        self.goal_mask = _mask(goal)
        arrays = _Arrays(n_atoms, pre, add, goal)
        self.relaxation = RelaxationEvaluator(arrays)
        self.lm = LMCutEvaluator(arrays)
        self.users = [[] for _ in range(n_atoms)]
        self.achievers = [[] for _ in range(n_atoms)]
        self.deleters = [[] for _ in range(n_atoms)]
        for k in range(self.n_actions):
            for a in pre[k]:
                self.users[a].append(k)
            for a in add[k]:
                self.achievers[a].append(k)
            for a in delete[k]:
                self.deleters[a].append(k)

    def h_add(self, atoms):
        return self.evaluate(atoms, H_ADD)

    def h_max(self, atoms):
        return self.evaluate(atoms, H_MAX)

    def lmcut(self, atoms):
        return self.evaluate(atoms, H_LMCUT)

    def evaluate(self, atoms, heuristic: int):
        if heuristic == H_LMCUT:
            return self.lm(atoms)
        return self.relaxation.evaluate(atoms, heuristic == H_MAX)

    def helpful(self, atoms, heuristic: int = H_ADD):
        return self.relaxation.helpful(atoms, heuristic == H_MAX)

    def stubborn(self, atoms):
        return self._stubborn(_mask(atoms))

    def _stubborn(self, state: int) -> list[int]:
        """Applicable actions of a strong stubborn set in ``state``.

        One set is grown from each unsatisfied goal atom and the one with the
        fewest applicable actions wins (earliest goal on ties).
        """
        best = None
        for g in self.goal:
            if state >> g & 1:
                continue
            cand = self._stubborn_from(state, g)
            if best is None or len(cand) < len(best):
                best = cand
                if not best:
                    break
        return best if best is not None else []

    def _stubborn_from(self, state: int, g: int) -> list[int]:
        achievers = self.achievers
        members = set(achievers[g])
        stack = list(members)
        while stack:
            k = stack.pop()
            missing = [p for p in self.pre[k] if not state >> p & 1]
            if missing:
                # min keeps the first of several equally small candidates
                new = achievers[min(missing, key=lambda p: len(achievers[p]))]
            else:
                new = [j for q in self.delete[k] for j in (*self.users[q], *achievers[q])]
                new += [j for q in (*self.pre[k], *self.add[k]) for j in self.deleters[q]]
            for j in new:
                if j not in members:
                    members.add(j)
                    stack.append(j)
        pre_mask = self.pre_mask
        return sorted(k for k in members if state & pre_mask[k] == pre_mask[k])

    def search(self, init_atoms, astar: bool, heuristic: int, prune: bool, budget: float,
               max_states: int, preferred: bool = False):
        preferred = preferred and not astar and heuristic != H_LMCUT
        pref_ops: list[list[int]] = []

        def evaluate(state):
            if not preferred:
                return self.evaluate(_atoms(state), heuristic)
            hv, helpful = self.relaxation.helpful(_atoms(state), heuristic == H_MAX)
            pref_ops.append(helpful)
            return hv

        pre_mask, add_mask, keep_mask = self.pre_mask, self.add_mask, self.keep_mask
        goal_mask = self.goal_mask
        t0 = time.monotonic()
        init = _mask(init_atoms)
        status, goal_node = UNSOLVABLE, -1
        expansions = evaluations = seq = 0
        states = [init]
        ids = {init: 0}
        parent, op, g = [-1], [-1], [0]
        if not astar and init & goal_mask == goal_mask:
            status, goal_node = SOLVED, 0
        hv = evaluate(init)
        evaluations += 1
        h = [hv]
        expanded = [False]
        open_list: list = []
        pref_list: list = []
        if status != SOLVED and hv != INF:
            heapq.heappush(open_list, ((hv, hv if astar else 0), seq, 0))
            seq += 1
        stop = turn = False
        while status != SOLVED and not stop and (open_list or pref_list):
            use_pref = bool(pref_list) and (turn or not open_list)
            if preferred:
                turn = not turn
            (f, _), _, node = heapq.heappop(pref_list if use_pref else open_list)
            if astar:
                if g[node] + h[node] != f:
                    continue
            elif expanded[node]:
                continue
            expanded[node] = True
            expansions += 1
            if expansions % CHECK_EVERY == 0 and time.monotonic() - t0 > budget:
                status = TIMEOUT
                break
            cur = states[node]
            if astar and cur & goal_mask == goal_mask:
                status, goal_node = SOLVED, node
                break
            gn = g[node] + 1
            if prune:
                ops = self._stubborn(cur)
            else:
                ops = [k for k in range(self.n_actions) if cur & pre_mask[k] == pre_mask[k]]
            helpful = frozenset(pref_ops[node]) if preferred else frozenset()
            for k in ops:
                succ = (cur & keep_mask[k]) | add_mask[k]
                m = ids.get(succ)
                if m is not None:
                    if astar and h[m] != INF and gn < g[m]:
                        g[m], parent[m], op[m] = gn, node, k
                        heapq.heappush(open_list, ((gn + h[m], h[m]), seq, m))
                        seq += 1
                    continue
                if len(states) >= max_states:
                    status, stop = STATE_LIMIT, True
                    break
                m = len(states)
                states.append(succ)
                ids[succ] = m
                parent.append(node)
                op.append(k)
                g.append(gn)
                expanded.append(False)
                if not astar and succ & goal_mask == goal_mask:
                    h.append(0)
                    status, goal_node = SOLVED, m
                    break
                hv = evaluate(succ)
                evaluations += 1
                h.append(hv)
                if hv != INF:
                    key = (gn + hv, hv) if astar else (hv, 0)
                    heapq.heappush(open_list, (key, seq, m))
                    if k in helpful:
                        heapq.heappush(pref_list, (key, seq, m))
                    seq += 1
        plan = []
        if status == SOLVED:
            node = goal_node
            while node > 0:
                plan.append(op[node])
                node = parent[node]
            plan.reverse()
        return status, plan, expansions, evaluations, len(states)


def _mask(atoms) -> int:
    m = 0
    for a in atoms:
        m |= 1 << a
    return m


def _atoms(state: int) -> list[int]:
    out = []
    while state:
        low = state & -state
        out.append(low.bit_length() - 1)
        state ^= low
    return out
