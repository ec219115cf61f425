# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled search kernels: relaxation heuristics, A* and greedy best-first.

States are packed bitsets (64 atoms per word) stored contiguously; duplicate
detection uses an open-addressing table over node ids.  Results are identical
to the pure-Python implementation in :mod:`vbplan._pysearch`.
"""

from libcpp.vector cimport vector
from libcpp.utility cimport pair
from libcpp.queue cimport priority_queue
from libc.stdint cimport uint64_t, int64_t
from posix.time cimport clock_gettime, timespec, CLOCK_MONOTONIC

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    INF_COST = 1073741824
    CHECK_EVERY = 1
    # status codes shared with vbplan._pysearch
    SOLVED = 0
    UNSOLVABLE = 1
    TIMEOUT = 2
    STATE_LIMIT = 3
    # heuristic codes
    H_ADD = 0
    H_MAX = 1
    H_LMCUT = 2

ctypedef pair[int, int] IntPair
ctypedef pair[IntPair, pair[int64_t, int]] OpenEntry


cdef inline double _now() noexcept nogil:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return ts.tv_sec + ts.tv_nsec * 1e-9


cdef inline uint64_t _hash(const uint64_t* s, int n) noexcept nogil:
    cdef uint64_t h = 0x9E3779B97F4A7C15ULL
    cdef int i
    for i in range(n):
        h ^= s[i] + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2)
        h = (h ^ (h >> 31)) * 0xBF58476D1CE4E5B9ULL
    return h ^ (h >> 29)


cdef inline bint _has(const uint64_t* s, int a) noexcept nogil:
    return (s[a >> 6] >> (a & 63)) & 1


cdef class Kernel:
    cdef int n_atoms, n_actions, n_words
    cdef vector[int] pre_start, pre_atoms, add_start, add_atoms, del_start, del_atoms
    cdef vector[int] users_start, users, ach_start, ach, dels_start, dels
    cdef vector[int] no_pre, goal, pre_count
    cdef vector[char] is_goal
    cdef vector[int] cost, unsat, acc, sup
    cdef vector[char] done
    # relaxed-plan extraction for preferred operators
    cdef vector[char] rp_seen, rp_action
    cdef vector[int] rp_stack, rp_marked
    # LM-cut: atom n_atoms is the artificial init, n_atoms + 1 the artificial
    # goal; action n_actions is the goal action with cost 0
    cdef vector[int] lm_pre_start, lm_pre, lm_users_start, lm_users, lm_ach_start, lm_ach
    cdef vector[int] lm_cost, lm_hv, lm_unsat, lm_pcf
    cdef vector[char] lm_zone, lm_reached, lm_in_cut
    cdef vector[int] lm_stack, lm_cut
    # stubborn sets
    cdef vector[char] ss_in
    cdef vector[int] ss_stack, ss_members, ss_candidate

    def __init__(self, int n_atoms, pre, add, delete, goal):
        cdef int k, a
        self.n_atoms = n_atoms
        self.n_actions = len(pre)
        self.n_words = max(1, (n_atoms + 63) // 64)
        _csr(pre, self.pre_start, self.pre_atoms)
        _csr(add, self.add_start, self.add_atoms)
        _csr(delete, self.del_start, self.del_atoms)
        users = [[] for _ in range(n_atoms)]
        achievers = [[] for _ in range(n_atoms)]
        deleters = [[] for _ in range(n_atoms)]
        for k in range(self.n_actions):
            self.pre_count.push_back(len(pre[k]))
            if not pre[k]:
                self.no_pre.push_back(k)
            for a in pre[k]:
                users[a].append(k)
            for a in add[k]:
                achievers[a].append(k)
            for a in delete[k]:
                deleters[a].append(k)
        _csr(users, self.users_start, self.users)
        _csr(achievers, self.ach_start, self.ach)
        _csr(deleters, self.dels_start, self.dels)
        self.is_goal.resize(n_atoms, 0)
        for a in sorted(goal):
            self.goal.push_back(a)
            self.is_goal[a] = 1
        self.cost.resize(n_atoms)
        self.sup.resize(n_atoms)
        self.done.resize(n_atoms)
        self.rp_seen.resize(n_atoms, 0)
        self.rp_action.resize(self.n_actions, 0)
        self.unsat.resize(self.n_actions)
        self.acc.resize(self.n_actions)

        lm_pre = [list(p) if len(p) else [n_atoms] for p in pre] + [sorted(goal) or [n_atoms]]
        lm_users = [[] for _ in range(n_atoms + 2)]
        lm_ach = [[] for _ in range(n_atoms + 2)]
        for k, p in enumerate(lm_pre):
            for a in p:
                lm_users[a].append(k)
        for k in range(self.n_actions):
            for a in add[k]:
                lm_ach[a].append(k)
        lm_ach[n_atoms + 1].append(self.n_actions)
        _csr(lm_pre, self.lm_pre_start, self.lm_pre)
        _csr(lm_users, self.lm_users_start, self.lm_users)
        _csr(lm_ach, self.lm_ach_start, self.lm_ach)
        self.lm_cost.resize(self.n_actions + 1)
        self.lm_unsat.resize(self.n_actions + 1)
        self.lm_pcf.resize(self.n_actions + 1)
        self.lm_in_cut.resize(self.n_actions + 1, 0)
        self.lm_hv.resize(n_atoms + 2)
        self.lm_zone.resize(n_atoms + 2)
        self.lm_reached.resize(n_atoms + 2)
        self.ss_in.resize(self.n_actions, 0)

    cdef void _pack(self, atoms, vector[uint64_t]& out):
        cdef int a
        out.assign(self.n_words, 0)
        for a in atoms:
            out[a >> 6] |= (<uint64_t>1) << (a & 63)

    def h_add(self, atoms):
        return self.evaluate(atoms, H_ADD)

    def h_max(self, atoms):
        return self.evaluate(atoms, H_MAX)

    def lmcut(self, atoms):
        return self.evaluate(atoms, H_LMCUT)

    def evaluate(self, atoms, int heuristic):
        cdef vector[uint64_t] s
        self._pack(atoms, s)
        cdef int v = self._heuristic(s.data(), heuristic)
        return float("inf") if v >= INF_COST else v

    def helpful(self, atoms, int heuristic=H_ADD):
        """Heuristic value and the applicable actions of its relaxed plan."""
        cdef vector[uint64_t] s
        self._pack(atoms, s)
        cdef vector[int] out
        cdef int v = self._evaluate(s.data(), heuristic == H_MAX)
        if v < INF_COST:
            self._helpful(out)
        _sort(out)
        return (float("inf") if v >= INF_COST else v), list(out)

    def stubborn(self, atoms):
        """Applicable actions of a strong stubborn set for ``atoms``."""
        cdef vector[uint64_t] s
        self._pack(atoms, s)
        cdef vector[int] out
        self._stubborn(s.data(), out)
        return list(out)

    cdef inline int _heuristic(self, const uint64_t* s, int heuristic) noexcept nogil:
        if heuristic == H_LMCUT:
            return self._lmcut(s)
        return self._evaluate(s, heuristic == H_MAX)

    cdef int _evaluate(self, const uint64_t* s, bint use_max) noexcept nogil:
        cdef int a, k, q, c, v, j, left, p, w, result
        cdef uint64_t word
        cdef priority_queue[IntPair] heap
        cdef IntPair top
        for a in range(self.n_atoms):
            self.cost[a] = INF_COST
            self.sup[a] = -1
            self.done[a] = 0
        for k in range(self.n_actions):
            self.unsat[k] = self.pre_count[k]
            self.acc[k] = 0
        for w in range(self.n_words):
            word = s[w]
            while word:
                a = (w << 6) + __builtin_ctzll(word)
                self.cost[a] = 0
                heap.push(IntPair(0, -a))
                word &= word - 1
        left = 0
        for j in range(<int>self.goal.size()):
            if self.cost[self.goal[j]] != 0:
                left += 1
        if left == 0:
            return 0
        left = <int>self.goal.size()
        for j in range(<int>self.no_pre.size()):
            k = self.no_pre[j]
            for q in range(self.add_start[k], self.add_start[k + 1]):
                a = self.add_atoms[q]
                if self.cost[a] == INF_COST:
                    self.cost[a] = 1
                    self.sup[a] = k
                    heap.push(IntPair(-1, -a))
        while not heap.empty():
            top = heap.top()
            heap.pop()
            c = -top.first
            # atoms are stored negated so ties pop the smallest id first
            p = -top.second
            if self.done[p] or c > self.cost[p]:
                continue
            self.done[p] = 1
            if self.is_goal[p]:
                left -= 1
                if left == 0:
                    break
            for j in range(self.users_start[p], self.users_start[p + 1]):
                k = self.users[j]
                self.unsat[k] -= 1
                if use_max:
                    if c > self.acc[k]:
                        self.acc[k] = c
                else:
                    self.acc[k] += c
                if self.unsat[k] == 0:
                    v = self.acc[k] + 1
                    for q in range(self.add_start[k], self.add_start[k + 1]):
                        a = self.add_atoms[q]
                        if v < self.cost[a]:
                            self.cost[a] = v
                            self.sup[a] = k
                            heap.push(IntPair(-v, -a))
        if left:
            return INF_COST
        result = 0
        for j in range(<int>self.goal.size()):
            v = self.cost[self.goal[j]]
            if use_max:
                if v > result:
                    result = v
            else:
                result += v
        return result

    cdef void _helpful(self, vector[int]& out) noexcept nogil:
        """Applicable supporters in the relaxed plan of the last evaluation.

        Follows best supporters back from the goal; a supporter whose own value
        is 1 has all its preconditions in the evaluated state.
        """
        cdef int j, a, k, q, p
        out.clear()
        self.rp_stack.clear()
        self.rp_marked.clear()
        for j in range(<int>self.goal.size()):
            a = self.goal[j]
            if self.cost[a] > 0 and not self.rp_seen[a]:
                self.rp_seen[a] = 1
                self.rp_stack.push_back(a)
        while not self.rp_stack.empty():
            a = self.rp_stack.back()
            self.rp_stack.pop_back()
            self.rp_marked.push_back(a)
            k = self.sup[a]
            if self.rp_action[k]:
                continue
            self.rp_action[k] = 1
            if self.cost[a] == 1:
                out.push_back(k)
            for q in range(self.pre_start[k], self.pre_start[k + 1]):
                p = self.pre_atoms[q]
                if self.cost[p] > 0 and not self.rp_seen[p]:
                    self.rp_seen[p] = 1
                    self.rp_stack.push_back(p)
        for j in range(<int>self.rp_marked.size()):
            a = self.rp_marked[j]
            self.rp_seen[a] = 0
            self.rp_action[self.sup[a]] = 0

    cdef void _lm_hmax(self, const uint64_t* s) noexcept nogil:
        """h_max of every atom under the current LM-cut action costs."""
        cdef int a, k, j, q, c, p, v, w, best
        cdef int n = self.n_atoms + 2
        cdef uint64_t word
        cdef priority_queue[IntPair] heap
        cdef IntPair top
        for a in range(n):
            self.lm_hv[a] = INF_COST
            self.lm_reached[a] = 0
        for k in range(self.n_actions + 1):
            self.lm_unsat[k] = self.lm_pre_start[k + 1] - self.lm_pre_start[k]
        for w in range(self.n_words):
            word = s[w]
            while word:
                a = (w << 6) + __builtin_ctzll(word)
                self.lm_hv[a] = 0
                heap.push(IntPair(0, a))
                word &= word - 1
        self.lm_hv[self.n_atoms] = 0
        heap.push(IntPair(0, self.n_atoms))
        while not heap.empty():
            top = heap.top()
            heap.pop()
            c = -top.first
            p = top.second
            if self.lm_reached[p] or c > self.lm_hv[p]:
                continue
            self.lm_reached[p] = 1
            for j in range(self.lm_users_start[p], self.lm_users_start[p + 1]):
                k = self.lm_users[j]
                self.lm_unsat[k] -= 1
                if self.lm_unsat[k] == 0:
                    # every precondition is final now; the last one has the max
                    best = self.lm_pre[self.lm_pre_start[k]]
                    for q in range(self.lm_pre_start[k], self.lm_pre_start[k + 1]):
                        if self.lm_hv[self.lm_pre[q]] > self.lm_hv[best]:
                            best = self.lm_pre[q]
                    self.lm_pcf[k] = best
                    v = self.lm_hv[best] + self.lm_cost[k]
                    if k == self.n_actions:
                        if v < self.lm_hv[self.n_atoms + 1]:
                            self.lm_hv[self.n_atoms + 1] = v
                            heap.push(IntPair(-v, self.n_atoms + 1))
                        continue
                    for q in range(self.add_start[k], self.add_start[k + 1]):
                        a = self.add_atoms[q]
                        if v < self.lm_hv[a]:
                            self.lm_hv[a] = v
                            heap.push(IntPair(-v, a))

    cdef int _lmcut(self, const uint64_t* s) noexcept nogil:
        cdef int k, j, q, a, p, m, total = 0
        cdef int G = self.n_atoms + 1
        cdef int n = self.n_atoms + 2
        cdef int w
        cdef uint64_t word
        for k in range(self.n_actions):
            self.lm_cost[k] = 1
        self.lm_cost[self.n_actions] = 0
        while True:
            self._lm_hmax(s)
            if self.lm_hv[G] >= INF_COST:
                return INF_COST
            if self.lm_hv[G] == 0:
                return total
            # goal zone: atoms reaching G through zero-cost justification edges
            for a in range(n):
                self.lm_zone[a] = 0
            self.lm_zone[G] = 1
            self.lm_stack.clear()
            self.lm_stack.push_back(G)
            while not self.lm_stack.empty():
                q = self.lm_stack.back()
                self.lm_stack.pop_back()
                for j in range(self.lm_ach_start[q], self.lm_ach_start[q + 1]):
                    k = self.lm_ach[j]
                    if self.lm_unsat[k] == 0 and self.lm_cost[k] == 0:
                        p = self.lm_pcf[k]
                        if not self.lm_zone[p]:
                            self.lm_zone[p] = 1
                            self.lm_stack.push_back(p)
            # forward from the state, stopping at the goal zone; the edges
            # crossing into the zone form the cut
            for a in range(n):
                self.lm_reached[a] = 0
            self.lm_stack.clear()
            for w in range(self.n_words):
                word = s[w]
                while word:
                    a = (w << 6) + __builtin_ctzll(word)
                    self.lm_reached[a] = 1
                    self.lm_stack.push_back(a)
                    word &= word - 1
            self.lm_reached[self.n_atoms] = 1
            self.lm_stack.push_back(self.n_atoms)
            self.lm_cut.clear()
            while not self.lm_stack.empty():
                p = self.lm_stack.back()
                self.lm_stack.pop_back()
                for j in range(self.lm_users_start[p], self.lm_users_start[p + 1]):
                    k = self.lm_users[j]
                    if self.lm_unsat[k] != 0 or self.lm_pcf[k] != p:
                        continue
                    if k == self.n_actions:
                        if not self.lm_in_cut[k]:
                            self.lm_in_cut[k] = 1
                            self.lm_cut.push_back(k)
                        continue
                    for q in range(self.add_start[k], self.add_start[k + 1]):
                        a = self.add_atoms[q]
                        if self.lm_zone[a]:
                            if not self.lm_in_cut[k]:
                                self.lm_in_cut[k] = 1
                                self.lm_cut.push_back(k)
                        elif not self.lm_reached[a]:
                            self.lm_reached[a] = 1
                            self.lm_stack.push_back(a)
            m = INF_COST
            for j in range(<int>self.lm_cut.size()):
                k = self.lm_cut[j]
                if self.lm_cost[k] < m:
                    m = self.lm_cost[k]
            for j in range(<int>self.lm_cut.size()):
                k = self.lm_cut[j]
                self.lm_cost[k] -= m
                self.lm_in_cut[k] = 0
            total += m

    cdef void _stubborn(self, const uint64_t* s, vector[int]& out) noexcept nogil:
        """Applicable part of the smallest stubborn set over the open goals."""
        cdef int j, g, best = -1
        out.clear()
        for j in range(<int>self.goal.size()):
            g = self.goal[j]
            if _has(s, g):
                continue
            self._stubborn_from(s, g, self.ss_candidate)
            if best < 0 or <int>self.ss_candidate.size() < best:
                best = <int>self.ss_candidate.size()
                out.swap(self.ss_candidate)
                if best == 0:
                    break

    cdef void _stubborn_from(self, const uint64_t* s, int g, vector[int]& out) noexcept nogil:
        cdef int j, k, p, q, n_ach, fewest
        out.clear()
        self.ss_stack.clear()
        self.ss_members.clear()
        self._ss_add(self.ach_start[g], self.ach_start[g + 1], self.ach)
        while not self.ss_stack.empty():
            k = self.ss_stack.back()
            self.ss_stack.pop_back()
            # necessary enabling set: achievers of the missing precondition
            # with the fewest achievers
            p = -1
            fewest = 0
            for j in range(self.pre_start[k], self.pre_start[k + 1]):
                q = self.pre_atoms[j]
                if not _has(s, q):
                    n_ach = self.ach_start[q + 1] - self.ach_start[q]
                    if p < 0 or n_ach < fewest:
                        p = q
                        fewest = n_ach
            if p >= 0:
                self._ss_add(self.ach_start[p], self.ach_start[p + 1], self.ach)
                continue
            # applicable: everything that interferes with k
            for j in range(self.del_start[k], self.del_start[k + 1]):
                q = self.del_atoms[j]
                self._ss_add(self.users_start[q], self.users_start[q + 1], self.users)
                self._ss_add(self.ach_start[q], self.ach_start[q + 1], self.ach)
            for j in range(self.pre_start[k], self.pre_start[k + 1]):
                q = self.pre_atoms[j]
                self._ss_add(self.dels_start[q], self.dels_start[q + 1], self.dels)
            for j in range(self.add_start[k], self.add_start[k + 1]):
                q = self.add_atoms[j]
                self._ss_add(self.dels_start[q], self.dels_start[q + 1], self.dels)
        for j in range(<int>self.ss_members.size()):
            k = self.ss_members[j]
            self.ss_in[k] = 0
            if self._applicable(s, k):
                out.push_back(k)
        _sort(out)

    cdef inline void _ss_add(self, int lo, int hi, vector[int]& items) noexcept nogil:
        cdef int j, k
        for j in range(lo, hi):
            k = items[j]
            if not self.ss_in[k]:
                self.ss_in[k] = 1
                self.ss_members.push_back(k)
                self.ss_stack.push_back(k)

    cdef inline bint _applicable(self, const uint64_t* s, int k) noexcept nogil:
        cdef int j
        for j in range(self.pre_start[k], self.pre_start[k + 1]):
            if not _has(s, self.pre_atoms[j]):
                return False
        return True

    cdef inline bint _goal_reached(self, const uint64_t* s) noexcept nogil:
        cdef int j
        for j in range(<int>self.goal.size()):
            if not _has(s, self.goal[j]):
                return False
        return True

    cdef inline void _successor(self, const uint64_t* s, int k, uint64_t* out) noexcept nogil:
        cdef int j, a
        for j in range(self.n_words):
            out[j] = s[j]
        for j in range(self.del_start[k], self.del_start[k + 1]):
            a = self.del_atoms[j]
            out[a >> 6] &= ~((<uint64_t>1) << (a & 63))
        for j in range(self.add_start[k], self.add_start[k + 1]):
            a = self.add_atoms[j]
            out[a >> 6] |= (<uint64_t>1) << (a & 63)

    def search(self, init_atoms, bint astar, int heuristic, bint prune, double budget,
               int64_t max_states, bint preferred=False):
        """Run A* (``astar``) or greedy best-first search from ``init_atoms``.

        With ``preferred`` (greedy search with h_add or h_max only), successors
        reached by a helpful action also enter a second open list, and the two
        lists are popped in turn.

        Returns ``(status, plan, expansions, evaluations, generated)`` where
        ``plan`` is a list of action indices.
        """
        cdef vector[uint64_t] init
        self._pack(init_atoms, init)
        cdef int status = UNSOLVABLE
        cdef int64_t expansions = 0, evaluations = 0
        cdef int goal_node = -1
        cdef int W = self.n_words
        cdef vector[uint64_t] pool, hashes, cur, succ
        cdef vector[int] parent, op, g, h, table, ops
        cdef priority_queue[OpenEntry] open_list, pref_list
        cdef OpenEntry entry
        cdef vector[char] expanded, is_pref
        cdef vector[int64_t] pref_start
        cdef vector[int] pref_ops, helpful
        cdef bint turn = False, use_pref
        cdef int64_t lo, hi
        cdef int64_t seq = 0
        cdef uint64_t hs, mask
        cdef int node, m, k, hv, gn, f, i, j, n_ops, n_nodes = 0
        cdef size_t slot
        cdef double t0 = _now()
        cdef bint stop = False

        preferred = preferred and not astar and heuristic != H_LMCUT
        cur.resize(W)
        succ.resize(W)
        is_pref.assign(self.n_actions, 0)
        pref_start.push_back(0)
        table.assign(1 << 12, -1)
        mask = (1 << 12) - 1

        with nogil:
            if not astar and self._goal_reached(init.data()):
                status = SOLVED
                goal_node = 0
            # node 0 is the initial state
            for i in range(W):
                pool.push_back(init[i])
            hs = _hash(init.data(), W)
            hashes.push_back(hs)
            table[hs & mask] = 0
            parent.push_back(-1)
            op.push_back(-1)
            g.push_back(0)
            n_nodes = 1
            hv = self._heuristic(init.data(), heuristic)
            evaluations += 1
            h.push_back(hv)
            expanded.push_back(0)
            if preferred and hv < INF_COST:
                self._helpful(helpful)
                for i in range(<int>helpful.size()):
                    pref_ops.push_back(helpful[i])
            pref_start.push_back(pref_ops.size())
            if status != SOLVED and hv < INF_COST:
                open_list.push(OpenEntry(IntPair(-hv, -hv if astar else 0),
                                         pair[int64_t, int](-seq, 0)))
                seq += 1
            while status != SOLVED and not stop and not (open_list.empty() and pref_list.empty()):
                use_pref = not pref_list.empty() and (turn or open_list.empty())
                if preferred:
                    turn = not turn
                if use_pref:
                    entry = pref_list.top()
                    pref_list.pop()
                else:
                    entry = open_list.top()
                    open_list.pop()
                node = entry.second.second
                if astar:
                    f = -entry.first.first
                    if g[node] + h[node] != f:
                        continue
                elif expanded[node]:
                    continue
                expanded[node] = 1
                expansions += 1
                if expansions % CHECK_EVERY == 0 and _now() - t0 > budget:
                    status = TIMEOUT
                    break
                for i in range(W):
                    cur[i] = pool[node * W + i]
                if astar and self._goal_reached(cur.data()):
                    status = SOLVED
                    goal_node = node
                    break
                gn = g[node] + 1
                if prune:
                    self._stubborn(cur.data(), ops)
                else:
                    ops.clear()
                    for k in range(self.n_actions):
                        if self._applicable(cur.data(), k):
                            ops.push_back(k)
                n_ops = <int>ops.size()
                lo = pref_start[node]
                hi = pref_start[node + 1]
                for i in range(lo, hi):
                    is_pref[pref_ops[i]] = 1
                for j in range(n_ops):
                    k = ops[j]
                    self._successor(cur.data(), k, succ.data())
                    hs = _hash(succ.data(), W)
                    slot = hs & mask
                    m = -1
                    while table[slot] >= 0:
                        if hashes[table[slot]] == hs and _same(&pool[table[slot] * W], succ.data(), W):
                            m = table[slot]
                            break
                        slot = (slot + 1) & mask
                    if m >= 0:
                        if astar and h[m] < INF_COST and gn < g[m]:
                            g[m] = gn
                            parent[m] = node
                            op[m] = k
                            open_list.push(OpenEntry(IntPair(-(gn + h[m]), -h[m]),
                                                     pair[int64_t, int](-seq, m)))
                            seq += 1
                        continue
                    if n_nodes >= max_states:
                        status = STATE_LIMIT
                        stop = True
                        break
                    m = n_nodes
                    n_nodes += 1
                    for i in range(W):
                        pool.push_back(succ[i])
                    hashes.push_back(hs)
                    table[slot] = m
                    parent.push_back(node)
                    op.push_back(k)
                    g.push_back(gn)
                    expanded.push_back(0)
                    if 2 * n_nodes > <int>table.size():
                        _grow(table, hashes)
                        mask = table.size() - 1
                    if not astar and self._goal_reached(succ.data()):
                        h.push_back(0)
                        status = SOLVED
                        goal_node = m
                        break
                    hv = self._heuristic(succ.data(), heuristic)
                    evaluations += 1
                    h.push_back(hv)
                    if preferred and hv < INF_COST:
                        self._helpful(helpful)
                        for i in range(<int>helpful.size()):
                            pref_ops.push_back(helpful[i])
                    pref_start.push_back(pref_ops.size())
                    if hv < INF_COST:
                        if astar:
                            open_list.push(OpenEntry(IntPair(-(gn + hv), -hv),
                                                     pair[int64_t, int](-seq, m)))
                        else:
                            open_list.push(OpenEntry(IntPair(-hv, 0),
                                                     pair[int64_t, int](-seq, m)))
                            if is_pref[k]:
                                pref_list.push(OpenEntry(IntPair(-hv, 0),
                                                         pair[int64_t, int](-seq, m)))
                        seq += 1
                for i in range(lo, hi):
                    is_pref[pref_ops[i]] = 0

        plan = []
        if status == SOLVED:
            node = goal_node
            while node > 0:
                plan.append(op[node])
                node = parent[node]
            plan.reverse()
        return status, plan, expansions, evaluations, n_nodes


cdef inline bint _same(const uint64_t* a, const uint64_t* b, int n) noexcept nogil:
    cdef int i
    for i in range(n):
        if a[i] != b[i]:
            return False
    return True


cdef void _sort(vector[int]& v) noexcept nogil:
    # insertion sort; stubborn sets are small
    cdef int i, j, x
    for i in range(1, <int>v.size()):
        x = v[i]
        j = i - 1
        while j >= 0 and v[j] > x:
            v[j + 1] = v[j]
            j -= 1
        v[j + 1] = x


cdef void _grow(vector[int]& table, vector[uint64_t]& hashes) noexcept nogil:
    cdef size_t size = table.size() * 2
    cdef size_t mask = size - 1
    cdef size_t slot
    cdef int node
    table.assign(size, -1)
    for node in range(<int>hashes.size()):
        slot = hashes[node] & mask
        while table[slot] >= 0:
            slot = (slot + 1) & mask
        table[slot] = node


cdef void _csr(lists, vector[int]& start, vector[int]& flat):
    start.clear()
    flat.clear()
    start.push_back(0)
    for items in lists:
        for x in items:
            flat.push_back(x)
        start.push_back(flat.size())
