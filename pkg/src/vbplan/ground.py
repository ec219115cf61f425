"""Grounding of lifted schemas, pruned by delete-relaxed reachability."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .model import ActionSchema, Constant, Domain, GroundAction, Literal, Problem, ground_schema


@dataclass(frozen=True, eq=False)
class GroundTask:
    """A grounded STRIPS task in index form.

    ``atoms`` is the sorted atom universe; actions are ordered by
    ``(schema name, binding)``.  ``pre``/``add``/``delete`` mirror ``actions``
    as tuples of atom indices.  Goal atoms that are never reachable stay in the
    universe without achievers so the goal can still be expressed.
    """

    atoms: tuple
    actions: tuple[GroundAction, ...]
    pre: tuple[tuple[int, ...], ...]
    add: tuple[tuple[int, ...], ...]
    delete: tuple[tuple[int, ...], ...]
    init: frozenset[int]
    goal: frozenset[int]
    problem: Problem | None = None
    index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.index:
            self.index.update({a: i for i, a in enumerate(self.atoms)})

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    def atom_ids(self, atoms: Iterable) -> frozenset[int]:
        return frozenset(self.index[a] for a in atoms)

    def state_atoms(self, state: Iterable[int]) -> frozenset:
        return frozenset(self.atoms[i] for i in state)

    @classmethod
    def from_strips(cls, n_atoms: int, actions: Sequence[tuple], init: Iterable[int],
                    goal: Iterable[int], names: Sequence[str] | None = None) -> GroundTask:
        """Build a propositional task whose atoms are ``("p0",) .. ("pN",)``.

        ``actions`` holds ``(pre, add, delete)`` triples of atom indices.
        """
        atoms = tuple(("p%d" % i,) for i in range(n_atoms))
        # zero-padded names keep lexicographic order equal to numeric order
        width = len(str(max(len(actions) - 1, 0)))
        gas = []
        for k, (pre, add, dele) in enumerate(actions):
            name = names[k] if names else "a%0*d" % (width, k)
            gas.append(GroundAction(name, name, (), frozenset(atoms[i] for i in pre),
                                    frozenset(atoms[i] for i in add),
                                    frozenset(atoms[i] for i in dele)))
        return cls(
            atoms=atoms,
            actions=tuple(gas),
            pre=tuple(tuple(sorted(set(p))) for p, _, _ in actions),
            add=tuple(tuple(sorted(set(a))) for _, a, _ in actions),
            delete=tuple(tuple(sorted(set(d) - set(a))) for _, a, d in actions),
            init=frozenset(init),
            goal=frozenset(goal),
        )


def _order_preconditions(pre: Sequence[Literal], facts: dict) -> list[Literal]:
    remaining = list(pre)
    ordered: list[Literal] = []
    bound: set[str] = set()
    while remaining:
        best = min(remaining, key=lambda l: (-len(l.variables() & bound),
                                             len(facts.get(l.predicate, ())), str(l)))
        remaining.remove(best)
        ordered.append(best)
        bound |= best.variables()
    return ordered


def _matches(schema: ActionSchema, facts: dict, members: dict[str, frozenset[str]],
             by_type: dict[str, list[str]]):
    """Yield parameter tuples whose preconditions all hold in ``facts``."""
    ptype = dict(schema.params)
    pre = _order_preconditions(schema.pre, facts)
    names = schema.param_names

    def rec(i: int, binding: dict):
        if i == len(pre):
            free = [v for v in names if v not in binding]
            for combo in product(*(by_type.get(ptype[v], ()) for v in free)):
                full = dict(binding)
                full.update(zip(free, combo))
                yield tuple(full[v] for v in names)
            return
        lit = pre[i]
        for args in facts.get(lit.predicate, ()):
            new = dict(binding)
            for term, obj in zip(lit.args, args):
                if isinstance(term, Constant):
                    if term.name != obj:
                        break
                    continue
                cur = new.get(term.name)
                if cur is None:
                    if obj not in members.get(ptype[term.name], ()):
                        break
                    new[term.name] = obj
                elif cur != obj:
                    break
            else:
                yield from rec(i + 1, new)

    yield from rec(0, {})


def instantiate(domain: Domain, problem: Problem) -> GroundTask:
    """Ground every schema of ``domain`` over ``problem``'s objects.

    Only groundings whose preconditions are reachable from the initial state in
    the delete relaxation are kept; a fixpoint alternates between matching
    preconditions against the reachable atoms and adding the new effects.
    """
    by_type: dict[str, list[str]] = {}
    all_objects = [o for o, _ in problem.objects]
    for obj, types in problem.objects:
        for t in types:
            by_type.setdefault(t, []).append(obj)
    by_type["object"] = all_objects
    members = {t: frozenset(objs) for t, objs in by_type.items()}

    reach = set(problem.init)
    facts: dict[str, set] = {}
    for atom in reach:
        facts.setdefault(atom[0], set()).add(atom[1:])

    found: dict[tuple, GroundAction] = {}
    # partially grounded copies of one origin may produce the same step twice
    seen: set[tuple] = set()
    changed = True
    while changed:
        changed = False
        new_atoms = []
        for schema in domain.actions:
            for args in _matches(schema, facts, members, by_type):
                key = (schema.name, args)
                if key in found:
                    continue
                ga = ground_schema(schema, dict(zip(schema.param_names, args)))
                found[key] = None
                ident = (ga.origin, ga.binding, ga.pre, ga.add, ga.delete)
                if ident in seen:
                    continue
                seen.add(ident)
                found[key] = ga
                new_atoms.extend(a for a in ga.add if a not in reach)
        for atom in new_atoms:
            if atom not in reach:
                reach.add(atom)
                facts.setdefault(atom[0], set()).add(atom[1:])
                changed = True

    atoms = tuple(sorted(reach | set(problem.goal)))
    index = {a: i for i, a in enumerate(atoms)}
    ordered = [found[k] for k in sorted(found) if found[k] is not None]
    return GroundTask(
        atoms=atoms,
        actions=tuple(ordered),
        pre=tuple(tuple(sorted(index[a] for a in ga.pre)) for ga in ordered),
        add=tuple(tuple(sorted(index[a] for a in ga.add)) for ga in ordered),
        # deleting an atom that can never hold is a no-op
        delete=tuple(tuple(sorted(index[a] for a in ga.delete - ga.add if a in index))
                     for ga in ordered),
        init=frozenset(index[a] for a in problem.init),
        goal=frozenset(index[a] for a in problem.goal),
        problem=problem,
        index=index,
    )


def relaxed_reachable_ids(task: GroundTask, state: Iterable[int] | None = None) -> set[int]:
    reached = set(task.init if state is None else state)
    waiting = [len(p) - sum(1 for a in p if a in reached) for p in task.pre]
    users: dict[int, list[int]] = {}
    for k, pre in enumerate(task.pre):
        for a in pre:
            users.setdefault(a, []).append(k)
    queue = [k for k, w in enumerate(waiting) if w == 0]
    while queue:
        k = queue.pop()
        for a in task.add[k]:
            if a not in reached:
                reached.add(a)
                for j in users.get(a, ()):
                    waiting[j] -= 1
                    if waiting[j] == 0:
                        queue.append(j)
    return reached


def relaxed_reachable_atoms(task: GroundTask) -> frozenset:
    """Least fixpoint of add effects from the initial state, deletes ignored."""
    return task.state_atoms(relaxed_reachable_ids(task))
