"""Core STRIPS representation: predicates, lifted and ground actions, plans.

Ground atoms are plain tuples ``(predicate, arg1, arg2, ...)``; they hash fast
and print naturally.  Lifted literals use :class:`Literal` over :class:`Variable`
and :class:`Constant` terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

GROUPS = ("required", "elementary", "spatial", "device")
GROUP_SYMBOLS = {"R": "required", "E": "elementary", "S": "spatial", "D": "device"}

Atom = tuple  # (predicate, *objects)


def format_atom(atom: Atom) -> str:
    return "(" + " ".join(atom) + ")"


class ModelError(ValueError):
    """Raised when a planning structure violates a well-formedness rule."""


@dataclass(frozen=True)
class PredicateSchema:
    name: str
    param_types: tuple[str, ...]
    group: str
    family: str = ""

    def __post_init__(self):
        if self.group not in GROUPS:
            raise ModelError(f"predicate {self.name}: unknown group {self.group!r}")

    @property
    def arity(self) -> int:
        return len(self.param_types)


@dataclass(frozen=True)
class Variable:
    name: str  # without the leading '?'

    def __str__(self):
        return "?" + self.name


@dataclass(frozen=True)
class Constant:
    name: str

    def __str__(self):
        return self.name


Term = Union[Variable, Constant]


@dataclass(frozen=True)
class Literal:
    predicate: str
    args: tuple[Term, ...]
    negated: bool = False

    def __str__(self):
        inner = "(" + " ".join([self.predicate, *map(str, self.args)]) + ")"
        return f"(not {inner})" if self.negated else inner

    def variables(self) -> set[str]:
        return {t.name for t in self.args if isinstance(t, Variable)}

    def substitute(self, binding: Mapping[str, str]) -> Literal:
        args = tuple(
            Constant(binding[t.name]) if isinstance(t, Variable) and t.name in binding else t
            for t in self.args
        )
        return Literal(self.predicate, args, self.negated)

    def ground(self, binding: Mapping[str, str]) -> Atom:
        return (self.predicate, *(binding[t.name] if isinstance(t, Variable) else t.name
                                  for t in self.args))


@dataclass(frozen=True)
class ActionSchema:
    """A lifted action, possibly a filtered or partially grounded copy.

    ``origin`` names the schema this one was derived from and ``binding`` holds
    the origin parameters already fixed to objects.  ``origin_params`` keeps the
    origin's full parameter order so that ground steps can always be printed
    and re-validated against the original schema.
    """

    name: str
    params: tuple[tuple[str, str], ...]
    pre: tuple[Literal, ...]
    add: tuple[Literal, ...]
    delete: tuple[Literal, ...]
    origin: str = ""
    binding: tuple[tuple[str, str], ...] = ()
    origin_params: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.origin:
            object.__setattr__(self, "origin", self.name)
        if not self.origin_params:
            object.__setattr__(self, "origin_params",
                               tuple(v for v, _ in self.params) + tuple(v for v, _ in self.binding))
        declared = {v for v, _ in self.params}
        for lit in (*self.pre, *self.add, *self.delete):
            missing = lit.variables() - declared
            if missing:
                raise ModelError(f"action {self.name}: undeclared variables {sorted(missing)} in {lit}")
            if lit.negated:
                raise ModelError(f"action {self.name}: negated literal {lit} stored as positive slot")
        if set(self.add) & set(self.delete):
            raise ModelError(f"action {self.name}: literal both added and deleted")

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.params)

    @property
    def is_original(self) -> bool:
        return self.origin == self.name and not self.binding


@dataclass(frozen=True)
class Domain:
    name: str
    types: tuple[str, ...]
    predicates: tuple[PredicateSchema, ...]
    actions: tuple[ActionSchema, ...]

    def __post_init__(self):
        names = [p.name for p in self.predicates]
        if len(set(names)) != len(names):
            raise ModelError("duplicate predicate names")
        anames = [a.name for a in self.actions]
        if len(set(anames)) != len(anames):
            raise ModelError("duplicate action names")

    def predicate(self, name: str) -> PredicateSchema:
        for p in self.predicates:
            if p.name == name:
                return p
        raise KeyError(name)

    def action(self, name: str) -> ActionSchema:
        for a in self.actions:
            if a.name == name:
                return a
        raise KeyError(name)

    def predicate_names(self) -> frozenset[str]:
        return frozenset(p.name for p in self.predicates)

    def group(self, group: str) -> frozenset[str]:
        group = GROUP_SYMBOLS.get(group, group)
        return frozenset(p.name for p in self.predicates if p.group == group)

    def with_actions(self, actions: Iterable[ActionSchema]) -> Domain:
        return Domain(self.name, self.types, self.predicates, tuple(actions))


@dataclass(frozen=True)
class Problem:
    """A problem instance bound to its domain.

    ``objects`` maps each object to the set of types it belongs to; typing is
    flat, so a type is nothing but a membership set over objects.
    """

    name: str
    domain: Domain
    objects: tuple[tuple[str, frozenset[str]], ...]
    init: frozenset
    goal: frozenset

    def __post_init__(self):
        objs = dict(self.objects)
        for atom in (*self.init, *self.goal):
            check_atom(self.domain, objs, atom)

    @property
    def object_types(self) -> dict[str, frozenset[str]]:
        return dict(self.objects)

    def objects_of(self, type_name: str) -> list[str]:
        return [o for o, ts in self.objects if is_of_type(ts, type_name)]

    def replace(self, **changes) -> Problem:
        fields_ = dict(name=self.name, domain=self.domain, objects=self.objects,
                       init=self.init, goal=self.goal)
        fields_.update(changes)
        return Problem(**fields_)


def is_of_type(types: frozenset[str], typ: str) -> bool:
    return typ == "object" or typ in types


def check_atom(domain: Domain, objects: Mapping[str, frozenset[str]], atom: Atom) -> None:
    try:
        pred = domain.predicate(atom[0])
    except KeyError:
        raise ModelError(f"undeclared predicate in {format_atom(atom)}") from None
    args = atom[1:]
    if len(args) != pred.arity:
        raise ModelError(f"arity mismatch in {format_atom(atom)}: expected {pred.arity}")
    for obj, typ in zip(args, pred.param_types):
        if obj not in objects:
            raise ModelError(f"unknown object {obj!r} in {format_atom(atom)}")
        if not is_of_type(objects[obj], typ):
            raise ModelError(f"object {obj!r} is not of type {typ} in {format_atom(atom)}")


@dataclass(frozen=True)
class GroundAction:
    schema: str
    origin: str
    binding: tuple[tuple[str, str], ...]  # origin parameter -> object, origin order
    pre: frozenset
    add: frozenset
    delete: frozenset
    cost: int = 1

    @property
    def args(self) -> tuple[str, ...]:
        return tuple(o for _, o in self.binding)

    def __str__(self):
        return " ".join((self.origin, *self.args))


@dataclass(frozen=True)
class Plan:
    steps: tuple[GroundAction, ...] = ()

    @property
    def cost(self) -> int:
        return sum(s.cost for s in self.steps)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def lines(self) -> list[str]:
        return [str(s) for s in self.steps]


def applicable(state: frozenset | set, action: GroundAction) -> bool:
    return action.pre <= state


def apply(state: frozenset | set, action: GroundAction) -> frozenset:
    if not action.pre <= state:
        missing = sorted(map(format_atom, action.pre - state))
        raise ModelError(f"{action} not applicable; missing {', '.join(missing)}")
    return (frozenset(state) - action.delete) | action.add


def ground_schema(schema: ActionSchema, assignment: Mapping[str, str]) -> GroundAction:
    """Instantiate ``schema`` with a total assignment of its parameters."""
    full = dict(schema.binding)
    full.update(assignment)
    binding = tuple((p, full[p]) for p in schema.origin_params if p in full)
    return GroundAction(
        schema=schema.name,
        origin=schema.origin,
        binding=binding,
        pre=frozenset(lit.ground(assignment) for lit in schema.pre),
        add=frozenset(lit.ground(assignment) for lit in schema.add),
        delete=frozenset(lit.ground(assignment) for lit in schema.delete),
    )


@dataclass
class ValidationReport:
    ok: bool
    failed_step: int | None = None
    missing: frozenset = field(default_factory=frozenset)
    message: str = ""

    def __bool__(self):
        return self.ok


def reground(problem: Problem, name: str, args: tuple[str, ...]) -> GroundAction:
    """Ground the original schema ``name`` over ``args``, checking types."""
    try:
        schema = problem.domain.action(name)
    except KeyError:
        raise ModelError(f"unknown action {name!r}") from None
    if len(args) != len(schema.params):
        raise ModelError(f"{name} expects {len(schema.params)} arguments, got {len(args)}")
    types = problem.object_types
    for (var, typ), obj in zip(schema.params, args):
        if obj not in types:
            raise ModelError(f"{name}: unknown object {obj!r}")
        if not is_of_type(types[obj], typ):
            raise ModelError(f"{name}: {obj!r} is not of type {typ} (parameter ?{var})")
    return ground_schema(schema, dict(zip(schema.param_names, args)))


def validate(problem: Problem, plan: Plan | Iterable) -> ValidationReport:
    """Check ``plan`` against the original schemas of ``problem.domain``.

    Steps are re-derived from the named original schema and their arguments, so
    a plan built from filtered or partially grounded copies is judged on the
    full action definitions.  Accepts a :class:`Plan`, ground actions, or
    ``(name, args)`` pairs.
    """
    state = frozenset(problem.init)
    for i, step in enumerate(plan):
        if isinstance(step, GroundAction):
            name, args = step.origin, step.args
        else:
            name, args = step[0], tuple(step[1])
        try:
            action = reground(problem, name, args)
        except ModelError as exc:
            return ValidationReport(False, i, frozenset(), str(exc))
        missing = action.pre - state
        if missing:
            shown = ", ".join(sorted(map(format_atom, missing)))
            return ValidationReport(False, i, frozenset(missing),
                                    f"step {i} ({action}) has unsatisfied preconditions: {shown}")
        state = (state - action.delete) | action.add
    missing = problem.goal - state
    if missing:
        shown = ", ".join(sorted(map(format_atom, missing)))
        return ValidationReport(False, None, frozenset(missing), f"goal not reached: {shown}")
    return ValidationReport(True)
