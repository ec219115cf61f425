"""Reader and writer for ``.dom``, ``.prob``, ``.views`` and plan files.

The domain and problem formats are a small PDDL subset: typed parameters,
positive conjunctive preconditions and goals, add/delete effects.  Domains add a
``(:groups ...)`` block assigning every predicate to one of the groups
required/elementary/spatial/device, optionally with attribute families::

    (:groups (required (presence present absent))
             (elementary (temperature hot warm cold) dry wet))

Objects may belong to several types, written ``obj - (either t1 t2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .model import (
    GROUP_SYMBOLS,
    GROUPS,
    ActionSchema,
    Constant,
    Domain,
    Literal,
    ModelError,
    PredicateSchema,
    Problem,
    Variable,
    format_atom,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        where = f"{line}:{col}: " if line else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    col: int


class SList(list):
    """A parenthesised list remembering where it opened."""

    line = 0
    col = 0


_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")


def read_sexprs(text: str) -> list:
    stack: list[SList] = [SList()]
    line, line_start = 1, 0
    for m in _TOKEN.finditer(text):
        tok = m.group()
        col = m.start() - line_start + 1
        if tok[0].isspace() or tok[0] == ";":
            nl = tok.count("\n")
            if nl:
                line += nl
                line_start = m.start() + tok.rfind("\n") + 1
            continue
        if tok == "(":
            lst = SList()
            lst.line, lst.col = line, col
            stack[-1].append(lst)
            stack.append(lst)
        elif tok == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", line, col)
            stack.pop()
        else:
            stack[-1].append(Token(tok.lower(), line, col))
    if len(stack) > 1:
        raise ParseError("unclosed '('", stack[-1].line, stack[-1].col)
    return stack[0]


def _pos(node) -> tuple[int, int]:
    return (node.line, node.col)


def _expect_list(node, what: str) -> SList:
    if not isinstance(node, SList):
        raise ParseError(f"expected {what}, found {node.text!r}", *_pos(node))
    return node


def _expect_word(node, what: str) -> str:
    if not isinstance(node, Token):
        raise ParseError(f"expected {what}, found a list", *_pos(node))
    return node.text


def _head(node) -> str:
    if isinstance(node, SList) and node and isinstance(node[0], Token):
        return node[0].text
    return ""


def _typed_list(items, default: str | None, where) -> list[tuple[Token, tuple[str, ...]]]:
    """Parse ``a b - t c - (either t1 t2) d`` into (name, types) pairs."""
    out: list[tuple[Token, tuple[str, ...]]] = []
    pending: list[Token] = []
    i = 0
    while i < len(items):
        node = items[i]
        if isinstance(node, Token) and node.text == "-":
            if i + 1 >= len(items) or not pending:
                raise ParseError("dangling '-' in typed list", *_pos(node))
            spec = items[i + 1]
            if isinstance(spec, Token):
                types = (spec.text,)
            elif _head(spec) == "either" and len(spec) > 1:
                types = tuple(_expect_word(t, "type name") for t in spec[1:])
            else:
                raise ParseError("malformed type specification", *_pos(spec))
            out.extend((tok, types) for tok in pending)
            pending = []
            i += 2
            continue
        if not isinstance(node, Token):
            raise ParseError("expected a name, found a list", *_pos(node))
        pending.append(node)
        i += 1
    if pending:
        if default is None:
            raise ParseError(f"missing type for {pending[0].text!r}", *_pos(pending[0]))
        out.extend((tok, (default,)) for tok in pending)
    return out


def _parse_literal(node, allow_negation: bool, context: str) -> Literal:
    node = _expect_list(node, "literal")
    if _head(node) == "not":
        if not allow_negation:
            raise ParseError(f"negated literal not allowed in {context}", *_pos(node))
        if len(node) != 2:
            raise ParseError("'not' takes exactly one literal", *_pos(node))
        inner = _parse_literal(node[1], False, context)
        return Literal(inner.predicate, inner.args, True)
    if not node or not isinstance(node[0], Token):
        raise ParseError("literal must start with a predicate name", *_pos(node))
    args = []
    for t in node[1:]:
        word = _expect_word(t, "term")
        args.append(Variable(word[1:]) if word.startswith("?") else Constant(word))
    return Literal(node[0].text, tuple(args))


def _conjunction(node, allow_negation: bool, context: str) -> list[tuple[Literal, SList]]:
    node = _expect_list(node, context)
    if _head(node) == "and":
        parts = node[1:]
    elif not node:
        parts = []
    else:
        parts = [node]
    return [(_parse_literal(p, allow_negation, context), p) for p in parts]


def _check_literal(lit: Literal, preds: dict[str, PredicateSchema], where) -> None:
    if lit.predicate not in preds:
        raise ParseError(f"undeclared predicate {lit.predicate!r}", *where)
    if len(lit.args) != preds[lit.predicate].arity:
        raise ParseError(f"wrong arity for {lit.predicate}: expected "
                         f"{preds[lit.predicate].arity}, got {len(lit.args)}", *where)


def _define(text: str, kind: str) -> tuple[str, SList]:
    top = read_sexprs(text)
    if len(top) != 1 or _head(top[0]) != "define":
        where = _pos(top[0]) if top and isinstance(top[0], SList) else (1, 1)
        raise ParseError("expected a single (define ...) form", *where)
    form = top[0]
    if len(form) < 2 or _head(form[1]) != kind or len(form[1]) != 2:
        raise ParseError(f"expected ({kind} NAME)", *_pos(form))
    return _expect_word(form[1][1], f"{kind} name"), form


def parse_domain(text: str) -> Domain:
    name, form = _define(text, "domain")
    types: list[str] = []
    raw_preds: list[tuple[Token, list]] = []
    groups: dict[str, tuple[str, str, tuple[int, int]]] = {}
    actions: list[ActionSchema] = []
    for section in form[2:]:
        section = _expect_list(section, "domain section")
        key = _head(section)
        if key == ":types":
            for node in section[1:]:
                word = _expect_word(node, "type name")
                if word == "-":
                    raise ParseError("type hierarchies are not supported", *_pos(node))
                types.append(word)
        elif key == ":predicates":
            for p in section[1:]:
                p = _expect_list(p, "predicate declaration")
                pname = _expect_word(p[0], "predicate name") if p else ""
                if not pname:
                    raise ParseError("empty predicate declaration", *_pos(p))
                raw_preds.append((p[0], _typed_list(p[1:], "object", _pos(p))))
        elif key == ":groups":
            for g in section[1:]:
                g = _expect_list(g, "group")
                gname = _expect_word(g[0], "group name") if g else ""
                gname = GROUP_SYMBOLS.get(gname.upper(), gname)
                if gname not in GROUPS:
                    raise ParseError(f"unknown group {gname!r}", *_pos(g))
                for member in g[1:]:
                    if isinstance(member, SList):
                        family = _expect_word(member[0], "family name")
                        names = [(_expect_word(m, "predicate"), _pos(m)) for m in member[1:]]
                    else:
                        family = ""
                        names = [(member.text, _pos(member))]
                    for pname, where in names:
                        if pname in groups:
                            raise ParseError(f"predicate {pname!r} assigned to two groups", *where)
                        groups[pname] = (gname, family, where)
        elif key == ":action":
            actions.append(_parse_action(section))
        elif key == ":requirements":
            continue
        else:
            raise ParseError(f"unknown domain section {key!r}", *_pos(section))

    declared_types = set(types) | {"object"}
    preds: dict[str, PredicateSchema] = {}
    for tok, params in raw_preds:
        if tok.text in preds:
            raise ParseError(f"duplicate predicate {tok.text!r}", *_pos(tok))
        ptypes = tuple(ts[0] for _, ts in params)
        for t in ptypes:
            if t not in declared_types:
                raise ParseError(f"undeclared type {t!r}", *_pos(tok))
        if tok.text not in groups:
            raise ParseError(f"predicate {tok.text!r} has no group", *_pos(tok))
        group, family, _ = groups[tok.text]
        preds[tok.text] = PredicateSchema(tok.text, ptypes, group, family or tok.text)
    for pname, (_, _, where) in groups.items():
        if pname not in preds:
            raise ParseError(f"group lists undeclared predicate {pname!r}", *where)

    seen: set[str] = set()
    for action, section in zip(actions, [s for s in form[2:] if _head(s) == ":action"]):
        if action.name in seen:
            raise ParseError(f"duplicate action name {action.name!r}", *_pos(section))
        seen.add(action.name)
        for _, typ in action.params:
            if typ not in declared_types:
                raise ParseError(f"undeclared type {typ!r} in action {action.name}", *_pos(section))
        for lit in (*action.pre, *action.add, *action.delete):
            _check_literal(lit, preds, _pos(section))
    return Domain(name, tuple(types), tuple(preds.values()), tuple(actions))


def _parse_action(section: SList) -> ActionSchema:
    if len(section) < 2:
        raise ParseError("action without a name", *_pos(section))
    name = _expect_word(section[1], "action name")
    params: list[tuple[str, str]] = []
    pre: list[Literal] = []
    add: list[Literal] = []
    delete: list[Literal] = []
    i = 2
    while i < len(section):
        key = _expect_word(section[i], "action keyword")
        if i + 1 >= len(section):
            raise ParseError(f"missing value for {key}", *_pos(section[i]))
        body = section[i + 1]
        if key == ":parameters":
            for tok, ts in _typed_list(_expect_list(body, "parameter list"), "object", _pos(body)):
                if not tok.text.startswith("?"):
                    raise ParseError(f"parameter {tok.text!r} must start with '?'", *_pos(tok))
                if len(ts) != 1:
                    raise ParseError("parameters take a single type", *_pos(tok))
                params.append((tok.text[1:], ts[0]))
        elif key == ":precondition":
            for lit, _ in _conjunction(body, False, "precondition"):
                if lit not in pre:
                    pre.append(lit)
        elif key == ":effect":
            for lit, _ in _conjunction(body, True, "effect"):
                target = delete if lit.negated else add
                lit = Literal(lit.predicate, lit.args)
                if lit not in target:
                    target.append(lit)
        else:
            raise ParseError(f"unknown action keyword {key!r}", *_pos(section[i]))
        i += 2
    try:
        return ActionSchema(name, tuple(params), tuple(pre), tuple(add), tuple(delete))
    except ModelError as exc:
        raise ParseError(str(exc), *_pos(section)) from None


def parse_problem(text: str, domain: Domain) -> Problem:
    name, form = _define(text, "problem")
    objects: dict[str, frozenset[str]] = {}
    init: list[tuple] = []
    goal: list[tuple] = []
    declared_types = set(domain.types) | {"object"}
    for section in form[2:]:
        section = _expect_list(section, "problem section")
        key = _head(section)
        if key == ":domain":
            dname = _expect_word(section[1], "domain name") if len(section) == 2 else ""
            if dname != domain.name:
                raise ParseError(f"problem is for domain {dname!r}, not {domain.name!r}",
                                 *_pos(section))
        elif key == ":objects":
            for tok, ts in _typed_list(section[1:], "object", _pos(section)):
                for t in ts:
                    if t not in declared_types:
                        raise ParseError(f"undeclared type {t!r}", *_pos(tok))
                objects[tok.text] = objects.get(tok.text, frozenset()) | frozenset(ts)
        elif key == ":init":
            for node in section[1:]:
                init.append(_ground_atom(node, domain, objects))
        elif key == ":goal":
            if len(section) != 2:
                raise ParseError("(:goal ...) takes one formula", *_pos(section))
            for _, node in _conjunction(section[1], False, "goal"):
                goal.append(_ground_atom(node, domain, objects))
        else:
            raise ParseError(f"unknown problem section {key!r}", *_pos(section))
    return Problem(name, domain, tuple(objects.items()), frozenset(init), frozenset(goal))


def _ground_atom(node, domain: Domain, objects: dict[str, frozenset[str]]) -> tuple:
    lit = _parse_literal(node, False, "ground atom")
    where = _pos(node)
    try:
        pred = domain.predicate(lit.predicate)
    except KeyError:
        raise ParseError(f"unknown predicate {lit.predicate!r}", *where) from None
    if len(lit.args) != pred.arity:
        raise ParseError(f"wrong arity for {pred.name}: expected {pred.arity}", *where)
    atom = (lit.predicate, *(t.name for t in lit.args))
    for term, typ in zip(lit.args, pred.param_types):
        if isinstance(term, Variable):
            raise ParseError(f"variable {term} in ground atom", *where)
        if term.name not in objects:
            raise ParseError(f"unknown object {term.name!r}", *where)
        if typ != "object" and typ not in objects[term.name]:
            raise ParseError(f"type mismatch: {term.name!r} is not {typ} in {format_atom(atom)}",
                             *where)
    return atom


# ---------------------------------------------------------------- views


@dataclass(frozen=True)
class ViewSpec:
    """Cumulative predicate sets, one per view, ending with every predicate."""

    views: tuple[frozenset[str], ...]

    def __post_init__(self):
        if not self.views:
            raise ValueError("a view specification needs at least one view")
        for n in range(1, len(self.views)):
            if not self.views[n] > self.views[n - 1]:
                raise ValueError(f"view {n + 1} is not a strict superset of view {n}")

    def __len__(self):
        return len(self.views)

    def __iter__(self):
        return iter(self.views)

    def __getitem__(self, i):
        return self.views[i]

    def check(self, domain: Domain) -> None:
        names = domain.predicate_names()
        for n, view in enumerate(self.views, 1):
            unknown = view - names
            if unknown:
                raise ValueError(f"view {n} lists unknown predicates {sorted(unknown)}")
        if self.views[-1] != names:
            missing = sorted(names - self.views[-1])
            raise ValueError(f"final view is missing predicates {missing}")


_SHORTHAND = re.compile(r"^[A-Za-z]+(\+[A-Za-z]+)*$")


def _view_line(line: str, domain: Domain, lineno: int) -> frozenset[str]:
    names = domain.predicate_names()
    out: set[str] = set()
    for tok in re.split(r"[\s,]+", line.strip()):
        if not tok:
            continue
        parts = tok.split("+")
        if len(parts) > 1 or tok.upper() in GROUP_SYMBOLS or tok.lower() in GROUPS:
            if tok.lower() in names:
                out.add(tok.lower())
                continue
            for part in parts:
                group = GROUP_SYMBOLS.get(part.upper(), part.lower())
                if group not in GROUPS:
                    raise ParseError(f"unknown group {part!r}", lineno, 1)
                out |= domain.group(group)
        elif tok.lower() in names:
            out.add(tok.lower())
        else:
            raise ParseError(f"unknown predicate {tok!r}", lineno, 1)
    return frozenset(out)


def parse_views(text: str, domain: Domain) -> ViewSpec:
    views = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            views.append(_view_line(line, domain, lineno))
    try:
        spec = ViewSpec(tuple(views))
        spec.check(domain)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return spec


# ---------------------------------------------------------------- plans


def parse_plan(text: str) -> list[tuple[str, tuple[str, ...]]]:
    """Plan files hold one step per line: ``name obj1 obj2 ...``.

    Parenthesised steps and ``name -- obj1 obj2`` are accepted too.
    """
    steps = []
    for raw in text.splitlines():
        line = raw.split(";", 1)[0].strip().strip("()").replace(" -- ", " ").strip()
        if line:
            parts = line.lower().split()
            steps.append((parts[0], tuple(parts[1:])))
    return steps


def serialize_plan(plan: Iterable) -> str:
    return "".join(str(step) + "\n" for step in plan)


# ---------------------------------------------------------------- writers


def _typed(items: Iterable[tuple[str, str]], prefix: str = "") -> str:
    return " ".join(f"{prefix}{n} - {t}" for n, t in items)


def serialize_domain(domain: Domain) -> str:
    out = [f"(define (domain {domain.name})"]
    if domain.types:
        out.append(f"  (:types {' '.join(domain.types)})")
    out.append("  (:predicates")
    for p in domain.predicates:
        args = " ".join(f"?x{i} - {t}" for i, t in enumerate(p.param_types))
        out.append(f"    ({p.name}{' ' + args if args else ''})")
    out[-1] += ")"
    out.append("  (:groups")
    for group in GROUPS:
        members = [p for p in domain.predicates if p.group == group]
        if not members:
            continue
        parts: list[str] = []
        seen_families: list[str] = []
        for p in members:
            if p.family:
                if p.family not in seen_families:
                    seen_families.append(p.family)
                    fam = [q.name for q in members if q.family == p.family]
                    parts.append(f"({p.family} {' '.join(fam)})")
            else:
                parts.append(p.name)
        out.append(f"    ({group} {' '.join(parts)})")
    out[-1] += ")"
    for a in domain.actions:
        out.append(f"  (:action {a.name}")
        out.append(f"    :parameters ({_typed(a.params, '?')})")
        out.append(f"    :precondition (and {' '.join(map(str, a.pre))})".rstrip())
        effects = [str(l) for l in a.add] + [f"(not {l})" for l in a.delete]
        out.append(f"    :effect (and {' '.join(effects)}))")
    out.append(")")
    return "\n".join(out) + "\n"


def serialize_problem(problem: Problem) -> str:
    out = [f"(define (problem {problem.name})", f"  (:domain {problem.domain.name})", "  (:objects"]
    for obj, types in problem.objects:
        ts = sorted(types)
        spec = ts[0] if len(ts) == 1 else f"(either {' '.join(ts)})"
        out.append(f"    {obj} - {spec}")
    out[-1] += ")"
    out.append("  (:init")
    for atom in sorted(problem.init):
        out.append(f"    {format_atom(atom)}")
    out[-1] += ")"
    goal = " ".join(format_atom(a) for a in sorted(problem.goal))
    out.append(f"  (:goal (and {goal}))".replace("(and )", "(and)"))
    out.append(")")
    return "\n".join(out) + "\n"


def serialize_views(views: ViewSpec, domain: Domain) -> str:
    groups = {sym: domain.group(g) for sym, g in GROUP_SYMBOLS.items()}
    lines = []
    for view in views:
        # shorthand only when the view is exactly a union of whole groups
        used = [sym for sym in "REDS" if groups[sym] and groups[sym] <= view]
        covered = frozenset().union(*(groups[s] for s in used)) if used else frozenset()
        if used and covered == view:
            order = [s for s in "RESD" if s in used]
            lines.append("+".join(order))
        else:
            lines.append(" ".join(sorted(view)))
    return "\n".join(lines) + "\n"
