import pytest
from hypothesis import given, strategies as st

from vbplan import kitchen
from vbplan.parser import (ParseError, parse_domain, parse_plan, parse_problem, parse_views,
                           serialize_domain, serialize_plan, serialize_problem, serialize_views)

MINI = """
(define (domain mini)
  (:types box item)
  (:predicates (present ?x) (hot ?x) (inside ?x ?y))
  (:groups (required present) (elementary (temperature hot)) (spatial inside))
  (:action warm
    :parameters (?i - item ?b - box)
    :precondition (and (present ?i) (inside ?i ?b))
    :effect (and (hot ?i))))
"""

MINI_PROBLEM = """
(define (problem one) (:domain mini)
  (:objects cup - (either box item) tea - item)
  (:init (present tea) (inside tea cup))
  (:goal (and (hot tea))))
"""


def test_domain_parses_groups_families_and_types():
    d = parse_domain(MINI)
    assert d.types == ("box", "item")
    assert d.predicate("hot").group == "elementary"
    assert d.predicate("hot").family == "temperature"
    assert d.predicate("present").param_types == ("object",)
    warm = d.action("warm")
    assert warm.params == (("i", "item"), ("b", "box"))
    assert [str(l) for l in warm.pre] == ["(present ?i)", "(inside ?i ?b)"]


def test_problem_accepts_either_types():
    d = parse_domain(MINI)
    p = parse_problem(MINI_PROBLEM, d)
    assert p.object_types["cup"] == {"box", "item"}
    assert p.objects_of("item") == ["cup", "tea"]
    assert p.goal == {("hot", "tea")}


@pytest.mark.parametrize("text, fragment", [
    ("(define (domain x) (:predicates (p ?a)) (:groups (R p)) (:action a :parameters (?a) "
     ":precondition (and (q ?a)) :effect (and (p ?a))))", "q"),
    ("(define (domain x) (:predicates (p ?a)) (:groups (R p)) (:action a :parameters (?a) "
     ":precondition (and (p ?b)) :effect (and (p ?a))))", "?b"),
    ("(define (domain x) (:predicates (p ?a) (q ?a)) (:groups (R p)))", "no group"),
    ("(define (domain x) (:predicates (p ?a)) (:groups (colourful p)))", "group"),
    ("(define (domain x) (:predicates (p ?a) (p ?b)) (:groups (R p)))", "p"),
    ("(define (domain x) (:predicates (p ?a))", "unclosed"),
])
def test_domain_errors_are_reported(text, fragment):
    with pytest.raises(ParseError) as err:
        parse_domain(text)
    assert fragment in str(err.value)


def test_parse_error_carries_position():
    text = "(define (domain x)\n  (:predicates (p ?a))\n  (:bogus))"
    with pytest.raises(ParseError) as err:
        parse_domain(text)
    assert err.value.line == 3


def test_problem_rejects_unknown_object():
    d = parse_domain(MINI)
    bad = MINI_PROBLEM.replace("(inside tea cup)", "(inside tea pot)")
    with pytest.raises(Exception, match="pot"):
        parse_problem(bad, d)


def test_views_shorthand_and_explicit_names():
    d = parse_domain(MINI)
    views = parse_views("# comment\nR+E\nR+E hot inside\n", d)
    assert views[0] == {"present", "hot"}
    assert views[1] == {"present", "hot", "inside"}


def test_views_must_grow_and_end_complete():
    d = parse_domain(MINI)
    with pytest.raises(ParseError, match="superset"):
        parse_views("R+E+S\nR+E\n", d)
    with pytest.raises(ParseError, match="missing"):
        parse_views("R+E\n", d)
    with pytest.raises(ParseError, match="unknown"):
        parse_views("R+E+X\n", d)


def test_kitchen_round_trips(kitchen_domain):
    text = serialize_domain(kitchen_domain)
    again = parse_domain(text)
    assert again == kitchen_domain
    assert serialize_domain(again) == text
    problem = kitchen.build_problem("3")
    assert parse_problem(serialize_problem(problem), kitchen_domain) == problem
    views = kitchen.build_views()
    assert list(parse_views(serialize_views(views, kitchen_domain), kitchen_domain)) == list(views)


def test_family_named_like_its_member_round_trips():
    # 'light' is both a family and one of its predicates
    d = parse_domain(MINI.replace("(elementary (temperature hot))",
                                  "(elementary (hot hot))"))
    assert parse_domain(serialize_domain(d)) == d


def test_plan_file_formats():
    text = "get_out glass table robot_hand\n(put_in glass tray robot_hand)\n; note\n" \
           "use_fridge -- fridge water glass\n"
    assert parse_plan(text) == [("get_out", ("glass", "table", "robot_hand")),
                                ("put_in", ("glass", "tray", "robot_hand")),
                                ("use_fridge", ("fridge", "water", "glass"))]


names = st.from_regex(r"[a-z][a-z0-9_]{0,8}", fullmatch=True)


@given(st.lists(st.tuples(names, st.lists(names, max_size=4).map(tuple)), max_size=8))
def test_plan_serialization_round_trips(steps):
    text = "".join(" ".join((n, *args)) + "\n" for n, args in steps)
    assert parse_plan(text) == steps
    assert serialize_plan(" ".join((n, *a)) for n, a in steps) == text
