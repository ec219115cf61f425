import pytest

from vbplan.model import (ActionSchema, Constant, Domain, GroundAction, Literal, ModelError, Plan,
                          PredicateSchema, Problem, Variable, apply, applicable, ground_schema,
                          validate)


def lit(pred, *args):
    return Literal(pred, tuple(Variable(a[1:]) if a.startswith("?") else Constant(a) for a in args))


def tiny_domain():
    preds = (PredicateSchema("at", ("object", "object"), "spatial"),
             PredicateSchema("present", ("object",), "required"),
             PredicateSchema("hot", ("object",), "elementary"))
    move = ActionSchema("move", (("x", "thing"), ("a", "place"), ("b", "place")),
                        pre=(lit("at", "?x", "?a"),), add=(lit("at", "?x", "?b"),),
                        delete=(lit("at", "?x", "?a"),))
    heat = ActionSchema("heat", (("x", "thing"),), pre=(lit("at", "?x", "oven"),),
                        add=(lit("hot", "?x"),), delete=())
    return Domain("tiny", ("thing", "place"), preds, (move, heat))


def tiny_problem(goal=frozenset({("hot", "pie")})):
    objects = (("pie", frozenset({"thing"})), ("shelf", frozenset({"place"})),
               ("oven", frozenset({"place"})))
    return Problem("p", tiny_domain(), objects, frozenset({("at", "pie", "shelf")}), goal)


def test_action_rejects_undeclared_variable():
    with pytest.raises(ModelError, match="undeclared"):
        ActionSchema("bad", (("x", "t"),), pre=(lit("at", "?x", "?y"),), add=(lit("hot", "?x"),),
                     delete=())


def test_action_rejects_add_delete_overlap():
    with pytest.raises(ModelError, match="both added and deleted"):
        ActionSchema("bad", (("x", "t"),), pre=(), add=(lit("hot", "?x"),),
                     delete=(lit("hot", "?x"),))


def test_negated_literal_is_not_a_positive_slot():
    neg = Literal("hot", (Variable("x"),), negated=True)
    with pytest.raises(ModelError):
        ActionSchema("bad", (("x", "t"),), pre=(neg,), add=(lit("hot", "?x"),), delete=())


def test_unknown_group_is_rejected():
    with pytest.raises(ModelError):
        PredicateSchema("p", (), "colourful")


def test_problem_checks_atoms():
    with pytest.raises(ModelError, match="undeclared predicate"):
        tiny_problem(goal=frozenset({("cold", "pie")}))
    with pytest.raises(ModelError, match="arity"):
        tiny_problem(goal=frozenset({("hot", "pie", "oven")}))
    with pytest.raises(ModelError, match="unknown object"):
        tiny_problem(goal=frozenset({("hot", "cake")}))


def test_domain_groups_and_lookup():
    d = tiny_domain()
    assert d.group("R") == {"present"}
    assert d.group("spatial") == {"at"}
    assert d.action("heat").param_names == ("x",)
    with pytest.raises(KeyError):
        d.predicate("nope")


def test_ground_schema_keeps_origin_order():
    d = tiny_domain()
    ga = ground_schema(d.action("move"), {"x": "pie", "a": "shelf", "b": "oven"})
    assert str(ga) == "move pie shelf oven"
    assert ga.pre == {("at", "pie", "shelf")}
    state = apply(frozenset(ga.pre), ga)
    assert state == {("at", "pie", "oven")}


def test_partially_grounded_copy_reports_origin_arguments():
    move = tiny_domain().action("move")
    copy = ActionSchema("move__0", (("b", "place"),),
                        pre=(lit("at", "pie", "shelf"),), add=(lit("at", "pie", "?b"),),
                        delete=(lit("at", "pie", "shelf"),), origin="move",
                        binding=(("x", "pie"), ("a", "shelf")), origin_params=move.param_names)
    assert not copy.is_original
    ga = ground_schema(copy, {"b": "oven"})
    assert ga.origin == "move" and ga.args == ("pie", "shelf", "oven")


def test_apply_refuses_inapplicable_action():
    ga = GroundAction("a", "a", (), frozenset({("hot", "x")}), frozenset(), frozenset())
    assert not applicable(frozenset(), ga)
    with pytest.raises(ModelError, match="missing"):
        apply(frozenset(), ga)


def test_validate_accepts_good_plan_and_pinpoints_bad_step():
    p = tiny_problem()
    good = [("move", ("pie", "shelf", "oven")), ("heat", ("pie",))]
    assert validate(p, good)
    bad = validate(p, [("heat", ("pie",))])
    assert not bad and bad.failed_step == 0 and ("at", "pie", "oven") in bad.missing
    short = validate(p, good[:1])
    assert not short and short.failed_step is None and "goal not reached" in short.message


def test_validate_checks_names_arity_and_types():
    p = tiny_problem()
    assert "unknown action" in validate(p, [("fly", ("pie",))]).message
    assert "expects 3 arguments" in validate(p, [("move", ("pie",))]).message
    assert "not of type" in validate(p, [("heat", ("oven",))]).message


def test_plan_cost_counts_unit_steps():
    ga = GroundAction("a", "a", (), frozenset(), frozenset(), frozenset())
    assert Plan((ga, ga, ga)).cost == 3
    assert Plan().cost == 0
