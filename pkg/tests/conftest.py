import random
from pathlib import Path

import pytest

from vbplan import kitchen, vbp
from vbplan._backend import available_backends
from vbplan.ground import GroundTask
from vbplan.model import ground_schema
from vbplan.parser import parse_domain, parse_problem, parse_views

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def kitchen_domain():
    return kitchen.build_domain()


@pytest.fixture(scope="session")
def kitchen_views(kitchen_domain):
    return kitchen.build_views(kitchen_domain)


@pytest.fixture(scope="session")
def witness():
    """Domain, problem and views of the shortcut fixture."""
    domain = parse_domain((FIXTURES / "witness.dom").read_text())
    problem = parse_problem((FIXTURES / "witness.prob").read_text(), domain)
    views = parse_views((FIXTURES / "witness.views").read_text(), domain)
    return domain, problem, views


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param


def random_task(rng: random.Random, n_atoms=(3, 9), n_actions=(2, 12)) -> GroundTask:
    """A small random STRIPS task in index form."""
    n = rng.randint(*n_atoms)
    actions = []
    for _ in range(rng.randint(*n_actions)):
        pre = set(rng.sample(range(n), rng.randint(0, 2)))
        add = set(rng.sample(range(n), rng.randint(1, 2)))
        dele = set(rng.sample(range(n), rng.randint(0, 2))) - add
        actions.append((pre, add, dele))
    init = rng.sample(range(n), rng.randint(1, 3))
    goal = rng.sample(range(n), rng.randint(1, 3))
    return GroundTask.from_strips(n, actions, init, goal)


def random_tasks(count: int, seed: int, **kw) -> list[GroundTask]:
    rng = random.Random(seed)
    return [random_task(rng, **kw) for _ in range(count)]


def staged_views(kitchen_domain, kitchen_views):
    """Schemas seen in each view when the view plans use the reference steps."""
    problem = kitchen.build_problem("3")
    R = kitchen_domain.group("R")
    originals = kitchen_domain.actions
    v1 = vbp.filter_problem(problem, kitchen_views[0] | R).domain.actions
    considered = {a.origin for a in v1}
    plan1 = [ground_schema(next(a for a in v1 if a.name == "use_microwave"),
                           {"m": "microwave", "o": "water"}),
             ground_schema(next(a for a in v1 if a.name == "add_mint_aroma"),
                           {"o1": "mint_tea_bag", "o2": "water"})]
    current = vbp.modify(originals, plan1, considered)
    v2 = vbp.filter_problem(problem, kitchen_views[1] | R, current).domain.actions
    considered |= {a.origin for a in v2}
    named = {a.name: a for a in v2}
    plan2 = [
        ground_schema(named["put_in"], {"o": "mint_tea_bag", "c": "water_pitcher",
                                        "h": "robot_hand"}),
        ground_schema(named["put_in"], {"o": "water_pitcher", "c": "microwave",
                                        "h": "robot_hand"}),
        ground_schema(named["use_microwave__0"], {"c": "water_pitcher"}),
        ground_schema(named["add_mint_aroma__0"], {"c": "water_pitcher"}),
        ground_schema(named["put_in"], {"o": "water_pitcher", "c": "fridge",
                                        "h": "robot_hand"}),
        ground_schema(named["put_in"], {"o": "glass", "c": "tray", "h": "robot_hand"}),
    ]
    current = vbp.modify(originals, plan2, considered)
    v3 = vbp.filter_problem(problem, kitchen_views[2] | R, current).domain.actions
    return v1, v2, v3


# One verdict line per acceptance criterion, printed after the run.  Tests
# mark themselves with ``@pytest.mark.criterion(n, title)``; a test that
# stores text in ``CRITERION_NOTES[n]`` gets it appended to its line.
CRITERION_NOTES: dict[int, str] = {}
_verdicts: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    failed = report.failed or hasattr(report, "wasxfail")
    if report.when == "call" or (report.when == "setup" and failed):
        _verdicts[n] = ("FAIL" if failed else "PASS", title)


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_verdicts):
        verdict, title = _verdicts[n]
        note = CRITERION_NOTES.get(n)
        terminalreporter.write_line(f"criterion {n}: {verdict}  {title}"
                                    + (f"  [{note}]" if note else ""))
