import csv
import io

import pytest

from conftest import FIXTURES
from vbplan import kitchen
from vbplan.cli import main

DOM = str(FIXTURES / "witness.dom")
PROB = str(FIXTURES / "witness.prob")
VIEWS = str(FIXTURES / "witness.views")


def plan_args(*extra):
    return ["plan", "--domain", DOM, "--problem", PROB, *extra]


def test_standalone_plan(capsys):
    assert main(plan_args("--mix", "O", "--print-plan")) == 0
    out = capsys.readouterr().out
    assert "plan found: cost 3" in out
    assert out.splitlines()[1:] == ["approach dryer roll", "towel roll", "blow dryer roll"]


def test_view_by_view_plan_reports_each_view(capsys):
    assert main(plan_args("--views", VIEWS, "--mix", "ooo")) == 0
    out = capsys.readouterr().out
    assert out.count("view ") == 3
    assert "plan found: cost 5" in out


def test_unsolvable_exit_code(tmp_path, capsys):
    prob = tmp_path / "p.prob"
    prob.write_text(open(PROB).read().replace("(hot roll)", "(hot dryer)"))
    assert main(["plan", "--domain", DOM, "--problem", str(prob)]) == 10
    assert "unsolvable" in capsys.readouterr().out


def test_timeout_exit_code(tmp_path):
    d = kitchen.corpus_dir()
    args = ["plan", "--domain", str(d / "kitchen.dom"), "--problem", str(d / "goal_0_1.prob"),
            "--mix", "O", "--budget", "0.2"]
    assert main(args) == 11


@pytest.mark.parametrize("extra", [["--mix", "OSO"], ["--mix", "SX"], ["--budget", "0"],
                                   ["--views", "/nonexistent/file"]])
def test_usage_errors(extra):
    try:
        code = main(plan_args(*extra))
    except SystemExit as exc:  # argparse rejects before dispatch
        code = exc.code
    assert code == 2


def test_malformed_domain(tmp_path, capsys):
    bad = tmp_path / "bad.dom"
    bad.write_text("(define (domain x)")
    assert main(["plan", "--domain", str(bad), "--problem", PROB]) == 2
    assert "vbplan:" in capsys.readouterr().err


def test_validate(tmp_path, capsys):
    good = tmp_path / "good.plan"
    good.write_text("approach dryer roll\ntowel roll\nblow dryer roll\n")
    bad = tmp_path / "bad.plan"
    bad.write_text("blow dryer roll\n")
    base = ["validate", "--domain", DOM, "--problem", PROB, "--plan"]
    assert main(base + [str(good)]) == 0
    assert main(base + [str(bad)]) == 1
    out = capsys.readouterr().out
    assert "valid" in out and "invalid" in out


def test_corpus_command(tmp_path, capsys):
    assert main(["corpus", "--out", str(tmp_path), "--goals", "4,0+1"]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "goal_0_1.prob", "goal_4.prob", "kitchen.dom", "kitchen.views"]
    assert main(["corpus", "--out", str(tmp_path), "--goals", "12"]) == 2


def test_suite_command(tmp_path, capsys):
    out = tmp_path / "table.csv"
    code = main(["suite", "--goals", "4", "--mixes", "S,O,SSO", "--budget", "5",
                 "--out", str(out)])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert rows == [{"goal": "4", "S_time": rows[0]["S_time"], "S_cost": "8",
                     "O_time": rows[0]["O_time"], "O_cost": "8",
                     "SSO_time": rows[0]["SSO_time"], "SSO_cost": "8"}]
    assert "goal 4" in capsys.readouterr().out


def test_suite_bad_corpus(tmp_path):
    assert main(["suite", "--corpus", str(tmp_path), "--mixes", "S"]) == 2
