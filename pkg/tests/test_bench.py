import csv
import io
import math
import shutil

import pytest

from vbplan import bench, kitchen
from vbplan.bench import ExperimentRecord as Rec


def rec(goal, mix, cost, t=0.5):
    return Rec(goal, mix, t, cost)


SAMPLE = [rec("1", "S", 12), rec("1", "O", 10), rec("1", "SSS", 12), rec("1", "OOO", 10),
          rec("1", "OSO", 11), rec("1", "SSO", 11),
          rec("0+1", "S", math.nan, 20.0), rec("0+1", "O", math.nan, 20.0),
          rec("0+1", "SSS", math.inf, 0.01), rec("0+1", "OOO", math.inf, 0.01),
          rec("0+1", "OSO", math.inf, 0.01), rec("0+1", "SSO", math.inf, 0.01)]


def test_csv_renders_nan_and_inf_and_reads_back():
    text = bench.emit_table(SAMPLE, "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0][:3] == ["goal", "S_time", "S_cost"]
    assert rows[2][2] == "nan" and rows[2][6] == "inf"
    assert rows[1][1] == "0.50"
    back = bench.read_table(text)
    assert [(r.goal, r.mix) for r in back] == [(r.goal, r.mix) for r in SAMPLE]
    for a, b in zip(back, SAMPLE):
        assert a.cost == b.cost or (math.isnan(a.cost) and math.isnan(b.cost))


def test_single_record_table():
    text = bench.emit_table([rec("4", "O", 8)], "csv")
    assert text.splitlines() == ["goal,O_time,O_cost", "4,0.50,8"]


def test_markdown_table_is_aligned():
    lines = bench.emit_table(SAMPLE, "md").splitlines()
    assert len(lines) == 4
    assert len({len(l) for l in lines}) == 1
    assert "inf" in lines[3]


def test_table_argument_checks():
    with pytest.raises(ValueError, match="format"):
        bench.emit_table(SAMPLE, "xlsx")
    with pytest.raises(ValueError):
        bench.emit_table([], "csv")


def test_orderings_hold_on_consistent_sample():
    report = bench.compare_costs(SAMPLE)
    assert report.ok, report.violations
    assert report.checked["a O <= S"] == 1


def test_orderings_flag_violations():
    bad = SAMPLE + [rec("2", "S", 9), rec("2", "O", 11), rec("2", "OSO", 11),
                    rec("2", "SSO", 12), rec("2", "SSS", 9), rec("2", "OOO", math.nan)]
    report = bench.compare_costs(bad)
    text = "\n".join(report.violations)
    assert "(a) goal 2" in text
    assert "(b) goal 2" in text
    assert "(d)" not in text  # OOO did not finish, nothing to compare
    timed_out = SAMPLE + [rec("3", "OSO", math.nan), rec("3", "SSO", math.nan)]
    assert len([v for v in bench.compare_costs(timed_out).violations if v.startswith("(c)")]) == 2


def test_single_goal_is_degenerate():
    report = bench.compare_costs(SAMPLE[:6])
    assert report.degenerate and report.ok
    assert report.lines() == ["too few goals to compare orderings"]


def test_sorting_follows_standalone_greedy_cost():
    records = [rec("b", "S", math.nan), rec("c", "S", 3), rec("a", "S", 7), rec("c", "O", 3)]
    assert [r.goal for r in bench.sort_records(records)] == ["c", "c", "a", "b"]


def test_deltas_against_reference():
    deltas = bench.optimal_deltas([rec("4", "O", 9), rec("1", "O", 10), rec("3", "O", 20)])
    assert deltas == {"4": 1, "1": 0}
    assert "goal 4: +1" in bench.summary([rec("4", "O", 9), rec("1", "O", 10)])


def test_goal_ids_from_file_names():
    assert bench.goal_id_of("x/goal_0_1.prob") == "0+1"
    with pytest.raises(ValueError):
        bench.goal_id_of("kitchen.dom")


def test_missing_corpus_files(tmp_path):
    with pytest.raises(FileNotFoundError, match="kitchen.dom"):
        bench.run_suite(tmp_path, ["S"])
    shutil.copy(kitchen.corpus_dir() / "kitchen.dom", tmp_path)
    shutil.copy(kitchen.corpus_dir() / "kitchen.views", tmp_path)
    with pytest.raises(FileNotFoundError, match="goal"):
        bench.run_suite(tmp_path, ["S"])


def test_small_suite_run(tmp_path):
    kitchen.emit_corpus(tmp_path, ["4", "0+1"])
    records = bench.run_suite(tmp_path, ["S", "SSS", "OSO"], budget=5)
    got = {(r.goal, r.mix): r for r in records}
    assert got["4", "S"].cost == 8 and got["4", "S"].valid
    assert got["0+1", "OSO"].cost == math.inf and got["0+1", "OSO"].failed_view == 1
    assert records[0].goal == "4"  # finished goals before unfinished ones


def test_trivial_goal_costs_nothing(tmp_path):
    kitchen.emit_corpus(tmp_path, ["4"])
    # a goal that already holds: the pitcher sits on the table
    problem = kitchen.build_problem({("inside", "water_pitcher", "table")}, name="trivial")
    from vbplan.parser import serialize_problem
    (tmp_path / "goal_99.prob").write_text(serialize_problem(problem))
    records = bench.run_suite(tmp_path, ["S", "O", "OSO"], budget=5, goals=["99"])
    assert [r.cost for r in records] == [0, 0, 0]


def test_bad_mix_and_goal(tmp_path):
    kitchen.emit_corpus(tmp_path, ["4"])
    with pytest.raises(ValueError, match="mix"):
        bench.run_suite(tmp_path, ["SX"])
    with pytest.raises(FileNotFoundError, match="goals"):
        bench.run_suite(tmp_path, ["S"], goals=["7"])


def test_parallel_workers_match_serial(tmp_path):
    kitchen.emit_corpus(tmp_path, ["4", "1"])
    serial = bench.run_suite(tmp_path, ["S", "SSO"], budget=5)
    parallel = bench.run_suite(tmp_path, ["S", "SSO"], budget=5, workers=2)
    assert [(r.goal, r.mix, r.cost) for r in serial] == [(r.goal, r.mix, r.cost) for r in parallel]
