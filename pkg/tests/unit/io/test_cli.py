import json
import shutil

import pytest

from tracesimp.cli import EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_OK, main, reduced_path
from tracesimp.document_codec import read_document
from tracesimp.trace_utils.context_switches import context_switch_count

@pytest.fixture
def workspace_fig0(tmp_path, fig0_path):
    """A private copy of the fixture so simplify can write next to it."""
    target = tmp_path / "fig0.trc"
    shutil.copy(fig0_path, target)
    return target

def test_reduced_path():
    assert reduced_path("data/fig0.trc") == "data/fig0.reduced.trc"
    assert reduced_path("trace") == "trace.reduced.trc"

def test_simplify_fig0(workspace_fig0, capsys):
    assert main(["simplify", str(workspace_fig0)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Checks: PASS" in out
    reduced = read_document(workspace_fig0.parent / "fig0.reduced.trc")
    assert context_switch_count(reduced.origin) == 3
    assert context_switch_count(reduced.trace) == 2
    assert reduced.derivation is not None and reduced.annotations is not None

def test_simplify_reports_oracle(workspace_fig0, capsys):
    assert main(["simplify", str(workspace_fig0), "--oracle", "--format", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)["reports"][0]
    assert (report["cs_before"], report["cs_after"], report["oracle_min_cs"]) == (3, 2, 1)

def test_oracle_refused(workspace_fig0, capsys):
    code = main(["simplify", str(workspace_fig0), "--oracle", "--oracle-limit", "5"])
    assert code == EXIT_INPUT_ERROR
    assert "oracle limit" in capsys.readouterr().err

def test_simplify_in_parallel(tmp_path, workspace_fig0, capsys):
    second = tmp_path / "again.trc"
    shutil.copy(workspace_fig0, second)
    assert main(["simplify", str(workspace_fig0), str(second), "--jobs", "2", "--format", "tsv"]) == EXIT_OK
    rows = capsys.readouterr().out.splitlines()
    assert sorted(row.split("\t")[0] for row in rows[1:]) == ["again", "fig0"]
    assert (tmp_path / "again.reduced.trc").exists()

def test_out_needs_single_input(workspace_fig0, tmp_path):
    code = main(["simplify", str(workspace_fig0), str(workspace_fig0), "--out", str(tmp_path / "x.trc")])
    assert code == EXIT_INPUT_ERROR

def test_check_certificate(workspace_fig0, capsys):
    out = workspace_fig0.parent / "reduced.trc"
    assert main(["simplify", str(workspace_fig0), "--out", str(out)]) == EXIT_OK
    capsys.readouterr()
    assert main(["check", str(out)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "PASS certificate: 1 round(s), 1 swap(s), CS 3 -> 2"

def test_check_uses_recorded_condition(workspace_fig0, capsys):
    out = workspace_fig0.parent / "reduced.trc"
    assert main(["simplify", str(workspace_fig0), "--s-condition", "first-statement", "--out", str(out)]) == EXIT_OK
    assert "condition first-statement" in out.read_text(encoding="utf-8")
    assert read_document(out).derivation.s_condition == "first-statement"
    capsys.readouterr()
    assert main(["check", str(out)]) == EXIT_OK
    assert capsys.readouterr().out.startswith("PASS certificate")

def test_check_tampered_certificate(workspace_fig0, capsys):
    out = workspace_fig0.parent / "reduced.trc"
    main(["simplify", str(workspace_fig0), "--out", str(out)])
    text = out.read_text(encoding="utf-8")
    out.write_text(text.replace("S-swap 6..9", "S-noswap 6..9"), encoding="utf-8")
    assert main(["check", str(out)]) == EXIT_CHECK_FAILED
    assert "FAIL certificate" in capsys.readouterr().err

def test_check_needs_certificate(fig0_path):
    assert main(["check", fig0_path]) == EXIT_INPUT_ERROR

def test_run_dump(fig0_path, capsys):
    assert main(["run", fig0_path, "--dump"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    steps = [line for line in lines if line.startswith("#")]
    assert len(steps) == 9
    assert steps[-1].startswith("#9 2:end |")
    assert lines[-1].startswith("final gamma={") and "tc=9" in lines[-1]

def test_run_json(fig0_path, capsys):
    assert main(["run", fig0_path, "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["gamma"]["tc"] == 9
    assert payload["gamma"]["gs"] == 1
    assert payload["L"] == [] and payload["W"] == []

def test_run_strict_fails_on_unbound_read(fig0_path, capsys):
    assert main(["run", fig0_path, "--strict-vars"]) == EXIT_INPUT_ERROR
    assert "read before it is bound" in capsys.readouterr().err

def test_analyze(fig0_path, capsys):
    assert main(["analyze", fig0_path]) == EXIT_OK
    out = capsys.readouterr().out
    assert "context switches: 3" in out
    assert "  3..5 t2->t2" in out

def test_analyze_json(fig0_path, capsys):
    assert main(["analyze", fig0_path, "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["segments"] == [[1, 2, 1, 1], [3, 5, 2, 2], [6, 7, 1, 1], [8, 9, 2, 2]]
    assert len(payload["annotations"]) == 10

def test_gen_is_seeded(tmp_path):
    first, second = tmp_path / "a.trc", tmp_path / "b.trc"
    for path in (first, second):
        assert main(["gen", "--threads", "3", "--length", "2..6", "--seed", "9", "--out", str(path)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    assert read_document(first).program.thread_count == 3

def test_gen_hot_global(tmp_path):
    path = tmp_path / "hot.trc"
    argv = ["gen", "--threads", "3", "--length", "8", "--globals", "4", "--hot-global", "1", "--out", str(path)]
    assert main(argv) == EXIT_OK
    accesses = [s for s in read_document(path).program.statements() if s.kind.takes_local]
    assert accesses and all(s.global_name == "g0" for s in accesses)

def test_gen_benchmark(tmp_path):
    path = tmp_path / "philo.trc"
    assert main(["gen", "--benchmark", "philo", "--out", str(path)]) == EXIT_OK
    assert read_document(path).program.thread_count == 6

def test_gen_unknown_benchmark(capsys):
    assert main(["gen", "--benchmark", "nope"]) == EXIT_INPUT_ERROR

def test_report_over_suite(capsys):
    assert main(["report", "--format", "json", "--fixpoint", "3"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    names = [report["name"] for report in payload["reports"]]
    assert names == ["philo", "merge", "tsp", "webdow", "fig0"]
    assert payload["reports"][-1]["oracle_min_cs"] == 1
    assert all(r["cs_after"] <= r["cs_before"] for r in payload["reports"])

def test_missing_file(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "absent.trc")]) == EXIT_INPUT_ERROR

def test_usage_errors():
    assert main([]) == EXIT_INPUT_ERROR
    assert main(["simplify"]) == EXIT_INPUT_ERROR
