import pytest

from tracesimp.benchmark_suite import merge_instance
from tracesimp.errors import OracleRefused
from tracesimp.models.program import Program
from tracesimp.models.trace_state import SemanticsMode, TraceState
from tracesimp.trace_simplifier import ORACLE_AUTO, ORACLE_ON, TraceSimplifier
from tracesimp.trace_utils.faithful import validate_faithful

@pytest.fixture
def simplifier():
    trace_simplifier = TraceSimplifier()
    trace_simplifier.initiate()
    return trace_simplifier

def test_fig0_outcome(simplifier, fig0):
    outcome = simplifier.run("fig0", *fig0)
    assert outcome.passed, outcome.problems
    report = outcome.report
    assert (report.thread_count, report.statement_count) == (2, 9)
    assert (report.cs_before, report.cs_after) == (3, 2)
    assert report.reduction_percent == pytest.approx(100 / 3)
    assert report.oracle_min_cs is None
    assert outcome.state_before.tc == outcome.state_after.tc == 9

def test_oracle_on(fig0):
    simplifier = TraceSimplifier()
    simplifier.initiate(oracle=ORACLE_ON)
    assert simplifier.run("fig0", *fig0).report.oracle_min_cs == 1

def test_oracle_on_refuses_large(fig0):
    simplifier = TraceSimplifier()
    simplifier.initiate(oracle=ORACLE_ON, oracle_limit=4)
    with pytest.raises(OracleRefused):
        simplifier.run("fig0", *fig0)

def test_oracle_auto_skips_large():
    simplifier = TraceSimplifier()
    simplifier.initiate(oracle=ORACLE_AUTO)
    name, program, trace = merge_instance()
    outcome = simplifier.run(name, program, trace)
    assert outcome.report.oracle_min_cs is None
    assert outcome.passed, outcome.problems

def test_initial_state_is_shared(simplifier, fig0):
    outcome = simplifier.run("fig0", *fig0, initial=TraceState({"tc": 0, "ga": 4, "gb": 6}))
    assert outcome.state_after.gamma[(1, "a")] == 4
    assert outcome.state_after.gamma[(2, "b")] == 6
    assert outcome.passed

def test_fixpoint_rounds_are_reported():
    simplifier = TraceSimplifier()
    simplifier.initiate(fixpoint=5)
    name, program, trace = merge_instance()
    outcome = simplifier.run(name, program, trace)
    assert 1 <= outcome.result.rounds <= 5
    assert outcome.report.cs_after == outcome.result.round_cs[-1]

@pytest.mark.parametrize("options", [{"oracle": "sometimes"}, {"runs": 0}, {"fixpoint": 0}])
def test_bad_options(options):
    with pytest.raises(ValueError):
        TraceSimplifier().initiate(**options)

def test_timings_are_averaged(fig0):
    simplifier = TraceSimplifier()
    simplifier.initiate(runs=3)
    report = simplifier.run("fig0", *fig0).report
    assert report.analysis_time_ms >= 0 and report.transform_time_ms >= 0

def test_dynamic_spawn_order_is_kept():
    # swapping the two duplicates would hand the spawned threads each other's ids
    program = Program.build([[("localize", "a", "x"), ("duplicate",)],
                             [("localize", "b", "y"), ("duplicate",)]])
    trace = validate_faithful(program, [(2, 1), (1, 1), (2, 2), (1, 2)])
    simplifier = TraceSimplifier()
    simplifier.initiate(mode=SemanticsMode.DYNAMIC, fixpoint=5)
    outcome = simplifier.run("spawns", program, trace)
    assert outcome.passed, outcome.problems
    assert outcome.result.after.trace.order[2:] == ((2, 2), (1, 2))
    assert outcome.result.swaps_rejected_by_guard >= 1
    assert (3, "b") in outcome.state_after.gamma and (4, "a") in outcome.state_after.gamma
