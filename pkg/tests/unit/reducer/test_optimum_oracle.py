import pytest

from tracesimp.errors import InstanceTooLarge
from tracesimp.models.program import Program
from tracesimp.optimum_oracle import dependence_graph, oracle_min_cs
from tracesimp.trace_utils.context_switches import context_switch_count
from tracesimp.trace_utils.faithful import identity_trace, validate_faithful

def test_fig0_minimum(fig0):
    program, trace = fig0
    minimum, witness = oracle_min_cs(program, trace)
    assert minimum == 1
    assert witness.threads() == (1, 1, 1, 1, 2, 2, 2, 2, 2)
    assert context_switch_count(witness) == minimum

def test_witness_is_faithful(fig0):
    program, trace = fig0
    _, witness = oracle_min_cs(program, trace)
    assert validate_faithful(program, witness.order) == witness

def test_single_thread_needs_no_switch():
    program = Program.build([[("require",), ("release",), ("end",)]])
    assert oracle_min_cs(program, identity_trace(program))[0] == 0

def test_dependent_alternation_cannot_improve():
    program = Program.build([[("share", "a", "g"), ("share", "a", "g")],
                             [("share", "b", "g"), ("share", "b", "g")]])
    trace = validate_faithful(program, [(1, 1), (2, 1), (1, 2), (2, 2)])
    minimum, witness = oracle_min_cs(program, trace)
    assert minimum == 3
    assert witness == trace

def test_independent_threads_collapse_to_one_switch():
    program = Program.build([[("ready",)] * 4, [("ready",)] * 4])
    trace = validate_faithful(program, [(t, j) for j in range(1, 5) for t in (1, 2)])
    assert oracle_min_cs(program, trace)[0] == 1

def test_limit_is_enforced(fig0):
    program, trace = fig0
    with pytest.raises(InstanceTooLarge):
        oracle_min_cs(program, trace, limit=8)

def test_dependence_graph_edges(fig0):
    program, trace = fig0
    graph = dependence_graph(program, trace)
    assert graph.number_of_nodes() == 9
    assert graph.has_edge((1, 1), (1, 2)) and graph.has_edge((2, 4), (2, 5))
    # fig0's threads share no global, so only program order remains
    assert graph.number_of_edges() == 3 + 4
