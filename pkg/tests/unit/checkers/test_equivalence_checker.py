import pytest

from tracesimp.checkers.equivalence_checker import EquivalenceChecker, states_equivalent
from tracesimp.connectivity_analyzer import annotate
from tracesimp.models.program import Program
from tracesimp.models.trace_state import TraceState
from tracesimp.trace_reducer import reduce
from tracesimp.trace_utils.faithful import validate_faithful

@pytest.fixture
def checker():
    equivalence_checker = EquivalenceChecker()
    equivalence_checker.initiate()
    return equivalence_checker

def test_identical_states():
    state = TraceState({"tc": 3, "g": 1}, (1,), frozenset({"g"}))
    assert states_equivalent(state, TraceState({"tc": 3, "g": 1}, (1,), frozenset({"g"})))

def test_lock_order_is_a_multiset():
    a = TraceState({"tc": 2}, (1, 2))
    b = TraceState({"tc": 2}, (2, 1))
    assert states_equivalent(a, b)
    assert not states_equivalent(a, b, strict_locks=True)

def test_lock_multiplicity_matters():
    assert not states_equivalent(TraceState({"tc": 2}, (1, 1)), TraceState({"tc": 2}, (1,)))

def test_one_binding_differs():
    assert not states_equivalent(TraceState({"tc": 1, "g": 0}), TraceState({"tc": 1, "g": 1}))

def test_unbound_is_not_zero():
    assert not states_equivalent(TraceState({"tc": 1}), TraceState({"tc": 1, "g": 0}))

def test_counter_is_compared():
    assert not states_equivalent(TraceState({"tc": 1}), TraceState({"tc": 2}))

def test_watch_sets_compared():
    assert not states_equivalent(TraceState(watched=frozenset({"g"})), TraceState())

def test_reduction_of_fig0_is_equivalent(checker, fig0):
    program, trace = fig0
    result = reduce(program, annotate(program, trace))
    equivalent, before, after = checker.run(program, trace, result.after.trace)
    assert equivalent, f"{before.render()} vs {after.render()}"

def test_swapped_requires_differ_only_in_lock_order():
    program = Program.build([[("require",)], [("require",)]])
    one = validate_faithful(program, [(1, 1), (2, 1)])
    other = validate_faithful(program, [(2, 1), (1, 1)])
    lenient, strict = EquivalenceChecker(), EquivalenceChecker()
    lenient.initiate()
    strict.initiate(strict_locks=True)
    assert lenient.run(program, one, other)[0]
    assert not strict.run(program, one, other)[0]

def test_reordered_writes_are_caught(checker):
    program = Program.build([[("share", "a", "g")], [("share", "b", "g")]])
    initial = TraceState({"tc": 0, (1, "a"): 1, (2, "b"): 2})
    one = validate_faithful(program, [(1, 1), (2, 1)])
    other = validate_faithful(program, [(2, 1), (1, 1)])
    equivalent, before, after = checker.run(program, one, other, initial)
    assert not equivalent
    assert (before.gamma["g"], after.gamma["g"]) == (2, 1)
