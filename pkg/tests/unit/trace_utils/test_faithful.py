import pytest

from tracesimp.errors import (DuplicateStatement, ForeignStatement, LengthMismatch, OrderViolation)
from tracesimp.models.program import Program
from tracesimp.trace_utils.faithful import identity_trace, validate_faithful

@pytest.fixture
def small_program():
    """T1 = [a, b], T2 = [c]."""
    return Program.build([[("require",), ("release",)], [("ready",)]])

def test_interleaving_is_faithful(small_program):
    trace = validate_faithful(small_program, [(1, 1), (2, 1), (1, 2)])
    assert trace.threads() == (1, 2, 1)

def test_inversion_reports_both_positions(small_program):
    with pytest.raises(OrderViolation) as caught:
        validate_faithful(small_program, [(1, 2), (2, 1), (1, 1)])
    assert (caught.value.u, caught.value.v) == (1, 3), "Expected the two inverted positions."

def test_fig0_order_is_faithful(fig0):
    program, trace = fig0
    assert validate_faithful(program, trace.order) == trace
    assert len(trace) == 9

@pytest.mark.parametrize("order", [
    [(1, 1), (1, 2)],
    [(1, 1), (1, 2), (2, 1), (2, 1)],
])
def test_wrong_length(small_program, order):
    with pytest.raises(LengthMismatch):
        validate_faithful(small_program, order)

def test_duplicate_reference(small_program):
    with pytest.raises(DuplicateStatement) as caught:
        validate_faithful(small_program, [(1, 1), (1, 1), (2, 1)])
    assert (caught.value.first, caught.value.second) == (1, 2)

def test_foreign_reference(small_program):
    with pytest.raises(ForeignStatement):
        validate_faithful(small_program, [(1, 1), (3, 1), (2, 1)])

def test_identity_trace_is_accepted(small_program):
    assert identity_trace(small_program).order == ((1, 1), (1, 2), (2, 1))

def test_swapping_adjacent_same_thread_positions_fails(small_program):
    with pytest.raises(OrderViolation):
        validate_faithful(small_program, [(2, 1), (1, 2), (1, 1)])
