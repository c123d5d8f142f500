import pytest

from tracesimp.errors import ForeignStatement
from tracesimp.models.program import Program
from tracesimp.models.statement import Statement
from tracesimp.models.statement_kind import StatementKind as K
from tracesimp.trace_utils.connect import connect, depends, footprint

@pytest.fixture
def program():
    return Program.build([
        [("set1", "g"), ("localize", "l", "g"), ("share", "l", "g"), ("release",), ("require",)],
        [("set0", "g"), ("localize", "m", "g"), ("share", "m", "g"), ("localize", "m", "h")],
    ])

def stmt(program, owner, index):
    return program.statement((owner, index))

def test_signal_then_wait_is_connected(program):
    assert connect(program, stmt(program, 1, 1), stmt(program, 2, 1)) == 1

def test_wait_then_signal_is_not_listed(program):
    assert connect(program, stmt(program, 2, 1), stmt(program, 1, 1)) == 0

def test_two_reads_are_not_connected(program):
    assert connect(program, stmt(program, 1, 2), stmt(program, 2, 2)) == 0

@pytest.mark.parametrize("a, b", [((1, 2), (2, 3)), ((1, 3), (2, 2)), ((1, 3), (2, 3))])
def test_conflicting_global_accesses(program, a, b):
    assert connect(program, stmt(program, *a), stmt(program, *b)) == 1

def test_different_globals_are_not_connected(program):
    assert connect(program, stmt(program, 1, 3), stmt(program, 2, 4)) == 0

def test_thread_successor_is_connected(program):
    assert connect(program, stmt(program, 2, 3), stmt(program, 2, 4)) == 1
    assert connect(program, stmt(program, 2, 2), stmt(program, 2, 4)) == 0, "Only the direct successor counts."

def test_release_then_require_same_thread(program):
    assert connect(program, stmt(program, 1, 4), stmt(program, 1, 5)) == 1

def test_foreign_statement(program):
    stranger = Statement(K.END, 1, 1)
    with pytest.raises(ForeignStatement):
        connect(program, stranger, stmt(program, 2, 1))

def test_footprints():
    share = Statement(K.SHARE, 1, 1, "l", "g")
    reads, writes = footprint(share)
    assert ("l", 1, "l") in reads and ("g", "g") in writes
    assert footprint(Statement(K.REQUIRE, 1, 1)) == (frozenset(), frozenset())

def test_depends_covers_unlisted_conflicts(program):
    # listed only as signal-then-wait, but the reverse order must be kept as well
    assert depends(stmt(program, 2, 1), stmt(program, 1, 1))
    # a signal writes g, which a later read observes
    assert depends(stmt(program, 1, 1), stmt(program, 2, 2))
    assert not depends(stmt(program, 1, 2), stmt(program, 2, 2))
    assert not depends(stmt(program, 1, 4), stmt(program, 2, 4))

def test_duplicates_of_different_threads_keep_their_order():
    program = Program.build([[("duplicate",), ("require",)], [("duplicate",)]])
    assert depends(stmt(program, 1, 1), stmt(program, 2, 1))
    assert not depends(stmt(program, 1, 2), stmt(program, 2, 1))
