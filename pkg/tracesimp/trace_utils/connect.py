from typing import FrozenSet, Tuple

from tracesimp.errors import ForeignStatement
from tracesimp.models.program import Program
from tracesimp.models.statement import Statement
from tracesimp.models.statement_kind import StatementKind as K

# (earlier kind, later kind) pairs of C2 whose two statements share a thread.
_SAME_THREAD_SYNC = {
    (K.RELEASE, K.REQUIRE),
    (K.DUPLICATE, K.READY),
    (K.END, K.INITIATE),
}

# (earlier kind, later kind) pairs of C3 on one global, threads differ.
_GLOBAL_CONFLICTS = {
    (K.LOCALIZE, K.SHARE),
    (K.SHARE, K.LOCALIZE),
    (K.SHARE, K.SHARE),
}

SPAWN_COUNTER = frozenset({("d",)})

def in_sync_pairs(a: Statement, b: Statement) -> bool:
    """Membership of (a, b) in C2."""
    if (a.kind, b.kind) in _SAME_THREAD_SYNC:
        return a.owner == b.owner
    return a.kind is K.SET1 and b.kind is K.SET0 and a.global_name == b.global_name

def in_conflict_pairs(a: Statement, b: Statement) -> bool:
    """Membership of (a, b) in C3."""
    return (a.owner != b.owner
            and (a.kind, b.kind) in _GLOBAL_CONFLICTS
            and a.global_name == b.global_name)

def connect(program: Program, a: Statement, b: Statement) -> int:
    """
    The connectivity map: 1 iff (a, b) is in C1 (b follows a in its thread),
    C2 (synchronisation pair) or C3 (conflicting global access), else 0.

    Raises:
        ForeignStatement: If either statement is not part of the program.
    """
    for stmt in (a, b):
        if not program.contains(stmt):
            raise ForeignStatement(f"{stmt.render()} at t{stmt.owner}#{stmt.index} is not in the program.")
    return 1 if is_connected(a, b) else 0

def is_connected(a: Statement, b: Statement) -> bool:
    """connect without the membership check, for statements already taken from the program."""
    if a.owner == b.owner and b.index == a.index + 1:
        return True
    return in_sync_pairs(a, b) or in_conflict_pairs(a, b)

def footprint(stmt: Statement) -> Tuple[FrozenSet, FrozenSet]:
    """
    (reads, writes) of a statement under the transition rules. Keys are
    ('g', name) for globals, ('l', thread, name) for locals, ('w', name)
    for the watch flag of a global and ('d',) for the spawn counter that
    numbers the threads Duplicate creates. Lock-list and trace-counter
    effects are left out: they commute across threads.
    """
    g = stmt.global_name
    if stmt.kind is K.LOCALIZE:
        return frozenset({("g", g)}), frozenset({("l", stmt.owner, stmt.local_name)})
    if stmt.kind is K.SHARE:
        return frozenset({("l", stmt.owner, stmt.local_name)}), frozenset({("g", g)})
    if stmt.kind is K.SET1:
        return frozenset({("w", g)}), frozenset({("g", g)})
    if stmt.kind is K.SET0:
        return frozenset(), frozenset({("w", g)})
    if stmt.kind is K.DUPLICATE:
        return SPAWN_COUNTER, SPAWN_COUNTER
    return frozenset(), frozenset()

def depends(a: Statement, b: Statement) -> bool:
    """
    Whether two statements of different threads must keep their relative
    order: they form a C2/C3 pair in either order, or their footprints
    conflict. Statements of one thread are always ordered by the thread.
    """
    if a.owner == b.owner:
        return True
    if in_sync_pairs(a, b) or in_sync_pairs(b, a) or in_conflict_pairs(a, b) or in_conflict_pairs(b, a):
        return True
    reads_a, writes_a = footprint(a)
    reads_b, writes_b = footprint(b)
    return bool(writes_a & (reads_b | writes_b) or writes_b & reads_a)
