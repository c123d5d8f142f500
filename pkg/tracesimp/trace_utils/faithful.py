from typing import Dict, Iterable, Sequence, Tuple

from tracesimp.errors import (DuplicateStatement, ForeignStatement, LengthMismatch,
                              MissingStatement, OrderViolation)
from tracesimp.models.program import Program
from tracesimp.models.statement import StatementRef
from tracesimp.models.trace import Trace

def validate_faithful(program: Program, order: Iterable[Sequence[int]]) -> Trace:
    """
    Checks that an order of (thread, index) references is a faithful map for
    the program: every statement exactly once, each thread in its own order.

    Parameters:
        program (Program): The program the references point into.
        order: The (thread, index) references, position 1 first.

    Returns:
        Trace: The validated trace.

    Raises:
        LengthMismatch: The order is shorter or longer than N_P.
        ForeignStatement: A reference names no statement of the program.
        DuplicateStatement: A statement is referenced twice.
        OrderViolation: Two positions of one thread are inverted.
        MissingStatement: A statement is never referenced.
    """
    refs = [tuple(ref) for ref in order]
    if len(refs) != program.statement_count:
        raise LengthMismatch(program.statement_count, len(refs))

    seen: Dict[StatementRef, int] = {}
    latest: Dict[int, Tuple[int, int]] = {}  # thread -> (highest index so far, its position)
    for u, ref in enumerate(refs, start=1):
        if not program.has_ref(ref):
            raise ForeignStatement(f"Position {u} references t{ref[0]}#{ref[1]}, which is not in the program.")
        if ref in seen:
            raise DuplicateStatement(ref, seen[ref], u)
        seen[ref] = u
        owner, index = ref
        if owner in latest and latest[owner][0] > index:
            raise OrderViolation(latest[owner][1], u)
        if owner not in latest or latest[owner][0] < index:
            latest[owner] = (index, u)

    for ref in program.refs():
        if ref not in seen:
            raise MissingStatement(ref)
    return Trace(tuple(refs))

def identity_trace(program: Program) -> Trace:
    """Threads concatenated in order; faithful for every program."""
    return validate_faithful(program, program.refs())
