import logging
from typing import List, Optional, Sequence, Tuple

from tracesimp.errors import RangeOutOfOrder, RangeOverlap
from tracesimp.models.annotation import INITIAL, AnnotatedTrace, Annotation, Segment
from tracesimp.models.program import Program
from tracesimp.models.statement import StatementRef
from tracesimp.models.trace import Trace
from tracesimp.trace_utils.connect import depends, is_connected

logger = logging.getLogger(__name__)

PositionRange = Tuple[int, int]

def fold_joins(program: Program, order: Sequence[StatementRef],
               start: int = 1, prefix: Optional[Sequence[Annotation]] = None) -> List[Annotation]:
    """
    Runs the connectivity rules left to right over an order of references.
    The first statement opens a segment; every later statement either opens a
    new one when it is not connected to its predecessor or extends the
    running segment.

    With `prefix`, joins[0..start-1] are taken from it and only positions
    start..N are refolded.
    """
    joins = [INITIAL] if prefix is None else list(prefix[:start])
    previous = program.statement(order[start - 2]) if start > 1 else None
    for u in range(start, len(order) + 1):
        stmt = program.statement(order[u - 1])
        running = joins[-1]
        if previous is None or not is_connected(previous, stmt):
            joins.append(Annotation(u, u, stmt.owner, stmt.owner))
        else:
            joins.append(Annotation(running.s1, u, running.t1, stmt.owner))
        previous = stmt
    return joins

def annotate(program: Program, trace: Trace) -> AnnotatedTrace:
    """
    Annotates every join point of a faithful trace with its connectivity
    quadruple (segment start, running end, start thread, end thread).

    Parameters:
        program (Program): The program the trace executes.
        trace (Trace): A faithful trace of the program.

    Returns:
        AnnotatedTrace: The trace with N_P + 1 join annotations.
    """
    return AnnotatedTrace(trace, tuple(fold_joins(program, trace.order)))

def segments_of(annotated: AnnotatedTrace) -> List[Segment]:
    """
    Finalises segment ends, which the forward pass only learns afterwards:
    position u closes a segment when it is the last one or the next position
    opens a new segment.
    """
    joins = annotated.joins
    size = len(annotated.trace)
    segments = []
    for u in range(1, size + 1):
        if u == size or joins[u + 1].s1 == u + 1:
            segments.append(Segment(joins[u].s1, u, joins[u].t1, joins[u].t2))
    return segments

def _check_range(trace: Trace, rng: PositionRange) -> None:
    lo, hi = rng
    trace.ref_at(lo)
    trace.ref_at(hi)
    if lo > hi:
        raise RangeOutOfOrder(f"Range {lo}..{hi} is reversed.")

def blocks_independent(program: Program, trace: Trace, first: PositionRange, second: PositionRange) -> bool:
    """
    Decides whether the block `first` may be moved behind the block `second`
    without breaking faithfulness or reordering a dependence.

    Parameters:
        program (Program): The program.
        trace (Trace): The trace both ranges index into.
        first (tuple): (lo, hi) of the earlier block.
        second (tuple): (lo, hi) of the later block.

    Returns:
        bool: True iff no thread owns statements in both blocks and no
            statement of `first` depends on a statement of `second`.

    Raises:
        RangeOverlap: The ranges share a position.
        RangeOutOfOrder: A range is reversed or `second` starts before `first`.
        PositionOutOfRange: A bound lies outside the trace.
    """
    _check_range(trace, first)
    _check_range(trace, second)
    if first[0] <= second[1] and second[0] <= first[1]:
        raise RangeOverlap(f"Ranges {first[0]}..{first[1]} and {second[0]}..{second[1]} overlap.")
    if second[0] < first[0]:
        raise RangeOutOfOrder(f"Range {second[0]}..{second[1]} precedes {first[0]}..{first[1]}.")
    return order_blocks_independent(program, trace.order, first, second)

def order_blocks_independent(program: Program, order: Sequence[StatementRef],
                             first: PositionRange, second: PositionRange) -> bool:
    """blocks_independent over a raw order, without range validation."""
    left = [program.statement(ref) for ref in order[first[0] - 1:first[1]]]
    right = [program.statement(ref) for ref in order[second[0] - 1:second[1]]]
    if {s.owner for s in left} & {s.owner for s in right}:
        return False
    for x in left:
        for y in right:
            if depends(x, y):
                logger.debug("t%d#%d depends on t%d#%d", x.owner, x.index, y.owner, y.index)
                return False
    return True
