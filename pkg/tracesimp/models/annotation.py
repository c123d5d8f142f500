from dataclasses import dataclass
from typing import Tuple

from .trace import Trace

@dataclass(frozen=True)
class Annotation:
    """
    Connectivity quadruple at a join point: first and last position of the
    current segment and the threads of those two statements.
    """
    s1: int
    s2: int
    t1: int
    t2: int

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.s1, self.s2, self.t1, self.t2)

INITIAL = Annotation(0, 0, 0, 0)

@dataclass(frozen=True)
class AnnotatedTrace:
    """
    A trace with N_P + 1 join annotations; joins[0] is the initial quadruple
    and joins[u] follows statement u.
    """
    trace: Trace
    joins: Tuple[Annotation, ...]

@dataclass(frozen=True)
class Segment:
    """A maximal run of connected adjacent statements."""
    start: int
    end: int
    start_thread: int
    end_thread: int

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.start, self.end, self.start_thread, self.end_thread)
