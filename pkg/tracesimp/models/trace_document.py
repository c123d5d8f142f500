from dataclasses import dataclass
from typing import Optional

from .annotation import AnnotatedTrace
from .derivation import Derivation
from .program import Program
from .trace import Trace

FORMAT_VERSION = 1

@dataclass(frozen=True)
class TraceDocument:
    """
    Everything a trace file holds: the program, its trace and, optionally,
    the annotations, the pre-reduction trace (origin) and the derivation
    that turns origin into trace.
    """
    program: Program
    trace: Trace
    annotations: Optional[AnnotatedTrace] = None
    origin: Optional[Trace] = None
    derivation: Optional[Derivation] = None
    version: int = FORMAT_VERSION
