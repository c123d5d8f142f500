from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Mapping, Tuple, Union

from tracesimp.errors import InvalidState

VarKey = Union[str, Tuple[int, str]]

TRACE_COUNTER = "tc"

class SemanticsMode(Enum):
    """
    Replay keeps the input trace fixed; Dynamic lets Duplicate extend it.
    """
    REPLAY = "replay"
    DYNAMIC = "dynamic"

def render_key(key: VarKey) -> str:
    """Globals render as their name, thread locals as 'name^thread'."""
    if isinstance(key, tuple):
        return f"{key[1]}^{key[0]}"
    return key

@dataclass(frozen=True)
class TraceState:
    """
    A trace state (gamma, L, W).

    Attributes:
        gamma (Mapping): Variable valuation; keys are global names or
            (thread, local) pairs, and always include the trace counter 'tc'.
        locks (tuple): L, the threads requiring a lock, most recent first.
        watched (frozenset): W, the globals watched by Set0.
    """
    gamma: Mapping[VarKey, int] = field(default_factory=lambda: {TRACE_COUNTER: 0})
    locks: Tuple[int, ...] = ()
    watched: FrozenSet[str] = frozenset()

    def __post_init__(self):
        tc = self.gamma.get(TRACE_COUNTER)
        if not isinstance(tc, int) or tc < 0:
            raise InvalidState(f"The trace counter must be a non-negative integer, got {tc!r}.")

    @property
    def tc(self) -> int:
        return self.gamma[TRACE_COUNTER]

    def render(self) -> str:
        items = sorted((render_key(k), v) for k, v in self.gamma.items())
        gamma = ", ".join(f"{k}={v}" for k, v in items)
        locks = ", ".join(str(i) for i in self.locks)
        watched = ", ".join(sorted(self.watched))
        return f"gamma={{{gamma}}} L=[{locks}] W={{{watched}}}"
