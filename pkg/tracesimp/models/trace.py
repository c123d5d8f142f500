from dataclasses import dataclass
from typing import Tuple

from tracesimp.errors import PositionOutOfRange
from .statement import StatementRef

@dataclass(frozen=True)
class Trace:
    """
    A faithful map: the program's statements in execution order, referenced by
    (thread, index). Positions are 1-based. Build one with validate_faithful.
    """
    order: Tuple[StatementRef, ...]

    def __len__(self) -> int:
        return len(self.order)

    def ref_at(self, u: int) -> StatementRef:
        if not 1 <= u <= len(self.order):
            raise PositionOutOfRange(u, len(self.order))
        return self.order[u - 1]

    def threads(self) -> Tuple[int, ...]:
        """The thread pattern, e.g. (1, 1, 2, 2, 2, 1, 1, 2, 2)."""
        return tuple(owner for owner, _ in self.order)

    def render(self) -> str:
        return " ".join(f"t{owner}#{index}" for owner, index in self.order)
