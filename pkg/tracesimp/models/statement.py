from dataclasses import dataclass
from typing import Optional, Tuple

from tracesimp.errors import MalformedStatement
from .statement_kind import StatementKind

StatementRef = Tuple[int, int]

@dataclass(frozen=True)
class Statement:
    """
    One statement of a thread, identified by its owner thread and its 1-based
    index inside that thread.

    Attributes:
        kind (StatementKind): Which of the ten statements this is.
        owner (int): The thread id (1..n).
        index (int): Position inside the owner thread, starting at 1.
        local_name (str): Local operand of Localize/Share, None otherwise.
        global_name (str): Global operand of Localize/Share/Set1/Set0, None otherwise.
    """
    kind: StatementKind
    owner: int
    index: int
    local_name: Optional[str] = None
    global_name: Optional[str] = None

    def __post_init__(self):
        if self.owner < 1 or self.index < 1:
            raise MalformedStatement(f"Statement ids are 1-based, got t{self.owner}#{self.index}.")
        if self.kind.takes_local != (self.local_name is not None):
            raise MalformedStatement(f"{self.kind.value} at t{self.owner}#{self.index} has a wrong local operand.")
        if self.kind.takes_global != (self.global_name is not None):
            raise MalformedStatement(f"{self.kind.value} at t{self.owner}#{self.index} has a wrong global operand.")

    @property
    def ref(self) -> StatementRef:
        return (self.owner, self.index)

    def operands(self) -> Tuple[str, ...]:
        return tuple(name for name in (self.local_name, self.global_name) if name is not None)

    def render(self) -> str:
        """Document syntax, e.g. 'localize l1 g2' or 'set1 g0'."""
        return " ".join((self.kind.value,) + self.operands())
