from dataclasses import dataclass, field
from typing import Iterator, Tuple

from .annotation import AnnotatedTrace

FINAL_SEGMENT = "final-segment"
FIRST_STATEMENT = "first-statement"
S_CONDITIONS = (FINAL_SEGMENT, FIRST_STATEMENT)

RULES = ("base0", "base1", "base2", "S-swap", "S-noswap")
SWAP_RULES = ("base2", "S-swap")

@dataclass(frozen=True)
class DerivationNode:
    """
    One application of a reduction rule over positions lo..hi.

    Attributes:
        rule (str): One of RULES.
        lo (int): First position of the range.
        hi (int): Last position of the range.
        witness (Tuple[int, int]): The annotation threads compared, (t2 of the
            incoming annotation, t1 the rule compared it against).
        children (tuple): Sub-derivations; two for S nodes, none for leaves.
    """
    rule: str
    lo: int
    hi: int
    witness: Tuple[int, int]
    children: Tuple["DerivationNode", ...] = ()

    @property
    def swapped(self) -> bool:
        return self.rule in SWAP_RULES

    def walk(self) -> Iterator[Tuple[int, "DerivationNode"]]:
        """Pre-order (depth, node) pairs."""
        stack = [(0, self)]
        while stack:
            depth, node = stack.pop()
            yield depth, node
            for child in reversed(node.children):
                stack.append((depth + 1, child))

@dataclass(frozen=True)
class Derivation:
    """
    A certificate: one derivation tree per reduction round, applied in order,
    and the rule-S condition the rounds were decided under.
    """
    rounds: Tuple[DerivationNode, ...] = ()
    s_condition: str = FINAL_SEGMENT

    def swap_count(self) -> int:
        return sum(1 for root in self.rounds for _, node in root.walk() if node.swapped)

@dataclass(frozen=True)
class ReductionResult:
    """
    Outcome of one or more reduction passes, with the certificate that
    reproduces it.
    """
    before: AnnotatedTrace
    after: AnnotatedTrace
    derivation: Derivation
    cs_before: int
    cs_after: int
    swaps_applied: int
    swaps_rejected_by_guard: int
    rounds: int = 1
    round_cs: Tuple[int, ...] = field(default=())
