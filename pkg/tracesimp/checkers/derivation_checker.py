from typing import Optional, Tuple

from tracesimp.derivation_replayer import replay_derivation
from tracesimp.errors import TraceError
from tracesimp.models.derivation import Derivation
from tracesimp.models.program import Program
from tracesimp.models.trace import Trace

class DerivationChecker:
    """
    Validates a reduction certificate: the derivation replayed on the original
    trace must reproduce the claimed reduced trace exactly.
    """

    def __init__(self):
        self.s_condition = None

    def initiate(self, s_condition: Optional[str] = None) -> None:
        # None replays under the condition each derivation records
        self.s_condition = s_condition

    def run(self, program: Program, before: Trace, derivation: Derivation,
            claimed: Trace) -> Tuple[bool, Optional[str]]:
        try:
            replayed = replay_derivation(program, before, derivation, self.s_condition)
        except TraceError as error:
            return False, str(error)
        if replayed.order != claimed.order:
            return False, f"replay gives {replayed.render()}, the document claims {claimed.render()}"
        return True, None
