from typing import Optional, Tuple

from tracesimp.errors import TraceError
from tracesimp.models.derivation import ReductionResult
from tracesimp.models.program import Program
from tracesimp.trace_utils.context_switches import context_switch_count
from tracesimp.trace_utils.faithful import validate_faithful

class ContextSwitchChecker:
    """
    Description:
    Checks that a reduction never adds context switches and that its output
    is still a faithful trace of the program.

    Input (run method):
    program (Program): The reduced program.
    result (ReductionResult): What the reducer returned.

    Output:
    Tuple[bool, int, int, Optional[str]]:
        - passed (bool): True if CS did not grow and the output is faithful.
        - cs_before (int): Recounted switches of the input trace.
        - cs_after (int): Recounted switches of the output trace.
        - problem (str): Why the check failed, None when it passed.
    """

    def __init__(self):
        self.require_faithful = None

    def initiate(self, require_faithful: bool = True) -> None:
        self.require_faithful = require_faithful

    def run(self, program: Program, result: ReductionResult) -> Tuple[bool, int, int, Optional[str]]:
        cs_before = context_switch_count(result.before.trace)
        cs_after = context_switch_count(result.after.trace)
        if (cs_before, cs_after) != (result.cs_before, result.cs_after):
            return False, cs_before, cs_after, (
                f"reported {result.cs_before} -> {result.cs_after}, recounted {cs_before} -> {cs_after}")
        if cs_after > cs_before:
            return False, cs_before, cs_after, f"context switches grew from {cs_before} to {cs_after}"
        if self.require_faithful:
            try:
                validate_faithful(program, result.after.trace.order)
            except TraceError as error:
                return False, cs_before, cs_after, f"output is not faithful: {error}"
        return True, cs_before, cs_after, None
