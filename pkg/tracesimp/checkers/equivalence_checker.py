from collections import Counter
from typing import Optional, Tuple

from tracesimp.models.program import Program
from tracesimp.models.trace import Trace
from tracesimp.models.trace_state import SemanticsMode, TraceState
from tracesimp.trace_interpreter import run

def states_equivalent(a: TraceState, b: TraceState, strict_locks: bool = False) -> bool:
    """
    Compares two trace states: gamma as maps (tc included), W as sets and L
    as multisets, or as lists when strict_locks is set.
    """
    if dict(a.gamma) != dict(b.gamma):
        return False
    if set(a.watched) != set(b.watched):
        return False
    if strict_locks:
        return tuple(a.locks) == tuple(b.locks)
    return Counter(a.locks) == Counter(b.locks)

class EquivalenceChecker:
    """
    Description:
    Runs a trace and its reduction from the same initial state and compares
    the final states, so a reduction that changed the program's outcome is
    caught.

    Input (run method):
    program (Program): The program.
    before (Trace): The original trace.
    after (Trace): The reduced trace.
    initial (TraceState): Optional common initial state.

    Output:
    Tuple[bool, TraceState, TraceState]:
        - equivalent (bool): True if the final states are equivalent.
        - state_before (TraceState): Final state of the original trace.
        - state_after (TraceState): Final state of the reduced trace.
    """

    def __init__(self):
        self.mode = None
        self.strict_vars = None
        self.strict_locks = None

    def initiate(self, mode: SemanticsMode = SemanticsMode.REPLAY, strict_vars: bool = False,
                 strict_locks: bool = False) -> None:
        self.mode = mode
        self.strict_vars = strict_vars
        self.strict_locks = strict_locks

    def run(self, program: Program, before: Trace, after: Trace,
            initial: Optional[TraceState] = None) -> Tuple[bool, TraceState, TraceState]:
        state_before = run(program, before, initial, self.mode, self.strict_vars)
        state_after = run(program, after, initial, self.mode, self.strict_vars)
        return states_equivalent(state_before, state_after, self.strict_locks), state_before, state_after
