import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from tracesimp.errors import InvalidState, UnboundVariable
from tracesimp.models.program import Program
from tracesimp.models.statement import Statement, StatementRef
from tracesimp.models.statement_kind import StatementKind as K
from tracesimp.models.trace import Trace
from tracesimp.models.trace_state import TRACE_COUNTER, SemanticsMode, TraceState, VarKey

logger = logging.getLogger(__name__)

StepHook = Callable[[Statement, TraceState], None]

@dataclass(frozen=True)
class Execution:
    """
    Result of running a trace. In Dynamic mode the program and trace include
    the threads spawned by Duplicate; in Replay mode they are the inputs.
    """
    state: TraceState
    program: Program
    trace: Trace

def _read(gamma: Dict[VarKey, int], key: VarKey, strict: bool) -> int:
    if key in gamma:
        return gamma[key]
    if strict:
        raise UnboundVariable(key)
    return 0

def _remove_latest(locks: Tuple[int, ...], thread: int) -> Tuple[int, ...]:
    # L is most recent first, so the first occurrence is the latest Require.
    position = locks.index(thread)
    return locks[:position] + locks[position + 1:]

def step(program: Program, stmt: Statement, state: TraceState,
         mode: SemanticsMode = SemanticsMode.REPLAY, strict: bool = False) -> Tuple[TraceState, Optional[Program]]:
    """
    Applies the transition rule of one statement.

    Parameters:
        program (Program): The (possibly already extended) program.
        stmt (Statement): The statement to execute.
        state (TraceState): The state before the statement.
        mode (SemanticsMode): Replay or Dynamic.
        strict (bool): Raise on unbound reads instead of reading 0.

    Returns:
        (TraceState, Program or None): The next state, and in Dynamic mode the
            program extended by the thread a Duplicate spawned.

    Raises:
        UnboundVariable: In strict mode, when Localize reads an unbound global
            or Share reads an unbound local.
    """
    gamma = dict(state.gamma)
    locks, watched = state.locks, state.watched
    spawned = None
    i = stmt.owner

    if stmt.kind is K.LOCALIZE:
        gamma[(i, stmt.local_name)] = _read(gamma, stmt.global_name, strict)
    elif stmt.kind is K.SHARE:
        gamma[stmt.global_name] = _read(gamma, (i, stmt.local_name), strict)
    elif stmt.kind is K.REQUIRE:
        locks = (i,) + locks
    elif stmt.kind is K.RELEASE:
        if i in locks:
            locks = _remove_latest(locks, i)
        else:
            logger.warning("release by thread %d at t%d#%d without a matching require (L=%s)",
                           i, stmt.owner, stmt.index, list(locks))
    elif stmt.kind is K.DUPLICATE:
        if mode is SemanticsMode.DYNAMIC:
            copy = [s for s in program.threads[i - 1] if s.kind is not K.DUPLICATE]
            if copy:
                spawned = program.with_thread(copy)
                logger.debug("duplicate at t%d#%d spawned thread %d", i, stmt.index, spawned.thread_count)
    elif stmt.kind is K.SET1:
        if stmt.global_name not in watched:
            gamma[stmt.global_name] = 1
    elif stmt.kind is K.SET0:
        watched = watched | {stmt.global_name}
    # initiate, ready and end only advance the counter

    gamma[TRACE_COUNTER] = gamma.get(TRACE_COUNTER, 0) + 1
    return TraceState(gamma, locks, frozenset(watched)), spawned

class TraceInterpreter:
    """
    Folds the transition rules over a trace, from an initial state to the
    final one.
    """

    def __init__(self):
        self.mode = None
        self.strict = None

    def initiate(self, mode: SemanticsMode = SemanticsMode.REPLAY, strict: bool = False) -> None:
        self.mode = mode
        self.strict = strict

    def run(self, program: Program, trace: Trace, initial: Optional[TraceState] = None,
            on_step: Optional[StepHook] = None) -> Execution:
        """
        Executes every position of the trace in order.

        Parameters:
            program (Program): The program.
            trace (Trace): A faithful trace of the program.
            initial (TraceState): Starting state, tc=0 and nothing bound by default.
            on_step (callable): Called with each statement and the state after it.

        Returns:
            Execution: The final state, with the extended program and trace
                when Dynamic mode spawned threads.

        Raises:
            InvalidState: The initial state watches a global that no Set0 or
                Set1 of the program names.
        """
        state = initial if initial is not None else TraceState()
        unknown = state.watched - program.watchable_globals()
        if unknown:
            raise InvalidState(f"Watched globals {sorted(unknown)} are not named by any set0/set1 of the program.")
        pending: List[StatementRef] = list(trace.order)
        u = 0
        while u < len(pending):
            stmt = program.statement(pending[u])
            state, spawned = step(program, stmt, state, self.mode, self.strict)
            if spawned is not None:
                program = spawned
                pending.extend(s.ref for s in program.threads[-1])
            if on_step is not None:
                on_step(stmt, state)
            u += 1
        return Execution(state, program, Trace(tuple(pending)))

def execute(program: Program, trace: Trace, initial: Optional[TraceState] = None,
            mode: SemanticsMode = SemanticsMode.REPLAY, strict: bool = False,
            on_step: Optional[StepHook] = None) -> Execution:
    interpreter = TraceInterpreter()
    interpreter.initiate(mode, strict)
    return interpreter.run(program, trace, initial, on_step)

def run(program: Program, trace: Trace, initial: Optional[TraceState] = None,
        mode: SemanticsMode = SemanticsMode.REPLAY, strict: bool = False) -> TraceState:
    """The final state of a trace; see TraceInterpreter.run."""
    return execute(program, trace, initial, mode, strict).state

def dump_line(stmt: Statement, state: TraceState) -> str:
    """'#<tc> <thread>:<kind> | gamma={...} L=[...] W={...}' for the state after stmt."""
    return f"#{state.tc} {stmt.owner}:{stmt.kind.value} | {state.render()}"

def dump(program: Program, trace: Trace, initial: Optional[TraceState] = None,
         mode: SemanticsMode = SemanticsMode.REPLAY, strict: bool = False) -> Tuple[Execution, List[str]]:
    lines: List[str] = []
    execution = execute(program, trace, initial, mode, strict,
                        on_step=lambda stmt, state: lines.append(dump_line(stmt, state)))
    return execution, lines
