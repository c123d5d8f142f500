import logging
import time
from dataclasses import dataclass, field
from typing import List, Optional

from tracesimp.checkers.context_switch_checker import ContextSwitchChecker
from tracesimp.checkers.equivalence_checker import states_equivalent
from tracesimp.connectivity_analyzer import annotate
from tracesimp.errors import InstanceTooLarge, OracleRefused
from tracesimp.models.annotation import AnnotatedTrace
from tracesimp.models.derivation import ReductionResult
from tracesimp.models.program import Program
from tracesimp.models.report import Report, reduction_percent
from tracesimp.models.trace import Trace
from tracesimp.models.trace_state import SemanticsMode, TraceState
from tracesimp.optimum_oracle import DEFAULT_LIMIT, oracle_min_cs
from tracesimp.trace_interpreter import TraceInterpreter
from tracesimp.trace_reducer import FINAL_SEGMENT, TraceReducer
from tracesimp.trace_utils.context_switches import context_switch_count

logger = logging.getLogger(__name__)

ORACLE_OFF = "off"
ORACLE_ON = "on"
ORACLE_AUTO = "auto"

@dataclass
class SimplificationOutcome:
    """Everything one pipeline run produced, with the two check verdicts."""
    report: Report
    result: ReductionResult
    state_before: TraceState
    state_after: TraceState
    switches_ok: bool
    states_ok: bool
    problems: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.switches_ok and self.states_ok

def _timed(runs: int, action):
    """Runs action `runs` times; returns the last value and the mean wall time in ms."""
    value, total = None, 0.0
    for _ in range(runs):
        started = time.perf_counter()
        value = action()
        total += time.perf_counter() - started
    return value, 1000.0 * total / runs

class TraceSimplifier:
    """
    The six-phase simplification pipeline: count switches, annotate, run the
    semantics, reduce, recount, and run the semantics again on the result.
    The two semantics runs are compared, and so are the two counts.
    """

    def __init__(self):
        self.reducer = None
        self.interpreter = None
        self.switch_checker = None
        self.strict_locks = None
        self.oracle = None
        self.oracle_limit = None
        self.runs = None

    def initiate(self, mode: SemanticsMode = SemanticsMode.REPLAY, strict_vars: bool = False,
                 strict_locks: bool = False, fixpoint: int = 1, oracle: str = ORACLE_OFF,
                 oracle_limit: int = DEFAULT_LIMIT, s_condition: str = FINAL_SEGMENT,
                 debug_checks: bool = False, runs: int = 1) -> None:
        """
        Installs the pipeline options.

        Parameters:
            mode (SemanticsMode): Semantics used for both runs.
            strict_vars (bool): Unbound reads raise instead of reading 0.
            strict_locks (bool): Compare lock lists in order, not as multisets.
            fixpoint (int): Maximum reduction rounds.
            oracle (str): "off", "on" (refuse large instances) or "auto"
                (skip instances above the limit).
            oracle_limit (int): Largest N_P searched exhaustively.
            s_condition (str): Rule-S comparison, see TraceReducer.
            debug_checks (bool): Extra assertions inside the reducer.
            runs (int): Repetitions averaged into each timing.
        """
        if oracle not in (ORACLE_OFF, ORACLE_ON, ORACLE_AUTO):
            raise ValueError(f"Unknown oracle setting '{oracle}'.")
        if runs < 1:
            raise ValueError(f"runs must be at least 1, got {runs}.")
        self.reducer = TraceReducer()
        self.reducer.initiate(s_condition=s_condition, debug_checks=debug_checks, max_rounds=fixpoint)
        self.interpreter = TraceInterpreter()
        self.interpreter.initiate(mode, strict_vars)
        self.switch_checker = ContextSwitchChecker()
        self.switch_checker.initiate()
        self.strict_locks = strict_locks
        self.oracle = oracle
        self.oracle_limit = oracle_limit
        self.runs = runs

    def run(self, name: str, program: Program, trace: Trace,
            initial: Optional[TraceState] = None) -> SimplificationOutcome:
        """
        Simplifies one trace.

        Parameters:
            name (str): Label for the report row.
            program (Program): The program.
            trace (Trace): A faithful trace of the program.
            initial (TraceState): Common initial state of both semantics runs.

        Returns:
            SimplificationOutcome: Report row, reduction result and verdicts.

        Raises:
            OracleRefused: The oracle is "on" and N_P exceeds the limit.
        """
        if self.oracle == ORACLE_ON and len(trace) > self.oracle_limit:
            raise OracleRefused(f"{name}: {len(trace)} statements exceed the oracle limit of {self.oracle_limit}.")

        cs_before = context_switch_count(trace)
        annotated, analysis_ms = _timed(self.runs, lambda: annotate(program, trace))
        logger.info("%s: annotated %d statements in %.3f ms", name, len(trace), analysis_ms)
        before, semantics_before_ms = _timed(self.runs, lambda: self.interpreter.run(program, trace, initial))
        result, transform_ms = _timed(self.runs, lambda: self._reduce(program, annotated))
        logger.info("%s: reduced %d -> %d switches in %.3f ms", name, result.cs_before, result.cs_after, transform_ms)
        cs_after = context_switch_count(result.after.trace)
        after, semantics_after_ms = _timed(self.runs, lambda: self.interpreter.run(program, result.after.trace, initial))

        problems = []
        switches_ok, _, _, problem = self.switch_checker.run(program, result)
        if cs_before != result.cs_before or cs_after != result.cs_after:
            switches_ok = False
            problem = problem or "switch counts disagree with the pipeline's own count"
        if problem:
            problems.append(problem)
        states_ok = states_equivalent(before.state, after.state, self.strict_locks)
        if not states_ok:
            problems.append(f"final states differ: {before.state.render()} vs {after.state.render()}")
        for message in problems:
            logger.error("%s: %s", name, message)

        oracle_value = None
        if self.oracle != ORACLE_OFF:
            try:
                oracle_value, _ = oracle_min_cs(program, trace, self.oracle_limit)
            except InstanceTooLarge:
                logger.info("%s: oracle skipped, %d statements", name, len(trace))

        report = Report(name=name, thread_count=program.thread_count, statement_count=program.statement_count,
                        cs_before=cs_before, cs_after=cs_after,
                        reduction_percent=reduction_percent(cs_before, cs_after),
                        analysis_time_ms=analysis_ms, transform_time_ms=transform_ms,
                        semantics_before_ms=semantics_before_ms, semantics_after_ms=semantics_after_ms,
                        swaps_rejected_by_guard=result.swaps_rejected_by_guard,
                        oracle_min_cs=oracle_value)
        return SimplificationOutcome(report, result, before.state, after.state, switches_ok, states_ok, problems)

    def _reduce(self, program: Program, annotated: AnnotatedTrace) -> ReductionResult:
        return self.reducer.run_to_fixpoint(program, annotated)

if __name__ == "__main__":
    from tracesimp.benchmark_suite import fig0_instance

    simplifier = TraceSimplifier()
    simplifier.initiate(oracle=ORACLE_ON)
    outcome = simplifier.run(*fig0_instance())
    print(outcome.report)
    print("PASS" if outcome.passed else "FAIL")
