import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from tracesimp.connectivity_analyzer import fold_joins, order_blocks_independent
from tracesimp.errors import AnnotationMismatch
from tracesimp.models.annotation import AnnotatedTrace
from tracesimp.models.derivation import (FINAL_SEGMENT, FIRST_STATEMENT, S_CONDITIONS, Derivation,
                                         DerivationNode, ReductionResult)
from tracesimp.models.program import Program
from tracesimp.models.statement import StatementRef
from tracesimp.models.trace import Trace
from tracesimp.trace_utils.context_switches import count_switches

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class Decision:
    rule: str
    witness: Tuple[int, int]
    rejected: bool = False

def split_point(lo: int, hi: int) -> int:
    """Last position of the left half when splitting lo..hi at v = ceil(mu / 2)."""
    mu = hi - lo + 1
    return lo + (mu + 1) // 2 - 1

class ReductionWorkspace:
    """
    A mutable order with its join annotations kept current. The reducer and
    the derivation replayer both drive one of these, so a recorded decision
    is always recomputed by the same code that made it.
    """

    def __init__(self, program: Program, order: Sequence[StatementRef],
                 s_condition: str = FINAL_SEGMENT, debug_checks: bool = False):
        if s_condition not in S_CONDITIONS:
            raise ValueError(f"Unknown rule-S condition '{s_condition}', expected one of {S_CONDITIONS}.")
        self.program = program
        self.order: List[StatementRef] = list(order)
        self.s_condition = s_condition
        self.debug_checks = debug_checks
        self.joins = fold_joins(program, self.order)

    def thread(self, u: int) -> int:
        return self.order[u - 1][0]

    def window_switches(self, lo: int, hi: int) -> int:
        first = max(lo - 1, 1)
        last = min(hi + 1, len(self.order))
        return count_switches([owner for owner, _ in self.order[first - 1:last]])

    def decide_pair(self, lo: int, hi: int) -> Decision:
        """base0 for one statement; base1 or base2 for two."""
        incoming = self.joins[lo - 1].t2
        if lo == hi:
            return Decision("base0", (incoming, self.joins[hi].t1))
        witness = (incoming, self.joins[hi].t1)
        if incoming != self.joins[hi].t1 or self.joins[hi].s1 != hi:
            return Decision("base1", witness)
        if not order_blocks_independent(self.program, self.order, (lo, lo), (hi, hi)):
            return Decision("base1", witness, rejected=True)
        return Decision("base2", witness)

    def decide_split(self, lo: int, mid: int, hi: int) -> Decision:
        """
        Rule S over lo..hi after both halves are reduced: swap the halves when
        the incoming end thread matches the compared start thread, the halves
        are independent and the swap lowers the switches around the range.
        """
        incoming = self.joins[lo - 1].t2
        if self.s_condition == FIRST_STATEMENT:
            compared = self.thread(mid + 1)
        else:
            compared = self.joins[hi].t1
        witness = (incoming, compared)
        if incoming != compared:
            return Decision("S-noswap", witness)
        if not order_blocks_independent(self.program, self.order, (lo, mid), (mid + 1, hi)):
            return Decision("S-noswap", witness, rejected=True)
        before = self.window_switches(lo, hi)
        window = [owner for owner, _ in self.order[mid:hi] + self.order[lo - 1:mid]]
        if lo > 1:
            window.insert(0, self.thread(lo - 1))
        if hi < len(self.order):
            window.append(self.thread(hi + 1))
        if count_switches(window) >= before:
            return Decision("S-noswap", witness, rejected=True)
        return Decision("S-swap", witness)

    def swap_blocks(self, lo: int, mid: int, hi: int) -> None:
        """Moves lo..mid behind mid+1..hi and refolds the annotations from lo on."""
        merged_from = self.joins[lo - 1]
        self.order[lo - 1:hi] = self.order[mid:hi] + self.order[lo - 1:mid]
        self.joins = fold_joins(self.program, self.order, start=lo, prefix=self.joins)
        if self.debug_checks and lo > 1 and self.joins[lo].s1 != lo:
            if (self.joins[lo].s1, self.joins[lo].t1) != (merged_from.s1, merged_from.t1):
                raise AnnotationMismatch(
                    f"Merged segment at {lo} starts at {self.joins[lo].s1}, expected {merged_from.s1}.")

class TraceReducer:
    """
    Reduces the context switches of an annotated trace by binary recursion:
    single statements are kept (base0), adjacent pairs are kept (base1) or
    swapped (base2), and longer ranges are split at ceil(mu/2), reduced
    half by half and then optionally swapped as whole halves (rule S).
    Every swap is guarded by block independence, so the reduced trace runs
    to the same state.
    """

    def __init__(self):
        self.s_condition = None
        self.debug_checks = None
        self.max_rounds = None

    def initiate(self, s_condition: str = FINAL_SEGMENT, debug_checks: bool = False, max_rounds: int = 1) -> None:
        """
        Installs the reduction options.

        Parameters:
            s_condition (str): Which start thread rule S compares against,
                "final-segment" (default) or "first-statement".
            debug_checks (bool): Assert merged-segment starts after each swap.
            max_rounds (int): Passes run by run_to_fixpoint.
        """
        if s_condition not in S_CONDITIONS:
            raise ValueError(f"Unknown rule-S condition '{s_condition}', expected one of {S_CONDITIONS}.")
        if max_rounds < 1:
            raise ValueError(f"max_rounds must be at least 1, got {max_rounds}.")
        self.s_condition = s_condition
        self.debug_checks = debug_checks
        self.max_rounds = max_rounds

    def run(self, program: Program, annotated: AnnotatedTrace) -> ReductionResult:
        """
        Applies one reduction pass.

        Parameters:
            program (Program): The program the trace executes.
            annotated (AnnotatedTrace): Output of annotate on a faithful trace.

        Returns:
            ReductionResult: Before/after traces, switch counts and the derivation.

        Raises:
            AnnotationMismatch: The joins do not belong to the trace.
        """
        return self.run_to_fixpoint(program, annotated, max_rounds=1)

    def run_to_fixpoint(self, program: Program, annotated: AnnotatedTrace, max_rounds: int = None) -> ReductionResult:
        """
        Repeats reduction passes until the switch count stops falling or
        max_rounds passes have run. Each pass contributes one derivation root.
        """
        rounds_allowed = self.max_rounds if max_rounds is None else max_rounds
        if rounds_allowed < 1:
            raise ValueError(f"max_rounds must be at least 1, got {rounds_allowed}.")
        self._check_annotations(program, annotated)

        order = annotated.trace.order
        cs_before = count_switches([owner for owner, _ in order])
        roots, round_cs = [], []
        applied, rejected = 0, 0
        cs = cs_before
        while len(roots) < rounds_allowed:
            workspace = ReductionWorkspace(program, order, self.s_condition, self.debug_checks)
            counters = [0, 0]
            root = self._reduce_range(workspace, 1, len(order), counters)
            new_cs = count_switches([owner for owner, _ in workspace.order])
            roots.append(root)
            round_cs.append(new_cs)
            applied += counters[0]
            rejected += counters[1]
            logger.debug("round %d: %d -> %d switches, %d swaps, %d vetoed",
                         len(roots), cs, new_cs, counters[0], counters[1])
            order = tuple(workspace.order)
            if new_cs >= cs:
                break
            cs = new_cs

        after_trace = Trace(order)
        after = AnnotatedTrace(after_trace, tuple(fold_joins(program, order)))
        return ReductionResult(before=annotated, after=after,
                               derivation=Derivation(tuple(roots), self.s_condition),
                               cs_before=cs_before, cs_after=round_cs[-1],
                               swaps_applied=applied, swaps_rejected_by_guard=rejected,
                               rounds=len(roots), round_cs=tuple(round_cs))

    @staticmethod
    def _check_annotations(program: Program, annotated: AnnotatedTrace) -> None:
        expected = fold_joins(program, annotated.trace.order)
        if len(annotated.trace) != program.statement_count:
            raise AnnotationMismatch(
                f"Trace has {len(annotated.trace)} positions, program has {program.statement_count} statements.")
        if list(annotated.joins) != expected:
            for u, (got, want) in enumerate(zip(annotated.joins, expected)):
                if got != want:
                    raise AnnotationMismatch(f"Join {u} is {got.as_tuple()}, the trace gives {want.as_tuple()}.")
            raise AnnotationMismatch(f"Expected {len(expected)} joins, got {len(annotated.joins)}.")

    def _reduce_range(self, ws: ReductionWorkspace, lo: int, hi: int, counters: List[int]) -> DerivationNode:
        if hi - lo + 1 <= 2:
            decision = ws.decide_pair(lo, hi)
            if decision.rule == "base2":
                ws.swap_blocks(lo, lo, hi)
                counters[0] += 1
                logger.debug("base2 swapped %d..%d", lo, hi)
            counters[1] += decision.rejected
            return DerivationNode(decision.rule, lo, hi, decision.witness)

        mid = split_point(lo, hi)
        left = self._reduce_range(ws, lo, mid, counters)
        right = self._reduce_range(ws, mid + 1, hi, counters)
        decision = ws.decide_split(lo, mid, hi)
        if decision.rule == "S-swap":
            ws.swap_blocks(lo, mid, hi)
            counters[0] += 1
            logger.debug("S swapped %d..%d with %d..%d", lo, mid, mid + 1, hi)
        counters[1] += decision.rejected
        return DerivationNode(decision.rule, lo, hi, decision.witness, (left, right))

def reduce(program: Program, annotated: AnnotatedTrace, s_condition: str = FINAL_SEGMENT,
           debug_checks: bool = False) -> ReductionResult:
    """One reduction pass over an annotated trace."""
    reducer = TraceReducer()
    reducer.initiate(s_condition=s_condition, debug_checks=debug_checks)
    return reducer.run(program, annotated)

def reduce_to_fixpoint(program: Program, annotated: AnnotatedTrace, max_rounds: int,
                       s_condition: str = FINAL_SEGMENT, debug_checks: bool = False) -> ReductionResult:
    """Reduction passes until the switch count stops falling, at most max_rounds."""
    reducer = TraceReducer()
    reducer.initiate(s_condition=s_condition, debug_checks=debug_checks, max_rounds=max_rounds)
    return reducer.run_to_fixpoint(program, annotated)

if __name__ == "__main__":
    from tracesimp.benchmark_suite import fig0_instance
    from tracesimp.connectivity_analyzer import annotate

    name, program, trace = fig0_instance()
    result = reduce(program, annotate(program, trace))
    print(f"{name}: {result.cs_before} -> {result.cs_after}")
    print(result.after.trace.render())
