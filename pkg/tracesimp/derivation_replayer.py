import logging
from typing import Optional

from tracesimp.errors import DerivationMismatch
from tracesimp.models.derivation import Derivation, DerivationNode
from tracesimp.models.program import Program
from tracesimp.models.trace import Trace
from tracesimp.trace_reducer import ReductionWorkspace, split_point
from tracesimp.trace_utils.faithful import validate_faithful

logger = logging.getLogger(__name__)

def replay_derivation(program: Program, before: Trace, derivation: Derivation,
                      s_condition: Optional[str] = None) -> Trace:
    """
    Re-applies the swaps recorded in a derivation without re-running the
    reduction search. Each node's rule and witness are checked against the
    annotations recomputed at that point, so a tampered certificate is
    rejected rather than silently replayed.

    Parameters:
        program (Program): The program.
        before (Trace): The trace the derivation was produced from.
        derivation (Derivation): One root per reduction round.
        s_condition (str): Overrides the rule-S condition the derivation
            records.

    Returns:
        Trace: The reduced trace.

    Raises:
        DerivationMismatch: The tree does not fit the trace or a recorded
            decision contradicts the recomputed one.
    """
    condition = s_condition or derivation.s_condition
    order = before.order
    for round_number, root in enumerate(derivation.rounds, start=1):
        if (root.lo, root.hi) != (1, len(order)):
            raise DerivationMismatch(
                f"Round {round_number} covers {root.lo}..{root.hi}, the trace has positions 1..{len(order)}.")
        workspace = ReductionWorkspace(program, order, condition)
        _replay_node(workspace, root)
        order = tuple(workspace.order)
        logger.debug("round %d replayed", round_number)
    return validate_faithful(program, order)

def _replay_node(ws: ReductionWorkspace, node: DerivationNode) -> None:
    lo, hi = node.lo, node.hi
    if hi - lo + 1 <= 2:
        if node.children:
            raise DerivationMismatch(f"Leaf range {lo}..{hi} carries sub-derivations.")
        decision = ws.decide_pair(lo, hi)
        _compare(node, decision)
        if node.rule == "base2":
            ws.swap_blocks(lo, lo, hi)
        return

    mid = split_point(lo, hi)
    if len(node.children) != 2:
        raise DerivationMismatch(f"Range {lo}..{hi} needs two sub-derivations, found {len(node.children)}.")
    left, right = node.children
    if (left.lo, left.hi, right.lo, right.hi) != (lo, mid, mid + 1, hi):
        raise DerivationMismatch(
            f"Range {lo}..{hi} must split into {lo}..{mid} and {mid + 1}..{hi}, "
            f"found {left.lo}..{left.hi} and {right.lo}..{right.hi}.")
    _replay_node(ws, left)
    _replay_node(ws, right)
    _compare(node, ws.decide_split(lo, mid, hi))
    if node.rule == "S-swap":
        ws.swap_blocks(lo, mid, hi)

def _compare(node: DerivationNode, decision) -> None:
    if node.witness != decision.witness:
        raise DerivationMismatch(
            f"{node.rule} {node.lo}..{node.hi} records witness {node.witness}, recomputed {decision.witness}.")
    if node.rule != decision.rule:
        raise DerivationMismatch(
            f"{node.lo}..{node.hi} records {node.rule}, the annotations give {decision.rule}.")
