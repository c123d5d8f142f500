import logging
from functools import lru_cache
from typing import Dict, List, Tuple

import networkx as nx

from tracesimp.errors import InstanceTooLarge
from tracesimp.models.program import Program
from tracesimp.models.statement import StatementRef
from tracesimp.models.trace import Trace
from tracesimp.trace_utils.connect import depends

logger = logging.getLogger(__name__)

DEFAULT_LIMIT = 10

def dependence_graph(program: Program, trace: Trace) -> nx.DiGraph:
    """
    The happens-before DAG every equivalent trace must respect: program order
    inside each thread plus, for every dependent cross-thread pair, an edge
    in the direction the input trace executed it.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(trace.order)
    for thread in program.threads:
        for earlier, later in zip(thread, thread[1:]):
            graph.add_edge(earlier.ref, later.ref)
    statements = [program.statement(ref) for ref in trace.order]
    for u, a in enumerate(statements):
        for b in statements[u + 1:]:
            if a.owner != b.owner and depends(a, b):
                graph.add_edge(a.ref, b.ref)
    assert nx.is_directed_acyclic_graph(graph), "dependence graph is not a DAG"
    return graph

def oracle_min_cs(program: Program, trace: Trace, limit: int = DEFAULT_LIMIT) -> Tuple[int, Trace]:
    """
    Finds the fewest context switches over every faithful trace that keeps
    the input's order on each dependent pair, by exhaustive search over the
    dependence DAG's linear extensions (memoised on placed set and last thread).

    Parameters:
        program (Program): The program.
        trace (Trace): A faithful trace; its CS bounds the result from above.
        limit (int): Largest N_P searched.

    Returns:
        (int, Trace): The minimum CS and the first witness trace found when
            candidates are tried in (thread, index) order.

    Raises:
        InstanceTooLarge: N_P exceeds limit.
    """
    size = len(trace)
    if size > limit:
        raise InstanceTooLarge(size, limit)

    graph = dependence_graph(program, trace)
    nodes: List[StatementRef] = sorted(graph.nodes)
    bit: Dict[StatementRef, int] = {ref: 1 << i for i, ref in enumerate(nodes)}
    needs = [sum(bit[p] for p in graph.predecessors(ref)) for ref in nodes]
    full = (1 << len(nodes)) - 1

    @lru_cache(maxsize=None)
    def best(placed: int, last: int) -> Tuple[int, int]:
        """(fewest switches to finish, index of the node to place next)."""
        if placed == full:
            return 0, -1
        choice, lowest = -1, None
        for i, ref in enumerate(nodes):
            if placed & (1 << i) or needs[i] & ~placed:
                continue
            cost = (1 if last and ref[0] != last else 0) + best(placed | (1 << i), ref[0])[0]
            if lowest is None or cost < lowest:
                choice, lowest = i, cost
        return lowest, choice

    minimum, _ = best(0, 0)
    order, placed, last = [], 0, 0
    while placed != full:
        i = best(placed, last)[1]
        order.append(nodes[i])
        placed |= 1 << i
        last = nodes[i][0]
    logger.debug("oracle: %d statements, minimum %d switches", size, minimum)
    return minimum, Trace(tuple(order))
