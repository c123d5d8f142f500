from tracesimp.models.trace import Trace

def thread_at(trace: Trace, u: int) -> int:
    """
    Returns the thread owning the statement at position u (1-based).

    Raises:
        PositionOutOfRange: If u is not in 1..N_P.
    """
    return trace.ref_at(u)[0]

def diff(trace: Trace, u: int, v: int) -> int:
    """0 when positions u and v belong to the same thread, 1 otherwise."""
    return 0 if thread_at(trace, u) == thread_at(trace, v) else 1

def count_switches(threads) -> int:
    """Number of adjacent pairs with different threads in a thread pattern."""
    return sum(1 for a, b in zip(threads, threads[1:]) if a != b)

def context_switch_count(trace: Trace) -> int:
    """
    CS(t): the sum of diff(s, s+1) over adjacent positions.
    """
    return count_switches(trace.threads())
