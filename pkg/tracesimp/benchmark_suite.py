"""
Fixed, versioned benchmark instances: small analogues of the classic
concurrency workloads (thread counts and statement mixes, not sizes) plus
the motivating two-thread example.
"""
import random
from typing import List, Tuple

from tracesimp.models.program import Program
from tracesimp.models.statement_kind import StatementKind as K
from tracesimp.models.trace import Trace
from tracesimp.trace_utils.faithful import validate_faithful
from tracesimp.workload_generator import gen_pingpong_trace

SUITE_VERSION = 1

Instance = Tuple[str, Program, Trace]

def fig0_instance() -> Instance:
    """
    Two threads, nine statements, three context switches: thread 1 copies
    ga through a local and takes a lock; thread 2 starts, copies gb, signals
    gs and ends.
    """
    program = Program.build([
        [("localize", "a", "ga"), ("share", "a", "ga"), ("require",), ("release",)],
        [("ready",), ("localize", "b", "gb"), ("share", "b", "gb"), ("set1", "gs"), ("end",)],
    ])
    order = [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (1, 3), (1, 4), (2, 4), (2, 5)]
    return "fig0", program, validate_faithful(program, order)

def philo_instance() -> Instance:
    """
    Six philosophers, each taking both forks and putting them back four
    times, scheduled in neighbouring pairs.
    """
    meal = [(K.REQUIRE,), (K.REQUIRE,), (K.RELEASE,), (K.RELEASE,)]
    program = Program.build([meal * 4 for _ in range(6)])
    pairs = [(1, 2), (3, 4), (5, 6), (2, 3), (4, 5), (6, 1)]
    return "philo", program, gen_pingpong_trace(program, pairs, burst=8)

def webdow_instance() -> Instance:
    """
    Three downloader threads working on private pages, with a rare
    signal/wait handshake on shared request flags.
    """
    rng = random.Random(SUITE_VERSION * 2003)
    rows = []
    for t in range(1, 4):
        row = []
        for _ in range(32):
            kind = rng.choice((K.LOCALIZE, K.SHARE, K.LOCALIZE, K.SHARE, K.READY))
            if kind is K.READY:
                row.append((kind,))
            else:
                row.append((kind, f"buf{rng.randrange(2)}", f"page{t}"))
        rows.append(row)
    rows[0][10] = (K.SET1, "req2")
    rows[1][28] = (K.SET0, "req2")
    rows[1][12] = (K.SET1, "req3")
    rows[2][29] = (K.SET0, "req3")
    program = Program.build(rows)
    return "webdow", program, gen_pingpong_trace(program, [(1, 2), (1, 3), (2, 3)], burst=8)

def merge_instance() -> Instance:
    """Eighteen fork/join workers, each merging into a private slot."""
    rows = []
    for t in range(1, 19):
        slot = f"m{t}"
        rows.append([(K.READY,), (K.LOCALIZE, "x", slot), (K.SHARE, "x", slot), (K.DUPLICATE,),
                     (K.LOCALIZE, "y", slot), (K.SHARE, "y", slot), (K.INITIATE,), (K.END,)])
    program = Program.build(rows)
    pairs = [(t, t + 1) for t in range(1, 19, 2)]
    return "merge", program, gen_pingpong_trace(program, pairs, burst=2)

def tsp_instance() -> Instance:
    """Five solvers reading a shared bound and occasionally publishing a better one."""
    rows = []
    for t in range(1, 6):
        row = []
        for k in range(6):
            row += [(K.LOCALIZE, "best", "bound"), (K.LOCALIZE, "d", f"dist{t}"), (K.SHARE, "d", f"dist{t}")]
            row.append((K.SHARE, "best", "bound") if (k + t) % 3 == 0 else (K.LOCALIZE, "d", f"dist{t}"))
        rows.append(row)
    program = Program.build(rows)
    pairs = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]
    return "tsp", program, gen_pingpong_trace(program, pairs, burst=4)

def benchmark_suite() -> List[Instance]:
    """
    The fixed benchmark instances, in report order.

    Returns:
        list: (name, Program, Trace) for philo, merge, tsp, webdow and fig0.
    """
    return [philo_instance(), merge_instance(), tsp_instance(), webdow_instance(), fig0_instance()]
