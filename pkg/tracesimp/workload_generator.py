import logging
import random
from typing import Dict, Iterator, List, Sequence, Tuple

from tracesimp.errors import InvalidSpec
from tracesimp.models.gen_spec import GenSpec
from tracesimp.models.program import Program
from tracesimp.models.statement_kind import StatementKind as K
from tracesimp.models.trace import Trace
from tracesimp.trace_utils.connect import in_conflict_pairs
from tracesimp.trace_utils.faithful import validate_faithful

logger = logging.getLogger(__name__)

MAX_THREADS = 16

def validate_spec(spec: GenSpec) -> Dict[K, float]:
    """
    Checks a GenSpec and returns the effective kind weights (Duplicate
    dropped unless allowed).

    Raises:
        InvalidSpec: On any out-of-range field.
    """
    if not 1 <= spec.thread_count <= MAX_THREADS:
        raise InvalidSpec(f"thread_count must be in 1..{MAX_THREADS}, got {spec.thread_count}.")
    low, high = spec.statements_per_thread
    if low < 1 or high < low:
        raise InvalidSpec(f"statements_per_thread must be a range 1 <= low <= high, got {low}..{high}.")
    if spec.global_pool < 1 or spec.local_pool < 1:
        raise InvalidSpec("global_pool and local_pool must be at least 1.")
    if not 0.0 <= spec.switch_bias <= 1.0:
        raise InvalidSpec(f"switch_bias must be in [0, 1], got {spec.switch_bias}.")
    if not 0.0 <= spec.hot_global_bias <= 1.0:
        raise InvalidSpec(f"hot_global_bias must be in [0, 1], got {spec.hot_global_bias}.")
    weights = {}
    for kind, weight in spec.kind_weights.items():
        if not isinstance(kind, K):
            raise InvalidSpec(f"Unknown statement kind {kind!r}.")
        if weight < 0:
            raise InvalidSpec(f"Weight of {kind.value} is negative.")
        if kind is K.DUPLICATE and not spec.allow_duplicate:
            continue
        if weight > 0:
            weights[kind] = weight
    if not weights:
        raise InvalidSpec("At least one statement kind needs a positive weight.")
    return weights

def _draw_statement(rng: random.Random, kind: K, spec: GenSpec) -> tuple:
    if kind.takes_local:
        # Localize/Share take the shared global g0 with probability hot_global_bias
        shared = "g0" if rng.random() < spec.hot_global_bias else f"g{rng.randrange(spec.global_pool)}"
        return (kind, f"l{rng.randrange(spec.local_pool)}", shared)
    if kind.takes_global:
        return (kind, f"g{rng.randrange(spec.global_pool)}")
    return (kind,)

def gen_program(spec: GenSpec) -> Program:
    """
    Draws a random program. Identical specs give identical programs.

    Parameters:
        spec (GenSpec): Thread count, thread lengths, operand pools, kind
            weights and seed.

    Returns:
        Program: A program in which every watched global is also signalled.

    Raises:
        InvalidSpec: If the spec is out of range.
    """
    weights = validate_spec(spec)
    rng = random.Random(spec.seed)
    kinds, kind_weights = list(weights), list(weights.values())
    low, high = spec.statements_per_thread
    rows: List[List[tuple]] = []
    for _ in range(spec.thread_count):
        length = rng.randint(low, high)
        chosen = rng.choices(kinds, weights=kind_weights, k=length)
        rows.append([_draw_statement(rng, kind, spec) for kind in chosen])
    _pair_waits_with_signals(rng, rows)
    return Program.build(rows)

def _pair_waits_with_signals(rng: random.Random, rows: List[List[tuple]]) -> None:
    """Gives every Set0(g) a Set1(g) by overwriting a statement that is neither."""
    waited = sorted({s[1] for row in rows for s in row if s[0] is K.SET0})
    signalled = {s[1] for row in rows for s in row if s[0] is K.SET1}
    for name in waited:
        if name in signalled:
            continue
        slots = [(t, j) for t, row in enumerate(rows) for j, s in enumerate(row)
                 if s[0] not in (K.SET0, K.SET1)]
        if slots:
            t, j = rng.choice(slots)
        else:
            t, j = next((t, j) for t, row in enumerate(rows) for j, s in enumerate(row)
                        if s[0] is K.SET0 and s[1] == name)
        rows[t][j] = (K.SET1, name)
        signalled.add(name)

def gen_trace(program: Program, switch_bias: float, seed: int) -> Trace:
    """
    A random faithful interleaving. At every step after the first the
    scheduler moves to another thread with probability switch_bias (or when
    the current thread has run out).
    """
    rng = random.Random(seed)
    sizes = {t: len(thread) for t, thread in enumerate(program.threads, start=1)}
    cursor = {t: 1 for t in sizes}
    order = []
    current = rng.choice(list(sizes))
    while len(order) < program.statement_count:
        active = [t for t in sizes if cursor[t] <= sizes[t]]
        others = [t for t in active if t != current]
        if others and (current not in active or (order and rng.random() < switch_bias)):
            current = rng.choice(others)
        order.append((current, cursor[current]))
        cursor[current] += 1
    return validate_faithful(program, order)

def gen_pingpong_trace(program: Program, pairs: Sequence[Tuple[int, int]], burst: int) -> Trace:
    """
    A deterministic high-contention schedule: the pairs take turns, each
    pair alternating its two threads statement by statement for `burst`
    rounds. Whatever the pairs leave over runs afterwards in thread order.
    """
    cursor = {t: 1 for t in range(1, program.thread_count + 1)}
    sizes = {t: len(thread) for t, thread in enumerate(program.threads, start=1)}
    order = []

    def emit(t: int) -> bool:
        if cursor[t] > sizes[t]:
            return False
        order.append((t, cursor[t]))
        cursor[t] += 1
        return True

    progressed = True
    while progressed:
        progressed = False
        for pair in pairs:
            for _ in range(burst):
                for t in pair:
                    progressed = emit(t) or progressed
    for t in sizes:
        while emit(t):
            pass
    return validate_faithful(program, order)

def adjacent_conflicts(program: Program, trace: Trace) -> Tuple[int, int]:
    """
    (conflicting, candidates) over adjacent trace positions of different
    threads that both hold a Localize or Share; a pair conflicts when it is
    in C3.
    """
    conflicting, candidates = 0, 0
    statements = [program.statement(ref) for ref in trace.order]
    for a, b in zip(statements, statements[1:]):
        if a.owner != b.owner and a.kind.takes_local and b.kind.takes_local:
            candidates += 1
            conflicting += in_conflict_pairs(a, b)
    return conflicting, candidates

def random_instances(count: int, seed: int = 0, max_threads: int = 8, max_length: int = 25,
                     biases: Sequence[float] = (0.1, 0.5, 0.9)) -> Iterator[Tuple[GenSpec, Program, Trace]]:
    """
    Seeded (spec, program, trace) instances for property suites; thread
    counts and lengths vary so N_P stays within max_threads * max_length.
    """
    rng = random.Random(seed)
    for n in range(count):
        spec = GenSpec(thread_count=rng.randint(1, max_threads),
                       statements_per_thread=(1, rng.randint(1, max_length)),
                       global_pool=rng.randint(1, 4),
                       local_pool=rng.randint(1, 3),
                       switch_bias=biases[n % len(biases)],
                       seed=rng.getrandbits(64))
        program = gen_program(spec)
        yield spec, program, gen_trace(program, spec.switch_bias, spec.seed)
