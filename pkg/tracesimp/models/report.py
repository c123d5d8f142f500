from dataclasses import dataclass
from typing import Optional

@dataclass(frozen=True)
class Report:
    """
    One row of the simplification report; the columns follow the evaluation
    table (thread count, semantics and analysis timings, switches before/after).
    """
    name: str
    thread_count: int
    statement_count: int
    cs_before: int
    cs_after: int
    reduction_percent: float
    analysis_time_ms: float
    transform_time_ms: float
    semantics_before_ms: float
    semantics_after_ms: float
    swaps_rejected_by_guard: int
    oracle_min_cs: Optional[int] = None

def reduction_percent(cs_before: int, cs_after: int) -> float:
    if cs_before <= 0:
        return 0.0
    return 100.0 * (cs_before - cs_after) / cs_before
