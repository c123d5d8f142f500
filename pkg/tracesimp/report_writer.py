import csv
import io
import json
from dataclasses import asdict, fields
from statistics import mean
from typing import Optional, Sequence, Tuple

from tracesimp.models.report import Report

FORMATS = ("text", "json", "tsv")

# (header, attribute, format) for the text table
_COLUMNS = [
    ("name", "name", "{}"),
    ("TC", "thread_count", "{}"),
    ("N", "statement_count", "{}"),
    ("CS_b", "cs_before", "{}"),
    ("CS_a", "cs_after", "{}"),
    ("CR%", "reduction_percent", "{:.1f}"),
    ("analysis_ms", "analysis_time_ms", "{:.3f}"),
    ("TR_ms", "transform_time_ms", "{:.3f}"),
    ("SR_b_ms", "semantics_before_ms", "{:.3f}"),
    ("SR_a_ms", "semantics_after_ms", "{:.3f}"),
    ("vetoed", "swaps_rejected_by_guard", "{}"),
    ("oracle", "oracle_min_cs", "{}"),
]

def summarize(reports: Sequence[Report]) -> Tuple[float, Optional[float]]:
    """
    Arithmetic mean of the per-row reduction percentages, and the mean gap
    between reduced CS and the oracle minimum over rows that have one.
    """
    mean_reduction = mean(r.reduction_percent for r in reports) if reports else 0.0
    gaps = [r.cs_after - r.oracle_min_cs for r in reports if r.oracle_min_cs is not None]
    return mean_reduction, (mean(gaps) if gaps else None)

def _cell(report: Report, attribute: str, pattern: str) -> str:
    value = getattr(report, attribute)
    return "-" if value is None else pattern.format(value)

def format_text(reports: Sequence[Report], title: Optional[str] = None) -> str:
    rows = [[header for header, _, _ in _COLUMNS]]
    rows += [[_cell(r, attribute, pattern) for _, attribute, pattern in _COLUMNS] for r in reports]
    widths = [max(len(row[k]) for row in rows) for k in range(len(_COLUMNS))]
    lines = [title] if title else []
    lines += ["  ".join(cell.rjust(width) for cell, width in zip(row, widths)) for row in rows]
    mean_reduction, mean_gap = summarize(reports)
    lines.append(f"Mean reduction: {mean_reduction:.1f}%")
    if mean_gap is not None:
        lines.append(f"Mean oracle gap (CS_a - oracle): {mean_gap:.2f}")
    return "\n".join(lines) + "\n"

def format_json(reports: Sequence[Report]) -> str:
    mean_reduction, mean_gap = summarize(reports)
    payload = {
        "reports": [asdict(r) for r in reports],
        "mean_reduction_percent": mean_reduction,
        "mean_oracle_gap": mean_gap,
    }
    return json.dumps(payload, indent=2) + "\n"

def format_tsv(reports: Sequence[Report]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter='\t', lineterminator="\n")
    names = [f.name for f in fields(Report)]
    writer.writerow(names)
    for report in reports:
        writer.writerow(["" if getattr(report, n) is None else getattr(report, n) for n in names])
    return buffer.getvalue()

def format_reports(reports: Sequence[Report], output_format: str = "text", title: Optional[str] = None) -> str:
    if output_format == "json":
        return format_json(reports)
    if output_format == "tsv":
        return format_tsv(reports)
    if output_format == "text":
        return format_text(reports, title)
    raise ValueError(f"Unknown report format '{output_format}', expected one of {FORMATS}.")
