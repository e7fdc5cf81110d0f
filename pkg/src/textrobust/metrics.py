"""Robustness aggregation: category means, mPC, rPC, and report rendering.

``mPC`` (mean performance under corruption) averages the F-measure over all
18 corruption types, each first averaged over its 5 severity levels. ``rPC``
(relative performance under corruption) divides mPC by the clean-set
F-measure, i.e. the fraction of clean performance retained.

Report tables render one row of percentages with one decimal
(Clean, N., B., W., D., G., mPC, rPC), rounding half-to-even; internal math
stays at full precision.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .catalog import CATEGORIES, CORRUPTIONS, SEVERITIES

__all__ = [
    "IncompleteGridError",
    "FGrid",
    "RobustnessReport",
    "compute_mpc",
    "compute_rpc",
    "category_means",
    "build_report",
    "render_report",
    "grid_from_corruption_means",
]


class IncompleteGridError(ValueError):
    """F-measure grid is missing cells; lists every absent (corruption, severity)."""

    def __init__(self, missing: list[tuple[str, int]]):
        self.missing = missing
        cells = ", ".join(f"({c}, {s})" for c, s in missing)
        super().__init__(f"incomplete F-measure grid; missing cells: {cells}")


@dataclass
class FGrid:
    """Clean F-measure plus the F-measure for every (corruption, severity) cell."""

    f_clean: float
    f: dict[tuple[str, int], float] = field(default_factory=dict)

    def check_complete(self) -> None:
        missing = [
            (name, sev) for name, _ in CORRUPTIONS for sev in SEVERITIES if (name, sev) not in self.f
        ]
        if missing:
            raise IncompleteGridError(missing)


@dataclass
class RobustnessReport:
    f_clean: float
    per_corruption_means: dict[str, float]
    category_means: dict[str, float]
    mpc: float
    rpc: float
    per_corruption: dict[str, list[float]] = field(default_factory=dict)
    name: str = ""


def _corruption_means(grid: FGrid) -> dict[str, float]:
    grid.check_complete()
    return {
        name: sum(grid.f[(name, s)] for s in SEVERITIES) / len(SEVERITIES) for name, _ in CORRUPTIONS
    }


def compute_mpc(grid: FGrid) -> float:
    """Mean F over all corruptions, each averaged over its severities."""
    means = _corruption_means(grid)
    return sum(means.values()) / len(means)


def compute_rpc(mpc: float, f_clean: float) -> float:
    """Fraction of clean performance retained under corruption."""
    if f_clean <= 0.0:
        raise ZeroDivisionError("clean F-measure must be positive to compute rPC")
    return mpc / f_clean


def category_means(grid: FGrid) -> dict[str, float]:
    """Mean of the per-corruption means within each category."""
    means = _corruption_means(grid)
    out = {}
    for cat in CATEGORIES:
        vals = [means[name] for name, c in CORRUPTIONS if c == cat]
        out[cat] = sum(vals) / len(vals)
    return out


def build_report(grid: FGrid, name: str = "") -> RobustnessReport:
    """Aggregate a complete grid into a report."""
    means = _corruption_means(grid)
    mpc = sum(means.values()) / len(means)
    return RobustnessReport(
        f_clean=grid.f_clean,
        per_corruption_means=means,
        category_means=category_means(grid),
        mpc=mpc,
        rpc=compute_rpc(mpc, grid.f_clean),
        per_corruption={name_: [grid.f[(name_, s)] for s in SEVERITIES] for name_, _ in CORRUPTIONS},
        name=name,
    )


_COLUMNS = ("Clean", "N.", "B.", "W.", "D.", "G.", "mPC", "rPC")


def _row_values(report: RobustnessReport) -> list[float]:
    cats = [report.category_means[c] for c in CATEGORIES]
    return [report.f_clean, *cats, report.mpc, report.rpc]


def _pct(value: float) -> str:
    # round-half-to-even at one decimal, as a percentage
    return f"{round(value * 100.0, 1):.1f}"


def render_report(report: RobustnessReport, fmt: str = "markdown") -> str:
    """Render a report as a one-row table ('markdown' or 'csv') or as JSON."""
    if fmt == "markdown":
        header = "| " + " | ".join(_COLUMNS) + " |"
        rule = "|" + "|".join(["---"] * len(_COLUMNS)) + "|"
        row = "| " + " | ".join(_pct(v) for v in _row_values(report)) + " |"
        return "\n".join([header, rule, row]) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(_COLUMNS)
        writer.writerow([_pct(v) for v in _row_values(report)])
        return buf.getvalue()
    if fmt == "json":
        doc = {
            "clean": report.f_clean,
            "per_corruption": report.per_corruption,
            "per_corruption_means": report.per_corruption_means,
            "category_means": report.category_means,
            "mpc": report.mpc,
            "rpc": report.rpc,
        }
        return json.dumps(doc, indent=1)
    raise ValueError(f"unknown report format {fmt!r}; expected 'markdown', 'csv', or 'json'")


def grid_from_corruption_means(means: dict[str, float], f_clean: float) -> FGrid:
    """Expand per-corruption mean F values into a constant-severity grid.

    Convenience for validating aggregation against published per-corruption
    tables, where only the severity-averaged value is reported.
    """
    f = {(name, s): means[name] for name, _ in CORRUPTIONS for s in SEVERITIES}
    return FGrid(f_clean=f_clean, f=f)
