"""
Report Rendering
----------------

Turns an :class:`~prosody_toolkit.evaluation.EvalReport` into a table with
one row per system::

    system | [MOS] | Pitch σ | Pitch γ | Pitch κ | Pitch DTW | Energy MAE

Numbers carry 3 decimals; cells with no value (DTW and MAE of the
ground-truth row) are rendered as ``-``.  TSV output is header plus rows
only, for scripting.  Markdown output goes through the shared jinja2
table template and opens with a caption stating the kurtosis convention
and the DTW normalization mode.
"""

from __future__ import annotations

from pathlib import Path
from typing import Literal, Optional

from ..evaluation.corpus import EvalReport, EvalRow
from ..utils.logger import get_logger
from .tables import render_markdown_table, render_tsv_table

ReportFormat = Literal["tsv", "markdown"]

BASE_COLUMNS = ("Pitch σ", "Pitch γ", "Pitch κ", "Pitch DTW", "Energy MAE")


def format_value(value: Optional[float]) -> str:
    if value is None:
        return "-"
    return f"{round(value, 3) + 0.0:.3f}"


def report_header(report: EvalReport) -> list[str]:
    header = ["system"]
    if report.has_mos:
        header.append("MOS")
    return header + list(BASE_COLUMNS)


def report_cells(report: EvalReport, row: EvalRow) -> list[str]:
    cells = [row.system]
    if report.has_mos:
        cells.append(format_value(row.mos))
    moments = row.pitch_moments
    cells += [format_value(v) for v in (moments.sigma, moments.gamma, moments.kappa, row.pitch_dtw, row.energy_mae)]
    return cells


def report_caption(report: EvalReport) -> str:
    dtw = "normalized by len(a) + len(b)" if report.dtw_normalized else "the unnormalized accumulated cost"
    return f"Pitch κ is non-excess kurtosis (m4/m2²); Pitch DTW is {dtw}."


class Reporter:
    """Render evaluation reports as TSV or markdown and write them out."""

    def __init__(self) -> None:
        self.logger = get_logger(self.__class__.__name__)

    def render(self, report: EvalReport, fmt: ReportFormat = "tsv") -> str:
        header = report_header(report)
        rows = [report_cells(report, row) for row in report.rows]
        if fmt == "tsv":
            return render_tsv_table(header, rows)
        if fmt == "markdown":
            return render_markdown_table(header, rows, caption=report_caption(report))
        raise ValueError(f"unknown report format {fmt!r}")

    def write(self, path: str | Path, report: EvalReport, fmt: ReportFormat = "tsv") -> str:
        text = self.render(report, fmt)
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        self.logger.info("Wrote %s report with %d rows to %s", fmt, len(report.rows), path)
        return text


def render_report(report: EvalReport, fmt: ReportFormat = "tsv") -> str:
    return Reporter().render(report, fmt)


__all__ = ["Reporter", "ReportFormat", "render_report", "format_value", "report_header", "report_cells"]
