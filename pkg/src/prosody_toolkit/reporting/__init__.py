"""Report rendering for evaluation results."""

from .reporter import Reporter, ReportFormat, render_report

__all__ = ["Reporter", "ReportFormat", "render_report"]
