"""Application layer: channel classification, claim audits, figures, sweeps, CLI."""

from .audit import (
    CONSISTENT,
    INCONCLUSIVE,
    INCONSISTENT,
    AuditReport,
    audit_reflectionless,
    rerun,
    verify_suite,
)
from .classify import ChannelCategory, ChannelClass, classify_channels
from .figures import FigurePayload, figure_data, render_figure, write_figure
from .sweep import SweepResult, SweepSpec, resolve_workers, run_sweep, sweep_csv_bytes

__all__ = [
    "AuditReport",
    "CONSISTENT",
    "INCONCLUSIVE",
    "INCONSISTENT",
    "ChannelCategory",
    "ChannelClass",
    "FigurePayload",
    "SweepResult",
    "SweepSpec",
    "audit_reflectionless",
    "classify_channels",
    "figure_data",
    "render_figure",
    "rerun",
    "resolve_workers",
    "run_sweep",
    "sweep_csv_bytes",
    "verify_suite",
    "write_figure",
]
