"""Falsifier, demo pipelines, JSON io and the command line."""

from .demos import DEFAULTS, PIPELINES, demo, replay, resolve_config
from .falsify import FalsifierBudget, FalsifierOutcome, Violation, falsify, run_falsifier
from .report import Report, exit_code

__all__ = [
    "DEFAULTS", "FalsifierBudget", "FalsifierOutcome", "PIPELINES", "Report", "Violation",
    "demo", "exit_code", "falsify", "replay", "resolve_config", "run_falsifier",
]
