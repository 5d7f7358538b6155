"""Configuration, theorem suites, report emission and the command line."""

from .config import ConfigError, RunConfig, config_from_text, load_config
from .report import Report, emit_report
from .runner import run_suite
from .suites import SUITES, SuiteContext, TheoremCheckResult, run_suites

__all__ = [
    "ConfigError",
    "RunConfig",
    "config_from_text",
    "load_config",
    "Report",
    "emit_report",
    "run_suite",
    "SUITES",
    "SuiteContext",
    "TheoremCheckResult",
    "run_suites",
]
