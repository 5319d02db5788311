"""Darboux Lab - nonstationary oscillators built by time-dependent Darboux transformations."""

__version__ = "0.1.0"

from darboux_lab.checks import list_suites, run_suite
from darboux_lab.darboux import build_darboux
from darboux_lab.models import list_presets, load_scenario

__all__ = [
    "build_darboux",
    "list_presets",
    "list_suites",
    "load_scenario",
    "run_suite",
    "__version__",
]
