"""Utility functions for Darboux Lab."""

from darboux_lab.utils.config import load_config, resolve_threads
from darboux_lab.utils.logger import get_logger

__all__ = ["load_config", "resolve_threads", "get_logger"]
