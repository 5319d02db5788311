"""Configuration management for Darboux Lab."""

import os

from dotenv import load_dotenv

from darboux_lab.utils.errors import ConfigError

# Load environment variables from .env file
load_dotenv()


def _positive_int(name: str, raw: str) -> int:
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from e
    if value < 1:
        raise ConfigError(f"{name} must be at least 1, got {value}")
    return value


def load_config() -> dict:
    """Load configuration from environment variables.

    Returns:
        Configuration dictionary with worker threads, output and log locations.

    Raises:
        ConfigError: If DARBOUX_LAB_THREADS is not a positive integer.
    """
    return {
        "threads": _positive_int("DARBOUX_LAB_THREADS", os.getenv("DARBOUX_LAB_THREADS", "1")),
        "output_dir": os.getenv("DARBOUX_LAB_OUT", "darboux_out"),
        "log_dir": os.getenv("DARBOUX_LAB_LOG_DIR"),
    }


def resolve_threads(cli_value: int | None) -> int:
    """Pick the worker count: command-line flag first, then the environment."""
    if cli_value is not None:
        return _positive_int("--threads", str(cli_value))
    return int(load_config()["threads"])
