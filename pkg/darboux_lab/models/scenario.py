"""Scenario schema: everything one CLI run needs, loaded from JSON and/or a preset."""

from __future__ import annotations

import copy
import json
import re
from functools import cached_property
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from darboux_lab.models.oscillator import (
    DarbouxSpec,
    ErmakovSpec,
    OscillatorParams,
    TrajectorySpec,
    ValidatedModel,
    validate,
)
from darboux_lab.models.presets import get_preset
from darboux_lab.utils.errors import ConfigError
from darboux_lab.utils.logger import get_logger
from darboux_lab.verify.grid import Grid1D

logger = get_logger(__name__)

Family = Literal["phi", "psi", "psi_tilde"]


def parse_complex(text: str) -> complex:
    """Parse "3-3i", "3-3j", "1j" or "i" into a complex number."""
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    cleaned = re.sub(r"(?<![\d.])j", "1j", cleaned)
    try:
        return complex(cleaned)
    except ValueError as e:
        raise ConfigError(f"Cannot parse {text!r} as a complex number") from e


class Scenario(BaseModel):
    """Validated run configuration."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    name: str = "custom"
    oscillator: OscillatorParams = OscillatorParams()
    ermakov: ErmakovSpec
    trajectories: list[TrajectorySpec] = Field(
        default_factory=lambda: [TrajectorySpec()], min_length=1
    )
    darboux: DarbouxSpec | None = None
    grid: Grid1D = Grid1D()
    times: list[float] = Field(min_length=1)
    n_list: list[int] = Field(default_factory=lambda: [0, 1, 2])
    z_list: list[str] = Field(default_factory=lambda: ["1j"])
    family: Family = "psi"
    invariant_scale: float | None = Field(default=None, gt=0.0)
    chi_max: float = Field(default=8.0, gt=0.0)
    # Per-time potential curve files; space-time maps are always written
    emit_curves: bool = True
    output_dir: str | None = None

    @field_validator("n_list")
    @classmethod
    def _nonnegative_modes(cls, value: list[int]) -> list[int]:
        if any(n < 0 for n in value):
            raise ValueError(f"mode indices must be nonnegative, got {value}")
        return value

    @field_validator("z_list")
    @classmethod
    def _parsable_labels(cls, value: list[str]) -> list[str]:
        for text in value:
            parse_complex(text)
        return value

    @property
    def z_values(self) -> list[complex]:
        return [parse_complex(text) for text in self.z_list]

    @property
    def i0(self) -> float:
        """Invariant scale I0, hbar unless configured."""
        if self.invariant_scale is not None:
            return self.invariant_scale
        return self.oscillator.hbar

    @cached_property
    def model(self) -> ValidatedModel:
        return validate(self.oscillator, self.ermakov)

    def metadata(self) -> dict[str, Any]:
        """Flat parameter set written into CSV headers."""
        model = self.model
        meta: dict[str, Any] = {
            "scenario": self.name,
            "m": model.m,
            "omega0": model.omega0,
            "hbar": model.hbar,
            "t0": model.t0,
            "a": model.a,
            "b": model.b,
            "c": model.c,
            "lambda": model.lam,
        }
        if self.darboux is not None:
            meta.update(
                epsilon=self.darboux.epsilon, k_a=self.darboux.k_a, k_b=self.darboux.k_b
            )
        return meta


def deep_merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    """Recursively merge ``override`` into a copy of ``base``; lists are replaced."""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def scenario_from_dict(data: dict[str, Any]) -> Scenario:
    """Validate a raw mapping, including the Ermakov and oscillator admissibility checks.

    Raises:
        ConfigError: On schema violations (unknown keys included) or rejected parameters.
    """
    try:
        scenario = Scenario.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"Invalid scenario: {e}") from e
    model = scenario.model
    logger.debug(f"Scenario {scenario.name!r}: b={model.b}, kappa={model.kappa}")
    return scenario


def load_scenario(
    config_path: str | Path | None = None, preset: str | None = None
) -> Scenario:
    """Build a scenario from a preset, a JSON file, or a file deep-merged over a preset.

    Args:
        config_path: Path to a JSON scenario file.
        preset: Name of a registered preset.

    Returns:
        Validated scenario.

    Raises:
        ConfigError: If neither source is given, the file cannot be read or parsed,
            the preset is unknown, or the merged data is invalid.
    """
    if config_path is None and preset is None:
        raise ConfigError("Either --config or --preset is required")

    data: dict[str, Any] = get_preset(preset) if preset is not None else {}
    if config_path is not None:
        try:
            raw = json.loads(Path(config_path).read_text(encoding="utf-8"))
        except OSError as e:
            raise ConfigError(f"Cannot read config {config_path}: {e}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"Malformed JSON in {config_path}: {e}") from e
        if not isinstance(raw, dict):
            raise ConfigError(f"Config {config_path} must hold a JSON object")
        data = deep_merge(data, raw)
    return scenario_from_dict(data)
