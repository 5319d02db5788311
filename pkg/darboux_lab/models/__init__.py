"""Parameter records, scenario schema and presets."""

from darboux_lab.models.oscillator import (
    DarbouxSpec,
    ErmakovSpec,
    OscillatorParams,
    TrajectorySpec,
    ValidatedModel,
    validate,
)
from darboux_lab.models.presets import get_preset, list_presets
from darboux_lab.models.scenario import (
    Scenario,
    deep_merge,
    load_scenario,
    parse_complex,
    scenario_from_dict,
)

__all__ = [
    "DarbouxSpec",
    "ErmakovSpec",
    "OscillatorParams",
    "TrajectorySpec",
    "ValidatedModel",
    "validate",
    "get_preset",
    "list_presets",
    "Scenario",
    "deep_merge",
    "load_scenario",
    "parse_complex",
    "scenario_from_dict",
]
