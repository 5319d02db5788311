"""Named scenarios reproducing the published figure parameter sets."""

import copy
from typing import Any

from darboux_lab.utils.errors import ConfigError
from darboux_lab.utils.logger import get_logger

logger = get_logger(__name__)

_OSCILLATOR = {"m": 1.0, "omega0": 0.5, "hbar": 1.0, "t0": 0.0}
_TRAJECTORIES = [{"x0": 0.0, "p0": 0.0}, {"x0": 3.0, "p0": 0.0}, {"x0": 3.0, "p0": 1.0}]
_CURVE_TIMES = [0.2, 6.0]
# 126 instants over [0, 25] for space-time maps
_MAP_TIMES = [round(0.2 * k, 10) for k in range(126)]

_ERF_FAMILY = {
    "ermakov": {"a": 1.0, "c": 4.0},
    "darboux": {"epsilon": -0.5, "k_a": 0.89, "k_b": 1.0},
    "grid": {"x_min": -20.0, "x_max": 20.0, "n_points": 2001},
}
# Wider box: alpha reaches sqrt(5) and the moving centre adds ~3.6
_SECOND_FAMILY = {
    "ermakov": {"a": 1.0, "c": 5.0},
    "darboux": {"epsilon": -1.5, "k_a": 1.7, "k_b": 1.0},
    "grid": {"x_min": -25.0, "x_max": 25.0, "n_points": 2501},
}


def _preset(name: str, base: dict[str, Any], **extra: Any) -> dict[str, Any]:
    data = {
        "name": name,
        "oscillator": dict(_OSCILLATOR),
        "trajectories": copy.deepcopy(_TRAJECTORIES),
        **copy.deepcopy(base),
    }
    data.update(extra)
    return data


# Available presets: name -> (description, raw scenario data)
PRESETS: dict[str, tuple[str, dict[str, Any]]] = {
    "fig1": (
        "epsilon=-1/2, k_a=0.89 k_b, a=1, c=4: potential curves at t=0.2 and t=6",
        _preset("fig1", _ERF_FAMILY, times=_CURVE_TIMES),
    ),
    "fig2": (
        "epsilon=-1/2, k_a=0.89 k_b, a=1, c=4: potential space-time maps",
        _preset("fig2", _ERF_FAMILY, times=_MAP_TIMES, emit_curves=False),
    ),
    "fig3": (
        "epsilon=-1/2, k_a=0.89 k_b, a=1, c=4: densities of psi_0, psi_1, psi_2",
        _preset("fig3", _ERF_FAMILY, times=_MAP_TIMES, n_list=[0, 1, 2]),
    ),
    "fig4": (
        "epsilon=-1/2, k_a=0.89 k_b, a=1, c=4: coherent psi_z densities, z = i and 3-3i",
        _preset("fig4", _ERF_FAMILY, times=_MAP_TIMES, z_list=["1j", "3-3j"], family="psi"),
    ),
    "fig5": (
        "epsilon=-3/2, k_a=1.7 k_b, a=1, c=5: potential space-time maps",
        _preset("fig5", _SECOND_FAMILY, times=_MAP_TIMES, emit_curves=False),
    ),
    "fig6": (
        "epsilon=-3/2, k_a=1.7 k_b, a=1, c=5: densities of psi_0, psi_1, psi_2",
        _preset("fig6", _SECOND_FAMILY, times=_MAP_TIMES, n_list=[0, 1, 2]),
    ),
    "fig7": (
        "epsilon=-3/2, k_a=1.7 k_b, a=1, c=5: potential curves at t=0.2 and t=6",
        _preset("fig7", _SECOND_FAMILY, times=_CURVE_TIMES),
    ),
    "fig8": (
        "epsilon=-3/2, k_a=1.7 k_b, a=1, c=5: coherent psi_z densities, z = i and 3-3i",
        _preset("fig8", _SECOND_FAMILY, times=_MAP_TIMES, z_list=["1j", "3-3j"], family="psi"),
    ),
}


def get_preset(name: str) -> dict[str, Any]:
    """Raw scenario data of a preset, safe to modify.

    Raises:
        ConfigError: If the preset is not registered.
    """
    if name not in PRESETS:
        raise ConfigError(f"Unknown preset {name!r}; available: {', '.join(PRESETS)}")
    logger.debug(f"Loading preset {name}")
    return copy.deepcopy(PRESETS[name][1])


def list_presets() -> dict[str, str]:
    """List available presets.

    Returns:
        Dictionary mapping preset names to descriptions.
    """
    return {name: description for name, (description, _) in PRESETS.items()}
