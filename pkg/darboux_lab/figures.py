"""Table builders for potential curves, space-time maps and probability densities."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from pathlib import Path
from typing import Any, Callable

import numpy as np

from darboux_lab.coherent.states import CoherentLabel, coherent_values
from darboux_lab.darboux.states import psi_n
from darboux_lab.darboux.transform import DarbouxModel, build_darboux, potential_v0, potential_v1
from darboux_lab.export.csv_files import CsvTable, format_number
from darboux_lab.models.oscillator import TrajectorySpec
from darboux_lab.models.scenario import Scenario
from darboux_lab.modes.hermite_gauss import phi_n
from darboux_lab.utils.errors import ConfigError, OutOfWindow
from darboux_lab.utils.logger import get_logger
from darboux_lab.verify.grid import Grid1D, ensure_decay

logger = get_logger(__name__)

Evaluator = Callable[[np.ndarray, float], np.ndarray]


def _require_darboux(scenario: Scenario, command: str) -> None:
    if scenario.darboux is None:
        raise ConfigError(f"'{command}' needs a darboux section in the scenario")


def _models(scenario: Scenario) -> list[DarbouxModel]:
    """One certified transformation per trajectory."""
    return [
        build_darboux(scenario.model, scenario.darboux, traj, scenario.chi_max)
        for traj in scenario.trajectories
    ]


def _metadata(scenario: Scenario, index: int, traj: TrajectorySpec, **extra: Any) -> dict:
    meta = scenario.metadata()
    meta.update(trajectory=index, x0=traj.x0, p0=traj.p0, **extra)
    return meta


def _time_rows(
    evaluate: Callable[[float], np.ndarray], times: list[float], threads: int
) -> np.ndarray:
    """Evaluate one row per time slice, in parallel, keeping time order."""
    if threads <= 1:
        rows = [evaluate(t) for t in times]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(evaluate, times))
    return np.array(rows)


def spacetime_table(
    grid: Grid1D,
    times: list[float],
    evaluate: Callable[[float], np.ndarray],
    metadata: dict,
    threads: int = 1,
) -> CsvTable:
    """Table with one row per time: the time, then the quantity at every grid point."""
    logger.debug(f"Space-time map: {len(times)} times x {grid.n_points} points")
    values = _time_rows(evaluate, times, threads)
    columns = ["t"] + [format_number(x) for x in grid.points]
    rows = np.column_stack([np.asarray(times, dtype=float), values])
    return CsvTable(columns=columns, rows=rows, metadata=metadata)


def decaying_grid(grid: Grid1D, evaluate: Evaluator, times: list[float]) -> Grid1D:
    """Grid widened until the field is negligible at both edges for every time."""
    for t in times:
        grid = ensure_decay(grid, evaluate, t)
    return grid


def window_grid(grid: Grid1D, dm: DarbouxModel | None, times: list[float]) -> Grid1D:
    """Points of ``grid`` inside the certified x window at every given time.

    Raises:
        OutOfWindow: If fewer than 16 points survive the clipping.
    """
    if dm is None or math.isinf(dm.window):
        return grid
    lo, hi = grid.x_min, grid.x_max
    for t in times:
        left, right = dm.x_window(t)
        lo, hi = max(lo, left), min(hi, right)
    points = grid.points
    inside = np.flatnonzero((points >= lo) & (points <= hi))
    if inside.size < 16:
        raise OutOfWindow(
            f"no common x range of 16 points inside the certified window {dm.window:.4f} "
            f"over {len(times)} time(s)"
        )
    first, last = int(inside[0]), int(inside[-1])
    if first == 0 and last == grid.n_points - 1:
        return grid
    logger.warning(
        f"Grid clipped to [{points[first]:.3f}, {points[last]:.3f}] by the certified window"
    )
    return Grid1D(x_min=points[first], x_max=points[last], n_points=last - first + 1)


def potential_tables(scenario: Scenario, out_dir: Path, threads: int = 1) -> dict[Path, CsvTable]:
    """V0, V1 and their difference per trajectory: curves per time plus a space-time map.

    For a finite certified window the x columns are clipped to the window: per time for
    curves, to the range common to all times for the space-time map.

    Raises:
        ConfigError: Without a darboux section.
        NodelessCertificationFailed: If F has zeros.
        OutOfWindow: If the window leaves no usable x range.
    """
    _require_darboux(scenario, "potential")
    tables: dict[Path, CsvTable] = {}
    for j, dm in enumerate(_models(scenario)):
        traj = scenario.trajectories[j]
        if scenario.emit_curves:
            for k, t in enumerate(scenario.times):
                x = window_grid(scenario.grid, dm, [t]).points
                v0 = potential_v0(scenario.model, x)
                v1 = potential_v1(dm, x, t)
                tables[out_dir / f"potential_traj{j}_t{k}.csv"] = CsvTable(
                    columns=["x", "V0", "V1", "V1_minus_V0"],
                    rows=np.column_stack([x, v0, v1, v1 - v0]),
                    metadata=_metadata(scenario, j, traj, quantity="potential", t=t),
                )
        grid = window_grid(scenario.grid, dm, scenario.times)
        tables[out_dir / f"potential_traj{j}_spacetime.csv"] = spacetime_table(
            grid,
            scenario.times,
            lambda t, dm=dm, x=grid.points: potential_v1(dm, x, t),
            _metadata(scenario, j, traj, quantity="V1"),
            threads,
        )
    return tables


def _density_table(
    scenario: Scenario,
    evaluate: Evaluator,
    metadata: dict,
    threads: int,
    dm: DarbouxModel | None = None,
) -> CsvTable:
    if dm is None or math.isinf(dm.window):
        grid = decaying_grid(scenario.grid, evaluate, scenario.times)
    else:
        grid = window_grid(scenario.grid, dm, scenario.times)
    return spacetime_table(
        grid,
        scenario.times,
        lambda t: np.abs(evaluate(grid.points, t)) ** 2,
        metadata,
        threads,
    )


def states_tables(scenario: Scenario, out_dir: Path, threads: int = 1) -> dict[Path, CsvTable]:
    """|psi_n(x, t)|**2 space-time maps per trajectory and n.

    Without a darboux section the base modes |phi_n|**2 are written instead.

    Raises:
        NotNormalizable: For n = 0 when the missing state is not square integrable.
        CapExceeded: If an n is beyond the normalisation table.
    """
    tables: dict[Path, CsvTable] = {}
    model = scenario.model
    if scenario.darboux is None:
        logger.info("No darboux section: writing base-oscillator mode densities")
        for j, traj in enumerate(scenario.trajectories):
            for n in scenario.n_list:
                evaluate = partial(phi_n, model, traj, n)
                meta = _metadata(scenario, j, traj, quantity=f"|phi_{n}|^2", n=n)
                tables[out_dir / f"modes_traj{j}_n{n}.csv"] = _density_table(
                    scenario, evaluate, meta, threads
                )
        return tables

    for j, dm in enumerate(_models(scenario)):
        traj = scenario.trajectories[j]
        for n in scenario.n_list:
            evaluate = partial(psi_n, dm, n)
            meta = _metadata(scenario, j, traj, quantity=f"|psi_{n}|^2", n=n)
            tables[out_dir / f"states_traj{j}_n{n}.csv"] = _density_table(
                scenario, evaluate, meta, threads, dm
            )
    return tables


def coherent_tables(
    scenario: Scenario,
    out_dir: Path,
    threads: int = 1,
    family: str | None = None,
    z_values: list[complex] | None = None,
) -> dict[Path, CsvTable]:
    """Coherent-state density maps per trajectory and eigenvalue z.

    Args:
        scenario: Validated scenario.
        out_dir: Target directory.
        threads: Worker threads over time slices.
        family: phi, psi or psi_tilde; the scenario's family when omitted.
        z_values: Eigenvalues; the scenario's z_list when omitted.

    Raises:
        ConfigError: If psi or psi_tilde is requested without a darboux section.
        CapTooSmall: If a label needs more than 64 modes.
    """
    family = family or scenario.family
    labels = [CoherentLabel.for_z(z) for z in (z_values or scenario.z_values)]
    if family != "phi":
        _require_darboux(scenario, f"coherent --family {family}")
        sources: list[Any] = _models(scenario)
    else:
        sources = [scenario.model] * len(scenario.trajectories)

    tables: dict[Path, CsvTable] = {}
    for j, source in enumerate(sources):
        traj = scenario.trajectories[j]
        window_model = source if isinstance(source, DarbouxModel) else None
        for k, label in enumerate(labels):
            evaluate = partial(coherent_values, family, source, traj, label)
            meta = _metadata(
                scenario,
                j,
                traj,
                quantity=f"|{family}_z|^2",
                family=family,
                z=label.z,
                cap_n=label.cap_n,
            )
            tables[out_dir / f"coherent_{family}_traj{j}_z{k}.csv"] = _density_table(
                scenario, evaluate, meta, threads, window_model
            )
    return tables
