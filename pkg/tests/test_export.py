"""CSV tables, atomic writes and the table builders."""

import csv
import json

import numpy as np
import pytest

from darboux_lab.export import CsvTable, format_number, write_json, write_tables
from darboux_lab.darboux import build_darboux
from darboux_lab.figures import (
    coherent_tables,
    potential_tables,
    spacetime_table,
    states_tables,
    window_grid,
)
from darboux_lab.models import load_scenario, scenario_from_dict
from darboux_lab.utils.errors import ConfigError, InvalidSamples, NumericalError, OutOfWindow
from darboux_lab.verify import Grid1D


def read_table(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    metadata = dict(line[2:].split("=", 1) for line in lines if line.startswith("# "))
    rows = list(csv.reader(line for line in lines if not line.startswith("#")))
    return metadata, rows[0], np.array(rows[1:], dtype=float)


def small_scenario(**overrides):
    data = load_scenario(preset="fig1").model_dump(by_alias=True)
    data["grid"] = {"x_min": -12.0, "x_max": 12.0, "n_points": 601}
    data.update(overrides)
    return scenario_from_dict(data)


def test_format_number_round_trips():
    for value in (0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23):
        assert float(format_number(value)) == value


def test_table_validation():
    with pytest.raises(ValueError):
        CsvTable(columns=["a", "b"], rows=np.zeros((3, 3)))
    with pytest.raises(InvalidSamples):
        CsvTable(columns=["a"], rows=np.array([[np.inf]]))


def test_write_tables_writes_metadata_header_and_values(tmp_path):
    table = CsvTable(columns=["x", "y"], rows=np.array([[0.0, 0.1], [1.0, 2.0 / 3.0]]),
                     metadata={"scenario": "unit", "a": 1.0})
    path = tmp_path / "nested" / "table.csv"
    assert write_tables({path: table}) == [path]
    metadata, header, rows = read_table(path)
    assert metadata == {"scenario": "unit", "a": "1.0"}
    assert header == ["x", "y"]
    assert rows[1, 1] == 2.0 / 3.0


def test_failed_batches_leave_nothing_behind(tmp_path):
    class Broken(CsvTable):
        def write_to(self, handle):
            raise OSError("disk full")

    good = CsvTable(columns=["x"], rows=np.zeros((1, 1)))
    bad = Broken(columns=["x"], rows=np.zeros((1, 1)))
    with pytest.raises(OSError):
        write_tables({tmp_path / "good.csv": good, tmp_path / "bad.csv": bad})
    assert list(tmp_path.iterdir()) == []


def test_write_json(tmp_path):
    path = write_json(tmp_path / "report.json", {"passed": True, "checks": []})
    assert json.loads(path.read_text(encoding="utf-8")) == {"passed": True, "checks": []}


def test_spacetime_table_layout():
    grid = Grid1D(x_min=0.0, x_max=1.0, n_points=16)
    table = spacetime_table(grid, [0.0, 0.5], lambda t: grid.points * t, {"q": "x*t"}, threads=2)
    assert table.columns[0] == "t"
    assert len(table.columns) == 17
    assert np.allclose(table.rows[:, 0], [0.0, 0.5])
    assert np.allclose(table.rows[1, 1:], 0.5 * grid.points)


def test_potential_tables_per_trajectory_and_time(tmp_path):
    scenario = small_scenario()
    tables = potential_tables(scenario, tmp_path)
    names = sorted(path.name for path in tables)
    assert len(names) == 3 * 2 + 3
    assert "potential_traj0_t1.csv" in names
    assert "potential_traj2_spacetime.csv" in names
    curve = tables[tmp_path / "potential_traj0_t0.csv"]
    assert curve.columns == ["x", "V0", "V1", "V1_minus_V0"]
    assert curve.metadata["t"] == 0.2
    assert curve.metadata["epsilon"] == -0.5
    assert np.allclose(curve.rows[:, 3], curve.rows[:, 2] - curve.rows[:, 1])


def test_spacetime_only_when_curves_are_disabled(tmp_path):
    tables = potential_tables(small_scenario(emit_curves=False), tmp_path)
    assert all(path.name.endswith("_spacetime.csv") for path in tables)


def test_states_tables_hold_densities(tmp_path):
    scenario = small_scenario(n_list=[1])
    tables = states_tables(scenario, tmp_path, threads=2)
    assert len(tables) == 3
    table = tables[tmp_path / "states_traj0_n1.csv"]
    assert table.metadata["n"] == 1
    assert np.all(table.rows[:, 1:] >= 0.0)


def test_mode_densities_without_a_darboux_section(tmp_path):
    data = small_scenario().model_dump(by_alias=True)
    data["darboux"] = None
    data["n_list"] = [0]
    tables = states_tables(scenario_from_dict(data), tmp_path)
    assert sorted(path.name for path in tables) == [
        "modes_traj0_n0.csv",
        "modes_traj1_n0.csv",
        "modes_traj2_n0.csv",
    ]
    with pytest.raises(ConfigError):
        potential_tables(scenario_from_dict(data), tmp_path)


def test_coherent_tables(tmp_path):
    scenario = small_scenario(z_list=["1j"])
    tables = coherent_tables(scenario, tmp_path, family="phi", z_values=[0.5j, 1.0])
    assert len(tables) == 3 * 2
    table = tables[tmp_path / "coherent_phi_traj1_z1.csv"]
    assert table.metadata["family"] == "phi"
    assert table.metadata["z"] == 1.0


def test_non_finite_rows_are_a_numerical_error():
    with pytest.raises(NumericalError):
        CsvTable(columns=["x", "y"], rows=np.array([[0.0, np.nan]]))


KUMMER = {"epsilon": -0.7, "k_a": 1.0, "k_b": 0.1}


def test_finite_windows_clip_the_potential_tables(tmp_path):
    scenario = small_scenario(darboux=KUMMER)
    tables = potential_tables(scenario, tmp_path)
    assert len(tables) == 3 * 2 + 3
    dm = build_darboux(scenario.model, scenario.darboux, scenario.trajectories[2])
    lo, hi = dm.x_window(6.0)
    curve = tables[tmp_path / "potential_traj2_t1.csv"]
    assert curve.rows[0, 0] >= lo and curve.rows[-1, 0] <= hi
    assert curve.rows.shape[0] < scenario.grid.n_points
    spacetime = tables[tmp_path / "potential_traj2_spacetime.csv"]
    assert len(spacetime.columns) - 1 < scenario.grid.n_points
    assert float(spacetime.columns[1]) >= lo


def test_finite_windows_clip_the_state_densities(tmp_path):
    scenario = small_scenario(darboux=KUMMER, n_list=[1])
    tables = states_tables(scenario, tmp_path)
    assert len(tables) == 3
    table = tables[tmp_path / "states_traj2_n1.csv"]
    assert len(table.columns) - 1 < scenario.grid.n_points
    assert np.all(table.rows[:, 1:] >= 0.0)


def test_window_grid_needs_enough_points():
    scenario = small_scenario(darboux=KUMMER)
    dm = build_darboux(scenario.model, scenario.darboux, scenario.trajectories[0])
    assert window_grid(scenario.grid, None, [0.2]) == scenario.grid
    with pytest.raises(OutOfWindow):
        window_grid(Grid1D(x_min=40.0, x_max=50.0, n_points=101), dm, [0.2])
