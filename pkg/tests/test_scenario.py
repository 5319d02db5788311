"""Scenario loading, presets, complex labels and environment configuration."""

import json
import math

import pytest

from darboux_lab.models import (
    deep_merge,
    get_preset,
    list_presets,
    load_scenario,
    parse_complex,
    scenario_from_dict,
)
from darboux_lab.models.presets import PRESETS
from darboux_lab.utils import load_config, resolve_threads
from darboux_lab.utils.errors import ConfigError, ErmakovConditionViolated


@pytest.mark.parametrize(
    "text, value",
    [("1j", 1j), ("i", 1j), ("3-3i", 3 - 3j), ("3 - 3j", 3 - 3j), ("-i", -1j), ("2.5", 2.5)],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


def test_parse_complex_rejects_garbage():
    with pytest.raises(ConfigError):
        parse_complex("three")


def test_presets_cover_every_figure():
    names = list(list_presets())
    assert names == [f"fig{k}" for k in range(1, 9)]
    with pytest.raises(ConfigError):
        get_preset("fig9")


def test_preset_data_is_a_copy():
    data = get_preset("fig1")
    data["ermakov"]["a"] = 99.0
    assert get_preset("fig1")["ermakov"]["a"] == 1.0


def test_fig_presets_carry_the_published_parameters():
    erf = load_scenario(preset="fig2")
    assert erf.darboux.epsilon == -0.5
    assert erf.darboux.k_a == pytest.approx(0.89)
    assert not erf.emit_curves
    assert len(erf.times) == 126
    second = load_scenario(preset="fig8")
    assert second.darboux.epsilon == -1.5
    assert second.model.b == pytest.approx(1.0)
    assert second.z_values == [1j, 3 - 3j]


def test_deep_merge_replaces_lists_and_merges_dicts():
    base = {"ermakov": {"a": 1.0, "c": 4.0}, "times": [0.0, 1.0]}
    merged = deep_merge(base, {"ermakov": {"c": 5.0}, "times": [2.0]})
    assert merged == {"ermakov": {"a": 1.0, "c": 5.0}, "times": [2.0]}
    assert base["ermakov"]["c"] == 4.0


def test_config_file_over_a_preset(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps({"name": "custom", "n_list": [4], "darboux": {"k_a": 2.0}}))
    scenario = load_scenario(path, preset="fig3")
    assert scenario.name == "custom"
    assert scenario.n_list == [4]
    assert scenario.darboux.k_a == 2.0
    assert scenario.darboux.epsilon == -0.5


def test_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_scenario()
    with pytest.raises(ConfigError):
        load_scenario(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_scenario(bad)
    listed = tmp_path / "list.json"
    listed.write_text("[1, 2]")
    with pytest.raises(ConfigError):
        load_scenario(listed)


def test_schema_violations():
    base = {"ermakov": {"a": 1.0, "c": 4.0}, "times": [0.0]}
    with pytest.raises(ConfigError):
        scenario_from_dict({**base, "unknown": 1})
    with pytest.raises(ConfigError):
        scenario_from_dict({**base, "n_list": [-1]})
    with pytest.raises(ConfigError):
        scenario_from_dict({**base, "z_list": ["nope"]})
    with pytest.raises(ConfigError):
        scenario_from_dict({**base, "times": []})
    with pytest.raises(ConfigError):
        scenario_from_dict({**base, "ermakov": {"a": 1.0, "c": 4.0, "b": 0.0}})


def test_rejected_physics_surfaces_as_a_config_error():
    with pytest.raises(ErmakovConditionViolated):
        scenario_from_dict({"ermakov": {"a": 1.0, "c": 2.0}, "times": [0.0]})


def test_explicit_lambda_and_invariant_scale():
    scenario = scenario_from_dict(
        {"ermakov": {"a": 2.0, "c": 2.0, "lambda": 0.25}, "times": [0.0], "invariant_scale": 3.0}
    )
    assert scenario.model.lam == 0.25
    assert scenario.i0 == 3.0
    assert scenario.model.b == pytest.approx(math.sqrt(3.0))


def test_threads_from_environment(monkeypatch):
    assert resolve_threads(None) == 1
    monkeypatch.setenv("DARBOUX_LAB_THREADS", "4")
    assert resolve_threads(None) == 4
    assert resolve_threads(2) == 2
    monkeypatch.setenv("DARBOUX_LAB_THREADS", "zero")
    with pytest.raises(ConfigError):
        load_config()
    with pytest.raises(ConfigError):
        resolve_threads(0)


def test_output_directory_default(monkeypatch):
    assert load_config()["output_dir"] == "darboux_out"
    monkeypatch.setenv("DARBOUX_LAB_OUT", "/tmp/elsewhere")
    assert load_config()["output_dir"] == "/tmp/elsewhere"


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_every_preset_validates(name):
    scenario = scenario_from_dict(get_preset(name))
    assert scenario.name == name
    assert scenario.model.b >= 0.0
    assert scenario.darboux is not None
    assert len(scenario.trajectories) == 3


def test_coherent_presets_select_the_transformed_family():
    assert load_scenario(preset="fig4").family == "psi"
    assert load_scenario(preset="fig8").family == "psi"
