"""Shared fixtures: the published parameter sets and their transformations."""

import pytest

from darboux_lab.darboux import build_darboux
from darboux_lab.models import DarbouxSpec, ErmakovSpec, OscillatorParams, TrajectorySpec, validate
from darboux_lab.verify import Grid1D


@pytest.fixture(autouse=True)
def _isolated_environment(monkeypatch):
    """Ignore thread and output settings from a developer .env."""
    monkeypatch.delenv("DARBOUX_LAB_THREADS", raising=False)
    monkeypatch.delenv("DARBOUX_LAB_OUT", raising=False)


@pytest.fixture
def params():
    return OscillatorParams(m=1.0, omega0=0.5, hbar=1.0, t0=0.0)


@pytest.fixture
def model(params):
    """a=1, c=4: the first published set, b = 0."""
    return validate(params, ErmakovSpec(a=1.0, c=4.0))


@pytest.fixture
def second_model(params):
    """a=1, c=5: the second published set, b = 1."""
    return validate(params, ErmakovSpec(a=1.0, c=5.0))


@pytest.fixture
def constant_model(params):
    """a = c = 2 hbar lambda/(m omega0) keeps alpha constant."""
    return validate(params, ErmakovSpec(a=2.0, c=2.0))


@pytest.fixture
def origin():
    return TrajectorySpec()


@pytest.fixture
def moving():
    return TrajectorySpec(x0=3.0, p0=1.0)


@pytest.fixture
def grid():
    return Grid1D(x_min=-20.0, x_max=20.0, n_points=2001)


@pytest.fixture
def erf_spec():
    return DarbouxSpec(epsilon=-0.5, k_a=0.89, k_b=1.0)


@pytest.fixture
def second_spec():
    return DarbouxSpec(epsilon=-1.5, k_a=1.7, k_b=1.0)


@pytest.fixture
def erf_darboux(model, erf_spec, origin):
    return build_darboux(model, erf_spec, origin)


@pytest.fixture
def moving_erf_darboux(model, erf_spec, moving):
    return build_darboux(model, erf_spec, moving)


@pytest.fixture
def second_darboux(second_model, second_spec, origin):
    return build_darboux(second_model, second_spec, origin)
