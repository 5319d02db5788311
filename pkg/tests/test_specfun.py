"""Hermite polynomials, Hermite functions and Kummer's 1F1."""

import math

import numpy as np
import pytest
from scipy import special

from darboux_lab.physics import erf, hermite, hermite_functions, kummer
from darboux_lab.utils.errors import DegreeTooLarge, NonConvergent, PoleInB


def test_low_degree_hermite_polynomials():
    x = np.linspace(-3.0, 3.0, 13)
    assert np.allclose(hermite(0, x), 1.0)
    assert np.allclose(hermite(1, x), 2.0 * x)
    assert np.allclose(hermite(2, x), 4.0 * x**2 - 2.0)
    assert np.allclose(hermite(3, x), 8.0 * x**3 - 12.0 * x)


def test_hermite_matches_scipy():
    x = np.linspace(-4.0, 4.0, 41)
    for n in (5, 10, 20):
        reference = special.eval_hermite(n, x)
        assert np.max(np.abs(hermite(n, x) - reference)) < 1e-12 * np.max(np.abs(reference))


def test_degree_cap_and_negative_degree():
    with pytest.raises(DegreeTooLarge):
        hermite(513, 0.0)
    with pytest.raises(ValueError):
        hermite(-1, 0.0)


def test_hermite_functions_are_orthonormal():
    x = np.linspace(-15.0, 15.0, 3001)
    table = hermite_functions(30, x)
    gram = np.trapezoid(table[:, None, :] * table[None, :, :], dx=x[1] - x[0], axis=-1)
    assert np.max(np.abs(gram - np.eye(31))) < 1e-10


def test_hermite_functions_stay_finite_at_high_degree():
    table = hermite_functions(400, np.linspace(-30.0, 30.0, 61))
    assert np.all(np.isfinite(table))


def test_hermite_functions_match_the_polynomial_form():
    x = np.linspace(-3.0, 3.0, 7)
    n = 6
    norm = 1.0 / math.sqrt(2.0**n * math.factorial(n) * math.sqrt(math.pi))
    expected = norm * hermite(n, x) * np.exp(-0.5 * x**2)
    assert np.allclose(hermite_functions(n, x)[n], expected)


def test_erf_odd_and_bounded():
    x = np.linspace(-5.0, 5.0, 11)
    assert np.allclose(erf(-x), -erf(x))
    assert erf(10.0) == pytest.approx(1.0)


@pytest.mark.parametrize("a, b", [(0.5, 0.5), (0.75, 1.5), (1.0, 0.5), (1.25, 1.5), (2.5, 2.5)])
def test_kummer_matches_scipy(a, b):
    x = np.linspace(0.0, 50.0, 101)
    assert np.allclose(kummer(a, b, x), special.hyp1f1(a, b, x), rtol=1e-10)


def test_kummer_terminating_series():
    # a = -1, -2 cut the series to polynomials; the terms alternate in sign
    x = np.linspace(0.0, 40.0, 41)
    assert np.allclose(kummer(-1.0, 0.5, x), 1.0 - 2.0 * x)
    assert np.allclose(kummer(-2.0, 0.5, x), 1.0 - 4.0 * x + 4.0 / 3.0 * x**2)


def test_kummer_special_cases():
    x = np.linspace(0.0, 10.0, 11)
    assert np.allclose(kummer(1.0, 1.0, x), np.exp(x))
    assert np.allclose(kummer(0.0, 2.0, x), 1.0)


def test_kummer_rejects_poles_and_out_of_range_arguments():
    with pytest.raises(PoleInB):
        kummer(1.0, -2.0, 1.0)
    with pytest.raises(PoleInB):
        kummer(1.0, 0.0, 1.0)
    with pytest.raises(NonConvergent):
        kummer(1.0, 0.5, 51.0)
    with pytest.raises(NonConvergent):
        kummer(1.0, 0.5, -0.1)
