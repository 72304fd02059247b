import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate as sp_integrate
from scipy.special import ndtr

from properization.errors import QuadratureFailure
from properization.quadrature import DEFAULT_TOL, TOL_ENV_VAR, default_tol, integrate, tolerance


def test_polynomial_is_exact():
    assert integrate(lambda x: 3 * x**2, 0.0, 2.0) == pytest.approx(8.0, abs=1e-12)


def test_gaussian_spread_integral_matches_scipy():
    f = lambda x: ndtr(x) * (1 - ndtr(x))
    ref, _ = sp_integrate.quad(f, -9, 9, epsabs=1e-13)
    assert abs(integrate(f, -9, 9, points=[0.0]) - ref) < 1e-9
    assert ref == pytest.approx(1 / math.sqrt(math.pi), abs=1e-9)


def test_kink_and_cusp():
    assert integrate(np.abs, -1.0, 2.0, points=[0.0]) == pytest.approx(2.5, abs=1e-10)
    val = integrate(lambda x: np.sqrt(np.abs(x)), -1.0, 1.0, points=[0.0])
    assert val == pytest.approx(4.0 / 3.0, abs=1e-8)


def test_jump_at_breakpoint():
    val = integrate(lambda x: (x >= 0.3).astype(float), 0.0, 1.0, points=[0.3])
    assert val == pytest.approx(0.7, abs=1e-12)


def test_vector_valued_integrand():
    ks = np.arange(4)[:, None]
    val = integrate(lambda x: x[None, :] ** ks, 0.0, 1.0)
    np.testing.assert_allclose(val, 1.0 / (np.arange(4) + 1), atol=1e-12)


def test_reversed_and_empty_intervals():
    assert integrate(lambda x: x, 1.0, 0.0) == pytest.approx(-0.5)
    assert integrate(lambda x: x, 1.0, 1.0) == 0.0


def test_failures():
    with pytest.raises(QuadratureFailure):
        integrate(lambda x: x, 0.0, math.inf)
    with pytest.raises(QuadratureFailure), np.errstate(divide="ignore"):
        integrate(lambda x: 1.0 / x, -1.0, 1.0)
    with pytest.raises(QuadratureFailure):
        integrate(lambda x: np.sin(1e4 * x), 0.0, 1.0, tol=1e-14, max_panels=64)


def test_tolerance_precedence(monkeypatch):
    monkeypatch.delenv(TOL_ENV_VAR, raising=False)
    assert default_tol() == DEFAULT_TOL
    monkeypatch.setenv(TOL_ENV_VAR, "1e-6")
    assert default_tol() == 1e-6
    with tolerance(1e-11):
        assert default_tol() == 1e-11
    assert default_tol() == 1e-6
    monkeypatch.setenv(TOL_ENV_VAR, "-1")
    with pytest.raises(ValueError):
        default_tol()


@given(
    a=st.floats(-5, 5),
    width=st.floats(0.01, 10),
    c=st.floats(-3, 3),
    k=st.integers(0, 6),
)
def test_monomials_against_closed_form(a, width, c, k):
    b = a + width
    exact = ((b - c) ** (k + 1) - (a - c) ** (k + 1)) / (k + 1)
    got = integrate(lambda x: (x - c) ** k, a, b)
    assert abs(got - exact) <= 1e-8 * max(1.0, abs(exact))


@given(mu=st.floats(-3, 3), s=st.floats(0.05, 3))
def test_gaussian_density_integrates_to_one(mu, s):
    f = lambda x: np.exp(-0.5 * ((x - mu) / s) ** 2) / (s * math.sqrt(2 * math.pi))
    val = integrate(f, mu - 12 * s, mu + 12 * s, points=[mu])
    assert abs(val - 1.0) < 1e-8
