import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate as sp_integrate, stats

from properization.distributions import (
    Bernoulli,
    Categorical,
    Dirac,
    Gaussian,
    GridCdf,
    Mixture,
    OddsPowerTransform,
    Truncated,
    UniformInterval,
    cdf,
    convolve,
    discretize,
    from_literal,
    median,
    moments,
    odds_power,
    odds_power_inverse,
    pdf,
    sup_cdf_distance,
)
from properization.errors import InvalidDistribution, NoDensity, UnboundedSupport, WeightMassZero

# -- strategies -------------------------------------------------------------

mus = st.floats(-5, 5)
variances = st.floats(0.1, 10)
gaussians = st.builds(Gaussian, mus, variances)


@st.composite
def gaussian_mixtures(draw, max_k=3):
    k = draw(st.integers(1, max_k))
    comps = [draw(gaussians) for _ in range(k)]
    raw = np.array([draw(st.floats(0.05, 1.0)) for _ in range(k)])
    return Mixture(comps, raw / raw.sum())


@st.composite
def categoricals(draw):
    pts = sorted(set(draw(st.lists(st.floats(-10, 10), min_size=1, max_size=5))))
    raw = np.array([draw(st.floats(0.01, 1.0)) for _ in pts])
    return Categorical(pts, raw / raw.sum())


any_dist = st.one_of(gaussians, gaussian_mixtures(), categoricals(),
                     st.builds(lambda a, w: UniformInterval(a, a + w), st.floats(-5, 5), st.floats(0.1, 5)))

# -- worked examples --------------------------------------------------------


def test_cdf_examples():
    assert cdf(Gaussian(0, 1), 0.0) == 0.5
    assert cdf(Dirac(2), 1.9) == 0.0
    assert cdf(Dirac(2), 2.0) == 1.0
    assert cdf(Mixture([Dirac(0), Dirac(1)], [0.3, 0.7]), 0.5) == pytest.approx(0.3)


def test_pdf_examples():
    assert pdf(UniformInterval(-1, 1), 0.0) == 0.5
    assert pdf(Gaussian(0, 1), 0.0) == pytest.approx(0.3989422804, abs=1e-10)
    for d in (Dirac(0), Bernoulli(0.3), Categorical([0, 1], [0.5, 0.5])):
        with pytest.raises(NoDensity):
            pdf(d, 0.0)


def test_moment_examples():
    assert moments(Gaussian(1, 4)) == moments(Gaussian(1.0, 4.0))
    m = moments(Gaussian(1, 4))
    assert (m.mean, m.variance, m.third_central) == (1.0, 4.0, 0.0)
    m = moments(Mixture([Dirac(0), Dirac(1)], [0.5, 0.5]))
    assert (m.mean, m.variance, m.third_central) == pytest.approx((0.5, 0.25, 0.0))
    m = moments(Mixture([Dirac(0), Dirac(3)], [2 / 3, 1 / 3]))
    # direct finite sums over the two atoms
    assert (m.mean, m.variance, m.third_central) == pytest.approx((1.0, 2.0, 2.0), abs=1e-12)
    m = moments(Dirac(4))
    assert (m.variance, m.third_central) == (0.0, 0.0)


def test_convolution_examples():
    g = convolve(Gaussian(0, 1), Gaussian(1, 2))
    assert isinstance(g, Gaussian) and (g.mu, g.sigma2) == (1.0, 3.0)
    shifted = convolve(Dirac(2.5), Gaussian(0, 1))
    assert shifted == Gaussian(2.5, 1.0)
    tri = convolve(UniformInterval(0, 1), UniformInterval(0, 1))
    assert isinstance(tri, GridCdf)
    assert float(tri.cdf(1.0)) == pytest.approx(0.5, abs=1e-8)
    x = np.linspace(-0.5, 2.5, 61)
    triangle = np.where(x < 1, np.clip(x, 0, 1) ** 2 / 2, 1 - np.clip(2 - x, 0, 1) ** 2 / 2)
    np.testing.assert_allclose(tri.cdf(x), triangle, atol=1e-6)


def test_median_examples():
    assert median(Gaussian(3, 1)) == 3.0
    assert median(Categorical([0, 1], [0.5, 0.5])) == 0.0
    assert median(Mixture([Dirac(0), Dirac(10)], [0.4, 0.6])) == 10.0
    assert median(UniformInterval(2, 4)) == pytest.approx(3.0)


def test_discretize_examples():
    grid = np.round(np.arange(-8, 8.0001, 0.01), 10)
    g = discretize(Gaussian(0, 1), grid)
    assert g.cdf_values[np.argmin(np.abs(grid))] == 0.5
    d = discretize(Dirac(0), [-1.0, 0.0, 1.0])
    np.testing.assert_array_equal(d.cdf_values, [0.0, 1.0, 1.0])
    u = discretize(UniformInterval(0, 1), np.arange(-1, 2.01, 0.5))
    np.testing.assert_allclose(u.cdf_values, [0, 0, 0, 0.5, 1, 1, 1])
    with pytest.raises(UnboundedSupport):
        discretize(Gaussian(0, 1), np.linspace(-2, 2, 11))


# -- invariants -------------------------------------------------------------


@given(any_dist, st.lists(st.floats(-30, 30), min_size=2, max_size=30))
def test_cdf_monotone_and_bounded(d, xs):
    xs = np.sort(np.array(xs))
    F = np.asarray(d.cdf(xs))
    assert np.all((F >= 0) & (F <= 1))
    assert np.all(np.diff(F) >= -1e-15)
    assert float(d.cdf(1e6)) == pytest.approx(1.0) and float(d.cdf(-1e6)) == pytest.approx(0.0)


@given(gaussian_mixtures())
def test_mixture_pdf_integrates_to_one(d):
    lo, hi = d.support(1e-12)
    val, _ = sp_integrate.quad(d.pdf, lo, hi, points=sorted(d.landmarks()), limit=200)
    assert abs(val - 1.0) < 1e-6


@given(gaussian_mixtures(), gaussians)
def test_convolution_adds_means_and_variances(d, noise):
    c = convolve(d, noise)
    md, mn, mc = moments(d), moments(noise), moments(c)
    assert mc.mean == pytest.approx(md.mean + mn.mean, abs=1e-8)
    assert mc.variance == pytest.approx(md.variance + mn.variance, abs=1e-7)


def test_numeric_convolution_matches_defining_integral():
    d, noise = UniformInterval(-1, 2), Gaussian(0.5, 0.3)
    c = convolve(d, noise)
    for x in (-2.0, 0.0, 0.7, 3.0):
        ref, _ = sp_integrate.quad(lambda y: noise.cdf(x - y) / 3.0, -1, 2, epsabs=1e-12)
        assert float(c.cdf(x)) == pytest.approx(ref, abs=1e-6)


@given(gaussian_mixtures())
def test_discretize_reproduces_cdf_at_knots(d):
    lo, hi = d.support(1e-12)
    grid = np.linspace(lo - 1, hi + 1, 301)
    g = discretize(d, grid)
    F = np.asarray(d.cdf(grid))
    np.testing.assert_array_equal(g.cdf(grid)[:-1], np.maximum.accumulate(F)[:-1])


@given(gaussian_mixtures(), st.floats(0.01, 0.99))
def test_quantile_inverts_cdf(d, u):
    x = float(d.quantile(u))
    assert float(d.cdf(x)) == pytest.approx(u, abs=1e-9)


@given(categoricals(), st.floats(0.0, 1.0))
def test_atomic_quantile_is_generalized_inverse(d, u):
    x = float(d.quantile(u))
    pts, _ = d.atoms()
    assert x in pts
    assert float(d.cdf(x)) >= u - 1e-12
    below = pts[pts < x]
    if below.size:
        assert float(d.cdf(below[-1])) < u


@given(gaussians)
def test_gaussian_against_scipy(d):
    xs = np.linspace(-10, 10, 21)
    ref = stats.norm(d.mu, math.sqrt(d.sigma2))
    np.testing.assert_allclose(d.cdf(xs), ref.cdf(xs), atol=1e-14)
    np.testing.assert_allclose(d.logpdf(xs), ref.logpdf(xs), rtol=1e-12)


@given(gaussian_mixtures())
def test_quadrature_moments_match_analytic(d):
    # the base-class path integrates numerically; the mixture path is analytic
    from properization.distributions import Distribution

    numeric = Distribution.moments(d)
    analytic = d.moments()
    assert numeric.mean == pytest.approx(analytic.mean, abs=1e-8)
    assert numeric.variance == pytest.approx(analytic.variance, rel=1e-8, abs=1e-8)


def test_grid_cdf_density_and_atom():
    g = GridCdf([0.0, 1.0, 3.0], [0.2, 0.6, 1.0])
    assert g.atoms()[1].tolist() == [0.2]
    assert not g.has_density
    assert g.ac_density(0.5) == pytest.approx(0.4)
    assert g.ac_density(2.0) == pytest.approx(0.2)
    m = g.moments()
    ref_mean = 0.2 * 0 + 0.4 * 0.5 + 0.4 * 2.0
    assert m.mean == pytest.approx(ref_mean)


def test_truncated_conditions_on_interval():
    t = Truncated(Gaussian(0, 1), 0.0, math.inf)
    assert float(t.cdf(0.0)) == 0.0
    assert float(t.pdf(1.0)) == pytest.approx(2 * stats.norm.pdf(1.0))
    assert t.moments().mean == pytest.approx(math.sqrt(2 / math.pi), abs=1e-9)
    with pytest.raises(WeightMassZero):
        Truncated(UniformInterval(0, 1), 2.0, 3.0)


def test_odds_power_transform():
    u = np.linspace(0.01, 0.99, 99)
    for alpha in (1.5, 3.0):
        np.testing.assert_allclose(odds_power_inverse(odds_power(u, alpha), alpha), u, atol=1e-12)
    np.testing.assert_allclose(odds_power(u, 2.0), u, atol=1e-15)
    d = OddsPowerTransform(Gaussian(0, 1), 3.0)
    lo, hi = d.support(1e-12)
    val, _ = sp_integrate.quad(d.pdf, lo, hi, points=[0.0], limit=200)
    assert val == pytest.approx(1.0, abs=1e-7)


def test_invalid_parameters():
    bad = [
        lambda: Gaussian(0, 0), lambda: Gaussian(math.nan, 1), lambda: UniformInterval(1, 1),
        lambda: Bernoulli(1.2), lambda: Categorical([1, 0], [0.5, 0.5]),
        lambda: Categorical([0, 1], [0.5, 0.6]), lambda: Mixture([Dirac(0)], [0.9]),
        lambda: GridCdf([0, 1], [0.0, 0.9]), lambda: GridCdf([0, 1], [0.5, 0.2]),
        lambda: Dirac(math.inf),
    ]
    for make in bad:
        with pytest.raises(InvalidDistribution):
            make()


def test_mixtures_are_flattened():
    inner = Mixture([Dirac(0), Dirac(1)], [0.5, 0.5])
    outer = Mixture([inner, Gaussian(0, 1)], [0.5, 0.5])
    assert len(outer.components) == 3
    np.testing.assert_allclose(outer.weights, [0.25, 0.25, 0.5])


LITERALS = [
    {"type": "gaussian", "mu": 0.0, "sigma2": 1.0},
    {"type": "bernoulli", "p": 0.7},
    {"type": "dirac", "x": 2.0},
    {"type": "categorical", "points": [0.0, 1.0], "probs": [0.25, 0.75]},
    {"type": "uniform", "a": -1.0, "b": 1.0},
    {"type": "mixture", "weights": [0.5, 0.5],
     "components": [{"type": "dirac", "x": 0.0}, {"type": "gaussian", "mu": 1.0, "sigma2": 2.0}]},
    {"type": "grid_cdf", "grid": [0.0, 1.0, 2.0], "cdf": [0.0, 0.5, 1.0]},
    {"type": "truncated", "base": {"type": "gaussian", "mu": 0.0, "sigma2": 1.0}, "lo": 0.0, "hi": None},
    {"type": "odds_power", "base": {"type": "gaussian", "mu": 0.0, "sigma2": 1.0}, "alpha": 3.0},
]


@pytest.mark.parametrize("lit", LITERALS, ids=lambda d: d["type"])
def test_literal_round_trip(lit):
    d = from_literal(json.loads(json.dumps(lit)))
    assert d.to_literal() == lit
    assert sup_cdf_distance(d, from_literal(d.to_literal())) == 0.0


@pytest.mark.parametrize("lit", [
    {"type": "Gaussian", "mu": 0.0, "sigma2": 1.0},
    {"type": "gaussian", "mu": 0.0, "sigma2": 1.0, "extra": 1},
    {"type": "gaussian", "mu": 0.0},
    {"type": "gaussian", "mu": "0", "sigma2": 1.0},
    {"type": "gaussian", "mu": True, "sigma2": 1.0},
    ["gaussian"],
])
def test_literal_rejects(lit):
    with pytest.raises(InvalidDistribution):
        from_literal(lit)
