import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate as sp_integrate, stats

from properization import scores as sc
from properization.distributions import (
    Bernoulli,
    Categorical,
    Dirac,
    Gaussian,
    Mixture,
    UniformInterval,
    convolve,
)
from properization.errors import DegenerateForecast, IncompatibleRule, WeightMassZero

mus = st.floats(-3, 3)
variances = st.floats(0.2, 4)
gaussians = st.builds(Gaussian, mus, variances)
probs = st.floats(0, 1)


@st.composite
def skewed_mixtures(draw):
    a, b = draw(gaussians), draw(gaussians)
    w = draw(st.floats(0.1, 0.9))
    return Mixture([a, b], [w, 1 - w])


def oracle_expect(fn, Q, lo=-40, hi=40):
    """E_Q fn(Y) with scipy quad (independent of the package quadrature)."""
    val, _ = sp_integrate.quad(lambda y: fn(y) * Q.pdf(y), lo, hi, points=[Q.moments().mean],
                               limit=400, epsabs=1e-11)
    return val


# -- worked examples --------------------------------------------------------


def test_score_examples():
    assert sc.score(sc.Mpr(), Bernoulli(0.7), 0.0) == pytest.approx(0.7)
    assert sc.score(sc.Pmcc(), Gaussian(1, 4), 2.0) == 5.0
    assert sc.score(sc.SpreadError(), Gaussian(0, 1), 2.0) == 9.0
    assert sc.score(sc.CrpsAlpha(2), Dirac(0), 0.0) == 0.0
    assert sc.score(sc.ProbabilityScore(1), UniformInterval(0, 1), 0.5) == -1.0


def test_expected_score_examples():
    assert sc.expected_score(sc.ZeroOne(), Bernoulli(0.9), Bernoulli(0.7)) == pytest.approx(0.3)
    assert sc.expected_score(sc.SquaredError(), Gaussian(0, 1), Gaussian(1, 4)) == pytest.approx(5.0)
    val = sc.expected_score(sc.CrpsAlpha(2), Gaussian(0, 1), Gaussian(0, 1))
    assert val == pytest.approx(1 / math.sqrt(math.pi), abs=1e-8)
    # Monte Carlo cross-check of E|X - X'| / 2
    rng = np.random.default_rng(3)
    x, x2 = rng.standard_normal((2, 400_000))
    assert np.mean(np.abs(x - x2)) / 2 == pytest.approx(float(val), abs=3e-3)


def test_crps_phi_phi_examples():
    assert sc.crps_phi_phi(Dirac(0)) == 0.0
    assert sc.crps_phi_phi(Gaussian(0, 1)) == pytest.approx(0.5641895835, abs=1e-8)
    assert sc.crps_phi_phi(UniformInterval(0, 1)) == pytest.approx(1 / 6, abs=1e-10)


# -- binary rules -----------------------------------------------------------


@given(p=probs, w=st.sampled_from([0.0, 1.0]))
def test_binary_formulas(p, w):
    P = Bernoulli(p)
    assert sc.score(sc.Mpr(), P, w) == pytest.approx(1 - p * w - (1 - p) * (1 - w))
    assert sc.score(sc.MaeBinary(), P, w) == pytest.approx(abs(p - w))
    assert sc.score(sc.ZeroOne(), P, w) == float((p >= 0.5) != bool(w))
    assert sc.score(sc.Brier(), P, w) == pytest.approx((p - w) ** 2)


@given(p=probs, q=probs)
def test_zero_one_depends_only_on_mode(p, q):
    a = sc.expected_score(sc.ZeroOne(), Bernoulli(p), Bernoulli(q))
    b = sc.expected_score(sc.ZeroOne(), Bernoulli(1.0 if p >= 0.5 else 0.0), Bernoulli(q))
    assert a == b


def test_binary_rules_reject_other_outcomes():
    with pytest.raises(IncompatibleRule):
        sc.score(sc.Mpr(), Bernoulli(0.5), 0.5)
    with pytest.raises(IncompatibleRule):
        sc.score(sc.Brier(), Gaussian(0, 1), 1.0)
    assert sc.binary_probability(Categorical([0.0, 1.0], [0.25, 0.75])) == 0.75


# -- pointwise = expectation under a point mass ----------------------------

RULES_FOR_DIRAC = [
    sc.LogScore(), sc.CrpsAlpha(2.0), sc.CrpsAlpha(0.5), sc.CrpsAlpha(3.0), sc.TrialScore(),
    sc.SpreadError(), sc.Pmcc(), sc.SquaredError(), sc.NormalizedSquaredError(), sc.LinearScore(),
    sc.ProbabilityScore(0.7), sc.NoisyCrps(Gaussian(0, 0.5)),
    sc.Weighted(sc.LogScore(), sc.IndicatorAbove(-1.0)),
    sc.ConvolutionScore(sc.LinearScore(), Gaussian(0, 0.3)),
]


@pytest.mark.parametrize("rule", RULES_FOR_DIRAC, ids=str)
@given(P=skewed_mixtures(), y=st.floats(-4, 4))
def test_expected_under_dirac_equals_pointwise(rule, P, y):
    a = float(sc.expected_score(rule, P, Dirac(y)))
    b = float(sc.score(rule, P, y))
    assert a == pytest.approx(b, rel=1e-9, abs=1e-8)


# -- closed forms vs independent oracles ----------------------------------


@given(P=gaussians, y=st.floats(-6, 6))
def test_gaussian_crps_closed_form_vs_quadrature(P, y):
    rule = sc.CrpsAlpha(2.0)
    oracle, _ = sp_integrate.quad(lambda x: (P.cdf(x) - (x >= y)) ** 2, -30, 30, points=[y, P.mu],
                                  limit=200, epsabs=1e-12)
    assert rule.score(P, y) == pytest.approx(oracle, abs=1e-7)
    assert rule.quadrature_score(P, y) == pytest.approx(oracle, abs=1e-7)


@given(P=skewed_mixtures(), y=st.floats(-4, 4), alpha=st.sampled_from([0.5, 1.0, 1.5, 3.0]))
def test_crps_alpha_vs_scipy(P, y, alpha):
    oracle, _ = sp_integrate.quad(lambda x: abs(P.cdf(x) - (x >= y)) ** alpha, -40, 40,
                                  points=[y], limit=400, epsabs=1e-12)
    assert sc.score(sc.CrpsAlpha(alpha), P, y) == pytest.approx(oracle, abs=1e-7)


def test_crps_alpha_one_is_absolute_error_for_point_forecast():
    assert sc.score(sc.CrpsAlpha(1.0), Dirac(0.5), 2.0) == pytest.approx(1.5)


@pytest.mark.parametrize("rule", [sc.TrialScore(), sc.SpreadError(), sc.Pmcc(), sc.SquaredError(),
                                  sc.NormalizedSquaredError()], ids=str)
@given(P=skewed_mixtures(), Q=skewed_mixtures())
def test_moment_rules_expected_vs_quadrature(rule, P, Q):
    oracle = oracle_expect(lambda y: rule.score(P, y), Q)
    assert float(sc.expected_score(rule, P, Q)) == pytest.approx(oracle, rel=1e-8, abs=1e-8)


@given(P=skewed_mixtures(), y=st.floats(-5, 5))
def test_moment_rule_formulas(P, y):
    m = P.moments()
    mu, v, g = m.mean, m.variance, m.third_central
    assert sc.score(sc.TrialScore(), P, y) == pytest.approx((v - (y - mu) ** 2) ** 2)
    assert sc.score(sc.SpreadError(), P, y) == pytest.approx(
        (v - (y - mu) ** 2 + (y - mu) * g / v) ** 2, rel=1e-9, abs=1e-9)
    assert sc.score(sc.Pmcc(), P, y) == pytest.approx((y - mu) ** 2 + v)
    assert sc.score(sc.NormalizedSquaredError(), P, y) == pytest.approx((y - mu) ** 2 / v)


def test_degenerate_forecasts():
    for rule in (sc.TrialScore(), sc.SpreadError(), sc.NormalizedSquaredError()):
        with pytest.raises(DegenerateForecast):
            sc.score(rule, Dirac(1.0), 1.0)
    assert sc.score(sc.Pmcc(), Dirac(1.0), 3.0) == 4.0


@given(P=skewed_mixtures(), Q=skewed_mixtures())
def test_log_score_expected_vs_scipy(P, Q):
    oracle = oracle_expect(lambda y: -P.logpdf(y), Q)
    assert float(sc.expected_score(sc.LogScore(), P, Q)) == pytest.approx(oracle, abs=1e-7)


def test_log_score_infinite_values_carry_reason():
    s = sc.score(sc.LogScore(), UniformInterval(0, 1), 2.0)
    assert math.isinf(s) and s.reason
    e = sc.expected_score(sc.LogScore(), UniformInterval(0, 1), Gaussian(0, 1))
    assert math.isinf(e) and e > 0
    assert sc.score(sc.LogScore(), Categorical([0, 1], [0.25, 0.75]), 1.0) == pytest.approx(-math.log(0.75))


def test_score_never_nan():
    with pytest.raises(ValueError):
        sc.Score(math.nan)


# -- weighted ---------------------------------------------------------------


def test_weighted_with_covering_weight_equals_base():
    P, Q = UniformInterval(0, 1), UniformInterval(0.2, 0.9)
    for base in (sc.LogScore(), sc.CrpsAlpha(2.0)):
        w = sc.Weighted(base, sc.IndicatorInterval(-1.0, 2.0))
        for y in (0.1, 0.5, 0.95):
            assert sc.score(w, P, y) == pytest.approx(float(sc.score(base, P, y)), abs=1e-12)
        assert float(sc.expected_score(w, P, Q)) == pytest.approx(float(sc.expected_score(base, P, Q)), abs=1e-8)


@given(P=gaussians, Q=gaussians, r=st.floats(-2, 2))
def test_weighted_expected_vs_quadrature(P, Q, r):
    rule = sc.Weighted(sc.LogScore(), sc.IndicatorAbove(r))
    oracle, _ = sp_integrate.quad(lambda y: -P.logpdf(y) * Q.pdf(y), r, 40, limit=200, epsabs=1e-11)
    assert float(sc.expected_score(rule, P, Q)) == pytest.approx(oracle, abs=1e-7)
    assert sc.score(rule, P, r - 1.0) == 0.0


def test_weight_mass_zero():
    rule = sc.Weighted(sc.LogScore(), sc.IndicatorAbove(5.0))
    with pytest.raises(WeightMassZero):
        sc.score(rule, UniformInterval(0, 1), 6.0)


# -- density rules, noise and convolution -----------------------------------


@given(P=skewed_mixtures(), y=st.floats(-4, 4), c=st.floats(0.1, 2))
def test_probability_score_is_interval_mass(P, y, c):
    oracle, _ = sp_integrate.quad(P.pdf, y - c, y + c, epsabs=1e-12)
    assert sc.score(sc.ProbabilityScore(c), P, y) == pytest.approx(-oracle, abs=1e-9)


def test_density_rules_need_density():
    for rule in (sc.LinearScore(), sc.ProbabilityScore(1.0)):
        with pytest.raises(IncompatibleRule):
            sc.score(rule, Dirac(0.0), 0.0)


@given(P=gaussians, y=st.floats(-4, 4), noise=gaussians)
def test_noisy_crps_pointwise_vs_scipy(P, y, noise):
    rule = sc.NoisyCrps(noise)
    oracle, _ = sp_integrate.quad(lambda x: (P.cdf(x) - noise.cdf(x - y)) ** 2, -40, 40,
                                  points=[y, P.mu], limit=400, epsabs=1e-12)
    assert sc.score(rule, P, y) == pytest.approx(oracle, abs=1e-7)


@given(P=gaussians, Q=gaussians, noise=gaussians)
def test_noisy_crps_expected_against_nested_integration(P, Q, noise):
    rule = sc.NoisyCrps(noise)
    nested = float(Q.expect(lambda y: rule.score_many(P, y)))
    assert float(sc.expected_score(rule, P, Q)) == pytest.approx(nested, abs=1e-6)


@given(P=gaussians, y=st.floats(-4, 4), noise=gaussians)
def test_convolution_score_pointwise(P, y, noise):
    rule = sc.ConvolutionScore(sc.LinearScore(), noise)
    # Gaussian oracle: -E p(y + E) is minus the density of X - E at y
    oracle = -stats.norm.pdf(y, P.mu - noise.mu, math.sqrt(P.sigma2 + noise.sigma2))
    assert sc.score(rule, P, y) == pytest.approx(oracle, abs=1e-9)


def test_convolution_score_needs_noise_density():
    with pytest.raises(IncompatibleRule):
        sc.ConvolutionScore(sc.LinearScore(), Dirac(0.0))


def test_noisy_crps_equals_convolved_truth_crps():
    P, Q, noise = Gaussian(0, 1), Gaussian(0.5, 2), Gaussian(0, 0.5)
    direct = sc.crps(P, convolve(Q, noise)) - float(sc.crps_phi_phi(noise))
    assert float(sc.expected_score(sc.NoisyCrps(noise), P, Q)) == pytest.approx(direct, abs=1e-12)


# -- literals ----------------------------------------------------------------

RULE_LITERALS = [
    {"rule": "mpr"}, {"rule": "mae_binary"}, {"rule": "zero_one"}, {"rule": "brier"}, {"rule": "log"},
    {"rule": "crps_alpha", "alpha": 1.0},
    {"rule": "weighted", "base": {"rule": "log"}, "weight": {"type": "indicator_above", "r": 0.0}},
    {"rule": "weighted", "base": {"rule": "crps_alpha", "alpha": 2.0},
     "weight": {"type": "indicator_interval", "a": -1.0, "b": 1.0}},
    {"rule": "trial_score"}, {"rule": "spread_error"}, {"rule": "pmcc"}, {"rule": "squared_error"},
    {"rule": "normalized_squared_error"}, {"rule": "linear_score"},
    {"rule": "probability_score", "c": 0.5},
    {"rule": "noisy_crps", "noise": {"type": "gaussian", "mu": 0.0, "sigma2": 1.0}},
    {"rule": "convolution_score", "base": {"rule": "linear_score"},
     "noise": {"type": "uniform", "a": -0.5, "b": 0.5}},
]


@pytest.mark.parametrize("lit", RULE_LITERALS, ids=lambda d: d["rule"])
def test_rule_literal_round_trip(lit):
    assert sc.rule_from_literal(lit).to_literal() == lit


@pytest.mark.parametrize("lit", [
    {"rule": "nope"}, {"rule": "crps_alpha"}, {"rule": "crps_alpha", "alpha": -1.0},
    {"rule": "log", "alpha": 1.0}, {"rule": "probability_score", "c": "1"},
    {"rule": "weighted", "base": {"rule": "brier"}, "weight": {"type": "indicator_above", "r": 0.0}},
])
def test_rule_literal_rejects(lit):
    with pytest.raises(IncompatibleRule):
        sc.rule_from_literal(lit)
