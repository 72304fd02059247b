"""Scoring rules: pointwise scores ``S(P, y)`` and expected scores ``S(P, Q)``.

Scores are negatively oriented penalties.  Expected scores use closed forms
where one is cheap (binary outcomes, moment-based rules) and otherwise
integrate the pointwise score against ``Q`` with adaptive quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

import numpy as np
from scipy.special import ndtr

from .distributions import (
    Bernoulli,
    Distribution,
    Gaussian,
    Truncated,
    convolve,
    from_literal as distribution_from_literal,
)
from .errors import (
    DegenerateForecast,
    IncompatibleRule,
    NoDensity,
    WeightMassZero,
)
from .quadrature import integrate

_SQRT_2PI = math.sqrt(2.0 * math.pi)


class Score(float):
    """Extended real score value; infinite values carry a ``reason`` code."""

    def __new__(cls, value, reason: str | None = None):
        v = float(value)
        if math.isnan(v):
            raise ValueError("a score is never NaN")
        obj = super().__new__(cls, v)
        obj.reason = (reason or "divergent") if math.isinf(v) else None
        return obj

    def __repr__(self):
        if self.reason:
            return f"Score({float(self)!r}, reason={self.reason!r})"
        return f"Score({float(self)!r})"


RULES: dict[str, type] = {}


def _register(cls):
    RULES[cls.name] = cls
    return cls


class ScoringRule:
    """Base class.  Subclasses implement :meth:`score` and usually :meth:`expected`."""

    name: ClassVar[str] = ""
    proper: ClassVar[bool] = False
    strictly_proper: ClassVar[bool] = False
    infinite_reason: ClassVar[str] = "divergent"

    def score(self, P: Distribution, y: float) -> float:
        raise NotImplementedError

    def score_many(self, P: Distribution, ys: np.ndarray) -> np.ndarray:
        ys = np.asarray(ys, dtype=float)
        return np.array([self.score(P, float(y)) for y in ys.ravel()]).reshape(ys.shape)

    def expected(self, P: Distribution, Q: Distribution) -> float:
        return float(Q.expect(lambda ys: self.score_many(P, ys), points=P.landmarks()))

    def to_literal(self) -> dict:
        return {"rule": self.name}

    @classmethod
    def from_fields(cls, obj: dict) -> "ScoringRule":
        _expect_fields(obj, set())
        return cls()

    def __str__(self):
        return self.name


def _expect_fields(obj: dict, fields: set[str]) -> None:
    keys = set(obj) - {"rule"}
    if keys != fields:
        raise IncompatibleRule(
            f"rule {obj.get('rule')!r}: unknown fields {sorted(keys - fields)}, "
            f"missing {sorted(fields - keys)}"
        )


def _number(obj: dict, key: str) -> float:
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise IncompatibleRule(f"field {key!r} must be a number, got {v!r}")
    return float(v)


# ---------------------------------------------------------------------------
# binary outcomes
# ---------------------------------------------------------------------------


def binary_probability(d: Distribution) -> float:
    """``P({1})`` for a distribution concentrated on {0, 1}."""
    if isinstance(d, Bernoulli):
        return d.p
    pts, masses = d.atoms()
    if d.ac_mass == 0 and np.all(np.isin(pts, (0.0, 1.0))):
        return float(masses[pts == 1.0].sum())
    raise IncompatibleRule(f"binary rules need a distribution on {{0, 1}}, got {d.kind}")


def _binary_outcome(y) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if not np.all((y == 0.0) | (y == 1.0)):
        raise IncompatibleRule("binary outcomes must be encoded as 0.0 or 1.0")
    return y


class _BinaryRule(ScoringRule):
    def _value(self, p: float, omega: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def score(self, P, y):
        return float(self._value(binary_probability(P), _binary_outcome(y)))

    def score_many(self, P, ys):
        return self._value(binary_probability(P), _binary_outcome(ys)).astype(float)

    def expected(self, P, Q):
        p, q = binary_probability(P), binary_probability(Q)
        return float((1.0 - q) * self._value(p, np.float64(0.0)) + q * self._value(p, np.float64(1.0)))


@_register
@dataclass(frozen=True)
class Mpr(_BinaryRule):
    """Mean probability rate ``1 - p w - (1 - p)(1 - w)``."""

    name: ClassVar[str] = "mpr"

    def _value(self, p, omega):
        return 1.0 - p * omega - (1.0 - p) * (1.0 - omega)


@_register
@dataclass(frozen=True)
class MaeBinary(_BinaryRule):
    """Absolute error ``|p - w|`` of a probability forecast."""

    name: ClassVar[str] = "mae_binary"

    def _value(self, p, omega):
        return np.abs(p - omega)


@_register
@dataclass(frozen=True)
class ZeroOne(_BinaryRule):
    """Misclassification: 0 if the mode ``1{p >= 1/2}`` equals the outcome, else 1."""

    name: ClassVar[str] = "zero_one"
    proper: ClassVar[bool] = True

    def _value(self, p, omega):
        mode = 1.0 if p >= 0.5 else 0.0
        return np.where(omega == mode, 0.0, 1.0)


@_register
@dataclass(frozen=True)
class Brier(_BinaryRule):
    """``(p - omega)^2``, half of the two-category sum of squares."""

    name: ClassVar[str] = "brier"
    proper: ClassVar[bool] = True
    strictly_proper: ClassVar[bool] = True

    def _value(self, p, omega):
        return (p - omega) ** 2


# ---------------------------------------------------------------------------
# logarithmic score
# ---------------------------------------------------------------------------


@_register
@dataclass(frozen=True)
class LogScore(ScoringRule):
    """``-log p(y)`` for densities, ``-log P({y})`` for discrete forecasts."""

    name: ClassVar[str] = "log"
    proper: ClassVar[bool] = True
    strictly_proper: ClassVar[bool] = True
    infinite_reason: ClassVar[str] = "zero_density"

    def score(self, P, y):
        return float(self.score_many(P, np.array([y]))[0])

    def score_many(self, P, ys):
        ys = np.asarray(ys, dtype=float)
        if P.has_density:
            return -np.asarray(P.logpdf(ys), dtype=float)
        if P.ac_mass == 0:
            with np.errstate(divide="ignore"):
                return -np.log(P.mass_at(ys))
        raise IncompatibleRule("log score needs a density or a purely discrete forecast")

    def expected(self, P, Q):
        pts, masses = Q.atoms()
        total = 0.0
        if pts.size:
            vals = self.score_many(P, pts)
            if np.any(np.isinf(vals)):
                return math.inf
            total = float(np.dot(vals, masses))
        if Q.ac_mass > 1e-15:
            if not P.has_density:
                return math.inf
            hit = []

            def integrand(y):
                q = Q.ac_density(y)
                lp = np.asarray(P.logpdf(y), dtype=float)
                bad = (q > 0) & ~np.isfinite(lp)
                if bad.any():
                    hit.append(True)
                return np.where(q > 0, -q * np.where(np.isfinite(lp), lp, 0.0), 0.0)

            lo, hi = Q.support()
            total += integrate(integrand, lo, hi, points=np.concatenate((Q.landmarks(), P.landmarks())))
            if hit:
                return math.inf
        return total


# ---------------------------------------------------------------------------
# CRPS family
# ---------------------------------------------------------------------------


@_register
@dataclass(frozen=True)
class CrpsAlpha(ScoringRule):
    """``int |P(x) - 1{y <= x}|^alpha dx``; ``alpha = 2`` is the CRPS."""

    alpha: float = 2.0
    name: ClassVar[str] = "crps_alpha"

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise IncompatibleRule(f"alpha must be positive, got {self.alpha}")

    @property
    def proper(self):
        return self.alpha == 2.0

    @property
    def strictly_proper(self):
        return self.alpha == 2.0

    def _eps(self) -> float:
        # tails of F^alpha must stay below ~1e-14 after truncation
        return max(1e-14 ** max(1.0, 1.0 / self.alpha), 1e-300)

    def _limits(self, *dists: Distribution) -> tuple[float, float]:
        eps = self._eps()
        bounds = [d.support(eps) for d in dists]
        return min(b[0] for b in bounds), max(b[1] for b in bounds)

    def score(self, P, y):
        if self.alpha == 2.0 and isinstance(P, Gaussian):
            return gaussian_crps(P.mu, P.sigma, y)
        return self.quadrature_score(P, y)

    def quadrature_score(self, P, y):
        lo, hi = self._limits(P)
        lo, hi = min(lo, y), max(hi, y)
        a = self.alpha

        def integrand(x):
            return np.abs(np.clip(P.cdf(x), 0.0, 1.0) - (x >= y)) ** a

        return float(integrate(integrand, lo, hi, points=np.append(P.landmarks(), y)))

    def expected(self, P, Q):
        lo, hi = self._limits(P, Q)
        a = self.alpha

        def integrand(x):
            # rounding can push a mixture CDF just outside [0, 1]
            F = np.clip(P.cdf(x), 0.0, 1.0)
            G = np.clip(Q.cdf(x), 0.0, 1.0)
            return (1.0 - G) * F**a + G * (1.0 - F) ** a

        pts = np.concatenate((P.landmarks(), Q.landmarks(), Q.atoms()[0]))
        return float(integrate(integrand, lo, hi, points=pts))

    def expected_against_shifts(self, P, noise, ys):
        """``expected(P, noise.shift(y))`` for every ``y`` in ``ys`` at once."""
        ys = np.asarray(ys, dtype=float)
        plo, phi = self._limits(P)
        nlo, nhi = self._limits(noise)
        lo, hi = min(plo, ys.min() + nlo), max(phi, ys.max() + nhi)
        a = self.alpha

        def integrand(x):
            F = np.clip(P.cdf(x), 0.0, 1.0)[None, :]
            G = np.clip(noise.cdf(x[None, :] - ys[:, None]), 0.0, 1.0)
            return (1.0 - G) * F**a + G * (1.0 - F) ** a

        return np.atleast_1d(integrate(integrand, lo, hi, points=P.landmarks()))

    def to_literal(self):
        return {"rule": self.name, "alpha": self.alpha}

    @classmethod
    def from_fields(cls, obj):
        _expect_fields(obj, {"alpha"})
        return cls(_number(obj, "alpha"))


def gaussian_crps(mu: float, sigma: float, y: float) -> float:
    """Closed-form CRPS of ``N(mu, sigma^2)`` at ``y``."""
    z = (y - mu) / sigma
    return float(sigma * (z * (2.0 * ndtr(z) - 1.0) + 2.0 * math.exp(-0.5 * z * z) / _SQRT_2PI
                          - 1.0 / math.sqrt(math.pi)))


def crps(P: Distribution, Q: Distribution) -> float:
    """Expected CRPS of forecast ``P`` under truth ``Q``."""
    return CrpsAlpha(2.0).expected(P, Q)


def crps_phi_phi(noise: Distribution):
    """``int Phi(x) (1 - Phi(x)) dx``, the expected CRPS of ``noise`` against itself."""
    lo, hi = noise.support(1e-15)
    pts = np.concatenate((noise.landmarks(), noise.atoms()[0]))
    value = integrate(lambda x: (F := np.asarray(noise.cdf(x))) * (1.0 - F), lo, hi, points=pts)
    return Score(value)


# ---------------------------------------------------------------------------
# weighted scores
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndicatorAbove:
    r: float

    @property
    def region(self) -> tuple[float, float]:
        return self.r, math.inf

    def __call__(self, y):
        return (np.asarray(y, dtype=float) > self.r).astype(float)

    def to_literal(self):
        return {"type": "indicator_above", "r": self.r}


@dataclass(frozen=True)
class IndicatorInterval:
    a: float
    b: float

    def __post_init__(self):
        if not self.a < self.b:
            raise IncompatibleRule(f"indicator interval needs a < b, got ({self.a}, {self.b})")

    @property
    def region(self) -> tuple[float, float]:
        return self.a, self.b

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        return ((y > self.a) & (y <= self.b)).astype(float)

    def to_literal(self):
        return {"type": "indicator_interval", "a": self.a, "b": self.b}


def weight_from_literal(obj: dict):
    if not isinstance(obj, dict):
        raise IncompatibleRule(f"weight literal must be an object, got {obj!r}")
    tag = obj.get("type")
    if tag == "indicator_above":
        if set(obj) != {"type", "r"}:
            raise IncompatibleRule("indicator_above takes exactly the field 'r'")
        return IndicatorAbove(_number(obj, "r"))
    if tag == "indicator_interval":
        if set(obj) != {"type", "a", "b"}:
            raise IncompatibleRule("indicator_interval takes exactly the fields 'a' and 'b'")
        return IndicatorInterval(_number(obj, "a"), _number(obj, "b"))
    raise IncompatibleRule(f"unknown weight type {tag!r}")


@_register
@dataclass(frozen=True)
class Weighted(ScoringRule):
    """``w(y) * S0(P, y)``, with the convention that the score is 0 where ``w = 0``."""

    base: ScoringRule
    weight: IndicatorAbove | IndicatorInterval
    name: ClassVar[str] = "weighted"

    def __post_init__(self):
        if not isinstance(self.base, (LogScore, CrpsAlpha)):
            raise IncompatibleRule("weighted scores take a log or CRPS_alpha base")

    def _check_mass(self, P):
        lo, hi = self.weight.region
        if P.interval_mass(lo, hi) <= 0:
            raise WeightMassZero(f"forecast puts no mass on the weight region ({lo}, {hi}]")

    def score(self, P, y):
        self._check_mass(P)
        if self.weight(y) == 0:
            return 0.0
        return self.base.score(P, y)

    def expected(self, P, Q):
        self._check_mass(P)
        lo, hi = self.weight.region
        mass = Q.interval_mass(lo, hi)
        if mass <= 0:
            return 0.0
        return mass * self.base.expected(P, Truncated(Q, lo, hi))

    def to_literal(self):
        return {"rule": self.name, "base": self.base.to_literal(), "weight": self.weight.to_literal()}

    @classmethod
    def from_fields(cls, obj):
        _expect_fields(obj, {"base", "weight"})
        return cls(rule_from_literal(obj["base"]), weight_from_literal(obj["weight"]))


# ---------------------------------------------------------------------------
# moment-based rules
# ---------------------------------------------------------------------------


class _MomentRule(ScoringRule):
    """Rules depending on the forecast only through mean, variance, third moment.

    ``_formula`` receives the forecast's ``(mu, var, gamma)`` and the raw
    moments ``m[k] = E (Y - mu)^k`` of the outcome, ``k = 1..4``.
    """

    positive_variance: ClassVar[bool] = False

    def _formula(self, mu, var, gamma, m):
        raise NotImplementedError

    def _params(self, P):
        mom = P.moments()
        if self.positive_variance and mom.variance <= 0:
            raise DegenerateForecast(f"{self.name} needs a forecast with positive variance")
        return mom.mean, mom.variance, mom.third_central

    def score(self, P, y):
        return float(self.score_many(P, np.array([y]))[0])

    def score_many(self, P, ys):
        mu, var, gamma = self._params(P)
        z = np.asarray(ys, dtype=float) - mu
        return self._formula(mu, var, gamma, {1: z, 2: z * z, 3: z**3, 4: z**4})

    def expected(self, P, Q):
        mu, var, gamma = self._params(P)
        m = {k: Q.moment_about(mu, k) for k in (1, 2, 3, 4)}
        return float(self._formula(mu, var, gamma, m))


@_register
@dataclass(frozen=True)
class TrialScore(_MomentRule):
    """``(var - (y - mu)^2)^2``."""

    name: ClassVar[str] = "trial_score"
    positive_variance: ClassVar[bool] = True

    def _formula(self, mu, var, gamma, m):
        return var * var - 2.0 * var * m[2] + m[4]


@_register
@dataclass(frozen=True)
class SpreadError(_MomentRule):
    """``(var - (y - mu)^2 + (y - mu) gamma / var)^2``."""

    name: ClassVar[str] = "spread_error"
    proper: ClassVar[bool] = True
    positive_variance: ClassVar[bool] = True

    def _formula(self, mu, var, gamma, m):
        b = gamma / var
        return (var * var + m[4] + b * b * m[2] - 2.0 * var * m[2]
                + 2.0 * var * b * m[1] - 2.0 * b * m[3])


@_register
@dataclass(frozen=True)
class Pmcc(_MomentRule):
    """Predictive model choice criterion ``(y - mu)^2 + var``."""

    name: ClassVar[str] = "pmcc"

    def _formula(self, mu, var, gamma, m):
        return m[2] + var


@_register
@dataclass(frozen=True)
class SquaredError(_MomentRule):
    name: ClassVar[str] = "squared_error"
    proper: ClassVar[bool] = True

    def _formula(self, mu, var, gamma, m):
        return m[2]


@_register
@dataclass(frozen=True)
class NormalizedSquaredError(_MomentRule):
    """``(y - mu)^2 / var``."""

    name: ClassVar[str] = "normalized_squared_error"
    positive_variance: ClassVar[bool] = True

    def _formula(self, mu, var, gamma, m):
        return m[2] / var


# ---------------------------------------------------------------------------
# density-based rules
# ---------------------------------------------------------------------------


def _density(P: Distribution, rule: str):
    if not P.has_density:
        raise IncompatibleRule(f"{rule} needs a forecast with a Lebesgue density")
    return P.pdf


@_register
@dataclass(frozen=True)
class LinearScore(ScoringRule):
    """``-p(y)``."""

    name: ClassVar[str] = "linear_score"

    def score(self, P, y):
        return -float(_density(P, self.name)(y))

    def score_many(self, P, ys):
        return -np.asarray(_density(P, self.name)(np.asarray(ys, dtype=float)))

    def expected(self, P, Q):
        p = _density(P, self.name)
        return float(Q.expect(lambda y: -p(y), points=P.landmarks()))

    def expected_against_shifts(self, P, noise, ys):
        ys = np.asarray(ys, dtype=float)
        p = _density(P, self.name)
        q = _density(noise, "convolution noise")
        nlo, nhi = noise.support()
        lo, hi = ys.min() + nlo, ys.max() + nhi

        def integrand(x):
            return -p(x)[None, :] * q(x[None, :] - ys[:, None])

        pts = P.landmarks()
        if ys.size <= 32:
            pts = np.concatenate((pts, (ys[:, None] + noise.landmarks()[None, :]).ravel()))
        return np.atleast_1d(integrate(integrand, lo, hi, points=pts))


@_register
@dataclass(frozen=True)
class ProbabilityScore(ScoringRule):
    """``-int_{y-c}^{y+c} p(x) dx``."""

    c: float = 1.0
    name: ClassVar[str] = "probability_score"

    def __post_init__(self):
        if not (self.c > 0 and math.isfinite(self.c)):
            raise IncompatibleRule(f"probability score needs c > 0, got {self.c}")

    def score(self, P, y):
        return float(self.score_many(P, np.array([y]))[0])

    def score_many(self, P, ys):
        _density(P, self.name)
        ys = np.asarray(ys, dtype=float)
        return -(np.asarray(P.cdf(ys + self.c)) - np.asarray(P.cdf(ys - self.c)))

    def expected(self, P, Q):
        pts = np.concatenate((P.landmarks() - self.c, P.landmarks() + self.c))
        return float(Q.expect(lambda y: self.score_many(P, y), points=pts))

    def to_literal(self):
        return {"rule": self.name, "c": self.c}

    @classmethod
    def from_fields(cls, obj):
        _expect_fields(obj, {"c"})
        return cls(_number(obj, "c"))


# ---------------------------------------------------------------------------
# observation noise
# ---------------------------------------------------------------------------

_Y_BLOCK = 64


@_register
@dataclass(frozen=True)
class NoisyCrps(ScoringRule):
    """``int (P(x) - Phi(x - y))^2 dx`` for an observation-error law ``Phi``."""

    noise: Distribution
    name: ClassVar[str] = "noisy_crps"

    def __post_init__(self):
        if self.noise.moments().variance <= 0:
            raise IncompatibleRule("noisy CRPS needs a non-degenerate noise distribution")

    def score(self, P, y):
        return float(self.score_many(P, np.array([y]))[0])

    def score_many(self, P, ys):
        ys = np.asarray(ys, dtype=float)
        flat = ys.ravel()
        out = np.empty(flat.size)
        if self.noise.has_density:
            for start in range(0, flat.size, _Y_BLOCK):
                block = flat[start : start + _Y_BLOCK]
                out[start : start + block.size] = self._block(P, block)
        else:
            for i, y in enumerate(flat):
                out[i] = self._block(P, np.array([y]))[0]
        return out.reshape(ys.shape)

    def _block(self, P, ys):
        plo, phi = P.support(1e-15)
        nlo, nhi = self.noise.support(1e-15)
        lo, hi = min(plo, ys.min() + nlo), max(phi, ys.max() + nhi)
        noise = self.noise

        def integrand(x):
            F = np.clip(P.cdf(x), 0.0, 1.0)[None, :]
            G = np.clip(noise.cdf(x[None, :] - ys[:, None]), 0.0, 1.0)
            return (F - G) ** 2

        pts = np.concatenate((P.landmarks(), P.atoms()[0]))
        if ys.size <= 32:
            pts = np.concatenate((pts, (ys[:, None] + noise.landmarks()[None, :]).ravel()))
        return np.atleast_1d(integrate(integrand, lo, hi, points=pts))

    def expected(self, P, Q):
        # Fubini: E_Q (P(x) - Phi(x - Y))^2 expands around the law of Y + noise
        return crps(P, convolve(Q, self.noise)) - float(crps_phi_phi(self.noise))

    def to_literal(self):
        return {"rule": self.name, "noise": self.noise.to_literal()}

    @classmethod
    def from_fields(cls, obj):
        _expect_fields(obj, {"noise"})
        return cls(distribution_from_literal(obj["noise"]))


@_register
@dataclass(frozen=True)
class ConvolutionScore(ScoringRule):
    """``int phi(x - y) S(P, x) dx``: the base score averaged over shifted noise."""

    base: ScoringRule
    noise: Distribution
    name: ClassVar[str] = "convolution_score"

    def __post_init__(self):
        if not self.noise.has_density:
            raise IncompatibleRule("convolution scores need a noise distribution with a density")

    def score(self, P, y):
        return self.base.expected(P, self.noise.shift(y))

    def score_many(self, P, ys):
        ys = np.asarray(ys, dtype=float)
        flat = ys.ravel()
        vectorized = getattr(self.base, "expected_against_shifts", None)
        if vectorized is None:
            return super().score_many(P, ys)
        out = np.empty(flat.size)
        for start in range(0, flat.size, _Y_BLOCK):
            block = flat[start : start + _Y_BLOCK]
            out[start : start + block.size] = vectorized(P, self.noise, block)
        return out.reshape(ys.shape)

    def to_literal(self):
        return {"rule": self.name, "base": self.base.to_literal(), "noise": self.noise.to_literal()}

    @classmethod
    def from_fields(cls, obj):
        _expect_fields(obj, {"base", "noise"})
        return cls(rule_from_literal(obj["base"]), distribution_from_literal(obj["noise"]))


# ---------------------------------------------------------------------------
# public functions
# ---------------------------------------------------------------------------


def _wrap(rule: ScoringRule, value: float) -> Score:
    return Score(value, rule.infinite_reason if math.isinf(value) else None)


def score(rule: ScoringRule, P: Distribution, y: float) -> Score:
    """Pointwise score ``S(P, y)``."""
    y = float(y)
    if not math.isfinite(y):
        raise IncompatibleRule("outcomes must be finite")
    try:
        return _wrap(rule, rule.score(P, y))
    except NoDensity as exc:
        raise IncompatibleRule(str(exc)) from exc


def expected_score(rule: ScoringRule, P: Distribution, Q: Distribution) -> Score:
    """Expected score ``S(P, Q) = E_Q S(P, Y)``."""
    try:
        return _wrap(rule, rule.expected(P, Q))
    except NoDensity as exc:
        raise IncompatibleRule(str(exc)) from exc


def rule_from_literal(obj) -> ScoringRule:
    """Parse ``{"rule": "crps_alpha", "alpha": 1.0}`` or a bare parameterless name."""
    if isinstance(obj, str):
        obj = {"rule": obj}
    if not isinstance(obj, dict):
        raise IncompatibleRule(f"rule literal must be an object or a name, got {obj!r}")
    cls = RULES.get(obj.get("rule"))
    if cls is None:
        raise IncompatibleRule(f"unknown rule {obj.get('rule')!r}; known: {sorted(RULES)}")
    return cls.from_fields(obj)


__all__ = [
    "RULES", "Score", "ScoringRule", "Mpr", "MaeBinary", "ZeroOne", "Brier", "LogScore",
    "CrpsAlpha", "Weighted", "IndicatorAbove", "IndicatorInterval", "TrialScore", "SpreadError",
    "Pmcc", "SquaredError", "NormalizedSquaredError", "LinearScore", "ProbabilityScore",
    "NoisyCrps", "ConvolutionScore", "score", "expected_score", "crps", "crps_phi_phi",
    "binary_probability", "rule_from_literal", "weight_from_literal",
]
