"""Bayes acts and properized scores.

:func:`bayes_act` dispatches to closed forms where they are known and
returns either an :class:`Act` or a :class:`NoBayesAct` carrying a descent
certificate.  :func:`finite_bayes_act` and :func:`parametric_bayes_act` are
brute-force searches used as independent oracles for the closed forms.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import ClassVar, Union

import numpy as np

from . import scores as sc
from .descent import DescentDemo, check_symmetric_unimodal, mass_shift_sequence
from .distributions import (
    Bernoulli,
    Categorical,
    Dirac,
    Distribution,
    Gaussian,
    OddsPowerTransform,
    Truncated,
    convolve,
    odds_power,
)
from .errors import (
    BudgetExceeded,
    DegenerateForecast,
    IncompatibleRule,
    InvalidShape,
    NoBayesActError,
    ProperizationError,
)
from .families import FamilyDescriptor

CERTIFICATE_LENGTH = 8
CLOSED_FORM_TOL = 1e-8


class DomainWarning(UserWarning):
    """The forecast family lies outside the domain where a result is known to hold."""


@dataclass(frozen=True)
class DescentCertificate:
    """Forecasts with strictly decreasing expected scores under the belief."""

    forecasts: tuple
    scores: tuple
    direction: str

    def __post_init__(self):
        s = np.asarray(self.scores, dtype=float)
        if len(self.forecasts) != s.size or s.size < 2:
            raise ValueError("a certificate needs at least two scored forecasts")
        if not np.all(np.diff(s) < 0):
            raise ValueError("certificate scores must be strictly decreasing")

    def to_json(self) -> dict:
        return {
            "direction": self.direction,
            "forecasts": [f.to_literal() for f in self.forecasts],
            "scores": list(self.scores),
        }


@dataclass(frozen=True)
class Act:
    act: Distribution
    unique: bool
    ties: np.ndarray | None = field(default=None, compare=False)
    note: str = ""

    exists: ClassVar[bool] = True

    def to_json(self) -> dict:
        out = {"status": "act", "act": self.act.to_literal(), "unique": self.unique}
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class NoBayesAct:
    reason: str
    certificate: DescentCertificate

    exists: ClassVar[bool] = False

    def to_json(self) -> dict:
        return {"status": "no_bayes_act", "reason": self.reason,
                "certificate": self.certificate.to_json()}


BayesActResult = Union[Act, NoBayesAct]


@dataclass(frozen=True)
class SimplexSearchConfig:
    grid: tuple = (0.0, 1.0)
    resolution: float = 0.01
    max_iters: int = 200_000
    tolerance: float = 1e-9

    def __post_init__(self):
        if not 0 < self.resolution <= 1:
            raise ValueError("resolution must lie in (0, 1]")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def _binary_mode(P: Distribution) -> Act:
    p = sc.binary_probability(P)
    return Act(Bernoulli(1.0 if p >= 0.5 else 0.0), unique=p != 0.5)


def _trial_act(P: Distribution) -> Act:
    m = P.moments()
    if m.variance <= 0:
        raise DegenerateForecast("trial score needs a belief with positive variance")
    mu, v, g = m.mean, m.variance, m.third_central
    mean = mu + g / (2.0 * v)
    var = v * (1.0 + g * g / (4.0 * v**3))
    return Act(Gaussian(mean, var), unique=False, note="only mean and variance are pinned")


def _crps_alpha_act(alpha: float, P: Distribution, family: FamilyDescriptor | None) -> Act:
    if alpha > 2 and (family is None or family.tag not in ("Pc", "bernoulli", "grid")):
        warnings.warn(f"alpha={alpha:g} > 2: propriety of the properized rule is only known "
                      "for compactly supported forecasts", DomainWarning, stacklevel=3)
    if alpha == 2:
        return Act(P, unique=True)
    if alpha > 1:
        if P.ac_mass == 0:
            pts, masses = P.atoms()
            cum = np.cumsum(masses)
            cum[-1] = 1.0
            jumps = np.diff(np.concatenate(([0.0], odds_power(cum, alpha))))
            keep = jumps > 0
            return Act(Categorical(pts[keep], jumps[keep] / jumps[keep].sum()), unique=True)
        return Act(OddsPowerTransform(P, alpha), unique=True)
    med = P.median()
    lo, hi = P.support(1e-9)
    probe = med + 1e-7 * max(hi - lo, 1.0)
    flat = float(P.cdf(probe)) - 0.5 <= 1e-14
    return Act(Dirac(med), unique=not flat and alpha < 1,
               note="lowest median" if flat else "")


def _nse_act(P: Distribution, family: FamilyDescriptor | None) -> BayesActResult:
    m = P.moments()
    if family is not None and family.tag == "P2m":
        return Act(Gaussian(m.mean, family.param), unique=False,
                   note="only mean and variance are pinned")
    start = max(m.variance, 1.0) if m.variance == 0 else m.variance
    forecasts = tuple(Gaussian(m.mean, start * 2.0**k) for k in range(CERTIFICATE_LENGTH))
    rule = sc.NormalizedSquaredError()
    scores = tuple(float(sc.expected_score(rule, f, P)) for f in forecasts)
    if not np.all(np.diff(scores) < 0):
        # belief is a point mass: every Gaussian centred on it scores zero
        return Act(forecasts[0], unique=False, note="belief is degenerate")
    return NoBayesAct(
        "expected score decreases without bound as the forecast variance grows",
        DescentCertificate(forecasts, scores, "variance doubling"),
    )


def _mass_shift(rule: sc.ScoringRule, P: Distribution, what: str) -> NoBayesAct:
    try:
        center = check_symmetric_unimodal(P)
    except InvalidShape:
        center = P.median()
    m = P.moments()
    eps = 0.25 * math.sqrt(m.variance) if m.variance > 0 else 0.25
    demo = mass_shift_sequence(rule, P, P, center, eps, CERTIFICATE_LENGTH - 1)
    if not demo.strictly_decreasing:
        raise InvalidShape(f"could not build a descent certificate for {what} under this belief")
    return NoBayesAct(
        f"{what}: moving forecast mass onto the modal interval always lowers the expected score",
        DescentCertificate(demo.forecasts, demo.scores, f"mass shift towards {center:g}"),
    )


def bayes_act(rule: sc.ScoringRule, P: Distribution,
              family: FamilyDescriptor | None = None) -> BayesActResult:
    """Minimizer of ``Q -> S(Q, P)`` over the family, or a certificate of non-existence."""
    if isinstance(rule, (sc.Mpr, sc.MaeBinary)):
        return _binary_mode(P)
    if isinstance(rule, sc._BinaryRule):
        sc.binary_probability(P)
        return Act(P, unique=rule.strictly_proper)
    if isinstance(rule, sc.Weighted):
        lo, hi = rule.weight.region
        return bayes_act(rule.base, Truncated(P, lo, hi), family)
    if isinstance(rule, sc.TrialScore):
        return _trial_act(P)
    if isinstance(rule, sc.Pmcc):
        return Act(Dirac(P.moments().mean), unique=True)
    if isinstance(rule, sc.NormalizedSquaredError):
        return _nse_act(P, family)
    if isinstance(rule, sc.CrpsAlpha):
        return _crps_alpha_act(rule.alpha, P, family)
    if isinstance(rule, sc.NoisyCrps):
        return Act(convolve(P, rule.noise), unique=True)
    if isinstance(rule, sc.ConvolutionScore):
        return bayes_act(rule.base, convolve(P, rule.noise), family)
    if isinstance(rule, sc.LinearScore):
        return _mass_shift(rule, P, "linear score")
    if isinstance(rule, sc.ProbabilityScore):
        return _mass_shift(rule, P, "probability score")
    if isinstance(rule, Properized) or rule.proper:
        if isinstance(rule, sc._MomentRule) and rule.positive_variance and P.moments().variance <= 0:
            raise DegenerateForecast(f"{rule.name} needs a belief with positive variance")
        return Act(P, unique=rule.strictly_proper)
    raise IncompatibleRule(f"no Bayes act construction for rule {rule.name!r}")


# ---------------------------------------------------------------------------
# properized scores
# ---------------------------------------------------------------------------


def _closed_form(rule: sc.ScoringRule) -> sc.ScoringRule | None:
    if isinstance(rule, sc.TrialScore):
        return sc.SpreadError()
    if isinstance(rule, sc.Pmcc):
        return sc.SquaredError()
    if isinstance(rule, (sc.Mpr, sc.MaeBinary)):
        return sc.ZeroOne()
    return None


def properized_score(rule: sc.ScoringRule, P: Distribution, y: float,
                     family: FamilyDescriptor | None = None) -> sc.Score:
    """``S(P*, y)`` where ``P*`` is the Bayes act of ``P``."""
    result = bayes_act(rule, P, family)
    if not result.exists:
        raise NoBayesActError(result)
    value = sc.score(rule, result.act, y)
    closed = _closed_form(rule)
    if closed is not None:
        direct = sc.score(closed, P, y)
        if abs(float(direct) - float(value)) > CLOSED_FORM_TOL * max(1.0, abs(float(direct))):
            raise ProperizationError(
                f"closed-form {closed.name} score {float(direct)!r} disagrees with S(P*, y) = {float(value)!r}"
            )
        return direct
    return value


@sc._register
@dataclass(frozen=True)
class Properized(sc.ScoringRule):
    """``S*(P, y) = S(P*, y)``."""

    base: sc.ScoringRule
    family: FamilyDescriptor | None = None
    name: ClassVar[str] = "properized"
    proper: ClassVar[bool] = True

    def act(self, P: Distribution) -> Distribution:
        result = bayes_act(self.base, P, self.family)
        if not result.exists:
            raise NoBayesActError(result)
        return result.act

    def score(self, P, y):
        return float(properized_score(self.base, P, y, self.family))

    def score_many(self, P, ys):
        return self.base.score_many(self.act(P), ys)

    def expected(self, P, Q):
        return self.base.expected(self.act(P), Q)

    def to_literal(self):
        out = {"rule": self.name, "base": self.base.to_literal()}
        if self.family is not None:
            out["family"] = str(self.family)
        return out

    @classmethod
    def from_fields(cls, obj):
        sc._expect_fields(obj, {"base", "family"} if "family" in obj else {"base"})
        family = obj.get("family")
        return cls(sc.rule_from_literal(obj["base"]),
                   FamilyDescriptor.parse(family) if family is not None else None)


# ---------------------------------------------------------------------------
# search oracles
# ---------------------------------------------------------------------------


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def finite_bayes_act(rule: sc.ScoringRule, P: Distribution,
                     cfg: SimplexSearchConfig = SimplexSearchConfig()) -> Act:
    """Enumerate the simplex over ``cfg.grid`` at step ``cfg.resolution``.

    Every candidate within ``cfg.tolerance`` of the minimum lands in the tie
    set (``ties``, one probability vector per row).
    """
    grid = np.asarray(cfg.grid, dtype=float)
    n_steps = int(round(1.0 / cfg.resolution))
    if abs(n_steps * cfg.resolution - 1.0) > 1e-9:
        raise ValueError("resolution must divide 1")
    count = math.comb(n_steps + grid.size - 1, grid.size - 1)
    if count > cfg.max_iters:
        raise BudgetExceeded(f"{count} simplex points exceed max_iters={cfg.max_iters}")
    binary = grid.size == 2 and grid[0] == 0.0 and grid[1] == 1.0
    probs = np.array(list(_compositions(n_steps, grid.size)), dtype=float) / n_steps

    def candidate(row):
        if binary:
            return Bernoulli(float(row[1]))
        return Categorical(grid, row)

    values = np.array([float(sc.expected_score(rule, candidate(row), P)) for row in probs])
    best = float(values.min())
    tie = values <= best + cfg.tolerance
    first = int(np.argmax(tie))
    return Act(candidate(probs[first]), unique=int(tie.sum()) == 1, ties=probs[tie])


def _moments_about(P: Distribution):
    """Return ``m(c, k) = E (Y - c)^k`` built from the central moments of ``P``."""
    mu = P.moments().mean
    central = [1.0] + [P.moment_about(mu, k) for k in (1, 2, 3, 4)]

    def m(c: float, k: int) -> float:
        d = mu - c
        return sum(math.comb(k, j) * central[j] * d ** (k - j) for j in range(k + 1))

    return m


def _gaussian_scorer(rule: sc.ScoringRule, P: Distribution):
    if isinstance(rule, sc._MomentRule):
        m = _moments_about(P)

        def value(mu, v):
            if v <= 0 and rule.positive_variance:
                return math.inf
            return float(rule._formula(mu, v, 0.0, {k: m(mu, k) for k in (1, 2, 3, 4)}))

        return value
    return lambda mu, v: float(sc.expected_score(rule, Gaussian(mu, v) if v > 0 else Dirac(mu), P))


def parametric_bayes_act(rule: sc.ScoringRule, P: Distribution, family: FamilyDescriptor,
                         cfg: SimplexSearchConfig = SimplexSearchConfig(tolerance=1e-6)) -> BayesActResult:
    """Zooming grid search over Gaussian forecasts ``(mu, variance)``.

    The variance is searched on a log scale; for ``P2m:m`` it is capped at
    ``m`` (a closed boundary).  An optimum on the open upper edge triggers a
    coercivity probe; one on the lower edge is reported as its point-mass
    limit.
    """
    value = _gaussian_scorer(rule, P)
    mom = P.moments()
    sd = math.sqrt(mom.variance) if mom.variance > 0 else 1.0
    cap = family.param if family.tag == "P2m" else None
    t_hi = math.log(cap) if cap is not None else math.log(sd * sd) + 6.0
    t_lo = min(math.log(sd * sd), t_hi) - 14.0
    mu_lo, mu_hi = mom.mean - 5.0 * sd, mom.mean + 5.0 * sd
    box_t = (t_lo, t_hi)
    n = 21
    best = (math.inf, mom.mean, t_hi)
    iters = 0
    while True:
        iters += 1
        if iters > cfg.max_iters:
            raise BudgetExceeded("parametric search did not converge")
        mus = np.linspace(mu_lo, mu_hi, n)
        ts = np.linspace(t_lo, t_hi, n)
        for mu, t in itertools.product(mus, ts):
            v = value(float(mu), math.exp(t))
            if v < best[0]:
                best = (v, float(mu), float(t))
        _, mu_b, t_b = best
        dmu = (mu_hi - mu_lo) / (n - 1)
        dt = (t_hi - t_lo) / (n - 1)
        if dmu < cfg.tolerance and dt * math.exp(t_b) < cfg.tolerance:
            break
        mu_lo, mu_hi = mu_b - 2 * dmu, mu_b + 2 * dmu
        t_lo, t_hi = max(box_t[0], t_b - 2 * dt), min(box_t[1], t_b + 2 * dt)
    score_b, mu_b, t_b = best
    at_top = t_b >= box_t[1] - 1e-12
    at_bottom = t_b <= box_t[0] + 1e-12
    if at_top and cap is None:
        forecasts = tuple(Gaussian(mu_b, math.exp(t_b) * 2.0**k) for k in range(CERTIFICATE_LENGTH))
        scores = tuple(value(f.mu, f.sigma2) for f in forecasts)
        if np.all(np.diff(scores) < 0):
            return NoBayesAct("expected score keeps decreasing as the variance grows",
                              DescentCertificate(forecasts, scores, "variance doubling"))
    if at_bottom and value(mu_b, 0.0) <= score_b + cfg.tolerance:
        return Act(Dirac(mu_b), unique=False, note="variance driven to zero")
    return Act(Gaussian(mu_b, math.exp(t_b)), unique=False, note="grid search")


__all__ = [
    "Act", "NoBayesAct", "BayesActResult", "DescentCertificate", "SimplexSearchConfig",
    "DomainWarning", "Properized", "bayes_act", "properized_score", "finite_bayes_act",
    "parametric_bayes_act", "DescentDemo",
]
