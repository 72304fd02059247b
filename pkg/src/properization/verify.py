"""Empirical verification: propriety searches, fixed points and identities.

A propriety search samples a truth ``Q`` and a challenger ``P`` from a
family and flags ``S(Q, Q) > S(P, Q) + tol``.  A passing search only means
that no counterexample was found.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import scores as sc
from .descent import DescentDemo, linear_score_descent
from .distributions import Distribution, Gaussian, UniformInterval, convolve, sup_cdf_distance
from .errors import NoBayesActError, ProperizationError
from .families import FamilyDescriptor
from .properize import Properized, bayes_act
from .quadrature import tolerance

PASS = "pass"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"
MAX_FAILURE_RATE = 0.10


@dataclass(frozen=True)
class ProprietyVerdict:
    rule: sc.ScoringRule
    family: FamilyDescriptor
    status: str
    pairs_tested: int
    tolerance: float
    seed: int
    kind: str = "propriety"
    P: Distribution | None = None
    Q: Distribution | None = None
    gap: float | None = None
    reason: str = ""
    failures: int = 0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def label(self) -> str:
        return {PASS: "no counterexample found", VIOLATED: "violated",
                INCONCLUSIVE: "inconclusive"}[self.status]

    def to_json(self) -> dict:
        out = {
            "rule": self.rule.to_literal(),
            "family": str(self.family),
            "kind": self.kind,
            "status": self.status,
            "label": self.label,
            "pairs_tested": self.pairs_tested,
            "tolerance": self.tolerance,
            "seed": self.seed,
        }
        if self.status == VIOLATED:
            out.update(P=self.P.to_literal(), Q=self.Q.to_literal(), gap=self.gap)
        if self.reason:
            out["reason"] = self.reason
        if self.failures:
            out["failures"] = self.failures
        return out


def propriety_gap(rule: sc.ScoringRule, P: Distribution, Q: Distribution) -> float:
    """``S(Q, Q) - S(P, Q)``; positive values mean ``P`` beats the truth."""
    return float(sc.expected_score(rule, Q, Q)) - float(sc.expected_score(rule, P, Q))


def _run(rule, family, n, tol, seed, kind, check: Callable) -> ProprietyVerdict:
    if n < 1:
        raise ValueError("need at least one case")
    rng = np.random.default_rng(seed)
    failures = 0
    last_error = ""
    for i in range(n):
        try:
            hit = check(rng)
        except (ProperizationError, ValueError) as exc:
            failures += 1
            last_error = f"{type(exc).__name__}: {exc}"
            if failures > MAX_FAILURE_RATE * n:
                return ProprietyVerdict(rule, family, INCONCLUSIVE, i + 1, tol, seed, kind,
                                        reason=f"{failures} cases failed; last: {last_error}",
                                        failures=failures)
            continue
        if hit is not None:
            P, Q, gap = hit
            return ProprietyVerdict(rule, family, VIOLATED, i + 1, tol, seed, kind, P, Q, gap,
                                    failures=failures)
    return ProprietyVerdict(rule, family, PASS, n, tol, seed, kind, failures=failures,
                            reason=last_error if failures else "")


def propriety_test(rule: sc.ScoringRule, family: FamilyDescriptor, n_pairs: int = 1000,
                   tol: float = 1e-6, seed: int = 0) -> ProprietyVerdict:
    def check(rng):
        Q = family.sample(rng)
        P = family.challenger(Q, rng)
        gap = propriety_gap(rule, P, Q)
        return (P, Q, gap) if gap > tol else None

    return _run(rule, family, n_pairs, tol, seed, "propriety", check)


def fixed_point_test(rule: sc.ScoringRule, family: FamilyDescriptor, n: int = 100,
                     tol: float = 1e-6, seed: int = 0) -> ProprietyVerdict:
    """Check that the Bayes act of each sampled ``P`` is ``P`` (sup CDF distance)."""
    def check(rng):
        P = family.sample(rng)
        result = bayes_act(rule, P, family)
        if not result.exists:
            raise NoBayesActError(result)
        gap = sup_cdf_distance(result.act, P)
        return (result.act, P, gap) if gap > tol else None

    return _run(rule, family, n, tol, seed, "fixed_point", check)


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def check_noisy_crps_identity(P: Distribution, Q: Distribution, noise: Distribution,
                              tol: float = 1e-6) -> IdentityCheck:
    """``S_noise(P, Q) = CRPS(P, Q * noise) - CRPS(noise, noise)``.

    The left side integrates the pointwise noisy score against ``Q`` (nested
    quadrature); the right side goes through the convolved distribution.
    """
    rule = sc.NoisyCrps(noise)
    lhs = float(Q.expect(lambda y: rule.score_many(P, y), points=P.landmarks()))
    rhs = sc.crps(P, convolve(Q, noise)) - float(sc.crps_phi_phi(noise))
    return IdentityCheck("noisy_crps", abs(lhs - rhs), tol)


def check_smoothed_crps_identity(P: Distribution, Q: Distribution, noise: Distribution,
                                 tol: float = 1e-6, ys=None) -> IdentityCheck:
    """``CRPS^phi(P, y) = S_noise(P, y) + CRPS(noise, noise)`` pointwise and in expectation."""
    smoothed = sc.ConvolutionScore(sc.CrpsAlpha(2.0), noise)
    noisy = sc.NoisyCrps(noise)
    const = float(sc.crps_phi_phi(noise))
    if ys is None:
        ys = Q.quantile(np.array([0.05, 0.25, 0.5, 0.75, 0.95]))
    ys = np.asarray(ys, dtype=float)
    pointwise = np.abs(smoothed.score_many(P, ys) - noisy.score_many(P, ys) - const)
    nested = float(Q.expect(lambda y: noisy.score_many(P, y), points=P.landmarks()))
    in_mean = abs(float(sc.expected_score(smoothed, P, Q)) - nested - const)
    return IdentityCheck("smoothed_crps", float(max(pointwise.max(), in_mean)), tol)


def check_probability_score_identity(P: Distribution, Q: Distribution, c: float,
                                     tol: float = 1e-8) -> IdentityCheck:
    """``PS_c(P, Q) = 2c LinS^{phi_c}(P, Q)`` with ``phi_c`` uniform on ``[-c, c]``."""
    with tolerance(min(1e-11, tol / 100)):
        lhs = float(sc.expected_score(sc.ProbabilityScore(c), P, Q))
        conv = sc.ConvolutionScore(sc.LinearScore(), UniformInterval(-c, c))
        rhs = 2.0 * c * float(sc.expected_score(conv, P, Q))
    return IdentityCheck("probability_score", abs(lhs - rhs), tol)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteEntry:
    rule: sc.ScoringRule
    family: FamilyDescriptor
    expect: str  # PASS or VIOLATED
    kind: str = "propriety"


def _fam(text: str) -> FamilyDescriptor:
    return FamilyDescriptor.parse(text)


def _suites() -> dict[str, list[SuiteEntry]]:
    noise = Gaussian(0.0, 0.5)
    weighted = sc.Weighted(sc.LogScore(), sc.IndicatorAbove(0.0))
    improper = [
        (sc.Mpr(), "bernoulli"),
        (sc.MaeBinary(), "bernoulli"),
        (sc.TrialScore(), "P4Plus"),
        (sc.Pmcc(), "P2"),
        (sc.NormalizedSquaredError(), "P2"),
        (sc.LinearScore(), "P1"),
        (sc.ProbabilityScore(1.0), "P1"),
        (sc.NoisyCrps(noise), "P1"),
        (weighted, "P1"),
        (sc.CrpsAlpha(1.5), "P1"),
        (sc.CrpsAlpha(3.0), "Pc:5"),
    ]
    proper = [
        (sc.ZeroOne(), "bernoulli"),
        (sc.Brier(), "bernoulli"),
        (Properized(sc.Mpr()), "bernoulli"),
        (Properized(sc.MaeBinary()), "bernoulli"),
        (sc.SpreadError(), "P4Plus"),
        (Properized(sc.TrialScore()), "P4Plus"),
        (sc.SquaredError(), "P2"),
        (Properized(sc.Pmcc()), "P2"),
        (Properized(sc.NormalizedSquaredError(), _fam("P2m:4")), "P2m:4"),
        (Properized(sc.NoisyCrps(noise)), "P1"),
        (Properized(weighted), "P1"),
        (Properized(sc.CrpsAlpha(1.5)), "P1"),
        (Properized(sc.CrpsAlpha(3.0), _fam("Pc:5")), "Pc:5"),
        (Properized(sc.CrpsAlpha(0.5)), "P1"),
        (sc.CrpsAlpha(2.0), "P1"),
        (sc.LogScore(), "P1"),
    ]
    fixed = [
        (sc.Brier(), "bernoulli"),
        (sc.LogScore(), "P1"),
        (sc.CrpsAlpha(2.0), "P1"),
        (sc.SquaredError(), "P2"),
    ]
    return {
        "paper-improper": [SuiteEntry(r, _fam(f), VIOLATED) for r, f in improper],
        "paper-proper": [SuiteEntry(r, _fam(f), PASS) for r, f in proper],
        "fixed-points": [SuiteEntry(r, _fam(f), PASS, "fixed_point") for r, f in fixed],
    }


SUITES = _suites()


@dataclass(frozen=True)
class SuiteResult:
    entry: SuiteEntry
    verdict: ProprietyVerdict

    @property
    def as_expected(self) -> bool:
        return self.verdict.status == self.entry.expect

    def to_json(self) -> dict:
        return {**self.verdict.to_json(), "expected": self.entry.expect,
                "as_expected": self.as_expected}


def run_entry(entry: SuiteEntry, n: int, tol: float, seed: int) -> SuiteResult:
    if entry.kind == "fixed_point":
        verdict = fixed_point_test(entry.rule, entry.family, n, tol, seed)
    else:
        verdict = propriety_test(entry.rule, entry.family, n, tol, seed)
    return SuiteResult(entry, verdict)


def run_suite(name: str, n: int = 200, tol: float = 1e-6, seed: int = 0,
              jobs: int = 1) -> list[SuiteResult]:
    """Run every entry of a suite; results keep the suite order."""
    entries = SUITES[name]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_entry, e, n, tol, seed) for e in entries]
            return [f.result() for f in futures]
    return [run_entry(e, n, tol, seed) for e in entries]


__all__ = [
    "ProprietyVerdict", "IdentityCheck", "DescentDemo", "SuiteEntry", "SuiteResult", "SUITES",
    "PASS", "VIOLATED", "INCONCLUSIVE", "propriety_test", "propriety_gap", "fixed_point_test",
    "check_noisy_crps_identity", "check_smoothed_crps_identity",
    "check_probability_score_identity", "linear_score_descent", "run_suite", "run_entry",
]
