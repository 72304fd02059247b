"""Mass-shifting descent sequences for the linear score.

With a truth density ``q`` symmetric about ``c`` and strictly increasing to
the left of ``c``, moving all forecast mass from the interval
``I_k = (c + (2k - 1) eps, c + (2k + 1) eps]`` onto the modal interval
``I_0`` by the translation ``x -> x - 2 k eps`` strictly lowers the expected
linear score.  Repeating the move for ``k = 1, -1, 2, -2, ...`` yields a
sequence of forecasts whose expected scores strictly decrease, which is how
non-existence of a minimizer is evidenced numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import Distribution, Gaussian, Mixture, Truncated
from .errors import InvalidShape
from .scores import LinearScore, ScoringRule, expected_score


@dataclass(frozen=True)
class DescentDemo:
    forecasts: tuple
    scores: tuple
    epsilon: float
    center: float

    def __post_init__(self):
        if len(self.forecasts) != len(self.scores):
            raise ValueError("one score per forecast")

    @property
    def strictly_decreasing(self) -> bool:
        s = np.asarray(self.scores, dtype=float)
        return bool(np.all(np.diff(s) < 0))


def shift_order(steps: int) -> list[int]:
    """``1, -1, 2, -2, ...`` truncated to ``steps`` entries."""
    out = []
    k = 1
    while len(out) < steps:
        out.extend((k, -k))
        k += 1
    return out[:steps]


def _edge(center: float, eps: float, j: float) -> float:
    return center + j * eps


def shifted_forecast(start: Distribution, center: float, eps: float, moved: list[int]) -> Distribution:
    """``start`` after the mass on every ``I_k`` with ``k`` in ``moved`` was moved onto ``I_0``."""
    ks = sorted(set(moved) | {0})
    pieces = []  # (mass, distribution)

    def add(lo, hi, offset=0.0):
        mass = start.interval_mass(lo, hi)
        if mass > 0:
            piece = Truncated(start, lo, hi)
            pieces.append((mass, piece.shift(offset) if offset else piece))

    for k in ks:
        add(_edge(center, eps, 2 * k - 1), _edge(center, eps, 2 * k + 1), -2.0 * k * eps)
    add(-math.inf, _edge(center, eps, 2 * ks[0] - 1))
    for a, b in zip(ks[:-1], ks[1:]):
        if b > a + 1:
            add(_edge(center, eps, 2 * a + 1), _edge(center, eps, 2 * b - 1))
    add(_edge(center, eps, 2 * ks[-1] + 1), math.inf)
    masses = np.array([m for m, _ in pieces])
    return Mixture([d for _, d in pieces], masses / masses.sum())


def mass_shift_sequence(rule: ScoringRule, truth: Distribution, start: Distribution,
                        center: float, epsilon: float, steps: int) -> DescentDemo:
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    forecasts = [start]
    moved: list[int] = []
    for k in shift_order(steps):
        moved.append(k)
        forecasts.append(shifted_forecast(start, center, epsilon, moved))
    scores = tuple(float(expected_score(rule, f, truth)) for f in forecasts)
    return DescentDemo(tuple(forecasts), scores, float(epsilon), float(center))


def check_symmetric_unimodal(q: Distribution, n: int = 201) -> float:
    """Return the symmetry centre of ``q`` or raise :class:`InvalidShape`."""
    if not q.has_density:
        raise InvalidShape("the truth must have a density")
    if isinstance(q, Gaussian):
        return q.mu
    c = q.median()
    lo, hi = q.support(1e-9)
    half = min(c - lo, hi - c)
    if not half > 0:
        raise InvalidShape("density has no spread around its median")
    t = np.linspace(0.0, half, n)[1:]
    left = np.asarray(q.pdf(c - t))
    right = np.asarray(q.pdf(c + t))
    scale = float(np.max(left)) or 1.0
    if np.max(np.abs(left - right)) > 1e-9 * scale:
        raise InvalidShape("density is not symmetric about its median")
    if np.any(np.diff(left) >= 0):
        raise InvalidShape("density is not strictly increasing towards its centre")
    return c


def linear_score_descent(Q: Distribution, epsilon: float, steps: int) -> DescentDemo:
    """Mass-shifting sequence started at ``Q`` itself, scored by the linear score under ``Q``."""
    center = check_symmetric_unimodal(Q)
    return mass_shift_sequence(LinearScore(), Q, Q, center, epsilon, steps)
