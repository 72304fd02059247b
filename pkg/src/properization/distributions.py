"""Probability distributions on the real line.

Every distribution is decomposed into a finite set of atoms plus an
absolutely continuous part.  That split is enough to take expectations
(finite sums plus adaptive quadrature), and it is how the scoring rules
decide whether a forecast has a density.

All variants are frozen; array-valued fields are stored read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, ClassVar, Iterable, Sequence

import numpy as np
from scipy.special import logsumexp, ndtr, ndtri

from .errors import InvalidDistribution, NoDensity, UnboundedSupport, WeightMassZero
from .quadrature import integrate

# atoms lighter than this are treated as numerical noise by `pdf`
NEGLIGIBLE_MASS = 1e-10
COVERAGE = 1e-10
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class Moments:
    mean: float
    variance: float
    third_central: float

    def __post_init__(self):
        if self.variance < 0:
            raise InvalidDistribution(f"variance must be nonnegative, got {self.variance}")


def _readonly(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float).ravel()
    if not np.all(np.isfinite(arr)):
        raise InvalidDistribution(f"{name} must be finite")
    arr.flags.writeable = False
    return arr


def _out(x, values):
    """Return a float for scalar input and an array otherwise."""
    values = np.asarray(values, dtype=float)
    return float(values) if np.ndim(x) == 0 else values


class Distribution:
    """Common interface of all distribution variants."""

    kind: ClassVar[str] = ""

    # -- variant hooks ---------------------------------------------------
    def cdf(self, x) -> np.ndarray:
        raise NotImplementedError

    def atoms(self) -> tuple[np.ndarray, np.ndarray]:
        """Locations and masses of the point masses (positive masses only)."""
        return np.empty(0), np.empty(0)

    def ac_density(self, x) -> np.ndarray:
        """Density of the absolutely continuous part (integrates to ``ac_mass``)."""
        return np.zeros_like(np.asarray(x, dtype=float))

    def support(self, eps: float = 1e-14) -> tuple[float, float]:
        """Interval outside of which at most ``eps`` of the mass lies."""
        raise NotImplementedError

    def landmarks(self) -> np.ndarray:
        """Kinks, jumps and scale points used to seed quadrature panels."""
        return np.empty(0)

    def shift(self, c: float) -> "Distribution":
        raise NotImplementedError

    def to_literal(self) -> dict:
        raise NotImplementedError

    # -- derived quantities ------------------------------------------------
    @property
    def ac_mass(self) -> float:
        return max(0.0, 1.0 - float(self.atoms()[1].sum()))

    @property
    def has_density(self) -> bool:
        return float(self.atoms()[1].sum()) <= NEGLIGIBLE_MASS

    def cdf_left(self, x) -> np.ndarray:
        """``P(X < x)``."""
        x = np.asarray(x, dtype=float)
        out = np.asarray(self.cdf(x), dtype=float)
        pts, masses = self.atoms()
        for p, m in zip(pts, masses):
            out = out - m * (x == p)
        return np.clip(out, 0.0, 1.0)

    def mass_at(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        pts, masses = self.atoms()
        out = np.zeros_like(x)
        for p, m in zip(pts, masses):
            out = out + m * (x == p)
        return out

    def sf(self, x) -> np.ndarray:
        """``P(X > x)``."""
        return 1.0 - np.asarray(self.cdf(x))

    def interval_mass(self, lo: float, hi: float) -> float:
        """``P(lo < X <= hi)``; infinite endpoints allowed."""
        lower = 0.0 if lo == -math.inf else float(self.cdf(lo))
        if lower > 0.5:
            # upper tail: difference of survival values avoids cancellation
            tail_hi = 0.0 if hi == math.inf else float(self.sf(hi))
            return max(0.0, float(self.sf(lo)) - tail_hi)
        upper = 1.0 if hi == math.inf else float(self.cdf(hi))
        return max(0.0, upper - lower)

    def pdf(self, x) -> np.ndarray:
        if not self.has_density:
            raise NoDensity(f"{self.kind} distribution has atoms and no Lebesgue density")
        return self.ac_density(x)

    def logpdf(self, x) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(self.pdf(x))

    def expect(self, f: Callable[[np.ndarray], np.ndarray], *, points: Iterable[float] = (),
               tol: float | None = None, eps: float = 1e-14):
        """``E f(X)``; ``f`` maps an array of outcomes to values (last axis)."""
        pts, masses = self.atoms()
        total = 0.0
        if pts.size:
            total = (np.asarray(f(pts), dtype=float) * masses).sum(axis=-1)
        if self.ac_mass > 1e-15:
            lo, hi = self.support(eps)
            seeds = np.concatenate((self.landmarks(), np.asarray(list(points), dtype=float)))
            total = total + integrate(lambda x: f(x) * self.ac_density(x), lo, hi,
                                      points=seeds, tol=tol)
        return total

    def moment_about(self, c: float, k: int) -> float:
        """``E (X - c)^k`` for ``k`` in 1..4."""
        return float(self.expect(lambda x: (x - c) ** k, tol=1e-12))

    def moments(self) -> Moments:
        mean = self.moment_about(0.0, 1)
        var = max(0.0, self.moment_about(mean, 2))
        third = self.moment_about(mean, 3)
        return Moments(mean, var, third)

    def quantile(self, u) -> np.ndarray:
        return _bisect_quantile(self, u)

    def median(self) -> float:
        """Lowest median, ``inf{x : F(x) >= 1/2}``."""
        return float(self.quantile(0.5))


def _bisect_quantile(d: Distribution, u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if np.any((u < 0) | (u > 1)):
        raise ValueError("quantile levels must lie in [0, 1]")
    lo0, hi0 = d.support(1e-15)
    span = max(hi0 - lo0, 1.0)
    lo = np.full(u.shape, lo0 - span)
    hi = np.full(u.shape, hi0 + span)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        ok = np.asarray(d.cdf(mid)) >= u
        hi = np.where(ok, mid, hi)
        lo = np.where(ok, lo, mid)
        if np.all(hi - lo <= 1e-14 * np.maximum(1.0, np.abs(hi))):
            break
    pts, _ = d.atoms()
    if pts.size:
        # inf{x : F(x) >= u} is attained at an atom whenever one sits in the final bracket
        for p in pts:
            snap = (p >= lo) & (p <= hi) & (np.asarray(d.cdf(p)) >= u)
            hi = np.where(snap, np.minimum(hi, p), hi)
    return hi


# ---------------------------------------------------------------------------
# variants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Gaussian(Distribution):
    mu: float
    sigma2: float
    kind: ClassVar[str] = "gaussian"

    def __post_init__(self):
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "sigma2", float(self.sigma2))
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma2)):
            raise InvalidDistribution("Gaussian parameters must be finite")
        if not self.sigma2 > 0:
            raise InvalidDistribution(f"Gaussian sigma2 must be positive, got {self.sigma2}")

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)

    def cdf(self, x):
        return ndtr((np.asarray(x, dtype=float) - self.mu) / self.sigma)

    def sf(self, x):
        return ndtr((self.mu - np.asarray(x, dtype=float)) / self.sigma)

    def ac_density(self, x):
        return np.exp(self.logpdf(x))

    def logpdf(self, x):
        z = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        return -0.5 * z * z - math.log(self.sigma) - _LOG_SQRT_2PI

    def quantile(self, u):
        return self.mu + self.sigma * ndtri(np.asarray(u, dtype=float))

    def median(self) -> float:
        return self.mu

    def support(self, eps=1e-14):
        if eps <= 0:
            return -math.inf, math.inf
        z = -float(ndtri(eps / 2.0))
        return self.mu - z * self.sigma, self.mu + z * self.sigma

    def landmarks(self):
        return self.mu + self.sigma * np.array([-6.0, -3.0, -1.5, 0.0, 1.5, 3.0, 6.0])

    def shift(self, c):
        return Gaussian(self.mu + c, self.sigma2)

    def moment_about(self, c, k):
        d, v = self.mu - c, self.sigma2
        return {1: d, 2: d * d + v, 3: d**3 + 3 * d * v, 4: d**4 + 6 * d * d * v + 3 * v * v}[k]

    def moments(self):
        return Moments(self.mu, self.sigma2, 0.0)

    def to_literal(self):
        return {"type": "gaussian", "mu": self.mu, "sigma2": self.sigma2}


@dataclass(frozen=True)
class UniformInterval(Distribution):
    a: float
    b: float
    kind: ClassVar[str] = "uniform"

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.b > self.a):
            raise InvalidDistribution(f"uniform needs finite a < b, got ({self.a}, {self.b})")

    def cdf(self, x):
        return np.clip((np.asarray(x, dtype=float) - self.a) / (self.b - self.a), 0.0, 1.0)

    def ac_density(self, x):
        x = np.asarray(x, dtype=float)
        return np.where((x >= self.a) & (x <= self.b), 1.0 / (self.b - self.a), 0.0)

    def quantile(self, u):
        return self.a + np.asarray(u, dtype=float) * (self.b - self.a)

    def support(self, eps=1e-14):
        return self.a, self.b

    def landmarks(self):
        return np.array([self.a, 0.5 * (self.a + self.b), self.b])

    def shift(self, c):
        return UniformInterval(self.a + c, self.b + c)

    def moment_about(self, c, k):
        return ((self.b - c) ** (k + 1) - (self.a - c) ** (k + 1)) / ((k + 1) * (self.b - self.a))

    def to_literal(self):
        return {"type": "uniform", "a": self.a, "b": self.b}


class _Atomic(Distribution):
    """Shared machinery for purely atomic distributions."""

    def _table(self) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def atoms(self):
        pts, probs = self._table()
        keep = probs > 0
        return pts[keep], probs[keep]

    @property
    def ac_mass(self):
        return 0.0

    def cdf(self, x):
        pts, probs = self._table()
        cum = np.concatenate(([0.0], np.cumsum(probs)))
        cum[-1] = 1.0
        idx = np.searchsorted(pts, np.asarray(x, dtype=float), side="right")
        return cum[idx]

    def quantile(self, u):
        pts, probs = self.atoms()
        cum = np.cumsum(probs)
        cum[-1] = 1.0
        u = np.asarray(u, dtype=float)
        # tolerance absorbs rounding in the cumulative sum
        idx = np.searchsorted(cum, u - 1e-12, side="left")
        return pts[np.minimum(idx, pts.size - 1)]

    def support(self, eps=1e-14):
        pts, _ = self.atoms()
        return float(pts[0]), float(pts[-1])

    def landmarks(self):
        return self.atoms()[0]

    def moment_about(self, c, k):
        pts, probs = self.atoms()
        return float(np.sum(probs * (pts - c) ** k))


@dataclass(frozen=True)
class Dirac(_Atomic):
    x: float
    kind: ClassVar[str] = "dirac"

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        if not math.isfinite(self.x):
            raise InvalidDistribution("Dirac location must be finite")

    def _table(self):
        return np.array([self.x]), np.array([1.0])

    def cdf(self, x):
        return (np.asarray(x, dtype=float) >= self.x).astype(float)

    def quantile(self, u):
        return np.full(np.shape(u), self.x)

    def median(self):
        return self.x

    def shift(self, c):
        return Dirac(self.x + c)

    def moments(self):
        return Moments(self.x, 0.0, 0.0)

    def to_literal(self):
        return {"type": "dirac", "x": self.x}


@dataclass(frozen=True)
class Bernoulli(_Atomic):
    """Binary outcome distribution on {0, 1} with ``p = P({1})``."""

    p: float
    kind: ClassVar[str] = "bernoulli"

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        if not (0.0 <= self.p <= 1.0):
            raise InvalidDistribution(f"Bernoulli p must lie in [0, 1], got {self.p}")

    def _table(self):
        return np.array([0.0, 1.0]), np.array([1.0 - self.p, self.p])

    def shift(self, c):
        return Categorical([c, 1.0 + c], [1.0 - self.p, self.p])

    def moments(self):
        p = self.p
        return Moments(p, p * (1 - p), p * (1 - p) * (1 - 2 * p))

    def to_literal(self):
        return {"type": "bernoulli", "p": self.p}


@dataclass(frozen=True, eq=False)
class Categorical(_Atomic):
    points: np.ndarray
    probs: np.ndarray
    kind: ClassVar[str] = "categorical"

    def __post_init__(self):
        pts = _readonly(self.points, "points")
        probs = _readonly(self.probs, "probs")
        if pts.size == 0 or pts.size != probs.size:
            raise InvalidDistribution("categorical needs equally many points and probs (>= 1)")
        if np.any(np.diff(pts) <= 0):
            raise InvalidDistribution("categorical points must be strictly ascending")
        if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-12:
            raise InvalidDistribution("categorical probs must be nonnegative and sum to 1")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "probs", probs)

    def _table(self):
        return self.points, self.probs

    def shift(self, c):
        return Categorical(self.points + c, self.probs)

    def to_literal(self):
        return {"type": "categorical", "points": self.points.tolist(), "probs": self.probs.tolist()}


@dataclass(frozen=True, eq=False)
class Mixture(Distribution):
    """Finite mixture; nested mixtures are flattened at construction."""

    components: tuple
    weights: np.ndarray
    kind: ClassVar[str] = "mixture"

    def __post_init__(self):
        comps = list(self.components)
        w = np.array(self.weights, dtype=float).ravel()
        if not comps or len(comps) != w.size:
            raise InvalidDistribution("mixture needs equally many components and weights (>= 1)")
        if np.any(~np.isfinite(w)) or np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise InvalidDistribution("mixture weights must be nonnegative and sum to 1")
        flat, flat_w = [], []
        for comp, wi in zip(comps, w):
            if not isinstance(comp, Distribution):
                raise InvalidDistribution(f"mixture component {comp!r} is not a distribution")
            if isinstance(comp, Mixture):
                flat.extend(comp.components)
                flat_w.extend(wi * comp.weights)
            else:
                flat.append(comp)
                flat_w.append(wi)
        object.__setattr__(self, "components", tuple(flat))
        object.__setattr__(self, "weights", _readonly(flat_w, "weights"))

    def _live(self):
        return [(c, w) for c, w in zip(self.components, self.weights) if w > 0]

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return sum(w * np.asarray(c.cdf(x)) for c, w in self._live())

    def sf(self, x):
        x = np.asarray(x, dtype=float)
        return sum(w * np.asarray(c.sf(x)) for c, w in self._live())

    def atoms(self):
        merged: dict[float, float] = {}
        for c, w in self._live():
            for p, m in zip(*c.atoms()):
                merged[float(p)] = merged.get(float(p), 0.0) + w * m
        if not merged:
            return np.empty(0), np.empty(0)
        pts = np.array(sorted(merged))
        return pts, np.array([merged[p] for p in pts])

    def ac_density(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for c, w in self._live():
            if c.ac_mass > 0:
                out = out + w * c.ac_density(x)
        return out

    def logpdf(self, x):
        if not self.has_density:
            raise NoDensity("mixture has atoms and no Lebesgue density")
        x = np.asarray(x, dtype=float)
        live = [(c, w) for c, w in self._live() if c.ac_mass > 0]
        terms = np.stack([np.asarray(c.logpdf(x)) for c, _ in live])
        b = np.array([w for _, w in live]).reshape((-1,) + (1,) * x.ndim)
        return logsumexp(terms, axis=0, b=b)

    def quantile(self, u):
        if self.ac_mass <= 0:
            pts, masses = self.atoms()
            return Categorical(pts, masses / masses.sum()).quantile(u)
        return _bisect_quantile(self, u)

    def support(self, eps=1e-14):
        bounds = [c.support(eps) for c, _ in self._live()]
        return min(b[0] for b in bounds), max(b[1] for b in bounds)

    def landmarks(self):
        return np.unique(np.concatenate([c.landmarks() for c, _ in self._live()]))

    def shift(self, c):
        return Mixture([comp.shift(c) for comp in self.components], self.weights)

    def moment_about(self, c, k):
        return float(sum(w * comp.moment_about(c, k) for comp, w in self._live()))

    def to_literal(self):
        return {
            "type": "mixture",
            "weights": self.weights.tolist(),
            "components": [c.to_literal() for c in self.components],
        }


@dataclass(frozen=True, eq=False)
class GridCdf(Distribution):
    """Piecewise-linear CDF through ``(grid[i], cdf[i])``.

    A positive first value is an atom at ``grid[0]``; the CDF is 0 to the left
    of the grid and 1 from its last knot on.
    """

    grid: np.ndarray
    cdf_values: np.ndarray
    kind: ClassVar[str] = "grid_cdf"

    def __post_init__(self):
        g = _readonly(self.grid, "grid")
        c = np.array(self.cdf_values, dtype=float).ravel()
        if g.size < 2 or g.size != c.size:
            raise InvalidDistribution("grid_cdf needs >= 2 knots and one value per knot")
        if np.any(np.diff(g) <= 0):
            raise InvalidDistribution("grid_cdf knots must be strictly ascending")
        if np.any(np.diff(c) < 0) or c[0] < 0:
            raise InvalidDistribution("grid_cdf values must be nondecreasing and nonnegative")
        if abs(c[-1] - 1.0) > 1e-12:
            raise InvalidDistribution(f"grid_cdf must reach 1 at the last knot, got {c[-1]!r}")
        c[-1] = 1.0
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "cdf_values", _readonly(c, "cdf"))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x < self.grid[0], 0.0, np.interp(x, self.grid, self.cdf_values))

    def atoms(self):
        if self.cdf_values[0] > 0:
            return self.grid[:1].copy(), self.cdf_values[:1].copy()
        return np.empty(0), np.empty(0)

    def _slopes(self):
        return np.diff(self.cdf_values) / np.diff(self.grid)

    def ac_density(self, x):
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self.grid, x, side="right") - 1
        inside = (idx >= 0) & (idx < self.grid.size - 1)
        slopes = self._slopes()
        return np.where(inside, slopes[np.clip(idx, 0, slopes.size - 1)], 0.0)

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        g, c = self.grid, self.cdf_values
        i = np.clip(np.searchsorted(c, u, side="left"), 1, g.size - 1)
        c0, c1 = c[i - 1], c[i]
        with np.errstate(invalid="ignore", divide="ignore"):
            t = np.where(c1 > c0, (u - c0) / (c1 - c0), 1.0)
        x = g[i - 1] + np.clip(t, 0.0, 1.0) * (g[i] - g[i - 1])
        return np.where(u <= c[0], g[0], x)

    def support(self, eps=1e-14):
        return float(self.grid[0]), float(self.grid[-1])

    def landmarks(self):
        return self.grid

    def shift(self, c):
        return GridCdf(self.grid + c, self.cdf_values)

    def moment_about(self, c, k):
        a, b = self.grid[:-1] - c, self.grid[1:] - c
        masses = np.diff(self.cdf_values)
        seg = masses * (b ** (k + 1) - a ** (k + 1)) / ((k + 1) * (b - a))
        return float(seg.sum() + self.cdf_values[0] * (self.grid[0] - c) ** k)

    def to_literal(self):
        return {"type": "grid_cdf", "grid": self.grid.tolist(), "cdf": self.cdf_values.tolist()}


@dataclass(frozen=True)
class Truncated(Distribution):
    """``base`` conditioned on the interval ``(lo, hi]``."""

    base: Distribution
    lo: float = -math.inf
    hi: float = math.inf
    kind: ClassVar[str] = "truncated"

    def __post_init__(self):
        if not self.lo < self.hi:
            raise InvalidDistribution(f"truncation needs lo < hi, got ({self.lo}, {self.hi})")
        if self.mass <= 0:
            raise WeightMassZero(f"base puts no mass on ({self.lo}, {self.hi}]")

    @property
    def mass(self) -> float:
        return self.base.interval_mass(self.lo, self.hi)

    def _clip(self, x):
        return np.clip(np.asarray(x, dtype=float), self.lo, self.hi)

    def cdf(self, x):
        base_lo = 0.0 if self.lo == -math.inf else float(self.base.cdf(self.lo))
        return np.clip((np.asarray(self.base.cdf(self._clip(x))) - base_lo) / self.mass, 0.0, 1.0)

    def _inside(self, x):
        x = np.asarray(x, dtype=float)
        return (x > self.lo) & (x <= self.hi)

    def atoms(self):
        pts, masses = self.base.atoms()
        keep = self._inside(pts)
        return pts[keep], masses[keep] / self.mass

    def ac_density(self, x):
        return np.where(self._inside(x), self.base.ac_density(x) / self.mass, 0.0)

    def logpdf(self, x):
        if not self.has_density:
            raise NoDensity("truncated distribution has atoms")
        return np.where(self._inside(x), self.base.logpdf(x) - math.log(self.mass), -np.inf)

    def quantile(self, u):
        base_lo = 0.0 if self.lo == -math.inf else float(self.base.cdf(self.lo))
        q = self.base.quantile(np.clip(base_lo + np.asarray(u, dtype=float) * self.mass, 0.0, 1.0))
        return np.clip(q, self.lo, self.hi)

    def support(self, eps=1e-14):
        blo, bhi = self.base.support(eps * self.mass)
        return max(blo, self.lo), min(bhi, self.hi)

    def landmarks(self):
        lm = self.base.landmarks()
        lm = lm[(lm >= self.lo) & (lm <= self.hi)]
        ends = [e for e in (self.lo, self.hi) if math.isfinite(e)]
        return np.unique(np.concatenate((lm, ends)))

    def shift(self, c):
        return Truncated(self.base.shift(c), self.lo + c, self.hi + c)

    def to_literal(self):
        return {"type": "truncated", "base": self.base.to_literal(),
                "lo": _finite_or_none(self.lo), "hi": _finite_or_none(self.hi)}


def odds_power(u, alpha: float) -> np.ndarray:
    """``(1 + ((1 - u)/u)^(1/(alpha - 1)))^-1`` with value 0 at ``u = 0``."""
    u = np.asarray(u, dtype=float)
    k = 1.0 / (alpha - 1.0)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        r = (1.0 - u) / u
        out = 1.0 / (1.0 + r**k)
    return np.where(u > 0, np.where(u >= 1, 1.0, out), 0.0)


def odds_power_inverse(v, alpha: float) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        r = ((1.0 - v) / v) ** (alpha - 1.0)
        out = 1.0 / (1.0 + r)
    return np.where(v > 0, np.where(v >= 1, 1.0, out), 0.0)


def odds_power_derivative(u, alpha: float) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    k = 1.0 / (alpha - 1.0)
    inner = (u > 0) & (u < 1)
    us = np.where(inner, u, 0.5)
    r = (1.0 - us) / us
    rk = r**k
    out = k * rk / (r * us * us * (1.0 + rk) ** 2)
    return np.where(inner, out, 0.0)


@dataclass(frozen=True)
class OddsPowerTransform(Distribution):
    """Distribution with CDF ``odds_power(base.cdf(x), alpha)`` for ``alpha > 1``."""

    base: Distribution
    alpha: float
    kind: ClassVar[str] = "odds_power"

    def __post_init__(self):
        if not self.alpha > 1:
            raise InvalidDistribution(f"odds-power transform needs alpha > 1, got {self.alpha}")

    def cdf(self, x):
        return odds_power(self.base.cdf(x), self.alpha)

    def atoms(self):
        pts, masses = self.base.atoms()
        if not pts.size:
            return pts, masses
        right = np.asarray(self.base.cdf(pts))
        jumps = odds_power(right, self.alpha) - odds_power(np.clip(right - masses, 0.0, 1.0), self.alpha)
        keep = jumps > 0
        return pts[keep], jumps[keep]

    def ac_density(self, x):
        x = np.asarray(x, dtype=float)
        return odds_power_derivative(self.base.cdf(x), self.alpha) * self.base.ac_density(x)

    def quantile(self, u):
        return self.base.quantile(odds_power_inverse(u, self.alpha))

    def support(self, eps=1e-14):
        # the map is symmetric, so each base tail of mass t becomes one of mass eps / 2
        t = float(odds_power_inverse(eps / 2.0, self.alpha))
        return self.base.support(2.0 * t)

    def landmarks(self):
        return self.base.landmarks()

    def shift(self, c):
        return OddsPowerTransform(self.base.shift(c), self.alpha)

    def to_literal(self):
        return {"type": "odds_power", "base": self.base.to_literal(), "alpha": self.alpha}


def _finite_or_none(v: float):
    return v if math.isfinite(v) else None


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def cdf(d: Distribution, x):
    """Right-continuous CDF ``P(X <= x)``."""
    return _out(x, d.cdf(x))


def pdf(d: Distribution, x):
    """Lebesgue density; raises :class:`NoDensity` for distributions with atoms."""
    return _out(x, d.pdf(x))


def moments(d: Distribution) -> Moments:
    return d.moments()


def median(d: Distribution) -> float:
    return d.median()


def quantile(d: Distribution, u):
    return _out(u, d.quantile(u))


def discretize(d: Distribution, grid: Sequence[float]) -> GridCdf:
    """Sample ``d``'s CDF at the knots of ``grid``.

    The last knot is set to exactly 1; the grid must leave at most ``1e-10``
    of the mass uncovered.
    """
    g = np.asarray(grid, dtype=float)
    values = np.asarray(d.cdf(g), dtype=float)
    uncovered = float(d.cdf_left(g[0])) + (1.0 - values[-1])
    if uncovered > COVERAGE:
        raise UnboundedSupport(f"grid [{g[0]:g}, {g[-1]:g}] leaves {uncovered:.3g} of the mass uncovered")
    values = np.maximum.accumulate(values)
    values[-1] = 1.0
    return GridCdf(g, values)


def convolve(d: Distribution, noise: Distribution, n_knots: int = 2001) -> Distribution:
    """Distribution of ``X + E`` for independent ``X ~ d`` and ``E ~ noise``.

    Closed under Gaussians, point masses and mixtures; anything else is
    evaluated numerically onto a :class:`GridCdf` through
    ``F(x) = E[noise.cdf(x - X)]``.
    """
    if isinstance(d, Gaussian) and isinstance(noise, Gaussian):
        return Gaussian(d.mu + noise.mu, d.sigma2 + noise.sigma2)
    if isinstance(d, Dirac):
        return noise.shift(d.x)
    if isinstance(noise, Dirac):
        return d.shift(noise.x)
    if isinstance(d, Mixture):
        return Mixture([convolve(c, noise, n_knots) for c in d.components], d.weights)
    if isinstance(noise, Mixture):
        return Mixture([convolve(d, c, n_knots) for c in noise.components], noise.weights)
    if d.ac_mass == 0:
        pts, masses = d.atoms()
        return Mixture([noise.shift(p) for p in pts], masses)
    if noise.ac_mass == 0:
        pts, masses = noise.atoms()
        return Mixture([d.shift(p) for p in pts], masses)
    return _numeric_convolution(d, noise, n_knots)


def _numeric_convolution(d: Distribution, noise: Distribution, n_knots: int) -> GridCdf:
    dlo, dhi = d.support(COVERAGE / 4)
    nlo, nhi = noise.support(COVERAGE / 4)
    lo, hi = dlo + nlo, dhi + nhi
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise UnboundedSupport("supports are not finite")
    knots = np.linspace(lo, hi, n_knots)
    dl, nl = d.landmarks(), noise.landmarks()
    if dl.size * nl.size <= 400:
        sums = (dl[:, None] + nl[None, :]).ravel()
        knots = np.unique(np.concatenate((knots, sums[(sums > lo) & (sums < hi)])))
    values = np.empty(knots.size)
    for i, x in enumerate(knots):
        values[i] = d.expect(lambda y, x=x: noise.cdf(x - y), points=x - nl, eps=COVERAGE / 4)
    values = np.clip(np.maximum.accumulate(values), 0.0, 1.0)
    if values[0] > COVERAGE or values[-1] < 1.0 - COVERAGE:
        raise UnboundedSupport("numeric convolution grid does not cover the mass")
    values[-1] = 1.0
    return GridCdf(knots, values)


# ---------------------------------------------------------------------------
# JSON literals
# ---------------------------------------------------------------------------

_FIELDS = {
    "gaussian": {"mu", "sigma2"},
    "bernoulli": {"p"},
    "dirac": {"x"},
    "categorical": {"points", "probs"},
    "uniform": {"a", "b"},
    "mixture": {"weights", "components"},
    "grid_cdf": {"grid", "cdf"},
    "truncated": {"base", "lo", "hi"},
    "odds_power": {"base", "alpha"},
}


def _num(obj: dict, key: str) -> float:
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InvalidDistribution(f"field {key!r} must be a number, got {v!r}")
    return float(v)


def _nums(obj: dict, key: str) -> list[float]:
    v = obj[key]
    if not isinstance(v, list):
        raise InvalidDistribution(f"field {key!r} must be a list of numbers")
    return [_num({key: e}, key) for e in v]


def from_literal(obj: dict) -> Distribution:
    """Parse a distribution literal such as ``{"type": "gaussian", "mu": 0, "sigma2": 1}``."""
    if not isinstance(obj, dict):
        raise InvalidDistribution(f"distribution literal must be an object, got {obj!r}")
    tag = obj.get("type")
    if tag not in _FIELDS:
        raise InvalidDistribution(f"unknown distribution type {tag!r}")
    keys = set(obj) - {"type"}
    if keys != _FIELDS[tag]:
        extra, missing = keys - _FIELDS[tag], _FIELDS[tag] - keys
        raise InvalidDistribution(f"{tag}: unknown fields {sorted(extra)}, missing {sorted(missing)}")
    if tag == "gaussian":
        return Gaussian(_num(obj, "mu"), _num(obj, "sigma2"))
    if tag == "bernoulli":
        return Bernoulli(_num(obj, "p"))
    if tag == "dirac":
        return Dirac(_num(obj, "x"))
    if tag == "categorical":
        return Categorical(_nums(obj, "points"), _nums(obj, "probs"))
    if tag == "uniform":
        return UniformInterval(_num(obj, "a"), _num(obj, "b"))
    if tag == "mixture":
        comps = obj["components"]
        if not isinstance(comps, list):
            raise InvalidDistribution("mixture components must be a list")
        return Mixture([from_literal(c) for c in comps], _nums(obj, "weights"))
    if tag == "grid_cdf":
        return GridCdf(_nums(obj, "grid"), _nums(obj, "cdf"))
    if tag == "truncated":
        lo = -math.inf if obj["lo"] is None else _num(obj, "lo")
        hi = math.inf if obj["hi"] is None else _num(obj, "hi")
        return Truncated(from_literal(obj["base"]), lo, hi)
    return OddsPowerTransform(from_literal(obj["base"]), _num(obj, "alpha"))


def to_literal(d: Distribution) -> dict:
    return d.to_literal()


def sup_cdf_distance(a: Distribution, b: Distribution, n: int = 401) -> float:
    """Largest CDF gap over quantile grids and landmarks of both distributions."""
    u = np.linspace(0.0005, 0.9995, n)
    pts = [a.quantile(u), b.quantile(u), a.landmarks(), b.landmarks(), *a.atoms()[:1], *b.atoms()[:1]]
    x = np.unique(np.concatenate([np.asarray(p, dtype=float).ravel() for p in pts]))
    x = x[np.isfinite(x)]
    gap = np.abs(np.asarray(a.cdf(x)) - np.asarray(b.cdf(x)))
    gap_left = np.abs(np.asarray(a.cdf_left(x)) - np.asarray(b.cdf_left(x)))
    return float(max(gap.max(), gap_left.max()))
