"""Classes of forecast distributions and their random samplers.

Sampling boxes (used by the propriety and fixed-point suites):

* ``bernoulli``: ``p ~ U[0, 1]``.
* ``P1``, ``P2``, ``P4Plus``: mixtures of 1 to 3 Gaussians with
  ``mu ~ U[-5, 5]``, ``sigma2 ~ U[0.1, 10]`` and Dirichlet(1) weights.
* ``P2m:<m>``: as above, rescaled about the mean so the variance is
  ``U[0.1, 1] * m`` whenever it would exceed ``m``.
* ``Pc:<B>``: mixtures of 1 to 3 uniform intervals inside ``[-B, B]``.
* ``grid:<lo>:<hi>:<step>``: piecewise-uniform densities on the grid with
  Dirichlet(1) cell masses.

Challengers for a given truth ``Q`` are drawn with probability 0.4
independently from the family, with probability 0.3 as a local perturbation
of ``Q`` (location shift ``N(0, (0.5 sd)^2)``, spread factor
``lognormal(0, 0.5)``) and otherwise as a small perturbation (shift
``N(0, (0.05 sd)^2)``, spread factor ``lognormal(0, 0.1)``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import (
    Bernoulli,
    Categorical,
    Dirac,
    Distribution,
    Gaussian,
    GridCdf,
    Mixture,
    UniformInterval,
)
from .errors import InvalidDistribution

TAGS = ("bernoulli", "P1", "P2", "P4Plus", "Pc", "P2m", "grid")


@dataclass(frozen=True)
class FamilyDescriptor:
    tag: str
    param: float | None = None
    grid: tuple[float, float, float] | None = None
    max_components: int = 3

    def __post_init__(self):
        if self.tag not in TAGS:
            raise InvalidDistribution(f"unknown family {self.tag!r}; expected one of {TAGS}")
        if self.tag in ("Pc", "P2m"):
            if self.param is None or not (self.param > 0 and math.isfinite(self.param)):
                raise InvalidDistribution(f"{self.tag} needs a finite positive parameter")
        if self.tag == "grid":
            if self.grid is None:
                raise InvalidDistribution("grid family needs (lo, hi, step)")
            lo, hi, step = self.grid
            if not (hi > lo and step > 0 and (hi - lo) / step <= 1e5):
                raise InvalidDistribution(f"bad grid spec {self.grid}")
        if self.max_components < 1:
            raise InvalidDistribution("max_components must be >= 1")

    # -- constructors ---------------------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "FamilyDescriptor":
        """Parse ``name[:param]`` such as ``P2m:4`` or ``grid:-5:5:0.01``."""
        head, _, rest = text.strip().partition(":")
        if head == "grid":
            try:
                lo, hi, step = (float(v) for v in rest.split(":"))
            except ValueError:
                raise InvalidDistribution(f"grid family spec must be grid:<lo>:<hi>:<step>, got {text!r}") from None
            return cls("grid", grid=(lo, hi, step))
        if head in ("Pc", "P2m"):
            try:
                return cls(head, float(rest))
            except ValueError:
                raise InvalidDistribution(f"{head} needs a numeric parameter, got {text!r}") from None
        if rest:
            raise InvalidDistribution(f"family {head!r} takes no parameter")
        return cls(head)

    def __str__(self) -> str:
        if self.tag == "grid":
            return "grid:" + ":".join(f"{v:g}" for v in self.grid)
        if self.param is not None:
            return f"{self.tag}:{self.param:g}"
        return self.tag

    @property
    def knots(self) -> np.ndarray:
        lo, hi, step = self.grid
        n = int(round((hi - lo) / step))
        return lo + step * np.arange(n + 1)

    # -- membership -----------------------------------------------------------
    def contains(self, d: Distribution, rtol: float = 1e-9) -> bool:
        if self.tag == "bernoulli":
            pts, _ = d.atoms()
            return d.ac_mass == 0 and bool(np.all(np.isin(pts, (0.0, 1.0))))
        if self.tag in ("P1", "P2"):
            return True
        var = d.moments().variance
        if self.tag == "P4Plus":
            return var > 0
        if self.tag == "P2m":
            return var <= self.param * (1 + rtol)
        lo, hi = d.support(0.0)
        if self.tag == "Pc":
            return -self.param <= lo and hi <= self.param
        knots = self.knots
        return d.has_density and knots[0] <= lo and hi <= knots[-1]

    # -- sampling -------------------------------------------------------------
    def sample(self, rng: np.random.Generator) -> Distribution:
        if self.tag == "bernoulli":
            return Bernoulli(float(rng.uniform()))
        if self.tag == "Pc":
            return self._uniform_mixture(rng)
        if self.tag == "grid":
            knots = self.knots
            masses = rng.dirichlet(np.ones(knots.size - 1))
            cdf = np.concatenate(([0.0], np.cumsum(masses)))
            cdf[-1] = 1.0
            return GridCdf(knots, cdf)
        d = self._gaussian_mixture(rng)
        if self.tag == "P2m":
            d = self._cap_variance(d, rng)
        return d

    def challenger(self, truth: Distribution, rng: np.random.Generator) -> Distribution:
        """A forecast to pit against ``truth`` in a propriety check."""
        u = rng.uniform()
        if u < 0.4:
            return self.sample(rng)
        move, step = (0.5, 0.5) if u < 0.7 else (0.05, 0.1)
        if self.tag == "bernoulli":
            p = float(truth.atoms()[1][truth.atoms()[0] == 1.0].sum())
            return Bernoulli(float(np.clip(p + rng.normal(0.0, 0.4 * move), 0.0, 1.0)))
        if self.tag == "grid":
            masses = np.diff(truth.cdf_values) * rng.lognormal(0.0, step, truth.grid.size - 1)
            cdf = np.concatenate(([0.0], np.cumsum(masses / masses.sum())))
            cdf[-1] = 1.0
            return GridCdf(truth.grid, cdf)
        m = truth.moments()
        sd = math.sqrt(m.variance) if m.variance > 0 else 1.0
        shift = float(rng.normal(0.0, move * sd))
        scale = float(rng.lognormal(0.0, step))
        d = _affine(truth, m.mean, scale, shift)
        if self.tag == "P2m":
            d = self._cap_variance(d, rng)
        if self.tag == "Pc":
            d = _squeeze_into(d, self.param)
        return d

    def _gaussian_mixture(self, rng) -> Distribution:
        k = int(rng.integers(1, self.max_components + 1))
        mus = rng.uniform(-5.0, 5.0, k)
        variances = rng.uniform(0.1, 10.0, k)
        comps = [Gaussian(float(mu), float(v)) for mu, v in zip(mus, variances)]
        if k == 1:
            return comps[0]
        return Mixture(comps, _weights(rng, k))

    def _uniform_mixture(self, rng) -> Distribution:
        k = int(rng.integers(1, self.max_components + 1))
        comps = []
        for _ in range(k):
            a, b = np.sort(rng.uniform(-self.param, self.param, 2))
            if b - a < 1e-3 * self.param:
                b = a + 1e-3 * self.param
            comps.append(UniformInterval(float(a), float(b)))
        if k == 1:
            return comps[0]
        return _squeeze_into(Mixture(comps, _weights(rng, k)), self.param)

    def _cap_variance(self, d: Distribution, rng) -> Distribution:
        m = d.moments()
        if m.variance <= self.param:
            return d
        target = float(rng.uniform(0.1, 1.0)) * self.param
        return _affine(d, m.mean, math.sqrt(target / m.variance), 0.0)


def _weights(rng, k: int) -> np.ndarray:
    w = rng.dirichlet(np.ones(k))
    return w / w.sum()


def _affine(d: Distribution, center: float, scale: float, shift: float) -> Distribution:
    """Law of ``center + shift + scale * (X - center)``."""
    if isinstance(d, Gaussian):
        return Gaussian(center + shift + scale * (d.mu - center), d.sigma2 * scale * scale)
    if isinstance(d, UniformInterval):
        a = center + shift + scale * (d.a - center)
        b = center + shift + scale * (d.b - center)
        return UniformInterval(a, b)
    if isinstance(d, Dirac):
        return Dirac(center + shift + scale * (d.x - center))
    if isinstance(d, Mixture):
        return Mixture([_affine(c, center, scale, shift) for c in d.components], d.weights)
    if isinstance(d, (Categorical, Bernoulli)):
        pts, probs = d.atoms()
        return Categorical(center + shift + scale * (pts - center), probs)
    raise InvalidDistribution(f"cannot rescale a {d.kind} distribution")


def _squeeze_into(d: Distribution, bound: float) -> Distribution:
    lo, hi = d.support(0.0)
    if -bound <= lo and hi <= bound:
        return d
    center = 0.5 * (lo + hi)
    scale = min(1.0, 2 * bound / (hi - lo)) * (1 - 1e-12)
    return _affine(d, center, scale, -center)
