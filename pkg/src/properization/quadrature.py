"""Vectorized adaptive composite Simpson quadrature.

All panels at one refinement level are evaluated in a single call of the
integrand, so integrands must accept a 1-D array of abscissae.  An integrand
may return an array of shape ``(..., n)``; the result then has shape
``(...)`` and a panel is refined until every component meets its share of the
tolerance.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Callable, Iterable, Iterator

import numpy as np

from .errors import QuadratureFailure

DEFAULT_TOL = 1e-8
MAX_PANELS = 2**20
TOL_ENV_VAR = "PROPERIZE_QUAD_TOL"

_override: ContextVar[float | None] = ContextVar("quad_tol_override", default=None)


@contextmanager
def tolerance(tol: float) -> Iterator[None]:
    """Temporarily replace the default absolute tolerance."""
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    token = _override.set(tol)
    try:
        yield
    finally:
        _override.reset(token)


def default_tol() -> float:
    """Absolute quadrature tolerance.

    Precedence: an active :func:`tolerance` block, then ``PROPERIZE_QUAD_TOL``,
    then ``DEFAULT_TOL``.
    """
    tol = _override.get()
    if tol is not None:
        return tol
    raw = os.environ.get(TOL_ENV_VAR)
    if raw:
        tol = float(raw)
        if not tol > 0:
            raise ValueError(f"{TOL_ENV_VAR} must be positive, got {raw!r}")
        return tol
    return DEFAULT_TOL


def _initial_panels(a: float, b: float, points: Iterable[float]) -> tuple[np.ndarray, np.ndarray]:
    pts = np.asarray(list(points), dtype=float).ravel()
    pts = pts[np.isfinite(pts) & (pts > a) & (pts < b)]
    edges = np.unique(np.concatenate(([a], pts, [b])))
    nseg = edges.size - 1
    per = 4 if nseg <= 16 else (2 if nseg <= 256 else 1)
    t = np.linspace(0.0, 1.0, per + 1)
    grid = (edges[:-1, None] + (edges[1:] - edges[:-1])[:, None] * t[None, :])
    lo = grid[:, :-1].ravel()
    hi = grid[:, 1:].ravel()
    keep = hi > lo
    return lo[keep], hi[keep]


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    *,
    points: Iterable[float] = (),
    tol: float | None = None,
    max_panels: int = MAX_PANELS,
):
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    ``points`` are kinks, jumps or scale landmarks of the integrand; panels
    never straddle them.  Each panel is accepted once the Richardson error
    estimate ``|S2 - S1| / 15`` is below ``tol * width / (b - a)``.
    """
    if tol is None:
        tol = default_tol()
    a = float(a)
    b = float(b)
    if not (np.isfinite(a) and np.isfinite(b)):
        raise QuadratureFailure(f"integration limits must be finite, got [{a}, {b}]")
    if b < a:
        return -integrate(f, b, a, points=points, tol=tol, max_panels=max_panels)
    if b == a:
        probe = np.asarray(f(np.array([a])), dtype=float)
        return np.zeros(probe.shape[:-1])[()] if probe.ndim > 1 else 0.0

    lo, hi = _initial_panels(a, b, points)
    width = b - a
    mid = 0.5 * (lo + hi)
    n = lo.size
    vals = _call(f, np.concatenate((lo, mid, hi)))
    f_lo, f_mid, f_hi = vals[..., :n], vals[..., n : 2 * n], vals[..., 2 * n :]
    total = np.zeros(vals.shape[:-1])
    n_panels = n

    while lo.size:
        h = hi - lo
        q1 = lo + 0.25 * h
        q3 = lo + 0.75 * h
        n = lo.size
        vals = _call(f, np.concatenate((q1, q3)))
        f_q1, f_q3 = vals[..., :n], vals[..., n:]
        s1 = h / 6.0 * (f_lo + 4.0 * f_mid + f_hi)
        s2 = h / 12.0 * (f_lo + 4.0 * f_q1 + 2.0 * f_mid + 4.0 * f_q3 + f_hi)
        diff = s2 - s1
        err = np.abs(diff) / 15.0
        if err.ndim > 1:
            err = err.reshape(-1, n).max(axis=0)
        tiny = h <= 1e-13 * np.maximum(1.0, np.abs(lo))
        done = (err <= tol * h / width) | tiny
        if done.any():
            total = total + (s2[..., done] + diff[..., done] / 15.0).sum(axis=-1)
        todo = ~done
        if not todo.any():
            break
        n_new = int(todo.sum())
        n_panels += n_new
        if n_panels > max_panels:
            raise QuadratureFailure(
                f"tolerance {tol:g} not reached on [{a:g}, {b:g}] within {max_panels} panels"
            )
        m = mid[todo]
        lo = np.concatenate((lo[todo], m))
        hi = np.concatenate((m, hi[todo]))
        mid = 0.5 * (lo + hi)
        f_lo, f_mid, f_hi = (
            np.concatenate((f_lo[..., todo], f_mid[..., todo]), axis=-1),
            np.concatenate((f_q1[..., todo], f_q3[..., todo]), axis=-1),
            np.concatenate((f_mid[..., todo], f_hi[..., todo]), axis=-1),
        )
    return total[()] if total.ndim else float(total)


def _call(f, x: np.ndarray) -> np.ndarray:
    y = np.asarray(f(x), dtype=float)
    if y.shape[-1:] != x.shape:
        y = np.broadcast_to(y, y.shape[:-1] + x.shape) if y.ndim else np.full(x.shape, float(y))
    if not np.all(np.isfinite(y)):
        raise QuadratureFailure("integrand returned non-finite values")
    return y
