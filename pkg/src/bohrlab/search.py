"""Bracketed root finding and golden-section maximization."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BracketError, ConvergenceError

INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI2 = (3 - math.sqrt(5)) / 2


@dataclass(frozen=True)
class RootResult:
    value: float
    residual: float
    iterations: int
    bracket_final: tuple[float, float]


def find_root(
    fn: Callable[[float], float],
    bracket: tuple[float, float],
    tol: float = 1e-12,
    max_iter: int = 200,
) -> RootResult:
    """Locate a sign change of ``fn`` inside ``bracket``.

    Illinois-modified regula falsi; any step that fails to halve the
    bracket is followed by a bisection step, so the bracket width falls
    below ``tol`` in at most about twice the bisection count.

    Args:
        fn: continuous scalar function.
        bracket: ``(lo, hi)`` with ``fn(lo) * fn(hi) <= 0``.
        tol: target width of the final bracket.
        max_iter: iteration cap.

    Returns:
        RootResult with the endpoint of smaller ``|fn|`` as ``value``.

    Raises:
        BracketError: no sign change at the endpoints.
        ConvergenceError: ``max_iter`` reached first.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if lo > hi:
        lo, hi = hi, lo
    f_lo, f_hi = float(fn(lo)), float(fn(hi))
    if f_lo == 0.0:
        return RootResult(lo, 0.0, 0, (lo, lo))
    if f_hi == 0.0:
        return RootResult(hi, 0.0, 0, (hi, hi))
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f={f_lo:.3e}, {f_hi:.3e}")

    # Stored endpoint values are scaled by the Illinois rule; keep true ones apart.
    s_lo, s_hi = f_lo, f_hi
    side = 0
    bisect_next = False
    iterations = 0
    while hi - lo > tol:
        if iterations >= max_iter:
            raise ConvergenceError(f"bracket width {hi - lo:.3e} after {iterations} iterations")
        iterations += 1
        width = hi - lo
        x = hi - s_hi * (hi - lo) / (s_hi - s_lo)
        if bisect_next or not lo < x < hi:
            x = 0.5 * (lo + hi)
        fx = float(fn(x))
        if fx == 0.0:
            lo = hi = x
            f_lo = f_hi = 0.0
            break
        if math.copysign(1.0, fx) == math.copysign(1.0, f_lo):
            lo, f_lo, s_lo = x, fx, fx
            if side == -1:
                s_hi *= 0.5
            side = -1
        else:
            hi, f_hi, s_hi = x, fx, fx
            if side == 1:
                s_lo *= 0.5
            side = 1
        bisect_next = hi - lo > 0.5 * width

    value, residual = (lo, abs(f_lo)) if abs(f_lo) <= abs(f_hi) else (hi, abs(f_hi))
    return RootResult(value, residual, iterations, (lo, hi))


def golden_max(fn, lo, hi, tol: float = 1e-12):
    """Maximize a unimodal function on ``[lo, hi]`` by golden-section search.

    ``lo`` and ``hi`` may be arrays; every element is searched independently
    and ``fn`` must accept arrays of that shape. The endpoints are compared
    against the interior estimate, so a maximum on the boundary is returned
    exactly.

    Returns:
        ``(x, fx)`` arrays (or floats for scalar input).
    """
    scalar = np.ndim(lo) == 0 and np.ndim(hi) == 0
    a = np.atleast_1d(np.asarray(lo, dtype=float)).copy()
    b = np.atleast_1d(np.asarray(hi, dtype=float)).copy()
    span = float(np.max(b - a)) if a.size else 0.0
    steps = 0 if span <= tol else int(math.ceil(math.log(tol / span) / math.log(INV_PHI)))
    h = b - a
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    fc, fd = fn(c), fn(d)
    for _ in range(steps):
        left = fc > fd
        h = INV_PHI * h
        # keep [a, d] when the left probe wins, else [c, b]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new_c = np.where(left, a + INV_PHI2 * h, d)
        new_d = np.where(left, c, a + INV_PHI * h)
        f_new = fn(np.where(left, new_c, new_d))
        fc, fd = np.where(left, f_new, fd), np.where(left, fc, f_new)
        c, d = new_c, new_d

    x = np.where(fc >= fd, c, d)
    fx = np.maximum(fc, fd)
    ends = (np.asarray(lo, dtype=float) * np.ones_like(x), np.asarray(hi, dtype=float) * np.ones_like(x))
    for e in ends:
        fe = fn(e)
        better = fe > fx
        x, fx = np.where(better, e, x), np.where(better, fe, fx)
    if scalar:
        return float(x[0]), float(fx[0])
    return x, fx
