"""Power series on the unit disk with bounded truncation error.

Every family exposes exact coefficients and a geometric coefficient
envelope ``|c_n| <= scale * n**power * ratio**n`` (for ``n >= start``).
The envelope fixes the truncation order of every generic sum, so the
returned values carry an absolute error below ``TruncationPolicy.abs_tol``.
Families with closed forms (Moebius, half-plane, Koebe, and the scaled
or dilated versions of them) bypass summation entirely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, SingularInputError
from .search import golden_max

__all__ = [
    "TruncationPolicy",
    "DEFAULT_POLICY",
    "DiskFunction",
    "Moebius",
    "HalfPlane",
    "Koebe",
    "Polynomial",
    "BlaschkeProduct",
    "Explicit",
    "Scaled",
    "Dilated",
    "coeff",
    "evaluate",
    "sup_modulus",
    "sup_deviation",
    "sup_norm",
    "majorant_tail",
    "quadratic_sum",
    "area_ratio",
    "area_odds",
    "truncation_order",
]


@dataclass(frozen=True)
class TruncationPolicy:
    abs_tol: float = 1e-12
    max_order: int = 100_000


DEFAULT_POLICY = TruncationPolicy()

THETA_SAMPLES = 720
REFINE_CANDIDATES = 3
NORM_EDGE = 1 - 1e-6
ENVELOPE_FLOOR = 1e-12


class DiskFunction:
    """Analytic function on the unit disk given by its Taylor coefficients.

    Subclasses implement ``coeff_array`` and either declare a finite
    ``degree`` or return coefficient envelopes. The ``_closed_*`` hooks
    return ``None`` when no closed form is known.
    """

    family = "generic"
    bounded = False
    degree: int | None = None

    @property
    def a0(self) -> complex:
        return complex(self.coeff_array(1)[0])

    def coeff_array(self, n: int) -> np.ndarray:
        """First ``n`` coefficients as a complex array."""
        raise NotImplementedError

    def envelopes(self) -> list[tuple[float, float, int, int]]:
        """``(scale, ratio, power, start)`` tuples bounding ``|c_n|``."""
        return []

    def params(self) -> dict:
        return {}

    def describe(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.family}({inner})"

    def _closed_eval(self, z):
        return None

    def _closed_tail(self, r, N):
        return None

    def _closed_quad(self, r, N):
        return None

    def _closed_area(self, r):
        return None

    def _closed_sup(self, r):
        return None

    def _closed_sup_dev(self, r):
        return None

    def _closed_norm(self):
        return None


def _radius(r):
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0) or np.any(r_arr >= 1) or np.any(~np.isfinite(r_arr)):
        raise DomainError(f"radius must lie in [0, 1), got {r!r}")
    return r_arr


def _shape_like(value, r):
    value = np.asarray(value, dtype=float) * np.ones_like(np.asarray(r, dtype=float))
    return float(value) if value.ndim == 0 else value


# ---------------------------------------------------------------- families


@dataclass(frozen=True)
class Moebius(DiskFunction):
    """The disk automorphism ``(a - z) / (1 - a z)`` with real ``0 <= a < 1``."""

    a: float
    family = "moebius"
    bounded = True

    def __post_init__(self):
        if not 0.0 <= self.a < 1.0:
            raise ValueError(f"Moebius parameter must lie in [0, 1), got {self.a}")

    @property
    def a0(self) -> complex:
        return complex(self.a)

    def params(self):
        return {"a": self.a}

    def coeff_array(self, n):
        a = self.a
        out = np.empty(n, dtype=complex)
        if n:
            out[0] = a
        if n > 1:
            out[1:] = -(1 - a * a) * a ** np.arange(n - 1, dtype=float)
        return out

    def envelopes(self):
        if self.a == 0.0:
            return []
        # (1-a^2) a^(n-1) <= (1-a^2) q^(n-1) for q >= a; the floor avoids overflow
        q = max(self.a, ENVELOPE_FLOOR)
        return [((1 - self.a**2) / q, q, 0, 1)]

    @property
    def degree(self):
        return 1 if self.a == 0.0 else None

    def _closed_eval(self, z):
        return (self.a - z) / (1 - self.a * z)

    def _closed_tail(self, r, N):
        a = self.a
        body = (1 - a * a) * r / (1 - a * r)
        if N == 0:
            return a + body
        return body * (a * r) ** (N - 1) if N > 1 else body

    def _closed_quad(self, r, N):
        a = self.a
        body = (1 - a * a) ** 2 * r * r / (1 - a * a * r * r)
        if N == 0:
            return a * a + body
        return body * (a * r) ** (2 * (N - 1)) if N > 1 else body

    def _closed_area(self, r):
        a = self.a
        return (1 - a * a) ** 2 * r * r / (1 - a * a * r * r) ** 2

    def _closed_sup(self, r):
        return (self.a + r) / (1 + self.a * r)

    def _closed_sup_dev(self, r):
        return (1 - self.a**2) * r / (1 - self.a * r)

    def _closed_norm(self):
        return 1.0


@dataclass(frozen=True)
class HalfPlane(DiskFunction):
    """``1 / (1 - z)``, mapping the disk onto ``Re w > 1/2``."""

    family = "halfplane"
    boundary_distance = 0.5

    @property
    def a0(self) -> complex:
        return 1.0 + 0j

    def coeff_array(self, n):
        return np.ones(n, dtype=complex)

    def envelopes(self):
        return [(1.0, 1.0, 0, 0)]

    def _closed_eval(self, z):
        return 1 / (1 - z)

    def _closed_tail(self, r, N):
        return r**N / (1 - r)

    def _closed_quad(self, r, N):
        return r ** (2 * N) / (1 - r * r)

    def _closed_area(self, r):
        return r * r / (1 - r * r) ** 2

    def _closed_sup(self, r):
        return 1 / (1 - r)

    def _closed_sup_dev(self, r):
        return r / (1 - r)

    def _closed_norm(self):
        return math.inf


@dataclass(frozen=True)
class Koebe(DiskFunction):
    """The Koebe function ``z / (1 - z)**2``; its image omits ``(-inf, -1/4]``."""

    family = "koebe"
    boundary_distance = 0.25

    @property
    def a0(self) -> complex:
        return 0j

    def coeff_array(self, n):
        return np.arange(n, dtype=float).astype(complex)

    def envelopes(self):
        return [(1.0, 1.0, 1, 0)]

    def _closed_eval(self, z):
        return z / (1 - z) ** 2

    def _closed_tail(self, r, N):
        N = max(N, 1)
        return r**N * (N - (N - 1) * r) / (1 - r) ** 2

    def _closed_quad(self, r, N):
        q = r * r
        total = q * (1 + q) / (1 - q) ** 3
        for n in range(1, N):
            total = total - n * n * q**n
        return total

    def _closed_area(self, r):
        q = r * r
        return q * (1 + 4 * q + q * q) / (1 - q) ** 4

    def _closed_sup(self, r):
        return r / (1 - r) ** 2

    def _closed_sup_dev(self, r):
        return r / (1 - r) ** 2

    def _closed_norm(self):
        return math.inf


@dataclass(frozen=True)
class Polynomial(DiskFunction):
    """Finite power series; ``bounded`` flags membership in the unit ball."""

    coeffs: tuple
    bounded: bool = False
    family = "polynomial"

    def __post_init__(self):
        c = tuple(complex(v) for v in self.coeffs) or (0j,)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def params(self):
        return {"degree": self.degree}

    def coeff_array(self, n):
        out = np.zeros(n, dtype=complex)
        m = min(n, len(self.coeffs))
        out[:m] = self.coeffs[:m]
        return out


@lru_cache(maxsize=4096)
def _blaschke_coeffs(zeros: tuple, unimodular: complex, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=complex)
    out[0] = unimodular
    k = np.arange(1, n, dtype=float)
    for w in zeros:
        factor = np.empty(n, dtype=complex)
        factor[0] = w
        if n > 1:
            factor[1:] = -(1 - abs(w) ** 2) * np.conj(w) ** (k - 1)
        out = np.convolve(out, factor)[:n]
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class BlaschkeProduct(DiskFunction):
    """``u * prod (w - z) / (1 - conj(w) z)`` over the zeros ``w``.

    A single real zero ``a`` reproduces ``Moebius(a)`` exactly.
    """

    zeros: tuple
    unimodular: complex = 1.0 + 0j
    family = "blaschke"
    bounded = True

    def __post_init__(self):
        zs = tuple(complex(w) for w in self.zeros)
        if any(abs(w) >= 1 for w in zs):
            raise ValueError("Blaschke zeros must lie in the open unit disk")
        u = complex(self.unimodular)
        if not math.isclose(abs(u), 1.0, abs_tol=1e-12):
            raise ValueError(f"unimodular factor has modulus {abs(u)}")
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "unimodular", u)

    @property
    def degree(self):
        return len(self.zeros) if all(w == 0 for w in self.zeros) else None

    def params(self):
        return {"zeros": len(self.zeros)}

    def coeff_array(self, n):
        return _blaschke_coeffs(self.zeros, self.unimodular, n).copy()

    def envelopes(self):
        # |B| <= 1 on the disk gives |c_n| <= 1; a Cauchy estimate on a circle
        # of radius rho > 1 inside the pole-free disk is sharper for r near 1.
        out = [(1.0, 1.0, 0, 0)]
        m = max(abs(w) for w in self.zeros)
        if 0 < m < 1:
            m = max(m, ENVELOPE_FLOOR)
            rho = 0.5 * (1 + 1 / m)
            bound = 1.0
            for w in self.zeros:
                bound *= (rho + abs(w)) / (1 - abs(w) * rho)
            out.append((bound, 1 / rho, 0, 0))
        return out

    def _closed_eval(self, z):
        z = np.asarray(z, dtype=complex)
        out = self.unimodular * np.ones_like(z)
        for w in self.zeros:
            out = out * (w - z) / (1 - np.conj(w) * z)
        return out if out.ndim else complex(out)

    def _closed_norm(self):
        return 1.0


@dataclass(frozen=True)
class Explicit(DiskFunction):
    """Series from user coefficients.

    ``coeffs`` is either the complete (finite) coefficient list or a
    vectorized callable ``n -> c_n``; the callable form needs a tail
    envelope ``|c_n| <= tail_scale * tail_ratio**n``.
    """

    coeffs: Sequence[complex] | Callable
    tail_ratio: float = 0.0
    tail_scale: float = 0.0
    bounded: bool = False
    family = "explicit"

    def __post_init__(self):
        if not callable(self.coeffs):
            object.__setattr__(self, "coeffs", tuple(complex(v) for v in self.coeffs) or (0j,))
        elif not (0 <= self.tail_ratio < 1 and self.tail_scale >= 0):
            raise ValueError("callable coefficients need tail_ratio in [0, 1) and tail_scale >= 0")

    @property
    def degree(self):
        return None if callable(self.coeffs) else len(self.coeffs) - 1

    def coeff_array(self, n):
        if callable(self.coeffs):
            return np.asarray(self.coeffs(np.arange(n)), dtype=complex).reshape(n)
        out = np.zeros(n, dtype=complex)
        m = min(n, len(self.coeffs))
        out[:m] = self.coeffs[:m]
        return out

    def envelopes(self):
        return [(self.tail_scale, self.tail_ratio, 0, 0)]


@dataclass(frozen=True)
class Scaled(DiskFunction):
    """``factor * (base(z) - base(0))``: the co-analytic part of an extremal pair."""

    base: DiskFunction
    factor: complex
    family = "scaled"

    @property
    def a0(self) -> complex:
        return 0j

    @property
    def bounded(self):
        return False

    @property
    def degree(self):
        return self.base.degree

    def params(self):
        return {"base": self.base.describe(), "factor": complex(self.factor)}

    def coeff_array(self, n):
        out = self.factor * self.base.coeff_array(n)
        if n:
            out[0] = 0
        return out

    def envelopes(self):
        s = abs(self.factor)
        return [(scale * s, ratio, power, max(start, 1)) for scale, ratio, power, start in self.base.envelopes()]

    def _scaled(self, value, power=1):
        return None if value is None else abs(self.factor) ** power * value

    def _closed_eval(self, z):
        v = self.base._closed_eval(z)
        return None if v is None else self.factor * (v - self.base.a0)

    def _closed_tail(self, r, N):
        return self._scaled(self.base._closed_tail(r, max(N, 1)))

    def _closed_quad(self, r, N):
        return self._scaled(self.base._closed_quad(r, max(N, 1)), 2)

    def _closed_area(self, r):
        return self._scaled(self.base._closed_area(r), 2)

    def _closed_sup(self, r):
        return self._scaled(self.base._closed_sup_dev(r))

    def _closed_sup_dev(self, r):
        return self._scaled(self.base._closed_sup_dev(r))


@dataclass(frozen=True)
class Dilated(DiskFunction):
    """``base(c z)`` for real ``0 <= c <= 1``; subordinate to ``base``."""

    base: DiskFunction
    c: float
    family = "dilated"

    def __post_init__(self):
        if not 0.0 <= self.c <= 1.0:
            raise ValueError(f"dilation must lie in [0, 1], got {self.c}")

    @property
    def a0(self) -> complex:
        return self.base.a0

    @property
    def bounded(self):
        return self.base.bounded

    @property
    def boundary_distance(self):
        return getattr(self.base, "boundary_distance", None) if self.c == 1.0 else None

    @property
    def degree(self):
        return 0 if self.c == 0.0 else self.base.degree

    def params(self):
        return {"base": self.base.describe(), "c": self.c}

    def coeff_array(self, n):
        return self.base.coeff_array(n) * self.c ** np.arange(n, dtype=float)

    def envelopes(self):
        return [(s, ratio * self.c, p, st) for s, ratio, p, st in self.base.envelopes()]

    def _closed_eval(self, z):
        return self.base._closed_eval(self.c * np.asarray(z))

    def _closed_tail(self, r, N):
        return self.base._closed_tail(self.c * r, N)

    def _closed_quad(self, r, N):
        return self.base._closed_quad(self.c * r, N)

    def _closed_area(self, r):
        return self.base._closed_area(self.c * r)

    def _closed_sup(self, r):
        return self.base._closed_sup(self.c * r)

    def _closed_sup_dev(self, r):
        return self.base._closed_sup_dev(self.c * r)

    def _closed_norm(self):
        if self.c == 1.0:
            return self.base._closed_norm()
        return self.base._closed_sup(self.c)


# ------------------------------------------------------------- truncation

_KIND_EXPONENT = {"majorant": (1, 0), "quadratic": (2, 0), "area": (2, 1)}


def _tail_bound(scale, q, k, M):
    """Bound on ``scale * sum_{n >= M} n**k q**n``; ``inf`` when not summable."""
    if scale == 0:
        return 0.0
    if q == 0:
        return scale if (M == 0 and k == 0) else 0.0
    m = max(M, 1)
    theta = ((m + 1) / m) ** k * q
    if theta >= 1:
        return math.inf
    head = scale * (1.0 if (M == 0 and k == 0) else 0.0)
    return head + scale * m**k * q**m / (1 - theta)


def truncation_order(f: DiskFunction, r, kind: str = "majorant", policy: TruncationPolicy = DEFAULT_POLICY) -> int:
    """Number of leading coefficients needed for a sum of the given kind.

    ``kind`` is ``"majorant"`` (``|c_n| r^n``), ``"quadratic"``
    (``|c_n|^2 r^{2n}``) or ``"area"`` (``n |c_n|^2 r^{2n}``). For array
    ``r`` the largest radius decides.
    """
    if f.degree is not None:
        return f.degree + 1
    r_max = float(np.max(_radius(r))) if np.size(r) else 0.0
    sq, extra = _KIND_EXPONENT[kind]
    best = None
    for scale, ratio, power, start in f.envelopes():
        q = (ratio * r_max) ** sq
        k = sq * power + extra
        s = scale**sq
        if _tail_bound(s, q, k, policy.max_order) >= policy.abs_tol:
            continue
        lo = max(start, 1)
        hi = lo
        while _tail_bound(s, q, k, hi) >= policy.abs_tol:
            lo, hi = hi, min(2 * hi, policy.max_order)
        while lo < hi:
            mid = (lo + hi) // 2
            if _tail_bound(s, q, k, mid) < policy.abs_tol:
                hi = mid
            else:
                lo = mid + 1
        best = hi if best is None else min(best, hi)
    if best is None:
        raise ConvergenceError(f"no envelope of {f.describe()} reaches {policy.abs_tol} at r={r_max} within max_order")
    return best


def _weighted_sum(f, r, N, kind, policy):
    r_arr = _radius(r)
    M = truncation_order(f, r_arr, kind, policy)
    if N >= M:
        return _shape_like(0.0, r)
    c = np.abs(f.coeff_array(M))[N:]
    n = np.arange(N, M, dtype=float)
    if kind == "majorant":
        w, expo = c, n
    elif kind == "quadratic":
        w, expo = c * c, 2 * n
    else:
        w, expo = n * c * c, 2 * n
    rr = np.atleast_1d(r_arr)[:, None]
    with np.errstate(under="ignore"):
        powers = rr**expo
    out = powers @ w
    return float(out[0]) if r_arr.ndim == 0 else out


# -------------------------------------------------------------- operations


def coeff(f: DiskFunction, n: int) -> complex:
    """Exact coefficient of ``z**n``."""
    if n < 0:
        raise ValueError("coefficient index must be nonnegative")
    return complex(f.coeff_array(n + 1)[n])


def evaluate(f: DiskFunction, z, policy: TruncationPolicy = DEFAULT_POLICY):
    """Value of ``f`` at ``z`` (scalar or array) inside the open disk."""
    z_arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(z_arr) >= 1):
        raise DomainError("evaluation point outside the open unit disk")
    value = f._closed_eval(z_arr)
    if value is None:
        M = truncation_order(f, np.abs(z_arr).max(initial=0.0), "majorant", policy)
        value = np.polynomial.polynomial.polyval(z_arr, f.coeff_array(M))
    value = np.asarray(value, dtype=complex)
    return complex(value) if value.ndim == 0 else value


def _grid_sup(func, r, m):
    """Max of ``func(theta)`` per radius: ``m``-point grid plus golden refinement."""
    r1 = np.atleast_1d(np.asarray(r, dtype=float))
    theta = 2 * np.pi * np.arange(m) / m
    vals = func(r1[:, None], theta[None, :])
    left, right = np.roll(vals, 1, axis=1), np.roll(vals, -1, axis=1)
    peaks = np.where((vals >= left) & (vals >= right), vals, -np.inf)
    k = min(REFINE_CANDIDATES, m)
    idx = np.argsort(-peaks, axis=1, kind="stable")[:, :k]
    step = 2 * np.pi / m
    lo = theta[idx] - step
    hi = theta[idx] + step
    rr = np.broadcast_to(r1[:, None], idx.shape)
    _, best = golden_max(lambda t: func(rr, t), lo, hi, tol=1e-10)
    best = np.maximum(np.max(best, axis=1), np.max(vals, axis=1))
    return best


def sup_modulus(f: DiskFunction, r, mode: str = "exact", m: int = THETA_SAMPLES, policy: TruncationPolicy = DEFAULT_POLICY):
    """``max |f(z)|`` over the circle ``|z| = r``.

    ``mode="exact"`` uses the family's closed form when it has one and
    falls back to the grid otherwise; ``mode="grid"`` always samples ``m``
    equispaced angles and refines the best local maxima by golden-section
    search. Grid values are lower bounds of the true supremum.
    """
    r_arr = _radius(r)
    if mode == "exact":
        value = f._closed_sup(r_arr)
        if value is not None:
            return _shape_like(value, r)
    elif mode != "grid":
        raise ValueError(f"unknown mode {mode!r}")
    out = _grid_sup(lambda rr, t: np.abs(evaluate(f, rr * np.exp(1j * t), policy)), r_arr, m)
    return float(out[0]) if r_arr.ndim == 0 else out


def sup_deviation(f: DiskFunction, r, mode: str = "exact", m: int = THETA_SAMPLES, policy: TruncationPolicy = DEFAULT_POLICY):
    """``max |f(z) - f(0)|`` over ``|z| = r``; same modes as :func:`sup_modulus`."""
    r_arr = _radius(r)
    if mode == "exact":
        value = f._closed_sup_dev(r_arr)
        if value is not None:
            return _shape_like(value, r)
    elif mode != "grid":
        raise ValueError(f"unknown mode {mode!r}")
    a0 = f.a0
    out = _grid_sup(lambda rr, t: np.abs(evaluate(f, rr * np.exp(1j * t), policy) - a0), r_arr, m)
    return float(out[0]) if r_arr.ndim == 0 else out


def sup_norm(f: DiskFunction, m: int = THETA_SAMPLES) -> tuple[float, bool]:
    """``(||f||_inf, exact)``; non-closed-form families are sampled near the rim."""
    value = f._closed_norm()
    if value is not None:
        return float(value), True
    return float(sup_modulus(f, NORM_EDGE, mode="grid", m=m)), False


def majorant_tail(f: DiskFunction, r, N: int = 0, policy: TruncationPolicy = DEFAULT_POLICY):
    """``sum_{n >= N} |c_n| r**n``; ``N = 0`` gives the full majorant series."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    r_arr = _radius(r)
    value = f._closed_tail(r_arr, N)
    if value is not None:
        return _shape_like(value, r)
    return _weighted_sum(f, r_arr, N, "majorant", policy)


def quadratic_sum(f: DiskFunction, r, N: int = 1, policy: TruncationPolicy = DEFAULT_POLICY):
    """``sum_{n >= N} |c_n|**2 r**(2n)``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    r_arr = _radius(r)
    value = f._closed_quad(r_arr, N)
    if value is not None:
        return _shape_like(value, r)
    return _weighted_sum(f, r_arr, N, "quadratic", policy)


def area_ratio(f: DiskFunction, r, policy: TruncationPolicy = DEFAULT_POLICY):
    """Normalized area ``S_r / pi = sum_{n >= 1} n |c_n|**2 r**(2n)``."""
    r_arr = _radius(r)
    value = f._closed_area(r_arr)
    if value is not None:
        return _shape_like(value, r)
    return _weighted_sum(f, r_arr, 1, "area", policy)


def area_odds(f: DiskFunction, r, policy: TruncationPolicy = DEFAULT_POLICY):
    """``S_r / (pi - S_r)``, i.e. ``x / (1 - x)`` with ``x = area_ratio``.

    Raises:
        SingularInputError: if ``x >= 1`` anywhere.
    """
    x = np.asarray(area_ratio(f, r, policy))
    if np.any(x >= 1):
        raise SingularInputError(f"S_r/pi >= 1 for {f.describe()} at r={r!r}")
    out = x / (1 - x)
    return float(out) if out.ndim == 0 else out
