"""Sense-preserving harmonic maps ``f = h + conj(g)`` with dilatation bound ``k``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .disk_series import DEFAULT_POLICY, DiskFunction, Moebius, Scaled, majorant_tail, quadratic_sum

LEMMA51_GRID = tuple(np.round(np.arange(0.1, 1.0, 0.1), 10))
LEMMA51_SLACK = -1e-12


def k_from_K(K: float) -> float:
    """Dilatation bound ``(K - 1) / (K + 1)``; ``K = inf`` maps to 1."""
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    return 1.0 if math.isinf(K) else (K - 1) / (K + 1)


def K_from_k(k: float) -> float:
    if not 0 <= k <= 1:
        raise ValueError(f"k must lie in [0, 1], got {k}")
    return math.inf if k == 1 else (1 + k) / (1 - k)


@dataclass(frozen=True)
class HarmonicPair:
    """``h`` and ``g`` with ``g(0) = 0`` and ``|g'| <= k |h'|``.

    Only the coefficient consequence of the dilatation bound is checked
    (``sum |b_n|^2 r^n <= k^2 sum |a_n|^2 r^n`` on a radius grid), and
    only when ``validate`` is true.
    """

    h: DiskFunction
    g: DiskFunction
    k: float
    validate: bool = True

    def __post_init__(self):
        if not 0.0 <= self.k <= 1.0:
            raise ValueError(f"dilatation bound must lie in [0, 1], got {self.k}")
        if abs(self.g.a0) > 0:
            raise ValueError("co-analytic part must have no constant term")
        if self.validate:
            worst = min(lemma51_margin(self, r) for r in LEMMA51_GRID)
            if worst < LEMMA51_SLACK:
                raise ValueError(f"coefficient dilatation check fails (margin {worst:.3e})")

    def describe(self) -> str:
        return f"harmonic(h={self.h.describe()}, g={self.g.describe()}, k={self.k})"


def extremal_pair(a: float, k: float, lam: complex = 1.0) -> HarmonicPair:
    """``h = (a - z)/(1 - a z)`` and ``g = lam k (h - a)``, ``|lam| = 1``.

    The constant term of ``lam k h`` is dropped so that ``g(0) = 0``; the
    dropped constant never enters a coefficient sum over ``n >= 1``.
    """
    if not math.isclose(abs(lam), 1.0, abs_tol=1e-12):
        raise ValueError(f"lam must be unimodular, got |lam|={abs(lam)}")
    h = Moebius(a)
    return HarmonicPair(h, Scaled(h, complex(lam) * k), k, validate=False)


def subordinate_pair(psi: DiskFunction, k: float, lam: complex = 1.0) -> HarmonicPair:
    """``h = psi`` with ``g' = lam k h'``; used for the subordination extremals."""
    return HarmonicPair(psi, Scaled(psi, complex(lam) * k), k, validate=False)


def co_majorant(F: HarmonicPair, r, N: int = 1, policy=DEFAULT_POLICY):
    """``sum_{n >= N} (|a_n| + |b_n|) r**n``."""
    if N < 1:
        raise ValueError("co-majorant starts at N >= 1")
    return majorant_tail(F.h, r, N, policy) + majorant_tail(F.g, r, N, policy)


def lemma51_margin(F: HarmonicPair, r, policy=DEFAULT_POLICY):
    """``k^2 sum |a_n|^2 r^n - sum |b_n|^2 r^n`` (nonnegative for valid pairs)."""
    s = np.sqrt(np.asarray(r, dtype=float))
    out = F.k**2 * quadratic_sum(F.h, s, 1, policy) - quadratic_sum(F.g, s, 1, policy)
    return float(out) if np.ndim(out) == 0 else out
