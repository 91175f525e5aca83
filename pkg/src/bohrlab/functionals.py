"""Left- and right-hand sides of the Bohr-type inequalities, one row per inequality.

Notation used in the row table below, for ``f = sum a_n z^n`` at radius ``r``:

    M    sum_{n>=0} |a_n| r^n              T    sum_{n>=1} |a_n| r^n
    Q    sum_{n>=1} |a_n|^2 r^(2n)         ref  (1/(1+|a0|) + r/(1-r)) Q
    x    S_r / pi                          X    S_r / (pi - S_r)
    F    |f(z)| on |z| = r                 D    |f(z) - a0| on |z| = r

Harmonic rows take ``F = |h(z)|`` and replace the majorant by the
co-majorant ``sum_{n>=1} (|a_n| + |b_n|) r^n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import constants
from .disk_series import (
    DEFAULT_POLICY,
    THETA_SAMPLES,
    DiskFunction,
    HalfPlane,
    Koebe,
    NORM_EDGE,
    area_odds,
    area_ratio,
    evaluate,
    majorant_tail,
    quadratic_sum,
    sup_deviation,
    sup_modulus,
    sup_norm,
)
from .errors import KindMismatchError
from .harmonic import HarmonicPair, co_majorant

__all__ = [
    "FunctionalSpec",
    "CATALOG_IDS",
    "ROWS",
    "lhs",
    "rhs",
    "margin",
    "stated_radius",
    "radius_provenance",
    "coefficient_envelope_subordination",
    "boundary_distance",
]


@dataclass(frozen=True)
class Row:
    kind: str  # "analytic" | "harmonic"
    needs: tuple = ()
    lam_id: str | None = None
    z_term: str | None = None  # "F", "F2", "D"
    description: str = ""


ROWS = {
    "classical": Row("analytic", description="M <= 1, r <= 1/3"),
    "rogosinski": Row("analytic", ("N",), z_term="F", description="F + sum_{n>=N} |a_n| r^n <= 1, r <= R_N"),
    "rogosinski-sq": Row("analytic", ("N",), z_term="F2", description="F^2 + sum_{n>=N} |a_n| r^n <= 1, r <= R'_N"),
    "area-16-9": Row("analytic", description="M + 16/9 x <= 1, r <= 1/3"),
    "area-9-8": Row("analytic", description="|a0|^2 + T + 9/8 x <= 1, r <= 1/2"),
    "area-sq": Row("analytic", ("lam",), "lambda_18", description="M + 16/9 x + lam x^2 <= 1, r <= 1/3"),
    "area-sq-f2": Row("analytic", ("lam",), "lambda_16", "F2", description="F^2 + T + 16/9 x + lam x^2 <= 1, r <= 1/3"),
    "odds-16-9": Row("analytic", description="M + 16/9 X <= 1, r <= 1/3"),
    "odds-9-8": Row("analytic", description="|a0|^2 + T + 9/8 X <= 1, r <= 1/2"),
    "refined": Row("analytic", description="M + ref + 8/9 x <= 1, r <= 1/3"),
    "refined-9-8": Row("analytic", description="|a0|^2 + T + ref + 9/8 x <= 1, r <= 1/(3-|a0|)"),
    "refined-dist": Row("analytic", z_term="D", description="M + ref + D <= 1, r <= 1/5"),
    "refined-dist-sq": Row("analytic", z_term="D", description="|a0|^2 + T + ref + D <= 1, r <= 1/3"),
    "refined-sq": Row("analytic", ("lam",), "lambda_147", description="M + ref + 8/9 x + lam x^2 <= 1, r <= 1/3"),
    "refined-sq-f2": Row(
        "analytic", ("lam",), "lambda_139", description="|a0|^2 + T + ref + 9/8 x + lam x^2 <= 1, r <= 1/(3-|a0|)"
    ),
    "a1": Row("analytic", ("lam",), "lambda_A1", "D", description="M + ref + D + 18/5 x + lam x^2 <= 1, r <= 1/5"),
    "a2": Row("analytic", ("lam",), "lambda_A2", description="M + ref + 8/9 X + lam X^2 <= 1, r <= 1/3"),
    "a3": Row("analytic", ("lam",), "lambda_A3", description="|a0|^2 + T + ref + 9/8 X + lam X^2 <= 1, r <= 1/(3-|a0|)"),
    "harm-i1": Row("harmonic", ("k",), z_term="F", description="|h(z)| + co-majorant <= ||h||, r <= r1(k)"),
    "harm-i2": Row("harmonic", ("k",), z_term="F2", description="|h(z)|^2 + co-majorant <= ||h||, r <= r2(k)"),
    "harm-j": Row("harmonic", ("k",), z_term="F", description="|h(z)| + co-majorant <= 1 for Re h <= 1, r <= (K+1)/(7K+3)"),
    "sub-convex": Row(
        "harmonic", ("k", "psi"), z_term="F", description="|h(z)| + co-majorant <= |psi(0)| + dist, r <= (K+1)/(7K+3)"
    ),
    "sub-univ": Row("harmonic", ("k", "psi"), z_term="F", description="|h(z)| + co-majorant <= |psi(0)| + dist, r <= r_u(k)"),
}

CATALOG_IDS = tuple(ROWS)

_DEFAULT_PSI = {"sub-convex": HalfPlane(), "sub-univ": Koebe()}


@dataclass(frozen=True)
class FunctionalSpec:
    """One catalog row plus the free parameters it needs.

    ``lam`` defaults to the recomputed sharp constant of the row and
    ``psi`` to the row's catalog map (half-plane map or Koebe function).
    ``z_policy`` is ``"sup_circle"`` or ``("fixed_angle", theta)``.
    """

    id: str
    lam: float | None = None
    N: int | None = None
    k: float | None = None
    psi: DiskFunction | None = None
    z_policy: object = "sup_circle"

    def __post_init__(self):
        if self.id not in ROWS:
            raise KeyError(f"unknown functional {self.id!r}; known: {', '.join(CATALOG_IDS)}")
        row = ROWS[self.id]
        if self.lam is None and row.lam_id is not None:
            object.__setattr__(self, "lam", constants.value(row.lam_id))
        if self.psi is None and self.id in _DEFAULT_PSI:
            object.__setattr__(self, "psi", _DEFAULT_PSI[self.id])
        for name, value in (("lam", self.lam), ("N", self.N), ("k", self.k), ("psi", self.psi)):
            # k may stay open: grid runs sweep it
            if name in row.needs and value is None and name != "k":
                raise ValueError(f"functional {self.id!r} needs parameter {name!r}")
            if name not in row.needs and value is not None:
                raise ValueError(f"functional {self.id!r} takes no parameter {name!r}")
        if self.N is not None and self.N < 1:
            raise ValueError("N must be >= 1")
        if self.k is not None and not 0.0 <= self.k <= 1.0:
            raise ValueError(f"k must lie in [0, 1], got {self.k}")
        if self.lam is not None and self.lam < 0:
            raise ValueError("lam must be nonnegative")
        pol = self.z_policy
        if pol != "sup_circle" and not (isinstance(pol, tuple) and len(pol) == 2 and pol[0] == "fixed_angle"):
            raise ValueError(f"unknown z_policy {pol!r}")

    @property
    def row(self) -> Row:
        return ROWS[self.id]

    def params(self) -> dict:
        out = {}
        if self.lam is not None:
            out["lambda"] = self.lam
        if self.N is not None:
            out["N"] = self.N
        if self.k is not None:
            out["k"] = self.k
        if self.psi is not None:
            out["psi"] = self.psi.describe()
        if self.z_policy != "sup_circle":
            out["z_policy"] = list(self.z_policy)
        return out


def _check_kind(spec: FunctionalSpec, subject):
    want = spec.row.kind
    if want == "analytic" and not isinstance(subject, DiskFunction):
        raise KindMismatchError(f"functional {spec.id!r} needs an analytic function, got {type(subject).__name__}")
    if want == "harmonic" and not isinstance(subject, HarmonicPair):
        raise KindMismatchError(f"functional {spec.id!r} needs a harmonic pair, got {type(subject).__name__}")


def _z_term(spec, f, r, policy):
    term = spec.row.z_term
    if spec.z_policy == "sup_circle":
        if term == "D":
            return sup_deviation(f, r, policy=policy)
        value = sup_modulus(f, r, policy=policy)
    else:
        z = np.asarray(r, dtype=float) * np.exp(1j * spec.z_policy[1])
        w = evaluate(f, z, policy)
        if term == "D":
            return np.abs(w - f.a0)
        value = np.abs(w)
    return value * value if term == "F2" else value


def lhs(spec: FunctionalSpec, subject, r, policy=DEFAULT_POLICY):
    """Left-hand side of the row at radius ``r`` (scalar or array).

    Raises:
        KindMismatchError: analytic row given a harmonic pair or vice versa.
        SingularInputError: ``S_r / pi >= 1`` in a row that uses ``X``.
    """
    _check_kind(spec, subject)
    r_arr = np.asarray(r, dtype=float)
    sid = spec.id

    if spec.row.kind == "harmonic":
        out = _z_term(spec, subject.h, r_arr, policy) + co_majorant(subject, r_arr, 1, policy)
        return float(out) if np.ndim(out) == 0 else out

    f = subject
    a = abs(f.a0)
    if sid in ("rogosinski", "rogosinski-sq"):
        out = _z_term(spec, f, r_arr, policy) + majorant_tail(f, r_arr, spec.N, policy)
        return float(out) if np.ndim(out) == 0 else out

    tail = majorant_tail(f, r_arr, 1, policy)
    squared_head = sid in ("area-9-8", "odds-9-8", "refined-9-8", "refined-dist-sq", "refined-sq-f2", "a3")
    out = (a * a if squared_head else a) + tail
    if sid == "area-sq-f2":
        out = _z_term(spec, f, r_arr, policy) + tail
    if sid.startswith("refined") or sid in ("a1", "a2", "a3"):
        out = out + (1 / (1 + a) + r_arr / (1 - r_arr)) * quadratic_sum(f, r_arr, 1, policy)
    if spec.row.z_term == "D":
        out = out + _z_term(spec, f, r_arr, policy)

    weight = {
        "area-16-9": 16 / 9, "area-9-8": 9 / 8, "area-sq": 16 / 9, "area-sq-f2": 16 / 9,
        "odds-16-9": 16 / 9, "odds-9-8": 9 / 8, "refined": 8 / 9, "refined-9-8": 9 / 8,
        "refined-sq": 8 / 9, "refined-sq-f2": 9 / 8, "a1": 18 / 5, "a2": 8 / 9, "a3": 9 / 8,
    }.get(sid)
    if weight is not None:
        odds = sid.startswith("odds") or sid in ("a2", "a3")
        x = area_odds(f, r_arr, policy) if odds else area_ratio(f, r_arr, policy)
        out = out + weight * x
        if spec.lam is not None:
            out = out + spec.lam * x * x
    return float(out) if np.ndim(out) == 0 else out


def boundary_distance(psi: DiskFunction, m: int = THETA_SAMPLES) -> float:
    """``dist(psi(0), boundary of psi(D))``.

    Catalog maps carry exact values (1/2 for the half-plane map, 1/4 for
    Koebe). Otherwise the minimum of ``|psi(rho e^{it}) - psi(0)|`` over an
    ``m``-point grid just inside the rim.
    """
    exact = getattr(psi, "boundary_distance", None)
    if exact is not None:
        return float(exact)
    theta = 2 * np.pi * np.arange(m) / m
    w = evaluate(psi, NORM_EDGE * np.exp(1j * theta))
    return float(np.min(np.abs(w - psi.a0)))


def rhs(spec: FunctionalSpec, subject) -> float:
    """Right-hand side: 1, ``||h||_inf``, or ``|psi(0)| + dist`` per row."""
    _check_kind(spec, subject)
    if spec.id in ("harm-i1", "harm-i2"):
        return sup_norm(subject.h)[0]
    if spec.id in ("sub-convex", "sub-univ"):
        return abs(spec.psi.a0) + boundary_distance(spec.psi)
    return 1.0


def margin(spec: FunctionalSpec, subject, r, policy=DEFAULT_POLICY):
    """``lhs - rhs``; nonpositive wherever the inequality holds."""
    return lhs(spec, subject, r, policy) - rhs(spec, subject)


def _a0_radius(a0):
    a = np.abs(np.asarray(a0, dtype=float))
    out = 1 / (3 - a)
    return float(out) if out.ndim == 0 else out


_FIXED = {
    "classical": 1 / 3, "area-16-9": 1 / 3, "area-9-8": 1 / 2, "area-sq": 1 / 3, "area-sq-f2": 1 / 3,
    "odds-16-9": 1 / 3, "odds-9-8": 1 / 2, "refined": 1 / 3, "refined-dist": 1 / 5, "refined-dist-sq": 1 / 3,
    "refined-sq": 1 / 3, "a1": 1 / 5, "a2": 1 / 3,
}


def _radius_lookup(spec):
    sid = spec.id
    if sid in _FIXED:
        return _FIXED[sid], "closed-form"
    if sid in ("refined-9-8", "refined-sq-f2", "a3"):
        return _a0_radius, "closed-form"
    if sid in ("rogosinski", "rogosinski-sq"):
        return constants.radius_info(sid, N=spec.N)
    if spec.k is None:
        raise ValueError(f"functional {spec.id!r} needs k for its radius")
    name = {"harm-i1": "r1", "harm-i2": "r2", "harm-j": "harm-j", "sub-convex": "sub-convex", "sub-univ": "ru"}[sid]
    return constants.radius_info(name, k=spec.k)


def stated_radius(spec: FunctionalSpec) -> float | Callable:
    """Radius up to which the row's inequality is claimed.

    Rows whose radius depends on ``|a0|`` return a vectorized callable
    ``a0 -> 1 / (3 - |a0|)``.
    """
    return _radius_lookup(spec)[0]


def radius_provenance(spec: FunctionalSpec) -> str:
    return _radius_lookup(spec)[1]


def coefficient_envelope_subordination(kind: str, n: int, dist: float) -> float:
    """Coefficient bound for ``h`` subordinate to ``psi``.

    ``2 dist`` when ``psi`` is convex, ``4 n dist`` when ``psi`` is only
    univalent.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if dist < 0:
        raise ValueError("dist must be nonnegative")
    if kind == "convex":
        return 2.0 * dist
    if kind == "univalent":
        return 4.0 * n * dist
    raise ValueError(f"kind must be 'convex' or 'univalent', got {kind!r}")


def harmonic_radius_limit() -> float:
    """``(K + 1) / (7K + 3)`` as ``K -> inf``."""
    return constants.radius("harm-j", K=math.inf)
