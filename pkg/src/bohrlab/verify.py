"""Grid verification, boundary-equality residuals and sharpness probes."""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import constants
from .disk_series import BlaschkeProduct, Dilated, Moebius, area_ratio, majorant_tail, quadratic_sum
from .errors import SingularInputError
from .extremal import FORMS
from .functionals import FunctionalSpec, lhs, rhs, stated_radius, radius_provenance
from .harmonic import HarmonicPair, extremal_pair, lemma51_margin, subordinate_pair
from .disk_series import Scaled
from .search import golden_max

__all__ = [
    "GridSpec",
    "FamilySpec",
    "VerificationReport",
    "ProbeResult",
    "verify_grid",
    "boundary_equality",
    "sharpness_probe",
    "envelope_suite",
    "branch_maximize",
    "thread_count",
    "PROBE_THRESHOLD",
]

A_MAX = 1 - 1e-4
PROBE_THRESHOLD = 1e-8
LEMMA32_EDGE = 1 / math.sqrt(2)
ENVELOPE_EDGE = 0.9
MOEBIUS_EQUALITY_TOL = 1e-10
BLASCHKE_MAX_MODULUS = 0.9

# Row -> catalog root at which the row is extremal (Moebius family).
EXTREMAL_ROOT = {
    "a1": "alpha",
    "a2": "beta",
    "a3": "gamma",
    "area-sq": "a_18",
    "area-sq-f2": "a_16",
    "refined-sq": "a_147",
    "refined-sq-f2": "a_139",
}
BOUNDARY_LAMBDA = {
    "a1": "lambda_A1",
    "a2": "lambda_A2",
    "a3": "lambda_A3",
    "area-sq": "lambda_18",
    "area-sq-f2": "lambda_16",
    "refined-sq": "lambda_147",
    "refined-sq-f2": "lambda_139",
}


def thread_count() -> int:
    """Worker count: ``BOHRLAB_THREADS`` if set, else the CPU count capped at 8."""
    env = os.environ.get("BOHRLAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"BOHRLAB_THREADS must be an integer, got {env!r}") from None
    return max(1, min(8, os.cpu_count() or 1))


def _pmap(fn, items, threads=None):
    threads = thread_count() if threads is None else threads
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class GridSpec:
    a_points: int = 400
    r_points: int = 400
    k_values: tuple = (0.0, 0.25, 0.5, 0.75, 1.0)
    tolerance: float = 1e-9
    include_extremal: bool = True

    def __post_init__(self):
        if self.a_points < 1 or self.r_points < 2:
            raise ValueError("grid needs a_points >= 1 and r_points >= 2")
        if not self.k_values or any(not 0 <= k <= 1 for k in self.k_values):
            raise ValueError("k_values must be a nonempty list inside [0, 1]")


@dataclass(frozen=True)
class FamilySpec:
    """``moebius``, ``blaschke`` (n samples of degree <= degree), ``harmonic-extremal`` or ``subordinate``."""

    name: str = "moebius"
    n: int = 1000
    degree: int = 5
    seed: int = 42

    def __post_init__(self):
        if self.name not in ("moebius", "blaschke", "harmonic-extremal", "subordinate"):
            raise ValueError(f"unknown family {self.name!r}")
        if self.n < 1 or self.degree < 1:
            raise ValueError("blaschke family needs n >= 1 and degree >= 1")

    def as_dict(self):
        out = {"name": self.name}
        if self.name == "blaschke":
            out.update(n=self.n, degree=self.degree, seed=self.seed)
        return out


@dataclass
class VerificationReport:
    spec_id: str
    params: dict
    family: dict
    grid: dict
    worst_margin: float
    argmax: dict
    passed: bool
    tolerance: float
    radius_provenance: str
    points: int
    singular_points: int = 0
    extras: dict = field(default_factory=dict)
    runtime: float = field(default=0.0, compare=False)

    def as_dict(self) -> dict:
        # runtime is left out so that reports are reproducible byte for byte
        return {
            "spec_id": self.spec_id,
            "params": self.params,
            "family": self.family,
            "grid": self.grid,
            "worst_margin": self.worst_margin,
            "argmax": self.argmax,
            "pass": self.passed,
            "tolerance": self.tolerance,
            "radius_provenance": self.radius_provenance,
            "points": self.points,
            "singular_points": self.singular_points,
            **({"extras": self.extras} if self.extras else {}),
        }


def random_blaschke(n: int, degree: int, seed: int) -> list[BlaschkeProduct]:
    """``n`` seeded Blaschke products of degree ``1..degree``, zero moduli below 0.9."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        d = int(rng.integers(1, degree + 1))
        rho = BLASCHKE_MAX_MODULUS * np.sqrt(rng.uniform(0, 1, d))
        phi = rng.uniform(0, 2 * np.pi, d)
        u = np.exp(1j * rng.uniform(0, 2 * np.pi))
        out.append(BlaschkeProduct(tuple(rho * np.exp(1j * phi)), u))
    return out


def _a_grid(spec: FunctionalSpec, grid: GridSpec) -> list[float]:
    pts = list(np.linspace(0.0, A_MAX, grid.a_points)) if grid.a_points > 1 else [0.0]
    if grid.include_extremal and spec.id in EXTREMAL_ROOT:
        pts.append(constants.value(EXTREMAL_ROOT[spec.id]))
    return sorted(set(float(a) for a in pts))


def _subjects(spec: FunctionalSpec, family: FamilySpec, grid: GridSpec):
    """``(label, subject)`` pairs; label is a dict of the family coordinates."""
    harmonic = spec.row.kind == "harmonic"
    if not harmonic:
        if family.name == "moebius":
            return [({"a": a}, Moebius(a)) for a in _a_grid(spec, grid)]
        if family.name == "blaschke":
            return [({"sample": i}, f) for i, f in enumerate(random_blaschke(family.n, family.degree, family.seed))]
        raise ValueError(f"family {family.name!r} does not fit analytic functional {spec.id!r}")
    k = spec.k
    if spec.id in ("sub-convex", "sub-univ") or family.name == "subordinate":
        if spec.psi is None:
            raise ValueError(f"family {family.name!r} needs a functional with psi")
        cs = np.linspace(0.0, 1.0, grid.a_points) if grid.a_points > 1 else [1.0]
        return [({"c": float(c), "k": k}, subordinate_pair(Dilated(spec.psi, float(c)), k)) for c in cs]
    if family.name in ("harmonic-extremal", "moebius"):
        return [({"a": a, "k": k}, extremal_pair(a, k)) for a in _a_grid(spec, grid)]
    if family.name == "blaschke":
        return [
            ({"sample": i, "k": k}, HarmonicPair(f, Scaled(f, k), k, validate=False))
            for i, f in enumerate(random_blaschke(family.n, family.degree, family.seed))
        ]
    raise ValueError(f"family {family.name!r} does not fit harmonic functional {spec.id!r}")


def _radius_for(spec, subject, radius):
    if callable(radius):
        a0 = subject.h.a0 if isinstance(subject, HarmonicPair) else subject.a0
        return float(radius(abs(a0)))
    return float(radius)


def _subject_worst(spec, subject, r_max, r_points):
    """``(worst margin, r at worst, singular count)`` for one subject."""
    r = np.linspace(0.0, r_max, r_points)
    bound = rhs(spec, subject)
    try:
        m = np.asarray(lhs(spec, subject, r)) - bound
        singular = 0
    except SingularInputError:
        m = np.full(r.shape, -np.inf)
        singular = 0
        for i, ri in enumerate(r):
            try:
                m[i] = lhs(spec, subject, ri) - bound
            except SingularInputError:
                singular += 1
    i = int(np.argmax(m))
    return float(m[i]), float(r[i]), singular


def verify_grid(spec: FunctionalSpec, family: FamilySpec | str = "moebius", grid: GridSpec | None = None,
                threads: int | None = None) -> VerificationReport | list[VerificationReport]:
    """Evaluate ``lhs - rhs`` over family members and ``r`` in ``[0, stated radius]``.

    Harmonic rows without an explicit ``k`` are run once per value in
    ``grid.k_values`` and a list of reports is returned.

    The worst margin is reduced in list order with ties broken by the
    first (lexicographically smallest) coordinate, so the report does not
    depend on the number of worker threads.
    """
    grid = grid or GridSpec()
    family = FamilySpec(family) if isinstance(family, str) else family
    if spec.row.kind == "harmonic" and spec.k is None:
        return [verify_grid(replace(spec, k=float(k)), family, grid, threads) for k in grid.k_values]

    t0 = time.perf_counter()
    radius = stated_radius(spec)
    subjects = _subjects(spec, family, grid)
    results = _pmap(lambda item: _subject_worst(spec, item[1], _radius_for(spec, item[1], radius), grid.r_points),
                    subjects, threads)
    worst, where, singular = -math.inf, None, 0
    for (label, _), (m, r, s) in zip(subjects, results):
        singular += s
        if m > worst:
            worst, where = m, dict(label, r=r)
    if where is not None:
        theta = spec.z_policy[1] if spec.z_policy != "sup_circle" else None
        where["theta"] = theta
    grid_info = {
        "a_points": grid.a_points,
        "r_points": grid.r_points,
        "r_max": "1/(3-|a0|)" if callable(radius) else radius,
        "include_extremal": grid.include_extremal,
    }
    return VerificationReport(
        spec.id, spec.params(), family.as_dict(), grid_info, worst, where or {}, worst <= grid.tolerance,
        grid.tolerance, radius_provenance(spec), len(subjects) * grid.r_points, singular,
        runtime=time.perf_counter() - t0,
    )


# ---------------------------------------------------------- boundary equality


def boundary_equality(row_id: str, use_printed: bool = False) -> float:
    """``|base(a) - 1 + lam weight(a)|`` at the extremal root of a sharp row.

    The closed forms in :mod:`bohrlab.extremal` are evaluated at the
    recomputed root and constant, or at the reference values when
    ``use_printed`` is true.
    """
    if row_id not in FORMS:
        raise KeyError(f"no boundary form for {row_id!r}; known: {', '.join(FORMS)}")
    root_id, lam_id = EXTREMAL_ROOT[row_id], BOUNDARY_LAMBDA[row_id]
    if use_printed:
        a, lam = constants.CATALOG[root_id].printed, constants.CATALOG[lam_id].printed
    else:
        a, lam = constants.value(root_id), constants.value(lam_id)
    return float(abs(FORMS[row_id].residual(a, lam)))


# --------------------------------------------------------------- sharpness


@dataclass(frozen=True)
class ProbeResult:
    spec_id: str
    perturbation: dict
    violated: bool
    witness: dict
    threshold: float = PROBE_THRESHOLD

    def as_dict(self):
        return {
            "spec_id": self.spec_id,
            "perturbation": self.perturbation,
            "violated": self.violated,
            "witness": self.witness,
            "threshold": self.threshold,
        }


def _witness_family(spec):
    """Map a parameter ``t`` in ``[0, 1)`` (or ``[0, 1]``) to a witness subject."""
    if spec.row.kind == "analytic":
        return (lambda t: Moebius(t)), "a", 1 - 1e-9
    if spec.id in ("sub-convex", "sub-univ"):
        return (lambda t: subordinate_pair(Dilated(spec.psi, t), spec.k)), "c", 1.0
    return (lambda t: extremal_pair(t, spec.k)), "a", 1 - 1e-9


def sharpness_probe(spec: FunctionalSpec, lambda_scale: float | None = None, radius_excess: float | None = None,
                    a_to_one=None) -> ProbeResult:
    """Look for a point violating the row once its constant or radius is pushed out.

    Exactly one of ``lambda_scale`` (multiplies ``lam``) or
    ``radius_excess`` (added to the stated radius) is used; ``radius_excess=0``
    probes the unperturbed row. The witness parameter runs over a 1e-3
    grid, the points ``1 - 10**-j`` (``j = 1..8``, or ``a_to_one``) and the
    row's extremal root; the best point is then refined on a 1e-4 grid and
    by golden-section search.
    """
    if (lambda_scale is None) == (radius_excess is None):
        raise ValueError("give exactly one of lambda_scale or radius_excess")
    if lambda_scale is not None:
        if spec.lam is None:
            raise ValueError(f"functional {spec.id!r} has no lambda to scale")
        if lambda_scale <= 1:
            raise ValueError("lambda_scale must exceed 1")
        probe_spec = replace(spec, lam=spec.lam * lambda_scale)
        excess = 0.0
        perturbation = {"lambda_scale": lambda_scale}
    else:
        if radius_excess < 0:
            raise ValueError("radius_excess must be nonnegative")
        probe_spec, excess = spec, float(radius_excess)
        perturbation = {"radius_excess": excess}
    if spec.row.kind == "harmonic" and spec.k is None:
        raise ValueError("harmonic probes need k")

    radius = stated_radius(spec)
    make, name, t_hi = _witness_family(spec)

    def score(t):
        subject = make(float(t))
        r = _radius_for(spec, subject, radius) + excess
        if r >= 1:
            return -math.inf, r
        try:
            return float(lhs(probe_spec, subject, r) - rhs(probe_spec, subject)), r
        except SingularInputError:
            return -math.inf, r

    ends = [1 - 10.0**-j for j in range(1, 9)] if a_to_one is None else [float(a) for a in a_to_one]
    cands = list(np.round(np.arange(0.0, 1.0, 1e-3), 12)) + [t for t in ends if 0 <= t <= t_hi]
    if t_hi == 1.0:
        cands.append(1.0)
    if spec.id in EXTREMAL_ROOT:
        cands.append(constants.value(EXTREMAL_ROOT[spec.id]))
    cands = sorted(set(float(t) for t in cands))
    scores = [score(t)[0] for t in cands]
    best = int(np.argmax(scores))
    t_best, m_best = cands[best], scores[best]

    lo, hi = max(0.0, t_best - 1e-3), min(t_hi, t_best + 1e-3)
    for t in np.linspace(lo, hi, 21):
        m = score(t)[0]
        if m > m_best:
            t_best, m_best = float(t), m
    lo, hi = max(0.0, t_best - 1e-4), min(t_hi, t_best + 1e-4)
    if hi > lo:
        t, m = golden_max(np.vectorize(lambda s: score(s)[0]), lo, hi, tol=1e-12)
        if m > m_best:
            t_best, m_best = t, m

    r_best = score(t_best)[1]
    witness = {name: t_best, "r": r_best, "margin": m_best}
    if spec.k is not None:
        witness["k"] = spec.k
    return ProbeResult(spec.id, perturbation, bool(m_best > PROBE_THRESHOLD), witness)


# ---------------------------------------------------------------- envelopes


def _lemma_sides(lemma, f, r):
    """``(value, envelope)`` arrays for one bounded function."""
    a = abs(f.a0)
    if lemma == "L32":
        return area_ratio(f, r), r * r * (1 - a * a) ** 2 / (1 - a * a * r * r) ** 2
    if lemma == "L34":
        big = r * (1 - a * a) / (1 - r * a)
        small = r * math.sqrt(1 - a * a) / np.sqrt(1 - r * r)
        return majorant_tail(f, r, 1), np.where(a >= r, big, small)
    if lemma == "L35":
        value = majorant_tail(f, r, 1) + (1 / (1 + a) + r / (1 - r)) * quadratic_sum(f, r, 1)
        return value, (1 - a * a) * r / (1 - r)
    raise ValueError(f"unknown lemma {lemma!r}")


def envelope_suite(lemma: str, family: FamilySpec | str = "blaschke", grid: GridSpec | None = None,
                   threads: int | None = None) -> VerificationReport:
    """Worst ``value - envelope`` of a coefficient lemma over a family.

    ``L32`` (area bound, ``r <= 1/sqrt(2)``), ``L34`` and ``L35`` (majorant
    bounds, ``r <= 0.9``) take bounded analytic families; ``L51``
    (dilatation bound on coefficients) takes harmonic pairs. The Moebius
    family is always run alongside for ``L32`` and the largest deviation
    from equality is recorded in ``extras``.
    """
    grid = grid or GridSpec(r_points=60)
    family = FamilySpec(family) if isinstance(family, str) else family
    t0 = time.perf_counter()
    edge = LEMMA32_EDGE if lemma == "L32" else ENVELOPE_EDGE
    r = np.linspace(0.0, edge, grid.r_points)
    extras = {}

    if lemma == "L51":
        pairs = []
        for k in grid.k_values:
            for a in np.linspace(0.0, A_MAX, grid.a_points):
                pairs.append(({"a": float(a), "k": k, "g": "extremal"}, extremal_pair(float(a), k)))
                h = Moebius(float(a))
                pairs.append(({"a": float(a), "k": k, "g": "half"}, HarmonicPair(h, Scaled(h, k / 2), k, validate=False)))
            if family.name == "blaschke":
                for i, f in enumerate(random_blaschke(family.n, family.degree, family.seed)):
                    lam = np.exp(2j * np.pi * i / family.n)
                    pairs.append(({"sample": i, "k": k, "g": "extremal"}, HarmonicPair(f, Scaled(f, lam * k), k, validate=False)))
        r = np.linspace(0.0, ENVELOPE_EDGE, grid.r_points)

        def one(item):
            m = -np.asarray(lemma51_margin(item[1], r))
            i = int(np.argmax(m))
            return float(m[i]), float(r[i])

        results = _pmap(one, pairs, threads)
        extremal = [m for (lab, _), (m, _) in zip(pairs, results) if lab["g"] == "extremal"]
        extras["extremal_max_abs_margin"] = float(max(abs(m) for m in extremal))
        labels = [lab for lab, _ in pairs]
        tolerance = 1e-12
    else:
        if family.name == "moebius":
            subjects = [({"a": float(a)}, Moebius(float(a))) for a in np.linspace(0.0, A_MAX, grid.a_points)]
        elif family.name == "blaschke":
            subjects = [({"sample": i}, f) for i, f in enumerate(random_blaschke(family.n, family.degree, family.seed))]
            subjects += [({"a": float(a)}, Moebius(float(a))) for a in np.linspace(0.0, A_MAX, grid.a_points)]
        else:
            raise ValueError(f"lemma {lemma} needs a bounded analytic family, got {family.name!r}")

        def one(item):
            value, bound = _lemma_sides(lemma, item[1], r)
            m = np.asarray(value) - bound
            i = int(np.argmax(m))
            return float(m[i]), float(r[i]), float(np.max(np.abs(m)))

        results = _pmap(one, subjects, threads)
        if lemma == "L32":
            dev = max(d for (lab, _), (_, _, d) in zip(subjects, results) if "a" in lab)
            extras["moebius_equality_max_deviation"] = dev
            extras["moebius_equality_pass"] = dev <= MOEBIUS_EQUALITY_TOL
        labels = [lab for lab, _ in subjects]
        results = [(m, rr) for m, rr, _ in results]
        tolerance = grid.tolerance

    worst, where = -math.inf, {}
    for lab, (m, rr) in zip(labels, results):
        if m > worst:
            worst, where = m, dict(lab, r=rr)
    passed = worst <= tolerance and extras.get("moebius_equality_pass", True)
    return VerificationReport(
        lemma, {}, family.as_dict(), {"a_points": grid.a_points, "r_points": grid.r_points, "r_max": edge},
        worst, where, bool(passed), tolerance, "closed-form", len(labels) * grid.r_points, 0, extras,
        runtime=time.perf_counter() - t0,
    )


# ---------------------------------------------------------- branch maximum

A1_STAR_PRINTED = 0.989215


def a1_star(t, lam=None):
    """Small-``|a0|`` branch bound of the A1 functional at ``r = 1/5``."""
    lam = constants.value("lambda_A1") if lam is None else lam
    t = np.asarray(t, dtype=float)
    u = (1 - t * t) ** 2 / (25 - t * t) ** 2
    return t + (1 - t * t) / 4 + 1 / math.sqrt(24) + 90 * u + lam * (25 * u) ** 2


def branch_maximize(branch_id: str = "A1_star", points: int = 10001) -> dict:
    """Maximize the branch bound over ``t in [0, 1/5]`` (dense grid, then golden section)."""
    if branch_id != "A1_star":
        raise KeyError(f"unknown branch {branch_id!r}")
    t = np.linspace(0.0, 0.2, points)
    v = a1_star(t)
    i = int(np.argmax(v))
    lo, hi = t[max(i - 1, 0)], t[min(i + 1, points - 1)]
    x, fx = golden_max(a1_star, lo, hi)
    if v[i] >= fx:
        x, fx = float(t[i]), float(v[i])
    return {
        "id": branch_id,
        "t_star": float(x),
        "value": float(fx),
        "printed": A1_STAR_PRINTED,
        "pass": bool(fx < 1),
    }
