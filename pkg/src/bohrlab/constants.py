"""Sharp constants recomputed from their defining equations.

Roots are certified by :func:`find_root` on polynomial (or, for ``r_u``,
algebraic) equations; lambda values are rational formulas evaluated at the
recomputed roots. Printed reference values are only ever compared against,
never fed back into a computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from numpy.polynomial import Polynomial as Poly

from .extremal import FORMS
from .harmonic import k_from_K
from .search import RootResult, find_root

__all__ = [
    "ConstantEntry",
    "Reproduction",
    "CATALOG",
    "SCHEMA_VERSION",
    "find_root",
    "RootResult",
    "reproduce",
    "value",
    "radius",
    "radius_info",
    "table",
]

SCHEMA_VERSION = 1
ROOT_TOL = 1e-12

# The degree-12 numerator whose root in (0, 1) is the A3 extremal point.
Q12 = (55647, -212544, 296244, -200754, 61377, 5198, -10420, 972, 960, 408, -420, 100, -8)
Q12_CHECKSUM = (-3240, 810000)  # (Q(1), Q(-1))


@dataclass(frozen=True)
class ConstantEntry:
    id: str
    kind: str  # "root" | "formula_at_root" | "closed_form"
    label: str
    printed: float
    printed_digits: int
    tol: float
    defining: tuple | None = None  # ascending polynomial coefficients
    bracket: tuple[float, float] = (0.0, 1.0)
    root_id: str | None = None
    formula: Callable | None = field(default=None, compare=False)
    formula_text: str | None = None
    printed_formula: Callable | None = field(default=None, compare=False)
    boundary: str | None = None
    exact: Callable | None = field(default=None, compare=False)

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "label": self.label,
            "defining": list(self.defining) if self.defining is not None else self.formula_text,
            "root_of": self.root_id,
            "bracket": list(self.bracket),
            "printed": self.printed,
            "printed_digits": self.printed_digits,
            "tolerance": self.tol,
        }


@dataclass(frozen=True)
class Reproduction:
    id: str
    value: float
    printed: float
    delta: float
    tol: float
    passed: bool
    residual: float | None = None
    notes: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "id": self.id,
            "recomputed": self.value,
            "printed": self.printed,
            "delta": self.delta,
            "tolerance": self.tol,
            "pass": self.passed,
        }
        if self.residual is not None:
            out["residual"] = self.residual
        out.update(self.notes)
        return out


def _lam_a1(t):
    return (25 - t * t) * (11125 - 3810 * t - 2300 * t**2 - 30 * t**3 + 7 * t**4) / (2500 * (1 + t) ** 3 * (3 - 5 * t))


def _lam_a2(t):
    num = 27 + 18 * t + 27 * t**2 - 28 * t**3 - 15 * t**4 - 6 * t**5 - 7 * t**6
    return 32 * num / (81 * (1 + t) ** 3 * (3 - 5 * t))


def _lam_a3(t):
    num = Poly((-13581, 22491, -14085, -2584, 8565, -5130, 903, 636, -324, 40))(t)
    return num / (8 * (3 - t) ** 3 * (1 + t) ** 2 * (1 - 7 * t + 4 * t * t))


def _lam_area_sq(a):
    return 4 * (486 - 261 * a - 324 * a**2 + 2 * a**3 + 30 * a**4 + 3 * a**5) / (81 * (1 + a) ** 3 * (3 - 5 * a))


def _lam_area_sq_f2(a):
    return (-81 + 1044 * a + 54 * a**2 - 116 * a**3 - 5 * a**4) / (162 * (a + 1) ** 2 * (2 * a - 1))


def _lam_refined_sq(a):
    num = -2673 + 2502 * a + 2025 * a**2 - 332 * a**3 - 255 * a**4 + 6 * a**5 + 7 * a**6
    return num / (162 * (1 + a) ** 3 * (5 * a - 3))


def _lam_refined_sq_f2_printed(a):
    # As printed; does not reproduce the sharp value (see Reproduction notes).
    num = -80919 + 119556 * a - 57591 * a**2 + 11664 * a**3 - 1620 * a**4
    return num / (8 * (a - 3) ** 2 * (1 + a) ** 2 * (9 * a**3 - 33 * a**2 + 29 * a - 1))


def _entries():
    E = ConstantEntry
    return [
        E("alpha", "root", "A1 extremal point", 0.564084, 6, 1e-6,
          defining=(32500, -44845, -22435, -370, 14, -1, 1), bracket=(0.5, 0.59)),
        E("lambda_A1", "formula_at_root", "A1 sharp quadratic-area coefficient", 118.383318, 6, 1e-4,
          root_id="alpha", formula=_lam_a1, boundary="a1",
          formula_text="(25-t^2)(11125-3810t-2300t^2-30t^3+7t^4)/(2500(1+t)^3(3-5t))"),
        E("beta", "root", "A2 extremal point", 0.531615, 6, 1e-6,
          defining=(81, -126, -54, 14, -12, 2, 2, -2, -1), bracket=(0.5, 0.59)),
        E("lambda_A2", "formula_at_root", "A2 sharp quadratic-odds coefficient", 12.342793, 6, 1e-4,
          root_id="beta", formula=_lam_a2, boundary="a2",
          formula_text="32(27+18t+27t^2-28t^3-15t^4-6t^5-7t^6)/(81(1+t)^3(3-5t))"),
        E("gamma", "root", "A3 extremal point", 0.571317, 6, 1e-6, defining=Q12, bracket=(0.5, 0.65)),
        E("lambda_A3", "formula_at_root", "A3 sharp quadratic-odds coefficient", 10.787939, 6, 1e-4,
          root_id="gamma", formula=_lam_a3, boundary="a3",
          formula_text="N9(t)/(8(3-t)^3(1+t)^2(1-7t+4t^2))"),
        E("a_18", "root", "area-squared Bohr extremal point", 0.567284, 6, 1e-4,
          defining=(-405, 473, 402, 38, 3, 1), bracket=(0.5, 0.59)),
        E("lambda_18", "formula_at_root", "area-squared Bohr coefficient", 18.6095, 4, 1e-4,
          root_id="a_18", formula=_lam_area_sq, boundary="area-sq",
          formula_text="4(486-261a-324a^2+2a^3+30a^4+3a^5)/(81(1+a)^3(3-5a))"),
        E("a_16", "root", "|f(z)|^2 area-squared extremal point", 0.537869, 6, 1e-4,
          defining=(-513, 910, 80, 2, 1), bracket=(0.5, 0.59)),
        E("lambda_16", "formula_at_root", "|f(z)|^2 area-squared coefficient", 16.4618, 4, 1e-4,
          root_id="a_16", formula=_lam_area_sq_f2, boundary="area-sq-f2",
          formula_text="(-81+1044a+54a^2-116a^3-5a^4)/(162(a+1)^2(2a-1))"),
        E("a_147", "root", "refined area-squared extremal point", 0.587459, 6, 1e-4,
          defining=(1458, -1756, -1218, -40, 14, 4, 2), bracket=(0.55, 0.59)),
        E("lambda_147", "formula_at_root", "refined area-squared coefficient", 14.796883, 6, 1e-4,
          root_id="a_147", formula=_lam_refined_sq, boundary="refined-sq",
          formula_text="(-2673+2502a+2025a^2-332a^3-255a^4+6a^5+7a^6)/(162(1+a)^3(5a-3))"),
        E("a_139", "root", "refined |a0|^2 area-squared extremal point", 0.638302, 6, 1e-4,
          defining=(-524880, 2344464, -4244238, 4132944, -2361960, 798660, -154386, 17172, -1296),
          bracket=(0.6, 0.7)),
        E("lambda_139", "formula_at_root", "refined |a0|^2 area-squared coefficient", 13.966088, 6, 1e-4,
          root_id="a_139", formula=FORMS["refined-sq-f2"].sharp_lambda, boundary="refined-sq-f2",
          printed_formula=_lam_refined_sq_f2_printed,
          formula_text="(1 - base(a)) / weight(a) on f_a at r = 1/(3-a)"),
        E("sqrt17", "closed_form", "|f|+|f'||z| Bohr radius (sqrt(17)-3)/4", (math.sqrt(17) - 3) / 4, 16, 1e-12,
          defining=(-1, 3, 2), exact=lambda: (math.sqrt(17) - 3) / 4),
        E("rf_univ", "closed_form", "subordination Bohr-Rogosinski radius, univalent", 5 - 2 * math.sqrt(6), 16, 1e-12,
          defining=(1, -10, 1), exact=lambda: 5 - 2 * math.sqrt(6)),
        E("rf_conv", "closed_form", "subordination Bohr-Rogosinski radius, convex", 0.2, 16, 1e-12,
          defining=(-1, 5), exact=lambda: 1 / 5),
        E("bohr", "closed_form", "classical Bohr radius", 1 / 3, 16, 1e-12,
          defining=(-1, 3), exact=lambda: 1 / 3),
        E("rogosinski_1", "closed_form", "Bohr-Rogosinski radius N=1, sqrt(5)-2", math.sqrt(5) - 2, 16, 1e-12,
          defining=(-1, 4, 1), exact=lambda: math.sqrt(5) - 2),
        E("harm_r1_k1", "closed_form", "harmonic |h(z)| radius at k=1, (2 sqrt(3)-3)/3", (2 * math.sqrt(3) - 3) / 3, 16,
          1e-12, defining=(-1, 6, 3), exact=lambda: (2 * math.sqrt(3) - 3) / 3),
        E("harm_j_limit", "closed_form", "half-plane harmonic radius as K -> inf", 1 / 7, 16, 1e-12,
          defining=(-1, 7), exact=lambda: 1 / 7),
    ]


CATALOG: dict[str, ConstantEntry] = {e.id: e for e in _entries()}


@lru_cache(maxsize=None)
def _root(entry_id: str) -> RootResult:
    entry = CATALOG[entry_id]
    return find_root(Poly(entry.defining), entry.bracket, tol=ROOT_TOL)


def poly_scale(coeffs, t: float) -> float:
    """``sum |c_i| |t|^i``: the magnitude against which a polynomial residual is judged."""
    return float(Poly([abs(c) for c in coeffs])(abs(t)))


def value(entry_id: str) -> float:
    """Recomputed value of a catalog constant."""
    entry = _lookup(entry_id)
    if entry.kind == "formula_at_root":
        return float(entry.formula(_root(entry.root_id).value))
    return _root(entry_id).value


def _lookup(entry_id):
    try:
        return CATALOG[entry_id]
    except KeyError:
        raise KeyError(f"unknown constant {entry_id!r}; known: {', '.join(CATALOG)}") from None


def reproduce(entry_id: str) -> Reproduction:
    """Recompute one constant and compare it with its reference value.

    ``formula_at_root`` entries also report the lambda obtained from the
    boundary residual at the same root (an independent route) and the
    formula evaluated at the rounded reference root, which shows whether a
    reference lambda was itself derived from a rounded root.
    """
    entry = _lookup(entry_id)
    notes = {}
    residual = None
    if entry.kind == "formula_at_root":
        root = _root(entry.root_id).value
        val = float(entry.formula(root))
        form = FORMS[entry.boundary]
        notes["root"] = root
        notes["lambda_by_boundary_equality"] = float(form.sharp_lambda(root))
        printed_root = CATALOG[entry.root_id].printed
        notes["formula_at_printed_root"] = float(entry.formula(printed_root))
        if entry.printed_formula is not None:
            notes["printed_formula_at_root"] = float(entry.printed_formula(root))
    else:
        res = _root(entry_id)
        val = res.value
        residual = res.residual
        notes["iterations"] = res.iterations
        notes["bracket_final"] = list(res.bracket_final)
        notes["relative_residual"] = res.residual / poly_scale(entry.defining, val)
    delta = abs(val - entry.printed)
    return Reproduction(entry.id, val, entry.printed, delta, entry.tol, delta <= entry.tol, residual, notes)


def table() -> list[dict]:
    """The catalog as plain records, in catalog order."""
    return [e.as_dict() for e in CATALOG.values()]


# ------------------------------------------------------------------ radii


def _dilatation(params) -> float:
    if "k" in params and params["k"] is not None:
        k = float(params["k"])
        if not 0 <= k <= 1:
            raise ValueError(f"k must lie in [0, 1], got {k}")
        return k
    if "K" in params and params["K"] is not None:
        return k_from_K(float(params["K"]))
    raise ValueError("radius needs k or K")


def _need(params, name):
    if params.get(name) is None:
        raise ValueError(f"radius needs parameter {name!r}")
    return params[name]


def _certified(fn, lo=0.0, hi=1.0) -> tuple[float, str]:
    return find_root(fn, (lo, hi), tol=ROOT_TOL).value, "certified-root"


def _rogosinski(params):
    N = int(_need(params, "N"))
    if N < 1:
        raise ValueError("N must be >= 1")
    return _certified(lambda r: 2 * (1 + r) * r**N - (1 - r) ** 2)


def _rogosinski_sq(params):
    N = int(_need(params, "N"))
    if N < 1:
        raise ValueError("N must be >= 1")
    return _certified(lambda r: (1 + r) * r**N - (1 - r) ** 2)


def _r1(params):
    k = _dilatation(params)
    return _certified(lambda r: 2 * (k + 1) * r * (1 + r) - (1 - r) ** 2)


def _r2(params):
    k = _dilatation(params)
    return _certified(lambda r: (k + 1) * r * (1 + r) - (1 - r) ** 2)


def _ru(params):
    k = _dilatation(params)
    return _certified(lambda r: 8 * r + 4 * k * r * math.sqrt(1 + r) - (1 - r) ** 2)


def _half_plane(params):
    K = params.get("K")
    if K is None:
        k = _dilatation(params)
        return (1 / 7 if k == 1 else 1 / (5 + 2 * k)), "closed-form"
    K = float(K)
    if K < 1:
        raise ValueError("K must be >= 1")
    return (1 / 7 if math.isinf(K) else (K + 1) / (7 * K + 3)), "closed-form"


def _harm_bohr(params):
    K = params.get("K")
    if K is None:
        k = _dilatation(params)
        K = math.inf if k == 1 else (1 + k) / (1 - k)
    K = float(K)
    return (1 / 5 if math.isinf(K) else (K + 1) / (5 * K + 1)), "closed-form"


def _a0_dependent(params):
    a0 = abs(float(_need(params, "a0")))
    if a0 >= 1:
        raise ValueError("|a0| must be < 1")
    return 1 / (3 - a0), "closed-form"


_RADII = {
    "bohr": lambda p: (1 / 3, "closed-form"),
    "rogosinski": _rogosinski,
    "rogosinski-sq": _rogosinski_sq,
    "r1": _r1,
    "r2": _r2,
    "ru": _ru,
    "harm-j": _half_plane,
    "sub-convex": _half_plane,
    "harm-bohr": _harm_bohr,
    "refined-f2": _a0_dependent,
}


def radius_info(radius_id: str, **params) -> tuple[float, str]:
    """``(radius, provenance)`` with provenance ``closed-form`` or ``certified-root``."""
    try:
        fn = _RADII[radius_id]
    except KeyError:
        raise KeyError(f"unknown radius {radius_id!r}; known: {', '.join(_RADII)}") from None
    return fn(params)


def radius(radius_id: str, **params) -> float:
    """The radius named by ``radius_id``.

    Examples:
        >>> round(radius("r2", k=1), 12) == round(5 ** 0.5 - 2, 12)
        True
        >>> radius("harm-j", K=1)
        0.2
    """
    return radius_info(radius_id, **params)[0]


RADIUS_IDS = tuple(_RADII)
