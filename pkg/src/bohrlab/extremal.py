"""Closed forms of the quadratic-area functionals on ``f_a = (a - z)/(1 - a z)``.

For each sharp-lambda inequality the left-hand side at its critical radius,
evaluated on ``f_a``, splits as ``base(a) + lam * weight(a)``. The boundary
residual is ``base(a) - 1 + lam * weight(a)``; it vanishes at the extremal
``a`` exactly when ``lam`` is sharp. These expressions are written out by
hand and do not go through the series engine, so they serve as an
independent check of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class BoundaryForm:
    name: str
    radius: Callable
    base: Callable
    weight: Callable

    def residual(self, a, lam):
        return self.base(a) - 1 + lam * self.weight(a)

    def sharp_lambda(self, a):
        """The ``lam`` making the residual vanish at ``a``."""
        return (1 - self.base(a)) / self.weight(a)


def _a1_area(a):
    return 25 * (1 - a * a) ** 2 / (25 - a * a) ** 2


def _a2_odds(a):
    return 9 * (1 - a * a) ** 2 / (8 * (9 - a**4))


def _a3_odds(a):
    return (3 - a) ** 2 * (1 - a * a) ** 2 / ((4 - a) * (2 - a) * (9 - 6 * a + a * a - a**4))


def _third_area(a):
    return 9 * (1 - a * a) ** 2 / (9 - a * a) ** 2


def _f2_area(a):
    return (3 - a) ** 2 * (1 - a * a) ** 2 / (9 - 6 * a) ** 2


FORMS = {
    "a1": BoundaryForm(
        "a1",
        lambda a: 0.2 + 0 * np.asarray(a),
        lambda a: a + (1 - a * a) / 4 + (1 - a * a) / (5 - a) + 90 * (1 - a * a) ** 2 / (25 - a * a) ** 2,
        lambda a: _a1_area(a) ** 2,
    ),
    "a2": BoundaryForm(
        "a2",
        lambda a: 1 / 3 + 0 * np.asarray(a),
        lambda a: a + (1 - a * a) / 2 + (1 - a * a) ** 2 / (9 - a**4),
        lambda a: _a2_odds(a) ** 2,
    ),
    "a3": BoundaryForm(
        "a3",
        lambda a: 1 / (3 - np.asarray(a)),
        lambda a: a * a + (1 - a * a) / (2 - a) + 9 / 8 * _a3_odds(a),
        lambda a: _a3_odds(a) ** 2,
    ),
    "area-sq": BoundaryForm(
        "area-sq",
        lambda a: 1 / 3 + 0 * np.asarray(a),
        lambda a: a + (1 - a * a) / (3 - a) + 16 / 9 * _third_area(a),
        lambda a: _third_area(a) ** 2,
    ),
    "area-sq-f2": BoundaryForm(
        "area-sq-f2",
        lambda a: 1 / 3 + 0 * np.asarray(a),
        lambda a: ((3 * a + 1) / (3 + a)) ** 2 + (1 - a * a) / (3 - a) + 16 / 9 * _third_area(a),
        lambda a: _third_area(a) ** 2,
    ),
    "refined-sq": BoundaryForm(
        "refined-sq",
        lambda a: 1 / 3 + 0 * np.asarray(a),
        lambda a: a + (1 - a * a) / 2 + 8 / 9 * _third_area(a),
        lambda a: _third_area(a) ** 2,
    ),
    "refined-sq-f2": BoundaryForm(
        "refined-sq-f2",
        lambda a: 1 / (3 - np.asarray(a)),
        lambda a: a * a + (1 - a * a) / (2 - a) + 9 / 8 * _f2_area(a),
        lambda a: _f2_area(a) ** 2,
    ),
}
