import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohrlab.disk_series import (
    DEFAULT_POLICY,
    BlaschkeProduct,
    Dilated,
    Explicit,
    HalfPlane,
    Koebe,
    Moebius,
    Polynomial,
    Scaled,
    TruncationPolicy,
    area_odds,
    area_ratio,
    coeff,
    evaluate,
    majorant_tail,
    quadratic_sum,
    sup_deviation,
    sup_modulus,
    sup_norm,
    truncation_order,
)
from bohrlab.errors import DomainError, SingularInputError

a_values = st.floats(0.0, 0.999)
radii = st.floats(0.0, 0.95)


def direct(coeffs, r, kind):
    c = np.abs(np.asarray(coeffs))
    n = np.arange(len(c))
    if kind == "majorant":
        return float(np.sum(c * r**n))
    if kind == "quadratic":
        return float(np.sum(c[1:] ** 2 * r ** (2 * n[1:])))
    return float(np.sum(n * c**2 * r ** (2 * n)))


def long_division(a, n):
    # (a - z) / (1 - a z) by series division
    num = np.zeros(n)
    num[:2] = [a, -1]
    out = np.zeros(n)
    for i in range(n):
        out[i] = num[i] + (a * out[i - 1] if i else 0.0)
    return out


# coeff

def test_coeff_moebius_a0():
    assert coeff(Moebius(0.5), 0) == 0.5


def test_coeff_moebius_second():
    assert abs(coeff(Moebius(0.5), 2) - (-0.375)) < 1e-15
    assert np.allclose(Moebius(0.5).coeff_array(12).real, long_division(0.5, 12))


def test_coeff_half_plane():
    for n in range(30):
        assert coeff(HalfPlane(), n) == 1


def test_coeff_negative_index():
    with pytest.raises(ValueError):
        coeff(Moebius(0.5), -1)


def test_coeff_koebe():
    assert [coeff(Koebe(), n).real for n in range(5)] == [0, 1, 2, 3, 4]


# evaluate

def test_eval_at_origin():
    assert evaluate(Moebius(0.5), 0) == 0.5


def test_eval_moebius():
    assert abs(evaluate(Moebius(0.5), -0.2) - 0.7 / 1.1) < 1e-12
    series = np.polynomial.polynomial.polyval(-0.2, Moebius(0.5).coeff_array(60))
    assert abs(evaluate(Moebius(0.5), -0.2) - series) < 1e-12


def test_eval_koebe():
    assert evaluate(Koebe(), 0.5) == 2.0


def test_eval_outside_disk():
    for z in (1, 1j, 1.5):
        with pytest.raises(DomainError):
            evaluate(Moebius(0.5), z)


def test_eval_generic_uses_truncation():
    f = Explicit(lambda n: 0.5**n, tail_ratio=0.5, tail_scale=1.0)
    assert abs(evaluate(f, 0.6) - 1 / (1 - 0.3)) < 1e-12


# sup_modulus

def test_sup_moebius_closed_form():
    assert abs(sup_modulus(Moebius(0.5), 0.2) - 0.7 / 1.1) < 1e-12


def test_sup_moebius_grid_oracle():
    grid = sup_modulus(Moebius(0.5), 0.2, mode="grid")
    theta = np.linspace(0, 2 * np.pi, 200001)
    dense = np.max(np.abs((0.5 - 0.2 * np.exp(1j * theta)) / (1 - 0.1 * np.exp(1j * theta))))
    assert abs(grid - dense) < 1e-9
    assert grid <= 0.7 / 1.1 + 1e-15


def test_sup_at_zero_radius():
    for f in (Moebius(0.3), BlaschkeProduct((0.2 + 0.1j, -0.4)), Polynomial([0.25, 0.1])):
        assert abs(sup_modulus(f, 0.0) - abs(f.a0)) < 1e-15


@given(a_values, radii)
def test_sup_schwarz_pick_equality(a, r):
    assert abs(sup_modulus(Moebius(a), r) - (r + a) / (1 + r * a)) < 1e-14


def test_sup_domain():
    with pytest.raises(DomainError):
        sup_modulus(Moebius(0.5), 1.0)


def test_sup_unknown_mode():
    with pytest.raises(ValueError):
        sup_modulus(Moebius(0.5), 0.5, mode="fast")


def test_sup_deviation_moebius_at_plus_r():
    a, r = 0.5, 0.2
    assert abs(sup_deviation(Moebius(a), r) - (1 - a * a) * r / (1 - a * r)) < 1e-14
    assert abs(sup_deviation(Moebius(a), r, mode="grid") - (1 - a * a) * r / (1 - a * r)) < 1e-10


def test_sup_norm():
    assert sup_norm(Moebius(0.4)) == (1.0, True)
    value, exact = sup_norm(Polynomial([0.5, 0.25]))
    assert not exact
    assert abs(value - 0.75) < 1e-5


# majorant_tail

def test_majorant_moebius():
    assert abs(majorant_tail(Moebius(0.5), 1 / 3, 0) - 0.8) < 1e-14
    assert abs(direct(Moebius(0.5).coeff_array(80), 1 / 3, "majorant") - 0.8) < 1e-14


def test_majorant_constant():
    assert majorant_tail(Polynomial([0.7]), 0.9, 1) == 0


def test_majorant_half_plane():
    assert majorant_tail(HalfPlane(), 0.5, 0) == 2.0


def test_majorant_domain():
    with pytest.raises(DomainError):
        majorant_tail(Moebius(0.5), 1.0)


def test_majorant_vectorized():
    r = np.linspace(0, 0.9, 7)
    out = majorant_tail(Moebius(0.3), r, 2)
    assert out.shape == r.shape
    assert np.allclose(out, [majorant_tail(Moebius(0.3), x, 2) for x in r])


# quadratic_sum

def test_quadratic_moebius():
    assert abs(quadratic_sum(Moebius(0.5), 0.5, 1) - 0.15) < 1e-15
    assert abs(direct(Moebius(0.5).coeff_array(80), 0.5, "quadratic") - 0.15) < 1e-14


def test_quadratic_constant():
    assert quadratic_sum(Polynomial([0.7]), 0.5, 1) == 0


def test_quadratic_explicit():
    assert abs(quadratic_sum(Explicit([0, 1]), 0.3, 1) - 0.09) < 1e-15


# area_ratio and area_odds

def test_area_moebius():
    assert abs(area_ratio(Moebius(0.5), 0.5) - 0.16) < 1e-15
    assert abs(direct(Moebius(0.5).coeff_array(80), 0.5, "area") - 0.16) < 1e-14


def test_area_constant():
    assert area_ratio(Polynomial([0.3]), 0.8) == 0


def test_odds_moebius():
    assert abs(area_odds(Moebius(0.5), 0.5) - 0.16 / 0.84) < 1e-14


def test_odds_constant():
    assert area_odds(Polynomial([0.3]), 0.8) == 0


def test_odds_singular():
    with pytest.raises(SingularInputError):
        area_odds(Koebe(), 0.9)


@given(a_values, st.floats(0.0, 1 / math.sqrt(2)))
def test_area_envelope_moebius_equality(a, r):
    bound = r * r * (1 - a * a) ** 2 / (1 - a * a * r * r) ** 2
    assert abs(area_ratio(Moebius(a), r) - bound) < 1e-14


@given(a_values, st.floats(0.0, 0.9))
def test_odds_envelope(a, r):
    bound = r * r * (1 - a * a) ** 2 / ((1 - r * r) * (1 - r * r * a**4))
    assert area_odds(Moebius(a), r) <= bound * (1 + 1e-12) + 1e-15


# family cross-checks

@given(st.floats(0.0, 0.95), radii)
@settings(max_examples=40)
def test_blaschke_single_zero_is_moebius(a, r):
    b, m = BlaschkeProduct((a,)), Moebius(a)
    assert abs(majorant_tail(b, r, 0) - majorant_tail(m, r, 0)) < 1e-11
    assert abs(quadratic_sum(b, r, 1) - quadratic_sum(m, r, 1)) < 1e-11
    assert abs(area_ratio(b, r) - area_ratio(m, r)) < 1e-11


def test_blaschke_bounded_on_circles():
    b = BlaschkeProduct((0.5j, -0.3 + 0.2j, 0.7), np.exp(0.4j))
    for r in (0.1, 0.5, 0.9):
        assert sup_modulus(b, r) <= 1.0


def test_blaschke_bad_zero():
    with pytest.raises(ValueError):
        BlaschkeProduct((1.0,))


def test_blaschke_bad_unimodular():
    with pytest.raises(ValueError):
        BlaschkeProduct((0.5,), 0.5)


def test_moebius_range():
    with pytest.raises(ValueError):
        Moebius(1.0)
    with pytest.raises(ValueError):
        Moebius(-0.1)


def test_moebius_a_zero_exact():
    f = Moebius(0.0)
    assert majorant_tail(f, 0.5, 0) == 0.5
    assert sup_modulus(f, 0.5) == 0.5


def test_koebe_closed_forms_against_sums():
    k = Koebe()
    c = k.coeff_array(400)
    for r in (0.2, 0.5):
        assert abs(majorant_tail(k, r, 3) - float(np.sum(np.abs(c[3:]) * r ** np.arange(3, 400)))) < 1e-12
        assert abs(area_ratio(k, r) - direct(c, r, "area")) < 1e-10


def test_scaled_and_dilated():
    m = Moebius(0.4)
    s = Scaled(m, 0.5j)
    assert s.a0 == 0
    assert abs(majorant_tail(s, 0.3, 1) - 0.5 * majorant_tail(m, 0.3, 1)) < 1e-15
    d = Dilated(HalfPlane(), 0.5)
    assert abs(majorant_tail(d, 0.4, 0) - 1 / (1 - 0.2)) < 1e-15
    assert d.boundary_distance is None
    assert Dilated(Koebe(), 1.0).boundary_distance == 0.25


def test_explicit_callable_needs_envelope():
    with pytest.raises(ValueError):
        Explicit(lambda n: n * 0.0, tail_ratio=1.0)


# truncation

def test_polynomial_never_truncates():
    assert truncation_order(Polynomial([1, 2, 3]), 0.99) == 3


def test_tail_bound_soundness():
    # one extra order changes each sum by less than the tolerance
    for f in (Moebius(0.9), BlaschkeProduct((0.8, 0.5j)), Explicit(lambda n: 0.7**n, 0.7, 1.0)):
        for r in (0.3, 0.7, 0.95):
            for kind in ("majorant", "quadratic", "area"):
                M = truncation_order(f, r, kind)
                c = np.abs(f.coeff_array(M + 1))
                extra = {"majorant": c[M] * r**M, "quadratic": (c[M] * r**M) ** 2, "area": M * (c[M] * r**M) ** 2}[kind]
                assert extra < DEFAULT_POLICY.abs_tol


def test_generic_sums_match_closed_forms():
    a = 0.6
    gen = Explicit(lambda n: np.where(n == 0, a, -(1 - a * a) * a ** np.maximum(n - 1, 0)), a, (1 - a * a) / a)
    m = Moebius(a)
    for r in (0.1, 0.5, 0.9):
        assert abs(majorant_tail(gen, r, 0) - majorant_tail(m, r, 0)) < 1e-12
        assert abs(quadratic_sum(gen, r, 1) - quadratic_sum(m, r, 1)) < 1e-12
        assert abs(area_ratio(gen, r) - area_ratio(m, r)) < 1e-12


def test_tighter_policy_changes_order():
    f = Moebius(0.8)
    assert truncation_order(f, 0.9, policy=TruncationPolicy(1e-15)) > truncation_order(f, 0.9)


@given(st.floats(0.0, 0.99), st.lists(st.floats(0.0, 0.94), min_size=2, max_size=6))
@settings(max_examples=40)
def test_sums_monotone_in_r(a, rs):
    rs = np.sort(np.asarray(rs))
    f = Moebius(a)
    for fn in (lambda r: majorant_tail(f, r, 0), lambda r: quadratic_sum(f, r, 1), lambda r: area_ratio(f, r)):
        vals = fn(rs)
        assert np.all(np.diff(vals) >= -1e-15)
