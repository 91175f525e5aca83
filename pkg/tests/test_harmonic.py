import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bohrlab.disk_series import Explicit, Moebius, Polynomial, Scaled, majorant_tail
from bohrlab.harmonic import HarmonicPair, K_from_k, co_majorant, extremal_pair, k_from_K, lemma51_margin


def test_k_from_K():
    assert k_from_K(1) == 0
    assert k_from_K(3) == 0.5
    assert k_from_K(math.inf) == 1.0
    assert K_from_k(0.5) == 3
    assert K_from_k(1.0) == math.inf
    with pytest.raises(ValueError):
        k_from_K(0.5)


def test_extremal_pair_conformal():
    F = extremal_pair(0.5, 0.0, 1)
    assert np.all(F.g.coeff_array(10) == 0)


def test_extremal_pair_b1():
    F = extremal_pair(0.5, 1.0, 1)
    assert abs(F.g.coeff_array(2)[1] - (-0.75)) < 1e-15
    assert F.g.a0 == 0


def test_extremal_pair_rotation():
    F = extremal_pair(0.5, 0.5, 1j)
    assert abs(F.g.coeff_array(3)[2] - 0.5j * (-0.375)) < 1e-15


def test_extremal_pair_lam_not_unimodular():
    with pytest.raises(ValueError):
        extremal_pair(0.5, 0.5, 0.5)


@given(st.floats(0.0, 0.999), st.floats(0.0, 1.0))
def test_extremal_pair_passes_dilatation_check(a, k):
    F = extremal_pair(a, k)
    HarmonicPair(F.h, F.g, k)  # validates


def test_co_majorant_extremal():
    F = extremal_pair(0.5, 1.0, 1)
    assert abs(co_majorant(F, 1 / 3, 1) - 0.6) < 1e-15


def test_co_majorant_conformal_is_tail():
    F = extremal_pair(0.3, 0.0)
    for r in (0.1, 0.6):
        assert co_majorant(F, r, 1) == majorant_tail(F.h, r, 1)


@given(st.floats(0.0, 0.999), st.floats(0.0, 1.0), st.floats(0.0, 0.95))
def test_co_majorant_closed_form(a, k, r):
    F = extremal_pair(a, k, np.exp(0.3j))
    expected = (1 + k) * (1 - a * a) * r / (1 - a * r)
    assert abs(co_majorant(F, r, 1) - expected) < 1e-13


def test_co_majorant_direct_sum():
    h = Moebius(0.7)
    F = extremal_pair(0.7, 0.4)
    n = np.arange(1, 400)
    a = np.abs(h.coeff_array(400))[1:]
    assert abs(co_majorant(F, 0.8, 1) - float(np.sum(1.4 * a * 0.8**n))) < 1e-12


def test_co_majorant_needs_positive_N():
    with pytest.raises(ValueError):
        co_majorant(extremal_pair(0.5, 0.5), 0.5, 0)


def test_co_majorant_monotone():
    rs = np.linspace(0, 0.9, 20)
    for k in (0.0, 0.5, 1.0):
        assert np.all(np.diff(co_majorant(extremal_pair(0.6, k), rs, 1)) >= 0)
    for r in (0.2, 0.7):
        values = [co_majorant(extremal_pair(0.6, k), r, 1) for k in (0, 0.25, 0.5, 1)]
        assert values == sorted(values)


def test_lemma51_zero_for_conformal():
    F = HarmonicPair(Moebius(0.4), Polynomial([0.0]), 0.0)
    for r in (0.1, 0.5, 0.9):
        assert lemma51_margin(F, r) == 0


def test_lemma51_zero_for_extremal():
    for k in (0.25, 1.0):
        F = extremal_pair(0.5, k)
        for r in (0.1, 0.5, 0.9):
            assert abs(lemma51_margin(F, r)) < 1e-12


def test_lemma51_half_slack_positive():
    h = Moebius(0.5)
    F = HarmonicPair(h, Scaled(h, 0.25), 0.5)
    assert lemma51_margin(F, 0.5) > 0


def test_pair_rejects_constant_term():
    with pytest.raises(ValueError):
        HarmonicPair(Moebius(0.5), Polynomial([0.1, 0.1]), 0.5)


def test_pair_rejects_large_g():
    h = Moebius(0.5)
    with pytest.raises(ValueError):
        HarmonicPair(h, Scaled(h, 0.9), 0.5)


def test_pair_rejects_bad_k():
    with pytest.raises(ValueError):
        HarmonicPair(Moebius(0.5), Polynomial([0.0]), 1.5)


def test_g_prime_equals_kz_h_prime_pair():
    # g' = k z h' gives b_n = k (n - 1) a_{n-1} / n, which obeys the lemma
    a, k = 0.6, 0.8
    h = Moebius(a)

    def b(n):
        n = np.asarray(n)
        prev = np.where(n >= 2, -(1 - a * a) * a ** np.maximum(n - 2, 0), 0.0)
        return np.where(n >= 2, k * (n - 1) * prev / np.maximum(n, 1), 0.0)

    g = Explicit(b, tail_ratio=a, tail_scale=k / a)
    F = HarmonicPair(h, g, k)
    assert min(lemma51_margin(F, r) for r in np.linspace(0.05, 0.95, 19)) >= -1e-12
