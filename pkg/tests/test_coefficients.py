import math
from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose

from fracbdf import (FracParams, ParameterDomainError, bdf_g_coefficients,
                     bdf_l_coefficients, bdf_polynomial, series_oracle)

ALPHAS = (0.1, 0.3, 0.5, 0.7, 0.9, 1.0)


def test_bdf_polynomial_exact():
    assert [float(c) for c in bdf_polynomial(1)] == [1.0, -1.0]
    assert [float(c) for c in bdf_polynomial(2)] == [1.5, -2.0, 0.5]
    p6 = bdf_polynomial(6)
    assert p6[0] == sum(Fraction(1, j) for j in range(1, 7))
    assert p6[1] == -6
    assert p6[6] == Fraction(1, 6)


@pytest.mark.parametrize("k", range(1, 7))
def test_leading_weight_is_harmonic_power(k):
    h_k = float(sum(Fraction(1, j) for j in range(1, k + 1)))
    l = bdf_l_coefficients(k, 0.37, 0)
    assert l[0] == pytest.approx(h_k ** 0.37, rel=1e-15)
    assert l[0] > 0.0


def test_classical_bdf1_weights():
    assert_allclose(bdf_l_coefficients(1, 1.0, 4), [1.0, -1.0, 0.0, 0.0, 0.0],
                    atol=1e-15)


def test_classical_bdf2_weights():
    assert_allclose(bdf_l_coefficients(2, 1.0, 4), [1.5, -2.0, 0.5, 0.0, 0.0],
                    atol=1e-14)


def test_bdf3_closed_form_start():
    l = bdf_l_coefficients(3, 0.5, 1)
    l0 = (11.0 / 6.0) ** 0.5
    assert l[0] == pytest.approx(l0, rel=1e-15)
    assert l[1] == pytest.approx(-l0 * (18.0 / 11.0) * 0.5, rel=1e-15)


def test_binomial_series_oracle():
    # (1 - z)^(1/2): coefficients 1, -1/2, -1/8
    assert_allclose(series_oracle(1, 0.5, 2), [1.0, -0.5, -0.125], rtol=1e-14)
    assert_allclose(series_oracle(2, 1.0, 2), [1.5, -2.0, 0.5], atol=1e-15)


@pytest.mark.parametrize("k", range(1, 7))
@pytest.mark.parametrize("alpha", ALPHAS)
def test_recurrence_matches_oracle(k, alpha):
    rec = bdf_l_coefficients(k, alpha, 256)
    ora = series_oracle(k, alpha, 256)
    diff = np.max(np.abs(rec - ora) / np.maximum(1.0, np.abs(ora)))
    assert diff <= 1e-12


@pytest.mark.parametrize("k", range(1, 7))
def test_classical_limit_degree_k(k):
    l = bdf_l_coefficients(k, 1.0, k + 20)
    assert np.max(np.abs(l[k + 1:])) <= 1e-14


def test_bdf1_alternating_decreasing_magnitudes():
    l = bdf_l_coefficients(1, 0.5, 40)
    assert np.all(l[1:] < 0.0)          # -alpha, then products of positives
    assert np.all(np.diff(np.abs(l[1:])) < 0.0)


@pytest.mark.parametrize("k", range(1, 7))
@pytest.mark.parametrize("alpha", (0.1, 0.5, 0.9))
def test_partial_sums_decay(k, alpha):
    # the series sums to 0; partial sums decay like J^(-alpha), so only
    # monotonicity over the last decade is asserted, not a fixed magnitude
    l = bdf_l_coefficients(k, alpha, 512)
    s = np.abs(np.cumsum(l))
    tail = s[460:]
    assert np.all(np.diff(tail) <= 1e-15)
    assert tail[-1] < s[100]


def test_tempered_weights_damping():
    params = FracParams(alpha=0.5, sigma=1.0, tau=0.1)
    table = bdf_g_coefficients(3, params, 32)
    assert_allclose(table.g, table.l * np.exp(-0.1 * np.arange(33)), rtol=1e-13)
    assert table.g[1] == pytest.approx(math.exp(-0.1) * table.l[1], rel=1e-14)
    assert np.all(np.abs(table.g[1:]) < np.abs(table.l[1:]))
    assert table.g[0] == table.l[0]


def test_untempered_table_equals_l():
    table = bdf_g_coefficients(2, FracParams(alpha=1.0), 4)
    assert_allclose(table.g, [1.5, -2.0, 0.5, 0.0, 0.0], atol=1e-14)
    assert np.array_equal(table.g, table.l)
    assert table.J == 4


def test_tables_are_read_only():
    table = bdf_g_coefficients(2, FracParams(alpha=0.5), 4)
    with pytest.raises(ValueError):
        table.l[0] = 0.0


@pytest.mark.parametrize("bad", [0, 7, -1])
def test_invalid_order_rejected(bad):
    with pytest.raises(ParameterDomainError):
        bdf_l_coefficients(bad, 0.5, 4)


@pytest.mark.parametrize("bad", [0.0, -0.5, 1.5])
def test_invalid_alpha_rejected(bad):
    with pytest.raises(ParameterDomainError):
        bdf_l_coefficients(2, bad, 4)


def test_invalid_params_rejected():
    with pytest.raises(ParameterDomainError):
        FracParams(alpha=0.5, sigma=-1.0)
    with pytest.raises(ParameterDomainError):
        FracParams(alpha=0.5, tau=0.0)
    with pytest.raises(ParameterDomainError):
        bdf_l_coefficients(2, 0.5, -1)
