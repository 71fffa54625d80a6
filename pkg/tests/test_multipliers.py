from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose

from fracbdf import (FracParams, ParameterDomainError, bdf_g_coefficients,
                     multiplier_set, q_coefficients, reciprocal_series)
from fracbdf.multipliers import _closed_form_reciprocal


def test_multiplier_tables_exact():
    assert multiplier_set(1).mu == ()
    assert multiplier_set(2).mu == ()
    assert multiplier_set(3).mu == (Fraction(1, 2),)
    assert multiplier_set(4).mu == (Fraction(1, 2),)
    assert multiplier_set(5).mu == (Fraction(1), Fraction(-1, 4))
    assert multiplier_set(6).mu == (Fraction(43, 30), Fraction(-2, 3), Fraction(1, 10))


@pytest.mark.parametrize("k", (3, 4, 5, 6))
@pytest.mark.parametrize("st", (0.0, 0.5))
def test_mu_roots_outside_unit_disk(k, st):
    roots = multiplier_set(k).roots(sigma=st, tau=1.0)
    assert np.all(np.abs(roots) > 1.0)


def test_bdf6_roots_closed_form():
    roots = np.sort(np.abs(multiplier_set(6).roots()))
    assert_allclose(roots, [5.0 / 3.0, 2.0, 3.0], rtol=1e-12)


def test_reciprocal_closed_forms_at_reference_points():
    assert _closed_form_reciprocal(6, 0) == 1
    assert _closed_form_reciprocal(6, 1) == Fraction(43, 30)
    assert _closed_form_reciprocal(5, 2) == Fraction(3, 4)
    assert _closed_form_reciprocal(3, 3) == Fraction(1, 8)


@pytest.mark.parametrize("k", (1, 2, 3, 4, 5, 6))
@pytest.mark.parametrize("st", (0.0, 0.3))
def test_reciprocal_series_inverts_mu(k, st):
    params = FracParams(alpha=0.5, sigma=st, tau=1.0)
    series = reciprocal_series(k, params, 256)
    assert series.c[0] == 1.0
    mu_poly = multiplier_set(k).zeta_polynomial(sigma=st, tau=1.0)
    conv = np.convolve(series.c, mu_poly)[:257]
    expected = np.zeros(257)
    expected[0] = 1.0
    assert np.max(np.abs(conv - expected)) <= 1e-13


def test_q_first_coefficients():
    params = FracParams(alpha=0.5, sigma=0.4, tau=0.25)
    table = bdf_g_coefficients(3, params, 16)
    q = q_coefficients(table, multiplier_set(3), 16).q
    assert q[0] == table.g[0]
    assert q[1] == pytest.approx(table.g[1] + 0.5 * params.damping * table.g[0],
                                 rel=1e-14)


@pytest.mark.parametrize("k", (3, 4, 5, 6))
@pytest.mark.parametrize("alpha", (0.25, 0.5, 0.75))
def test_q_reconvolution_recovers_g(k, alpha):
    params = FracParams(alpha=alpha)
    table = bdf_g_coefficients(k, params, 512)
    q = q_coefficients(table, multiplier_set(k), 512).q
    mu_poly = multiplier_set(k).zeta_polynomial()
    recon = np.convolve(q, mu_poly)[:513]
    assert np.max(np.abs(recon - table.g) / max(1.0, np.abs(table.g).max())) <= 1e-12


def test_q_trivial_for_k1():
    params = FracParams(alpha=0.5)
    table = bdf_g_coefficients(1, params, 32)
    q = q_coefficients(table, multiplier_set(1), 32).q
    assert np.array_equal(q, table.g)


def test_q_order_mismatch_rejected():
    params = FracParams(alpha=0.5)
    table = bdf_g_coefficients(3, params, 8)
    with pytest.raises(ParameterDomainError):
        q_coefficients(table, multiplier_set(4), 8)


def test_q_length_mismatch_rejected():
    params = FracParams(alpha=0.5)
    table = bdf_g_coefficients(3, params, 8)
    with pytest.raises(ParameterDomainError):
        q_coefficients(table, multiplier_set(3), 9)


def test_reciprocal_series_decays_for_k6():
    # radius of convergence of 1/mu is 5/3, so c_m ~ const * (3/5)^m
    c = reciprocal_series(6, FracParams(alpha=0.5), 64).c
    assert abs(c[64]) < 100.0 * 0.6 ** 64
