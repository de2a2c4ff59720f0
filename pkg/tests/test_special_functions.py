from __future__ import absolute_import, division, print_function

import math

import mpmath
import numpy as np
import pytest

from util.errors import ConvergenceError, DomainError
from util.special_functions import (EvalConfig, gamma, log_gamma, mittag_leffler, std_normal_cdf,
                                    std_normal_pdf)


def mp_mittag_leffler(alpha, z, terms=200):
    with mpmath.workdps(40):
        z = mpmath.mpf(z)
        return float(mpmath.fsum(z ** j / mpmath.gamma(j * mpmath.mpf(alpha) + 1) for j in range(terms)))


@pytest.mark.parametrize('x, expected', [(1.0, 1.0), (0.5, math.sqrt(math.pi)), (1.9, 0.9617658319)])
def test_gamma_known_values(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-10)
    assert gamma(x) == pytest.approx(float(mpmath.gamma(x)), rel=1e-14)


def test_gamma_against_high_precision():
    for x in np.linspace(0.05, 10.0, 200):
        assert gamma(x) == pytest.approx(float(mpmath.gamma(x)), rel=1e-13)


def test_gamma_recurrence():
    rng = np.random.default_rng(7)
    for x in rng.uniform(0.1, 5.0, 1000):
        assert gamma(x + 1) == pytest.approx(x * gamma(x), rel=1e-12)


def test_log_gamma_against_high_precision():
    for x in [0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 25.0, 171.5, 400.0]:
        assert log_gamma(x) == pytest.approx(float(mpmath.loggamma(x)), rel=1e-13, abs=1e-15)


@pytest.mark.parametrize('fun', [gamma, log_gamma])
@pytest.mark.parametrize('x', [0.0, -0.5, -3.0])
def test_gamma_domain(fun, x):
    with pytest.raises(DomainError):
        fun(x)


def test_normal_cdf_values():
    assert std_normal_cdf(0.0) == 0.5
    assert std_normal_cdf(40.0) == 1.0
    assert std_normal_cdf(-40.0) == 0.0
    assert std_normal_cdf(1.0) == pytest.approx(0.8413447460685429, abs=1e-14)
    assert std_normal_cdf(-1.0) == pytest.approx(float(mpmath.ncdf(-1)), abs=1e-14)


def test_normal_cdf_symmetry():
    rng = np.random.default_rng(11)
    x = rng.uniform(-8.0, 8.0, 1000)
    assert np.max(np.abs(std_normal_cdf(x) + std_normal_cdf(-x) - 1.0)) <= 1e-14


def test_normal_cdf_lower_tail_is_relative():
    assert std_normal_cdf(-30.0) == pytest.approx(float(mpmath.ncdf(-30)), rel=1e-12)


def test_normal_cdf_monotone():
    x = np.linspace(-10.0, 10.0, 4001)
    assert np.all(np.diff(std_normal_cdf(x)) >= 0)


def test_normal_cdf_derivative_is_pdf():
    h = 1e-5
    for x in np.linspace(-3.0, 3.0, 61):
        derivative = (std_normal_cdf(x + h) - std_normal_cdf(x - h)) / (2 * h)
        assert derivative == pytest.approx(std_normal_pdf(x), rel=1e-8)


def test_normal_pdf():
    assert std_normal_pdf(0.0) == pytest.approx(1.0 / math.sqrt(2 * math.pi), rel=1e-15)
    assert std_normal_pdf(1.0) == pytest.approx(0.24197072451914337, rel=1e-14)
    x = np.linspace(-5.0, 5.0, 101)
    np.testing.assert_array_equal(std_normal_pdf(x), std_normal_pdf(-x))


def test_mittag_leffler_exponential():
    for x in np.linspace(-2.0, 2.0, 41):
        assert mittag_leffler(1.0, x) == pytest.approx(math.exp(x), rel=1e-12)


def test_mittag_leffler_at_zero():
    for alpha in [0.1, 0.5, 0.9, 1.0]:
        assert mittag_leffler(alpha, 0.0) == 1.0


def test_mittag_leffler_half():
    # E_1/2(x) = exp(x^2) erfc(-x)
    for x in np.linspace(-1.0, 1.0, 21):
        expected = float(mpmath.exp(x * x) * mpmath.erfc(-x))
        assert mittag_leffler(0.5, x) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize('alpha, z', [(0.9, 0.5), (0.9, -0.5), (0.7, 3.0), (0.95, -2.0)])
def test_mittag_leffler_against_partial_sums(alpha, z):
    assert mittag_leffler(alpha, z) == pytest.approx(mp_mittag_leffler(alpha, z), rel=1e-12)


@pytest.mark.parametrize('alpha, z', [(0.9, -3.0), (0.7, -2.0), (0.6, -1.0), (0.5, -1.5)])
def test_mittag_leffler_negative_arguments_to_tolerance(alpha, z):
    value = mittag_leffler(alpha, z)
    assert abs(value - mp_mittag_leffler(alpha, z, terms=400)) <= EvalConfig().abs_tol
    assert 0 < value < 1


@pytest.mark.parametrize('z', [-10.0, -20.0, -30.0])
def test_mittag_leffler_refuses_cancelled_sums(z):
    with pytest.raises(ConvergenceError, match='cancellation'):
        mittag_leffler(0.9, z)
    # A looser tolerance does not rescue a sum that has lost every digit
    if z < -10:
        with pytest.raises(ConvergenceError):
            mittag_leffler(0.9, z, EvalConfig(abs_tol=1e-3))


def test_mittag_leffler_increasing_in_positive_z():
    values = [mittag_leffler(0.8, z) for z in np.linspace(0.0, 10.0, 51)]
    assert np.all(np.diff(values) > 0)


def test_mittag_leffler_term_budget():
    with pytest.raises(ConvergenceError):
        mittag_leffler(0.9, 1.0, EvalConfig(max_terms=5))
    # Small alpha at the edge of the accepted range needs more than the default 500 terms
    with pytest.raises(ConvergenceError):
        mittag_leffler(0.6, 30.0)


@pytest.mark.parametrize('alpha, z', [(0.0, 1.0), (1.5, 1.0), (0.9, 31.0), (0.9, -31.0), (0.9, float('nan'))])
def test_mittag_leffler_domain(alpha, z):
    with pytest.raises(DomainError):
        mittag_leffler(alpha, z)


@pytest.mark.parametrize('changes', [dict(abs_tol=0.0), dict(max_terms=0), dict(max_abs_z=-1.0)])
def test_eval_config_validation(changes):
    with pytest.raises(DomainError):
        EvalConfig(**changes)
