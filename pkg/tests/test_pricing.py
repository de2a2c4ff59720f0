from __future__ import absolute_import, division, print_function

import math

import mpmath
import numpy as np
import pytest

from util.errors import DomainError
from util.pricing import (CALL, PUT, ModelParams, OptionContract, closed_form, effective_timescale,
                          fbm_tc_volatility, gk_price, modified_volatility, necula_volatility, no_cost_volatility,
                          price, price_bounds)
from util.special_functions import gamma


def mp_modified_volatility(sigma, alpha, H, k, dt, t):
    with mpmath.workdps(40):
        A = mpmath.mpf(t) ** (mpmath.mpf(alpha) - 1) / mpmath.gamma(alpha)
        dt = mpmath.mpf(dt)
        ratio = (A ** (2 * H) * dt ** (2 * H - 1)
                 + mpmath.sqrt(2 / mpmath.pi) * (mpmath.mpf(k) / sigma) * A ** H * dt ** (H - 1))
        return mpmath.mpf(sigma) * mpmath.sqrt(ratio)


def mp_call(spot, strike, tau, r_d, r_f, vol):
    with mpmath.workdps(40):
        spot, strike, tau, vol = (mpmath.mpf(x) for x in (spot, strike, tau, vol))
        d1 = (mpmath.log(spot / strike) + (r_d - r_f + vol ** 2 / 2) * tau) / (vol * mpmath.sqrt(tau))
        d2 = d1 - vol * mpmath.sqrt(tau)
        return float(spot * mpmath.exp(-r_f * tau) * mpmath.ncdf(d1)
                     - strike * mpmath.exp(-r_d * tau) * mpmath.ncdf(d2))


def test_effective_timescale():
    assert effective_timescale(0.9, 0.1) == pytest.approx(0.1 ** -0.1 / gamma(0.9), rel=1e-14)
    assert effective_timescale(0.9, 1.0) == pytest.approx(1.0 / gamma(0.9), rel=1e-14)
    assert effective_timescale(1.0, 0.37) == 1.0
    with pytest.raises(DomainError):
        effective_timescale(0.9, 0.0)


def test_modified_volatility_against_high_precision(fig4_params):
    expected = float(mp_modified_volatility(0.1, 0.9, 0.8, 0.01, 0.01, 0.1))
    assert modified_volatility(fig4_params, 0.1) == pytest.approx(expected, rel=1e-12)


def test_reductions(fig4_params):
    brownian = fig4_params.with_(alpha=1.0, H=0.5, k=0.0)
    assert modified_volatility(brownian, 0.1) == pytest.approx(0.1, rel=1e-14)
    # Without the clock and without costs the volatility is the fractional one
    no_costs = fig4_params.with_(alpha=1.0, k=0.0)
    assert modified_volatility(no_costs, 0.1) == pytest.approx(0.1 * 0.01 ** 0.3, rel=1e-12)
    assert necula_volatility(0.1, 0.8, 0.01) == pytest.approx(0.1 * 0.01 ** 0.3, rel=1e-14)
    for t in [0.05, 0.1, 0.7]:
        no_clock = fig4_params.with_(alpha=1.0)
        assert modified_volatility(no_clock, t) == fbm_tc_volatility(0.1, 0.8, 0.01, 0.01)


def test_no_cost_volatility(fig4_params):
    assert no_cost_volatility(0.1, 0.9, 0.8, 0.1, 0.01) == modified_volatility(fig4_params.with_(k=0.0), 0.1)
    with pytest.raises(DomainError):
        no_cost_volatility(0.1, 0.9, 1.0, 0.1, 0.01)


def test_fbm_tc_volatility_against_high_precision():
    expected = float(mp_modified_volatility(0.5, 1.0, 0.8, 0.001, 0.01, 1.0))
    assert fbm_tc_volatility(0.5, 0.8, 0.001, 0.01) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(DomainError):
        fbm_tc_volatility(0.5, 0.8, -0.001, 0.01)


def test_volatility_increases_with_costs(fig4_params):
    values = [modified_volatility(fig4_params.with_(k=k), 0.1) for k in np.linspace(0.0, 0.05, 26)]
    assert np.all(np.diff(values) > 0)


@pytest.mark.parametrize('changes, message', [
    (dict(alpha=0.4), 'alpha'),
    (dict(alpha=0.8, H=0.8), '2*alpha - alpha*H > 1 violated'),
    (dict(H=1.0), 'H'),
    (dict(sigma=0.0), 'sigma'),
    (dict(dt=-0.01), 'dt'),
    (dict(k=-0.01), 'k'),
    (dict(r_d=float('inf')), 'r_d'),
])
def test_model_params_validation(fig4_params, changes, message):
    with pytest.raises(DomainError, match=message.replace('*', r'\*')):
        fig4_params.with_(**changes)


def test_option_contract_validation():
    contract = OptionContract(spot=1.4, strike=1.5, t=0.1, T=1.0)
    assert contract.tau == pytest.approx(0.9)
    assert contract.kind == CALL
    for changes in [dict(t=1.0), dict(t=0.0), dict(spot=0.0), dict(strike=-1.0), dict(kind='straddle')]:
        with pytest.raises(DomainError):
            contract.with_(**changes)


def test_fig4_price_against_high_precision(fig4_contract, fig4_params):
    quote = price(fig4_contract, fig4_params)
    vol = float(mp_modified_volatility(0.1, 0.9, 0.8, 0.01, 0.01, 0.1))
    assert quote.sigma_hat == pytest.approx(vol, rel=1e-12)
    assert quote.price == pytest.approx(mp_call(1.4, 1.5, 0.9, 0.03, 0.02, vol), rel=1e-12)
    assert quote.d2 == pytest.approx(quote.d1 - quote.sigma_hat * math.sqrt(0.9), rel=1e-14)


def test_comparison_price_against_high_precision():
    params = ModelParams(sigma=0.5, r_d=0.05, r_f=0.01, alpha=0.9, H=0.8, k=0.001, dt=0.01)
    contract = OptionContract(spot=1.2, strike=1.0, t=0.1, T=1.0)
    vol = float(mp_modified_volatility(0.5, 0.9, 0.8, 0.001, 0.01, 0.1))
    assert price(contract, params).price == pytest.approx(mp_call(1.2, 1.0, 0.9, 0.05, 0.01, vol), rel=1e-12)
    assert gk_price(contract, 0.5, 0.05, 0.01).price == pytest.approx(mp_call(1.2, 1.0, 0.9, 0.05, 0.01, 0.5),
                                                                      rel=1e-12)


def test_put_call_parity_closed_form():
    rng = np.random.default_rng(1234)
    n = 10000
    spot, strike = rng.uniform(0.5, 2.0, n), rng.uniform(0.5, 2.0, n)
    tau, vol = rng.uniform(0.05, 2.0, n), rng.uniform(0.05, 1.0, n)
    r_d, r_f = rng.uniform(0.0, 0.1, n), rng.uniform(0.0, 0.1, n)
    call, _, _ = closed_form(spot, strike, tau, r_d, r_f, vol, CALL)
    put, _, _ = closed_form(spot, strike, tau, r_d, r_f, vol, PUT)
    forward_gap = spot * np.exp(-r_f * tau) - strike * np.exp(-r_d * tau)
    assert np.max(np.abs(call - put - forward_gap)) <= 1e-12
    assert np.all(call >= np.maximum(forward_gap, 0.0) - 1e-12)
    assert np.all(call <= spot * np.exp(-r_f * tau))


def test_put_call_parity_and_bounds(model_sampler):
    rng = np.random.default_rng(99)
    for _ in range(500):
        contract, params = model_sampler(rng, near_money=False)
        call = price(contract, params).price
        put = price(contract.with_(kind=PUT), params).price
        tau = contract.tau
        assert call - put == pytest.approx(contract.spot * math.exp(-params.r_f * tau)
                                           - contract.strike * math.exp(-params.r_d * tau), abs=1e-12)
        for value, kind in [(call, CALL), (put, PUT)]:
            lower, upper = price_bounds(contract.with_(kind=kind), params)
            assert lower - 1e-12 <= value <= upper + 1e-12


def test_price_decreases_in_strike(fig4_contract, fig4_params):
    values = [price(fig4_contract.with_(strike=K), fig4_params).price for K in np.linspace(1.0, 1.9, 46)]
    assert np.all(np.diff(values) < 0)


def test_vanishing_strike(fig4_contract, fig4_params):
    contract = fig4_contract.with_(strike=1e-12)
    assert price(contract, fig4_params).price == pytest.approx(1.4 * math.exp(-0.02 * 0.9), rel=1e-9)


def test_vol_override(fig4_contract, fig4_params):
    assert price(fig4_contract, fig4_params, vol_override=0.1).price == gk_price(fig4_contract, 0.1, 0.03, 0.02).price
    with pytest.raises(DomainError):
        price(fig4_contract, fig4_params, vol_override=0.0)
    with pytest.raises(DomainError):
        gk_price(fig4_contract, -0.1, 0.03, 0.02)


def test_closed_form_broadcasts():
    value, d1, d2 = closed_form(1.0, np.array([0.9, 1.0, 1.1]), 0.5, 0.03, 0.02, 0.2)
    assert value.shape == d1.shape == d2.shape == (3,)
    assert np.all(np.diff(value) < 0)
