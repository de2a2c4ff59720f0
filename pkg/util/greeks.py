# -*- coding: utf-8 -*-
from __future__ import absolute_import, division, print_function

import math

from dataclasses import dataclass

from util.errors import DomainError
from util.pricing import CALL, SQRT_2_OVER_PI, effective_timescale, modified_volatility, price
from util.special_functions import std_normal_cdf, std_normal_pdf


GREEK_NAMES = ('delta', 'dual_delta', 'rho_domestic', 'rho_foreign', 'theta', 'gamma', 'vega')

# Relative central-difference steps, scaled by max(1, |coordinate|)
DEFAULT_BUMPS = {
    'spot': 1e-5,
    'strike': 1e-5,
    'r_d': 1e-5,
    'r_f': 1e-5,
    't': 1e-5,
    'vol': 1e-5,
    # Second difference in spot: larger step, rounding error grows as 1/h^2
    'spot_gamma': 1e-4,
}


@dataclass(frozen=True)
class GreeksReport:
    delta: float
    dual_delta: float
    rho_domestic: float
    rho_foreign: float
    theta: float
    gamma: float
    vega: float


def volatility_time_derivative(params, t):
    r"""d sigma_hat / dt at fixed rebalancing interval.

    Both volatility terms depend on t only through A(t) = t^(alpha-1)/Gamma(alpha),
    and dA/dt = (alpha - 1) A / t, so the derivative vanishes for alpha = 1.
    """
    A = effective_timescale(params.alpha, t)
    sigma_hat = modified_volatility(params, t)
    H, dt = params.H, params.dt
    bracket = 2 * A ** (2 * H) * dt ** (2 * H - 1) + SQRT_2_OVER_PI * (params.k / params.sigma) * A ** H * dt ** (H - 1)
    return params.sigma ** 2 * H * (params.alpha - 1.0) / t * bracket / (2 * sigma_hat)


def greeks(contract, params):
    r"""Closed-form sensitivities of a call.

    ``theta`` is the calendar-time derivative at fixed maturity and includes the
    drift of the modified volatility with t; ``vega`` is taken with respect to
    the modified volatility itself.
    """
    if contract.kind != CALL:
        raise DomainError('closed-form Greeks are provided for calls only')

    quote = price(contract, params)
    S, K, tau = contract.spot, contract.strike, contract.tau
    sqrt_tau = math.sqrt(tau)
    foreign_discount = math.exp(-params.r_f * tau)
    domestic_discount = math.exp(-params.r_d * tau)
    cdf_d1 = std_normal_cdf(quote.d1)
    cdf_d2 = std_normal_cdf(quote.d2)
    pdf_d1 = std_normal_pdf(quote.d1)

    vega = S * foreign_discount * sqrt_tau * pdf_d1
    theta = (S * params.r_f * foreign_discount * cdf_d1
             - K * params.r_d * domestic_discount * cdf_d2
             - S * foreign_discount * pdf_d1 * quote.sigma_hat / (2 * sqrt_tau)
             + vega * volatility_time_derivative(params, contract.t))

    return GreeksReport(delta=foreign_discount * cdf_d1,
                        dual_delta=-domestic_discount * cdf_d2,
                        rho_domestic=K * tau * domestic_discount * cdf_d2,
                        rho_foreign=-S * tau * foreign_discount * cdf_d1,
                        theta=theta,
                        gamma=foreign_discount * pdf_d1 / (S * quote.sigma_hat * sqrt_tau),
                        vega=vega)


def _step(bumps, name, x):
    h = bumps[name] * max(1.0, abs(x))
    if not h > 0:
        raise DomainError('bump size for {} must be positive, got {}'.format(name, bumps[name]))
    return h


def finite_difference_greeks(contract, params, bump_sizes=None):
    r"""Central-difference counterpart of :func:`greeks`.

    The modified volatility is re-evaluated at bumped valuation times; vega is the
    difference over ``vol_override`` around the modified volatility.

    :param bump_sizes: relative steps overriding ``DEFAULT_BUMPS`` entries
    """
    bumps = dict(DEFAULT_BUMPS)
    bumps.update(bump_sizes or {})

    def value(c=contract, p=params, vol=None):
        return price(c, p, vol_override=vol).price

    def central(f, x, h):
        return (f(x + h) - f(x - h)) / (2 * h)

    h_t = _step(bumps, 't', contract.t)
    h_spot = _step(bumps, 'spot', contract.spot)
    h_strike = _step(bumps, 'strike', contract.strike)
    if not (contract.t - h_t > 0 and contract.t + h_t < contract.T
            and contract.spot - h_spot > 0 and contract.strike - h_strike > 0):
        raise DomainError('bump sizes {} leave the valid contract region around {}'.format(bumps, contract))

    h_gamma = _step(bumps, 'spot_gamma', contract.spot)
    if not contract.spot - h_gamma > 0:
        raise DomainError('spot_gamma bump {} makes the spot negative'.format(h_gamma))
    centre = value()
    gamma = (value(contract.with_(spot=contract.spot + h_gamma)) - 2 * centre
             + value(contract.with_(spot=contract.spot - h_gamma))) / (h_gamma * h_gamma)

    sigma_hat = modified_volatility(params, contract.t)

    return GreeksReport(
        delta=central(lambda s: value(contract.with_(spot=s)), contract.spot, h_spot),
        dual_delta=central(lambda k: value(contract.with_(strike=k)), contract.strike, h_strike),
        rho_domestic=central(lambda r: value(p=params.with_(r_d=r)), params.r_d, _step(bumps, 'r_d', params.r_d)),
        rho_foreign=central(lambda r: value(p=params.with_(r_f=r)), params.r_f, _step(bumps, 'r_f', params.r_f)),
        theta=central(lambda t: value(contract.with_(t=t)), contract.t, h_t),
        gamma=gamma,
        vega=central(lambda v: value(vol=v), sigma_hat, _step(bumps, 'vol', sigma_hat)))
