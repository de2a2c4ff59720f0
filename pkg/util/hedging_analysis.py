# -*- coding: utf-8 -*-
from __future__ import absolute_import, division, print_function

import math

from dataclasses import dataclass

from util.errors import DegenerateError
from util.greeks import greeks
from util.logging import log_warn
from util.pricing import SQRT_2_OVER_PI, effective_timescale, modified_volatility, price


TWO_OVER_PI = 2.0 / math.pi


@dataclass(frozen=True)
class MinPriceResult:
    dt_star: float
    sigma_min: float
    c_min: float


def _check_costs(params):
    if params.k == 0:
        raise DegenerateError('k = 0: without transaction costs the modified volatility is monotone in dt '
                              'and has no interior optimum')
    if params.k / params.sigma >= math.sqrt(math.pi / 2):
        log_warn('k/sigma = {:.4g} is not below sqrt(pi/2); the rebalancing optimum is outside its usual regime'.format(
            params.k / params.sigma))


def optimal_rebalancing_interval(params, t):
    r"""Rebalancing interval at which both terms of the modified variance are equal.

    This is the equality point of the AM-GM bound on the modified volatility. For
    H > 1/2 the bound itself moves with dt, so the minimiser of the volatility is
    :func:`stationary_rebalancing_interval`, not this point.
    """
    _check_costs(params)
    A = effective_timescale(params.alpha, t)
    H = params.H
    return TWO_OVER_PI ** (1 / (2 * H)) * (params.k / params.sigma) ** (1 / H) / A


def minimal_volatility(params, t):
    _check_costs(params)
    A = effective_timescale(params.alpha, t)
    H = params.H
    return (math.sqrt(2) * params.sigma * math.sqrt(A)
            * TWO_OVER_PI ** (0.5 - 1 / (4 * H))
            * (params.k / params.sigma) ** (1 - 1 / (2 * H)))


def minimal_price(contract, params):
    dt_star = optimal_rebalancing_interval(params, contract.t)
    sigma_min = minimal_volatility(params, contract.t)
    return MinPriceResult(dt_star, sigma_min, price(contract, params, vol_override=sigma_min).price)


def amgm_volatility_bound(params, t):
    r"""Volatility implied by the AM-GM lower bound of the modified variance at ``params.dt``:

        sigma * sqrt(2 A^(3H/2) dt^(3H/2 - 1) (2/pi)^(1/4) (k/sigma)^(1/2))
    """
    A = effective_timescale(params.alpha, t)
    H, dt = params.H, params.dt
    bound = 2 * A ** (1.5 * H) * dt ** (1.5 * H - 1) * TWO_OVER_PI ** 0.25 * math.sqrt(params.k / params.sigma)
    return params.sigma * math.sqrt(bound)


def stationary_rebalancing_interval(params, t):
    r"""Minimiser of the modified volatility over the rebalancing interval.

    Setting the dt-derivative of A^2H dt^(2H-1) + sqrt(2/pi)(k/sigma) A^H dt^(H-1) to zero gives

        dt = dt_star * ((1 - H) / (2H - 1))^(1/H)

    For H = 1/2 the volatility decreases in dt without bound and no minimiser exists.
    """
    if params.H == 0.5:
        raise DegenerateError('H = 1/2: the modified volatility decreases monotonically in dt')
    H = params.H
    return optimal_rebalancing_interval(params, t) * ((1 - H) / (2 * H - 1)) ** (1 / H)


def stationary_price(contract, params):
    dt = stationary_rebalancing_interval(params, contract.t)
    sigma = modified_volatility(params.with_(dt=dt), contract.t)
    return MinPriceResult(dt, sigma, price(contract, params, vol_override=sigma).price)


def vol_sensitivity_H(params, t):
    r"""Partial derivative of the modified volatility in H; its sign is the sign of ln(A dt)."""
    A = effective_timescale(params.alpha, t)
    H, dt = params.H, params.dt
    bracket = 2 * A ** (2 * H) * dt ** (2 * H - 1) + SQRT_2_OVER_PI * (params.k / params.sigma) * A ** H * dt ** (H - 1)
    return bracket * params.sigma ** 2 * math.log(A * dt) / (2 * modified_volatility(params, t))


def price_sensitivity_H(contract, params):
    return greeks(contract, params).vega * vol_sensitivity_H(params, contract.t)
