# -*- coding: utf-8 -*-
from __future__ import absolute_import, division, print_function

import math

from dataclasses import dataclass, replace

import numpy as np

from util.errors import DegenerateError, DomainError
from util.special_functions import gamma, std_normal_cdf


CALL = 'call'
PUT = 'put'

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


@dataclass(frozen=True)
class ModelParams:
    r"""Market and model parameters of the subdiffusive exchange-rate model.

    ``alpha = 1`` turns the clock off (fractional Brownian motion with
    transaction costs), ``H = 1/2`` makes the driving motion Brownian.
    """
    sigma: float
    r_d: float
    r_f: float
    alpha: float
    H: float
    k: float
    dt: float

    def __post_init__(self):
        for name in ('sigma', 'r_d', 'r_f', 'alpha', 'H', 'k', 'dt'):
            if not math.isfinite(getattr(self, name)):
                raise DomainError('{} must be finite, got {}'.format(name, getattr(self, name)))
        if not 0.5 < self.alpha <= 1:
            raise DomainError('alpha must lie in (1/2, 1], got {}'.format(self.alpha))
        if not 0.5 <= self.H < 1:
            raise DomainError('H must lie in [1/2, 1), got {}'.format(self.H))
        if self.alpha < 1 and not self.alpha * (2 - self.H) > 1:
            raise DomainError('2*alpha - alpha*H > 1 violated (alpha={}, H={})'.format(self.alpha, self.H))
        if not self.sigma > 0:
            raise DomainError('sigma must be positive, got {}'.format(self.sigma))
        if not self.dt > 0:
            raise DomainError('dt must be positive, got {}'.format(self.dt))
        if self.k < 0:
            raise DomainError('k must not be negative, got {}'.format(self.k))

    def with_(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class OptionContract:
    spot: float
    strike: float
    t: float
    T: float
    kind: str = CALL

    def __post_init__(self):
        if self.kind not in (CALL, PUT):
            raise DomainError('kind must be "call" or "put", got {!r}'.format(self.kind))
        if not self.spot > 0:
            raise DomainError('spot must be positive, got {}'.format(self.spot))
        if not self.strike > 0:
            raise DomainError('strike must be positive, got {}'.format(self.strike))
        if not 0 < self.t < self.T or not math.isfinite(self.T):
            raise DomainError('need 0 < t < T, got t={} T={}'.format(self.t, self.T))

    @property
    def tau(self):
        return self.T - self.t

    def with_(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class PriceQuote:
    price: float
    sigma_hat: float
    d1: float
    d2: float


def effective_timescale(alpha, t):
    r"""A(t) = t^(alpha - 1) / Gamma(alpha), the rate at which the clock runs at time t."""
    if not t > 0:
        raise DomainError('t must be positive, got {}'.format(t))
    return t ** (alpha - 1.0) / gamma(alpha)


def _check_vol_inputs(sigma, H, dt, k=0.0):
    if not sigma > 0:
        raise DomainError('sigma must be positive, got {}'.format(sigma))
    if not 0.5 <= H < 1:
        raise DomainError('H must lie in [1/2, 1), got {}'.format(H))
    if not dt > 0:
        raise DomainError('dt must be positive, got {}'.format(dt))
    if k < 0:
        raise DomainError('k must not be negative, got {}'.format(k))


def _volatility(sigma, H, k, dt, A):
    # sigma^2 [ A^2H dt^(2H-1) + sqrt(2/pi) (k/sigma) A^H dt^(H-1) ]
    ratio = A ** (2 * H) * dt ** (2 * H - 1) + SQRT_2_OVER_PI * (k / sigma) * A ** H * dt ** (H - 1)
    return sigma * math.sqrt(ratio)


def modified_volatility(params, t):
    return _volatility(params.sigma, params.H, params.k, params.dt, effective_timescale(params.alpha, t))


def no_cost_volatility(sigma, alpha, H, t, dt):
    _check_vol_inputs(sigma, H, dt)
    return _volatility(sigma, H, 0.0, dt, effective_timescale(alpha, t))


def necula_volatility(sigma, H, dt):
    _check_vol_inputs(sigma, H, dt)
    return sigma * dt ** (H - 0.5)


def fbm_tc_volatility(sigma, H, k, dt):
    r"""Fractional Brownian motion with transaction costs: the clock-free volatility."""
    _check_vol_inputs(sigma, H, dt, k)
    return _volatility(sigma, H, k, dt, 1.0)


def closed_form(spot, strike, tau, r_d, r_f, vol, kind=CALL):
    r"""Currency option value with effective volatility ``vol``.

    Broadcasts over numpy arrays; returns ``(price, d1, d2)``.
    """
    sqrt_tau = np.sqrt(tau)
    d1 = (np.log(spot / strike) + (r_d - r_f + 0.5 * vol * vol) * tau) / (vol * sqrt_tau)
    d2 = d1 - vol * sqrt_tau
    foreign_discount = np.exp(-r_f * tau)
    domestic_discount = np.exp(-r_d * tau)
    if kind == CALL:
        value = spot * foreign_discount * std_normal_cdf(d1) - strike * domestic_discount * std_normal_cdf(d2)
    else:
        value = strike * domestic_discount * std_normal_cdf(-d2) - spot * foreign_discount * std_normal_cdf(-d1)
    return np.maximum(value, 0.0), d1, d2


def _quote(contract, r_d, r_f, vol):
    if not vol * math.sqrt(contract.tau) > 0:
        raise DegenerateError('effective volatility times sqrt(T - t) vanishes (vol={})'.format(vol))
    value, d1, d2 = closed_form(contract.spot, contract.strike, contract.tau, r_d, r_f, vol, contract.kind)
    return PriceQuote(float(value), float(vol), float(d1), float(d2))


def price(contract, params, vol_override=None):
    r"""Price of ``contract`` under ``params``.

    :param vol_override: effective volatility used instead of the modified one,
                         e.g. a baseline model's volatility or the minimal one
    """
    if vol_override is None:
        vol = modified_volatility(params, contract.t)
    else:
        if not vol_override > 0:
            raise DomainError('vol_override must be positive, got {}'.format(vol_override))
        vol = vol_override
    return _quote(contract, params.r_d, params.r_f, vol)


def gk_price(contract, sigma, r_d, r_f):
    if not sigma > 0:
        raise DomainError('sigma must be positive, got {}'.format(sigma))
    return _quote(contract, r_d, r_f, sigma)


def price_bounds(contract, params):
    r"""No-arbitrage band ``(lower, upper)`` of the option value."""
    discounted_spot = contract.spot * math.exp(-params.r_f * contract.tau)
    discounted_strike = contract.strike * math.exp(-params.r_d * contract.tau)
    if contract.kind == CALL:
        return max(discounted_spot - discounted_strike, 0.0), discounted_spot
    return max(discounted_strike - discounted_spot, 0.0), discounted_strike
