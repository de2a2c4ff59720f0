# -*- coding: utf-8 -*-
from __future__ import absolute_import, division, print_function

import math

from dataclasses import dataclass
from multiprocessing.dummy import Pool

import numpy as np

from util.errors import DomainError
from util.greeks import greeks, volatility_time_derivative
from util.logging import log_debug
from util.pricing import CALL, SQRT_2_OVER_PI, closed_form, effective_timescale, modified_volatility, price
from util.special_functions import std_normal_cdf
from util.stochastic import (SubordinatorConfig, TimeGrid, expected_sq_increment_W, sample_subdiffusive_fbm_paths,
                             sample_subordinated_increments)


MIN_PATHS = 10000

# Paths per random stream; fixed so results do not depend on the worker count
CHUNK_SIZE = 10000


@dataclass(frozen=True)
class HedgePortfolio:
    stock_units: float
    bond_value: float
    portfolio_value: float


@dataclass(frozen=True)
class AssetIncrement:
    exact: np.ndarray
    expansion: np.ndarray


@dataclass(frozen=True)
class HedgeStepReport:
    n_paths: int
    mean_discrepancy: float
    std_error: float
    mean_transaction_cost: float
    theoretical_residual: float
    residual_bound: float
    mean_transaction_cost_linearized: float
    seed: int


@dataclass(frozen=True)
class MomentReport:
    n_paths: int
    mean_sq_dW: float
    mean_pow2H_dT: float
    sq_diff_mean: float
    sq_diff_se: float
    mean_abs_dW: float
    mean_scaled_powH_dT: float
    abs_diff_mean: float
    abs_diff_se: float
    linearized_pow2H_dT: float
    linearization_gap: float
    seed: int


def pmap(fun, iterable, workers=1, progress=None):
    r"""Ordered map over a thread pool; ``workers=0`` uses one thread per CPU."""
    items = list(iterable)
    results = []
    if workers == 1:
        mapped = map(fun, items)
        pool = None
    else:
        pool = Pool(workers or None)
        mapped = pool.imap(fun, items)
    try:
        for result in mapped:
            results.append(result)
            if progress is not None:
                progress(len(results))
    finally:
        if pool is not None:
            pool.close()
    return results


def chunk_layout(n_paths, chunk_size):
    return [(index, min(chunk_size, n_paths - start))
            for index, start in enumerate(range(0, n_paths, chunk_size))]


def _mean_and_error(samples):
    return float(np.mean(samples)), float(np.std(samples, ddof=1) / math.sqrt(samples.size))


def asset_increment(S_t, params, dT, dW):
    r"""Exchange-rate increment for realised clock and motion increments.

    Returns the exact increment ``S (exp((r_d - r_f) dT + sigma dW) - 1)`` and its
    second-order expansion ``S ((r_d - r_f) dT + sigma dW + sigma^2 dW^2 / 2)``.
    """
    if not np.all(np.asarray(S_t) > 0):
        raise DomainError('S_t must be positive, got {}'.format(S_t))
    drift = params.r_d - params.r_f
    exact = S_t * np.expm1(drift * np.asarray(dT) + params.sigma * np.asarray(dW))
    expansion = S_t * (drift * np.asarray(dT) + params.sigma * np.asarray(dW)
                       + 0.5 * params.sigma ** 2 * np.square(dW))
    return AssetIncrement(exact, expansion)


def hedge_portfolio(contract, params):
    quote = price(contract, params)
    units = greeks(contract, params).delta
    return HedgePortfolio(units, quote.price - units * contract.spot, quote.price)


def expected_discrepancy_approximation(contract, params):
    r"""Expected one-step hedging error when the clock moments are replaced by
    their linearisation, (A dt)^2H for E[dW^2] and sqrt(2/pi) (A dt)^H for E|dW|.

    The modified volatility is built from exactly these moments, so the result
    vanishes up to rounding.
    """
    portfolio = hedge_portfolio(contract, params)
    report = greeks(contract, params)
    theta_fixed_vol = report.theta - report.vega * volatility_time_derivative(params, contract.t)
    S, dt = contract.spot, params.dt
    A_dt = effective_timescale(params.alpha, contract.t) * dt
    carry = (params.r_d * portfolio.bond_value + params.r_f * portfolio.stock_units * S) * dt
    diffusion = 0.5 * params.sigma ** 2 * S ** 2 * report.gamma * A_dt ** (2 * params.H)
    costs = 0.5 * params.k * SQRT_2_OVER_PI * params.sigma * S ** 2 * report.gamma * A_dt ** params.H
    return carry - theta_fixed_vol * dt - diffusion - costs


def _check_experiment(contract, params, n_paths):
    if n_paths < MIN_PATHS:
        raise DomainError('n_paths must be at least {}, got {}'.format(MIN_PATHS, n_paths))
    if contract.kind != CALL:
        raise DomainError('the hedging experiment replicates calls')
    if not contract.t + params.dt < contract.T:
        raise DomainError('need t + dt < T, got t={} dt={} T={}'.format(contract.t, params.dt, contract.T))


def hedge_step_experiment(contract, params, n_paths, rng, cfg=None, workers=1, chunk_size=CHUNK_SIZE, progress=None):
    r"""One rebalancing step of the delta hedge, simulated on ``n_paths`` paths.

    At ``t`` the writer holds ``U = delta`` units of foreign currency and the bond
    ``F = C - U S``. Over ``[t, t + dt)`` the clock and motion move, foreign and
    domestic interest accrue, and the position is rebalanced at the new delta for
    a cost ``(k/2) |dU| S(t + dt)``. The option is repriced exactly at ``t + dt``
    with the volatility frozen at its value at ``t``.

    :param cfg: clock discretisation, defaults to ``SubordinatorConfig(params.alpha)``
    :param workers: threads used for path chunks, 0 for one per CPU
    :param progress: optional callable receiving the number of finished chunks
    """
    _check_experiment(contract, params, n_paths)
    cfg = cfg or SubordinatorConfig(params.alpha)

    S, K, dt = contract.spot, contract.strike, params.dt
    sigma_hat = modified_volatility(params, contract.t)
    portfolio = hedge_portfolio(contract, params)
    option_value = portfolio.portfolio_value
    units = portfolio.stock_units
    remaining = contract.tau - dt
    foreign_discount = math.exp(-params.r_f * remaining)

    def run_chunk(chunk):
        index, size = chunk
        _, dT, dW = sample_subordinated_increments(cfg, params.H, contract.t, dt, size, rng.child(index))
        S_next = S * np.exp((params.r_d - params.r_f) * dT + params.sigma * dW)
        option_next, d1_next, _ = closed_form(S_next, K, remaining, params.r_d, params.r_f, sigma_hat)
        units_next = foreign_discount * std_normal_cdf(d1_next)
        cost = 0.5 * params.k * np.abs(units_next - units) * S_next
        d_portfolio = (units * (S_next - S + params.r_f * S * dt)
                       + params.r_d * portfolio.bond_value * dt - cost)
        return d_portfolio - (option_next - option_value), cost, dT, dW

    chunks = chunk_layout(n_paths, chunk_size)
    log_debug('Hedge experiment: {} paths in {} chunks'.format(n_paths, len(chunks)))
    results = pmap(run_chunk, chunks, workers=workers, progress=progress)
    discrepancy, cost, dT, dW = (np.concatenate(parts) for parts in zip(*results))

    mean_discrepancy, std_error = _mean_and_error(discrepancy)
    gamma = greeks(contract, params).gamma
    A_dt = effective_timescale(params.alpha, contract.t) * dt
    H = params.H
    diffusion_scale = 0.5 * params.sigma ** 2 * S ** 2 * gamma
    cost_scale = 0.5 * params.k * SQRT_2_OVER_PI * params.sigma * S ** 2 * gamma
    diffusion_gap = A_dt ** (2 * H) - float(np.mean(dT ** (2 * H)))
    cost_gap = A_dt ** H - float(np.mean(dT ** H))

    return HedgeStepReport(
        n_paths=n_paths,
        mean_discrepancy=mean_discrepancy,
        std_error=std_error,
        mean_transaction_cost=float(np.mean(cost)),
        theoretical_residual=diffusion_scale * diffusion_gap + cost_scale * cost_gap,
        residual_bound=abs(diffusion_scale * diffusion_gap) + abs(cost_scale * cost_gap),
        mean_transaction_cost_linearized=float(np.mean(0.5 * params.k * params.sigma * S ** 2 * gamma * np.abs(dW))),
        seed=rng.seed)


def conditioning_moments(params, t, n_paths, rng, cfg=None, workers=1, chunk_size=CHUNK_SIZE, progress=None):
    r"""Coupled estimates of the motion moments against the clock moments over ``[t, t + dt)``.

    The motion is evaluated as B_H at the simulated clock values, and each path
    contributes ``dW^2 - dT^2H`` and ``|dW| - sqrt(2/pi) dT^H``; both differences
    have mean zero. The linearised value (A dt)^2H is reported with its gap to the
    sampled E[dT^2H].
    """
    if n_paths < 2:
        raise DomainError('n_paths must be at least 2, got {}'.format(n_paths))
    cfg = cfg or SubordinatorConfig(params.alpha)
    grid = TimeGrid([t, t + params.dt])
    H = params.H

    def run_chunk(chunk):
        index, size = chunk
        clock, motion = sample_subdiffusive_fbm_paths(cfg, H, grid, size, rng.child(index))
        return clock[:, 1] - clock[:, 0], motion[:, 1] - motion[:, 0]

    results = pmap(run_chunk, chunk_layout(n_paths, chunk_size), workers=workers, progress=progress)
    dT, dW = (np.concatenate(parts) for parts in zip(*results))

    sq_diff_mean, sq_diff_se = _mean_and_error(dW ** 2 - dT ** (2 * H))
    abs_diff_mean, abs_diff_se = _mean_and_error(np.abs(dW) - SQRT_2_OVER_PI * dT ** H)
    mean_pow2H = float(np.mean(dT ** (2 * H)))
    linearized = expected_sq_increment_W(params.alpha, H, t, params.dt)
    return MomentReport(
        n_paths=n_paths,
        mean_sq_dW=float(np.mean(dW ** 2)),
        mean_pow2H_dT=mean_pow2H,
        sq_diff_mean=sq_diff_mean,
        sq_diff_se=sq_diff_se,
        mean_abs_dW=float(np.mean(np.abs(dW))),
        mean_scaled_powH_dT=float(SQRT_2_OVER_PI * np.mean(dT ** H)),
        abs_diff_mean=abs_diff_mean,
        abs_diff_se=abs_diff_se,
        linearized_pow2H_dT=linearized,
        linearization_gap=mean_pow2H - linearized,
        seed=rng.seed)
