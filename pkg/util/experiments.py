# -*- coding: utf-8 -*-
from __future__ import absolute_import, division, print_function

import math

from dataclasses import asdict

import numpy as np
import pandas
import progressbar

from util.greeks import greeks
from util.hedging_analysis import minimal_price, stationary_price, vol_sensitivity_H
from util.logging import create_progressbar, log_info, log_progress
from util.mc_hedging import CHUNK_SIZE, chunk_layout, conditioning_moments, hedge_step_experiment
from util.pricing import effective_timescale, fbm_tc_volatility, gk_price, price
from util.results import input_columns, record_frame, write_csv
from util.stochastic import RngStream, SubordinatorConfig, TimeGrid, simulate_exchange_rate


def _flat_runs(values):
    return int(np.count_nonzero(np.diff(values) == 0))


def cmd_paths(config):
    r"""Exchange-rate paths without (``alpha = 1``) and with the subordinated clock,
    on the same grid and from the same seed.
    """
    params = config.params()
    grid = TimeGrid.uniform(config['horizon'], config['n_steps'])
    rng = RngStream(config.seed)
    clock = SubordinatorConfig(params.alpha, config.values.get('operational_time_step'))

    baseline = simulate_exchange_rate(params.with_(alpha=1.0), config['S0'], grid, rng,
                                      fbm_method=config['fbm_method'])
    subdiffusive = simulate_exchange_rate(params, config['S0'], grid, rng, cfg=clock)

    prefix = config.out or 'paths'
    write_csv(baseline.to_frame(), prefix + '_fbm.csv')
    write_csv(subdiffusive.to_frame(), prefix + '_subfbm.csv')
    log_info('Wrote {} points to {}_fbm.csv and {}_subfbm.csv ({} flat steps on the subordinated path)'.format(
        len(grid), prefix, prefix, _flat_runs(subdiffusive.values)))
    return baseline, subdiffusive


def cmd_price(config):
    frame = record_frame(price(config.contract(), config.params()), **input_columns(config))
    write_csv(frame, config.out)
    return frame


def cmd_greeks(config):
    contract, params = config.contract(), config.params()
    frame = record_frame(greeks(contract, params),
                         sigma_hat=price(contract, params).sigma_hat, **input_columns(config))
    write_csv(frame, config.out)
    return frame


def cmd_minprice(config):
    contract, params = config.contract(), config.params()
    row = input_columns(config)
    row.update(dt_stationary=math.nan, sigma_stationary=math.nan, c_stationary=math.nan)
    if params.H > 0.5:
        stationary = stationary_price(contract, params)
        row.update(dt_stationary=stationary.dt_star, sigma_stationary=stationary.sigma_min,
                   c_stationary=stationary.c_min)
    frame = record_frame(minimal_price(contract, params), **row)
    write_csv(frame, config.out)
    return frame


def cmd_sweep(config):
    variable = config['sweep_var']
    key = 'strike' if variable == 'K' else variable
    rows = []
    for value in config.sweep_values():
        contract = config.contract(**{key: float(value)})
        params = config.params(**{key: float(value)})
        quote = price(contract, params)
        row = {'sweep_var': variable, 'value': float(value)}
        row.update(input_columns(config))
        row.update(spot=contract.spot, strike=contract.strike, T=contract.T, sigma=params.sigma, alpha=params.alpha,
                   H=params.H, k=params.k, dt=params.dt)
        row.update(price=quote.price, sigma_hat=quote.sigma_hat, d1=quote.d1, d2=quote.d2,
                   A_dt=effective_timescale(params.alpha, contract.t) * params.dt,
                   dsigma_dH=vol_sensitivity_H(params, contract.t))
        rows.append(row)
    frame = pandas.DataFrame(rows)
    write_csv(frame, config.out)
    return frame


def cmd_compare(config):
    r"""Garman-Kohlhagen, fractional and subdiffusive prices over a maturity/strike grid.

    The maturity axis is the time to maturity; rows carry ``T = t + tenor``.
    """
    params = config.params()
    fbm_vol = fbm_tc_volatility(params.sigma, params.H, params.k, params.dt)
    rows = []
    for tenor in config.tenor_values():
        for strike in config.strike_values():
            contract = config.contract(T=config['t'] + float(tenor), strike=float(strike))
            gk = gk_price(contract, params.sigma, params.r_d, params.r_f).price
            fbm = price(contract, params, vol_override=fbm_vol).price
            subfbm = price(contract, params).price
            rows.append({'T': contract.T, 'K': contract.strike, 'gk_price': gk, 'fbm_price': fbm,
                         'subfbm_price': subfbm, 'fbm_minus_gk': fbm - gk, 'subfbm_minus_gk': subfbm - gk,
                         'tenor': float(tenor)})
    frame = pandas.DataFrame(rows)
    closer = float(np.mean(frame.subfbm_minus_gk.abs() <= frame.fbm_minus_gk.abs()))
    log_info('Subdiffusive prices are at least as close to Garman-Kohlhagen as fractional ones on {:.1%} '
             'of {} grid points'.format(closer, len(frame)))
    log_info('Majority condition (closer > 50%): {}'.format('holds' if closer > 0.5 else 'fails'))
    write_csv(frame, config.out)
    return frame


def _monte_carlo_bar(name, n_paths):
    bar = create_progressbar(prefix='{} | '.format(name),
                             max_value=len(chunk_layout(n_paths, CHUNK_SIZE)),
                             widgets=['Chunks: ', progressbar.Counter(), ' | ', progressbar.Timer()]).start()
    log_progress('{}...'.format(name))
    return bar


def cmd_hedge(config):
    contract, params = config.contract(), config.params()
    bar = _monte_carlo_bar('Hedging', config['n_paths'])
    report = hedge_step_experiment(contract, params, config['n_paths'], RngStream(config.seed),
                                   workers=config.workers, progress=bar.update)
    bar.finish()
    row = {'n_paths': report.n_paths, 'mean_discrepancy': report.mean_discrepancy, 'std_error': report.std_error,
           'mean_tc': report.mean_transaction_cost, 'residual_bound': report.residual_bound, 'seed': report.seed,
           'theoretical_residual': report.theoretical_residual,
           'mean_tc_linearized': report.mean_transaction_cost_linearized}
    row.update(input_columns(config))
    frame = pandas.DataFrame([row])
    log_info('Mean hedging error {:.3e} +- {:.1e} (residual bound {:.1e})'.format(
        report.mean_discrepancy, report.std_error, report.residual_bound))
    write_csv(frame, config.out)
    return frame


def cmd_moments(config):
    params = config.params()
    bar = _monte_carlo_bar('Moments', config['n_paths'])
    report = conditioning_moments(params, config['t'], config['n_paths'], RngStream(config.seed),
                                  workers=config.workers, progress=bar.update)
    bar.finish()
    row = asdict(report)
    row.update(input_columns(config, ['t', 'sigma', 'r_d', 'r_f', 'alpha', 'H', 'k', 'dt']))
    frame = pandas.DataFrame([row])
    write_csv(frame, config.out)
    return frame


COMMANDS = {
    'paths': cmd_paths,
    'price': cmd_price,
    'greeks': cmd_greeks,
    'minprice': cmd_minprice,
    'sweep': cmd_sweep,
    'compare': cmd_compare,
    'hedge': cmd_hedge,
    'moments': cmd_moments,
}
