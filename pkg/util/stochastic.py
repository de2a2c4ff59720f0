# -*- coding: utf-8 -*-
from __future__ import absolute_import, division, print_function

import math

from dataclasses import dataclass

import numpy as np
import pandas

from scipy.linalg import LinAlgError, cholesky

from util.errors import DomainError, FactorizationError, ResourceLimitError
from util.logging import log_debug
from util.special_functions import DEFAULT_EVAL_CONFIG, gamma, mittag_leffler


# Child stream labels, fixed so that a seed always maps to the same draws
SUBORDINATOR_STREAM = 0
FBM_STREAM = 1

# Default operational step resolves the smallest grid gap into this many jump scales
GRID_RESOLUTION = 100

# Upper bound on the number of stable draws held in memory by one walk block
_BLOCK_DRAWS = 1 << 21
_MIN_BLOCK = 16

# Relative diagonal jitter tried once when a covariance is numerically singular
_CHOLESKY_JITTER = 1e-12

PATH_KINDS = ('subordinator', 'inverse_subordinator', 'fbm', 'subdiffusive_fbm', 'exchange_rate')


@dataclass(frozen=True)
class RngStream:
    r"""A reproducible random stream.

    The stream is identified by ``seed`` and a spawn key made of ``stream_id`` and
    the labels of every ``child()`` call that led to it. Equal identifiers give
    bit-identical draws on every platform.
    """
    seed: int
    stream_id: int = 0
    labels: tuple = ()

    def __post_init__(self):
        if int(self.seed) != self.seed or self.seed < 0:
            raise DomainError('seed must be a non-negative integer, got {}'.format(self.seed))
        if int(self.stream_id) != self.stream_id or self.stream_id < 0:
            raise DomainError('stream_id must be a non-negative integer, got {}'.format(self.stream_id))

    def child(self, label):
        return RngStream(self.seed, self.stream_id, self.labels + (int(label),))

    def generator(self):
        sequence = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.stream_id),) + self.labels)
        return np.random.Generator(np.random.PCG64(sequence))


def _generator(rng):
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RngStream):
        return rng.generator()
    raise TypeError('expected an RngStream or a numpy Generator, got {!r}'.format(rng))


def rng_child(rng, label):
    # A numpy Generator has no labelled children; it is shared between both draws
    return rng.child(label) if isinstance(rng, RngStream) else rng


@dataclass(frozen=True, eq=False)
class TimeGrid:
    times: np.ndarray

    def __post_init__(self):
        times = np.array(self.times, dtype=np.float64).reshape(-1)
        if times.size == 0:
            raise DomainError('a time grid needs at least one point')
        if not np.all(np.isfinite(times)) or times[0] < 0:
            raise DomainError('grid times must be finite and non-negative')
        if np.any(np.diff(times) <= 0):
            raise DomainError('grid times must be strictly increasing')
        times.flags.writeable = False
        object.__setattr__(self, 'times', times)

    @classmethod
    def uniform(cls, horizon, n_steps):
        if not horizon > 0 or n_steps < 0:
            raise DomainError('need horizon > 0 and n_steps >= 0, got {} and {}'.format(horizon, n_steps))
        if n_steps == 0:
            return cls(np.zeros(1))
        return cls(np.linspace(0.0, horizon, n_steps + 1))

    def __len__(self):
        return self.times.size

    @property
    def min_spacing(self):
        r"""Smallest gap between consecutive points, counting the gap from 0."""
        gaps = np.diff(np.concatenate([[0.0], self.times]))
        gaps = gaps[gaps > 0]
        return float(gaps.min()) if gaps.size else 0.0


@dataclass(frozen=True)
class SubordinatorConfig:
    r"""Stability index and operational-time discretisation of the clock.

    ``alpha == 1`` is admitted as the identity clock ``T(t) = t``. A missing
    ``operational_time_step`` is chosen per grid by
    :func:`default_operational_time_step`.
    """
    alpha: float
    operational_time_step: float = None
    max_operational_steps: int = 5000000

    def __post_init__(self):
        if not 0.5 < self.alpha <= 1:
            raise DomainError('alpha must lie in (1/2, 1], got {}'.format(self.alpha))
        if self.operational_time_step is not None and not self.operational_time_step > 0:
            raise DomainError('operational_time_step must be positive, got {}'.format(self.operational_time_step))
        if self.max_operational_steps < 1:
            raise DomainError('max_operational_steps must be at least 1, got {}'.format(self.max_operational_steps))

    def step_for(self, grid):
        if self.operational_time_step is not None:
            return self.operational_time_step
        return default_operational_time_step(self.alpha, grid, self.max_operational_steps)


@dataclass(frozen=True, eq=False)
class TimeSeriesPath:
    grid: TimeGrid
    values: np.ndarray
    kind: str = 'fbm'

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64).reshape(-1)
        if values.size != len(self.grid):
            raise DomainError('path has {} values for {} grid points'.format(values.size, len(self.grid)))
        if self.kind not in PATH_KINDS:
            raise DomainError('unknown path kind {!r}'.format(self.kind))
        if self.kind in ('subordinator', 'inverse_subordinator') and np.any(np.diff(values) < 0):
            raise DomainError('{} paths must be nondecreasing'.format(self.kind))
        if self.kind == 'exchange_rate' and not np.all(values > 0):
            raise DomainError('exchange rate paths must stay positive')
        if self.kind != 'exchange_rate' and self.grid.times[0] == 0 and values[0] != 0:
            raise DomainError('{} paths start at 0'.format(self.kind))
        values.flags.writeable = False
        object.__setattr__(self, 'values', values)

    def to_frame(self):
        return pandas.DataFrame({'t': self.grid.times, 'value': self.values})


# Alpha-stable subordinator
# =========================

def _stable_variates(alpha, dtau, size, generator):
    # Chambers-Mallows-Stuck for the totally skewed case, Laplace transform exp(-dtau * s^alpha)
    half_pi = 0.5 * np.pi
    u = generator.uniform(-half_pi, half_pi, size=size)
    w = generator.standard_exponential(size=size)
    shifted = u + half_pi
    head = np.sin(alpha * shifted) / np.power(np.cos(u), 1.0 / alpha)
    tail = np.power(np.cos(u - alpha * shifted) / w, (1.0 - alpha) / alpha)
    return dtau ** (1.0 / alpha) * head * tail


def sample_stable_increment(alpha, dtau, rng, size=None):
    r"""Increment of the alpha-stable subordinator over an operational-time step ``dtau``.

    :param alpha: stability index in (0, 1)
    :param dtau: operational-time step, positive
    :param rng: :class:`RngStream` or numpy ``Generator``
    :param size: number of independent increments, ``None`` for a single float
    """
    if not 0 < alpha < 1:
        raise DomainError('alpha must lie in (0, 1), got {}'.format(alpha))
    if not dtau > 0:
        raise DomainError('dtau must be positive, got {}'.format(dtau))
    draws = _stable_variates(alpha, dtau, 1 if size is None else size, _generator(rng))
    return float(draws[0]) if size is None else draws


def simulate_subordinator(cfg, tau_grid, rng):
    r"""The subordinator itself at the operational times of ``tau_grid``.

    Increments between grid points are drawn exactly, each one stable with the
    length of its own gap.
    """
    tau = tau_grid.times
    if cfg.alpha == 1:
        return TimeSeriesPath(tau_grid, tau.copy(), 'subordinator')
    gaps = np.diff(np.concatenate([[0.0], tau]))
    increments = np.zeros_like(gaps)
    positive = gaps > 0
    if positive.any():
        u_gaps = gaps[positive]
        increments[positive] = _stable_variates(cfg.alpha, 1.0, u_gaps.size, _generator(rng)) * u_gaps ** (1.0 / cfg.alpha)
    return TimeSeriesPath(tau_grid, np.cumsum(increments), 'subordinator')


# Inverse subordinator
# ====================

def moment_T_alpha(alpha, t, m):
    r"""E[T_alpha(t)^m] = t^(m alpha) m! / Gamma(m alpha + 1)."""
    if not 0 < alpha <= 1:
        raise DomainError('alpha must lie in (0, 1], got {}'.format(alpha))
    if t < 0:
        raise DomainError('t must not be negative, got {}'.format(t))
    if int(m) != m or m < 0:
        raise DomainError('m must be a non-negative integer, got {}'.format(m))
    if m == 0:
        return 1.0
    return t ** (m * alpha) * math.factorial(int(m)) / gamma(m * alpha + 1.0)


def expected_delta_T(alpha, t, dt, mode='exact'):
    r"""Expected clock advance over ``[t, t + dt]``.

    ``mode='exact'`` differences the first moment; ``mode='linearized'`` returns
    ``t^(alpha - 1) dt / Gamma(alpha)`` and needs ``t > 0``.
    """
    if not dt > 0:
        raise DomainError('dt must be positive, got {}'.format(dt))
    if mode == 'exact':
        if t < 0:
            raise DomainError('t must not be negative, got {}'.format(t))
        return ((t + dt) ** alpha - t ** alpha) / gamma(alpha + 1.0)
    if mode == 'linearized':
        if not t > 0:
            raise DomainError('the linearized clock advance needs t > 0, got {}'.format(t))
        return t ** (alpha - 1.0) * dt / gamma(alpha)
    raise DomainError('mode must be "exact" or "linearized", got {!r}'.format(mode))


def expected_sq_increment_W(alpha, H, t, dt):
    r"""First-order approximation of E[(W(t + dt) - W(t))^2] for the subordinated motion."""
    return expected_delta_T(alpha, t, dt, mode='linearized') ** (2.0 * H)


def expected_exp_T_alpha(alpha, t, rate, cfg=DEFAULT_EVAL_CONFIG):
    r"""E[exp(rate * T_alpha(t))], which equals E_alpha(rate * t^alpha)."""
    if t < 0:
        raise DomainError('t must not be negative, got {}'.format(t))
    return mittag_leffler(alpha, rate * t ** alpha, cfg)


def default_operational_time_step(alpha, grid, max_steps):
    r"""Operational step whose jump scale ``dtau^(1/alpha)`` is a hundredth of the
    smallest grid gap, coarsened when the walk to the last grid time would need
    more than a quarter of ``max_steps`` steps on average.
    """
    spacing = grid.min_spacing
    if spacing == 0:
        return 1.0
    dtau = (spacing / GRID_RESOLUTION) ** alpha
    expected_steps = moment_T_alpha(alpha, float(grid.times[-1]), 1) / dtau
    if expected_steps > max_steps / 4:
        coarse = 4 * moment_T_alpha(alpha, float(grid.times[-1]), 1) / max_steps
        log_debug('Operational step coarsened from {:.3g} to {:.3g}'.format(dtau, coarse))
        dtau = coarse
    return dtau


def _first_passage_steps(alpha, dtau, levels, n_paths, generator, max_steps):
    # hits[i, j] = min{n : Q(n dtau) > levels[j]} on path i, 0 while unresolved
    hits = np.zeros((n_paths, levels.size), dtype=np.int64)
    position = np.zeros(n_paths)
    active = np.arange(n_paths)
    steps = 0
    while active.size:
        if steps >= max_steps:
            raise ResourceLimitError('inverse subordinator walk exceeded {} operational steps (dtau={:.3g}); '
                                     'raise max_operational_steps or the operational time step'.format(max_steps, dtau))
        block = int(min(max(_MIN_BLOCK, _BLOCK_DRAWS // active.size), max_steps - steps))
        walk = position[active, None] + np.cumsum(_stable_variates(alpha, dtau, (active.size, block), generator), axis=1)
        if levels.size > active.size:
            # Rows are nondecreasing: one search per row resolves every level
            for row, path in enumerate(active):
                first = np.searchsorted(walk[row], levels, side='right')
                resolved = (hits[path] == 0) & (first < block)
                hits[path, resolved] = steps + first[resolved] + 1
        else:
            for j, level in enumerate(levels):
                open_rows = hits[active, j] == 0
                if not open_rows.any():
                    continue
                crossed = walk[open_rows] > level
                found = crossed.any(axis=1)
                hits[active[open_rows][found], j] = steps + crossed[found].argmax(axis=1) + 1
        position[active] = walk[:, -1]
        steps += block
        active = active[hits[active, -1] == 0]
    log_debug('Inverse subordinator walk: {} paths, {} operational steps'.format(n_paths, steps))
    return hits


def sample_inverse_subordinator_paths(cfg, grid, n_paths, rng):
    r"""Ensemble of inverse-subordinator paths, shape ``(n_paths, len(grid))``.

    The walk samples Q exactly on the lattice ``n dtau``, so the first step
    ``n = min{n : Q(n dtau) > t}`` at which it passes the calendar time ``t``
    is ``ceil(T(t) / dtau)``. Each positive time is reported at the middle of
    that step, ``dtau * (n - 1/2)``, which leaves a bias of order ``dtau^2``.
    """
    if n_paths < 1:
        raise DomainError('n_paths must be at least 1, got {}'.format(n_paths))
    times = grid.times
    if cfg.alpha == 1:
        return np.tile(times, (n_paths, 1))
    result = np.zeros((n_paths, times.size))
    positive = times > 0
    if positive.any():
        dtau = cfg.step_for(grid)
        hits = _first_passage_steps(cfg.alpha, dtau, times[positive], n_paths, _generator(rng),
                                    cfg.max_operational_steps)
        result[:, positive] = dtau * (hits - 0.5)
    return result


def simulate_inverse_subordinator(cfg, grid, rng):
    values = sample_inverse_subordinator_paths(cfg, grid, 1, rng)[0]
    return TimeSeriesPath(grid, values, 'inverse_subordinator')


def sample_inverse_subordinator_marginal(alpha, t, n, rng):
    r"""Exact draws of T_alpha(t) at a single time, from T_alpha(t) = (t / Q_alpha(1))^alpha."""
    if not 0.5 < alpha <= 1:
        raise DomainError('alpha must lie in (1/2, 1], got {}'.format(alpha))
    if t < 0:
        raise DomainError('t must not be negative, got {}'.format(t))
    if alpha == 1 or t == 0:
        return np.full(n, float(t))
    return (t / _stable_variates(alpha, 1.0, n, _generator(rng))) ** alpha


# Fractional Brownian motion
# ==========================

def _fbm_covariance(H, times):
    s = times[:, None]
    t = times[None, :]
    return 0.5 * (s ** (2 * H) + t ** (2 * H) - np.abs(t - s) ** (2 * H))


def _cholesky_factor(cov):
    try:
        return cholesky(cov, lower=True)
    except LinAlgError:
        jitter = _CHOLESKY_JITTER * float(np.max(np.diag(cov)))
        log_debug('Covariance of size {} not positive definite, retrying with jitter {:.1e}'.format(len(cov), jitter))
    try:
        return cholesky(cov + jitter * np.eye(len(cov)), lower=True)
    except LinAlgError as e:
        raise FactorizationError('fractional Brownian covariance of size {} could not be factorised: {}'.format(
            len(cov), e))


def _check_hurst(H):
    if not 0.5 <= H < 1:
        raise DomainError('H must lie in [1/2, 1), got {}'.format(H))


def _fbm_on_times(H, times, n_paths, generator):
    # Repeated times share one Gaussian coordinate and time 0 is pinned to 0
    unique, inverse = np.unique(times, return_inverse=True)
    positive = unique > 0
    values = np.zeros((n_paths, unique.size))
    if positive.any():
        factor = _cholesky_factor(_fbm_covariance(H, unique[positive]))
        values[:, positive] = generator.standard_normal((n_paths, factor.shape[0])) @ factor.T
    return values[:, inverse.reshape(-1)]


def simulate_fbm_uniform(H, horizon, n_steps, rng, n_paths=1):
    r"""Fractional Brownian motion on ``n_steps + 1`` equally spaced points of
    ``[0, horizon]`` by circulant embedding of the fractional Gaussian noise,
    shape ``(n_paths, n_steps + 1)``.
    """
    _check_hurst(H)
    if not horizon > 0 or n_steps < 0:
        raise DomainError('need horizon > 0 and n_steps >= 0, got {} and {}'.format(horizon, n_steps))
    if n_steps == 0:
        return np.zeros((n_paths, 1))
    lags = np.arange(n_steps + 1, dtype=np.float64)
    autocov = 0.5 * ((lags + 1) ** (2 * H) - 2 * lags ** (2 * H) + np.abs(lags - 1) ** (2 * H))
    row = np.concatenate([autocov, autocov[-2:0:-1]])
    eigenvalues = np.fft.fft(row).real
    if eigenvalues.min() < -1e-10 * eigenvalues.max():
        raise FactorizationError('circulant embedding has a negative eigenvalue {:.3g} for H={}'.format(
            eigenvalues.min(), H))
    eigenvalues = np.clip(eigenvalues, 0.0, None)
    generator = _generator(rng)
    noise = generator.standard_normal((n_paths, row.size)) + 1j * generator.standard_normal((n_paths, row.size))
    gaussian_noise = np.fft.fft(np.sqrt(eigenvalues / row.size) * noise, axis=1).real[:, :n_steps]
    increments = gaussian_noise * (horizon / n_steps) ** H
    return np.concatenate([np.zeros((n_paths, 1)), np.cumsum(increments, axis=1)], axis=1)


def simulate_fbm_at_times(H, times, rng, n_paths=None, method='cholesky'):
    r"""Fractional Brownian motion sampled at arbitrary nondecreasing times.

    Returns one array of ``len(times)`` values, or ``(n_paths, len(times))``
    when ``n_paths`` is given. ``method='circulant'`` requires a uniform grid
    starting at 0.
    """
    _check_hurst(H)
    times = np.asarray(times, dtype=np.float64).reshape(-1)
    if times.size == 0 or times[0] < 0 or np.any(np.diff(times) < 0):
        raise DomainError('times must be non-empty, non-negative and nondecreasing')
    count = 1 if n_paths is None else n_paths
    if method == 'cholesky':
        values = _fbm_on_times(H, times, count, _generator(rng))
    elif method == 'circulant':
        if times.size > 1 and (times[0] != 0 or not np.allclose(np.diff(times), times[1] - times[0],
                                                                rtol=1e-9, atol=0)):
            raise DomainError('the circulant method needs a uniform grid starting at 0')
        if times.size == 1:
            values = _fbm_on_times(H, times, count, _generator(rng))
        else:
            values = simulate_fbm_uniform(H, float(times[-1]), times.size - 1, rng, count)
    else:
        raise DomainError('method must be "cholesky" or "circulant", got {!r}'.format(method))
    return values[0] if n_paths is None else values


# Subordinated motion and exchange rate
# =====================================

def sample_subdiffusive_fbm_paths(cfg, H, grid, n_paths, rng):
    r"""Ensemble of ``(T, W)`` with ``W(t) = B_H(T_alpha(t))``, both ``(n_paths, len(grid))``.

    The clock draws from child stream 0 and the Gaussian draws from child stream 1,
    so the clock is independent of the driving motion.
    """
    _check_hurst(H)
    clock = sample_inverse_subordinator_paths(cfg, grid, n_paths, rng_child(rng, SUBORDINATOR_STREAM))
    generator = _generator(rng_child(rng, FBM_STREAM))
    motion = np.empty_like(clock)
    for i in range(n_paths):
        motion[i] = _fbm_on_times(H, clock[i], 1, generator)[0]
    return clock, motion


def simulate_subdiffusive_fbm(cfg, H, grid, rng):
    _, motion = sample_subdiffusive_fbm_paths(cfg, H, grid, 1, rng)
    return TimeSeriesPath(grid, motion[0], 'subdiffusive_fbm')


def simulate_exchange_rate(params, S0, grid, rng, cfg=None, fbm_method='cholesky'):
    r"""Exchange-rate path ``S0 * exp((r_d - r_f) T_alpha(t) + sigma W(t))``.

    :param params: model parameters (``alpha``, ``H``, ``sigma``, ``r_d``, ``r_f`` are used)
    :param S0: initial rate, positive
    :param cfg: clock discretisation, defaults to ``SubordinatorConfig(params.alpha)``
    :param fbm_method: ``'circulant'`` is only used for the identity clock on a uniform grid
    """
    if not S0 > 0:
        raise DomainError('S0 must be positive, got {}'.format(S0))
    cfg = cfg or SubordinatorConfig(params.alpha)
    if cfg.alpha == 1 and fbm_method == 'circulant':
        clock = grid.times
        motion = simulate_fbm_at_times(params.H, clock, rng_child(rng, FBM_STREAM), method='circulant')
    else:
        clock, motion = sample_subdiffusive_fbm_paths(cfg, params.H, grid, 1, rng)
        clock, motion = clock[0], motion[0]
    values = S0 * np.exp((params.r_d - params.r_f) * clock + params.sigma * motion)
    return TimeSeriesPath(grid, values, 'exchange_rate')


def sample_subordinated_increments(cfg, H, t, dt, n_paths, rng):
    r"""Clock level and increments over ``[t, t + dt)``: arrays ``(T(t), dT, dW)``.

    Given the clock, the motion increment is Gaussian with variance ``dT^(2H)``
    (stationary increments of B_H), so ``dW = dT^H Z`` with ``Z`` from child stream 1.
    """
    _check_hurst(H)
    if t < 0 or not dt > 0:
        raise DomainError('need t >= 0 and dt > 0, got t={} dt={}'.format(t, dt))
    grid = TimeGrid([t, t + dt]) if t > 0 else TimeGrid([dt])
    clock = sample_inverse_subordinator_paths(cfg, grid, n_paths, rng_child(rng, SUBORDINATOR_STREAM))
    if t > 0:
        start, delta = clock[:, 0], clock[:, 1] - clock[:, 0]
    else:
        start, delta = np.zeros(n_paths), clock[:, 0]
    z = _generator(rng_child(rng, FBM_STREAM)).standard_normal(n_paths)
    return start, delta, delta ** H * z
