# -*- coding: utf-8 -*-
from __future__ import absolute_import, division, print_function

import math

from dataclasses import dataclass

import numpy as np

from scipy import special

from util.errors import ConvergenceError, DomainError
from util.logging import log_debug


SQRT_2 = math.sqrt(2.0)
SQRT_2PI = math.sqrt(2.0 * math.pi)
_EPSILON = np.finfo(float).eps


@dataclass(frozen=True)
class EvalConfig:
    r"""Tolerances for the Mittag-Leffler series.

    ``max_abs_z`` bounds the arguments accepted by the direct power series; the
    series converges everywhere but loses accuracy to cancellation for large
    negative arguments.
    """
    abs_tol: float = 1e-13
    max_terms: int = 500
    max_abs_z: float = 30.0

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError('abs_tol must be positive, got {}'.format(self.abs_tol))
        if self.max_terms < 1:
            raise DomainError('max_terms must be at least 1, got {}'.format(self.max_terms))
        if not self.max_abs_z > 0:
            raise DomainError('max_abs_z must be positive, got {}'.format(self.max_abs_z))


DEFAULT_EVAL_CONFIG = EvalConfig()


def _require_positive(name, x):
    if not np.all(np.asarray(x) > 0):
        raise DomainError('{} must be positive, got {}'.format(name, x))


def gamma(x):
    r"""Euler's Gamma function for ``x > 0``."""
    _require_positive('x', x)
    value = special.gamma(x)
    return float(value) if np.ndim(value) == 0 else value


def log_gamma(x):
    r"""Natural logarithm of the Gamma function for ``x > 0``."""
    _require_positive('x', x)
    value = special.gammaln(x)
    return float(value) if np.ndim(value) == 0 else value


def std_normal_cdf(x):
    # erfc keeps the lower tail accurate where 1 + erf would underflow
    value = 0.5 * special.erfc(-np.asarray(x, dtype=np.float64) / SQRT_2)
    return float(value) if np.ndim(value) == 0 else value


def std_normal_pdf(x):
    x = np.asarray(x, dtype=np.float64)
    value = np.exp(-0.5 * x * x) / SQRT_2PI
    return float(value) if np.ndim(value) == 0 else value


def mittag_leffler(alpha, z, cfg=DEFAULT_EVAL_CONFIG):
    r"""One-parameter Mittag-Leffler function

        E_alpha(z) = sum_{j >= 0} z^j / Gamma(j * alpha + 1)

    evaluated by its power series for ``0 < alpha <= 1`` and ``|z| <= cfg.max_abs_z``.
    Terms are formed in log space so that Gamma never overflows. Summation stops
    once the terms decrease and fall below ``cfg.abs_tol``; a ``ConvergenceError``
    is raised if that does not happen within ``cfg.max_terms`` terms.

    For negative ``z`` the series alternates and its largest terms cancel. The
    rounding error carried by the terms is bounded alongside the sum, and a
    ``ConvergenceError`` is raised when that bound exceeds ``cfg.abs_tol``.
    ``alpha = 1`` is the exponential and is evaluated directly.
    """
    if not 0 < alpha <= 1:
        raise DomainError('alpha must lie in (0, 1], got {}'.format(alpha))
    if not math.isfinite(z) or abs(z) > cfg.max_abs_z:
        raise DomainError('|z| must not exceed {}, got z={}'.format(cfg.max_abs_z, z))

    if z == 0:
        return 1.0
    if alpha == 1:
        return math.exp(z)

    log_abs_z = math.log(abs(z))
    negative = z < 0
    terms = [1.0]
    rounding = _EPSILON
    previous = 1.0
    for j in range(1, cfg.max_terms):
        exponent = j * log_abs_z - special.gammaln(j * alpha + 1.0)
        magnitude = math.exp(exponent)
        # exp turns the absolute error of the exponent into a relative error of the term
        rounding += _EPSILON * magnitude * (2.0 + abs(j * log_abs_z) + abs(exponent))
        term = -magnitude if (negative and j % 2) else magnitude
        terms.append(term)
        if magnitude < cfg.abs_tol and magnitude <= previous:
            if negative and rounding > cfg.abs_tol:
                raise ConvergenceError('Mittag-Leffler series for alpha={}, z={} loses accuracy to cancellation: '
                                       'rounding error ~{:.1e} exceeds {}'.format(alpha, z, rounding, cfg.abs_tol))
            log_debug('mittag_leffler({}, {}): {} terms, rounding error ~{:.1e}'.format(alpha, z, j + 1, rounding))
            return math.fsum(terms)
        previous = magnitude

    raise ConvergenceError('Mittag-Leffler series for alpha={}, z={} did not reach {} within {} terms'.format(
        alpha, z, cfg.abs_tol, cfg.max_terms))
