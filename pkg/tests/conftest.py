from __future__ import absolute_import, division, print_function

import numpy as np
import pytest

from util.flags import create_flags, FLAGS
from util.pricing import ModelParams, OptionContract


# Library code reads --log_level and --show_progressbar; parse the defaults once
create_flags()
FLAGS.mark_as_parsed()


FIG4 = dict(sigma=0.1, r_d=0.03, r_f=0.02, alpha=0.9, H=0.8, k=0.01, dt=0.01)


@pytest.fixture
def fig4_params():
    return ModelParams(**FIG4)


@pytest.fixture
def fig4_contract():
    return OptionContract(spot=1.4, strike=1.5, t=0.1, T=1.0)


@pytest.fixture
def classical_params():
    # Brownian motion, identity clock, no transaction costs
    return ModelParams(sigma=0.1, r_d=0.03, r_f=0.02, alpha=1.0, H=0.5, k=0.0, dt=1e-4)


def random_model(rng, near_money=True):
    r"""A random valid (contract, params) pair close enough to the money for
    relative comparisons to be meaningful."""
    alpha = rng.uniform(0.85, 1.0)
    H = rng.uniform(0.5, 0.8)
    params = ModelParams(sigma=rng.uniform(0.15, 0.4), r_d=rng.uniform(0.01, 0.05), r_f=rng.uniform(0.0, 0.05),
                         alpha=alpha, H=H, k=rng.uniform(0.0, 0.02), dt=rng.uniform(0.01, 0.05))
    spot = rng.uniform(0.8, 1.6)
    moneyness = rng.uniform(-0.05, 0.05) if near_money else rng.uniform(-0.5, 0.5)
    t = rng.uniform(0.05, 0.5)
    contract = OptionContract(spot=spot, strike=spot * np.exp(moneyness), t=t, T=t + rng.uniform(0.5, 1.0))
    return contract, params


@pytest.fixture
def model_sampler():
    return random_model
