from __future__ import absolute_import, division, print_function

import os

from dataclasses import dataclass, field

import numpy as np

from util.errors import DomainError, ValidationError
from util.flags import FLAGS
from util.logging import log_debug
from util.pricing import ModelParams, OptionContract


COMMANDS = ['paths', 'price', 'greeks', 'minprice', 'sweep', 'compare', 'hedge', 'moments']

SWEEP_VARIABLES = ['H', 'alpha', 'k', 'dt', 'K', 'T']

DEFAULT_SEED = 4568
SEED_ENVIRONMENT = 'SUBFBM_SEED'

MIN_HEDGE_PATHS = 10000

# Every key a config file or --set may name, with its parser
KEYS = {
    # Model
    'sigma': float,
    'r_d': float,
    'r_f': float,
    'alpha': float,
    'H': float,
    'k': float,
    'dt': float,
    # Contract
    'spot': float,
    'strike': float,
    't': float,
    'T': float,
    'kind': str,
    # Paths
    'S0': float,
    'horizon': float,
    'n_steps': int,
    'operational_time_step': float,
    'fbm_method': str,
    # Sweeps
    'sweep_var': str,
    'sweep_start': float,
    'sweep_stop': float,
    'sweep_points': int,
    # Strike/maturity grid
    'moneyness': str,
    'tenor_start': float,
    'tenor_stop': float,
    'tenor_points': int,
    'K_start': float,
    'K_stop': float,
    'K_points': int,
    # Monte Carlo
    'n_paths': int,
    'seed': int,
}

DEFAULTS = {
    'sigma': 0.1,
    'r_d': 0.03,
    'r_f': 0.02,
    'alpha': 0.9,
    'H': 0.8,
    'k': 0.01,
    'dt': 0.01,
    'spot': 1.4,
    'strike': 1.5,
    't': 0.1,
    'T': 1.0,
    'kind': 'call',
    'S0': 1.0,
    'horizon': 1.0,
    'n_steps': 500,
    'fbm_method': 'cholesky',
    'sweep_var': 'k',
    'sweep_start': 0.0,
    'sweep_stop': 0.05,
    'sweep_points': 51,
    'moneyness': 'out',
    'tenor_start': 0.1,
    'tenor_stop': 2.0,
    'tenor_points': 20,
    'K_points': 20,
    'n_paths': 100000,
}

# Strike ranges of the in- and out-of-the-money comparison grids
MONEYNESS_STRIKES = {
    'in': (0.8, 1.19),
    'out': (1.21, 1.4),
}

PRESETS = {
    'fig1': {
        'r_d': 0.03, 'r_f': 0.02, 'alpha': 0.9, 'H': 0.8, 'sigma': 0.1, 'S0': 1.0, 'k': 0.0,
    },
    'fig4': {
        'spot': 1.4, 'strike': 1.5, 'sigma': 0.1, 'r_d': 0.03, 'r_f': 0.02, 'T': 1.0, 't': 0.1,
        'dt': 0.01, 'k': 0.01, 'H': 0.8, 'alpha': 0.9,
    },
    'fig56-in': {
        'spot': 1.2, 'sigma': 0.5, 'r_d': 0.05, 'r_f': 0.01, 't': 0.1, 'dt': 0.01, 'k': 0.001, 'H': 0.8,
        'alpha': 0.9, 'moneyness': 'in',
    },
    'fig56-out': {
        'spot': 1.2, 'sigma': 0.5, 'r_d': 0.05, 'r_f': 0.01, 't': 0.1, 'dt': 0.01, 'k': 0.001, 'H': 0.8,
        'alpha': 0.9, 'moneyness': 'out',
    },
}

COMMAND_PRESETS = {
    'paths': 'fig1',
    'compare': 'fig56-out',
}


@dataclass
class ExperimentConfig:
    command: str
    values: dict
    seed: int = DEFAULT_SEED
    out: str = ''
    workers: int = 1
    preset: str = ''
    sources: list = field(default_factory=list)

    def __getitem__(self, key):
        return self.values[key]

    def params(self, **changes):
        values = dict(self.values, **changes)
        return ModelParams(sigma=values['sigma'], r_d=values['r_d'], r_f=values['r_f'], alpha=values['alpha'],
                           H=values['H'], k=values['k'], dt=values['dt'])

    def contract(self, **changes):
        values = dict(self.values, **changes)
        return OptionContract(spot=values['spot'], strike=values['strike'], t=values['t'], T=values['T'],
                              kind=values['kind'])

    def sweep_values(self):
        return np.linspace(self['sweep_start'], self['sweep_stop'], self['sweep_points'])

    def strike_values(self):
        start, stop = MONEYNESS_STRIKES[self['moneyness']]
        return np.linspace(self.values.get('K_start', start), self.values.get('K_stop', stop), self['K_points'])

    def tenor_values(self):
        return np.linspace(self['tenor_start'], self['tenor_stop'], self['tenor_points'])


class ConfigSingleton:
    _config = None

    def __getattr__(self, name):
        if not ConfigSingleton._config:
            raise RuntimeError("Global configuration not yet initialized.")
        if not hasattr(ConfigSingleton._config, name):
            raise RuntimeError("Configuration option {} not found in config.".format(name))
        return getattr(ConfigSingleton._config, name)

    def __getitem__(self, key):
        if not ConfigSingleton._config:
            raise RuntimeError("Global configuration not yet initialized.")
        return ConfigSingleton._config[key]


Config = ConfigSingleton() # pylint: disable=invalid-name


def parse_assignment(text, source):
    if '=' not in text:
        raise ValidationError('{}: expected key=value, got {!r}'.format(source, text))
    key, raw = (part.strip() for part in text.split('=', 1))
    if key not in KEYS:
        raise ValidationError('{}: unknown key {!r}'.format(source, key))
    try:
        return key, KEYS[key](raw)
    except ValueError:
        raise ValidationError('{}: value {!r} for {!r} is not a valid {}'.format(source, raw, key, KEYS[key].__name__))


def read_config_file(path):
    values = {}
    with open(path, 'r') as config_file:
        for number, line in enumerate(config_file, start=1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            key, value = parse_assignment(line, '{}:{}'.format(path, number))
            values[key] = value
    return values


def _validate(config):
    c = config.values
    command = config.command

    def check(build, what):
        try:
            return build()
        except DomainError as e:
            raise ValidationError('{}: {}'.format(what, e))

    check(config.params, 'model parameters')

    if command in ('price', 'greeks', 'minprice', 'sweep', 'hedge'):
        check(config.contract, 'option contract')

    if command in ('greeks', 'hedge') and c['kind'] != 'call':
        raise ValidationError('{} needs kind=call, got {!r}'.format(command, c['kind']))

    if command == 'minprice' and not c['k'] > 0:
        raise ValidationError('minprice needs k > 0 (transaction costs), got k={}'.format(c['k']))

    if command == 'paths':
        if not c['S0'] > 0:
            raise ValidationError('S0 must be positive, got {}'.format(c['S0']))
        if not c['horizon'] > 0 or c['n_steps'] < 0:
            raise ValidationError('need horizon > 0 and n_steps >= 0, got {} and {}'.format(c['horizon'], c['n_steps']))
        if c['fbm_method'] not in ('cholesky', 'circulant'):
            raise ValidationError('fbm_method must be "cholesky" or "circulant", got {!r}'.format(c['fbm_method']))
        if 'operational_time_step' in c and not c['operational_time_step'] > 0:
            raise ValidationError('operational_time_step must be positive, got {}'.format(c['operational_time_step']))

    if command == 'sweep':
        if c['sweep_var'] not in SWEEP_VARIABLES:
            raise ValidationError('sweep_var must be one of {}, got {!r}'.format(', '.join(SWEEP_VARIABLES), c['sweep_var']))
        if c['sweep_points'] < 1:
            raise ValidationError('sweep_points must be at least 1, got {}'.format(c['sweep_points']))
        for value in config.sweep_values():
            changes = {'strike' if c['sweep_var'] == 'K' else c['sweep_var']: float(value)}
            check(lambda: config.params(**changes), 'sweep point {}={}'.format(c['sweep_var'], value))
            check(lambda: config.contract(**changes), 'sweep point {}={}'.format(c['sweep_var'], value))

    if command == 'compare':
        if c['moneyness'] not in MONEYNESS_STRIKES:
            raise ValidationError('moneyness must be "in" or "out", got {!r}'.format(c['moneyness']))
        if c['tenor_points'] < 1 or c['K_points'] < 1:
            raise ValidationError('tenor_points and K_points must be at least 1')
        if not c['tenor_start'] > 0:
            raise ValidationError('tenor_start must be positive, got {}'.format(c['tenor_start']))
        for strike in config.strike_values():
            check(lambda: config.contract(strike=float(strike), T=c['t'] + c['tenor_start']),
                  'comparison grid strike {}'.format(strike))

    if command in ('hedge', 'moments'):
        if c['n_paths'] < MIN_HEDGE_PATHS:
            raise ValidationError('n_paths must be at least {}, got {}'.format(MIN_HEDGE_PATHS, c['n_paths']))
        if command == 'hedge' and not c['t'] + c['dt'] < c['T']:
            raise ValidationError('need t + dt < T, got t={} dt={} T={}'.format(c['t'], c['dt'], c['T']))
        if command == 'moments' and not c['t'] > 0:
            raise ValidationError('moments needs t > 0, got t={}'.format(c['t']))

    if config.seed < 0:
        raise ValidationError('seed must not be negative, got {}'.format(config.seed))
    if config.workers < 0:
        raise ValidationError('workers must not be negative, got {}'.format(config.workers))


def load_config(command, preset='', config_path='', overrides=(), seed=None, out='', workers=1,
                environ=os.environ):
    r"""Resolve the configuration of one command.

    Layers, lowest to highest: built-in defaults, the preset, the key=value file,
    the ``key=value`` overrides, and finally explicit ``seed``/``out`` arguments.
    The seed falls back to the ``seed`` key, then to ``SUBFBM_SEED``, then to 4568.
    """
    if command not in COMMANDS:
        raise ValidationError('unknown command {!r}, expected one of {}'.format(command, ', '.join(COMMANDS)))
    preset = preset or COMMAND_PRESETS.get(command, 'fig4')
    if preset not in PRESETS:
        raise ValidationError('unknown preset {!r}, expected one of {}'.format(preset, ', '.join(PRESETS)))

    values = dict(DEFAULTS)
    values.update(PRESETS[preset])
    sources = ['preset ' + preset]
    if config_path:
        try:
            values.update(read_config_file(config_path))
        except OSError as e:
            raise ValidationError('cannot read config file {}: {}'.format(config_path, e))
        sources.append(config_path)
    for number, text in enumerate(overrides, start=1):
        key, value = parse_assignment(text, '--set #{}'.format(number))
        values[key] = value
        sources.append('--set ' + text)

    if seed is None:
        seed = values.get('seed')
    if seed is None and environ.get(SEED_ENVIRONMENT):
        try:
            seed = int(environ[SEED_ENVIRONMENT])
        except ValueError:
            raise ValidationError('{} must be an integer, got {!r}'.format(SEED_ENVIRONMENT, environ[SEED_ENVIRONMENT]))
    if seed is None:
        seed = DEFAULT_SEED

    config = ExperimentConfig(command=command, values=values, seed=seed, out=out, workers=workers, preset=preset,
                              sources=sources)
    _validate(config)
    log_debug('Configuration for {} from {}'.format(command, ', '.join(sources)))
    return config


def initialize_globals(command):
    c = load_config(command,
                    preset=FLAGS.preset,
                    config_path=FLAGS.config,
                    overrides=FLAGS.set,
                    seed=FLAGS.seed,
                    out=FLAGS.out,
                    workers=FLAGS.workers)

    ConfigSingleton._config = c # pylint: disable=protected-access
