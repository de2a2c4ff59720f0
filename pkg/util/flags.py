from __future__ import absolute_import, division, print_function

import absl.flags

FLAGS = absl.flags.FLAGS

PRESETS = ['fig1', 'fig4', 'fig56-in', 'fig56-out']


def create_flags():
    # Experiment configuration
    # ========================

    f = absl.flags

    f.DEFINE_string('config', '', 'path to a file of key=value lines (one per line, "#" starts a comment) overriding the preset')
    f.DEFINE_string('preset', '', 'named parameter set to start from - one of {} - if empty, the default preset of the chosen command is used'.format(', '.join(PRESETS)))
    f.DEFINE_multi_string('set', [], 'key=value override applied after the preset and the --config file, may be repeated')

    # Outputs
    # =======

    f.DEFINE_string('out', '', 'CSV file to write results to - for the "paths" command this is a file name prefix. If empty, results are written to stdout ("paths" uses the prefix "paths")')

    # Monte Carlo
    # ===========

    f.DEFINE_integer('seed', None, 'random seed for every stochastic command - defaults to the "seed" key, then to the SUBFBM_SEED environment variable, then to 4568')
    f.DEFINE_integer('workers', 0, 'number of worker threads for Monte Carlo chunks - 0 means one per CPU')

    # Reporting
    # =========

    f.DEFINE_integer('log_level', 1, 'log level for console logs - 0: DEBUG, 1: INFO, 2: WARN, 3: ERROR')
    f.DEFINE_boolean('show_progressbar', True, 'show progress of Monte Carlo experiments')

