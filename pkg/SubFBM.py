#!/usr/bin/env python
# -*- coding: utf-8 -*-
from __future__ import absolute_import, division, print_function

import sys

import absl.app

from util.config import COMMANDS, Config, initialize_globals
from util.errors import SubFBMError, ValidationError
from util.experiments import COMMANDS as COMMAND_FUNCTIONS
from util.flags import create_flags
from util.logging import log_debug, log_error


USAGE = 'usage: subfbm <command> [--config FILE] [--set key=value]... [--out FILE] [--seed N]\n' \
        'commands: {}'.format(', '.join(COMMANDS))


def fail(message, code=1):
    log_error(message)
    sys.exit(code)


def main(argv):
    if len(argv) != 2 or argv[1] not in COMMANDS:
        fail('{}\ngot: {}'.format(USAGE, ' '.join(argv[1:]) or '(no command)'), code=2)
    command = argv[1]

    try:
        initialize_globals(command)
    except ValidationError as e:
        fail('Invalid configuration: {}'.format(e), code=2)

    log_debug('Running {} with seed {}'.format(command, Config.seed))
    try:
        COMMAND_FUNCTIONS[command](Config)
    except ValidationError as e:
        fail('Invalid configuration: {}'.format(e), code=2)
    except (SubFBMError, OSError) as e:
        fail('{} failed: {}'.format(command, e))


def run():
    create_flags()
    absl.app.run(main)


if __name__ == '__main__':
    run()
