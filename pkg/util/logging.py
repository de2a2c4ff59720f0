from __future__ import print_function

import progressbar
import sys

from absl.flags import UnparsedFlagAccessError

from util.flags import FLAGS


# Logging functions
# =================

# Messages go to stderr: stdout carries CSV results when --out is empty.

def prefix_print(prefix, message):
    print(prefix + ('\n' + prefix).join(message.split('\n')), file=sys.stderr)


def _flag(name, default):
    # Library code logs before (or without) flag parsing, e.g. under pytest
    try:
        return getattr(FLAGS, name)
    except (AttributeError, UnparsedFlagAccessError):
        return default


def log_debug(message):
    if _flag('log_level', 1) == 0:
        prefix_print('D ', message)


def log_info(message):
    if _flag('log_level', 1) <= 1:
        prefix_print('I ', message)


def log_warn(message):
    if _flag('log_level', 1) <= 2:
        prefix_print('W ', message)


def log_error(message):
    if _flag('log_level', 1) <= 3:
        prefix_print('E ', message)


def create_progressbar(*args, **kwargs):
    # Progress bars in stderr by default
    if 'fd' not in kwargs:
        kwargs['fd'] = sys.stderr

    if _flag('show_progressbar', False):
        return progressbar.ProgressBar(*args, **kwargs)

    return progressbar.NullBar(*args, **kwargs)


def log_progress(message):
    if not _flag('show_progressbar', False):
        log_info(message)
