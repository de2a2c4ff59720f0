from __future__ import absolute_import, division, print_function

import sys

from dataclasses import asdict

import pandas


# 17 significant digits re-parse to the identical double
FLOAT_FORMAT = '%.17g'

INPUT_COLUMNS = ['spot', 'strike', 't', 'T', 'kind', 'sigma', 'r_d', 'r_f', 'alpha', 'H', 'k', 'dt']


def record_frame(*records, **columns):
    r"""One-row frame from keyword columns followed by the fields of dataclass records."""
    row = dict(columns)
    for record in records:
        row.update(asdict(record))
    return pandas.DataFrame([row])


def input_columns(config, names=INPUT_COLUMNS):
    return {name: config[name] for name in names}


def write_csv(frame, out=''):
    r"""Write ``frame`` as comma-separated text with a header row and LF line endings.

    An empty ``out`` writes to stdout.
    """
    target = out or sys.stdout
    frame.to_csv(target, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')


def read_csv(path):
    return pandas.read_csv(path, float_precision='round_trip')
