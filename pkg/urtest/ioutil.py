# -*- coding: utf-8 -*-
"""Reading input series and reading or writing rejection tables."""
import json
import logging
import os

import numpy as np
import pandas as pd

from .exceptions import InsufficientData, MalformedInput
from .montecarlo import RejectionTable

_logger = logging.getLogger(__name__)

MIN_OBSERVATIONS = 20


def read_series_csv(path, min_length=MIN_OBSERVATIONS):
    """Read a single column CSV file of observations.

    The first row is treated as a header when it is not a number. Blank lines are
    skipped.

    Args:
        path: Path to the CSV file.
        min_length: Minimum number of observations (default: 20).

    Returns:
        A numpy array of observations.
    """
    try:
        frame = pd.read_csv(
            path, header=None, dtype=str, keep_default_na=False,
            skip_blank_lines=False
        )
    except pd.errors.EmptyDataError:
        raise MalformedInput('Input file %s is empty.' % path)
    except pd.errors.ParserError as e:
        raise MalformedInput('Failed to parse %s: %s' % (path, e))
    if frame.shape[1] != 1:
        raise MalformedInput(
            'Expected a single column of observations. Got %d columns.'
            % frame.shape[1], 1
        )
    values = []
    for i, text in enumerate(frame.iloc[:, 0]):
        text = text.strip()
        if not text:
            continue
        try:
            value = float(text)
        except ValueError:
            if i == 0:
                _logger.debug('Skipped header %r.', text)
                continue
            raise MalformedInput('%r is not a number.' % text, i + 1)
        if not np.isfinite(value):
            raise MalformedInput('%r is not a finite number.' % text, i + 1)
        values.append(value)
    if len(values) < min_length:
        raise InsufficientData(
            'Input file %s has %d observations. At least %d are needed.'
            % (path, len(values), min_length)
        )
    return np.array(values)


def metadata_path(path):
    """Path of the JSON metadata file written next to a CSV table."""
    return os.path.splitext(path)[0] + '.json'


def write_rejection_table(table, path):
    """Write a rejection table as CSV and its metadata as a JSON sidecar.

    Both files are removed if writing fails.

    Returns:
        A tuple of (csv path, metadata path).
    """
    meta = metadata_path(path)
    frame = pd.DataFrame(table.rows, columns=RejectionTable.COLUMNS)
    try:
        frame.to_csv(path, index=False, lineterminator='\n')
        with open(meta, 'w') as outf:
            json.dump(table.metadata, outf, indent=2, sort_keys=True)
    except Exception:
        for p in (path, meta):
            if os.path.isfile(p):
                os.remove(p)
        raise
    _logger.info('Wrote %d rows to %s.', len(table), path)
    return path, meta


def read_rejection_table(path):
    """Read a rejection table written by write_rejection_table."""
    try:
        frame = pd.read_csv(
            path, float_precision='round_trip',
            dtype={'model': str, 'method': str, 'statistic': str}
        )
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as e:
        raise MalformedInput('Failed to parse %s: %s' % (path, e))
    missing = set(RejectionTable.COLUMNS) - set(frame.columns)
    if missing:
        raise MalformedInput('%s is missing columns %s.' % (path, sorted(missing)), 1)
    metadata = {}
    meta = metadata_path(path)
    if os.path.isfile(meta):
        with open(meta) as inf:
            metadata = json.load(inf)
    return RejectionTable(frame.to_dict('records'), metadata)
