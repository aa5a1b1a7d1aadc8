# -*- coding: utf-8 -*-
import os

import numpy as np
import pytest

from urtest.exceptions import InsufficientData, MalformedInput
from urtest.ioutil import (metadata_path, read_rejection_table, read_series_csv,
    write_rejection_table)
from urtest.montecarlo import RejectionTable


def _rows():
    return [
        {'model': 'MA', 'phi': 1, 'omega': 1, 'n': 100, 'method': 'DWB',
         'statistic': 'T', 'c': 0.0, 'rate': 0.052, 'failures': 0},
        {'model': 'AR', 'phi': 6, 'omega': 5, 'n': 100, 'method': 'RDWB(l=mv)',
         'statistic': 't', 'c': -10.0, 'rate': 1.0 / 3.0, 'failures': 2}
    ]


def test_read_series_with_header():
    values = read_series_csv('./tests/assets/series/random_walk_100.csv')
    assert values.size == 100
    assert values[0] == pytest.approx(-1.2552116489)
    assert np.all(np.isfinite(values))


def test_read_series_without_header(tmp_path):
    path = tmp_path / 'plain.csv'
    path.write_text('\n'.join(str(v) for v in range(25)) + '\n\n')
    values = read_series_csv(str(path))
    np.testing.assert_array_equal(values, np.arange(25))


def test_read_series_blank_lines(tmp_path):
    path = tmp_path / 'blank.csv'
    path.write_text('x\n1\n\n2\n3\n')
    np.testing.assert_array_equal(read_series_csv(str(path), min_length=3), [1, 2, 3])


def test_read_series_malformed():
    with pytest.raises(MalformedInput) as excinfo:
        read_series_csv('./tests/assets/series/malformed.csv', min_length=1)
    assert excinfo.value.line == 4
    assert 'line 4' in str(excinfo.value)
    assert excinfo.value.exit_code == 2


def test_read_series_non_finite(tmp_path):
    path = tmp_path / 'inf.csv'
    path.write_text('1\n2\ninf\n')
    with pytest.raises(MalformedInput) as excinfo:
        read_series_csv(str(path), min_length=1)
    assert excinfo.value.line == 3


def test_read_series_two_columns(tmp_path):
    path = tmp_path / 'wide.csv'
    path.write_text('1,2\n3,4\n')
    with pytest.raises(MalformedInput):
        read_series_csv(str(path), min_length=1)


def test_read_series_empty():
    with pytest.raises(MalformedInput):
        read_series_csv('./tests/assets/series/empty.csv')


def test_read_series_too_short(tmp_path):
    path = tmp_path / 'short.csv'
    path.write_text('\n'.join(str(v) for v in range(19)))
    with pytest.raises(InsufficientData):
        read_series_csv(str(path))


def test_metadata_path():
    assert metadata_path('out/size.csv') == 'out/size.json'
    assert metadata_path('table') == 'table.json'


def test_rejection_table_files(tmp_path):
    path = str(tmp_path / 'size.csv')
    table = RejectionTable(_rows(), {'kind': 'size', 'N': 3})
    csv_path, meta = write_rejection_table(table, path)
    assert csv_path == path
    assert os.path.isfile(meta)
    with open(path) as inf:
        header = inf.readline().strip()
    assert header == ','.join(RejectionTable.COLUMNS)
    loaded = read_rejection_table(path)
    assert loaded == table
    assert loaded.rate('AR_6_5', 100, 'RDWB(l=mv)', 't', -10) == 1.0 / 3.0


def test_rejection_table_without_metadata(tmp_path):
    path = str(tmp_path / 'power.csv')
    write_rejection_table(RejectionTable(_rows()), path)
    os.remove(metadata_path(path))
    assert read_rejection_table(path).metadata == {}


def test_failed_write_leaves_no_partial_table(tmp_path):
    path = str(tmp_path / 'size.csv')
    os.mkdir(metadata_path(path))
    with pytest.raises(OSError):
        write_rejection_table(RejectionTable(_rows()), path)
    assert not os.path.exists(path)
