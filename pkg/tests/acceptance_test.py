# -*- coding: utf-8 -*-
"""Desk scale Monte Carlo checks: N = 500 replications and B = 399.

Windows allow a few binomial standard errors around published rejection rates.
These tests take minutes per cell and only run with ``pytest -m slow``.
"""
import math

import pytest

from urtest.config import desk_scale, thread_count
from urtest.montecarlo import ExperimentSpec, run_size_experiment, size_corrected_power

pytestmark = pytest.mark.slow


def _spec(dgps, n, methods, **kwargs):
    data = {'dgps': dgps, 'n': n, 'methods': methods, 'seed': 20240601}
    data.update(kwargs)
    return ExperimentSpec.from_dict(data, dict(desk_scale, seed=0))


def _size(dgps, n, methods):
    return run_size_experiment(_spec(dgps, n, methods), threads=thread_count(0))


def test_recolored_bootstraps_hold_size():
    table = _size(['MA_1_1'], 100, ['rwb', 'rdwb', {'method': 'dwb', 'l': 6}])
    for s in ('T', 't'):
        assert 0.02 <= table.rate('MA_1_1', 100, 'RDWB', s) <= 0.08
        assert 0.020 <= table.rate('MA_1_1', 100, 'RWB', s) <= 0.079
        assert 0.010 <= table.rate('MA_1_1', 100, 'DWB(l=6)', s) <= 0.055


def test_dependent_wild_bootstrap_over_rejects_negative_ma():
    table = _size(['MA_2_1'], 100, ['dwb', 'rdwb'])
    for s in ('T', 't'):
        assert table.rate('MA_2_1', 100, 'DWB', s) >= 0.70
        assert 0.15 <= table.rate('MA_2_1', 100, 'RDWB', s) <= 0.26


def test_dependent_wild_bootstrap_under_rejects_ar():
    table = _size(['AR_1_1'], 100, ['dwb', 'rdwb'])
    for s in ('T', 't'):
        assert table.rate('AR_1_1', 100, 'DWB', s) <= 0.025
        assert 0.015 <= table.rate('AR_1_1', 100, 'RDWB', s) <= 0.070


def test_size_distortion_shrinks_with_sample_size():
    table = _size(['MA_6_3'], [100, 400], ['dwb'])
    for s in ('T', 't'):
        assert table.rate('MA_6_3', 100, 'DWB', s) - \
            table.rate('MA_6_3', 400, 'DWB', s) >= 0.05


@pytest.fixture(scope='module')
def power_table():
    spec = _spec(['MA_4_1'], 100, ['rdwb'], c_grid=[0, -10, -20, -30])
    return size_corrected_power(spec, threads=thread_count(0))


def test_size_corrected_power_increases_with_distance(power_table):
    table = power_table
    for s in ('T', 't'):
        powers = [table.rate('MA_4_1', 100, 'RDWB', s, c) for c in (-10, -20, -30)]
        for lower, higher in zip(powers, powers[1:]):
            assert higher >= lower - 0.03
        assert powers[-1] >= 0.5


def test_corrected_level_calibrates_the_null(power_table):
    alpha, n = desk_scale['alpha'], desk_scale['N']
    tolerance = 2 * math.sqrt(alpha * (1 - alpha) / n)
    corrections = power_table.metadata['corrections']
    assert sorted(entry['statistic'] for entry in corrections) == ['T', 't']
    for entry in corrections:
        assert abs(entry['null_rate_alpha_c'] - alpha) <= tolerance
