# -*- coding: utf-8 -*-
import itertools
import warnings

import numpy as np
import pytest

from urtest.bootstrap import (BootstrapConfig, BootstrapProcedure, bootstrap_quantile,
    dwb_run, mv_select_bandwidth, p_value, rdwb_run, recolor, rejects, run_bootstrap)
from urtest.dgp import DgpSpec, simulate_series
from urtest.exceptions import (ConfigurationError, DegenerateBootstrap,
    UnstableRecoloring)
from urtest.multiplier import ConstantMultipliers, RecordedMultipliers
from urtest.series import ObservedSeries


@pytest.fixture(scope='module')
def series():
    return simulate_series(DgpSpec('MA', 1, 1, 100), rng=7)


def test_p_value_counting_rule():
    assert p_value([-3, -1, 2], 0) == pytest.approx(2.0 / 3.0)
    assert p_value([-3, -1, 2], -5) == 0
    assert p_value([-3, -1, 2], 5) == 1
    assert p_value([1.0, np.nan, 3.0], 2.0) == 0.5


def test_p_value_left_tail_identity():
    rng = np.random.default_rng(1)
    stars = np.round(rng.standard_normal(99), 1)
    for observed in (-1.0, 0.0, 0.3, 2.5):
        upper = np.count_nonzero(stars >= observed)
        assert round(p_value(stars, observed) * stars.size) + upper == stars.size


def test_bootstrap_quantile():
    assert bootstrap_quantile([1, 2, 3, 4, 5], 0.4) == 2
    assert bootstrap_quantile([5, 1, 3], 0.5) == 3
    assert bootstrap_quantile([5, 1, 3], 1e-9) == 1
    assert bootstrap_quantile([5, 1, 3], 0.0) == 1
    assert bootstrap_quantile([5, 1, 3], 1.0) == 5


def test_bootstrap_quantile_sort_oracle():
    values = [4.0, -1.0, 2.5, 0.0]
    for perm in itertools.permutations(values):
        for alpha in (0.1, 0.25, 0.5, 0.75, 0.99):
            order = int(np.ceil(alpha * 4))
            assert bootstrap_quantile(perm, alpha) == sorted(values)[order - 1]
    rng = np.random.default_rng(2)
    sample = rng.standard_normal(101)
    assert bootstrap_quantile(sample, 0.05) == np.sort(sample)[5]


def test_rejection_rule():
    assert rejects(0.01, 0.05)
    assert not rejects(0.05, 0.05)
    assert rejects(1.0, 1.0)


def test_config_validation():
    with pytest.raises(ConfigurationError):
        BootstrapConfig(method='rwb', bandwidth='mv')
    with pytest.raises(ConfigurationError):
        BootstrapConfig(method='bwb')
    with pytest.raises(ConfigurationError):
        BootstrapConfig(bandwidth=0)
    with pytest.raises(ConfigurationError):
        BootstrapConfig(replications=0)
    with pytest.raises(ConfigurationError):
        BootstrapConfig(mv_statistic='z')
    with pytest.raises(ConfigurationError):
        BootstrapConfig.from_dict({'method': 'dwb', 'lag': 3})


def test_config_dict_and_labels():
    config = BootstrapConfig.from_dict({'method': 'dwb', 'B': 99, 'l': '3'})
    assert config.bandwidth == 3
    assert config.B == 99
    assert config.label == 'DWB(l=3)'
    assert BootstrapConfig.from_dict(config.to_dict()) == config
    assert BootstrapConfig('rdwb').label == 'RDWB'
    assert BootstrapConfig('rdwb', bandwidth='mv').label == 'RDWB(l=mv)'
    assert BootstrapConfig('rwb', bandwidth=4).label == 'RWB'
    assert BootstrapConfig('dwb', kernel='parzen').label == 'DWB[parzen]'
    assert BootstrapConfig.from_dict('rwb').method == 'RWB'


def test_effective_bandwidth():
    assert BootstrapConfig('rdwb').effective_bandwidth(100) == 6
    assert BootstrapConfig('rdwb').effective_bandwidth(400) == 8
    assert BootstrapConfig('rwb', bandwidth=5).effective_bandwidth(100) == 1
    assert BootstrapConfig('dwb', bandwidth=3).effective_bandwidth(100) == 3
    assert BootstrapConfig('dwb', bandwidth='mv').effective_bandwidth(100) is None


def test_dwb_run(series):
    config = BootstrapConfig('dwb', replications=99, seed=3)
    result = dwb_run(series, config)
    assert result.method == 'DWB'
    assert result.B == 99
    assert result.l_used == 6
    assert result.k_hat is None
    assert 0 <= result.p_T <= 1
    assert 0 <= result.p_t <= 1
    assert result.p_T == p_value(result.T_star, result.observed.T)
    data = result.to_dict()
    assert set(['method', 'l_used', 'k_hat', 'B', 'observed', 'p_T', 'p_t']) <= set(data)
    assert set(result.verdicts(0.05)) == {'T', 't'}
    with pytest.raises(ConfigurationError):
        rdwb_run(series, config)


def test_rdwb_run(series):
    config = BootstrapConfig('rdwb', replications=99, seed=3)
    result = rdwb_run(series, config)
    assert result.method == 'RDWB'
    assert result.k_hat is not None and result.k_hat >= 0
    assert np.all(np.isfinite(result.T_star))
    with pytest.raises(ConfigurationError):
        dwb_run(series, config)


def test_same_seed_is_bit_identical(series):
    for method in ('dwb', 'rdwb'):
        config = BootstrapConfig(method, replications=49, seed=11)
        a = run_bootstrap(series, config)
        b = run_bootstrap(series, config)
        np.testing.assert_array_equal(a.T_star, b.T_star)
        np.testing.assert_array_equal(a.t_star, b.t_star)
        assert a.to_dict() == b.to_dict()
    first = run_bootstrap(series, BootstrapConfig('dwb', replications=49, seed=11))
    other = run_bootstrap(series, BootstrapConfig('dwb', replications=49, seed=12))
    assert not np.array_equal(other.T_star, first.T_star)


def test_rwb_equals_rdwb_with_unit_bandwidth(series):
    rwb = run_bootstrap(series, BootstrapConfig('rwb', replications=49, seed=5))
    rdwb = run_bootstrap(
        series, BootstrapConfig('rdwb', replications=49, bandwidth=1, seed=5))
    np.testing.assert_array_equal(rwb.T_star, rdwb.T_star)
    np.testing.assert_array_equal(rwb.t_star, rdwb.t_star)
    assert rwb.p_T == rdwb.p_T and rwb.p_t == rdwb.p_t
    assert rwb.l_used == rdwb.l_used == 1


def test_unit_multipliers_reproduce_residual_partial_sums(series):
    procedure = BootstrapProcedure(series, 'DWB')
    perturbed = procedure.perturbed_residuals(ConstantMultipliers(), 0, 3)
    paths = recolor(perturbed, procedure.pi)
    for b in range(3):
        np.testing.assert_array_equal(paths[:, b], np.cumsum(procedure.residuals))


def test_unit_multipliers_give_identical_replications(series):
    result = dwb_run(series, BootstrapConfig('dwb', replications=5),
                     multipliers=ConstantMultipliers())
    assert np.all(result.T_star == result.T_star[0])
    assert np.all(result.t_star == result.t_star[0])


def test_recorded_multipliers(series):
    procedure = BootstrapProcedure(series, 'RDWB')
    matrix = np.random.default_rng(0).standard_normal((procedure.length, 4))
    perturbed = procedure.perturbed_residuals(RecordedMultipliers(matrix), 0, 4)
    np.testing.assert_array_equal(perturbed, procedure.residuals[:, None] * matrix)


def test_zero_multipliers_are_degenerate(series):
    with pytest.raises(DegenerateBootstrap) as excinfo:
        dwb_run(series, BootstrapConfig('dwb', replications=10),
                multipliers=ConstantMultipliers(0.0))
    assert excinfo.value.failures == 10
    assert excinfo.value.exit_code == 3


def test_recolor_without_lags_is_cumulative_sum():
    u = np.random.default_rng(3).standard_normal((30, 4))
    np.testing.assert_array_equal(recolor(u, np.empty(0)), np.cumsum(u, axis=0))


def test_recolor_seeds_first_observations():
    paths = recolor(np.ones(4), [0.5])
    np.testing.assert_allclose(paths, [1.0, 2.5, 4.25, 6.125])
    u = np.array([2.0, 3.0, 5.0, 7.0, 11.0])
    paths = recolor(u, [0.0, 0.0])
    np.testing.assert_allclose(paths, [2.0, 3.0, 8.0, 15.0, 26.0])


def test_recolor_unstable():
    with pytest.raises(UnstableRecoloring) as excinfo:
        recolor(np.ones(10), [1e200])
    np.testing.assert_array_equal(excinfo.value.pi, [1e200])


def test_rdwb_residual_alignment(series):
    procedure = BootstrapProcedure(series, 'RDWB')
    assert procedure.length == series.length - procedure.k_hat - 1
    assert procedure.pi.size == procedure.k_hat
    dwb = BootstrapProcedure(series, 'DWB')
    assert dwb.length == series.length - 1


def test_parzen_kernel_run(series):
    result = run_bootstrap(
        series, BootstrapConfig('dwb', replications=29, kernel='parzen', seed=1))
    assert result.l_used == 6
    assert np.all(np.isfinite(result.T_star))


def test_observed_exact_fit_raises():
    values = ObservedSeries(np.ones(30))
    with pytest.raises(Exception) as excinfo:
        run_bootstrap(values, BootstrapConfig('dwb', replications=9))
    assert excinfo.value.exit_code == 3


def test_mv_identical_candidates(series):
    config = BootstrapConfig('dwb', replications=49, seed=2)
    selection = mv_select_bandwidth(series, config, candidates=[3, 3])
    assert selection.distances == [0]
    assert selection.l_selected == 3


def test_mv_selection(series):
    config = BootstrapConfig('rdwb', replications=29, seed=4)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        selection = mv_select_bandwidth(series, config, candidates='1..5')
    assert selection.candidates == [1, 2, 3, 4, 5]
    assert len(selection.distances) == 4
    assert all(0 <= h <= 1 for h in selection.distances)
    assert selection.l_selected in selection.candidates


def test_mv_default_candidates(series):
    config = BootstrapConfig('dwb', replications=9, seed=4)
    selection = mv_select_bandwidth(series, config)
    assert selection.candidates == list(range(1, 14))


def test_mv_run_reuses_selected_draws(series):
    config = BootstrapConfig('dwb', replications=29, bandwidth='mv', seed=6,
                             candidates='2..4')
    result = run_bootstrap(series, config)
    assert result.mv is not None
    fixed = run_bootstrap(series, config.replace(bandwidth=result.l_used))
    np.testing.assert_array_equal(result.T_star, fixed.T_star)
    assert 'mv' in result.to_dict()


def test_mv_with_rwb_is_rejected(series):
    with pytest.raises(ConfigurationError):
        mv_select_bandwidth(series, BootstrapConfig('rwb'), candidates=[1, 2])
