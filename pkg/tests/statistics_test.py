# -*- coding: utf-8 -*-
import warnings

import numpy as np
import pytest

from urtest.exceptions import (DegenerateSeries, DegenerateSigma, InsufficientData,
    ZeroResidualVariance)
from urtest.series import ObservedSeries, build_trend_matrix, ols_detrend
from urtest.statistics import (adf_design, adf_fit, batch_statistics, maic_select,
    max_lag, unit_root_statistics)


def test_exact_unit_root_without_innovations():
    stats = unit_root_statistics([1, 1, 1, 1, 1])
    assert stats.rho_hat == 1
    assert stats.T == 0
    assert stats.s_sq == 0
    assert not stats.has_t
    with pytest.raises(ZeroResidualVariance):
        stats.t


def test_alternating_series():
    stats = unit_root_statistics([0, 1, 0, 1, 0])
    assert stats.rho_hat == 0
    assert stats.T == -4
    assert stats.n_eff == 4
    assert stats.T == stats.n_eff * (stats.rho_hat - 1)


def test_statistics_formulas():
    rng = np.random.default_rng(2)
    x = np.cumsum(rng.standard_normal(50))
    stats = unit_root_statistics(x)
    lag, lead = x[:-1], x[1:]
    rho = np.dot(lag, lead) / np.dot(lag, lag)
    s_sq = np.sum((lead - rho * lag) ** 2) / (49 - 2)
    assert stats.rho_hat == pytest.approx(rho, rel=1e-12)
    assert stats.T == pytest.approx(49 * (rho - 1), rel=1e-12)
    assert stats.s_sq == pytest.approx(s_sq, rel=1e-12)
    assert stats.t == pytest.approx(
        np.sqrt(np.dot(lag, lag)) * (rho - 1) / np.sqrt(s_sq), rel=1e-12)
    assert set(stats.to_dict()) == {'rho', 'T', 't', 's_sq'}


def test_statistics_errors():
    with pytest.raises(InsufficientData):
        unit_root_statistics([1, 2, 3, 4])
    with pytest.raises(DegenerateSeries):
        unit_root_statistics([0, 0, 0, 0, 0, 1])


def test_batch_statistics_matches_single_series():
    rng = np.random.default_rng(8)
    x = np.cumsum(rng.standard_normal((40, 5)), axis=0)
    batch = batch_statistics(x)
    for b in range(5):
        single = unit_root_statistics(x[:, b])
        assert batch['T'][b] == pytest.approx(single.T, rel=1e-12)
        assert batch['t'][b] == pytest.approx(single.t, rel=1e-12)


def test_scale_invariance():
    rng = np.random.default_rng(4)
    x = np.cumsum(rng.standard_normal(120))
    base = unit_root_statistics(x)
    scaled = unit_root_statistics(7.5 * x)
    assert scaled.rho_hat == pytest.approx(base.rho_hat, rel=1e-12)
    assert scaled.T == pytest.approx(base.T, rel=1e-12)
    assert scaled.t == pytest.approx(base.t, rel=1e-12)
    assert scaled.s_sq == pytest.approx(7.5 ** 2 * base.s_sq, rel=1e-12)


def test_trend_invariance():
    rng = np.random.default_rng(6)
    y = np.cumsum(rng.standard_normal(100))
    z = build_trend_matrix('linear', 100)
    shifted = y + z.dot([3.0, -0.25])
    base = unit_root_statistics(ols_detrend(ObservedSeries(y, 'linear')).x)
    moved = unit_root_statistics(ols_detrend(ObservedSeries(shifted, 'linear')).x)
    assert moved.T == pytest.approx(base.T, rel=1e-10)
    assert moved.t == pytest.approx(base.t, rel=1e-10)


def test_random_walk_T_range():
    rng = np.random.default_rng(12)
    walks = np.cumsum(rng.standard_normal((401, 200)), axis=0)
    T = batch_statistics(walks)['T']
    assert np.mean(T < 0) > 0.6
    assert np.mean((T > -25) & (T < 3)) >= 0.95


def test_adf_fit_single_regressor():
    fit = adf_fit([1, 2, 3, 4], 0, fit_start=2)
    assert fit.pi0 == pytest.approx(6.0 / 14.0)
    assert fit.pi.size == 0
    assert fit.fit_range == (2, 4)
    assert fit.row_count == 3


def test_adf_fit_constant_series():
    fit = adf_fit([5, 5, 5, 5, 5, 5], 0)
    assert fit.pi0 == 0
    np.testing.assert_array_equal(fit.residuals, 0)
    assert fit.sigma_sq == 0


def test_adf_fit_agrees_with_unit_root_statistics():
    rng = np.random.default_rng(9)
    x = np.cumsum(rng.standard_normal(60))
    fit = adf_fit(x, 0)
    stats = unit_root_statistics(x)
    assert fit.pi0 == pytest.approx(stats.rho_hat - 1, rel=1e-10, abs=1e-12)


def test_adf_residuals_orthogonal():
    rng = np.random.default_rng(10)
    x = np.cumsum(rng.standard_normal(150))
    for k in (1, 3, 6):
        fit = adf_fit(x, k)
        _, regressors = adf_design(x, k, k + 2)
        for column in regressors.T:
            assert abs(np.dot(column, fit.residuals)) <= \
                1e-8 * np.linalg.norm(column) * np.linalg.norm(fit.residuals)
        assert fit.pi.size == k


def test_adf_design_preconditions():
    x = np.arange(10, dtype=float)
    with pytest.raises(InsufficientData):
        adf_design(x, 2, 3)
    with pytest.raises(InsufficientData):
        adf_design(x, 3, 8)


def test_max_lag():
    assert max_lag(100) == 12
    assert max_lag(400) == 16


def test_maic_degenerate():
    x = np.zeros(50)
    x[0] = 1.0
    with pytest.raises(DegenerateSigma):
        maic_select(x)


def test_maic_excludes_exact_fits():
    # differences repeat every 12 steps so only k = k_max = 12 fits exactly
    rng = np.random.default_rng(16)
    period = rng.standard_normal(12) + 0.5
    x = np.concatenate([[0.0], np.cumsum(np.tile(period, 9)[:100])])
    with pytest.warns(UserWarning, match='zero residual variance'):
        selection = maic_select(x)
    assert selection.k_max == 12
    assert selection.excluded == (12,)
    assert np.isnan(selection.scores[12])
    assert np.all(np.isfinite(selection.scores[:12]))
    assert selection.k_hat == int(np.nanargmin(selection.scores))
    assert selection.k_hat < 12


def test_maic_scores_and_ties():
    rng = np.random.default_rng(14)
    x = np.cumsum(rng.standard_normal(101))
    selection = maic_select(x)
    assert selection.k_max == 12
    assert selection.scores.size == 13
    assert selection.k_hat == int(np.argmin(selection.scores))
    assert selection.to_dict()['k_hat'] == selection.k_hat


def test_maic_picks_lags_for_autocorrelated_errors():
    rng = np.random.default_rng(15)
    selected = []
    for _ in range(100):
        eps = rng.standard_normal(401)
        u = np.empty(401)
        u[0] = eps[0]
        for t in range(1, 401):
            u[t] = 0.8 * u[t - 1] + eps[t]
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            selected.append(maic_select(np.cumsum(u)).k_hat)
    assert np.median(selected) >= 1
