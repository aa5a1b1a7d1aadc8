# -*- coding: utf-8 -*-
"""Unit root statistics, the augmented Dickey-Fuller regression and MAIC lag selection.

A detrended vector of length m is read as ``(X_1, ..., X_m)``. The AR(1) regression
uses the pairs ``(X_t, X_{t-1})`` for ``t = 2, ..., m`` so the number of transitions
is ``n = m - 1``. Time indices passed to ``adf_fit`` are 1-based.
"""
import logging
import math
import warnings

import numpy as np
from scipy import linalg

from .exceptions import (DegenerateSeries, DegenerateSigma, InsufficientData,
    RankDeficient, ZeroResidualVariance)

_logger = logging.getLogger(__name__)

GRAM_CONDITION_LIMIT = 1e12
# residual sum of squares below this share of the response energy is an exact fit
ZERO_RSS_TOLERANCE = 1e-24


class UnitRootStats(object):
    """Unit root statistics of one series.

    Args:
        rho_hat: OLS estimate of the autoregressive root.
        T: Coefficient statistic n(rho_hat - 1).
        t: t statistic or None when the residual variance is zero.
        s_sq: Residual variance with divisor n - 2.
        n_eff: Number of regression transitions n.

    Properties:
        * rho_hat
        * T
        * t
        * s_sq
        * n_eff
    """

    __slots__ = ('_rho_hat', '_T', '_t', '_s_sq', '_n_eff')

    def __init__(self, rho_hat, T, t, s_sq, n_eff):
        self._rho_hat = float(rho_hat)
        self._T = float(T)
        self._t = None if t is None else float(t)
        self._s_sq = float(s_sq)
        self._n_eff = int(n_eff)

    @property
    def rho_hat(self):
        return self._rho_hat

    @property
    def T(self):
        """Coefficient statistic n(rho_hat - 1)."""
        return self._T

    @property
    def t(self):
        """t statistic.

        Raises ZeroResidualVariance when the AR(1) regression fits exactly.
        """
        if self._t is None:
            raise ZeroResidualVariance(
                'The t statistic is undefined: the AR(1) fit has zero residual '
                'variance.'
            )
        return self._t

    @property
    def has_t(self):
        """True if the t statistic is defined."""
        return self._t is not None

    @property
    def s_sq(self):
        return self._s_sq

    @property
    def n_eff(self):
        return self._n_eff

    def to_dict(self):
        return {
            'rho': self._rho_hat, 'T': self._T, 't': self._t, 's_sq': self._s_sq
        }

    def __repr__(self):
        t = 'undefined' if self._t is None else '%.4f' % self._t
        return 'UnitRootStats: rho=%.6f T=%.4f t=%s (n=%d)' % (
            self._rho_hat, self._T, t, self._n_eff)


def batch_statistics(x):
    """Unit root statistics for every column of a matrix.

    Args:
        x: An m x B array of detrended series, one series per column. A vector is
            treated as a single column.

    Returns:
        A dictionary of arrays with keys ``rho``, ``T``, ``t``, ``s_sq``,
        ``lag_sum_sq`` and ``n_eff``. Entries of ``T``, ``rho`` and ``t`` are NaN
        where the statistic is undefined.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    m = x.shape[0]
    n = m - 1
    lag, lead = x[:-1], x[1:]
    sxx = np.einsum('ij,ij->j', lag, lag)
    sxy = np.einsum('ij,ij->j', lag, lead)
    with np.errstate(divide='ignore', invalid='ignore'):
        rho = np.where(sxx > 0, sxy / sxx, np.nan)
        resid = lead - rho * lag
        rss = np.einsum('ij,ij->j', resid, resid)
        exact = rss <= ZERO_RSS_TOLERANCE * np.einsum('ij,ij->j', lead, lead)
        rss = np.where(exact, 0.0, rss)
        s_sq = rss / (n - 2)
        t = np.where(s_sq > 0, np.sqrt(sxx) * (rho - 1.0) / np.sqrt(s_sq), np.nan)
    return {
        'rho': rho, 'T': n * (rho - 1.0), 't': t, 's_sq': s_sq,
        'lag_sum_sq': sxx, 'n_eff': n
    }


def unit_root_statistics(x):
    """Compute rho_hat, T_n, t_n and s_n^2 of a detrended series.

    Args:
        x: Detrended vector of length m >= 5.

    Returns:
        A UnitRootStats. Its ``t`` property raises ZeroResidualVariance when the AR(1)
        regression fits exactly.
    """
    x = np.asarray(x, dtype=float).ravel()
    if x.size < 5:
        raise InsufficientData(
            'Unit root statistics need at least 5 observations. Got %d.' % x.size
        )
    values = batch_statistics(x)
    if not values['lag_sum_sq'][0] > 0:
        raise DegenerateSeries('The lagged series is identically zero.')
    t = values['t'][0]
    return UnitRootStats(
        values['rho'][0], values['T'][0], None if np.isnan(t) else t,
        values['s_sq'][0], values['n_eff']
    )


def _least_squares(regressors, response):
    """OLS through a QR factorization of the unit-norm scaled regressors."""
    scale = np.sqrt(np.sum(regressors ** 2, axis=0))
    if np.any(scale == 0):
        raise RankDeficient('A regressor column is identically zero.')
    q, r = linalg.qr(regressors / scale, mode='economic')
    singular = linalg.svdvals(r)
    if singular[-1] == 0 or (singular[0] / singular[-1]) ** 2 > GRAM_CONDITION_LIMIT:
        raise RankDeficient('Regressors are collinear.')
    coef = linalg.solve_triangular(r, np.dot(q.T, response)) / scale
    return coef, response - np.dot(regressors, coef)


class AdfFit(object):
    """OLS fit of the augmented Dickey-Fuller regression without intercept.

    ``dX_t = pi_0 X_{t-1} + pi_1 dX_{t-1} + ... + pi_k dX_{t-k} + u_t``

    Args:
        k: Number of lagged differences.
        pi0: Coefficient of the lagged level.
        pi: Coefficients of the lagged differences.
        residuals: Residuals over the fit range.
        sigma_sq: Residual variance with divisor equal to the row count.
        fit_range: A (first, last) tuple of 1-based time indices, both inclusive.
        lag_sum_sq: Sum of squared lagged levels over the fit range.

    Properties:
        * k
        * pi0
        * pi
        * residuals
        * sigma_sq
        * fit_range
        * lag_sum_sq
    """

    __slots__ = ('_k', '_pi0', '_pi', '_residuals', '_sigma_sq', '_fit_range',
                 '_lag_sum_sq')

    def __init__(self, k, pi0, pi, residuals, sigma_sq, fit_range, lag_sum_sq):
        self._k = k
        self._pi0 = pi0
        self._pi = pi
        self._residuals = residuals
        self._sigma_sq = sigma_sq
        self._fit_range = fit_range
        self._lag_sum_sq = lag_sum_sq

    @property
    def k(self):
        return self._k

    @property
    def pi0(self):
        return self._pi0

    @property
    def pi(self):
        return self._pi

    @property
    def residuals(self):
        return self._residuals

    @property
    def sigma_sq(self):
        return self._sigma_sq

    @property
    def fit_range(self):
        return self._fit_range

    @property
    def lag_sum_sq(self):
        return self._lag_sum_sq

    @property
    def row_count(self):
        return self._residuals.size

    def __repr__(self):
        return 'AdfFit: k=%d pi0=%.6f sigma_sq=%.6g rows=%d-%d' % (
            self._k, self._pi0, self._sigma_sq, self._fit_range[0],
            self._fit_range[1])


def adf_design(x, k, fit_start):
    """Response and regressor matrix of the ADF regression.

    Args:
        x: Detrended vector (X_1, ..., X_m).
        k: Number of lagged differences.
        fit_start: First 1-based time index of the fit. Must be at least k + 2.

    Returns:
        A tuple of (response, regressors) where regressors has the lagged level in
        column 0 and the lagged differences in columns 1 to k.
    """
    x = np.asarray(x, dtype=float).ravel()
    m = x.size
    if k < 0:
        raise InsufficientData('Lag count must be non-negative.')
    if fit_start < k + 2:
        raise InsufficientData(
            'fit_start must be at least k + 2 = %d. Got %d.' % (k + 2, fit_start)
        )
    rows = m - fit_start + 1
    if rows < k + 3:
        raise InsufficientData(
            'ADF regression with k=%d needs at least %d rows. Got %d.'
            % (k, k + 3, max(rows, 0))
        )
    # zero-based position of X_t is t - 1
    t = np.arange(fit_start, m + 1)
    response = x[t - 1] - x[t - 2]
    columns = [x[t - 2]]
    for j in range(1, k + 1):
        columns.append(x[t - 1 - j] - x[t - 2 - j])
    return response, np.column_stack(columns)


def adf_fit(x, k, fit_start=None):
    """Fit the ADF regression by OLS with no intercept.

    Args:
        x: Detrended vector (X_1, ..., X_m).
        k: Number of lagged differences.
        fit_start: First 1-based time index of the fit. Defaults to the maximal
            sample start k + 2.

    Returns:
        An AdfFit.
    """
    x = np.asarray(x, dtype=float).ravel()
    fit_start = k + 2 if fit_start is None else int(fit_start)
    response, regressors = adf_design(x, k, fit_start)
    coef, residuals = _least_squares(regressors, response)
    sigma_sq = float(np.dot(residuals, residuals)) / residuals.size
    if sigma_sq <= ZERO_RSS_TOLERANCE * float(np.dot(response, response)):
        sigma_sq = 0.0
    return AdfFit(
        k, float(coef[0]), coef[1:], residuals, sigma_sq, (fit_start, x.size),
        float(np.dot(regressors[:, 0], regressors[:, 0]))
    )


def max_lag(n):
    """Largest MAIC candidate lag floor(12 (n / 100)^(1/4)) for n transitions."""
    return int(math.floor(12.0 * (n / 100.0) ** 0.25 + 1e-9))


class MaicSelection(object):
    """Result of the MAIC lag search.

    Args:
        k_hat: Selected lag.
        scores: MAIC(k) for k = 0, ..., k_max. Excluded candidates are NaN.
        k_max: Largest candidate lag.
        excluded: Candidates excluded for a zero residual variance.

    Properties:
        * k_hat
        * scores
        * k_max
        * excluded
    """

    __slots__ = ('_k_hat', '_scores', '_k_max', '_excluded')

    def __init__(self, k_hat, scores, k_max, excluded=()):
        self._k_hat = k_hat
        self._scores = scores
        self._k_max = k_max
        self._excluded = tuple(excluded)

    @property
    def k_hat(self):
        return self._k_hat

    @property
    def scores(self):
        return self._scores

    @property
    def k_max(self):
        return self._k_max

    @property
    def excluded(self):
        return self._excluded

    def to_dict(self):
        return {
            'k_hat': self._k_hat, 'k_max': self._k_max,
            'scores': [None if np.isnan(s) else float(s) for s in self._scores],
            'excluded': list(self._excluded)
        }

    def __repr__(self):
        return 'MaicSelection: k_hat=%d (k_max=%d)' % (self._k_hat, self._k_max)


def maic_select(x):
    """Select the ADF lag with the modified Akaike information criterion.

    Every candidate k = 0, ..., k_max is fitted on the common sample of the last
    n - k_max transitions so MAIC values are comparable.

    Args:
        x: Detrended vector (X_1, ..., X_m).

    Returns:
        A MaicSelection. Ties go to the smallest k.
    """
    x = np.asarray(x, dtype=float).ravel()
    n = x.size - 1
    k_max = max_lag(n)
    if k_max + 3 > x.size:
        raise InsufficientData(
            'MAIC with k_max=%d needs more than %d observations.' % (k_max, x.size)
        )
    fit_start = k_max + 2
    if not np.any(np.diff(x)[fit_start - 2:]):
        raise DegenerateSigma(
            'Differences are zero over the MAIC sample; every candidate has zero '
            'residual variance.'
        )
    divisor = float(n - k_max)
    scores = np.full(k_max + 1, np.nan)
    excluded = []
    for k in range(k_max + 1):
        fit = adf_fit(x, k, fit_start)
        if fit.sigma_sq == 0:
            excluded.append(k)
            continue
        tau = fit.pi0 ** 2 * fit.lag_sum_sq / fit.sigma_sq
        scores[k] = math.log(fit.sigma_sq) + 2.0 * (tau + k) / divisor
    if excluded:
        warnings.warn(
            'MAIC candidates %s have zero residual variance and were excluded.'
            % excluded
        )
    if len(excluded) == k_max + 1:
        raise DegenerateSigma('Every MAIC candidate has zero residual variance.')
    k_hat = int(np.nanargmin(scores))
    _logger.debug('MAIC selected k=%d out of 0-%d.', k_hat, k_max)
    return MaicSelection(k_hat, scores, k_max, excluded)
