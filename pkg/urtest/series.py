# -*- coding: utf-8 -*-
"""Time series container, deterministic trends and OLS detrending.

Trend regressors are raw powers of the time index ``t = 1, ..., m``. Columns are
scaled to unit norm before an orthogonal (QR) factorization so the projection is
stable for polynomial trends up to degree 5.
"""
import logging
from functools import lru_cache

import numpy as np
from scipy import linalg

from .exceptions import ConfigurationError, InvalidSeries, RankDeficient

_logger = logging.getLogger(__name__)

MAX_DEGREE = 5
GRAM_CONDITION_LIMIT = 1e12


class TrendSpec(object):
    """Deterministic trend specification.

    A polynomial trend of degree ``d`` uses the regressors ``(1, t, ..., t^d)``.
    ``Constant`` is degree 0 and ``Linear`` is degree 1.

    Args:
        degree: Polynomial degree between 0 and 5, or None for no deterministic
            regressors.

    Properties:
        * degree
        * regressor_count
    """

    __slots__ = ('_degree',)

    _NAMES = {None: 'none', 0: 'constant', 1: 'linear'}

    def __init__(self, degree=None):
        if degree is not None:
            degree = int(degree)
            if not 0 <= degree <= MAX_DEGREE:
                raise ConfigurationError(
                    'Trend degree must be between 0 and %d. Got %d.'
                    % (MAX_DEGREE, degree)
                )
        self._degree = degree

    @classmethod
    def none(cls):
        return cls(None)

    @classmethod
    def constant(cls):
        return cls(0)

    @classmethod
    def linear(cls):
        return cls(1)

    @classmethod
    def polynomial(cls, degree):
        return cls(degree)

    @classmethod
    def from_string(cls, value):
        """Create a trend from a string.

        Args:
            value: One of ``none``, ``constant``, ``linear`` or ``poly:d``.
        """
        if isinstance(value, TrendSpec):
            return value
        text = str(value).strip().lower()
        if text in ('none', 'n', ''):
            return cls(None)
        if text in ('constant', 'c'):
            return cls(0)
        if text in ('linear', 'ct'):
            return cls(1)
        if text.startswith('poly:'):
            try:
                degree = int(text.split(':', 1)[1])
            except ValueError:
                raise ConfigurationError('Invalid polynomial trend: %s' % value)
            return cls(degree)
        raise ConfigurationError(
            'Invalid trend: %s. Use none, constant, linear or poly:d.' % value
        )

    @property
    def degree(self):
        """Polynomial degree or None."""
        return self._degree

    @property
    def regressor_count(self):
        """Number of trend regressors p."""
        return 0 if self._degree is None else self._degree + 1

    def to_string(self):
        try:
            return self._NAMES[self._degree]
        except KeyError:
            return 'poly:%d' % self._degree

    def __eq__(self, other):
        return isinstance(other, TrendSpec) and other._degree == self._degree

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(('TrendSpec', self._degree))

    def __repr__(self):
        return 'TrendSpec: %s' % self.to_string()


class ObservedSeries(object):
    """Observations ``y_1, ..., y_m`` with a deterministic trend specification.

    Args:
        values: A sequence of finite numbers in time order.
        trend: A TrendSpec or a trend string. Default: no trend.

    Properties:
        * values
        * trend
        * length
    """

    __slots__ = ('_values', '_trend')

    def __init__(self, values, trend=None):
        trend = TrendSpec() if trend is None else TrendSpec.from_string(trend)
        values = np.array(values, dtype=float).ravel()
        if not np.all(np.isfinite(values)):
            raise InvalidSeries('Series values must be finite.')
        min_length = trend.regressor_count + 4
        if values.size < min_length:
            raise InvalidSeries(
                'Series with %s needs at least %d observations. Got %d.'
                % (trend.to_string(), min_length, values.size)
            )
        values.flags.writeable = False
        self._values = values
        self._trend = trend

    @property
    def values(self):
        """Read-only numpy array of observations."""
        return self._values

    @property
    def trend(self):
        return self._trend

    @property
    def length(self):
        """Number of observations m."""
        return self._values.size

    def __len__(self):
        return self._values.size

    def __repr__(self):
        return 'ObservedSeries: %d observations (%s)' % (
            self.length, self._trend.to_string())


class DetrendedSeries(object):
    """OLS residuals of a series regressed on its trend.

    Args:
        x: Residual vector.
        beta: Trend coefficients. Empty when there is no trend.
        trend: The TrendSpec used for detrending.

    Properties:
        * x
        * beta
        * trend
    """

    __slots__ = ('_x', '_beta', '_trend')

    def __init__(self, x, beta, trend):
        self._x = x
        self._beta = beta
        self._trend = trend

    @property
    def x(self):
        """Detrended values."""
        return self._x

    @property
    def beta(self):
        """Estimated trend coefficients."""
        return self._beta

    @property
    def trend(self):
        return self._trend

    def __len__(self):
        return self._x.size

    def __repr__(self):
        return 'DetrendedSeries: %d observations (%s)' % (
            self._x.size, self._trend.to_string())


def build_trend_matrix(trend, m):
    """Build the trend regressor matrix.

    Args:
        trend: A TrendSpec.
        m: Number of observations.

    Returns:
        An m x p array whose column j holds t^j for t = 1, ..., m.
    """
    trend = TrendSpec.from_string(trend)
    if m < 1:
        raise InvalidSeries('Number of observations must be positive.')
    if trend.degree is None:
        return np.empty((m, 0))
    t = np.arange(1, m + 1, dtype=float)
    return np.vander(t, trend.degree + 1, increasing=True)


class TrendProjector(object):
    """Orthogonal projection off the column space of a trend matrix.

    Args:
        trend: A TrendSpec.
        m: Number of observations.
    """

    __slots__ = ('_trend', '_m', '_z', '_scale', '_q', '_r')

    def __init__(self, trend, m):
        self._trend = TrendSpec.from_string(trend)
        self._m = m
        self._z = build_trend_matrix(self._trend, m)
        if self._z.shape[1] == 0:
            self._scale = self._q = self._r = None
            return
        if self._z.shape[1] > m:
            raise RankDeficient(
                'Trend %s has more regressors than the %d observations.'
                % (self._trend.to_string(), m)
            )
        self._scale = np.sqrt(np.sum(self._z ** 2, axis=0))
        self._q, self._r = linalg.qr(self._z / self._scale, mode='economic')
        singular = linalg.svdvals(self._r)
        if singular[-1] == 0 or (singular[0] / singular[-1]) ** 2 > GRAM_CONDITION_LIMIT:
            raise RankDeficient(
                'Trend matrix (%s, m=%d) is rank deficient.'
                % (self._trend.to_string(), m)
            )
        for array in (self._z, self._scale, self._q, self._r):
            array.flags.writeable = False

    @property
    def matrix(self):
        """Trend regressor matrix Z."""
        return self._z

    def residuals(self, y):
        """Project y (a vector or an m x B matrix) off the trend columns."""
        y = np.asarray(y, dtype=float)
        if self._q is None:
            return y.copy()
        return y - np.dot(self._q, np.dot(self._q.T, y))

    def coefficients(self, y):
        """OLS trend coefficients for y."""
        if self._q is None:
            return np.empty(0)
        scaled = linalg.solve_triangular(self._r, np.dot(self._q.T, y))
        return scaled / self._scale

    def fitted(self, beta):
        """Trend values Z beta."""
        if self._q is None:
            return np.zeros(self._m)
        return np.dot(self._z, beta)


@lru_cache(maxsize=64)
def trend_projector(trend, m):
    """Return a cached TrendProjector for a trend and a length."""
    return TrendProjector(trend, m)


def ols_detrend(series, trend=None):
    """Remove the deterministic trend of a series by OLS.

    Args:
        series: An ObservedSeries, a DetrendedSeries or a sequence of values. The
            length invariant of ObservedSeries is not applied to raw values.
        trend: Trend for raw values. Ignored for ObservedSeries and DetrendedSeries
            inputs which carry their own trend.

    Returns:
        A DetrendedSeries. When the trend is None, x equals the input values and beta
        is empty.
    """
    if isinstance(series, ObservedSeries):
        y, trend = series.values, series.trend
    elif isinstance(series, DetrendedSeries):
        y, trend = series.x, series.trend
    else:
        y = np.asarray(series, dtype=float).ravel()
        trend = TrendSpec.from_string(trend)
    projector = trend_projector(trend, y.size)
    beta = projector.coefficients(y)
    x = projector.residuals(y)
    _logger.debug('Detrended %d observations with %s.', y.size, trend)
    return DetrendedSeries(x, beta, trend)
