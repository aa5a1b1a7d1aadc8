# -*- coding: utf-8 -*-
"""Dependent wild bootstrap (DWB) and recolored dependent wild bootstrap (RDWB) tests.

Both procedures perturb regression residuals with dependent multipliers, rebuild a
bootstrap series under the unit root null, detrend it again and recompute the
coefficient statistic ``T`` and the t statistic ``t``. RDWB first prewhitens with an
ADF regression whose lag is chosen by MAIC and recolors the perturbed residuals with
the fitted AR coefficients. RWB is RDWB with i.i.d. multipliers (l = 1).

Usage:

.. code-block:: python

    from urtest.bootstrap import BootstrapConfig, run_bootstrap

    config = BootstrapConfig(method='RDWB', replications=999, seed=42)
    result = run_bootstrap(values, config)
    print(result.p_T, result.p_t)

"""
import logging
import math
import warnings

import numpy as np

from . import rngutil
from .bandwidth import (default_bandwidth, default_candidates, minimum_volatility,
    parse_candidates, validate_candidates)
from .exceptions import (ConfigurationError, DegenerateBootstrap, InsufficientData,
    NumericalError, UnstableRecoloring)
from .multiplier import GaussianMultipliers, Kernel
from .series import ObservedSeries, ols_detrend, trend_projector
from .statistics import adf_fit, batch_statistics, maic_select, unit_root_statistics

_logger = logging.getLogger(__name__)

METHODS = ('DWB', 'RWB', 'RDWB')
STATISTICS = ('T', 't')
# share of failed replications a run tolerates
FAILURE_LIMIT = 0.01


class BootstrapConfig(object):
    """Bootstrap test configuration.

    Args:
        method: One of ``DWB``, ``RWB`` or ``RDWB`` (case insensitive).
        replications: Number of bootstrap replications B.
        bandwidth: ``auto`` for the deterministic rule, ``mv`` for minimum
            volatility selection or a fixed integer l.
        kernel: Multiplier kernel name or Kernel (default: bartlett).
        seed: Non-negative integer seed.
        mv_statistic: Statistic whose bootstrap distribution drives minimum
            volatility selection, ``T`` or ``t``.
        candidates: Optional minimum volatility candidates. Defaults to
            1, ..., floor(12 (m / 100)^(1/4)) + 1.

    Properties:
        * method
        * replications
        * B
        * bandwidth
        * kernel
        * seed
        * mv_statistic
        * candidates
        * is_mv
        * label
    """

    __slots__ = ('_method', '_replications', '_bandwidth', '_kernel', '_seed',
                 '_mv_statistic', '_candidates')

    def __init__(self, method='RDWB', replications=999, bandwidth='auto',
                 kernel='bartlett', seed=0, mv_statistic='T', candidates=None):
        method = str(method).strip().upper()
        if method not in METHODS:
            raise ConfigurationError(
                'Invalid bootstrap method: %s. Use one of %s.'
                % (method, ', '.join(METHODS))
            )
        self._method = method
        try:
            replications = int(replications)
        except (TypeError, ValueError):
            raise ConfigurationError('Invalid replications: %r' % (replications,))
        if replications < 1:
            raise ConfigurationError(
                'Bootstrap replications must be positive. Got %d.' % replications
            )
        self._replications = replications
        self._bandwidth = self._parse_bandwidth(bandwidth)
        if self._method == 'RWB' and self._bandwidth == 'mv':
            raise ConfigurationError(
                'Minimum volatility bandwidth selection conflicts with method RWB '
                'which fixes l = 1.'
            )
        self._kernel = Kernel.from_name(kernel)
        self._seed = rngutil.as_seed_sequence(seed).entropy
        if mv_statistic not in STATISTICS:
            raise ConfigurationError(
                'Invalid minimum volatility statistic: %s. Use T or t.' % mv_statistic
            )
        self._mv_statistic = mv_statistic
        self._candidates = None if candidates is None \
            else validate_candidates(candidates)

    @staticmethod
    def _parse_bandwidth(value):
        if value is None:
            return 'auto'
        if isinstance(value, str):
            text = value.strip().lower()
            if text in ('auto', 'mv'):
                return text
            value = text
        try:
            l = int(value)
        except (TypeError, ValueError):
            raise ConfigurationError(
                'Invalid bandwidth: %r. Use auto, mv or a positive integer.' % (value,)
            )
        if l < 1:
            raise ConfigurationError('Bandwidth must be at least 1. Got %d.' % l)
        return l

    @classmethod
    def from_dict(cls, data):
        """Create a config from a dictionary.

        Recognized keys are ``method``, ``B`` (or ``replications``), ``l`` (or
        ``bandwidth``), ``kernel``, ``seed``, ``mv_statistic`` and ``candidates``.
        """
        if isinstance(data, str):
            data = {'method': data}
        unknown = set(data) - {'method', 'B', 'replications', 'l', 'bandwidth',
                               'kernel', 'seed', 'mv_statistic', 'candidates'}
        if unknown:
            raise ConfigurationError(
                'Unknown bootstrap config keys: %s' % ', '.join(sorted(unknown))
            )
        return cls(
            method=data.get('method', 'RDWB'),
            replications=data.get('B', data.get('replications', 999)),
            bandwidth=data.get('l', data.get('bandwidth', 'auto')),
            kernel=data.get('kernel', 'bartlett'),
            seed=data.get('seed', 0),
            mv_statistic=data.get('mv_statistic', 'T'),
            candidates=parse_candidates(data.get('candidates'))
        )

    def to_dict(self):
        data = {
            'method': self._method, 'B': self._replications, 'l': self._bandwidth,
            'kernel': self._kernel.name, 'seed': self._seed,
            'mv_statistic': self._mv_statistic
        }
        if self._candidates is not None:
            data['candidates'] = list(self._candidates)
        return data

    def replace(self, **kwargs):
        """Return a copy with some of the constructor arguments replaced."""
        data = {
            'method': self._method, 'replications': self._replications,
            'bandwidth': self._bandwidth, 'kernel': self._kernel, 'seed': self._seed,
            'mv_statistic': self._mv_statistic, 'candidates': self._candidates
        }
        data.update(kwargs)
        return BootstrapConfig(**data)

    @property
    def method(self):
        return self._method

    @property
    def replications(self):
        return self._replications

    @property
    def B(self):
        """Alias for replications."""
        return self._replications

    @property
    def bandwidth(self):
        """``auto``, ``mv`` or a fixed integer."""
        return self._bandwidth

    @property
    def kernel(self):
        return self._kernel

    @property
    def seed(self):
        return self._seed

    @property
    def mv_statistic(self):
        return self._mv_statistic

    @property
    def candidates(self):
        return self._candidates

    @property
    def is_mv(self):
        return self._bandwidth == 'mv'

    @property
    def label(self):
        """Method label used in result tables, e.g. ``RDWB`` or ``DWB(l=3)``."""
        if self._method == 'RWB' or self._bandwidth == 'auto':
            label = self._method
        else:
            label = '%s(l=%s)' % (self._method, self._bandwidth)
        if self._kernel.name != 'bartlett' and self._method != 'RWB':
            label = '%s[%s]' % (label, self._kernel.name)
        return label

    def effective_bandwidth(self, m):
        """Bandwidth for a series of m observations. None for minimum volatility."""
        if self._method == 'RWB':
            return 1
        if self._bandwidth == 'auto':
            return default_bandwidth(m)
        if self._bandwidth == 'mv':
            return None
        return self._bandwidth

    def __eq__(self, other):
        return isinstance(other, BootstrapConfig) and \
            other.to_dict() == self.to_dict()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self._method, self._replications, self._bandwidth,
                     self._kernel.name, self._seed, self._mv_statistic))

    def __repr__(self):
        return 'BootstrapConfig: %s B=%d seed=%d' % (
            self.label, self._replications, self._seed)


class BootstrapResult(object):
    """Outcome of a bootstrap unit root test.

    Args:
        method: Method name.
        observed: UnitRootStats of the data.
        T_star: Bootstrap coefficient statistics. Failed replications are NaN.
        t_star: Bootstrap t statistics. Failed replications are NaN.
        l_used: Multiplier bandwidth.
        k_hat: MAIC lag for RWB and RDWB, None for DWB.
        failures: Number of failed replications.
        mv: Optional MvSelection when the bandwidth was selected by minimum
            volatility.

    Properties:
        * method
        * observed
        * T_star
        * t_star
        * p_T
        * p_t
        * l_used
        * k_hat
        * B
        * failures
        * mv
    """

    __slots__ = ('_method', '_observed', '_T_star', '_t_star', '_p_T', '_p_t',
                 '_l_used', '_k_hat', '_failures', '_mv')

    def __init__(self, method, observed, T_star, t_star, l_used, k_hat=None,
                 failures=0, mv=None):
        self._method = method
        self._observed = observed
        self._T_star = T_star
        self._t_star = t_star
        self._p_T = p_value(T_star, observed.T)
        self._p_t = p_value(t_star, observed.t)
        self._l_used = int(l_used)
        self._k_hat = k_hat
        self._failures = int(failures)
        self._mv = mv

    @property
    def method(self):
        return self._method

    @property
    def observed(self):
        return self._observed

    @property
    def T_star(self):
        return self._T_star

    @property
    def t_star(self):
        return self._t_star

    @property
    def p_T(self):
        return self._p_T

    @property
    def p_t(self):
        return self._p_t

    @property
    def l_used(self):
        return self._l_used

    @property
    def k_hat(self):
        return self._k_hat

    @property
    def B(self):
        return self._T_star.size

    @property
    def failures(self):
        return self._failures

    @property
    def mv(self):
        return self._mv

    def star(self, statistic):
        """Bootstrap sample of ``T`` or ``t``."""
        return self._T_star if statistic == 'T' else self._t_star

    def p(self, statistic):
        """p-value of ``T`` or ``t``."""
        return self._p_T if statistic == 'T' else self._p_t

    def rejects(self, alpha, statistic):
        """True if the test of the statistic rejects the unit root at level alpha."""
        return rejects(self.p(statistic), alpha)

    def verdicts(self, alpha):
        return {
            s: 'reject' if self.rejects(alpha, s) else 'fail to reject'
            for s in STATISTICS
        }

    def to_dict(self):
        data = {
            'method': self._method, 'l_used': self._l_used, 'k_hat': self._k_hat,
            'B': self.B, 'observed': self._observed.to_dict(),
            'p_T': self._p_T, 'p_t': self._p_t, 'failures': self._failures
        }
        if self._mv is not None:
            data['mv'] = self._mv.to_dict()
        return data

    def __repr__(self):
        return 'BootstrapResult: %s l=%d p_T=%.4f p_t=%.4f' % (
            self._method, self._l_used, self._p_T, self._p_t)


def rejects(p, alpha):
    """Rejection rule of a level alpha test. alpha >= 1 always rejects."""
    return alpha >= 1 or p < alpha


def _finite(values):
    values = np.asarray(values, dtype=float).ravel()
    values = values[np.isfinite(values)]
    if values.size == 0:
        raise DegenerateBootstrap('No finite bootstrap statistics.')
    return values


def p_value(stats_star, observed):
    """Left tail bootstrap p-value ``#{b : stats_star[b] < observed} / B``.

    Non-finite bootstrap statistics are left out of the count and of B.
    """
    values = _finite(stats_star)
    return np.count_nonzero(values < observed) / float(values.size)


def bootstrap_quantile(stats_star, alpha):
    """Lower empirical quantile: the ceil(alpha B)-th order statistic.

    The order is clamped to 1, ..., B so alpha <= 0 returns the minimum and
    alpha >= 1 the maximum.
    """
    values = _finite(stats_star)
    order = int(math.ceil(alpha * values.size - 1e-9))
    order = min(max(order, 1), values.size)
    return float(np.partition(values, order - 1)[order - 1])


def recolor(perturbed, pi):
    """Build bootstrap paths from perturbed residuals under the unit root null.

    Without AR coefficients the paths are the cumulative sums of the residuals. With
    k coefficients the first k observations are the perturbed residuals themselves
    and later differences follow ``dX_t = sum_i pi_i dX_{t-i} + u_t``.

    Args:
        perturbed: An r x B array (or a vector) of perturbed residuals.
        pi: AR coefficients of the lagged differences.

    Returns:
        An array shaped like perturbed.
    """
    u = np.asarray(perturbed, dtype=float)
    vector = u.ndim == 1
    if vector:
        u = u[:, None]
    pi = np.asarray(pi, dtype=float).ravel()
    k = pi.size
    r = u.shape[0]
    if k == 0:
        paths = np.cumsum(u, axis=0)
    else:
        if r <= k:
            raise InsufficientData(
                'Recoloring with %d AR coefficients needs more than %d residuals.'
                % (k, r)
            )
        diffs = np.empty_like(u)
        diffs[0] = u[0]
        diffs[1:k] = u[1:k] - u[:k - 1]
        with np.errstate(over='ignore', invalid='ignore'):
            for t in range(k, r):
                # rows t-1, ..., t-k pair with pi_1, ..., pi_k
                diffs[t] = u[t] + np.dot(pi, diffs[t - k:t][::-1])
            paths = np.cumsum(diffs, axis=0)
        if not np.all(np.isfinite(paths)):
            raise UnstableRecoloring(
                'Recoloring with pi=%s produced non-finite values.'
                % np.array2string(pi, precision=6), pi=pi
            )
    return paths[:, 0] if vector else paths


class BootstrapProcedure(object):
    """Quantities fitted once on the data and shared by every replication.

    Args:
        series: An ObservedSeries or a sequence of values (no trend).
        method: ``DWB``, ``RWB`` or ``RDWB``.

    Properties:
        * method
        * series
        * observed
        * residuals
        * pi
        * k_hat
        * maic
        * length
    """

    __slots__ = ('_method', '_series', '_observed', '_residuals', '_pi', '_maic',
                 '_fitted', '_projector')

    def __init__(self, series, method):
        if not isinstance(series, ObservedSeries):
            series = ObservedSeries(series)
        self._series = series
        self._method = str(method).upper()
        detrended = ols_detrend(series)
        x = detrended.x
        self._observed = unit_root_statistics(x)
        # the observed t statistic must exist before any replication is drawn
        self._observed.t
        if self._method == 'DWB':
            self._residuals = x[1:] - self._observed.rho_hat * x[:-1]
            self._pi = np.empty(0)
            self._maic = None
        else:
            self._maic = maic_select(x)
            fit = adf_fit(x, self._maic.k_hat)
            self._residuals = fit.residuals
            self._pi = fit.pi
            _logger.debug('%s recolors with k=%d, pi=%s', self._method,
                          self._maic.k_hat, self._pi)
        r = self._residuals.size
        trend = series.trend
        if r < max(5, trend.regressor_count + 4):
            raise InsufficientData(
                'Only %d residuals are left for the bootstrap series.' % r
            )
        self._projector = trend_projector(trend, r)
        self._fitted = self._projector.fitted(detrended.beta)

    @property
    def method(self):
        return self._method

    @property
    def series(self):
        return self._series

    @property
    def observed(self):
        return self._observed

    @property
    def residuals(self):
        """Residuals the multipliers perturb, re-based to start at index 1."""
        return self._residuals

    @property
    def pi(self):
        return self._pi

    @property
    def k_hat(self):
        return None if self._maic is None else self._maic.k_hat

    @property
    def maic(self):
        return self._maic

    @property
    def length(self):
        """Length r of every bootstrap series."""
        return self._residuals.size

    def perturbed_residuals(self, source, rng, replications):
        """Residuals times multipliers, one replication per column.

        Replication b draws from its own substream of rng so the result does not
        depend on the order replications are computed in.
        """
        seed_seq = rngutil.as_seed_sequence(rng)
        r = self._residuals.size
        u = np.empty((r, replications))
        for b in range(replications):
            u[:, b] = self._residuals * source.draw(r, b, rngutil.generator(seed_seq, b))
        return u

    def replicate(self, source, rng, replications):
        """Bootstrap statistics for every replication.

        Returns:
            A tuple of (T_star, t_star, failures). Failed replications are NaN.
        """
        paths = recolor(self.perturbed_residuals(source, rng, replications), self._pi)
        detrended = self._projector.residuals(self._fitted[:, None] + paths)
        values = batch_statistics(detrended)
        T_star, t_star = values['T'], values['t']
        failed = ~(np.isfinite(T_star) & np.isfinite(t_star))
        failures = int(np.count_nonzero(failed))
        if failures > FAILURE_LIMIT * replications:
            raise DegenerateBootstrap(
                '%d of %d bootstrap replications have undefined statistics.'
                % (failures, replications), failures, replications
            )
        if failures:
            _logger.info('%d of %d bootstrap replications failed.',
                         failures, replications)
            T_star = np.where(failed, np.nan, T_star)
            t_star = np.where(failed, np.nan, t_star)
        return T_star, t_star, failures


def _minimum_volatility(procedure, config, candidates, rng):
    """Run every candidate and return the selection with the draws per candidate."""
    m = procedure.series.length
    candidates = validate_candidates(
        candidates or config.candidates or default_candidates(m))
    if candidates[-1] >= procedure.length:
        raise ConfigurationError(
            'Candidate bandwidth %d is not below the bootstrap length %d.'
            % (candidates[-1], procedure.length)
        )
    seed_seq = rngutil.as_seed_sequence(rng)
    survivors, samples, draws, dropped = [], [], [], []
    for l in candidates:
        source = GaussianMultipliers(config.kernel, l)
        try:
            run = procedure.replicate(source, seed_seq, config.replications)
        except NumericalError as e:
            warnings.warn('Bandwidth candidate %d dropped: %s' % (l, e))
            dropped.append(l)
            continue
        survivors.append(l)
        samples.append(run[0] if config.mv_statistic == 'T' else run[1])
        draws.append(run)
    selection = minimum_volatility(survivors, samples, config.mv_statistic, dropped)
    _logger.debug('Minimum volatility selected l=%d from %s.',
                  selection.l_selected, survivors)
    return selection, draws[selection.index]


def mv_select_bandwidth(series, config, candidates=None, rng=None):
    """Select the multiplier bandwidth with the minimum volatility method.

    For each candidate the configured bootstrap is run with B replications and the
    same random stream. The KS distance between the bootstrap distributions of
    consecutive candidates is computed and the first candidate of the closest pair
    is selected.

    Args:
        series: An ObservedSeries or a sequence of values.
        config: A BootstrapConfig. Its method must not be RWB.
        candidates: Optional non-decreasing candidate bandwidths.
        rng: Seed, SeedSequence or Generator. Defaults to the config seed.

    Returns:
        An MvSelection.
    """
    if config.method == 'RWB':
        raise ConfigurationError('RWB fixes l = 1 and has no bandwidth to select.')
    procedure = BootstrapProcedure(series, config.method)
    rng = config.seed if rng is None else rng
    selection, _ = _minimum_volatility(procedure, config, candidates, rng)
    return selection


def _run(series, config, rng, multipliers):
    procedure = BootstrapProcedure(series, config.method)
    rng = config.seed if rng is None else rng
    selection = None
    if config.is_mv:
        if multipliers is not None:
            raise ConfigurationError(
                'Injected multipliers can not be combined with minimum volatility '
                'bandwidth selection.'
            )
        selection, (T_star, t_star, failures) = \
            _minimum_volatility(procedure, config, None, rng)
        l = selection.l_selected
    else:
        l = config.effective_bandwidth(procedure.series.length)
        source = multipliers or GaussianMultipliers(config.kernel, l)
        T_star, t_star, failures = procedure.replicate(
            source, rng, config.replications)
    result = BootstrapResult(
        config.method, procedure.observed, T_star, t_star, l,
        procedure.k_hat, failures, selection
    )
    _logger.debug('%r', result)
    return result


def dwb_run(series, config, rng=None, multipliers=None):
    """Dependent wild bootstrap unit root test.

    Args:
        series: An ObservedSeries or a sequence of values.
        config: A BootstrapConfig with method DWB.
        rng: Optional seed, SeedSequence or Generator. Defaults to the config seed.
        multipliers: Optional multiplier source that replaces the Gaussian kernel
            multipliers.

    Returns:
        A BootstrapResult.
    """
    if config.method != 'DWB':
        raise ConfigurationError('dwb_run needs method DWB. Got %s.' % config.method)
    return _run(series, config, rng, multipliers)


def rdwb_run(series, config, rng=None, multipliers=None):
    """Recolored (dependent) wild bootstrap unit root test.

    The MAIC lag is selected once on the data and kept for every replication.
    """
    if config.method not in ('RWB', 'RDWB'):
        raise ConfigurationError(
            'rdwb_run needs method RWB or RDWB. Got %s.' % config.method
        )
    return _run(series, config, rng, multipliers)


def run_bootstrap(series, config, rng=None, multipliers=None):
    """Run the bootstrap test the config names."""
    if config.method == 'DWB':
        return dwb_run(series, config, rng, multipliers)
    return rdwb_run(series, config, rng, multipliers)
