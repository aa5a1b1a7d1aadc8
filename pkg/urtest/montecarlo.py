# -*- coding: utf-8 -*-
"""Monte Carlo size and size-corrected power experiments.

A cell is a DGP at one value of c. Every replication of a cell simulates one series
and runs every configured bootstrap method on it. Random streams are keyed by the
cell identity, the replication index and a role (data or multipliers) so results do
not depend on the worker count, on the execution order or on the other cells of the
experiment.

Experiment config files are JSON:

.. code-block:: python

    {
        "dgps": [{"model": "MA", "phi": 1, "omega": 1, "n": 100}, "AR_1_1"],
        "n": 100,
        "c_grid": [0, -10, -20, -30],
        "methods": ["dwb", "rwb", {"method": "rdwb", "l": "mv"}],
        "N": 500,
        "B": 399,
        "alpha": 0.05,
        "seed": 42
    }

"""
import json
import logging
import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor, as_completed

import numpy as np

from . import rngutil
from .bootstrap import (STATISTICS, BootstrapConfig, bootstrap_quantile, p_value,
    rejects, run_bootstrap)
from .config import experiment_defaults, local_alternatives, presets
from .dgp import DgpSpec, all_dgps, simulate_series
from .exceptions import ConfigurationError, DataError, NumericalError

_logger = logging.getLogger(__name__)

# share of failed replications above which a cell is flagged
FLAG_SHARE = 0.01


class ExperimentSpec(object):
    """Monte Carlo experiment.

    Args:
        dgps: DgpSpec templates. Their c is replaced by the values of c_grid.
        methods: BootstrapConfig objects. Labels must be unique.
        replications: Number of Monte Carlo replications N.
        alpha: Nominal level in (0, 1]. A level of 1 always rejects.
        seed: Non-negative root seed.
        c_grid: Non-positive local alternative parameters (default: 0 only).

    Properties:
        * dgps
        * methods
        * replications
        * N
        * alpha
        * seed
        * c_grid
    """

    __slots__ = ('_dgps', '_methods', '_replications', '_alpha', '_seed', '_c_grid')

    def __init__(self, dgps, methods, replications=500, alpha=0.05, seed=0,
                 c_grid=(0.0,)):
        self._dgps = [d if isinstance(d, DgpSpec) else DgpSpec.from_dict(d)
                      for d in dgps]
        if not self._dgps:
            raise ConfigurationError('An experiment needs at least one DGP.')
        methods = [m if isinstance(m, BootstrapConfig) else BootstrapConfig.from_dict(m)
                   for m in methods]
        if not methods:
            raise ConfigurationError('An experiment needs at least one method.')
        labels = [m.label for m in methods]
        if len(set(labels)) != len(labels):
            raise ConfigurationError('Method labels must be unique. Got %s.' % labels)
        self._methods = methods
        try:
            self._replications = int(replications)
            self._alpha = float(alpha)
            self._c_grid = [float(c) for c in c_grid]
        except (TypeError, ValueError):
            raise ConfigurationError('Invalid N, alpha or c_grid.')
        if self._replications < 1:
            raise ConfigurationError('N must be positive. Got %d.' % self._replications)
        if not 0 < self._alpha <= 1:
            raise ConfigurationError('alpha must be in (0, 1]. Got %s.' % alpha)
        if not self._c_grid or any(c > 0 for c in self._c_grid):
            raise ConfigurationError(
                'c_grid must hold non-positive values. Got %s.' % self._c_grid
            )
        if len(set(self._c_grid)) != len(self._c_grid):
            raise ConfigurationError('c_grid has duplicates: %s' % self._c_grid)
        self._seed = rngutil.as_seed_sequence(seed).entropy

    @classmethod
    def from_dict(cls, data, defaults=None):
        """Create an experiment from a dictionary.

        Args:
            data: A dictionary with ``dgps``, ``methods`` and optional ``c_grid``,
                ``N``, ``B``, ``alpha``, ``seed``, ``scale`` and ``n`` keys.
                ``dgps`` may be ``"all"`` or a list of DGP dictionaries and
                identifier strings.
                Identifiers take their length from ``n`` which can be a list.
                ``B`` applies to the methods that do not set their own ``B``.
                ``scale`` (``desk`` or ``full``) sets N, B and alpha unless they
                are given. ``"c_grid": "local"`` is c = 0, -5, ..., -30.
            defaults: Optional dictionary of N, B, alpha and seed defaults. By
                default they come from the package config file.
        """
        if not isinstance(data, dict):
            raise ConfigurationError('Experiment config must be a JSON object.')
        defaults = experiment_defaults() if defaults is None else dict(defaults)
        unknown = set(data) - {'dgps', 'methods', 'c_grid', 'N', 'B', 'alpha', 'seed',
                               'n', 'scale', 'description'}
        if unknown:
            raise ConfigurationError(
                'Unknown experiment keys: %s' % ', '.join(sorted(unknown))
            )
        if 'dgps' not in data or 'methods' not in data:
            raise ConfigurationError('Experiment config needs dgps and methods.')
        scale = data.get('scale')
        if scale is not None:
            if not isinstance(scale, str) or scale not in presets:
                raise ConfigurationError(
                    'Unknown scale %r. Use one of: %s' % (scale, ', '.join(sorted(presets)))
                )
            defaults.update(presets[scale])
        c_grid = data.get('c_grid', [0.0])
        if c_grid == 'local':
            c_grid = local_alternatives['c_grid']
        lengths = data.get('n')
        if lengths is not None and not isinstance(lengths, list):
            lengths = [lengths]
        dgps = []
        entries = data['dgps']
        if entries == 'all':
            if not lengths:
                raise ConfigurationError('"dgps": "all" needs an "n" key.')
            for n in lengths:
                dgps.extend(all_dgps(n))
        else:
            if not isinstance(entries, list):
                raise ConfigurationError('dgps must be "all" or a list.')
            for entry in entries:
                if isinstance(entry, dict):
                    dgps.append(DgpSpec.from_dict(entry))
                    continue
                if not lengths:
                    raise ConfigurationError(
                        'DGP identifier %s needs an "n" key.' % entry
                    )
                dgps.extend(DgpSpec.from_string(entry, n) for n in lengths)
        methods = data['methods']
        if not isinstance(methods, list):
            methods = [methods]
        replications = data.get('B', defaults['B'])
        configs = []
        for entry in methods:
            config = BootstrapConfig.from_dict(entry)
            # a method's own B wins over the experiment level B
            if not (isinstance(entry, dict) and ('B' in entry or 'replications' in entry)):
                config = config.replace(replications=replications)
            configs.append(config)
        return cls(
            dgps, configs,
            replications=data.get('N', defaults['N']),
            alpha=data.get('alpha', defaults['alpha']),
            seed=data.get('seed', defaults['seed']),
            c_grid=c_grid
        )

    @classmethod
    def from_file(cls, path, defaults=None):
        """Load an experiment from a JSON file.

        Args:
            path: Path to the JSON file.
            defaults: Optional N, B, alpha and seed defaults.
        """
        if not os.path.isfile(path):
            raise ConfigurationError('Failed to find experiment config at: %s' % path)
        with open(path) as inf:
            try:
                data = json.load(inf)
            except ValueError as e:
                raise ConfigurationError('Invalid experiment config %s: %s' % (path, e))
        return cls.from_dict(data, defaults)

    def to_dict(self):
        return {
            'dgps': [d.to_dict() for d in self._dgps],
            'methods': [m.to_dict() for m in self._methods],
            'c_grid': self._c_grid, 'N': self._replications, 'alpha': self._alpha,
            'seed': self._seed
        }

    @property
    def dgps(self):
        return self._dgps

    @property
    def methods(self):
        return self._methods

    @property
    def replications(self):
        return self._replications

    @property
    def N(self):
        """Alias for replications."""
        return self._replications

    @property
    def alpha(self):
        return self._alpha

    @property
    def seed(self):
        return self._seed

    @property
    def c_grid(self):
        return self._c_grid

    def __repr__(self):
        return 'ExperimentSpec: %d DGPs x %d methods x %d values of c, N=%d' % (
            len(self._dgps), len(self._methods), len(self._c_grid),
            self._replications)


class RejectionTable(object):
    """Empirical rejection rates.

    Args:
        rows: A list of dictionaries with the keys in COLUMNS.
        metadata: A JSON serializable dictionary.

    Properties:
        * rows
        * metadata
    """

    COLUMNS = ('model', 'phi', 'omega', 'n', 'method', 'statistic', 'c', 'rate',
               'failures')

    __slots__ = ('_rows', '_metadata')

    def __init__(self, rows, metadata=None):
        self._rows = [self._clean(row) for row in rows]
        self._metadata = metadata or {}

    @classmethod
    def _clean(cls, row):
        try:
            return {
                'model': str(row['model']), 'phi': int(row['phi']),
                'omega': int(row['omega']), 'n': int(row['n']),
                'method': str(row['method']), 'statistic': str(row['statistic']),
                'c': float(row['c']), 'rate': float(row['rate']),
                'failures': int(row['failures'])
            }
        except KeyError as e:
            raise ConfigurationError('Rejection table row is missing %s.' % e)

    @property
    def rows(self):
        return self._rows

    @property
    def metadata(self):
        return self._metadata

    def rate(self, identifier, n, method, statistic, c=0.0):
        """Rejection rate of one cell."""
        for row in self._rows:
            if '%s_%d_%d' % (row['model'], row['phi'], row['omega']) == identifier \
                    and row['n'] == n and row['method'] == method \
                    and row['statistic'] == statistic and row['c'] == float(c):
                return row['rate']
        raise KeyError((identifier, n, method, statistic, c))

    def __len__(self):
        return len(self._rows)

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        return isinstance(other, RejectionTable) and other._rows == self._rows \
            and other._metadata == self._metadata

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return 'RejectionTable: %d rows' % len(self._rows)


class CellDraws(object):
    """Per replication outcome of one method in one cell.

    Args:
        replications: Number of Monte Carlo replications.
        keep_stars: Keep the bootstrap samples of every replication.
    """

    __slots__ = ('observed', 'p', 'stars', 'l_used', 'failed')

    def __init__(self, replications, keep_stars=False):
        self.observed = {s: np.full(replications, np.nan) for s in STATISTICS}
        self.p = {s: np.full(replications, np.nan) for s in STATISTICS}
        self.stars = {s: [None] * replications for s in STATISTICS} \
            if keep_stars else None
        self.l_used = np.full(replications, np.nan)
        self.failed = np.zeros(replications, dtype=bool)

    @property
    def failures(self):
        return int(np.count_nonzero(self.failed))

    @property
    def succeeded(self):
        return np.flatnonzero(~self.failed)


def cell_key(dgp):
    """Stream key of a cell: the DGP identity including n and c."""
    return rngutil.stable_key(dgp.identifier, dgp.n, repr(float(dgp.c)))


def _replicate(task):
    """Run one replication of a cell for every method.

    Returns:
        A tuple of (replication, outcomes) with one outcome per method. A failed
        method gives None.
    """
    dgp_data, seed, rep, method_data, keep_stars = task
    dgp = DgpSpec.from_dict(dgp_data)
    key = cell_key(dgp)
    series = simulate_series(dgp, rngutil.generator(seed, key, rep, rngutil.ROLE_DATA))
    multipliers = rngutil.substream(seed, key, rep, rngutil.ROLE_MULTIPLIERS)
    outcomes = []
    for data in method_data:
        config = BootstrapConfig.from_dict(data)
        try:
            result = run_bootstrap(series, config, rng=multipliers)
        except (DataError, NumericalError) as e:
            _logger.debug('%s replication %d of %r failed: %s', config.label, rep, dgp, e)
            outcomes.append(None)
            continue
        outcome = {
            'observed': {'T': result.observed.T, 't': result.observed.t},
            'p': {'T': result.p_T, 't': result.p_t},
            'l_used': result.l_used
        }
        if keep_stars:
            outcome['stars'] = {'T': result.T_star, 't': result.t_star}
        outcomes.append(outcome)
    return rep, outcomes


def _execute(tasks, threads):
    """Run tasks on a process pool and return results in task order."""
    results = [None] * len(tasks)
    if threads <= 1 or len(tasks) <= 1:
        for i, task in enumerate(tasks):
            results[i] = _replicate(task)
        return results
    with ProcessPoolExecutor(max_workers=threads) as executor:
        futures = {executor.submit(_replicate, task): i for i, task in enumerate(tasks)}
        for future in as_completed(futures):
            results[futures[future]] = future.result()
    return results


def simulate_cell(spec, dgp, keep_stars=False, threads=1):
    """Run N replications of one cell.

    Returns:
        A list with one CellDraws per method of the spec.
    """
    method_data = [m.to_dict() for m in spec.methods]
    tasks = [(dgp.to_dict(), spec.seed, rep, method_data, keep_stars)
             for rep in range(spec.replications)]
    draws = [CellDraws(spec.replications, keep_stars) for _ in spec.methods]
    for rep, outcomes in _execute(tasks, threads):
        for cell, outcome in zip(draws, outcomes):
            if outcome is None:
                cell.failed[rep] = True
                continue
            for s in STATISTICS:
                cell.observed[s][rep] = outcome['observed'][s]
                cell.p[s][rep] = outcome['p'][s]
                if keep_stars:
                    cell.stars[s][rep] = outcome['stars'][s]
            cell.l_used[rep] = outcome['l_used']
    _logger.info('Finished %r (%d replications).', dgp, spec.replications)
    return draws


def _row(dgp, method, statistic, rate, failures):
    return {
        'model': dgp.model, 'phi': dgp.phi.index, 'omega': dgp.omega.index,
        'n': dgp.n, 'method': method.label, 'statistic': statistic, 'c': dgp.c,
        'rate': rate, 'failures': failures
    }


def _cell_metadata(dgp, method, cell, replications):
    flagged = cell.failures >= FLAG_SHARE * replications
    if flagged:
        warnings.warn(
            '%s with %s failed in %d of %d replications.'
            % (dgp.identifier, method.label, cell.failures, replications)
        )
    data = {
        'dgp': dgp.identifier, 'n': dgp.n, 'c': dgp.c, 'method': method.label,
        'failures': cell.failures, 'successes': int(cell.succeeded.size),
        'flagged': bool(flagged)
    }
    if method.is_mv:
        ok = cell.succeeded
        data['mean_l'] = float(np.mean(cell.l_used[ok])) if ok.size else None
    return data


def _rate(flags):
    flags = np.asarray(flags, dtype=bool)
    return float(np.mean(flags)) if flags.size else float('nan')


def _metadata(spec, kind):
    return {
        'kind': kind, 'N': spec.replications,
        'B': {m.label: m.replications for m in spec.methods},
        'alpha': spec.alpha, 'seed': spec.seed, 'c_grid': spec.c_grid,
        'rate_denominator': 'successful replications',
        'methods': [m.to_dict() for m in spec.methods], 'cells': []
    }


def run_size_experiment(spec, threads=1):
    """Empirical rejection rates at every value of c in the grid.

    A replication rejects when the bootstrap p-value is below alpha. Rates are
    taken over the replications whose bootstrap run succeeded.

    Args:
        spec: An ExperimentSpec.
        threads: Number of worker processes.

    Returns:
        A RejectionTable.
    """
    rows = []
    metadata = _metadata(spec, 'size')
    for template in spec.dgps:
        for c in spec.c_grid:
            dgp = template.with_c(c)
            draws = simulate_cell(spec, dgp, threads=threads)
            for method, cell in zip(spec.methods, draws):
                ok = cell.succeeded
                for s in STATISTICS:
                    rate = _rate([rejects(p, spec.alpha) for p in cell.p[s][ok]])
                    rows.append(_row(dgp, method, s, rate, cell.failures))
                metadata['cells'].append(
                    _cell_metadata(dgp, method, cell, spec.replications))
    return RejectionTable(rows, metadata)


def infeasible_critical_value(null_stats, alpha):
    """The ceil(alpha N)-th order statistic of N statistics simulated under the null.

    Args:
        null_stats: Statistics of N null replications.
        alpha: Nominal level. N alpha must be at least 1.
    """
    values = np.asarray(null_stats, dtype=float).ravel()
    values = values[np.isfinite(values)]
    if values.size * alpha < 1 - 1e-9:
        raise ConfigurationError(
            'The infeasible critical value needs N >= 1 / alpha. Got N=%d, alpha=%s.'
            % (values.size, alpha)
        )
    order = min(max(int(math.ceil(alpha * values.size - 1e-9)), 1), values.size)
    return float(np.partition(values, order - 1)[order - 1])


def corrected_level(null_cell, statistic, alpha):
    """Size-corrected bootstrap level alpha^c of one statistic.

    Returns:
        A tuple of (critical value, alpha^c).
    """
    ok = null_cell.succeeded
    critical = infeasible_critical_value(null_cell.observed[statistic][ok], alpha)
    levels = [p_value(null_cell.stars[statistic][i], critical) for i in ok]
    return critical, float(np.mean(levels))


def _corrected_rejections(cell, statistic, level):
    return [
        cell.observed[statistic][i] < bootstrap_quantile(cell.stars[statistic][i], level)
        for i in cell.succeeded
    ]


def size_corrected_power(spec, threads=1):
    """Size-corrected power of every method.

    The null replications (c = 0) give the infeasible critical value and the
    corrected level alpha^c which is the average share of bootstrap statistics below
    that critical value. For c < 0 a replication rejects when its statistic is below
    the alpha^c quantile of its own bootstrap statistics. Rows at c = 0 hold the raw
    empirical size. T and t are corrected independently.

    Args:
        spec: An ExperimentSpec whose c_grid holds 0 and at least one negative value.
        threads: Number of worker processes.

    Returns:
        A RejectionTable. Its metadata holds alpha^c and the null rate obtained with
        alpha^c for every DGP, method and statistic.
    """
    if 0.0 not in spec.c_grid or not any(c < 0 for c in spec.c_grid):
        raise ConfigurationError(
            'Size-corrected power needs c = 0 and at least one c < 0 in c_grid.'
        )
    rows = []
    metadata = _metadata(spec, 'power')
    metadata['corrections'] = []
    for template in spec.dgps:
        null_dgp = template.with_c(0.0)
        null_draws = simulate_cell(spec, null_dgp, keep_stars=True, threads=threads)
        levels = {}
        for method, cell in zip(spec.methods, null_draws):
            metadata['cells'].append(
                _cell_metadata(null_dgp, method, cell, spec.replications))
            for s in STATISTICS:
                critical, level = corrected_level(cell, s, spec.alpha)
                levels[(method.label, s)] = level
                metadata['corrections'].append({
                    'dgp': template.identifier, 'n': template.n,
                    'method': method.label, 'statistic': s,
                    'critical_value': critical, 'alpha_c': level,
                    'null_rate_alpha_c': _rate(_corrected_rejections(cell, s, level))
                })
        for c in spec.c_grid:
            if c == 0:
                draws = null_draws
            else:
                draws = simulate_cell(spec, template.with_c(c), keep_stars=True,
                                      threads=threads)
            dgp = template.with_c(c)
            for method, cell in zip(spec.methods, draws):
                if c != 0:
                    metadata['cells'].append(
                        _cell_metadata(dgp, method, cell, spec.replications))
                for s in STATISTICS:
                    if c == 0:
                        flags = [rejects(p, spec.alpha) for p in cell.p[s][cell.succeeded]]
                    else:
                        flags = _corrected_rejections(cell, s, levels[(method.label, s)])
                    rows.append(_row(dgp, method, s, _rate(flags), cell.failures))
    return RejectionTable(rows, metadata)
