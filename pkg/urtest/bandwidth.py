# -*- coding: utf-8 -*-
"""Multiplier bandwidth rules and the minimum volatility criterion."""
import math

import numpy as np
from scipy import stats

from .exceptions import ConfigurationError, DegenerateBootstrap, InsufficientData


def default_bandwidth(n):
    """Deterministic bandwidth floor(6 (n / 100)^(1/4)), at least 1.

    Args:
        n: Number of observations. Must be at least 16.
    """
    n = int(n)
    if n < 16:
        raise InsufficientData(
            'The deterministic bandwidth rule needs n >= 16. Got %d.' % n
        )
    return max(1, int(math.floor(6.0 * (n / 100.0) ** 0.25 + 1e-9)))


def default_candidates(n):
    """Minimum volatility candidates 1, ..., floor(12 (n / 100)^(1/4)) + 1."""
    n = int(n)
    if n < 16:
        raise InsufficientData(
            'The minimum volatility candidate rule needs n >= 16. Got %d.' % n
        )
    top = int(math.floor(12.0 * (n / 100.0) ** 0.25 + 1e-9)) + 1
    return list(range(1, top + 1))


def parse_candidates(value):
    """Parse a candidate list.

    Args:
        value: A range string ``"1..13"``, a comma separated string ``"1,2,4"`` or
            a sequence of integers.

    Returns:
        A list of integers.
    """
    if value is None:
        return None
    if isinstance(value, str):
        text = value.strip()
        try:
            if '..' in text:
                start, end = text.split('..', 1)
                return list(range(int(start), int(end) + 1))
            return [int(v) for v in text.split(',') if v.strip()]
        except ValueError:
            raise ConfigurationError('Invalid candidate list: %s' % value)
    try:
        return [int(v) for v in value]
    except (TypeError, ValueError):
        raise ConfigurationError('Invalid candidate list: %r' % (value,))


def validate_candidates(candidates):
    """Check that candidates are positive, non-decreasing and at least two."""
    candidates = parse_candidates(candidates)
    if candidates is None or len(candidates) < 2:
        raise ConfigurationError(
            'Minimum volatility selection needs at least 2 candidates.'
        )
    if candidates[0] < 1 or any(b < a for a, b in zip(candidates, candidates[1:])):
        raise ConfigurationError(
            'Candidates must be positive and increasing. Got %s.' % candidates
        )
    return candidates


def ks_distance(a, b):
    """Two sample Kolmogorov-Smirnov distance sup_x |F_a(x) - F_b(x)|.

    Non-finite entries are ignored.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    a, b = a[np.isfinite(a)], b[np.isfinite(b)]
    if a.size == 0 or b.size == 0:
        raise DegenerateBootstrap('KS distance needs two non-empty samples.')
    return float(stats.ks_2samp(a, b, method='asymp').statistic)


class MvSelection(object):
    """Minimum volatility bandwidth selection.

    Args:
        candidates: Candidates that produced a bootstrap distribution.
        distances: KS distance between the distributions of consecutive candidates.
        statistic: ``T`` or ``t``.
        dropped: Candidates dropped because their bootstrap run failed.

    Properties:
        * l_selected
        * index
        * candidates
        * distances
        * statistic
        * dropped
    """

    __slots__ = ('_candidates', '_distances', '_statistic', '_dropped', '_index')

    def __init__(self, candidates, distances, statistic='T', dropped=()):
        self._candidates = list(candidates)
        self._distances = [float(h) for h in distances]
        if len(self._distances) != len(self._candidates) - 1:
            raise ValueError('Expected one distance per pair of candidates.')
        self._statistic = statistic
        self._dropped = list(dropped)
        self._index = int(np.argmin(self._distances))

    @property
    def l_selected(self):
        """Selected bandwidth. Ties go to the smaller candidate."""
        return self._candidates[self._index]

    @property
    def index(self):
        """Position of the selected candidate in candidates."""
        return self._index

    @property
    def candidates(self):
        return self._candidates

    @property
    def distances(self):
        return self._distances

    @property
    def statistic(self):
        return self._statistic

    @property
    def dropped(self):
        return self._dropped

    def to_dict(self):
        return {
            'l_selected': self.l_selected,
            'statistic': self._statistic,
            'candidates': self._candidates,
            'pairs': [list(p) for p in zip(self._candidates, self._candidates[1:])],
            'H': self._distances,
            'dropped': self._dropped
        }

    def __repr__(self):
        return 'MvSelection: l=%d (%s, %d candidates)' % (
            self.l_selected, self._statistic, len(self._candidates))


def minimum_volatility(candidates, samples, statistic='T', dropped=()):
    """Select the candidate whose bootstrap distribution moves least at the next one.

    Args:
        candidates: Surviving candidates in increasing order.
        samples: One bootstrap sample per candidate.
        statistic: Name of the statistic the samples hold.
        dropped: Candidates that did not produce a sample.

    Returns:
        An MvSelection.
    """
    if len(candidates) < 2:
        raise DegenerateBootstrap(
            'Minimum volatility selection needs 2 surviving candidates. Got %d.'
            % len(candidates)
        )
    distances = [ks_distance(a, b) for a, b in zip(samples, samples[1:])]
    return MvSelection(candidates, distances, statistic, dropped)
