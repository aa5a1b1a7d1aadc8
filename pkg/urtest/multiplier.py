# -*- coding: utf-8 -*-
"""Kernels and dependent wild bootstrap multipliers.

Multipliers are a stationary Gaussian sequence with zero mean, unit variance and
``cov(W_t, W_{t+h}) = a(h / l)`` for a kernel ``a`` supported on [-1, 1]. The
sequence is (l - 1)-dependent because ``a(h / l) = 0`` for ``|h| >= l``.
"""
import math
from functools import lru_cache

import numpy as np
from scipy import linalg

from .exceptions import ConfigurationError, NonPsdCovariance


class Kernel(object):
    """Base class for multiplier kernels.

    Subclasses are symmetric, equal 1 at 0, vanish outside [-1, 1] and have a
    nonnegative Fourier transform.

    Properties:
        * name
        * q: Characteristic exponent, ``1 - a(x) ~ k_q |x|^q`` near 0.
        * k_q
    """
    name = None
    q = None
    k_q = None

    @classmethod
    def from_name(cls, name):
        """Get a kernel by name.

        Args:
            name: ``bartlett`` or ``parzen``. A Kernel instance is returned as is.
        """
        if isinstance(name, Kernel):
            return name
        try:
            return _KERNELS[str(name).strip().lower()]()
        except KeyError:
            raise ConfigurationError(
                'Unknown kernel: %s. Use one of %s.' % (name, ', '.join(sorted(_KERNELS)))
            )

    def __call__(self, x):
        raise NotImplementedError()

    def __eq__(self, other):
        return isinstance(other, Kernel) and other.name == self.name

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(('Kernel', self.name))

    def __repr__(self):
        return 'Kernel: %s' % self.name


class Bartlett(Kernel):
    """Bartlett kernel a(x) = (1 - |x|) 1(|x| <= 1)."""
    name = 'bartlett'
    q = 1
    k_q = 1.0

    def __call__(self, x):
        return np.maximum(0.0, 1.0 - np.abs(np.asarray(x, dtype=float)))


class Parzen(Kernel):
    """Parzen kernel."""
    name = 'parzen'
    q = 2
    k_q = 6.0

    def __call__(self, x):
        ax = np.abs(np.asarray(x, dtype=float))
        return np.where(
            ax <= 0.5, 1.0 - 6.0 * ax ** 2 + 6.0 * ax ** 3,
            np.where(ax <= 1.0, 2.0 * (1.0 - ax) ** 3, 0.0)
        )


_KERNELS = {'bartlett': Bartlett, 'parzen': Parzen}


@lru_cache(maxsize=32)
def banded_factor(n, l, kernel):
    """Lower banded Cholesky factor of the n x n multiplier covariance.

    Returns:
        An l x n array in ``scipy.linalg.cholesky_banded`` lower storage where row j
        holds the j-th subdiagonal.
    """
    lags = np.arange(l)
    band = np.asarray(kernel(lags / float(l)), dtype=float)
    ab = np.repeat(band[:, None], n, axis=1)
    try:
        factor = linalg.cholesky_banded(ab, lower=True)
    except linalg.LinAlgError:
        raise NonPsdCovariance(
            'Covariance of the %s kernel with l=%d is not positive definite.'
            % (kernel.name, l)
        )
    factor.flags.writeable = False
    return factor


def generate_multipliers(n, l, kernel, rng):
    """Draw one multiplier sequence.

    Bartlett multipliers use the moving average ``W_t = l^(-1/2) sum_{j<l} eta_{t+j}``
    of i.i.d. standard normals which has the Bartlett covariance exactly. Other
    kernels use a banded Cholesky factor of the covariance matrix.

    Args:
        n: Length of the sequence.
        l: Bandwidth, 1 <= l < n.
        kernel: A Kernel or a kernel name.
        rng: A ``numpy.random.Generator``.

    Returns:
        A numpy array of length n. For l = 1 it is i.i.d. standard normal.
    """
    n, l = int(n), int(l)
    if not 1 <= l < n:
        raise ConfigurationError('Bandwidth must satisfy 1 <= l < %d. Got %d.' % (n, l))
    kernel = Kernel.from_name(kernel)
    if l == 1:
        return rng.standard_normal(n)
    if isinstance(kernel, Bartlett):
        eta = rng.standard_normal(n + l - 1)
        return np.convolve(eta, np.ones(l), mode='valid') / math.sqrt(l)
    factor = banded_factor(n, l, kernel)
    eta = rng.standard_normal(n)
    w = np.zeros(n)
    for j in range(l):
        w[j:] += factor[j, :n - j] * eta[:n - j]
    return w


class GaussianMultipliers(object):
    """Kernel covariance Gaussian multipliers.

    Args:
        kernel: A Kernel or kernel name.
        l: Bandwidth.
    """

    __slots__ = ('_kernel', '_l')

    def __init__(self, kernel, l):
        self._kernel = Kernel.from_name(kernel)
        self._l = int(l)

    @property
    def kernel(self):
        return self._kernel

    @property
    def l(self):
        return self._l

    def draw(self, n, replication, rng):
        """Multipliers of length n for one replication."""
        return generate_multipliers(n, self._l, self._kernel, rng)

    def __repr__(self):
        return 'GaussianMultipliers: %s l=%d' % (self._kernel.name, self._l)


class ConstantMultipliers(object):
    """Multipliers fixed to a constant. W = 1 reproduces the residuals exactly.

    Args:
        value: Multiplier value (default: 1).
    """

    __slots__ = ('_value',)

    def __init__(self, value=1.0):
        self._value = float(value)

    def draw(self, n, replication, rng):
        return np.full(n, self._value)

    def __repr__(self):
        return 'ConstantMultipliers: %g' % self._value


class RecordedMultipliers(object):
    """Replay multipliers from a recorded matrix.

    Args:
        matrix: An array with one replication per column. Rows beyond the requested
            length are ignored.
    """

    __slots__ = ('_matrix',)

    def __init__(self, matrix):
        matrix = np.asarray(matrix, dtype=float)
        self._matrix = matrix[:, None] if matrix.ndim == 1 else matrix

    def draw(self, n, replication, rng):
        if n > self._matrix.shape[0]:
            raise ConfigurationError(
                'Recorded multipliers have %d rows; %d requested.'
                % (self._matrix.shape[0], n)
            )
        return self._matrix[:n, replication % self._matrix.shape[1]].copy()

    def __repr__(self):
        return 'RecordedMultipliers: %d x %d' % self._matrix.shape
