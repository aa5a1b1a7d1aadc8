# -*- coding: utf-8 -*-
"""Piecewise locally stationary error processes and near integrated series.

Errors are built from ``e_t = omega(t / n) eps_t`` with i.i.d. standard normal
``eps`` and either an MA recursion ``u_t = e_t + phi(t / n) e_{t-1}`` or an AR
recursion ``u_t = e_t + phi(t / n) u_{t-1}``. The observed series is
``X_t = (1 + c / n) X_{t-1} + u_t`` with ``X_0 = 0``.

Six AR/MA coefficient curves and five volatility curves give 60 designs which are
identified by strings such as ``MA_2_1``.
"""
import re

import numpy as np
from scipy import signal

from . import rngutil
from .exceptions import ConfigurationError
from .series import ObservedSeries

MODELS = ('MA', 'AR')
MIN_LENGTH = 20
_IDENTIFIER = re.compile(r'^(MA|AR)_(\d+)_(\d+)$', re.IGNORECASE)


def _indicator(condition):
    return np.asarray(condition, dtype=float)


_PHI = {
    1: lambda s: np.full_like(s, 0.8),
    2: lambda s: np.full_like(s, -0.8),
    3: lambda s: 0.2 + 0.6 * _indicator(s > 0.2),
    4: lambda s: 0.2 + 0.6 * _indicator(s > 0.8),
    5: lambda s: 0.8 - 1.6 * s,
    6: lambda s: 0.6 * s - 0.8
}

_OMEGA = {
    1: lambda s: np.full_like(s, 0.5),
    2: lambda s: 0.1 + 0.5 * _indicator(s > 0.1),
    3: lambda s: 0.1 + 0.5 * _indicator(s > 0.9),
    4: lambda s: 0.1 + 0.5 * _indicator((s > 0.4) & (s < 0.6)),
    5: lambda s: 0.5 * s + 0.1
}


class _CurveSpec(object):
    """Base class for an indexed curve on [0, 1]."""

    __slots__ = ('_index',)

    _CURVES = {}
    _NAME = None

    def __init__(self, index):
        if isinstance(index, _CurveSpec):
            index = index.index
        try:
            index = int(index)
        except (TypeError, ValueError):
            raise ConfigurationError('Invalid %s index: %r' % (self._NAME, index))
        if index not in self._CURVES:
            raise ConfigurationError(
                'Invalid %s index: %d. Use 1 to %d.'
                % (self._NAME, index, len(self._CURVES))
            )
        self._index = index

    @property
    def index(self):
        return self._index

    def __call__(self, s):
        """Evaluate the curve at s. Scalars return a float."""
        values = np.asarray(s, dtype=float)
        result = self._CURVES[self._index](np.atleast_1d(values))
        return float(result[0]) if values.ndim == 0 else result

    def __eq__(self, other):
        return type(other) is type(self) and other._index == self._index

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self._NAME, self._index))

    def __repr__(self):
        return '%s: %d' % (self.__class__.__name__, self._index)


class PhiSpec(_CurveSpec):
    """AR or MA coefficient curve phi_i(s) for i = 1, ..., 6.

    * phi_1 = 0.8
    * phi_2 = -0.8
    * phi_3 = 0.2 + 0.6 1(s > 0.2)
    * phi_4 = 0.2 + 0.6 1(s > 0.8)
    * phi_5 = 0.8 - 1.6 s
    * phi_6 = 0.6 s - 0.8
    """
    __slots__ = ()
    _CURVES = _PHI
    _NAME = 'phi'


class OmegaSpec(_CurveSpec):
    """Volatility curve omega_j(s) for j = 1, ..., 5.

    * omega_1 = 0.5
    * omega_2 = 0.1 + 0.5 1(s > 0.1)
    * omega_3 = 0.1 + 0.5 1(s > 0.9)
    * omega_4 = 0.1 + 0.5 1(0.4 < s < 0.6)
    * omega_5 = 0.5 s + 0.1
    """
    __slots__ = ()
    _CURVES = _OMEGA
    _NAME = 'omega'


def phi_eval(spec, s):
    """Evaluate phi_i(s)."""
    return PhiSpec(spec)(s)


def omega_eval(spec, s):
    """Evaluate omega_j(s)."""
    return OmegaSpec(spec)(s)


class DgpSpec(object):
    """Data generating process of a simulated series.

    Args:
        model: ``MA`` or ``AR``.
        phi: A PhiSpec or its index.
        omega: An OmegaSpec or its index.
        n: Series length (at least 20).
        c: Non-positive local alternative parameter. The root is 1 + c / n.

    Properties:
        * model
        * phi
        * omega
        * n
        * c
        * rho
        * identifier
    """

    __slots__ = ('_model', '_phi', '_omega', '_n', '_c')

    def __init__(self, model, phi, omega, n, c=0.0):
        model = str(model).strip().upper()
        if model not in MODELS:
            raise ConfigurationError('Invalid model: %s. Use MA or AR.' % model)
        self._model = model
        self._phi = PhiSpec(phi)
        self._omega = OmegaSpec(omega)
        try:
            self._n = int(n)
            self._c = float(c)
        except (TypeError, ValueError):
            raise ConfigurationError('Invalid length or c: %r, %r' % (n, c))
        if self._n < MIN_LENGTH:
            raise ConfigurationError(
                'Simulated series need n >= %d. Got %d.' % (MIN_LENGTH, self._n)
            )
        if not self._c <= 0:
            raise ConfigurationError('c must be non-positive. Got %s.' % c)

    @classmethod
    def from_string(cls, identifier, n, c=0.0):
        """Create a DGP from an identifier such as ``MA_1_1``."""
        match = _IDENTIFIER.match(str(identifier).strip())
        if not match:
            raise ConfigurationError(
                'Invalid DGP identifier: %s. Use MA_i_j or AR_i_j.' % identifier
            )
        model, i, j = match.groups()
        return cls(model, int(i), int(j), n, c)

    @classmethod
    def from_dict(cls, data):
        """Create a DGP from a dictionary.

        Args:
            data: A dictionary with ``model``, ``phi``, ``omega`` and ``n`` keys and
                an optional ``c``. An ``id`` key may replace model, phi and omega.
        """
        try:
            if 'id' in data:
                return cls.from_string(data['id'], data['n'], data.get('c', 0.0))
            return cls(data['model'], data['phi'], data['omega'], data['n'],
                       data.get('c', 0.0))
        except KeyError as e:
            raise ConfigurationError('DGP is missing key %s: %r' % (e, data))

    def to_dict(self):
        return {
            'model': self._model, 'phi': self._phi.index,
            'omega': self._omega.index, 'n': self._n, 'c': self._c
        }

    def with_c(self, c):
        """Copy of the DGP with another local alternative parameter."""
        return DgpSpec(self._model, self._phi, self._omega, self._n, c)

    @property
    def model(self):
        return self._model

    @property
    def phi(self):
        return self._phi

    @property
    def omega(self):
        return self._omega

    @property
    def n(self):
        return self._n

    @property
    def c(self):
        return self._c

    @property
    def rho(self):
        """Autoregressive root 1 + c / n."""
        return 1.0 + self._c / self._n

    @property
    def identifier(self):
        """Identifier such as ``MA_2_1``."""
        return '%s_%d_%d' % (self._model, self._phi.index, self._omega.index)

    def __eq__(self, other):
        return isinstance(other, DgpSpec) and other.to_dict() == self.to_dict()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.identifier, self._n, self._c))

    def __repr__(self):
        return 'DgpSpec: %s n=%d c=%g' % (self.identifier, self._n, self._c)


def all_dgps(n, c=0.0):
    """The 60 designs MA_i_j and AR_i_j for i = 1, ..., 6 and j = 1, ..., 5."""
    return [
        DgpSpec(model, i, j, n, c)
        for model in MODELS for i in sorted(_PHI) for j in sorted(_OMEGA)
    ]


def simulate_errors(spec, rng=None, phi=None, innovations=None):
    """Simulate the error process u_1, ..., u_n.

    ``e_0 = omega(0) eps_0`` starts the MA recursion and ``u_0 = 0`` starts the AR
    recursion. There is no burn-in.

    Args:
        spec: A DgpSpec.
        rng: A Generator or a seed.
        phi: Optional replacement for the coefficient curve. A number or a callable
            of s.
        innovations: Optional standard normal draws eps_0, ..., eps_n used instead
            of rng.

    Returns:
        A numpy array of length n.
    """
    n = spec.n
    if innovations is None:
        eps = rngutil.as_generator(rng).standard_normal(n + 1)
    else:
        eps = np.asarray(innovations, dtype=float).ravel()
        if eps.size != n + 1:
            raise ConfigurationError(
                'Expected %d innovations. Got %d.' % (n + 1, eps.size)
            )
    s = np.arange(n + 1) / float(n)
    if phi is None:
        coef = spec.phi(s[1:])
    elif callable(phi):
        coef = np.broadcast_to(np.asarray(phi(s[1:]), dtype=float), (n,))
    else:
        coef = np.full(n, float(phi))
    e = spec.omega(s) * eps
    if spec.model == 'MA':
        return e[1:] + coef * e[:-1]
    u = np.empty(n)
    previous = 0.0
    for t in range(n):
        previous = e[t + 1] + coef[t] * previous
        u[t] = previous
    return u


def simulate_series(spec, rng=None, errors=None, phi=None):
    """Simulate X_t = (1 + c / n) X_{t-1} + u_t with X_0 = 0 for t = 1, ..., n.

    Args:
        spec: A DgpSpec.
        rng: A Generator or a seed.
        errors: Optional error vector u of length n used instead of simulated
            errors.
        phi: Optional coefficient curve override passed to simulate_errors.

    Returns:
        An ObservedSeries without deterministic trend.
    """
    if errors is None:
        u = simulate_errors(spec, rng, phi=phi)
    else:
        u = np.asarray(errors, dtype=float).ravel()
        if u.size != spec.n:
            raise ConfigurationError('Expected %d errors. Got %d.' % (spec.n, u.size))
    x = signal.lfilter([1.0], [1.0, -spec.rho], u)
    return ObservedSeries(x)
