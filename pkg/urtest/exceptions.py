# -*- coding: utf-8 -*-
"""Exceptions raised by urtest.

Every exception derives from ``ValueError`` through ``UrtestError`` and carries the
exit code the command line interface uses when the error reaches it.

.. code-block:: shell

    UrtestError
    ├───ConfigurationError   :: exit 1
    ├───DataError            :: exit 2
    │   ├───InvalidSeries
    │   ├───MalformedInput
    │   ├───RankDeficient
    │   ├───InsufficientData
    │   └───DegenerateSeries
    └───NumericalError       :: exit 3
        ├───ZeroResidualVariance
        ├───DegenerateSigma
        ├───DegenerateBootstrap
        ├───UnstableRecoloring
        └───NonPsdCovariance

"""


class UrtestError(ValueError):
    """Base class for urtest errors."""
    exit_code = 1


class ConfigurationError(UrtestError):
    """Invalid or conflicting configuration."""
    exit_code = 1


class DataError(UrtestError):
    """Input data can not be tested."""
    exit_code = 2


class InvalidSeries(DataError):
    """Series values or length violate the series invariants."""


class MalformedInput(DataError):
    """An input file could not be parsed.

    Args:
        message: Error message.
        line: Optional 1-based line number of the offending row.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = 'line %d: %s' % (line, message)
        DataError.__init__(self, message)
        self.line = line


class RankDeficient(DataError):
    """Regressor matrix is singular to working precision."""


class InsufficientData(DataError):
    """Not enough observations for the requested regression."""


class DegenerateSeries(DataError):
    """Lagged series is identically zero."""


class NumericalError(UrtestError):
    """A statistic or a bootstrap procedure is numerically undefined."""
    exit_code = 3


class ZeroResidualVariance(NumericalError):
    """The AR(1) regression fits exactly and the t statistic is undefined."""


class DegenerateSigma(NumericalError):
    """Every MAIC candidate has a zero residual variance."""


class DegenerateBootstrap(NumericalError):
    """Too many bootstrap replications failed.

    Args:
        message: Error message.
        failures: Number of failed replications.
        replications: Total number of replications.
    """

    def __init__(self, message, failures=None, replications=None):
        NumericalError.__init__(self, message)
        self.failures = failures
        self.replications = replications


class UnstableRecoloring(NumericalError):
    """The recoloring recursion diverged.

    Args:
        message: Error message.
        pi: AR coefficients that produced the non-finite values.
    """

    def __init__(self, message, pi=None):
        NumericalError.__init__(self, message)
        self.pi = pi


class NonPsdCovariance(NumericalError):
    """A multiplier covariance matrix is not positive definite."""
