"""Exception hierarchy for the frachelm package.

The classes mirror the three failure families of the command line tools:
configuration problems (bad keys, malformed scene files, out-of-range
parameters), numerical problems (gamma poles, non-convergent series or
quadratures, singular linear systems), and I/O problems.  Library code
raises these; the CLI maps them onto distinct exit codes.
"""

from __future__ import annotations


class FracHelmError(Exception):
    """Base class for all frachelm errors."""


class ConfigError(FracHelmError):
    """Invalid configuration: unknown keys, bad values, schema mismatch."""


class NumericalError(FracHelmError):
    """A numerical routine could not deliver a trustworthy result."""


class PoleError(NumericalError):
    """Evaluation requested exactly at a pole of gamma or of a derived
    closed-form expression (e.g. the spectral cell term at s*(m+1) = 1)."""


class ConvergenceError(NumericalError):
    """A series or quadrature failed to reach its tolerance within the
    allotted budget."""


class SingularSystemError(NumericalError):
    """A linear system was singular to working precision."""


class IOFailure(FracHelmError):
    """A required file is missing, unreadable, or unwritable."""


class ScatteringPoleWarning(UserWarning):
    """The Lippmann-Schwinger system is so ill conditioned that k is
    likely close to a scattering pole of the medium."""
