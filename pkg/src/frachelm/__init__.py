"""frachelm: direct and inverse scattering for the fractional
s-Helmholtz operator (-Delta)^s - k^{2s} in one, two, and three
dimensions.

The package is organized around the splitting of the outgoing
fundamental solution into the classical Helmholtz part and a real,
radially decaying correction:

    Phi_{s,k} = (k^{2-2s}/s) Phi_{helm,k} + Phi^Delta_{s,k}.

Modules
-------
specfun        scalar/vector special functions built from scratch
kernel         the correction kernel Phi^Delta, full kernel, cell masses
medium         grids, scatterer geometry, contrast functions
numerics       dense LU/SVD plumbing and a 1-norm condition estimator
direct         Lippmann-Schwinger discretization and manufactured tests
farfield       far-field operator assembly, unitarity and reciprocity
factorization  SVD-based indicator maps for support reconstruction
config, cli    key=value configs and the frachelm command line tool
"""

from .errors import (
    ConfigError,
    ConvergenceError,
    FracHelmError,
    IOFailure,
    NumericalError,
    PoleError,
    ScatteringPoleWarning,
    SingularSystemError,
)

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "FracHelmError",
    "IOFailure",
    "NumericalError",
    "PoleError",
    "ScatteringPoleWarning",
    "SingularSystemError",
    "__version__",
]

__version__ = "0.1.0"
