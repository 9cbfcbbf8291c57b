"""Dense complex linear algebra substrate.

A "dense matrix" in this package is a C-contiguous complex numpy array
(rows x cols, row-major); no wrapper class is interposed.  This module
provides the three services the scattering pipeline needs:

* LU factorization with partial pivoting and residual-checked solves
  (realizing (I - M)^{-1} applied to many right-hand sides, with the
  factorization reused),
* a Hager/Higham one-norm condition estimator on an existing
  factorization (the scattering-pole tripwire),
* a complex SVD returning the transpose convention F = U S V^T
  (plain transpose, not conjugate) used by the factorization method,
  under which F^H F = conj(V) S^2 V^T.

Factorization and SVD are delegated to LAPACK via scipy/numpy; the
residual and condition contracts, the convention adaptation, and the
estimator are local.  Every solve enforces a relative residual of
1e-10 per column or raises SingularSystemError.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConvergenceError, SingularSystemError

RESIDUAL_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class LUFactors:
    """Partial-pivoting LU factorization of a square complex matrix,
    reusable across solves; keeps a read-only reference to A for
    residual checks and norm estimates."""

    a: np.ndarray
    lu: np.ndarray
    piv: np.ndarray


def lu_factor(a: np.ndarray) -> LUFactors:
    """Factor a square complex matrix; raises SingularSystemError on an
    exactly singular pivot."""
    a = np.ascontiguousarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    with warnings.catch_warnings():
        # an exactly-zero pivot is reported below as SingularSystemError
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    if a.shape[0] and np.min(np.abs(np.diagonal(lu))) == 0.0:
        raise SingularSystemError("matrix is singular to working precision")
    return LUFactors(a=a, lu=lu, piv=piv)


def lu_solve(a, b: np.ndarray) -> np.ndarray:
    """Solve A X = B for one or more right-hand sides.

    `a` may be a matrix or an LUFactors from lu_factor (reused).  The
    relative residual per column must not exceed 1e-10, else
    SingularSystemError is raised.
    """
    f = a if isinstance(a, LUFactors) else lu_factor(a)
    b = np.asarray(b, dtype=complex)
    vec = b.ndim == 1
    bm = b[:, None] if vec else b
    if bm.shape[0] != f.a.shape[0]:
        raise ValueError("right-hand side dimension mismatch")
    x = scipy.linalg.lu_solve((f.lu, f.piv), bm, check_finite=False)
    res = np.linalg.norm(f.a @ x - bm, axis=0)
    scale = np.maximum(np.linalg.norm(bm, axis=0), 1e-300)
    worst = float(np.max(res / scale)) if bm.size else 0.0
    if worst > RESIDUAL_TOL:
        raise SingularSystemError(
            f"solve residual {worst:.3e} exceeds {RESIDUAL_TOL:.0e}; "
            "system is effectively singular")
    return x[:, 0] if vec else x


def condest_1norm(f: LUFactors, max_iter: int = 5) -> float:
    """Hager/Higham estimate of the 1-norm condition number kappa_1(A)
    from an existing LU factorization (a lower bound, sharp in
    practice)."""
    n = f.a.shape[0]
    if n == 0:
        return 0.0
    anorm = float(np.max(np.abs(f.a).sum(axis=0)))
    x = np.full(n, 1.0 / n, dtype=complex)
    est = 0.0
    for it in range(max_iter):
        y = scipy.linalg.lu_solve((f.lu, f.piv), x, check_finite=False)
        est = float(np.abs(y).sum())
        ay = np.abs(y)
        safe = np.where(ay == 0.0, 1.0, ay)
        xi = np.where(ay == 0.0, 1.0 + 0.0j, y / safe)
        z = scipy.linalg.lu_solve((f.lu, f.piv), xi, trans=2,
                                  check_finite=False)
        j = int(np.argmax(np.abs(z)))
        if it > 0 and np.abs(z[j]) <= np.real(np.vdot(z, x)):
            break
        x = np.zeros(n, dtype=complex)
        x[j] = 1.0
    return est * anorm


@dataclass(frozen=True, eq=False)
class SvdTriple:
    """Singular value decomposition in the transpose convention
    F = U S V^T (V^T is the plain transpose).  U and V are unitary, S
    is real nonnegative descending; consequently
    F^H F = conj(V) S^2 V^T."""

    U: np.ndarray
    S: np.ndarray
    V: np.ndarray


def svd(a: np.ndarray) -> SvdTriple:
    """Full SVD of a complex matrix in the F = U S V^T convention."""
    a = np.asarray(a, dtype=complex)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    try:
        u, s, vh = np.linalg.svd(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD did not converge: {exc}") from exc
    return SvdTriple(U=u, S=s, V=vh.T)


def norm2(a: np.ndarray) -> float:
    """Spectral norm ||A||_2 = sigma_max(A)."""
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0.0
    return float(svd(a).S[0])
