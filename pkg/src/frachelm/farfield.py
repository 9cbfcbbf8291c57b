"""Far-field matrix assembly and operator identity checks (d = 2).

For incident plane waves u^inc = e^{ik theta_j . x} on N_inc equally
spaced directions, the sampled far-field matrix is

    F_ij = [Q (I - M)^{-1} t_j]_i,
    Q_il = (k^2/s) e^{-ik theta_i . x_l} (n-1)(x_l) h^2,

with t_j the plane-wave trace on the support cells: the scattered
field's large-|x| expansion u ~ c_d k^{(d-3)/2} e^{ikr} / (pi r)^{(d-1)/2}
u^inf(x_hat) turns the Lippmann-Schwinger volume potential into the
plane-wave-weighted contrast integral above, because only the Helmholtz
part of the kernel radiates at O(r^{-1/2}); the remainder decays like
r^{-d/2} and drops out of the pattern.

F stores raw samples of u^inf.  Operator identities act on
F_op = (2pi/N_inc) F, the quadrature approximation of the far-field
operator on L^2 of the circle.  With r = 2|c_d|^2 k^{d-2} / pi^{d-1}
(d = 2: |c_2|^2 = 1/8, so r = 1/(4 pi)), the scattering relation makes
I + i r F_op unitary; its defect measures the combined discretization
error.  Reciprocity F(theta_i, theta_j) = F(-theta_j, -theta_i) holds
at the discrete level because the kernel table is symmetric, and serves
as a numerical health check rather than a theorem surrogate.

One LU factorization of I - M is shared across all incidence angles.
Optional multiplicative complex Gaussian noise (relative level
delta_noise) models measurement error for inverse-crime avoidance.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import numerics
from .direct import CONDITION_LIMIT, LSMatrix
from .errors import ScatteringPoleWarning
from .kernel import CD, KernelParams
from .medium import Grid, Medium


@dataclass(frozen=True, eq=False)
class AngleSet:
    """Equally spaced measurement/incidence directions on the circle;
    weight is the trapezoidal quadrature factor 2pi/N_inc."""

    N_inc: int
    thetas: np.ndarray
    weight: float


@dataclass(frozen=True, eq=False)
class FarFieldMatrix:
    """Raw far-field samples F[i, j] = u^inf(theta_i; theta_j):
    measurement direction i, incidence direction j."""

    F: np.ndarray
    angles: AngleSet
    params: KernelParams


def make_angles(n_inc: int) -> AngleSet:
    if n_inc < 2:
        raise ValueError(f"N_inc must be >= 2, got {n_inc}")
    phi = 2.0 * math.pi * np.arange(n_inc) / n_inc
    thetas = np.column_stack([np.cos(phi), np.sin(phi)])
    return AngleSet(N_inc=n_inc, thetas=thetas,
                    weight=2.0 * math.pi / n_inc)


def angle_values(angles: AngleSet) -> np.ndarray:
    """The angles 2 pi j / N_inc in radians, matching thetas."""
    return 2.0 * math.pi * np.arange(angles.N_inc) / angles.N_inc


def plane_wave(k: float, theta, x):
    """Incident plane wave e^{ik theta . x}; x may be a single point
    or an (..., d) array of points."""
    theta = np.asarray(theta, dtype=float)
    x = np.asarray(x, dtype=float)
    phase = x @ theta if x.ndim > 1 else float(np.dot(x, theta))
    return np.exp(1j * k * phase)


def incident_traces(ls: LSMatrix, angles: AngleSet) -> np.ndarray:
    """Plane-wave traces on the support cells, one column per
    incidence direction: t[l, j] = e^{ik theta_j . x_l}."""
    return np.exp(1j * ls.params.k * (ls.coords @ angles.thetas.T))


def assemble_q(grid: Grid, medium: Medium, params: KernelParams,
               angles: AngleSet) -> np.ndarray:
    """Far-field sampling matrix Q[i, l] = (k^2/s) e^{-ik theta_i . x_l}
    (n-1)(x_l) h^2 over the support cells."""
    if params.d != 2:
        raise ValueError("assemble_q is d=2 only")
    idx = medium.support
    gamma = medium.n[idx] - 1.0
    coords = grid.centers[idx]
    phase = np.exp(-1j * params.k * (angles.thetas @ coords.T))
    return (params.k ** 2 / params.s) * phase * gamma[None, :] * grid.h ** 2


def farfield_matrix(ls: LSMatrix, q: np.ndarray, angles: AngleSet,
                    params: KernelParams) -> FarFieldMatrix:
    """Solve (I - M) u_j = t_j for every incidence angle with one
    shared LU factorization and sample F = Q U."""
    n = ls.M.shape[0]
    if n == 0:
        f = np.zeros((angles.N_inc, angles.N_inc), dtype=complex)
        return FarFieldMatrix(F=f, angles=angles, params=params)
    a = -ls.M
    a[np.arange(n), np.arange(n)] += 1.0
    factors = numerics.lu_factor(a)
    cond = numerics.condest_1norm(factors)
    if cond > CONDITION_LIMIT:
        warnings.warn(
            f"I - M condition estimate {cond:.3e} exceeds "
            f"{CONDITION_LIMIT:.0e}: k is likely close to a scattering "
            "pole of this medium", ScatteringPoleWarning)
    traces = incident_traces(ls, angles)
    totals = numerics.lu_solve(factors, traces)
    f = q @ totals
    return FarFieldMatrix(F=f, angles=angles, params=params)


def apply_noise(fm: FarFieldMatrix, level: float,
                rng: np.random.Generator) -> FarFieldMatrix:
    """Entrywise multiplicative complex Gaussian noise at relative
    level delta: F -> F (1 + delta (xi1 + i xi2)/sqrt(2)) with
    standard-normal xi."""
    if level < 0:
        raise ValueError(f"noise level must be >= 0, got {level}")
    if level == 0:
        return fm
    shape = fm.F.shape
    xi = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    f = fm.F * (1.0 + level * xi / math.sqrt(2.0))
    return FarFieldMatrix(F=f, angles=fm.angles, params=fm.params)


def unitarity_factor(params: KernelParams) -> float:
    """r = 2 |c_d|^2 k^{d-2} / pi^{d-1}; 1/(4 pi) at d = 2."""
    cd = CD[params.d]
    return 2.0 * abs(cd) ** 2 * params.k ** (params.d - 2) \
        / math.pi ** (params.d - 1)


def check_unitarity(fm: FarFieldMatrix) -> float:
    """Spectral-norm defect of (I + i r F_op)^* (I + i r F_op) = I with
    F_op = weight F."""
    if fm.params.d != 2:
        raise ValueError("check_unitarity is d=2 only")
    f_op = fm.angles.weight * fm.F
    r = unitarity_factor(fm.params)
    g = np.eye(fm.angles.N_inc, dtype=complex) + 1j * r * f_op
    return numerics.norm2(g.conj().T @ g - np.eye(fm.angles.N_inc))


def check_reciprocity(fm: FarFieldMatrix) -> float:
    """max_{i,j} |F(theta_i, theta_j) - F(-theta_j, -theta_i)|; needs
    even N_inc so that -theta is in the angle set."""
    n = fm.angles.N_inc
    if n % 2 != 0:
        raise ValueError(
            f"reciprocity check needs even N_inc (got {n}) so that "
            "-theta belongs to the angle set")
    flip = (np.arange(n) + n // 2) % n
    g = fm.F[np.ix_(flip, flip)].T
    return float(np.max(np.abs(fm.F - g)))
