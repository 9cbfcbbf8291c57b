"""Factorization-method reconstruction from far-field data.

The range test says z lies in the scatterer iff the point-source
pattern phi_z(theta) = e^{-ik theta . z} belongs to the range of
(F^* F)^{1/4}.  With the SVD F = U S V^T (plain transpose: then
F^* F = conj(V) S^2 V^T, so the rows of V^T are the right singular
directions in the paper's convention), the Picard criterion becomes
the indicator

    W(z) = ( sum_j |(V^T phi_z)_j|^2 / sigma_j )^{-1},

large inside the support and collapsing outside where the series
diverges.  sigma_j below the spectral floor are clipped to the floor
(noise regularization); with floor = 0 a zero singular value carrying
nonzero data forces W = 0, the defined degenerate output.

threshold_metrics turns a map into reconstruction-quality numbers:
mask = {W >= fraction max W}, Jaccard index and area ratio against the
true support, evaluated on the sampling grid by nearest-cell lookup
into the medium's grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numerics
from .farfield import AngleSet, FarFieldMatrix
from .medium import Grid, Medium
from .numerics import SvdTriple


@dataclass(frozen=True, eq=False)
class IndicatorMap:
    """Raw indicator field W over the sampling grid plus its maximum;
    normalized() rescales to [0, 1] for thresholding and plotting."""

    grid: Grid
    W: np.ndarray
    normalization: float

    def normalized(self) -> np.ndarray:
        if self.normalization > 0.0:
            return self.W / self.normalization
        return np.zeros_like(self.W)


def svd_factor(fm: FarFieldMatrix) -> SvdTriple:
    """SVD of the sampled far-field matrix."""
    return numerics.svd(fm.F)


def test_vector(z, angles: AngleSet, k: float) -> np.ndarray:
    """Far-field pattern of the point source at z sampled on the
    measurement directions: e^{-ik theta_j . z}."""
    z = np.asarray(z, dtype=float)
    return np.exp(-1j * k * (angles.thetas @ z))


def resolve_floor(svd: SvdTriple, policy: str, noise: float) -> float:
    """Spectral floor from the configured policy: 'auto' is
    1e-12 sigma_max for noise-free data and delta_noise sigma_max with
    injected noise; 'zero' disables regularization."""
    if policy == "zero":
        return 0.0
    if policy != "auto":
        raise ValueError(f"unknown floor policy {policy!r}")
    smax = float(svd.S[0]) if svd.S.size else 0.0
    level = noise if noise > 0.0 else 1e-12
    return level * smax

def _indicator_block(svd: SvdTriple, tests: np.ndarray,
                     floor: float) -> np.ndarray:
    """W for a block of test vectors (columns of tests)."""
    rho = svd.V.T @ tests
    p2 = np.abs(rho) ** 2
    if floor > 0.0:
        denom = np.sum(p2 / np.maximum(svd.S, floor)[:, None], axis=0)
        with np.errstate(divide="ignore"):
            w = np.where(denom > 0.0, 1.0 / denom, np.inf)
        return w
    pos = svd.S > 0.0
    denom = np.sum(p2[pos] / svd.S[pos, None], axis=0) \
        if np.any(pos) else np.zeros(tests.shape[1])
    # floor 0: any mass on a dead singular direction kills W
    dead = np.any(p2[~pos] > 0.0, axis=0) if np.any(~pos) \
        else np.zeros(tests.shape[1], dtype=bool)
    with np.errstate(divide="ignore"):
        w = np.where(denom > 0.0, 1.0 / denom, np.inf)
    w[dead] = 0.0
    return w


def indicator(svd: SvdTriple, test, floor: float) -> float:
    """W(z) for a single test vector."""
    test = np.asarray(test, dtype=complex)
    if test.shape[0] != svd.V.shape[0]:
        raise ValueError(
            f"test vector length {test.shape[0]} does not match the "
            f"factorized matrix size {svd.V.shape[0]}")
    if floor < 0.0:
        raise ValueError(f"floor must be >= 0, got {floor}")
    return float(_indicator_block(svd, test[:, None], floor)[0])


def indicator_map(svd: SvdTriple, angles: AngleSet, k: float,
                  sample_grid: Grid, floor: float) -> IndicatorMap:
    """W evaluated at every sample-grid center."""
    if floor < 0.0:
        raise ValueError(f"floor must be >= 0, got {floor}")
    tests = np.exp(-1j * k * (angles.thetas @ sample_grid.centers.T))
    w = _indicator_block(svd, tests, floor)
    finite = w[np.isfinite(w)]
    norm = float(np.max(finite)) if finite.size else 0.0
    return IndicatorMap(grid=sample_grid, W=w, normalization=norm)


def support_on_grid(medium: Medium, target: Grid) -> np.ndarray:
    """Boolean support mask of the medium resampled onto the target
    grid by nearest-cell lookup; the two grids must cover the same
    region of interest."""
    n_med = int(round(medium.n.size ** 0.5))
    if n_med * n_med != medium.n.size:
        raise ValueError("medium field is not square")
    h_med = 2.0 * target.x_max / n_med
    sel = np.clip(
        np.round((target.axis + target.x_max) / h_med - 0.5).astype(int),
        0, n_med - 1)
    field = medium.n.reshape(n_med, n_med)
    return field[np.ix_(sel, sel)] != 1.0


def threshold_metrics(map_: IndicatorMap, medium: Medium,
                      fraction: float):
    """(jaccard, area_ratio) of mask = {W >= fraction max W} against
    the true support on the map's grid."""
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"fraction must be in (0, 1), got {fraction}")
    if medium.support.size == 0:
        raise ValueError("medium has empty support")
    support = support_on_grid(medium, map_.grid).ravel()
    if not np.any(support):
        raise ValueError(
            "medium support vanishes on the sampling grid; refine it")
    mask = map_.W >= fraction * map_.normalization
    if map_.normalization == 0.0:
        mask = np.zeros_like(mask)
    inter = np.count_nonzero(mask & support)
    union = np.count_nonzero(mask | support)
    jaccard = inter / union if union else 1.0
    area_ratio = np.count_nonzero(mask) / np.count_nonzero(support)
    return float(jaccard), float(area_ratio)


def connected_components(mask2d: np.ndarray) -> int:
    """Number of 4-connected components of a boolean mask; used to
    check that separated scatterers reconstruct separately."""
    mask = np.asarray(mask2d, dtype=bool)
    seen = np.zeros_like(mask)
    count = 0
    for i0, j0 in zip(*np.nonzero(mask)):
        if seen[i0, j0]:
            continue
        count += 1
        stack = [(int(i0), int(j0))]
        seen[i0, j0] = True
        while stack:
            i, j = stack.pop()
            for a, b in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
                if 0 <= a < mask.shape[0] and 0 <= b < mask.shape[1] \
                        and mask[a, b] and not seen[a, b]:
                    seen[a, b] = True
                    stack.append((a, b))
    return count
