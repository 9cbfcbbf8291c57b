"""Computational grids and refractive-index media.

The region of interest [-x_max, x_max]^d is split into N_x^d congruent
cells of side h = 2 x_max / N_x with midpoint samples
x_i = -x_max + (i + 1/2) h per axis.  A Medium is a refractive index
field n sampled at the cell centers; the scatterer is the support of
the contrast n - 1, and the method requires the contrast to be strictly
positive there (one-signed media).

Shapes are composed last-writer-wins: a cell belongs to a shape iff its
center is inside, matching the midpoint discretization.  Available
primitives: disc, axis-aligned rectangle, a crescent "boomerang"
(disc(c, R) minus disc(c + (R/2) e1, R)), and a plain-text mask file
holding an N_x x N_x row-major matrix of contrast values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IOFailure


@dataclass(frozen=True, eq=False)
class Grid:
    """Uniform midpoint grid on [-x_max, x_max]^d.

    axis holds the per-axis center coordinates; centers the full
    N_x^d x d array ordered with the first axis slowest (row-major:
    flat index p = i * N_x + j maps to (axis[i], axis[j]) in 2-D).
    """

    x_max: float
    N_x: int
    d: int
    h: float
    axis: np.ndarray
    centers: np.ndarray


def build_grid(x_max: float, N_x: int, d: int = 2) -> Grid:
    """Midpoint grid with h = 2 x_max / N_x; centers at
    -x_max + (i + 1/2) h per axis."""
    if x_max <= 0.0:
        raise ValueError(f"x_max must be positive, got {x_max}")
    if not isinstance(N_x, (int, np.integer)) or N_x < 2:
        raise ValueError(f"N_x must be an integer >= 2, got {N_x}")
    if d not in (1, 2, 3):
        raise ValueError(f"d must be 1, 2, or 3, got {d}")
    h = 2.0 * x_max / N_x
    axis = -x_max + (np.arange(N_x) + 0.5) * h
    grids = np.meshgrid(*([axis] * d), indexing="ij")
    centers = np.stack([g.ravel() for g in grids], axis=-1)
    return Grid(x_max=float(x_max), N_x=int(N_x), d=d, h=h, axis=axis,
                centers=centers)


# ----------------------------------------------------------------------
# Shape primitives
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Disc:
    center: tuple
    radius: float
    contrast: float

    def inside(self, pts: np.ndarray) -> np.ndarray:
        c = np.asarray(self.center, dtype=float)
        return np.sum((pts - c) ** 2, axis=1) < self.radius ** 2


@dataclass(frozen=True)
class Rect:
    center: tuple
    half_widths: tuple
    contrast: float

    def inside(self, pts: np.ndarray) -> np.ndarray:
        c = np.asarray(self.center, dtype=float)
        w = np.asarray(self.half_widths, dtype=float)
        return np.all(np.abs(pts - c) < w, axis=1)


@dataclass(frozen=True)
class Boomerang:
    """Crescent: disc(center, scale) minus disc(center + (scale/2) e1,
    scale)."""

    center: tuple
    scale: float
    contrast: float

    def inside(self, pts: np.ndarray) -> np.ndarray:
        c = np.asarray(self.center, dtype=float)
        r2 = self.scale ** 2
        inner = np.sum((pts - c) ** 2, axis=1) < r2
        c2 = c.copy()
        c2[0] += 0.5 * self.scale
        cut = np.sum((pts - c2) ** 2, axis=1) < r2
        return inner & ~cut


@dataclass(frozen=True)
class MaskFile:
    """Contrast values read from a whitespace-separated N_x x N_x
    row-major text matrix; zero entries are background."""

    path: str
    contrast: float = 1.0  # scaling applied to the file values


ShapeSpec = Disc | Rect | Boomerang | MaskFile


@dataclass(frozen=True, eq=False)
class Medium:
    """Refractive index n at the cell centers of a grid, with the
    support cells of the contrast n - 1 and the recorded positive lower
    bound of the contrast there."""

    n: np.ndarray
    support: np.ndarray
    contrast_sign: str = "positive"
    min_contrast: float = 0.0


def make_medium(grid: Grid, shapes) -> Medium:
    """Sample n = 1 + contrast over the listed shapes (last writer
    wins).  Nonpositive contrasts are rejected: the factorization
    method requires a one-signed contrast bounded away from zero."""
    n = np.ones(grid.centers.shape[0])
    for shape in shapes:
        if isinstance(shape, MaskFile):
            try:
                vals = np.loadtxt(shape.path, dtype=float)
            except OSError as exc:
                raise IOFailure(f"cannot read mask file "
                                f"{shape.path}: {exc}") from exc
            vals = np.atleast_2d(vals)
            want = (grid.N_x,) * grid.d
            if vals.shape != want:
                raise ValueError(f"mask file {shape.path} has shape "
                                 f"{vals.shape}, expected {want}")
            if np.any(vals < 0.0):
                raise ValueError("mask file contrasts must be >= 0")
            vals = vals.ravel() * shape.contrast
            n = np.where(vals > 0.0, 1.0 + vals, n)
            continue
        if not shape.contrast > 0.0:
            raise ValueError(f"contrast must be positive, got "
                             f"{shape.contrast} in {shape}")
        mask = shape.inside(grid.centers)
        n[mask] = 1.0 + shape.contrast
    support = np.nonzero(n != 1.0)[0]
    min_c = float(np.min(n[support] - 1.0)) if support.size else 0.0
    return Medium(n=n, support=support, min_contrast=min_c)


def decimate_grid(grid: Grid, factor: int = 4) -> Grid:
    """Coarser grid on the same region (sampling grid for indicator
    maps); N_x is divided by `factor`, floored at 2."""
    return build_grid(grid.x_max, max(2, grid.N_x // factor), grid.d)


def support_mask(medium: Medium) -> np.ndarray:
    """Boolean support indicator over the flat grid index."""
    mask = np.zeros(medium.n.shape[0], dtype=bool)
    mask[medium.support] = True
    return mask
