"""The outgoing fundamental solution of (-Delta)^s - k^{2s} and its
Helmholtz correction kernel.

For s in (0, 1] and dimension d in {1, 2, 3} the radiating fundamental
solution splits as

    Phi_{s,k} = (k^{2-2s}/s) Phi_{helm,k} + Phi^Delta_{s,k},

where Phi_helm is the classical Helmholtz fundamental solution and the
correction Phi^Delta is real valued and decays like |x|^{-d/2}.  With
m := floor(1/(2s)), the correction is

  d=1:  (k^{1-2s}/pi) int_0^inf e^{-ykr} y^{2s} sin(s pi)
            / (y^{4s} + 1 - 2 cos(s pi) y^{2s}) dy,
  d=2:  sum_{j<m} c_{2,j} k^{2sj} / r^{2-2s(j+1)}
            + (1/2pi) int_0^C J0(rho r) F(rho, k) rho drho + L(r, k),
  d=3:  sum_{j<m} c_{3,j} k^{2sj} / r^{3-2s(j+1)}
            + (k^{2-2s}/(2 pi^2 r)) int_0^inf e^{-kry} y^{1-2sm}
              [y^{2s} sin(pi s(m+1)) - r^{2s} sin(pi s m)] / (...) dy,

with c_{d,j} = Gamma(d/2 - s(j+1)) / (4^{s(j+1)} pi^{d/2} Gamma(s(j+1))).
The "special" branch applies iff 1/(2s) is a positive integer; there the
spectral density F gains the extra smooth term k^{2-2s}/(rho(rho+k)) and
L(r,k) = -(k^{2-2s}/4) K0(kr) with K0 = H0 - Y0 the Struve function of
the second kind.  The denominator y^{4s} + 1 - 2 cos(s pi) y^{2s} is
bounded below by sin^2(s pi) > 0, so the Laplace-type integrands have no
poles, and the exponent 1 - 2sm is always >= 0.

The d=2 spectral integral is oscillatory; it is evaluated by the plain
trapezoid rule on [0, C] with the cutoff C = h^{-2/(2s(m+1)-1/2)} tied
to the target grid spacing h (truncation error O(h^2)) and ten nodes
per J0 period at the largest grid radius 2*sqrt(2)*x_max.  F has a
removable singularity at rho = k; within |rho - k| <= 1e-3 k it is
evaluated by its quadratic Taylor expansion, and the trapezoid
abscissae shift by half a step if a node would land within 1e-6 k of k.

The diagonal of the Lippmann-Schwinger matrix needs the cell mass
int_cell Phi; `singular_cell_mass` returns the closed-form
small-h approximation built from the log part of the Hankel function,
the large-rho tail of F (a Weber-Schafheitlin integral), the power-sum
primitives, and in the special branch the K0 log part.  The asymptotic
spectral term has a pole when s(m+1) = 1 (e.g. s = 1/2) and blows up as
s -> 1, where Gamma(1-s) diverges while the true cell integral
vanishes; `spectral="quadrature"` evaluates the pre-asymptotic integral
int_0^inf J1(xi) F(2 xi/h, k) dxi instead, which stays finite for every
admissible s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, PoleError
from .specfun import gamma_fn, j0_array, j1_array, struve_k0

_SQRT2 = math.sqrt(2.0)
# relative half-width of the Taylor window around the removable
# singularity of F at rho = k
_POLE_WINDOW = 1e-3
# nodes shift by half a step if one falls this close (relative) to k
_NODE_GUARD = 1e-6


@dataclass(frozen=True)
class KernelParams:
    """Fractional order s, wavenumber k, and dimension d.

    s = 1 is accepted as the classical degeneration (F vanishes
    identically and Phi = Phi_helm); orders outside (0, 1] and s <= 0
    are rejected.
    """

    s: float
    k: float
    d: int = 2

    def __post_init__(self):
        if not (0.0 < self.s <= 1.0):
            raise ValueError(f"s must lie in (0, 1], got {self.s}")
        if not self.k > 0.0:
            raise ValueError(f"k must be positive, got {self.k}")
        if self.d not in (1, 2, 3):
            raise ValueError(f"d must be 1, 2, or 3, got {self.d}")


def kernel_order(params: KernelParams) -> tuple[int, bool]:
    """Return (m, special) with m = floor(1/(2s)).

    The special branch applies iff 1/(2s) is a positive integer
    (equivalently s <= 1/2 with 1/(2s) integral); a relative fuzz of
    1e-12 absorbs floating-point noise in 1/(2s).
    """
    v = 1.0 / (2.0 * params.s)
    n = round(v)
    if n >= 1 and abs(v - n) <= 1e-12 * max(1.0, v):
        return n, True
    return math.floor(v), False


@dataclass(frozen=True)
class OscQuadSpec:
    """Trapezoid rule layout for the d=2 spectral integral: cutoff C and
    node count N, both tied to a target grid via osc_quad_spec."""

    cutoff: float
    n_nodes: int


def osc_quad_spec(params: KernelParams, h: float, x_max: float) -> OscQuadSpec:
    """Quadrature layout for grid spacing h on [-x_max, x_max]^2.

    C = h^{-2/(2s(m+1)-1/2)} makes the tail truncation O(h^2); N puts
    ten nodes per J0 period at the largest grid separation 2 sqrt(2)
    x_max.
    """
    if h <= 0.0 or x_max <= 0.0:
        raise ValueError("h and x_max must be positive")
    m, _ = kernel_order(params)
    expo = 2.0 * params.s * (m + 1) - 0.5
    assert expo > 0.0, "2s(m+1) > 1/2 must hold for s in (0,1]"
    cutoff = h ** (-2.0 / expo)
    r_max = 2.0 * _SQRT2 * x_max
    n_nodes = math.ceil(10.0 * cutoff * r_max / (2.0 * math.pi))
    return OscQuadSpec(cutoff=cutoff, n_nodes=n_nodes)


# ----------------------------------------------------------------------
# Fundamental Helmholtz solution and the far-field constants
# ----------------------------------------------------------------------

# Phi_helm ~ CD[d] k^{(d-3)/2} e^{ikr} / (pi r)^{(d-1)/2}.  The d=2
# constant follows from H0^(1)(z) ~ sqrt(2/(pi z)) e^{i(z - pi/4)}:
# (i/4) e^{-i pi/4} = e^{+i pi/4}/4.
CD = {
    1: 1.0 + 0.0j,
    2: np.exp(1j * math.pi / 4.0) / (2.0 * _SQRT2),
    3: 0.25 + 0.0j,
}


def helm_fundamental(d: int, k: float, r: float) -> complex:
    """Outgoing Helmholtz fundamental solution at separation r > 0.

    d=1: e^{ikr}/k;  d=2: (i/4) H0^(1)(kr);  d=3: e^{ikr}/(4 pi r).
    """
    if r <= 0.0 or k <= 0.0:
        raise ValueError("k and r must be positive")
    if d == 1:
        return np.exp(1j * k * r) / k
    if d == 2:
        from .specfun import hankel1_0
        return 0.25j * hankel1_0(k * r).value
    if d == 3:
        return np.exp(1j * k * r) / (4.0 * math.pi * r)
    raise ValueError(f"d must be 1, 2, or 3, got {d}")


def helm_far(d: int, k: float, r) -> complex:
    """Leading far-field asymptotic of helm_fundamental,
    CD[d] k^{(d-3)/2} e^{ikr} / (pi r)^{(d-1)/2}; accepts array r."""
    r = np.asarray(r, dtype=float)
    val = (CD[d] * k ** ((d - 3) / 2.0) * np.exp(1j * k * r)
           / (math.pi * r) ** ((d - 1) / 2.0))
    return complex(val) if val.ndim == 0 else val


def helm_fundamental_array(d: int, k: float, r: np.ndarray) -> np.ndarray:
    """Vectorized helm_fundamental for positive separations."""
    r = np.asarray(r, dtype=float)
    if d == 1:
        return np.exp(1j * k * r) / k
    if d == 2:
        from .specfun import _bessel_arrays
        j0, _, y0 = _bessel_arrays(k * r, need_y0=True)
        return 0.25j * (j0 + 1j * y0)
    if d == 3:
        return np.exp(1j * k * r) / (4.0 * math.pi * r)
    raise ValueError(f"d must be 1, 2, or 3, got {d}")


# ----------------------------------------------------------------------
# Power-sum coefficients and the spectral density F
# ----------------------------------------------------------------------

def coeff_c(d: int, j: int, s: float) -> float:
    """Power-sum coefficient
    c_{d,j} = Gamma(d/2 - s(j+1)) / (4^{s(j+1)} pi^{d/2} Gamma(s(j+1))).

    Raises PoleError if d/2 - s(j+1) is a nonpositive integer.
    """
    a = s * (j + 1)
    num = gamma_fn(d / 2.0 - a).value
    den = 4.0 ** a * math.pi ** (d / 2.0) * gamma_fn(a).value
    return num / den


def _pole_series_coeffs(s: float, m: int) -> tuple[float, float, float]:
    """Taylor coefficients of k^{2s} F_generic(k(1+u)) around u = 0.

    F_generic = (k/rho)^{2sm}/(rho^{2s}-k^{2s}) - (1/s)k^{2-2s}/(rho^2-k^2)
    has a removable singularity at rho = k; near it
    k^{2s} F = g0 + g1 u + g2 u^2 + O(u^3) with u = rho/k - 1.
    """
    g0 = -m - 0.5 + 1.0 / (2.0 * s)
    g1 = m * m * s + m * s + s / 6.0 - 1.0 / (6.0 * s)
    g2 = (-2.0 * m ** 3 * s * s / 3.0 - m * m * s * s - m * m * s / 2.0
          - m * s * s / 3.0 - m * s / 2.0 - s / 12.0 + 1.0 / (12.0 * s))
    return g0, g1, g2


def spectral_F_array(rho: np.ndarray, params: KernelParams) -> np.ndarray:
    """Spectral density F(rho, k) of the d=2 correction, vectorized.

    Entries with |rho - k| <= 1e-3 k use the quadratic Taylor expansion
    through the removable singularity.  For m >= 1 the density diverges
    as rho -> 0 like rho^{-2sm} (the integrand rho*J0*F still vanishes
    there); callers that quadrature through rho = 0 must zero that node
    themselves.
    """
    s, k = params.s, params.k
    m, special = kernel_order(params)
    rho = np.asarray(rho, dtype=float)
    k2s = k ** (2.0 * s)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if m == 0:
            lead = 1.0
        else:
            lead = (k / rho) ** (2.0 * s * m)
        f = (lead / (rho ** (2.0 * s) - k2s)
             - (k ** (2.0 - 2.0 * s) / s) / (rho * rho - k * k))
    window = np.abs(rho - k) <= _POLE_WINDOW * k
    if window.any():
        g0, g1, g2 = _pole_series_coeffs(s, m)
        u = rho[window] / k - 1.0
        f = np.array(f, copy=True)
        f[window] = (g0 + u * (g1 + u * g2)) / k2s
    if special:
        with np.errstate(divide="ignore", invalid="ignore"):
            f = f + k ** (2.0 - 2.0 * s) / (rho * (rho + k))
    return f


def spectral_F(rho: float, params: KernelParams) -> float:
    """Scalar spectral density F(rho, k); see spectral_F_array."""
    if params.d != 2:
        raise ValueError("F is the d=2 spectral density")
    m, _ = kernel_order(params)
    if rho < 0.0:
        raise ValueError("rho must be nonnegative")
    if rho == 0.0 and m >= 1:
        raise ValueError("F diverges at rho=0 for m >= 1 "
                         "(the integrand rho*F*J0 still vanishes there)")
    return float(spectral_F_array(np.array([rho]), params)[0])


# ----------------------------------------------------------------------
# d=2 spectral quadrature tables
# ----------------------------------------------------------------------

@lru_cache(maxsize=8)
def _spectral_rule(params: KernelParams, quad: OscQuadSpec):
    """Trapezoid nodes and premultiplied weights w_i = trap_i rho_i
    F(rho_i)/(2 pi) for the d=2 spectral integral.  Cached: the rule
    depends only on (params, quad) and is shared read-only."""
    c, n = quad.cutoff, quad.n_nodes
    k = params.k
    step = c / n
    nodes = step * np.arange(n + 1)
    if np.min(np.abs(nodes - k)) < _NODE_GUARD * k:
        # half-step shift: midpoint layout keeps every node >= step/2
        # away from the removable singularity
        nodes = step * (np.arange(n) + 0.5)
        trap = np.full(n, step)
    else:
        trap = np.full(n + 1, step)
        trap[0] = 0.5 * step
        trap[-1] = 0.5 * step
    with np.errstate(divide="ignore", invalid="ignore"):
        # rho=0 yields 0*inf here; the node is removable and fixed below
        w = trap * nodes * spectral_F_array(nodes, params) \
            / (2.0 * math.pi)
    if nodes[0] == 0.0:
        w[0] = 0.0  # rho*F -> 0 as rho -> 0 in every branch
    return nodes, w


def phi_delta_batch(radii, params: KernelParams, quad: OscQuadSpec,
                    chunk_elems: int = 4_000_000) -> np.ndarray:
    """Vectorized d=2 correction kernel Phi^Delta on an array of radii.

    Evaluates power sum + trapezoid spectral integral + special L term
    with J0 computed on (chunk, n_nodes) blocks to bound memory.
    """
    if params.d != 2:
        raise ValueError("phi_delta_batch is the d=2 fast path")
    radii = np.asarray(radii, dtype=float)
    if np.any(radii <= 0.0):
        raise ValueError("radii must be positive")
    s, k = params.s, params.k
    m, special = kernel_order(params)
    nodes, w = _spectral_rule(params, quad)
    out = np.zeros(radii.shape, dtype=float)
    flat = radii.ravel()
    res = out.ravel()
    rows = max(1, chunk_elems // max(1, len(nodes)))
    for lo in range(0, len(flat), rows):
        hi = min(lo + rows, len(flat))
        res[lo:hi] = j0_array(np.outer(flat[lo:hi], nodes)) @ w
    for j in range(m):
        res += (coeff_c(2, j, s) * k ** (2.0 * s * j)
                / flat ** (2.0 - 2.0 * s * (j + 1)))
    if special:
        fac = -0.25 * k ** (2.0 - 2.0 * s)
        res += fac * np.array([struve_k0(k * r).value for r in flat])
    return out


# ----------------------------------------------------------------------
# Laplace-type integrals for d = 1 and d = 3
# ----------------------------------------------------------------------

def _exp_sinh_quad(f, scale: float, tol: float = 1e-10,
                   max_level: int = 8) -> float:
    """int_0^inf f(y) dy by doubly exponential quadrature.

    Maps y = scale * exp((pi/2) sinh t), trapezoids on |t| <= 4.2, and
    halves the step until two levels agree to tol (relative).  f must
    accept numpy arrays.  Handles endpoint algebraic factors y^alpha
    (alpha > -1) and exponential tails.
    """
    t_max = 4.2
    h = 0.7

    def level(ts):
        u = 0.5 * math.pi * np.sinh(ts)
        y = scale * np.exp(u)
        with np.errstate(over="ignore", under="ignore"):
            v = f(y) * y * 0.5 * math.pi * np.cosh(ts)
        return float(np.sum(v[np.isfinite(v)]))

    total = h * level(np.arange(-t_max, t_max + 0.5 * h, h))
    for _ in range(max_level):
        h *= 0.5
        mids = np.arange(-t_max + h, t_max, 2.0 * h)
        new_total = 0.5 * total + h * level(mids)
        err = abs(new_total - total)
        total = new_total
        if err <= tol * max(abs(total), 1e-300):
            return total
    raise ConvergenceError("exp-sinh quadrature did not reach tolerance "
                           f"{tol} in {max_level} refinements")


def _denom(y: np.ndarray, s: float) -> np.ndarray:
    """y^{4s} + 1 - 2 cos(s pi) y^{2s} >= sin^2(s pi) > 0."""
    y2s = y ** (2.0 * s)
    return y2s * y2s + 1.0 - 2.0 * math.cos(s * math.pi) * y2s


def _phi_delta_1d(r: float, params: KernelParams) -> float:
    s, k = params.s, params.k
    sin_s = math.sin(s * math.pi)

    def f(y):
        return np.exp(-y * k * r) * y ** (2.0 * s) * sin_s / _denom(y, s)

    scale = max(2.0 * s / (k * r), 1e-8)
    return k ** (1.0 - 2.0 * s) / math.pi * _exp_sinh_quad(f, scale)


def _phi_delta_3d(r: float, params: KernelParams) -> float:
    s, k = params.s, params.k
    m, _ = kernel_order(params)
    sin_hi = math.sin(math.pi * s * (m + 1))
    sin_lo = math.sin(math.pi * s * m)
    r2s = r ** (2.0 * s)

    def f(y):
        num = y ** (2.0 * s) * sin_hi - r2s * sin_lo
        return np.exp(-k * r * y) * y ** (1.0 - 2.0 * s * m) * num / _denom(y, s)

    scale = max(1.0 / (k * r), 1e-8)
    val = (k ** (2.0 - 2.0 * s) / (2.0 * math.pi ** 2 * r)
           * _exp_sinh_quad(f, scale))
    for j in range(m):
        val += (coeff_c(3, j, s) * k ** (2.0 * s * j)
                / r ** (3.0 - 2.0 * s * (j + 1)))
    return val


def phi_delta(r: float, params: KernelParams,
              quad: OscQuadSpec | None = None) -> float:
    """Correction kernel Phi^Delta_{s,k}(r) for r > 0; always real.

    d=2 requires an OscQuadSpec (build one with osc_quad_spec for the
    target grid); d=1 and d=3 use adaptive exponential-weight
    quadrature with tolerance 1e-10.
    """
    if r <= 0.0:
        raise ValueError("r must be positive")
    if params.d == 2:
        if quad is None:
            raise ValueError("d=2 requires an OscQuadSpec")
        return float(phi_delta_batch(np.array([r]), params, quad)[0])
    if params.d == 1:
        return _phi_delta_1d(r, params)
    return _phi_delta_3d(r, params)


def phi_full(r: float, params: KernelParams,
             quad: OscQuadSpec | None = None) -> complex:
    """Full fundamental solution (k^{2-2s}/s) Phi_helm + Phi^Delta."""
    s, k = params.s, params.k
    lead = k ** (2.0 - 2.0 * s) / s
    return (lead * helm_fundamental(params.d, k, r)
            + phi_delta(r, params, quad))


# ----------------------------------------------------------------------
# Singular cell mass for the Lippmann-Schwinger diagonal
# ----------------------------------------------------------------------

def mu_spectral_quadrature(params: KernelParams, h: float,
                           n_panels: int = 300, tail: int = 40) -> float:
    """Pre-asymptotic spectral cell mass int_0^inf J1(xi) F(2 xi/h) dxi.

    Panels between consecutive approximate J1 sign changes (~(j+1/4)pi)
    are integrated by 16-point Gauss-Legendre; the alternating panel
    tail is Euler-accelerated.  Stays finite for every s in (0,1],
    unlike the closed-form asymptotic term whose Gamma(1-s(m+1))
    diverges at s(m+1) = 1 and as s -> 1.
    """
    gl_x, gl_w = np.polynomial.legendre.leggauss(16)
    edges = np.concatenate(([0.0], (np.arange(1, n_panels + 1) + 0.25)
                            * math.pi))
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    xi = mid[:, None] + half[:, None] * gl_x[None, :]
    vals = j1_array(xi.ravel()) * spectral_F_array(2.0 * xi.ravel() / h,
                                                   params)
    panel = (vals.reshape(xi.shape) * gl_w[None, :]).sum(axis=1) * half
    head = float(panel[:-tail].sum())
    # Euler transformation of the alternating tail
    part = np.cumsum(panel[-tail:])
    while len(part) > 1:
        part = 0.5 * (part[1:] + part[:-1])
    return head + float(part[0])


def singular_cell_mass(params: KernelParams, h: float,
                       refined: bool = False,
                       spectral: str = "asymptotic") -> complex:
    """Small-h closed form for the cell integral of Phi^approx over one
    grid cell (disc of radius h/2), used for the Lippmann-Schwinger
    diagonal:

      [Helmholtz log]  -s^{-1} k^{2-2s} (h^2/8 ln(kh/2) - h^2/16)
      [spectral tail]  (h/2)^{2s(m+1)} k^{2sm} 2^{-2s(m+1)}
                           Gamma(1-s(m+1))/Gamma(1+s(m+1))
      [power sum]      sum_{j<m} pi c_{2,j} k^{2sj} (h/2)^{2s(j+1)}/(s(j+1))
      [special]        -k^{2-2s} (h^2/8 ln(hk/2) - h^2/16)

    The asymptotic spectral tail raises PoleError when s(m+1) = 1
    (e.g. s = 1/2); spectral="quadrature" uses the pre-asymptotic
    integral instead (also the right choice near s = 1).  refined=True
    restores the next-order Hankel constant that the log term drops,
    turning the Helmholtz contribution into
    s^{-1} k^{2-2s} (i pi h^2/16 - h^2/8 (ln(kh/4)+gamma) + h^2/16).
    """
    if params.d != 2:
        raise ValueError("singular_cell_mass is defined for d = 2")
    if h <= 0.0:
        raise ValueError("h must be positive")
    s, k = params.s, params.k
    m, special = kernel_order(params)
    a = s * (m + 1)
    h2 = h * h

    if refined:
        from .specfun import EULER_GAMMA
        helm = (k ** (2.0 - 2.0 * s) / s) * (
            1j * math.pi * h2 / 16.0
            - h2 / 8.0 * (math.log(k * h / 4.0) + EULER_GAMMA)
            + h2 / 16.0)
    else:
        helm = (-(k ** (2.0 - 2.0 * s) / s)
                * (h2 / 8.0 * math.log(k * h / 2.0) - h2 / 16.0))

    if spectral == "asymptotic":
        if abs(1.0 - a - round(1.0 - a)) < 1e-12 and round(1.0 - a) <= 0:
            raise PoleError(
                f"spectral cell term has a Gamma pole at s(m+1) = {a}; "
                "use spectral='quadrature'")
        spec = ((0.5 * h) ** (2.0 * a) * k ** (2.0 * s * m)
                * 2.0 ** (-2.0 * a)
                * gamma_fn(1.0 - a).value / gamma_fn(1.0 + a).value)
    elif spectral == "quadrature":
        spec = mu_spectral_quadrature(params, h)
    else:
        raise ValueError("spectral must be 'asymptotic' or 'quadrature'")

    power = 0.0
    for j in range(m):
        aj = s * (j + 1)
        power += (math.pi * coeff_c(2, j, s) * k ** (2.0 * s * j)
                  * (0.5 * h) ** (2.0 * aj) / aj)

    extra = 0.0
    if special:
        extra = -(k ** (2.0 - 2.0 * s)) * (h2 / 8.0 * math.log(h * k / 2.0)
                                           - h2 / 16.0)
    return complex(helm + spec + power + extra)
