"""Checks for the fractional fundamental solution and its cell masses.

Frozen reference values come from the independent quadrature oracles in
_oracles.py (Gauss-Legendre panels between Bessel zeros with an
Euler-accelerated tail, and doubly adaptive 1-d rules), all computed
before the kernel module was written.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special as sps

from frachelm import kernel as kn
from frachelm.errors import PoleError
from frachelm.kernel import KernelParams, OscQuadSpec
from frachelm.specfun import EULER_GAMMA

from _oracles import (coeff_c_ref, kernel_order_ref, mu_integral_ref,
                      phi_delta_1d_ref, phi_delta_3d_ref, phi_delta_ref,
                      spectral_f_ref)

# probe layout shared by the d=2 point checks: 10 points per J0 period
# out to separation 10, the configuration validated against the panel
# oracle at sup-relative error <= 1e-3
_X_PROBE = 10.0 / (2.0 * math.sqrt(2.0))
_H_PROBE = {0.7: 0.006, 0.5: 0.05, 0.2: 0.016}

# frozen oracle values (panel quadrature / adaptive 1-d rules)
PHI_DELTA_2D_07_K4_R1 = 0.0018924826236481822
PHI_DELTA_2D_05_K2_R1 = 0.018913354662661946
PHI_DELTA_2D_02_K5_R05 = 0.24341014991750082
PHI_DELTA_1D_05_K2_R1 = 0.04601019895819644
PHI_DELTA_3D_07_K4_R1 = 0.0011408013733719858
PHI_DELTA_3D_03_K2_R1 = 0.02720202318831224
PHI_DELTA_2D_07_K4_R20 = 1.371378544012704e-07
PHI_DELTA_2D_07_K4_R40 = 1.309312794890604e-08
F_LIMIT_07_K4 = 0.030768707316244495
MU_07_K4_H0025 = 0.001670503709708461
HELM_LOG_TERM_07_K4_H0025 = 0.0008963263196744457
SPECTRAL_TERM_07_K4_H0025 = 0.0027023388259461586
QUAD_CUTOFF_07_H0025 = 3631.895248491755
QUAD_NODES_07_H0025_X5 = 81747


def _quad(params, h, x_arg=_X_PROBE):
    return kn.osc_quad_spec(params, h, x_arg)


# ---------------------------------------------------------------------------
# parameters and branch selection
# ---------------------------------------------------------------------------

def test_params_validation():
    with pytest.raises(ValueError):
        KernelParams(s=0.0, k=1.0)
    with pytest.raises(ValueError):
        KernelParams(s=1.2, k=1.0)
    with pytest.raises(ValueError):
        KernelParams(s=-0.3, k=1.0)
    with pytest.raises(ValueError):
        KernelParams(s=0.5, k=0.0)
    with pytest.raises(ValueError):
        KernelParams(s=0.5, k=-2.0)
    with pytest.raises(ValueError):
        KernelParams(s=0.5, k=1.0, d=4)
    # s = 1 is the classical degeneration, accepted by extension
    assert KernelParams(s=1.0, k=1.0).s == 1.0


def test_kernel_order_examples():
    assert kn.kernel_order(KernelParams(s=0.7, k=1.0)) == (0, False)
    assert kn.kernel_order(KernelParams(s=0.25, k=1.0)) == (2, True)
    assert kn.kernel_order(KernelParams(s=0.3, k=1.0)) == (1, False)
    assert kn.kernel_order(KernelParams(s=0.5, k=1.0)) == (1, True)
    assert kn.kernel_order(KernelParams(s=1.0 / 6.0, k=1.0)) == (3, True)


@given(st.floats(min_value=0.05, max_value=0.999))
@settings(max_examples=100, deadline=None)
def test_kernel_order_matches_reference(s):
    assert kn.kernel_order(KernelParams(s=s, k=1.0)) == kernel_order_ref(s)


def test_kernel_order_special_implies_half_integer_reciprocal():
    for n in range(1, 8):
        m, special = kn.kernel_order(KernelParams(s=0.5 / n, k=1.0))
        assert special and m == n


# ---------------------------------------------------------------------------
# Helmholtz fundamental solution
# ---------------------------------------------------------------------------

def test_helm_fundamental_3d_closed_form():
    k = 3.7
    v = kn.helm_fundamental(3, k, 1.0)
    assert v == pytest.approx(np.exp(1j * k) / (4.0 * math.pi), rel=1e-14)


def test_helm_fundamental_2d_is_quarter_hankel():
    for r in (0.3, 1.0, 7.5):
        v = kn.helm_fundamental(2, 1.0, r)
        assert v == pytest.approx(0.25j * sps.hankel1(0, r), rel=1e-12)


def test_helm_fundamental_1d_table_form():
    # the tabulated d=1 value e^{ikr}/k (note: no 1/(2i) factor)
    k, r = 2.0, 1.3
    assert kn.helm_fundamental(1, k, r) == pytest.approx(
        np.exp(1j * k * r) / k, rel=1e-14)


def test_helm_fundamental_domain():
    with pytest.raises(ValueError):
        kn.helm_fundamental(2, 1.0, 0.0)
    with pytest.raises(ValueError):
        kn.helm_fundamental(2, 1.0, -1.0)
    with pytest.raises(ValueError):
        kn.helm_fundamental(2, -1.0, 1.0)
    with pytest.raises(ValueError):
        kn.helm_fundamental(4, 1.0, 1.0)


def test_helm_fundamental_2d_far_asymptotic():
    # the asymptotic constant must carry phase e^{+i pi/4}: with the
    # H0^(1)(z) ~ sqrt(2/(pi z)) e^{i(z - pi/4)} expansion,
    # (i/4) e^{-i pi/4} = e^{+i pi/4}/4; the opposite phase fails this
    # agreement check by |1 - e^{i pi/2}| = sqrt(2)
    c2 = np.exp(1j * math.pi / 4.0) / (2.0 * math.sqrt(2.0))
    r = 100.0
    asym = c2 * np.exp(1j * r) / math.sqrt(math.pi * r)
    v = kn.helm_fundamental(2, 1.0, r)
    assert abs(v - asym) / abs(asym) <= 2e-2


def test_helm_far_matches_fundamental_at_large_argument():
    for d in (1, 2, 3):
        v = kn.helm_fundamental(d, 1.0, 100.0)
        a = kn.helm_far(d, 1.0, 100.0)
        assert abs(v - a) / abs(a) <= 2e-2


def test_helm_far_3d_equals_fundamental_exactly():
    # (1/4) k^0 e^{ikr}/(pi r) is the d=3 fundamental solution itself
    for r in (0.5, 2.0, 9.0):
        assert kn.helm_far(3, 2.0, r) == pytest.approx(
            kn.helm_fundamental(3, 2.0, r), rel=1e-14)


def test_helm_fundamental_array_matches_scalar():
    r = np.array([0.2, 1.0, 3.7, 40.0])
    for d in (1, 2, 3):
        arr = kn.helm_fundamental_array(d, 2.5, r)
        scal = np.array([kn.helm_fundamental(d, 2.5, x) for x in r])
        np.testing.assert_allclose(arr, scal, rtol=1e-12)


def test_helm_far_accepts_arrays():
    r = np.array([10.0, 20.0])
    v = kn.helm_far(2, 1.0, r)
    assert v.shape == (2,)
    assert v[0] == pytest.approx(kn.helm_far(2, 1.0, 10.0), rel=1e-14)


# ---------------------------------------------------------------------------
# power-sum coefficients
# ---------------------------------------------------------------------------

def test_coeff_c_half_s_closed_form():
    # Gamma(1/2) cancels and 4^{1/2} = 2 leaves 1/(2 pi)
    assert kn.coeff_c(2, 0, 0.5) == pytest.approx(1.0 / (2.0 * math.pi),
                                                  rel=1e-12)


def test_coeff_c_quarter_s_values():
    # Gamma argument is d/2 - s(j+1): 0.75 for d=2 and 1.25 for d=3
    g = math.gamma
    assert kn.coeff_c(2, 0, 0.25) == pytest.approx(
        g(0.75) / (4.0 ** 0.25 * math.pi * g(0.25)), rel=1e-12)
    assert kn.coeff_c(3, 0, 0.25) == pytest.approx(
        g(1.25) / (4.0 ** 0.25 * math.pi ** 1.5 * g(0.25)), rel=1e-12)


def test_coeff_c_matches_reference_grid():
    for d in (1, 2, 3):
        for s in (0.2, 0.25, 0.3, 0.45):
            m = math.floor(1.0 / (2.0 * s))
            for j in range(m):
                if s * (j + 1) >= d / 2.0 - 1e-9:
                    continue  # outside the s(j+1) < d/2 precondition
                assert kn.coeff_c(d, j, s) == pytest.approx(
                    coeff_c_ref(d, j, s), rel=1e-12)


def test_coeff_c_pole():
    # d/2 - s(j+1) = 1 - 1 = 0 for d=2, j=1, s=0.5
    with pytest.raises(PoleError):
        kn.coeff_c(2, 1, 0.5)


# ---------------------------------------------------------------------------
# spectral density F
# ---------------------------------------------------------------------------

def test_spectral_f_vanishes_at_classical_order():
    p = KernelParams(s=1.0, k=3.0)
    rho = np.geomspace(0.1, 100.0, 500)
    assert np.abs(kn.spectral_F_array(rho, p)).max() <= 1e-10
    assert kn.spectral_F(3.0, p) == 0.0


def test_spectral_f_removable_singularity_two_sided_limit():
    p = KernelParams(s=0.7, k=4.0)
    v = kn.spectral_F(4.0, p)
    assert v == pytest.approx(F_LIMIT_07_K4, rel=1e-6)
    # raw-branch evaluations straddling the singularity average to the
    # same limit up to O(delta^2)
    avg = 0.5 * (spectral_f_ref(4.0 - 1e-4, 0.7, 4.0)
                 + spectral_f_ref(4.0 + 1e-4, 0.7, 4.0))
    assert v == pytest.approx(avg, rel=1e-6)


def test_spectral_f_tail_decay_rate():
    # r^{2s(m+1)} F stays bounded and approaches k^{2sm} = 1
    p = KernelParams(s=0.7, k=4.0)
    for r in (1e2, 1e3):
        scaled = r ** 1.4 * kn.spectral_F(r, p)
        assert 0.5 <= scaled <= 1.1


def test_spectral_f_special_branch_extra_term():
    # special branch adds k^{2-2s}/(rho (rho + k)) on top of the
    # generic form taken at the same (s, m)
    s, k, rho, m = 0.25, 2.0, 5.0, 2
    gen = ((k / rho) ** (2 * s * m) / (rho ** (2 * s) - k ** (2 * s))
           - (k ** (2 - 2 * s) / s) / (rho * rho - k * k))
    spe = kn.spectral_F(rho, KernelParams(s=s, k=k))
    assert spe - gen == pytest.approx(k ** (2 - 2 * s) / (rho * (rho + k)),
                                      rel=1e-10)


def test_spectral_f_domain():
    p = KernelParams(s=0.3, k=1.0)
    with pytest.raises(ValueError):
        kn.spectral_F(-1.0, p)
    with pytest.raises(ValueError):
        kn.spectral_F(0.0, p)  # diverges for m >= 1
    with pytest.raises(ValueError):
        kn.spectral_F(1.0, KernelParams(s=0.3, k=1.0, d=3))


# ---------------------------------------------------------------------------
# oscillatory quadrature layout
# ---------------------------------------------------------------------------

def test_osc_quad_spec_frozen_values():
    p = KernelParams(s=0.7, k=4.0)
    q = kn.osc_quad_spec(p, 0.025, 5.0)
    assert q.cutoff == pytest.approx(QUAD_CUTOFF_07_H0025, rel=1e-12)
    assert q.n_nodes == QUAD_NODES_07_H0025_X5


def test_osc_quad_spec_halving_power_law():
    p = KernelParams(s=0.7, k=4.0)
    expo = 2.0 * 0.7 * 1 - 0.5
    c1 = kn.osc_quad_spec(p, 0.05, 5.0).cutoff
    c2 = kn.osc_quad_spec(p, 0.025, 5.0).cutoff
    assert c2 / c1 == pytest.approx(2.0 ** (2.0 / expo), rel=1e-12)


def test_osc_quad_spec_domain():
    p = KernelParams(s=0.7, k=4.0)
    with pytest.raises(ValueError):
        kn.osc_quad_spec(p, 0.0, 5.0)
    with pytest.raises(ValueError):
        kn.osc_quad_spec(p, 0.025, -1.0)


# ---------------------------------------------------------------------------
# correction kernel phi_delta
# ---------------------------------------------------------------------------

def test_phi_delta_2d_frozen_points():
    p = KernelParams(s=0.7, k=4.0)
    v = kn.phi_delta(1.0, p, _quad(p, _H_PROBE[0.7]))
    assert v == pytest.approx(PHI_DELTA_2D_07_K4_R1, rel=2e-3)

    p = KernelParams(s=0.5, k=2.0)
    v = kn.phi_delta(1.0, p, _quad(p, _H_PROBE[0.5]))
    assert v == pytest.approx(PHI_DELTA_2D_05_K2_R1, rel=1e-9)

    # m = 2 case: trapezoid floor is coarser at the affordable cutoff
    p = KernelParams(s=0.2, k=5.0)
    v = kn.phi_delta(0.5, p, _quad(p, _H_PROBE[0.2]))
    assert v == pytest.approx(PHI_DELTA_2D_02_K5_R05, rel=5e-2)


def test_phi_delta_is_structurally_real():
    p = KernelParams(s=0.7, k=4.0)
    v = kn.phi_delta(1.0, p, _quad(p, 0.05))
    assert isinstance(v, float)
    batch = kn.phi_delta_batch(np.array([0.5, 1.0]), p, _quad(p, 0.05))
    assert batch.dtype == np.float64


def test_phi_delta_batch_preserves_shape():
    p = KernelParams(s=0.7, k=4.0)
    radii = np.array([[0.5, 1.0], [2.0, 3.0]])
    out = kn.phi_delta_batch(radii, p, _quad(p, 0.05))
    assert out.shape == radii.shape
    assert out[0, 1] == pytest.approx(
        kn.phi_delta(1.0, p, _quad(p, 0.05)), rel=1e-12)


def test_phi_delta_degenerates_as_s_to_one():
    p = KernelParams(s=0.999, k=4.0)
    assert abs(kn.phi_delta(1.0, p, _quad(p, 0.025))) <= 1e-2


def test_phi_delta_vanishes_at_s_equal_one():
    p = KernelParams(s=1.0, k=4.0)
    assert kn.phi_delta(1.0, p, _quad(p, 0.05)) == 0.0


def test_phi_delta_domain():
    p = KernelParams(s=0.7, k=4.0)
    with pytest.raises(ValueError):
        kn.phi_delta(0.0, p, _quad(p, 0.05))
    with pytest.raises(ValueError):
        kn.phi_delta(-1.0, p, _quad(p, 0.05))
    with pytest.raises(ValueError):
        kn.phi_delta(1.0, p)  # d=2 needs a quadrature layout
    with pytest.raises(ValueError):
        kn.phi_delta_batch(np.array([1.0, -0.5]), p, _quad(p, 0.05))


def test_phi_delta_node_on_singularity_is_shifted():
    # hand-built layout whose uniform nodes would hit rho = k exactly;
    # the half-step shift must keep the evaluation finite
    p = KernelParams(s=0.7, k=1.0)
    v = kn.phi_delta(1.0, p, OscQuadSpec(cutoff=2.0, n_nodes=2))
    assert math.isfinite(v)


def test_phi_delta_1d_frozen_point():
    # s=1/2 collapses the density to (1/pi) e^{-2y} y/(y^2+1)
    p = KernelParams(s=0.5, k=2.0, d=1)
    v = kn.phi_delta(1.0, p)
    assert v == pytest.approx(PHI_DELTA_1D_05_K2_R1, rel=1e-8)
    assert v == pytest.approx(phi_delta_1d_ref(1.0, 0.5, 2.0), rel=1e-8)


def test_phi_delta_3d_frozen_points():
    v = kn.phi_delta(1.0, KernelParams(s=0.7, k=4.0, d=3))
    assert v == pytest.approx(PHI_DELTA_3D_07_K4_R1, rel=1e-8)
    w = kn.phi_delta(1.0, KernelParams(s=0.3, k=2.0, d=3))
    assert w == pytest.approx(PHI_DELTA_3D_03_K2_R1, rel=1e-8)
    assert w == pytest.approx(phi_delta_3d_ref(1.0, 0.3, 2.0), rel=1e-8)


# ---------------------------------------------------------------------------
# full kernel phi_full
# ---------------------------------------------------------------------------

def test_phi_full_degenerates_to_helmholtz():
    p = KernelParams(s=0.999, k=4.0)
    v = kn.phi_full(1.0, p, _quad(p, 0.025))
    assert abs(v - kn.helm_fundamental(2, 4.0, 1.0)) <= 1e-2


def test_phi_full_equals_helmholtz_at_s_one():
    p = KernelParams(s=1.0, k=4.0)
    v = kn.phi_full(1.0, p, _quad(p, 0.05))
    assert v == pytest.approx(kn.helm_fundamental(2, 4.0, 1.0), rel=1e-14)


def test_phi_full_imaginary_part_is_scaled_helmholtz():
    # the correction is real, so Im phi_full carries only the lead term
    p = KernelParams(s=0.7, k=4.0)
    v = kn.phi_full(1.0, p, _quad(p, 0.05))
    lead = 4.0 ** (2.0 - 1.4) / 0.7
    assert v.imag == lead * kn.helm_fundamental(2, 4.0, 1.0).imag


def test_phi_full_correction_decays_at_half_dimension_rate():
    # |phi_full - lead Phi_helm| = |phi_delta| must decay at least like
    # r^{-d/2}; oracle values at r = 20, 40 (actual decay is faster,
    # r^{-2-2s}, driven by the rho^{2s} edge of F at the origin)
    v20 = phi_delta_ref(20.0, 0.7, 4.0)
    v40 = phi_delta_ref(40.0, 0.7, 4.0)
    assert v20 == pytest.approx(PHI_DELTA_2D_07_K4_R20, rel=1e-6)
    assert v40 == pytest.approx(PHI_DELTA_2D_07_K4_R40, rel=1e-6)
    assert abs(v40) / abs(v20) <= 2.0 ** (-2 / 2.0)


# ---------------------------------------------------------------------------
# singular cell mass
# ---------------------------------------------------------------------------

def test_singular_cell_mass_frozen_decomposition():
    # s=0.7 (m=0, generic): only the Helmholtz log term and the
    # asymptotic spectral term contribute
    p = KernelParams(s=0.7, k=4.0)
    v = kn.singular_cell_mass(p, 0.025)
    assert v.imag == 0.0
    assert v.real == pytest.approx(
        HELM_LOG_TERM_07_K4_H0025 + SPECTRAL_TERM_07_K4_H0025, rel=1e-12)
    # the Helmholtz log term alone, via its closed form
    s, k, h = 0.7, 4.0, 0.025
    helm = -(k ** (2 - 2 * s) / s) * (h * h / 8 * math.log(k * h / 2)
                                      - h * h / 16)
    assert helm == pytest.approx(HELM_LOG_TERM_07_K4_H0025, abs=1e-6)


def test_spectral_term_against_pre_asymptotic_integral():
    # the pre-asymptotic cell mass int_0^inf J1(xi) F(2 xi/h) d xi also
    # carries the subleading -s^{-1} k^{2-2s}/(rho^2 - k^2) part of F,
    # whose Y0-type mass the closed form books under the Helmholtz term;
    # restoring it reconciles the two within 10% (the bare asymptotic
    # term alone is ~60% off at this h)
    s, k, h = 0.7, 4.0, 0.025
    p = KernelParams(s=s, k=k)
    mu = kn.mu_spectral_quadrature(p, h)
    assert mu == pytest.approx(MU_07_K4_H0025, rel=1e-3)
    assert mu == pytest.approx(mu_integral_ref(s, k, h), rel=1e-3)
    spectral = kn.singular_cell_mass(p, h).real - (
        -(k ** (2 - 2 * s) / s) * (h * h / 8 * math.log(k * h / 2)
                                   - h * h / 16))
    assert spectral == pytest.approx(SPECTRAL_TERM_07_K4_H0025, rel=1e-10)
    y0_mass = (k ** (2 - 2 * s) / s) * (
        h * h / 8 * (math.log(k * h / 4) + EULER_GAMMA) - h * h / 16)
    assert spectral + y0_mass == pytest.approx(mu, rel=0.1)


def test_power_term_simplifies_at_s_half():
    # pi c_{2,0} k^0 (h/2)^{2s}/s = h/2 at s = 1/2
    for h in (0.1, 0.025):
        term = (math.pi * kn.coeff_c(2, 0, 0.5) * (0.5 * h) ** 1.0 / 0.5)
        assert term == pytest.approx(0.5 * h, rel=1e-12)


def test_singular_cell_mass_pole_at_s_half():
    # s(m+1) = 1 puts Gamma(1 - s(m+1)) on a pole; the quadrature
    # fallback stays finite
    p = KernelParams(s=0.5, k=2.0)
    with pytest.raises(PoleError):
        kn.singular_cell_mass(p, 0.05)
    v = kn.singular_cell_mass(p, 0.05, spectral="quadrature")
    assert math.isfinite(v.real) and v.imag == 0.0


def test_singular_cell_mass_refined_shift():
    # refined=True restores the dropped Hankel constant:
    # delta = s^{-1} k^{2-2s} (i pi h^2/16 + h^2/8 (ln 2 - gamma))
    s, k, h = 0.7, 4.0, 0.05
    p = KernelParams(s=s, k=k)
    delta = (kn.singular_cell_mass(p, h, refined=True)
             - kn.singular_cell_mass(p, h))
    lead = k ** (2 - 2 * s) / s
    expect = lead * (1j * math.pi * h * h / 16
                     + h * h / 8 * (math.log(2.0) - EULER_GAMMA))
    assert delta == pytest.approx(expect, rel=1e-12)
    assert delta.imag > 0.0


def test_singular_cell_mass_domain():
    p = KernelParams(s=0.7, k=4.0)
    with pytest.raises(ValueError):
        kn.singular_cell_mass(p, 0.0)
    with pytest.raises(ValueError):
        kn.singular_cell_mass(p, 0.05, spectral="bogus")
    with pytest.raises(ValueError):
        kn.singular_cell_mass(KernelParams(s=0.7, k=4.0, d=3), 0.05)


def test_singular_cell_mass_vanishes_with_h():
    # every term carries a positive power of h
    for s in (0.7, 0.25):
        p = KernelParams(s=s, k=4.0)
        for h in (0.1, 0.05, 0.025):
            ratio = (abs(kn.singular_cell_mass(p, h / 2))
                     / abs(kn.singular_cell_mass(p, h)))
            assert ratio < 1.0


# ---------------------------------------------------------------------------
# module-level invariants
# ---------------------------------------------------------------------------

def test_l1_cell_sum_growth_in_k():
    # sum |phi_delta| h^2 over a fixed disc grid grows no faster than
    # C (1 + k^{2sm} + k^{-s} + k^{1-2s}) with C fitted at k=1
    h, s = 0.05, 0.7
    ax = np.arange(-1.0 + h / 2, 1.0, h)
    xx, yy = np.meshgrid(ax, ax)
    rr = np.hypot(xx, yy).ravel()
    rr = rr[rr <= 1.0]

    def cell_sum(k):
        p = KernelParams(s=s, k=k)
        return float(np.abs(kn.phi_delta_batch(rr, p, _quad(p, h))).sum()
                     * h * h)

    def bound(k):
        return 1.0 + k ** 0.0 + k ** (-s) + k ** (1 - 2 * s)

    c_fit = cell_sum(1.0) / bound(1.0)
    for k in (2.0, 4.0, 8.0):
        assert cell_sum(k) <= 1.05 * c_fit * bound(k)


def test_phi_delta_halving_consistency():
    # finer h (and the larger cutoff it implies) must not move the
    # values beyond the O(h^2) design error, and the move must shrink
    p = KernelParams(s=0.7, k=4.0)
    radii = np.geomspace(0.1, 5.0, 10)
    vals = {h: kn.phi_delta_batch(radii, p, _quad(p, h))
            for h in (0.05, 0.025, 0.0125)}
    d1 = np.abs(vals[0.05] - vals[0.025]).max()
    d2 = np.abs(vals[0.025] - vals[0.0125]).max()
    assert d1 <= 2.5e-2
    assert d2 <= 0.5 * d1
