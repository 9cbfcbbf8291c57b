"""End-to-end acceptance checks, one test per criterion.

Each test exercises a full pipeline property at its stated tolerance and
prints the measured values so the `pytest -v` run doubles as an
acceptance report.  Criterion 7's Jaccard clause is asserted at its
stated threshold even though the exact far-field operator of that scene
does not reach it (see the indicator-profile discussion in
test_factorization and the radial-mode oracle): the test reports the
honestly measured value rather than a tuned configuration.
"""

import math
import time

import numpy as np
import pytest

from frachelm import direct as dr
from frachelm import factorization as fc
from frachelm import farfield as ff
from frachelm import medium as md
from frachelm import numerics
from frachelm.kernel import (KernelParams, helm_far, osc_quad_spec,
                             phi_delta_batch)

from _oracles import (born_matrix_ref, cramer_solve, phi_delta_ref,
                      power_iteration_sigma_max)

ROOT2_2 = 2.0 * math.sqrt(2.0)

# probe quadrature step per s: the oscillatory cutoff scales like
# h^{-2/(2s(m+1)-1/2)}, so smaller s (higher cutoff growth) tolerates a
# coarser h while s near the top of the range needs a finer one to meet
# the 1e-3 probe budget over the full radius decade
PROBE_H = {0.2: 0.016, 0.5: 0.05, 0.7: 0.006}


def _forward(s, k, n_x, x_max, shapes, n_inc):
    grid = md.build_grid(x_max, n_x, 2)
    medium = md.make_medium(grid, shapes)
    params = KernelParams(s=s, k=k, d=2)
    ls = dr.assemble_ls(grid, medium, params)
    angles = ff.make_angles(n_inc)
    q = ff.assemble_q(grid, medium, params, angles)
    fm = ff.farfield_matrix(ls, q, angles, params)
    return grid, medium, params, ls, angles, fm


@pytest.fixture(scope="module")
def unitarity_scene():
    """Contrast-0.5 unit disc at N_x = 100, shared by criteria 5 and 6."""
    return _forward(0.7, 5.0, 100, 2.0,
                    [md.Disc(center=(0.0, 0.0), radius=1.0,
                             contrast=0.5)], 72)


def test_criterion_1_kernel_realness_and_oracle_agreement():
    """Phi^Delta is structurally real and matches the adaptive-quadrature
    oracle to sup-relative 1e-3 over 200 radii per (s, k) pair."""
    radii = np.geomspace(0.05, 10.0, 200)
    t0 = time.time()
    worst = 0.0
    for s in (0.2, 0.5, 0.7):
        for k in (2.0, 5.0):
            params = KernelParams(s=s, k=k, d=2)
            quad = osc_quad_spec(params, PROBE_H[s], 10.0 / ROOT2_2)
            vals = phi_delta_batch(radii, params, quad)
            # realness is structural: the batch is a real array
            assert not np.iscomplexobj(vals)
            ref = np.array([phi_delta_ref(float(r), s, k) for r in radii])
            dev = np.abs(vals - ref).max() / np.abs(ref).max()
            print(f"[C1] s={s} k={k}: sup-rel dev {dev:.2e}")
            worst = max(worst, dev)
            assert dev <= 1e-3
    elapsed = time.time() - t0
    print(f"[C1] worst {worst:.2e} (limit 1e-3), {elapsed:.0f}s -> PASS")
    assert elapsed < 120.0


def test_criterion_2_degeneration_toward_classical():
    """At s = 0.999 the correction kernel is uniformly small on
    r in [0.1, 10], consistent with the vanishing spectral density."""
    radii = np.geomspace(0.1, 10.0, 200)
    sup = 0.0
    for k in (2.0, 5.0):
        params = KernelParams(s=0.999, k=k, d=2)
        quad = osc_quad_spec(params, 0.05, 10.0 / ROOT2_2)
        vals = phi_delta_batch(radii, params, quad)
        sup = max(sup, float(np.abs(vals).max()))
    print(f"[C2] sup |Phi^Delta| = {sup:.2e} (limit 1e-2) -> "
          f"{'PASS' if sup <= 1e-2 else 'FAIL'}")
    assert sup <= 1e-2


def test_criterion_3_manufactured_solution_convergence():
    """Gaussian manufactured solution at s=0.7, k=4, x_max=5: both error
    norms strictly decrease over N_x in {50, 100, 200} and the finest
    L_inf error is below half the coarsest."""
    params = KernelParams(s=0.7, k=4.0, d=2)
    l2s, linfs = [], []
    for n_x in (50, 100, 200):
        grid = md.build_grid(5.0, n_x, 2)
        l2, linf = dr.validate_direct("gaussian", params, grid)
        l2s.append(l2)
        linfs.append(linf)
        print(f"[C3] N_x={n_x}: L2 {l2:.6f}  Linf {linf:.6f}")
    ok = (l2s[0] > l2s[1] > l2s[2] and linfs[0] > linfs[1] > linfs[2]
          and linfs[2] < 0.5 * linfs[0])
    print(f"[C3] strictly decreasing, Linf ratio "
          f"{linfs[2] / linfs[0]:.3f} (limit 0.5) -> "
          f"{'PASS' if ok else 'FAIL'}")
    assert l2s[0] > l2s[1] > l2s[2]
    assert linfs[0] > linfs[1] > linfs[2]
    assert linfs[2] < 0.5 * linfs[0]


def test_criterion_4_farfield_asymptotic_consistency():
    """The far-field matrix prediction u_s ~ c_d k^{-1/2} e^{ikr} /
    sqrt(r) * F reproduces the scattered field at |x| = 40 within the
    O(|x|^{-1/2}) remainder budget of 15%."""
    grid, medium, params, ls, angles, fm = _forward(
        0.7, 5.0, 100, 5.0,
        [md.Disc(center=(0.0, 0.0), radius=1.0, contrast=1.0)], 8)
    inc = ff.incident_traces(ls, angles)[:, 0]
    u = dr.solve_total_field(ls, dr.FieldVector(values=inc,
                                                role="incident"))
    worst = 0.0
    for i in range(8):
        x = 40.0 * angles.thetas[i]
        u_s = dr.scattered_field(ls, u, [x])[0]
        pred = helm_far(2, params.k, 40.0) * fm.F[i, 0]
        worst = max(worst, abs(u_s - pred) / abs(pred))
    print(f"[C4] max rel deviation at |x|=40: {worst:.4f} "
          f"(limit 0.15) -> {'PASS' if worst <= 0.15 else 'FAIL'}")
    assert worst <= 0.15


def test_criterion_5_unitarity_defect(unitarity_scene):
    """With F_op = (2pi/N_inc) F and r = 1/(4pi), the scattering-matrix
    defect is below 0.1 at N_x = 100 and decreases at N_x = 200."""
    *_, fm100 = unitarity_scene
    d100 = ff.check_unitarity(fm100)
    *_, fm200 = _forward(0.7, 5.0, 200, 2.0,
                         [md.Disc(center=(0.0, 0.0), radius=1.0,
                                  contrast=0.5)], 72)
    d200 = ff.check_unitarity(fm200)
    ok = d100 < 0.1 and d200 < d100
    print(f"[C5] defect {d100:.4f} (N_x=100, limit 0.1) -> "
          f"{d200:.4f} (N_x=200) -> {'PASS' if ok else 'FAIL'}")
    assert d100 < 0.1
    assert d200 < d100


def test_criterion_6_reciprocity(unitarity_scene):
    """Full-solve far-field matrix of a symmetric scene satisfies
    max-entry reciprocity defect <= 1e-6 of the max entry."""
    *_, fm = unitarity_scene
    defect = ff.check_reciprocity(fm)
    print(f"[C6] reciprocity defect {defect:.2e} (limit 1e-6) -> "
          f"{'PASS' if defect <= 1e-6 else 'FAIL'}")
    assert defect <= 1e-6


def test_criterion_7_reconstruction_quality():
    """Contrast-1 unit disc at k=5, s=0.7, N_inc=72, N_x=100, noise 0:
    thresholding the indicator at 0.5 max against the true disc, plus
    separation of two well-separated discs into two components.

    The exact operator of this scene yields Jaccard 0.24 (radial-mode
    oracle; the indicator dips inside the disc at contrast >= 1), so the
    Jaccard clause fails honestly at the converged value ~0.26: passing
    configurations exist only through coarse-grid discretization error.
    """
    # clause 2: two well-separated discs -> two components
    _, medium2, _, _, angles2, fm2 = _forward(
        0.7, 5.0, 100, 2.5,
        [md.Disc(center=(-1.3, 0.0), radius=0.6, contrast=1.0),
         md.Disc(center=(1.3, 0.0), radius=0.6, contrast=1.0)], 72)
    svd2 = fc.svd_factor(fm2)
    floor2 = fc.resolve_floor(svd2, "auto", 0.0)
    sample2 = md.build_grid(2.5, 25, 2)
    mask = fc.indicator_map(svd2, angles2, 5.0, sample2, floor2) \
        .normalized().reshape(25, 25) >= 0.5
    comps = fc.connected_components(mask)
    print(f"[C7] two-disc components: {comps} (want 2) -> "
          f"{'PASS' if comps == 2 else 'FAIL'}")

    # clause 1: single-disc Jaccard at the 0.5 max threshold
    grid, medium, params, ls, angles, fm = _forward(
        0.7, 5.0, 100, 2.0,
        [md.Disc(center=(0.0, 0.0), radius=1.0, contrast=1.0)], 72)
    svd = fc.svd_factor(fm)
    floor = fc.resolve_floor(svd, "auto", 0.0)
    sample = md.build_grid(2.0, 25, 2)
    imap = fc.indicator_map(svd, angles, 5.0, sample, floor)
    jac, area = fc.threshold_metrics(imap, medium, 0.5)
    print(f"[C7] jaccard {jac:.4f} (limit 0.5), area ratio {area:.4f} "
          f"-> {'PASS' if jac >= 0.5 else 'FAIL'}")

    assert comps == 2
    assert jac >= 0.5


def test_criterion_8_born_regime_oracle():
    """At contrast 1e-3 the far-field matrix matches the midpoint-summed
    Born integral to 1% in Frobenius norm."""
    grid, medium, params, ls, angles, fm = _forward(
        0.7, 2.0, 50, 2.0,
        [md.Disc(center=(0.0, 0.0), radius=1.0, contrast=1e-3)], 16)
    born = born_matrix_ref(angles.thetas, ls.coords, ls.contrast,
                           grid.h, params.k, params.s)
    dev = np.linalg.norm(fm.F - born) / np.linalg.norm(born)
    print(f"[C8] Born Frobenius deviation {dev:.2e} (limit 1e-2) -> "
          f"{'PASS' if dev <= 1e-2 else 'FAIL'}")
    assert dev <= 1e-2


def test_criterion_9_linear_algebra_substrate():
    """Fresh random-matrix checks of the SVD/LU layer at the tolerances
    of its module tests."""
    rng = np.random.default_rng(2024)
    a = rng.standard_normal((24, 24)) + 1j * rng.standard_normal((24, 24))
    t = numerics.svd(a)
    assert np.linalg.norm(t.U @ np.diag(t.S) @ t.V.T - a, 2) \
        <= 1e-10 * t.S[0]
    assert np.linalg.norm(t.U.conj().T @ t.U - np.eye(24), 2) <= 1e-10
    assert np.linalg.norm(t.V.conj().T @ t.V - np.eye(24), 2) <= 1e-10
    assert t.S[0] == pytest.approx(power_iteration_sigma_max(a),
                                   rel=1e-10)

    b = rng.standard_normal((24, 3)) + 1j * rng.standard_normal((24, 3))
    x = numerics.lu_solve(numerics.lu_factor(a), b)
    assert np.linalg.norm(a @ x - b) <= 1e-10 * np.linalg.norm(b)

    small = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rhs = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    np.testing.assert_allclose(
        numerics.lu_solve(numerics.lu_factor(small), rhs),
        cramer_solve(small, rhs), rtol=1e-10)
    print("[C9] SVD/LU substrate oracles -> PASS")
