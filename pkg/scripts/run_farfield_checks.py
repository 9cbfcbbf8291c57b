"""Structural health checks of the far-field matrix.

Three properties tie the discrete pipeline to the continuous theory:

  unitarity    with F_op = (2 pi / N_inc) F and r = 2|c_d|^2 k^{d-2} /
               pi^{d-1} (= 1/(4 pi) at d = 2), the operator I + i r F_op
               is unitary in the continuum; the defect
               ||(I + i r F_op)^* (I + i r F_op) - I||_2 measures the
               total discretization error and decays under refinement.
  reciprocity  F(theta_i, theta_j) = F(-theta_j, -theta_i) holds to
               rounding for any medium (symmetric or not).
  asymptotics  the scattered field at |x| = R approaches
               c_d k^{(d-3)/2} e^{ikR} / (pi R)^{(d-1)/2} u_inf(x_hat)
               with an O(R^{-1/2}) remainder.

Usage: python run_farfield_checks.py --schedule 50,100,200
"""

import argparse

import numpy as np

from frachelm import direct, farfield
from frachelm.kernel import KernelParams, helm_far
from frachelm.medium import Disc, build_grid, make_medium


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s", type=float, default=0.7)
    ap.add_argument("--k", type=float, default=5.0)
    ap.add_argument("--x-max", type=float, default=2.0)
    ap.add_argument("--contrast", type=float, default=0.5)
    ap.add_argument("--schedule", default="50,100",
                    help="comma list of N_x refinements")
    ap.add_argument("--n-inc", type=int, default=72)
    ap.add_argument("--far-radius", type=float, default=40.0)
    args = ap.parse_args()

    params = KernelParams(s=args.s, k=args.k)
    angles = farfield.make_angles(args.n_inc)
    shapes = [Disc(center=(0.0, 0.0), radius=1.0, contrast=args.contrast)]

    print(f"s={args.s} k={args.k} contrast={args.contrast} "
          f"x_max={args.x_max} N_inc={args.n_inc}")
    print("N_x    h       unitarity   reciprocity   far-field dev")
    for n_x in (int(v) for v in args.schedule.split(",")):
        grid = build_grid(x_max=args.x_max, N_x=n_x)
        medium = make_medium(grid, shapes)
        ls = direct.assemble_ls(grid, medium, params)
        q = farfield.assemble_q(grid, medium, params, angles)
        fm = farfield.farfield_matrix(ls, q, angles, params)
        unit = farfield.check_unitarity(fm)
        recip = farfield.check_reciprocity(fm)

        # scattered field in 8 directions at the far radius, incidence 0
        inc = farfield.incident_traces(ls, angles)[:, 0]
        tot = direct.solve_total_field(
            ls, direct.FieldVector(values=inc, role="incident"))
        sel = np.arange(0, args.n_inc, max(1, args.n_inc // 8))
        pts = args.far_radius * angles.thetas[sel]
        u_near = direct.scattered_field(ls, tot, pts)
        pred = helm_far(params.d, params.k, args.far_radius) * fm.F[sel, 0]
        dev = float(np.max(np.abs(u_near - pred))
                    / np.max(np.abs(u_near)))
        print(f"{n_x:4d}  {grid.h:.4f}  {unit:10.4f}  {recip:.3e}"
              f"     {dev:.4f}")


if __name__ == "__main__":
    main()
