"""Command line front end.

Subcommands
    kernel-probe     dump the fundamental-solution split over a
                     log-spaced radius grid
    validate-direct  manufactured-solution error tables over a mesh
                     refinement schedule
    forward          far-field matrix of a configured scene
    reconstruct      factorization-method indicator map from a forward
                     run or a far-field CSV

Every command reads a flat key=value config file (see frachelm.config),
writes plot-ready CSV plus a JSON manifest with the fully resolved
configuration, and is deterministic: identical invocations produce
byte-identical files.  Exit codes: 0 success, 2 configuration error,
3 numerical failure (scattering pole, SVD breakdown), 4 I/O failure.

BLAS parallelism is bounded by --threads (default: all cores); the
FRACHELM_THREADS environment variable overrides the flag.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings

import numpy as np

from . import __version__, direct, factorization, farfield
from .config import RunConfig, load_config, resolved_dict
from .errors import (ConfigError, IOFailure, NumericalError,
                     ScatteringPoleWarning)
from .kernel import (KernelParams, helm_fundamental_array, osc_quad_spec,
                     phi_delta_batch)
from .medium import build_grid, decimate_grid, make_medium

ROOT2_2 = 2.0 * np.sqrt(2.0)


# ---------------------------------------------------------------------------
# formatting helpers: shortest round-trip decimals, complex as two columns

def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write_csv(path, header, rows) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc}") from None


def _write_json(path, payload) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc}") from None


def _outdir(config: RunConfig, override) -> str:
    path = override if override is not None else config.output_dir
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as exc:
        raise IOFailure(f"cannot create output dir {path}: {exc}") from None
    return path


def _s_tag(config: RunConfig, s: float) -> str:
    return f"_s{s:g}" if len(config.s_values) > 1 else ""


def _write_manifest(outdir, command, config: RunConfig) -> None:
    _write_json(os.path.join(outdir, "manifest.json"), {
        "command": command,
        "config": resolved_dict(config),
        "version": __version__,
    })


# ---------------------------------------------------------------------------
# thread budget

def _resolve_threads(flag) -> int:
    env = os.environ.get("FRACHELM_THREADS")
    if env is not None:
        try:
            n = int(env)
        except ValueError:
            raise ConfigError(
                f"FRACHELM_THREADS={env!r} is not an integer") from None
    elif flag is not None:
        n = flag
    else:
        n = os.cpu_count() or 1
    if n < 1:
        raise ConfigError(f"thread count {n} must be >= 1")
    return n


def _limit_threads(n: int):
    try:
        from threadpoolctl import threadpool_limits
    except ImportError:  # pragma: no cover - dependency is declared
        os.environ.setdefault("OMP_NUM_THREADS", str(n))
        return None
    return threadpool_limits(limits=n)


# ---------------------------------------------------------------------------
# kernel-probe

def cmd_kernel_probe(config: RunConfig, outdir: str, r_min: float,
                     r_max: float, n_r: int) -> None:
    if r_min <= 0 or r_max <= r_min:
        raise ConfigError("need 0 < r-min < r-max")
    if n_r < 2:
        raise ConfigError("need at least 2 radii")
    radii = np.geomspace(r_min, r_max, n_r)
    h = 2.0 * config.x_max / config.N_x
    for s in config.s_values:
        params = KernelParams(s=s, k=config.k, d=config.d)
        quad = osc_quad_spec(params, h, r_max / ROOT2_2)
        helm = helm_fundamental_array(params.d, params.k, radii)
        delta = phi_delta_batch(radii, params, quad)
        lead = params.k ** (2.0 - 2.0 * params.s) / params.s
        full = lead * helm + delta
        rows = [(r, hv.real, hv.imag, dv.real, dv.imag, fv.real, fv.imag)
                for r, hv, dv, fv in zip(radii, helm, delta, full)]
        _write_csv(
            os.path.join(outdir, f"kernel_probe{_s_tag(config, s)}.csv"),
            ["r", "re_phi_helm", "im_phi_helm", "re_phi_delta",
             "im_phi_delta", "re_phi_full", "im_phi_full"], rows)
    _write_manifest(outdir, "kernel-probe", config)


# ---------------------------------------------------------------------------
# validate-direct

def cmd_validate_direct(config: RunConfig, outdir: str, schedule,
                        out_of_theory: bool) -> None:
    if config.d != 2:
        raise ConfigError("validate-direct supports d = 2 only")
    tests = [("gaussian", None), ("algebraic", 2.0)]
    if out_of_theory:
        tests.append(("algebraic", 0.5))
    for s in config.s_values:
        params = KernelParams(s=s, k=config.k, d=config.d)
        for kind, alpha in tests:
            rows = []
            for n_x in schedule:
                grid = build_grid(x_max=config.x_max, N_x=n_x,
                                  d=config.d)
                if kind == "gaussian":
                    l2, linf = direct.validate_direct(kind, params, grid)
                else:
                    l2, linf = direct.validate_direct(
                        kind, params, grid, alpha=alpha,
                        out_of_theory=(alpha <= 1.0))
                rows.append((n_x, grid.h, l2, linf))
            tag = "gaussian" if kind == "gaussian" else f"algebraic_a{alpha:g}"
            _write_csv(
                os.path.join(
                    outdir,
                    f"validate_{tag}{_s_tag(config, s)}.csv"),
                ["N_x", "h", "err_L2", "err_Linf"], rows)
    _write_manifest(outdir, "validate-direct", config)


# ---------------------------------------------------------------------------
# forward

def _forward_matrix(config: RunConfig, s: float):
    params = KernelParams(s=s, k=config.k, d=config.d)
    grid = build_grid(x_max=config.x_max, N_x=config.N_x, d=config.d)
    medium = make_medium(grid, list(config.shapes))
    angles = farfield.make_angles(config.N_inc)
    with warnings.catch_warnings():
        # the library warns near scattering poles; the CLI promotes
        # this to a hard numerical failure (exit 3)
        warnings.simplefilter("error", ScatteringPoleWarning)
        try:
            ls = direct.assemble_ls(grid, medium, params)
            q = farfield.assemble_q(grid, medium, params, angles)
            fm = farfield.farfield_matrix(ls, q, angles, params)
        except ScatteringPoleWarning as exc:
            raise NumericalError(str(exc)) from None
    return grid, medium, angles, fm


def _defects(fm) -> dict:
    defects = {"unitarity": float(farfield.check_unitarity(fm))}
    if fm.angles.N_inc % 2 == 0:
        defects["reciprocity"] = float(farfield.check_reciprocity(fm))
    else:
        defects["reciprocity"] = None
    return defects


def _write_farfield(outdir, tag, config: RunConfig, s, angles, fm) -> None:
    avals = farfield.angle_values(angles)
    rows = []
    for i in range(angles.N_inc):
        for j in range(angles.N_inc):
            rows.append((i, j, avals[i], avals[j],
                         fm.F[i, j].real, fm.F[i, j].imag))
    _write_csv(os.path.join(outdir, f"farfield{tag}.csv"),
               ["i", "j", "theta_i", "theta_j", "re_F", "im_F"], rows)
    _write_json(os.path.join(outdir, f"farfield{tag}.json"), {
        "s": s, "k": config.k, "N_x": config.N_x, "x_max": config.x_max,
        "N_inc": config.N_inc, "noise": config.noise,
        "defects": _defects(fm),
    })


def _write_medium(outdir, grid, medium) -> None:
    coords = grid.centers
    rows = [(coords[i, 0], coords[i, 1], medium.n[i])
            for i in range(coords.shape[0])]
    _write_csv(os.path.join(outdir, "medium.csv"), ["x", "y", "n"], rows)


def cmd_forward(config: RunConfig, outdir: str) -> None:
    if config.d != 2:
        raise ConfigError("forward supports d = 2 only")
    rng = np.random.default_rng(config.seed)
    for s in config.s_values:
        grid, medium, angles, fm = _forward_matrix(config, s)
        if config.noise > 0.0:
            fm = farfield.apply_noise(fm, config.noise, rng)
        tag = _s_tag(config, s)
        _write_farfield(outdir, tag, config, s, angles, fm)
    _write_medium(outdir, grid, medium)
    _write_manifest(outdir, "forward", config)


# ---------------------------------------------------------------------------
# reconstruct

def _read_farfield_csv(path, n_inc: int) -> np.ndarray:
    try:
        raw = np.loadtxt(path, delimiter=",", skiprows=1)
    except OSError as exc:
        raise IOFailure(f"cannot read far-field file {path}: {exc}") \
            from None
    except ValueError as exc:
        raise ConfigError(f"malformed far-field file {path}: {exc}") \
            from None
    raw = np.atleast_2d(raw)
    if raw.shape[0] != n_inc * n_inc or raw.shape[1] != 6:
        raise ConfigError(
            f"far-field file {path} is not an N_inc^2 x 6 table for "
            f"N_inc = {n_inc}")
    f = np.zeros((n_inc, n_inc), dtype=complex)
    i = raw[:, 0].astype(int)
    j = raw[:, 1].astype(int)
    f[i, j] = raw[:, 4] + 1j * raw[:, 5]
    return f


def _check_sidecar(path, config: RunConfig) -> None:
    sidecar = os.path.splitext(path)[0] + ".json"
    try:
        with open(sidecar, "r", encoding="utf-8") as fh:
            meta = json.load(fh)
    except OSError as exc:
        raise IOFailure(
            f"far-field sidecar {sidecar} is required to validate the "
            f"request: {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"malformed sidecar {sidecar}: {exc}") from None
    for key, want in (("k", config.k), ("N_inc", config.N_inc)):
        have = meta.get(key)
        if have != want:
            raise ConfigError(
                f"far-field file {key} = {have} disagrees with the "
                f"requested {key} = {want}")


def cmd_reconstruct(config: RunConfig, outdir: str, farfield_path,
                    fraction: float) -> None:
    if config.d != 2:
        raise ConfigError("reconstruct supports d = 2 only")
    if not 0.0 < fraction < 1.0:
        raise ConfigError(f"fraction = {fraction} outside (0, 1)")
    rng = np.random.default_rng(config.seed)
    angles = farfield.make_angles(config.N_inc)
    grid = build_grid(x_max=config.x_max, N_x=config.N_x, d=config.d)
    sample = decimate_grid(grid, factor=4)
    medium = make_medium(grid, list(config.shapes)) if config.shapes \
        else None

    if farfield_path is not None and len(config.s_values) != 1:
        raise ConfigError(
            "reconstruct from a far-field file takes exactly one s value")

    for s in config.s_values:
        params = KernelParams(s=s, k=config.k, d=config.d)
        if farfield_path is not None:
            _check_sidecar(farfield_path, config)
            f = _read_farfield_csv(farfield_path, config.N_inc)
            fm = farfield.FarFieldMatrix(F=f, angles=angles,
                                         params=params)
        else:
            _, _, _, fm = _forward_matrix(config, s)
            if config.noise > 0.0:
                fm = farfield.apply_noise(fm, config.noise, rng)
        svd = factorization.svd_factor(fm)
        floor = factorization.resolve_floor(svd, config.floor_policy,
                                            config.noise)
        imap = factorization.indicator_map(svd, angles, config.k,
                                           sample, floor)
        tag = _s_tag(config, s)
        coords = sample.centers
        norm = imap.normalization if imap.normalization > 0 else 1.0
        rows = [(coords[i, 0], coords[i, 1], imap.W[i], imap.W[i] / norm)
                for i in range(coords.shape[0])]
        _write_csv(os.path.join(outdir, f"indicator{tag}.csv"),
                   ["x", "y", "W", "W_normalized"], rows)
        summary = {
            "jaccard": None,
            "area_ratio": None,
            "parameters": {
                "s": s, "k": config.k, "N_x": config.N_x,
                "x_max": config.x_max, "N_inc": config.N_inc,
                "noise": config.noise,
                "floor_policy": config.floor_policy,
                "floor": float(floor), "fraction": fraction,
            },
        }
        if medium is not None and medium.support.size:
            jaccard, area_ratio = factorization.threshold_metrics(
                imap, medium, fraction)
            summary["jaccard"] = jaccard
            summary["area_ratio"] = area_ratio
        _write_json(os.path.join(outdir, f"reconstruct{tag}.json"),
                    summary)
    _write_manifest(outdir, "reconstruct", config)


# ---------------------------------------------------------------------------
# argument surface

def _parse_schedule(text: str):
    try:
        values = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(
            f"schedule {text!r} is not a comma list of integers") from None
    if not values or any(v < 2 for v in values):
        raise ConfigError(f"schedule {text!r} needs integers >= 2")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frachelm",
        description="Fractional s-Helmholtz scattering toolbox")
    parser.add_argument("--version", action="version",
                        version=f"frachelm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True,
                       help="flat key=value run configuration file")
        p.add_argument("--output-dir", default=None,
                       help="override the config output_dir")
        p.add_argument("--threads", type=int, default=None,
                       help="BLAS thread budget (default: all cores; "
                            "FRACHELM_THREADS overrides)")

    p = sub.add_parser("kernel-probe",
                       help="dump Phi_helm / Phi_delta / Phi_full tables")
    common(p)
    p.add_argument("--r-min", type=float, default=0.05)
    p.add_argument("--r-max", type=float, default=10.0)
    p.add_argument("--n-r", type=int, default=200,
                   help="number of log-spaced radii")

    p = sub.add_parser("validate-direct",
                       help="manufactured-solution convergence tables")
    common(p)
    p.add_argument("--schedule", default="50,100,200",
                   help="comma list of N_x refinements")
    p.add_argument("--out-of-theory", action="store_true",
                   help="also run the algebraic test at alpha = 0.5, "
                        "outside the convergence theory")

    p = sub.add_parser("forward", help="compute the far-field matrix")
    common(p)

    p = sub.add_parser("reconstruct",
                       help="factorization-method indicator map")
    common(p)
    p.add_argument("--farfield", default=None,
                   help="reuse an existing far-field CSV (sidecar JSON "
                        "required) instead of running forward")
    p.add_argument("--fraction", type=float, default=0.5,
                   help="threshold fraction of max W for the metrics")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = load_config(args.config)
    outdir = _outdir(config, args.output_dir)
    limiter = _limit_threads(_resolve_threads(args.threads))
    try:
        if args.command == "kernel-probe":
            cmd_kernel_probe(config, outdir, args.r_min, args.r_max,
                             args.n_r)
        elif args.command == "validate-direct":
            cmd_validate_direct(config, outdir,
                                _parse_schedule(args.schedule),
                                args.out_of_theory)
        elif args.command == "forward":
            cmd_forward(config, outdir)
        else:
            cmd_reconstruct(config, outdir, args.farfield, args.fraction)
    finally:
        if limiter is not None:
            limiter.unregister()
    return 0


def main(argv=None) -> int:
    try:
        return run(argv)
    except (ConfigError, ValueError) as exc:
        print(f"frachelm: configuration error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"frachelm: numerical failure: {exc}", file=sys.stderr)
        return 3
    except (IOFailure, OSError) as exc:
        print(f"frachelm: I/O failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
