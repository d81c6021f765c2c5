"""Command-line front end: ``legw verify|flow|energy|surfaces``.

Exit codes: 0 when every check passes (or the flow completes), 1 when a
check fails or the flow stops with :class:`StepRejected` or
:class:`DriftExceeded`, 2 for usage and configuration errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import flow as flowmod
from .errors import DriftExceeded, FormatError, LegwError, StepRejected
from .exemplars import SURFACES, sample_chart_points
from .invariants import (
    Check,
    chart_willmore_energy,
    check_lower,
    check_upper,
    gap_report,
    gauss_residual,
    mean_curvature_form_residuals,
    random_tangent_field,
    simons_report,
    skipped,
    willmore_energy,
    willmore_identity,
)
from .io import dumps_json, fmt, read_checkpoint, write_json
from .sasakian import random_tangent_samples, structure_checks
from .surface import (
    ImmersionGrid,
    frame_orthonormality,
    fundamental_data,
    h_derivatives,
    legendre_residual,
    point_jet,
)
from .variational import (
    area_variation_check,
    band_limited_function,
    contact_variation,
    cslw_residual,
    csl_residual,
    first_variation_check,
    gradient_check,
    key_identity_residual,
    mean_curvature,
    normal_laplacian_H,
    reeb_component_residual,
    willmore_operator,
)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
CHART_SAMPLES = 200
STRUCTURE_SAMPLES = 1000


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    """Validated command-line configuration."""

    command: str
    surface: str | None = None
    checkpoint: Path | None = None
    nu: int = 32
    nv: int = 32
    steps: int = 200
    dt: str = "auto"
    out: Path | None = None
    force: bool = False
    resume: bool = False
    checkpoint_every: int = 50
    tol_scale: float = 1.0
    seed: int = 0


# --------------------------------------------------------------------------
# argument handling
# --------------------------------------------------------------------------


def parse_grid(text):
    """``"NUxNV"`` with both sizes powers of two in [16, 256]."""
    try:
        a, b = text.lower().split("x")
        nu, nv = int(a), int(b)
    except ValueError:
        raise ConfigError(f"--grid expects NUxNV, got {text!r}") from None
    for n in (nu, nv):
        if n < 16 or n > 256 or n & (n - 1):
            raise ConfigError(f"grid sizes must be powers of two between 16 and 256, got {text}")
    return nu, nv


def build_parser():
    parser = argparse.ArgumentParser(prog="legw", description="Legendrian Willmore numerics in S^5.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, outputs=True):
        src = p.add_mutually_exclusive_group()
        src.add_argument("--surface", help="exemplar name (see 'legw surfaces')")
        src.add_argument("--checkpoint", type=Path, help="LEWGRID checkpoint file")
        p.add_argument("--grid", default="32x32", help="NUxNV, powers of two in [16, 256]")
        if outputs:
            p.add_argument("--out", type=Path, help="output directory")
            p.add_argument("--force", action="store_true", help="reuse a non-empty output directory")

    p = sub.add_parser("verify", help="run the identity and invariant suite")
    common(p)
    p.add_argument("--tol-scale", type=float, default=1.0, help="multiply every tolerance")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("flow", help="integrate the Legendrian Willmore flow")
    common(p)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--dt", default="auto", help="step size or 'auto'")
    p.add_argument("--checkpoint-every", type=int, default=50)
    p.add_argument("--resume", action="store_true", help="continue from the latest checkpoint in --out")

    p = sub.add_parser("energy", help="print W and related scalars")
    common(p, outputs=False)

    p = sub.add_parser("surfaces", help="list exemplar surfaces")
    p.add_argument("action", nargs="?", default="list", choices=["list"])
    return parser


def make_config(args):
    cfg = RunConfig(command=args.command)
    if args.command == "surfaces":
        return cfg
    cfg.surface = args.surface
    cfg.checkpoint = args.checkpoint
    cfg.nu, cfg.nv = parse_grid(args.grid)
    if cfg.surface is not None and cfg.surface not in SURFACES:
        raise ConfigError(f"unknown surface {cfg.surface!r}; choose from {', '.join(SURFACES)}")
    if cfg.checkpoint is not None and not cfg.checkpoint.is_file():
        raise ConfigError(f"checkpoint {cfg.checkpoint} not found")
    for name in ("out", "force", "tol_scale", "seed", "steps", "dt", "resume", "checkpoint_every"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if cfg.tol_scale <= 0:
        raise ConfigError("--tol-scale must be positive")
    if args.command == "flow":
        if cfg.steps < 0:
            raise ConfigError("--steps must be non-negative")
        if cfg.checkpoint_every < 0:
            raise ConfigError("--checkpoint-every must be non-negative")
        if cfg.dt != "auto":
            try:
                value = float(cfg.dt)
            except ValueError:
                raise ConfigError(f"--dt expects a number or 'auto', got {cfg.dt!r}") from None
            if not value > 0:
                raise ConfigError("--dt must be positive")
    if cfg.surface is None and cfg.checkpoint is None and not cfg.resume:
        cfg.surface = "flat_minimal_torus" if args.command != "flow" else "perturbed_torus"
    return cfg


def prepare_out_dir(path, force=False, resume=False):
    path = Path(path)
    if path.exists() and not path.is_dir():
        raise ConfigError(f"{path} exists and is not a directory")
    if resume:
        if not path.is_dir():
            raise ConfigError(f"--resume needs an existing run directory, {path} not found")
        return path
    if path.is_dir() and any(path.iterdir()) and not force:
        raise ConfigError(f"{path} is not empty; pass --force to overwrite or --resume to continue")
    path.mkdir(parents=True, exist_ok=True)
    return path


def load_surface(cfg):
    """``(label, surface, spec)``; ``spec`` is ``None`` for checkpoints."""
    if cfg.checkpoint is not None:
        try:
            grid, _ = read_checkpoint(cfg.checkpoint)
        except FormatError as exc:
            raise ConfigError(f"{cfg.checkpoint}: {exc}") from None
        return str(cfg.checkpoint), grid, None
    spec = SURFACES[cfg.surface]
    return spec.name, spec.build(cfg.nu, cfg.nv), spec


def chart_sample(immersion, n=CHART_SAMPLES, seed=0):
    u, v = sample_chart_points(immersion, n, seed=seed)
    return point_jet(immersion, u, v)


# --------------------------------------------------------------------------
# verification suite
# --------------------------------------------------------------------------

# names in report order; every run reports all of them
CHECK_NAMES = [
    "structure_reeb_derivative",
    "structure_j_derivative",
    "structure_j_isometry",
    "structure_algebraic",
    "structure_reeb_derivative_oriented",
    "structure_j_derivative_oriented",
    "legendre_residual",
    "frame_orthonormality",
    "reeb_orthogonality",
    "h_full_symmetry",
    "gauss_residual",
    "codazzi_residual",
    "reeb_transfer",
    "reeb_transfer_oriented",
    "splitting_residual",
    "parametrization_invariance",
    "mean_curvature_reeb_component",
    "normal_field_leakage",
    "willmore_route_discrepancy",
    "key_identity",
    "key_identity_oriented",
    "reeb_component",
    "reeb_component_oriented",
    "velocity_reeb_component",
    "rho2_nonnegative",
    "sigma_symmetry",
    "sigma_pointwise_inequality",
    "simons_slack",
    "simons_equality_case",
    "simons_equality_residual",
    "simons_divergence_integral",
    "simons_integrated_slack",
    "mean_curvature_form_closed",
    "mean_curvature_form_link",
    "broken_form_sensitivity",
    "willmore_energy",
    "known_S",
    "known_H",
    "known_K",
    "known_det_h_sum",
    "gap_integral",
    "willmore_identity",
    "gradient_oracle",
    "first_variation",
    "area_variation",
]


def _sup(x):
    return float(np.max(np.abs(np.asarray(x))))


def _info(name, value, note=""):
    return Check(name, float(value), None, "info", note)


def _structure(checks, tol, seed):
    p, x, y = random_tangent_samples(STRUCTURE_SAMPLES, rng=seed)
    rep = structure_checks(p, x, y)
    algebraic = max(rep.alpha_reeb, rep.j_reeb, rep.j_squared, rep.compatibility)
    checks += [
        check_upper("structure_reeb_derivative", rep.reeb_derivative, tol(1e-10)),
        check_upper("structure_j_derivative", rep.j_derivative, tol(1e-10)),
        check_upper("structure_j_isometry", rep.j_isometry, tol(1e-10)),
        check_upper("structure_algebraic", algebraic, tol(1e-10)),
        check_upper("structure_reeb_derivative_oriented", rep.reeb_derivative_oriented, tol(1e-10)),
        check_upper("structure_j_derivative_oriented", rep.j_derivative_oriented, tol(1e-10)),
    ]
    checks[-1].extra["dalpha_ratio"] = rep.dalpha_ratio


def verification_checks(surface, spec=None, tol_scale=1.0, seed=0):
    """Run the full suite on a grid or point jet; returns ``{name: Check}``."""

    def tol(t):
        return t * tol_scale

    is_grid = isinstance(surface, ImmersionGrid)
    known = dict(spec.known) if spec is not None else {}
    name = spec.name if spec is not None else None
    checks = []
    try:
        _structure(checks, tol, seed)
        geom = surface.geometry
        fd = fundamental_data(surface)
        hd = h_derivatives(surface)
        h = fd.h
        checks.append(check_upper("legendre_residual", legendre_residual(surface), tol(1e-8)))
        checks.append(check_upper("frame_orthonormality", frame_orthonormality(surface), tol(1e-10)))
        checks.append(check_upper("reeb_orthogonality", _sup(h[..., 2, :, :]), tol(1e-8)))
        hk = h[..., :2, :, :]
        checks.append(check_upper("h_full_symmetry", _sup(hk - np.swapaxes(hk, -3, -2)), tol(1e-8)))
        checks.append(check_upper("gauss_residual", _sup(gauss_residual(surface)), tol(1e-6)))
        checks.append(check_upper("codazzi_residual", hd.codazzi_residual, tol(1e-6)))
        checks.append(check_upper("reeb_transfer", hd.reeb_transfer_residual(h, sign=1.0), tol(1e-6)))
        checks.append(check_upper("reeb_transfer_oriented", hd.reeb_transfer_residual(h, sign=-1.0), tol(1e-6)))
        checks.append(check_upper("splitting_residual", _sup(hd.splitting_residual - fd.sqlen), tol(1e-5)))
        if is_grid:
            a, b = surface.nu // 4 + 1, surface.nv // 8 + 1
            moved = surface.shifted(a, b).geometry
            diffs = [
                np.roll(geom.S, (-a, -b), axis=(0, 1)) - moved.S,
                np.roll(geom.H2, (-a, -b), axis=(0, 1)) - moved.H2,
                np.roll(geom.K, (-a, -b), axis=(0, 1)) - moved.K,
            ]
            checks.append(check_upper("parametrization_invariance", max(_sup(d) for d in diffs), tol(1e-8)))
        else:
            checks.append(skipped("parametrization_invariance", tol(1e-8), "grid only"))

        H = mean_curvature(surface)
        lap = normal_laplacian_H(surface)
        W = willmore_operator(surface)
        checks.append(check_upper("mean_curvature_reeb_component", _sup(H.reeb_component), tol(1e-8)))
        checks.append(check_upper("normal_field_leakage", max(H.leakage, lap.leakage, W.leakage), tol(1e-8)))
        checks.append(check_upper("willmore_route_discrepancy", W.route_discrepancy, tol(1e-6)))
        checks.append(check_upper("key_identity", _sup(key_identity_residual(surface, 1.0)), tol(1e-4)))
        checks.append(check_upper("key_identity_oriented", _sup(key_identity_residual(surface, -1.0)), tol(1e-4)))
        checks.append(check_upper("reeb_component", _sup(reeb_component_residual(surface, 1.0)), tol(1e-4)))
        checks.append(check_upper("reeb_component_oriented", _sup(reeb_component_residual(surface, -1.0)), tol(1e-4)))
        sf = cslw_residual(surface)
        vel = contact_variation(surface, -np.asarray(sf) if is_grid else -geom.cslw)
        checks.append(check_upper("velocity_reeb_component", vel.reeb_residual, tol(1e-10)))

        gap = gap_report(surface)
        checks.append(check_lower("rho2_nonnegative", gap.rho2_min, -tol(1e-8)))
        ident = willmore_identity(surface) if is_grid else None
        if ident is not None:
            checks.append(check_upper("sigma_symmetry", ident.sigma_asymmetry, tol(1e-12)))
            checks.append(check_lower("sigma_pointwise_inequality", ident.pointwise_gap_min, -tol(1e-8)))
        else:
            st = geom.sigma_tilde
            asym = max(_sup(geom.value(st[i][j] - st[j][i])) for i in range(3) for j in range(3))
            pw = float(np.min(geom.value(geom.H2 * geom.rho2 - geom.sigma_HH)))
            checks.append(check_upper("sigma_symmetry", asym, tol(1e-12)))
            checks.append(check_lower("sigma_pointwise_inequality", pw, -tol(1e-8)))

        simons = simons_report(surface)
        checks.append(check_lower("simons_slack", float(np.min(simons.slack)), -tol(1e-4)))
        if name in ("flat_minimal_torus", "equatorial_sphere", "rotated_equatorial_sphere"):
            checks.append(check_upper("simons_equality_case", _sup(simons.slack), tol(1e-4)))
        else:
            checks.append(_info("simons_equality_case", _sup(simons.slack), "equality only on exemplars"))
        checks.append(check_upper("simons_equality_residual", _sup(simons.equality_residual), tol(1e-5)))
        if is_grid:
            checks.append(
                check_upper(
                    "simons_divergence_integral",
                    abs(simons.integrated_div_term),
                    tol(1e-6) * simons.area,
                )
            )
            checks.append(check_lower("simons_integrated_slack", simons.integrated_slack, -tol(1e-3)))
        else:
            checks.append(skipped("simons_divergence_integral", None, "grid only"))
            checks.append(skipped("simons_integrated_slack", -tol(1e-3), "grid only"))

        mcf = mean_curvature_form_residuals(surface)
        checks.append(check_upper("mean_curvature_form_closed", mcf.closedness, tol(1e-5)))
        checks.append(check_upper("mean_curvature_form_link", mcf.coclosedness_link, tol(1e-8)))
        if is_grid:
            broken = mean_curvature_form_residuals(surface, random_tangent_field(surface, seed=seed + 11))
            checks.append(check_lower("broken_form_sensitivity", broken.closedness, 0.01))
        else:
            checks.append(skipped("broken_form_sensitivity", 0.01, "grid only"))

        checks.append(_energy_check(surface, spec, known, tol))
        for key, label, t in (("S", "known_S", 1e-8), ("H", "known_H", 1e-8), ("K", "known_K", 1e-6)):
            if key in known:
                field = {"S": fd.sqlen, "H": np.sqrt(fd.H2), "K": fd.gauss}[key]
                checks.append(check_upper(label, _sup(field - known[key][0]), tol(t)))
            else:
                checks.append(skipped(label, tol(t), "no known value"))
        if "det_h1_plus_det_h2" in known:
            dev = _sup(fd.det_h_sum - known["det_h1_plus_det_h2"][0])
            checks.append(check_upper("known_det_h_sum", dev, tol(1e-6)))
        else:
            checks.append(skipped("known_det_h_sum", tol(1e-6), "no known value"))

        stationary = _sup(sf) <= 1e-6
        pinched = gap.s_min >= -1e-8 and gap.s_max <= 2 + 1e-8
        if gap.integrated_gap is None:
            checks.append(skipped("gap_integral", tol(1e-3), "grid only"))
        elif stationary and pinched:
            checks.append(check_upper("gap_integral", abs(gap.integrated_gap), tol(1e-3)))
        else:
            checks.append(_info("gap_integral", gap.integrated_gap, "not csL-Willmore with 0 <= S <= 2"))

        if ident is None:
            checks.append(skipped("willmore_identity", tol(1e-8), "grid only"))
        elif W.norm.max() <= 1e-6:
            checks.append(check_upper("willmore_identity", ident.residual, tol(1e-8)))
        else:
            checks.append(_info("willmore_identity", ident.residual, "surface is not Willmore"))

        if is_grid:
            checks.extend(_oracle_checks(surface, tol, seed))
        else:
            for label, t in (("gradient_oracle", 2e-2), ("first_variation", 2e-2), ("area_variation", 1e-4)):
                checks.append(skipped(label, tol(t), "grid only"))
    except LegwError as exc:
        checks.append(Check("error", float("nan"), None, "fail", f"{type(exc).__name__}: {exc}"))

    by_name = {c.name: c for c in checks}
    out = {n: by_name.get(n, skipped(n, None, "not reached")) for n in CHECK_NAMES}
    if "error" in by_name:
        out["error"] = by_name["error"]
    return out


def _energy_check(surface, spec, known, tol):
    if isinstance(surface, ImmersionGrid):
        value = willmore_energy(surface)
    elif spec is not None:
        value = chart_willmore_energy(spec.factory()).extrapolated
    else:
        return skipped("willmore_energy", tol(1e-6), "no immersion for chart quadrature")
    if "W" not in known:
        return _info("willmore_energy", value, "no known value; reported as W")
    target = known["W"][0]
    if target == 0:
        c = check_upper("willmore_energy", abs(value), tol(1e-8))
    else:
        c = check_upper("willmore_energy", abs(value - target) / abs(target), tol(1e-6))
    c.extra["W"] = value
    return c


ORACLE_TAUS = (4e-4, 2e-4, 1e-4, 1e-5)
CRITICAL_FLOOR = 1e-6


def _oracle(name, report, rtol):
    """Relative agreement, or both sides below the floor at a critical point."""
    fd, an = report.fd_final, report.analytic
    if abs(an) > CRITICAL_FLOOR:
        c = check_upper(name, abs(fd - an) / abs(an), rtol)
    else:
        c = check_upper(name, max(abs(fd), abs(an)), CRITICAL_FLOOR, "critical point: both sides small")
    c.extra.update(fd=fd, analytic=an, tau=report.taus[-1])
    if len(report.taus) > 2:
        c.extra["observed_order"] = report.observed_order
    return c


def _oracle_checks(grid, tol, seed):
    s = band_limited_function(grid, seed=seed)
    cv = contact_variation(grid, band_limited_function(grid, seed=seed + 1))
    return [
        _oracle("gradient_oracle", gradient_check(grid, s, tau=ORACLE_TAUS[-1]), tol(2e-2)),
        _oracle("first_variation", first_variation_check(grid, cv, taus=ORACLE_TAUS), tol(2e-2)),
        _oracle(
            "area_variation",
            area_variation_check(grid, band_limited_function(grid, seed=seed + 2), taus=ORACLE_TAUS),
            tol(1e-4),
        ),
    ]


def exit_code(checks):
    return EXIT_FAIL if any(c.status == "fail" for c in checks.values()) else EXIT_OK


def run_verify(cfg, stream=None):
    stream = stream or sys.stdout
    out_dir = prepare_out_dir(cfg.out or Path("legw-verify"), cfg.force)
    label, surface, spec = load_surface(cfg)
    if not isinstance(surface, ImmersionGrid):
        surface = chart_sample(surface, seed=cfg.seed)
    t0 = time.perf_counter()
    checks = verification_checks(surface, spec, cfg.tol_scale, cfg.seed)
    elapsed = time.perf_counter() - t0
    write_json(out_dir / "report.json", {n: c.as_dict() for n, c in checks.items()})
    width = max(len(n) for n in checks)
    print(f"surface {label}  ({elapsed:.2f} s)", file=stream)
    for n, c in checks.items():
        tol = "-" if c.tolerance is None else f"{c.tolerance:.1e}"
        value = "nan" if not np.isfinite(c.value) else f"{c.value:.6e}"
        print(f"  {n:<{width}}  {c.status:<7}  {value:>14}  tol {tol}", file=stream)
    code = exit_code(checks)
    failed = [n for n, c in checks.items() if c.status == "fail"]
    print(f"{len(failed)} failed" + (f": {', '.join(failed)}" if failed else ""), file=stream)
    print(f"report written to {out_dir / 'report.json'}", file=stream)
    return code


# --------------------------------------------------------------------------
# flow, energy, surfaces
# --------------------------------------------------------------------------


def _flow_controls(cfg):
    if cfg.dt == "auto":
        return flowmod.FlowControls(max_steps=cfg.steps, checkpoint_every=cfg.checkpoint_every)
    return flowmod.FlowControls(
        dt_mode="fixed", dt=float(cfg.dt), max_steps=cfg.steps, checkpoint_every=cfg.checkpoint_every
    )


def _summary(result, initial_W):
    hist = result.state.history
    total = sum(0.5 * (a.dissipation + b.dissipation) * b.dt for a, b in zip(hist, hist[1:]))
    return {
        "initial_W": initial_W,
        "final_W": result.state.W,
        "total_dissipation": total,
        "steps": result.state.step,
        "time": result.state.time,
        "final_legendre_drift": hist[-1].legendre_drift,
        "reason": result.reason,
        "error": None if result.error is None else str(result.error),
    }


def run_flow(cfg, stream=None):
    stream = stream or sys.stdout
    out_dir = prepare_out_dir(cfg.out or Path("legw-flow"), cfg.force, cfg.resume)
    controls = _flow_controls(cfg)
    if cfg.resume:
        try:
            state = flowmod.resume_state(out_dir, controls)
        except FileNotFoundError as exc:
            raise ConfigError(str(exc)) from None
        label = f"resume {out_dir}"
        initial_W = state.history[0].W
    else:
        label, surface, _ = load_surface(cfg)
        if not isinstance(surface, ImmersionGrid):
            raise ConfigError(f"{label} is a chart; the flow runs on periodic grids only")
        state = flowmod.initial_state(surface, controls=controls)
        initial_W = state.W
    print(f"flow {label}: {controls.max_steps} steps, dt {cfg.dt}", file=stream)
    code = EXIT_OK
    try:
        result = flowmod.run(state, controls, out_dir=out_dir)
    except (StepRejected, DriftExceeded) as exc:
        result = exc.result
        code = EXIT_FAIL
        print(f"{type(exc).__name__}: {exc}", file=stream)
    flowmod.write_checkpoint(out_dir / f"ckpt_{result.state.step}.lewgrid", result.state.grid, result.state.time)
    summary = _summary(result, initial_W)
    write_json(out_dir / "summary.json", summary)
    print(f"W {fmt(summary['initial_W'])} -> {fmt(summary['final_W'])} after {summary['steps']} steps", file=stream)
    print(f"stopped: {result.reason}; outputs in {out_dir}", file=stream)
    return code


def energy_values(surface):
    if isinstance(surface, ImmersionGrid):
        gap = gap_report(surface)
        return {
            "W": willmore_energy(surface),
            "area": surface.area(),
            "S_min": gap.s_min,
            "S_max": gap.s_max,
            "integrated_gap": gap.integrated_gap,
            "max_csl": _sup(csl_residual(surface)),
            "max_sf": _sup(cslw_residual(surface)),
            "dissipation": flowmod.dissipation(surface),
            "legendre_residual": legendre_residual(surface),
        }
    ce = chart_willmore_energy(surface)
    return {
        "W": ce.extrapolated,
        "band_margins": list(ce.margins),
        "band_values": list(ce.band_values),
    }


def run_energy(cfg, stream=None):
    stream = stream or sys.stdout
    label, surface, _ = load_surface(cfg)
    values = {"surface": label, **energy_values(surface)}
    stream.write(dumps_json(values))
    return EXIT_OK


def run_surfaces(cfg, stream=None):
    stream = stream or sys.stdout
    for spec in SURFACES.values():
        known = ", ".join(f"{k}={_short(v)} [{tag}]" for k, (v, tag) in spec.known.items()) or "-"
        params = ", ".join(f"{k}={v}" for k, v in spec.parameters.items())
        extra = f" ({params})" if params else ""
        print(f"{spec.name:<26} {spec.topology:<7} {spec.kind:<9} {known}{extra}", file=stream)
    return EXIT_OK


def _short(v):
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_short(x) for x in v) + "]"
    return fmt(v)


COMMANDS = {"verify": run_verify, "flow": run_flow, "energy": run_energy, "surfaces": run_surfaces}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        return COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"legw: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
