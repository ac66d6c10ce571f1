"""Command-line surface: reproducible experiments with JSON reports.

Every command prints a JSON report to stdout (or writes its data file and
prints the report) embedding the fully resolved configuration, so a run
can be reproduced bit-identically from its own report.  Exit codes:
0 success, 2 validation error (bad flags, unreadable or malformed input),
3 computational error (not a packing, not a covering, overflow,
ill-posed solve).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .certify import (
    FockParams,
    VERDICT_INTERPOLATING,
    certify_interpolating_by_separation,
    certify_sampling_by_covering,
    classify_by_density,
    covering_sampling_threshold,
    critical_density,
    improved_interpolation_threshold,
    tung_threshold,
)
from .density import (
    PackingConfig,
    covering_density,
    default_radii,
    density_profile,
    estimate_lower_density,
    estimate_upper_density,
    packing_density,
)
from .errors import ComputationError
from .fock import (
    conditioning_sweep,
    eig_extremes,
    gershgorin_riesz_lower_bound,
    gram,
    interpolate,
    sweep_to_csv,
)
from .geometry import (
    GridSpec,
    PointSet,
    Region,
    format_points_csv,
    format_points_json,
    is_covering,
    load_point_set,
    min_separation,
    parse_points_csv,
    parse_points_json,
    save_point_set,
)
from .lattice import HEXAGONAL, SQUARE, LatticeSpec, Point, generate, perturb


def _csv_floats(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip()]


def _json_value(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _report(command: str, config: dict, result: dict) -> dict:
    return {
        "command": command,
        "version": __version__,
        "config": {k: _json_value(v) for k, v in config.items()},
        "result": result,
    }


def _load_input(path: str) -> PointSet:
    if path == "-":
        text = sys.stdin.read()
        if text.lstrip().startswith("["):
            return parse_points_json(text)
        return parse_points_csv(text)
    return load_point_set(path)


def _params(args) -> FockParams:
    return FockParams(alpha=args.alpha, p=args.p)


def _density_setup(ps: PointSet, window_side, zeta_window, zeta_step, pad,
                   radii_arg, reach_extra: float = 0.0):
    """Resolve window/zeta-region/grid/radii defaults for density commands."""
    sigma = min_separation(ps)
    if window_side is not None:
        window = Region.centered_square(window_side)
        xmin, xmax, ymin, ymax = window.xmin, window.xmax, window.ymin, window.ymax
    else:
        window = None
        xmin, xmax, ymin, ymax = ps.bounds()
    center = ((xmin + xmax) / 2.0, (ymin + ymax) / 2.0)
    if zeta_window is not None:
        zeta_side = zeta_window
    elif pad is not None:
        zeta_side = min(xmax - xmin, ymax - ymin) - 2.0 * pad
        if zeta_side <= 0:
            raise ValueError("pad leaves no zeta region inside the window")
    else:
        zeta_side = 4.0 * sigma
    zeta_region = Region.centered_square(zeta_side, center)
    grid = GridSpec(zeta_step if zeta_step is not None else sigma / 4.0)
    if radii_arg:
        radii = sorted(radii_arg)
    else:
        allowed = min(zeta_region.xmin - xmin, xmax - zeta_region.xmax,
                      zeta_region.ymin - ymin, ymax - zeta_region.ymax) - reach_extra
        radii = [r for r in default_radii(sigma) if r <= allowed]
        if len(radii) < 3:
            if allowed <= 0:
                raise ValueError("window too small for r_max: no usable radii")
            radii = [allowed * m / 40.0 for m in (10.0, 15.0, 20.0, 30.0, 40.0)]
    return sigma, window, zeta_region, grid, radii


def _sweep_config(zeta_region: Region, grid: GridSpec, radii) -> dict:
    return {
        "zeta_xmin": zeta_region.xmin, "zeta_xmax": zeta_region.xmax,
        "zeta_ymin": zeta_region.ymin, "zeta_ymax": zeta_region.ymax,
        "zeta_step": grid.step, "radii": list(radii),
    }


# ---------------------------------------------------------------------------
# command handlers (each returns the text to print on stdout)


def cmd_thresholds(args) -> str:
    params = _params(args)
    result = {
        "tung": tung_threshold(params),
        "improved": improved_interpolation_threshold(params),
        "covering": covering_sampling_threshold(params),
        "critical": critical_density(params),
    }
    return _dumps(_report("thresholds", {"alpha": args.alpha, "p": args.p}, result))


def cmd_lattice(args) -> str:
    kind = HEXAGONAL if args.kind == "hex" else SQUARE
    spec = LatticeSpec(kind=kind, spacing=args.spacing,
                       offset=Point(args.offset_x, args.offset_y),
                       rotation=args.rotation)
    side = args.window + 2.0 * args.pad
    region = Region.centered_square(side)
    ps = generate(spec, region)
    if args.perturb > 0:
        ps = perturb(ps, args.perturb, args.seed)
    config = {
        "kind": args.kind, "spacing": args.spacing, "window": args.window,
        "pad": args.pad, "offset_x": args.offset_x, "offset_y": args.offset_y,
        "rotation": args.rotation, "perturb": args.perturb, "seed": args.seed,
        "output": args.output,
    }
    if args.output:
        save_point_set(ps, args.output)
        result = {
            "count": len(ps),
            "min_separation": min_separation(ps) if len(ps) >= 2 else None,
            "points_file": args.output,
        }
        return _dumps(_report("lattice", config, result))
    if args.format == "csv":
        return format_points_csv(ps)
    return format_points_json(ps)


def cmd_separation(args) -> str:
    ps = _load_input(args.input)
    result = {"count": len(ps), "min_separation": min_separation(ps)}
    return _dumps(_report("separation", {"input": args.input}, result))


def cmd_cover(args) -> str:
    ps = _load_input(args.input)
    region = Region.centered_square(args.window)
    step = args.grid_step if args.grid_step is not None else args.sigma / 4.0
    outcome = is_covering(ps, args.sigma, region, GridSpec(step))
    config = {"input": args.input, "sigma": args.sigma, "window": args.window,
              "grid_step": step}
    return _dumps(_report("cover", config, outcome.to_dict()))


def cmd_density(args) -> str:
    ps = _load_input(args.input)
    sigma, window, zeta_region, grid, radii = _density_setup(
        ps, args.window, args.zeta_window, args.zeta_step, args.pad, args.radii)
    profile = density_profile(ps, radii, zeta_region, grid, window=window)
    result = {
        "measured_separation": sigma,
        "profile": profile.to_dict(),
        "upper": estimate_upper_density(profile).to_dict(),
        "lower": estimate_lower_density(profile).to_dict(),
    }
    if args.alpha is not None:
        cert = classify_by_density(ps, _params(args), radii=radii,
                                   zeta_region=zeta_region, zeta_grid=grid,
                                   window=window)
        result["classification"] = cert.to_dict()
    config = {"input": args.input, "window": args.window, "pad": args.pad,
              "alpha": args.alpha, "p": args.p, **_sweep_config(zeta_region, grid, radii)}
    return _dumps(_report("density", config, result))


def cmd_packing(args) -> str:
    ps = _load_input(args.input)
    _, window, zeta_region, grid, radii = _density_setup(
        ps, args.window, args.zeta_window, args.zeta_step, args.pad, args.radii,
        reach_extra=args.r0)
    estimate = packing_density(PackingConfig(ps, args.r0), radii, zeta_region,
                               grid, window=window)
    config = {"input": args.input, "r0": args.r0, "window": args.window,
              "pad": args.pad, **_sweep_config(zeta_region, grid, radii)}
    return _dumps(_report("packing", config, {"estimate": estimate.to_dict()}))


def cmd_covering(args) -> str:
    ps = _load_input(args.input)
    _, window, zeta_region, grid, radii = _density_setup(
        ps, args.window, args.zeta_window, args.zeta_step, args.pad, args.radii)
    cover_grid = GridSpec(args.grid_step) if args.grid_step is not None else None
    estimate = covering_density(PackingConfig(ps, args.r0), radii, zeta_region,
                                grid, window=window, cover_grid=cover_grid)
    config = {"input": args.input, "r0": args.r0, "window": args.window,
              "pad": args.pad, "grid_step": args.grid_step,
              **_sweep_config(zeta_region, grid, radii)}
    return _dumps(_report("covering", config, {"estimate": estimate.to_dict()}))


def cmd_certify_interp(args) -> str:
    ps = _load_input(args.input)
    params = _params(args)
    cert = certify_interpolating_by_separation(ps, params)
    classic = tung_threshold(params)
    comparison = {
        "sigma": cert.sigma,
        "improved_threshold": improved_interpolation_threshold(params),
        "classic_threshold": classic,
        "critical_density": critical_density(params),
        "certified_by_improved": cert.verdict == VERDICT_INTERPOLATING,
        "certified_by_classic": cert.sigma > classic,
        "improvement_gap": (cert.verdict == VERDICT_INTERPOLATING
                            and not cert.sigma > classic),
    }
    config = {"input": args.input, "alpha": args.alpha, "p": args.p}
    result = {"certificate": cert.to_dict(), "comparison": comparison}
    return _dumps(_report("certify-interp", config, result))


def cmd_certify_sampling(args) -> str:
    ps = _load_input(args.input)
    region = Region.centered_square(args.window)
    step = args.grid_step if args.grid_step is not None else args.sigma / 4.0
    cert = certify_sampling_by_covering(ps, args.sigma, region, GridSpec(step),
                                        _params(args))
    config = {"input": args.input, "alpha": args.alpha, "p": args.p,
              "sigma": args.sigma, "window": args.window, "grid_step": step}
    return _dumps(_report("certify-sampling", config, {"certificate": cert.to_dict()}))


def cmd_fock_gram(args) -> str:
    ps = _load_input(args.input)
    g = gram(args.alpha, ps)
    lam_min, lam_max = eig_extremes(g)
    result = {
        "n": g.n,
        "gershgorin_lower_bound": gershgorin_riesz_lower_bound(g),
        "lambda_min": lam_min,
        "lambda_max": lam_max,
        "condition": lam_max / lam_min if lam_min > 0 else "inf",
    }
    config = {"input": args.input, "alpha": args.alpha}
    return _dumps(_report("fock-gram", config, result))


def _parse_targets(text: str) -> np.ndarray:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON targets: {exc}") from None
    if not isinstance(data, list):
        raise ValueError("targets must be a JSON array of numbers or [re, im] pairs")
    values = []
    for i, item in enumerate(data):
        if isinstance(item, (int, float)) and not isinstance(item, bool):
            values.append(complex(item))
        elif (isinstance(item, list) and len(item) == 2
              and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item)):
            values.append(complex(item[0], item[1]))
        else:
            raise ValueError(f"target {i}: expected a number or [re, im] pair")
    return np.asarray(values, dtype=complex)


def cmd_fock_interp(args) -> str:
    ps = _load_input(args.input)
    with open(args.targets) as fh:
        targets = _parse_targets(fh.read())
    solution = interpolate(args.alpha, ps, targets)
    config = {"input": args.input, "alpha": args.alpha, "targets": args.targets}
    return _dumps(_report("fock-interp", config, solution.to_dict()))


def cmd_fock_sweep(args) -> str:
    rows = conditioning_sweep(args.alpha, args.spacings, rings=args.rings)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(sweep_to_csv(rows))
    config = {"alpha": args.alpha, "spacings": list(args.spacings),
              "rings": args.rings, "output": args.output}
    return _dumps(_report("fock-sweep", config, {"rows": rows, "csv_file": args.output}))


# ---------------------------------------------------------------------------
# parser


def _add_input(p):
    p.add_argument("--input", required=True,
                   help="point-set file (CSV 'x,y' lines or JSON [[x,y],...]); '-' for stdin")


def _add_fock_params(p, alpha_required=True):
    p.add_argument("--alpha", type=float, required=alpha_required,
                   help="Gaussian weight parameter (> 0)")
    p.add_argument("--p", type=float, default=2.0,
                   help="exponent in (0, inf], metadata only (default 2)")


def _add_sweep_flags(p):
    p.add_argument("--radii", type=_csv_floats, default=None,
                   help="comma-separated radius ladder (default: ladder fitted to the window)")
    p.add_argument("--zeta-window", type=float, default=None,
                   help="side of the centered zeta-sweep square (default 4x measured separation)")
    p.add_argument("--zeta-step", type=float, default=None,
                   help="zeta sample spacing (default separation/4)")
    p.add_argument("--window", type=float, default=None,
                   help="side of the populated data window, centered at origin "
                        "(default: input bounding box)")
    p.add_argument("--pad", type=float, default=None,
                   help="margin between zeta region and window edge (default: max radius)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockdensity",
        description="Planar point-set densities, packing/covering bounds, and "
                    "interpolation/sampling certificates for Gaussian Fock spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("thresholds", help="print the four alpha-dependent thresholds")
    _add_fock_params(p)
    p.set_defaults(handler=cmd_thresholds)

    p = sub.add_parser("lattice", help="generate a lattice point set")
    p.add_argument("--kind", choices=["hex", "square"], required=True)
    p.add_argument("--spacing", type=float, required=True,
                   help="nearest-neighbor distance")
    p.add_argument("--window", type=float, required=True,
                   help="side of the centered generation window")
    p.add_argument("--pad", type=float, default=0.0,
                   help="extra margin added around the window (default 0)")
    p.add_argument("--offset-x", type=float, default=0.0)
    p.add_argument("--offset-y", type=float, default=0.0)
    p.add_argument("--rotation", type=float, default=0.0, help="radians")
    p.add_argument("--perturb", type=float, default=0.0,
                   help="uniform-in-disk displacement radius (default 0)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None,
                   help="points file to write (.csv or .json); report goes to stdout")
    p.add_argument("--format", choices=["json", "csv"], default="json",
                   help="stdout format when no --output is given")
    p.set_defaults(handler=cmd_lattice)

    p = sub.add_parser("separation", help="minimum pairwise distance")
    _add_input(p)
    p.set_defaults(handler=cmd_separation)

    p = sub.add_parser("cover", help="check covering by sigma-disks on a window")
    _add_input(p)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--window", type=float, required=True)
    p.add_argument("--grid-step", type=float, default=None,
                   help="scan resolution (default sigma/4)")
    p.set_defaults(handler=cmd_cover)

    p = sub.add_parser("density", help="empirical upper/lower density estimates")
    _add_input(p)
    _add_sweep_flags(p)
    p.add_argument("--alpha", type=float, default=None,
                   help="if given, also classify against the critical density")
    p.add_argument("--p", type=float, default=2.0)
    p.set_defaults(handler=cmd_density)

    p = sub.add_parser("packing", help="packing density of equal circles at the points")
    _add_input(p)
    p.add_argument("--r0", type=float, required=True, help="circle radius")
    _add_sweep_flags(p)
    p.set_defaults(handler=cmd_packing)

    p = sub.add_parser("covering", help="covering density of equal circles at the points")
    _add_input(p)
    p.add_argument("--r0", type=float, required=True, help="circle radius")
    _add_sweep_flags(p)
    p.add_argument("--grid-step", type=float, default=None,
                   help="coverage-scan resolution (default: zeta step)")
    p.set_defaults(handler=cmd_covering)

    p = sub.add_parser("certify-interp",
                       help="interpolation certificate from measured separation")
    _add_input(p)
    _add_fock_params(p)
    p.set_defaults(handler=cmd_certify_interp)

    p = sub.add_parser("certify-sampling",
                       help="sampling certificate from a verified covering")
    _add_input(p)
    _add_fock_params(p)
    p.add_argument("--sigma", type=float, required=True, help="covering disk radius")
    p.add_argument("--window", type=float, required=True,
                   help="side of the centered region on which covering is checked")
    p.add_argument("--grid-step", type=float, default=None,
                   help="scan resolution (default sigma/4)")
    p.set_defaults(handler=cmd_certify_sampling)

    p = sub.add_parser("fock-gram", help="Gram spectrum summary for a point set")
    _add_input(p)
    p.add_argument("--alpha", type=float, required=True)
    p.set_defaults(handler=cmd_fock_gram)

    p = sub.add_parser("fock-interp", help="solve the kernel interpolation problem")
    _add_input(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--targets", required=True,
                   help="JSON file: array of numbers or [re, im] pairs")
    p.set_defaults(handler=cmd_fock_interp)

    p = sub.add_parser("fock-sweep",
                       help="conditioning vs spacing on hexagonal patches")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--spacings", type=_csv_floats, required=True,
                   help="comma-separated spacings")
    p.add_argument("--rings", type=int, default=4,
                   help="patch size in lattice rings (default 4, 61 points)")
    p.add_argument("--output", default=None, help="CSV file to write")
    p.set_defaults(handler=cmd_fock_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
