"""Empirical planar densities and certified density bounds.

The upper/lower densities of a point set Z are the limits over growing
disk radius r of the best/worst-case count ratio n(Z, B(zeta, r)) / (pi r^2)
over all centers zeta.  Neither limit is computable from finite data, so
this module sweeps zeta over a sampled region, evaluates the ratio on an
increasing ladder of radii, and extrapolates r -> infinity with an affine
model in 1/r (the finite-r error is a boundary term of order perimeter /
area = O(1/r)).

The certified bounds need no sweep at all: a set with pairwise separation
sigma has upper density at most 2/(sqrt(3) sigma^2), and a set whose
sigma-disks cover the plane has lower density at least
2/(3 sqrt(3) sigma^2).  These follow from the extremal hexagonal packing
density pi/sqrt(12) and covering density 2 pi/(3 sqrt(3)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ComputationError
from .geometry import GridSpec, PointSet, Region, is_covering, min_separation

__all__ = [
    "HEX_PACKING_DENSITY",
    "HEX_COVERING_DENSITY",
    "DensityProfile",
    "DensityEstimate",
    "PackingConfig",
    "default_radii",
    "density_profile",
    "estimate_upper_density",
    "estimate_lower_density",
    "packing_density",
    "covering_density",
    "separation_density_bound",
    "covering_density_bound",
]

#: maximal area fraction of any packing by equal disks (hexagonal optimum)
HEX_PACKING_DENSITY = math.pi / math.sqrt(12.0)
#: minimal total-area ratio of any covering by equal disks (hexagonal optimum)
HEX_COVERING_DENSITY = 2.0 * math.pi / (3.0 * math.sqrt(3.0))

DEFAULT_RADII_MULTIPLES = (10.0, 15.0, 20.0, 30.0, 40.0)


def default_radii(spacing: float) -> list[float]:
    """Default radius ladder {10, 15, 20, 30, 40} x spacing."""
    if not (math.isfinite(spacing) and spacing > 0):
        raise ValueError("spacing must be positive")
    return [m * spacing for m in DEFAULT_RADII_MULTIPLES]


@dataclass(frozen=True)
class DensityProfile:
    """Count ratios n(Z, B(zeta, r)) / (pi r^2) over a zeta sweep.

    For each radius, sup_ratio/inf_ratio are the max/min over the sampled
    zeta grid; they are exact with respect to that sample set.
    """

    radii: tuple[float, ...]
    sup_ratio: tuple[float, ...]
    inf_ratio: tuple[float, ...]
    zeta_sweep: dict

    def __post_init__(self):
        r = np.asarray(self.radii)
        if len(r) == 0 or not np.all(np.diff(r) > 0):
            raise ValueError("radii must be strictly increasing")
        for lo, hi in zip(self.inf_ratio, self.sup_ratio):
            if not (0.0 <= lo <= hi):
                raise ValueError("ratios must satisfy 0 <= inf <= sup")

    def to_dict(self) -> dict:
        return {
            "radii": list(self.radii),
            "sup_ratio": list(self.sup_ratio),
            "inf_ratio": list(self.inf_ratio),
            "zeta_sweep": dict(self.zeta_sweep),
        }


@dataclass(frozen=True)
class DensityEstimate:
    """Extrapolated density with the raw large-radius value and fit misfit."""

    value: float
    raw_at_rmax: float
    fit_residual: float
    kind: str  # "upper" | "lower"

    def __post_init__(self):
        if self.kind not in ("upper", "lower"):
            raise ValueError("kind must be 'upper' or 'lower'")
        if self.value < 0 or self.fit_residual < 0:
            raise ValueError("value and fit_residual must be nonnegative")

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "raw_at_rmax": self.raw_at_rmax,
            "fit_residual": self.fit_residual,
            "kind": self.kind,
        }


@dataclass(frozen=True)
class PackingConfig:
    """Equal circles of radius r0 centered at a point set."""

    centers: PointSet
    r0: float

    def __post_init__(self):
        if not (math.isfinite(self.r0) and self.r0 > 0):
            raise ValueError("r0 must be positive")


def _validate_radii(radii) -> np.ndarray:
    r = np.asarray([float(v) for v in radii], dtype=float)
    if len(r) == 0:
        raise ValueError("radii must be nonempty")
    if not (np.all(np.isfinite(r)) and np.all(r > 0) and np.all(np.diff(r) > 0)):
        raise ValueError("radii must be positive, finite, and strictly increasing")
    return r


def _window_bounds(ps: PointSet, window: Region | None) -> tuple[float, float, float, float]:
    if window is not None:
        return (window.xmin, window.xmax, window.ymin, window.ymax)
    return ps.bounds()


def _check_padding(ps: PointSet, zeta_region: Region, reach: float,
                   window: Region | None) -> None:
    """Every disk B(zeta, reach) must stay inside the populated window.

    Unpadded windows bias counts downward, which is the dominant silent
    error; callers must supply data generated on a window padded by the
    largest radius (plus r0 where disks, not points, are counted).
    """
    xmin, xmax, ymin, ymax = _window_bounds(ps, window)
    tol = 1e-9 * max(1.0, reach)
    if (zeta_region.xmin - reach < xmin - tol or zeta_region.xmax + reach > xmax + tol
            or zeta_region.ymin - reach < ymin - tol or zeta_region.ymax + reach > ymax + tol):
        raise ValueError(
            f"window too small for r_max: need data on "
            f"[{zeta_region.xmin - reach:.6g}, {zeta_region.xmax + reach:.6g}] x "
            f"[{zeta_region.ymin - reach:.6g}, {zeta_region.ymax + reach:.6g}], "
            f"have [{xmin:.6g}, {xmax:.6g}] x [{ymin:.6g}, {ymax:.6g}]")


def _disk_counts(xy: np.ndarray, zetas: np.ndarray, thresholds: np.ndarray,
                 closed: bool) -> np.ndarray:
    """counts[i, j] = points within thresholds[j] of zetas[i] (strict or closed)."""
    counts = np.zeros((len(zetas), len(thresholds)), dtype=np.int64)
    if len(xy) == 0:
        return counts
    t2 = np.square(thresholds)
    chunk = max(1, 4_000_000 // len(xy))
    for start in range(0, len(zetas), chunk):
        block = zetas[start:start + chunk]
        d2 = ((block[:, None, :] - xy[None, :, :]) ** 2).sum(axis=-1)
        for j, t in enumerate(t2):
            hits = (d2 <= t) if closed else (d2 < t)
            counts[start:start + chunk, j] = hits.sum(axis=1)
    return counts


def _sweep_description(zeta_region: Region, zeta_grid: GridSpec, count: int) -> dict:
    return {
        "xmin": zeta_region.xmin, "xmax": zeta_region.xmax,
        "ymin": zeta_region.ymin, "ymax": zeta_region.ymax,
        "step": zeta_grid.step, "count": count,
    }


def density_profile(ps: PointSet, radii, zeta_region: Region, zeta_grid: GridSpec,
                    window: Region | None = None) -> DensityProfile:
    """Sweep zeta over a sampled grid and record count ratios per radius.

    ``window`` declares the region on which the data is authoritative
    (defaults to the point set's bounding box); the sweep is rejected when
    any disk B(zeta, r_max) would leave it.
    """
    r = _validate_radii(radii)
    _check_padding(ps, zeta_region, float(r[-1]), window)
    zetas = zeta_grid.samples(zeta_region)
    counts = _disk_counts(ps.xy, zetas, r, closed=False)
    ratios = counts / (math.pi * np.square(r))[None, :]
    return DensityProfile(
        radii=tuple(float(v) for v in r),
        sup_ratio=tuple(float(v) for v in ratios.max(axis=0)),
        inf_ratio=tuple(float(v) for v in ratios.min(axis=0)),
        zeta_sweep=_sweep_description(zeta_region, zeta_grid, len(zetas)),
    )


def _fit_affine_in_inverse_radius(radii, values) -> tuple[float, float, float]:
    """Least-squares fit values(r) ~ c + d/r; returns (c, d, rms misfit)."""
    r = np.asarray(radii, dtype=float)
    y = np.asarray(values, dtype=float)
    design = np.column_stack([np.ones_like(r), 1.0 / r])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    rms = float(np.sqrt(np.mean((design @ coef - y) ** 2)))
    return float(coef[0]), float(coef[1]), rms


def _extrapolate(radii, values, kind: str) -> DensityEstimate:
    if len(radii) < 3:
        raise ValueError("need at least 3 radii to extrapolate")
    c, _, rms = _fit_affine_in_inverse_radius(radii, values)
    return DensityEstimate(value=max(c, 0.0), raw_at_rmax=float(values[-1]),
                           fit_residual=rms, kind=kind)


def estimate_upper_density(profile: DensityProfile) -> DensityEstimate:
    """Extrapolated limit of the sup ratios (models the O(1/r) boundary term)."""
    return _extrapolate(profile.radii, profile.sup_ratio, "upper")


def estimate_lower_density(profile: DensityProfile) -> DensityEstimate:
    """Extrapolated limit of the inf ratios."""
    return _extrapolate(profile.radii, profile.inf_ratio, "lower")


def packing_density(cfg: PackingConfig, radii, zeta_region: Region,
                    zeta_grid: GridSpec, window: Region | None = None) -> DensityEstimate:
    """Asymptotic covered-area fraction of a packing by equal circles.

    For each (zeta, r) sums pi r0^2 over circles meeting B(zeta, r), i.e.
    centers with |z - zeta| < r + r0, normalizes by pi r^2, takes the sup
    over zeta, and extrapolates in r.  Hexagonal centers at spacing 2 r0
    attain the maximal value pi/sqrt(12).
    """
    r = _validate_radii(radii)
    r0 = cfg.r0
    # tangency (separation exactly 2 r0, e.g. the extremal hexagonal packing)
    # is a valid packing; the slack absorbs rounding in the measured minimum
    if len(cfg.centers) >= 2 and min_separation(cfg.centers) < 2.0 * r0 * (1.0 - 1e-9):
        raise ComputationError("not a packing: circles overlap")
    _check_padding(cfg.centers, zeta_region, float(r[-1]) + r0, window)
    zetas = zeta_grid.samples(zeta_region)
    counts = _disk_counts(cfg.centers.xy, zetas, r + r0, closed=False)
    ratios = counts * (r0 * r0) / np.square(r)[None, :]
    sup = ratios.max(axis=0)
    return _extrapolate(r, sup, "upper")


def covering_density(cfg: PackingConfig, radii, zeta_region: Region,
                     zeta_grid: GridSpec, window: Region | None = None,
                     cover_grid: GridSpec | None = None) -> DensityEstimate:
    """Asymptotic total-area ratio of a covering by equal circles.

    Counts circles contained in B(zeta, r), i.e. centers with
    |z - zeta| <= r - r0, takes the inf over zeta, and extrapolates.  The
    configuration must cover the working window (zeta region padded by the
    largest radius); a sampled point strictly farther than r0 from every
    center is a witness that it does not.  Hexagonal centers with r0 equal
    to the covering radius attain the minimal value 2 pi/(3 sqrt(3)).
    """
    r = _validate_radii(radii)
    r0 = cfg.r0
    if float(r[0]) <= r0:
        raise ValueError("all radii must exceed r0 for containment counting")
    _check_padding(cfg.centers, zeta_region, float(r[-1]), window)
    working = zeta_region.expand(float(r[-1]))
    scan = is_covering(cfg.centers, r0, working, cover_grid or zeta_grid)
    if not scan.covered and scan.covering_radius > r0 * (1.0 + 1e-12):
        w = scan.witness
        raise ComputationError(
            f"not a covering: point ({w.x:.6g}, {w.y:.6g}) lies at distance "
            f"{scan.covering_radius:.6g} > r0 = {r0:.6g} from every center")
    zetas = zeta_grid.samples(zeta_region)
    counts = _disk_counts(cfg.centers.xy, zetas, r - r0, closed=True)
    ratios = counts * (r0 * r0) / np.square(r)[None, :]
    inf = ratios.min(axis=0)
    return _extrapolate(r, inf, "lower")


def separation_density_bound(sigma: float) -> float:
    """Certified upper density bound 2/(sqrt(3) sigma^2) for sigma-separated sets.

    A sigma-separated set carries a packing by circles of radius sigma/2,
    whose area fraction cannot exceed pi/sqrt(12); dividing out the circle
    area gives the point-density bound.  Sharp for hexagonal lattices.
    """
    if not (math.isfinite(sigma) and sigma > 0):
        raise ValueError("sigma must be positive")
    return 2.0 / (math.sqrt(3.0) * sigma * sigma)


def covering_density_bound(sigma: float) -> float:
    """Certified lower density bound 2/(3 sqrt(3) sigma^2) for sigma-coverings.

    If disks of radius sigma centered at the set cover the plane, the
    covering's total-area ratio is at least 2 pi/(3 sqrt(3)); dividing out
    the disk area bounds the point density from below.  Sharp for
    hexagonal lattices with sigma equal to the covering radius.
    """
    if not (math.isfinite(sigma) and sigma > 0):
        raise ValueError("sigma must be positive")
    return 2.0 / (3.0 * math.sqrt(3.0) * sigma * sigma)
