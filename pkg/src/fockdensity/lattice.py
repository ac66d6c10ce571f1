"""Hexagonal and square lattice generators plus seeded random perturbation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ComputationError
from .geometry import Point, PointSet, Region

__all__ = ["HEXAGONAL", "SQUARE", "LatticeSpec", "generate", "hexagonal_patch", "perturb"]

HEXAGONAL = "hexagonal"
SQUARE = "square"


@dataclass(frozen=True)
class LatticeSpec:
    """Lattice parameterized by nearest-neighbor spacing.

    kind: "hexagonal" (each interior point has 6 neighbors at distance
    ``spacing``) or "square".  The whole lattice is rotated by ``rotation``
    radians about the origin and then translated by ``offset``.
    """

    kind: str
    spacing: float
    offset: Point = Point(0.0, 0.0)
    rotation: float = 0.0

    def __post_init__(self):
        if self.kind not in (HEXAGONAL, SQUARE):
            raise ValueError(f"unknown lattice kind {self.kind!r}")
        if not (math.isfinite(self.spacing) and self.spacing > 0):
            raise ValueError("spacing must be positive")
        if not math.isfinite(self.rotation):
            raise ValueError("rotation must be finite")

    def basis(self) -> np.ndarray:
        """2x2 matrix whose columns are the generating vectors."""
        if self.kind == HEXAGONAL:
            raw = np.array([[1.0, 0.5], [0.0, math.sqrt(3.0) / 2.0]])
        else:
            raw = np.array([[1.0, 0.0], [0.0, 1.0]])
        if self.rotation:
            c, s = math.cos(self.rotation), math.sin(self.rotation)
            raw = np.array([[c, -s], [s, c]]) @ raw
        return self.spacing * raw

    def cell_area(self) -> float:
        return abs(float(np.linalg.det(self.basis())))

    def point_density(self) -> float:
        """Points per unit area: 2/(sqrt(3) s^2) hexagonal, 1/s^2 square."""
        return 1.0 / self.cell_area()


def generate(spec: LatticeSpec, region: Region) -> PointSet:
    """All lattice points a*v1 + b*v2 + offset inside the closed region.

    A region too small to contain any point yields an empty set.
    """
    basis = spec.basis()
    inv = np.linalg.inv(basis)
    corners = np.array([
        [region.xmin, region.ymin],
        [region.xmin, region.ymax],
        [region.xmax, region.ymin],
        [region.xmax, region.ymax],
    ]) - np.array([spec.offset.x, spec.offset.y])
    ab = corners @ inv.T
    # pad the integer ranges so no boundary point is clipped
    a_lo, b_lo = np.floor(ab.min(axis=0)).astype(int) - 2
    a_hi, b_hi = np.ceil(ab.max(axis=0)).astype(int) + 2
    aa, bb = np.meshgrid(np.arange(a_lo, a_hi + 1), np.arange(b_lo, b_hi + 1),
                         indexing="ij")
    coeffs = np.column_stack([aa.ravel(), bb.ravel()]).astype(float)
    pts = coeffs @ basis.T + np.array([spec.offset.x, spec.offset.y])
    pts = pts[region.mask_inside(pts)]
    return PointSet(pts, cell_size=spec.spacing if len(pts) else None)


def hexagonal_patch(spacing: float, rings: int, center: Point = Point(0.0, 0.0)) -> PointSet:
    """Hexagon-shaped patch of a hexagonal lattice.

    Contains the center point and every lattice point within ``rings``
    lattice steps of it: 1 + 3*rings*(rings + 1) points total (61 for
    rings=4).
    """
    if rings < 0:
        raise ValueError("rings must be nonnegative")
    basis = LatticeSpec(HEXAGONAL, spacing).basis()
    coeffs = [(a, b)
              for a in range(-rings, rings + 1)
              for b in range(-rings, rings + 1)
              if max(abs(a), abs(b), abs(a + b)) <= rings]
    pts = np.asarray(coeffs, dtype=float) @ basis.T + np.array([center.x, center.y])
    return PointSet(pts, cell_size=spacing)


def perturb(ps: PointSet, magnitude: float, seed: int) -> PointSet:
    """Displace each point by an independent uniform vector in a disk.

    Deterministic for a fixed seed.  If a displacement collides two points,
    retries with a derived sub-seed, giving up after 100 attempts.
    """
    if not (math.isfinite(magnitude) and magnitude >= 0):
        raise ValueError("magnitude must be nonnegative")
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool) or seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    if magnitude == 0 or len(ps) == 0:
        return PointSet(ps.xy, cell_size=ps.cell_size)
    n = len(ps)
    for attempt in range(100):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=int(seed),
                                                           spawn_key=(attempt,)))
        theta = rng.uniform(0.0, 2.0 * math.pi, n)
        radius = magnitude * np.sqrt(rng.uniform(0.0, 1.0, n))
        moved = ps.xy + np.column_stack([radius * np.cos(theta),
                                         radius * np.sin(theta)])
        try:
            return PointSet(moved)
        except ValueError:
            continue
    raise ComputationError("perturbation kept producing duplicate points after 100 attempts")
