"""Planar primitives: points, rectangles, disks, and grid-indexed point sets.

All distances are Euclidean.  Disks are open, B(c, r) = {p : |p - c| < r},
so boundary points never count as inside a disk.  Counting and separation
queries go through a uniform-grid spatial hash; indexed queries agree
exactly with the naive all-pairs scan.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "Point",
    "Region",
    "GridSpec",
    "Disk",
    "PointSet",
    "CoverageResult",
    "min_separation",
    "count_in_disk",
    "covering_radius",
    "is_covering",
    "parse_points_csv",
    "parse_points_json",
    "format_points_csv",
    "format_points_json",
    "load_point_set",
    "save_point_set",
]


@dataclass(frozen=True)
class Point:
    """A point in the plane with finite coordinates."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("point coordinates must be finite")

    def distance_to(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangle [xmin, xmax] x [ymin, ymax]."""

    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        for v in (self.xmin, self.xmax, self.ymin, self.ymax):
            if not math.isfinite(v):
                raise ValueError("region bounds must be finite")
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError("region requires xmin < xmax and ymin < ymax")

    @classmethod
    def centered_square(cls, side: float, center: tuple[float, float] = (0.0, 0.0)) -> "Region":
        if not (math.isfinite(side) and side > 0):
            raise ValueError("side must be positive")
        cx, cy = center
        h = side / 2.0
        return cls(cx - h, cx + h, cy - h, cy + h)

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    def expand(self, margin: float) -> "Region":
        return Region(self.xmin - margin, self.xmax + margin,
                      self.ymin - margin, self.ymax + margin)

    def contains_region(self, other: "Region", tol: float = 0.0) -> bool:
        return (self.xmin - tol <= other.xmin and other.xmax <= self.xmax + tol
                and self.ymin - tol <= other.ymin and other.ymax <= self.ymax + tol)

    def mask_inside(self, xy: np.ndarray) -> np.ndarray:
        """Boolean mask of rows of ``xy`` lying in the closed rectangle."""
        return ((xy[:, 0] >= self.xmin) & (xy[:, 0] <= self.xmax)
                & (xy[:, 1] >= self.ymin) & (xy[:, 1] <= self.ymax))


@dataclass(frozen=True)
class GridSpec:
    """Sample spacing for scans over a region."""

    step: float

    def __post_init__(self):
        if not (math.isfinite(self.step) and self.step > 0):
            raise ValueError("grid step must be positive and finite")

    def validate_for(self, region: Region) -> None:
        if self.step >= min(region.width, region.height) / 2.0:
            raise ValueError(
                "grid step must be smaller than half the region's shorter side")

    def samples(self, region: Region) -> np.ndarray:
        """Grid sample points over ``region``, shape (m, 2).

        Samples start at (xmin, ymin) and advance by ``step``; the far
        edges are included when they land on the grid.
        """
        self.validate_for(region)
        nx = int(math.floor(region.width / self.step + 1e-9)) + 1
        ny = int(math.floor(region.height / self.step + 1e-9)) + 1
        xs = region.xmin + self.step * np.arange(nx)
        ys = region.ymin + self.step * np.arange(ny)
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        return np.column_stack([gx.ravel(), gy.ravel()])


@dataclass(frozen=True)
class Disk:
    """Open disk with positive radius."""

    center: Point
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValueError("disk radius must be positive")


class PointSet:
    """Finite set of pairwise-distinct planar points with a grid index.

    The index maps integer cells (i, j) to the points p satisfying
    floor((p - origin) / cell_size) == (i, j).  The cell side defaults to
    the estimated typical spacing sqrt(bounding-box area / n); the index
    is an optimization only and never changes any query result.
    """

    def __init__(self, points, cell_size: float | None = None):
        xy = np.asarray(points, dtype=float)
        if xy.size == 0:
            xy = np.empty((0, 2))
        if xy.ndim == 1 and xy.shape == (2,):
            xy = xy[None, :]
        if xy.ndim != 2 or xy.shape[1] != 2:
            raise ValueError("points must have shape (n, 2)")
        if not np.all(np.isfinite(xy)):
            raise ValueError("points must be finite (no NaN or Inf)")
        n = len(xy)
        if n and len({(float(p[0]), float(p[1])) for p in xy}) != n:
            raise ValueError("points must be pairwise distinct")
        self._xy = np.ascontiguousarray(xy)
        self._xy.setflags(write=False)
        if cell_size is None:
            cell_size = self._default_cell_size()
        if not (math.isfinite(cell_size) and cell_size > 0):
            raise ValueError("cell size must be positive and finite")
        self._cell_size = float(cell_size)
        self._z: np.ndarray | None = None
        self._build_index()

    def _default_cell_size(self) -> float:
        n = len(self._xy)
        if n == 0:
            return 1.0
        w = float(self._xy[:, 0].max() - self._xy[:, 0].min())
        h = float(self._xy[:, 1].max() - self._xy[:, 1].min())
        if w > 0 and h > 0:
            return math.sqrt(w * h / n)
        extent = max(w, h)
        return extent / n if extent > 0 else 1.0

    def _build_index(self) -> None:
        self._cells: dict[tuple[int, int], np.ndarray] = {}
        if len(self._xy) == 0:
            self._origin = (0.0, 0.0)
            self._key_lo = (0, 0)
            self._key_hi = (-1, -1)
            return
        self._origin = (float(self._xy[:, 0].min()), float(self._xy[:, 1].min()))
        ij = np.floor((self._xy - self._origin) / self._cell_size).astype(np.int64)
        buckets: dict[tuple[int, int], list[int]] = {}
        for idx, (i, j) in enumerate(zip(ij[:, 0].tolist(), ij[:, 1].tolist())):
            buckets.setdefault((i, j), []).append(idx)
        self._cells = {k: np.asarray(v, dtype=np.intp) for k, v in buckets.items()}
        self._key_lo = (int(ij[:, 0].min()), int(ij[:, 1].min()))
        self._key_hi = (int(ij[:, 0].max()), int(ij[:, 1].max()))

    def __len__(self) -> int:
        return len(self._xy)

    @property
    def n(self) -> int:
        return len(self._xy)

    @property
    def xy(self) -> np.ndarray:
        """Read-only (n, 2) coordinate array."""
        return self._xy

    @property
    def as_complex(self) -> np.ndarray:
        """Points as complex numbers x + iy (cached)."""
        if self._z is None:
            self._z = self._xy[:, 0] + 1j * self._xy[:, 1]
            self._z.setflags(write=False)
        return self._z

    @property
    def cell_size(self) -> float:
        return self._cell_size

    def bounds(self) -> tuple[float, float, float, float]:
        """(xmin, xmax, ymin, ymax) of the points; error if empty."""
        if len(self._xy) == 0:
            raise ValueError("bounds undefined for an empty point set")
        return (float(self._xy[:, 0].min()), float(self._xy[:, 0].max()),
                float(self._xy[:, 1].min()), float(self._xy[:, 1].max()))

    def cell_key(self, x: float, y: float) -> tuple[int, int]:
        return (int(math.floor((x - self._origin[0]) / self._cell_size)),
                int(math.floor((y - self._origin[1]) / self._cell_size)))

    def cell_indices(self, key: tuple[int, int]) -> np.ndarray:
        """Indices of points whose cell is ``key`` (empty array if none)."""
        return self._cells.get(key, np.empty(0, dtype=np.intp))

    def occupied_cells(self) -> list[tuple[int, int]]:
        return sorted(self._cells.keys())


def min_separation(ps: PointSet) -> float:
    """Smallest pairwise distance in the set.

    Uses the grid index with an expanding search ring; the result is
    certified to equal the brute-force pairwise minimum exactly.

    Raises ValueError for fewer than 2 points.
    """
    n = len(ps)
    if n < 2:
        raise ValueError("separation undefined: need at least 2 points")
    pts = [(float(p[0]), float(p[1])) for p in ps.xy]
    h = ps.cell_size
    span = max(ps._key_hi[0] - ps._key_lo[0], ps._key_hi[1] - ps._key_lo[1])
    k = 1
    while True:
        best2 = _scan_pair_distances(ps, pts, k)
        # any pair at distance <= k*h spans at most k cells per axis, so a
        # minimum not exceeding k*h cannot be beaten by an unscanned pair
        if best2 <= (k * h) ** 2 or k >= span:
            return math.sqrt(best2)
        k = min(2 * k, max(span, 1))


def _scan_pair_distances(ps: PointSet, pts: list[tuple[float, float]], k: int) -> float:
    best2 = math.inf
    offsets = [(di, dj)
               for di in range(0, k + 1)
               for dj in range(-k, k + 1)
               if (di, dj) > (0, 0)]
    for key, idx in ps._cells.items():
        ii = idx.tolist()
        for a in range(len(ii)):
            xa, ya = pts[ii[a]]
            for b in range(a + 1, len(ii)):
                xb, yb = pts[ii[b]]
                d2 = (xa - xb) ** 2 + (ya - yb) ** 2
                if d2 < best2:
                    best2 = d2
        for di, dj in offsets:
            other = ps._cells.get((key[0] + di, key[1] + dj))
            if other is None:
                continue
            for a in ii:
                xa, ya = pts[a]
                for b in other.tolist():
                    xb, yb = pts[b]
                    d2 = (xa - xb) ** 2 + (ya - yb) ** 2
                    if d2 < best2:
                        best2 = d2
    return best2


def count_in_disk(ps: PointSet, d: Disk) -> int:
    """Number of points strictly inside the open disk ``d``."""
    if len(ps) == 0:
        return 0
    cx, cy, r = d.center.x, d.center.y, d.radius
    lo = ps.cell_key(cx - r, cy - r)
    hi = ps.cell_key(cx + r, cy + r)
    i0, j0 = max(lo[0], ps._key_lo[0]), max(lo[1], ps._key_lo[1])
    i1, j1 = min(hi[0], ps._key_hi[0]), min(hi[1], ps._key_hi[1])
    if i0 > i1 or j0 > j1:
        return 0
    n_range = (i1 - i0 + 1) * (j1 - j0 + 1)
    if n_range <= len(ps._cells):
        parts = [ps._cells[(i, j)]
                 for i in range(i0, i1 + 1)
                 for j in range(j0, j1 + 1)
                 if (i, j) in ps._cells]
    else:
        parts = [idx for key, idx in ps._cells.items()
                 if i0 <= key[0] <= i1 and j0 <= key[1] <= j1]
    if not parts:
        return 0
    cand = np.concatenate(parts)
    dx = ps.xy[cand, 0] - cx
    dy = ps.xy[cand, 1] - cy
    return int(np.count_nonzero(dx * dx + dy * dy < r * r))


def _nearest_distance_scan(ps: PointSet, region: Region, grid: GridSpec) -> tuple[float, Point]:
    """Max over grid samples of the nearest-point distance, with argmax."""
    if len(ps) == 0:
        raise ValueError("covering radius undefined for an empty point set")
    samples = grid.samples(region)
    xy = ps.xy
    sq = (xy * xy).sum(axis=1)
    best = -1.0
    best_pt = samples[0]
    chunk = max(1, 8_000_000 // max(len(xy), 1))
    for start in range(0, len(samples), chunk):
        block = samples[start:start + chunk]
        d2 = ((block * block).sum(axis=1)[:, None]
              - 2.0 * block @ xy.T + sq[None, :]).min(axis=1)
        i = int(np.argmax(d2))
        if d2[i] > best:
            best = float(d2[i])
            best_pt = block[i]
    return math.sqrt(max(best, 0.0)), Point(float(best_pt[0]), float(best_pt[1]))


def covering_radius(ps: PointSet, region: Region, grid: GridSpec) -> float:
    """Largest distance from any grid sample of ``region`` to its nearest point.

    This is a lower estimate of the true covering radius over the region;
    interstitial points can be deeper by at most ``grid.step * sqrt(2) / 2``
    (half a cell diagonal).
    """
    depth, _ = _nearest_distance_scan(ps, region, grid)
    return depth


@dataclass(frozen=True)
class CoverageResult:
    """Outcome of a covering check for disks of a common radius sigma.

    ``covered`` is conservative: it certifies that even points between grid
    samples must lie within sigma of some center.  When certification
    fails, ``witness`` is the deepest sampled point (its nearest-center
    distance is ``covering_radius``).
    """

    covered: bool
    covering_radius: float
    grid_margin: float
    witness: Point | None

    def __bool__(self) -> bool:
        return self.covered

    def to_dict(self) -> dict:
        return {
            "covered": self.covered,
            "covering_radius": self.covering_radius,
            "grid_margin": self.grid_margin,
            "witness": None if self.witness is None else [self.witness.x, self.witness.y],
        }


def is_covering(ps: PointSet, sigma: float, region: Region, grid: GridSpec) -> CoverageResult:
    """Check whether disks of radius ``sigma`` at the points cover ``region``.

    Certifies ``covered`` only when covering_radius + grid margin <= sigma,
    so a positive answer holds for every point of the region, not just the
    sampled ones.
    """
    if not (math.isfinite(sigma) and sigma > 0):
        raise ValueError("sigma must be positive")
    depth, deepest = _nearest_distance_scan(ps, region, grid)
    margin = grid.step * math.sqrt(2.0) / 2.0
    covered = depth + margin <= sigma
    return CoverageResult(
        covered=covered,
        covering_radius=depth,
        grid_margin=margin,
        witness=None if covered else deepest,
    )


# ---------------------------------------------------------------------------
# point-set I/O: CSV ("x,y" per line) and JSON (array of [x, y])


def parse_points_csv(text: str) -> PointSet:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ValueError(f"CSV line {lineno}: expected 'x,y', got {line!r}")
        try:
            rows.append((float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise ValueError(f"CSV line {lineno}: {exc}") from None
    return PointSet(np.asarray(rows, dtype=float) if rows else np.empty((0, 2)))


def parse_points_json(text: str) -> PointSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON point data: {exc}") from None
    if not isinstance(data, list):
        raise ValueError("JSON point data must be an array of [x, y] pairs")
    rows = []
    for i, item in enumerate(data):
        if (not isinstance(item, (list, tuple)) or len(item) != 2
                or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in item)):
            raise ValueError(f"JSON point {i}: expected a numeric [x, y] pair")
        rows.append((float(item[0]), float(item[1])))
    return PointSet(np.asarray(rows, dtype=float) if rows else np.empty((0, 2)))


def format_points_csv(ps: PointSet) -> str:
    return "".join(f"{x!r},{y!r}\n" for x, y in ps.xy.tolist())


def format_points_json(ps: PointSet) -> str:
    return json.dumps([[x, y] for x, y in ps.xy.tolist()]) + "\n"


def load_point_set(path: str | Path) -> PointSet:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        return parse_points_csv(text)
    if path.suffix.lower() == ".json":
        return parse_points_json(text)
    # no recognized suffix: sniff the payload
    stripped = text.lstrip()
    if stripped.startswith("["):
        return parse_points_json(text)
    return parse_points_csv(text)


def save_point_set(ps: PointSet, path: str | Path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        path.write_text(format_points_csv(ps))
    else:
        path.write_text(format_points_json(ps))
