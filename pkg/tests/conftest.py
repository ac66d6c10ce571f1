"""Shared oracles and generators for the test suite.

The oracles here are deliberately naive (full pairwise scans, dart
throwing, determinant bisection) so they stay independent of the library
paths they check.
"""

import math

import numpy as np
import pytest

from fockdensity import PointSet


def brute_force_min_separation(xy: np.ndarray) -> float:
    """All-pairs minimum distance, chunked."""
    n = len(xy)
    best = math.inf
    chunk = max(1, 2_000_000 // max(n, 1))
    for start in range(0, n, chunk):
        block = xy[start:start + chunk]
        d2 = ((block[:, None, :] - xy[None, :, :]) ** 2).sum(axis=-1)
        for i in range(len(block)):
            d2[i, start + i] = np.inf
        best = min(best, float(d2.min()))
    return math.sqrt(best)


def naive_count_in_disk(xy: np.ndarray, center, radius: float) -> int:
    """Direct O(n) strict count."""
    cx, cy = center
    d2 = (xy[:, 0] - cx) ** 2 + (xy[:, 1] - cy) ** 2
    return int(np.count_nonzero(d2 < radius * radius))


def random_separated_set(seed: int, sigma: float, side: float, target: int) -> PointSet:
    """Rejection-sampled (dart-throwing) sigma-separated set on a square."""
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed))
    half = side / 2.0
    grid: dict[tuple[int, int], list[tuple[float, float]]] = {}
    pts: list[tuple[float, float]] = []
    attempts = 0
    while len(pts) < target and attempts < 30 * target:
        attempts += 1
        x, y = rng.uniform(-half, half, 2)
        i, j = int(math.floor(x / sigma)), int(math.floor(y / sigma))
        ok = True
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                for qx, qy in grid.get((i + di, j + dj), ()):
                    if (x - qx) ** 2 + (y - qy) ** 2 < sigma * sigma:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            grid.setdefault((i, j), []).append((x, y))
            pts.append((x, y))
    if len(pts) < 2:
        raise RuntimeError("dart throwing failed to place points")
    return PointSet(np.asarray(pts))


def eig_extremes_by_bisection(h: np.ndarray, lo: float, hi: float,
                              scan: int = 4000) -> tuple[float, float]:
    """Extreme eigenvalues via determinant sign changes plus bisection.

    Assumes simple extreme eigenvalues inside (lo, hi); suitable for the
    small random Hermitian matrices used in tests.
    """
    eye = np.eye(len(h))

    def det_sign(lam: float) -> float:
        sign, _ = np.linalg.slogdet(h - lam * eye)
        return float(sign.real)

    grid = np.linspace(lo, hi, scan)
    signs = [det_sign(v) for v in grid]
    brackets = [(grid[i], grid[i + 1]) for i in range(scan - 1)
                if signs[i] * signs[i + 1] < 0]
    if not brackets:
        raise RuntimeError("no eigenvalue bracket found")

    def refine(a: float, b: float) -> float:
        fa = det_sign(a)
        for _ in range(80):
            mid = 0.5 * (a + b)
            fm = det_sign(mid)
            if fm == 0.0:
                return mid
            if fa * fm < 0:
                b = mid
            else:
                a, fa = mid, fm
        return 0.5 * (a + b)

    return refine(*brackets[0]), refine(*brackets[-1])


@pytest.fixture(scope="session")
def hex_patch_61():
    from fockdensity import hexagonal_patch
    return hexagonal_patch(2.0, 4)
