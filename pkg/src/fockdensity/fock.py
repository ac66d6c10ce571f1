"""Reproducing-kernel numerics for the Gaussian-weighted Hilbert space (p = 2).

The kernel at weight alpha is K(z, w) = exp(alpha z conj(w)).  All stored
matrices use the normalized kernels k_w = K_w / ||K_w||, whose pairwise
inner products

    G[m][n] = exp(alpha z_m conj(z_n) - alpha (|z_m|^2 + |z_n|^2) / 2)

have modulus exp(-alpha |z_m - z_n|^2 / 2) <= 1.  This removes the
exp(alpha |z|^2) dynamic range of the raw kernels, so Gram assembly never
overflows.  Extreme Gram eigenvalues of a finite patch act as
finite-section stand-ins for the frame (Riesz) bounds of the infinite
node system; they are labeled as such and are not the true infinite-system
constants.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import ComputationError
from .geometry import Point, PointSet
from .lattice import hexagonal_patch

__all__ = [
    "GramMatrix",
    "InterpolationSolution",
    "kernel",
    "gram",
    "gershgorin_riesz_lower_bound",
    "eig_extremes",
    "interpolate",
    "evaluate",
    "evaluate_weighted",
    "conditioning_sweep",
    "sweep_to_csv",
]

# exp overflows past ~709.78 for float64; stay clear of it
_EXP_RE_LIMIT = 700.0

# Gram matrices with lambda_min below this are declared ill-posed rather
# than solved (about 1e4 times unit roundoff)
SINGULARITY_THRESHOLD = 1e-12


def _as_complex(z) -> complex:
    if isinstance(z, Point):
        return complex(z.x, z.y)
    if isinstance(z, (tuple, list)) and len(z) == 2:
        return complex(float(z[0]), float(z[1]))
    return complex(z)


def _check_alpha(alpha: float) -> float:
    if not (math.isfinite(alpha) and alpha > 0):
        raise ValueError("alpha must be positive and finite")
    return float(alpha)


def kernel(alpha: float, z, w) -> complex:
    """Unnormalized kernel K(z, w) = exp(alpha z conj(w)).

    Raises ComputationError instead of silently saturating when the
    exponent's real part would overflow exp.
    """
    alpha = _check_alpha(alpha)
    zc, wc = _as_complex(z), _as_complex(w)
    exponent = alpha * zc * wc.conjugate()
    if exponent.real > _EXP_RE_LIMIT:
        raise ComputationError(
            f"kernel overflow: exponent real part {exponent.real:.6g} exceeds "
            f"{_EXP_RE_LIMIT:.6g}")
    return cmath.exp(exponent)


@dataclass(frozen=True)
class GramMatrix:
    """Hermitian matrix of normalized-kernel inner products.

    Unit diagonal by construction; the entrywise modulus is
    exp(-alpha |z_m - z_n|^2 / 2).
    """

    entries: np.ndarray
    points: PointSet
    alpha: float

    def __post_init__(self):
        g = self.entries
        n = len(self.points)
        assert g.shape == (n, n)
        assert np.array_equal(g, g.conj().T), "Gram must be exactly Hermitian"
        assert np.all(np.diagonal(g) == 1.0), "Gram diagonal must be exactly 1"
        assert abs(np.trace(g) - n) == 0.0
        # |entries| <= 1 up to rounding of hypot(re, im)
        assert float(np.abs(g).max()) <= 1.0 + 16 * np.finfo(float).eps

    @property
    def n(self) -> int:
        return len(self.points)


def gram(alpha: float, ps: PointSet) -> GramMatrix:
    """Assemble the normalized-kernel Gram matrix for a point set."""
    alpha = _check_alpha(alpha)
    if len(ps) == 0:
        raise ValueError("gram matrix undefined for an empty point set")
    z = ps.as_complex
    half_sq = 0.5 * alpha * (z.real ** 2 + z.imag ** 2)
    exponent = alpha * np.outer(z, z.conj()) - (half_sq[:, None] + half_sq[None, :])
    # mirror the strict upper triangle and pin the diagonal so the matrix is
    # Hermitian with unit diagonal bit-for-bit (FMA-contracted complex
    # products are not exactly conjugate-symmetric on their own)
    upper = np.triu(np.exp(exponent), k=1)
    entries = upper + upper.conj().T + np.eye(len(z))
    return GramMatrix(entries=entries, points=ps, alpha=alpha)


def gershgorin_riesz_lower_bound(g: GramMatrix) -> float:
    """1 minus the largest off-diagonal absolute row sum.

    When positive, this is a certified lower bound on the smallest Gram
    eigenvalue (diagonal dominance), hence a certified lower frame bound
    for the finite section.
    """
    a = np.abs(g.entries)
    row = a.sum(axis=1) - np.diagonal(a)
    return float(1.0 - row.max()) if g.n else 1.0


def eig_extremes(g: GramMatrix, tol: float = 1e-10) -> tuple[float, float]:
    """Smallest and largest eigenvalues of the Gram matrix.

    Accuracy is far better than ``tol`` times the largest eigenvalue for
    any convergent Hermitian solver; failures surface as
    ComputationError.
    """
    if not (tol > 0):
        raise ValueError("tol must be positive")
    h = g.entries
    if not np.allclose(h, h.conj().T, atol=1e-12):
        raise ValueError("matrix must be Hermitian")
    try:
        eigs = np.linalg.eigvalsh(h)
    except np.linalg.LinAlgError as exc:
        raise ComputationError(f"eigenvalue iteration failed to converge: {exc}") from None
    lam_min, lam_max = float(eigs[0]), float(eigs[-1])
    slack = tol * max(1.0, lam_max) + g.n * np.finfo(float).eps
    assert lam_min >= gershgorin_riesz_lower_bound(g) - slack
    assert abs(float(eigs.sum()) - g.n) <= g.n * 64 * np.finfo(float).eps * max(1.0, lam_max)
    return lam_min, lam_max


@dataclass(frozen=True)
class InterpolationSolution:
    """Coefficients and diagnostics of a finite kernel interpolation.

    ``residual_inf`` is the weighted max interpolation error, recomputed
    by direct evaluation at the nodes (never read off the solver).
    ``lambda_min``/``lambda_max`` are finite-section Riesz-bound proxies;
    sqrt(condition) approximates the two-sided sampling constant of the
    finite section.
    """

    coefficients: np.ndarray
    residual_inf: float
    lambda_min: float
    lambda_max: float
    condition: float
    coeff_norm: float

    def to_dict(self) -> dict:
        return {
            "coefficients": [[c.real, c.imag] for c in self.coefficients.tolist()],
            "residual_inf": self.residual_inf,
            "lambda_min": self.lambda_min,
            "lambda_max": self.lambda_max,
            "condition": self.condition,
            "coeff_norm": self.coeff_norm,
        }


def _weighted_targets(alpha: float, ps: PointSet, targets) -> np.ndarray:
    v = np.asarray(targets, dtype=complex).ravel()
    if len(v) != len(ps):
        raise ValueError("targets length must match the point set")
    z = ps.as_complex
    w = v * np.exp(-0.5 * alpha * (z.real ** 2 + z.imag ** 2))
    if not np.all(np.isfinite(w.real) & np.isfinite(w.imag)):
        raise ValueError("weighted targets must be finite")
    return w


def interpolate(alpha: float, ps: PointSet, targets) -> InterpolationSolution:
    """Solve the normalized-kernel interpolation problem f(z_n) = v_n.

    Solves G c = (v_n exp(-alpha |z_n|^2 / 2)) by Cholesky with one step
    of iterative refinement; the represented function is
    f = sum_n c_n k_{z_n} with k the normalized kernels.
    """
    alpha = _check_alpha(alpha)
    w = _weighted_targets(alpha, ps, targets)
    g = gram(alpha, ps)
    lam_min, lam_max = eig_extremes(g)
    if lam_min < SINGULARITY_THRESHOLD:
        raise ComputationError(
            "beneath-threshold configuration: interpolation ill-posed "
            f"(lambda_min = {lam_min:.3g} < {SINGULARITY_THRESHOLD:.0e})")
    factor = cho_factor(g.entries, lower=True)
    coeff = cho_solve(factor, w)
    coeff = coeff + cho_solve(factor, w - g.entries @ coeff)
    # residual by independent re-evaluation at the nodes
    z = ps.as_complex
    weighted_values = np.array(
        [evaluate_weighted(alpha, ps, coeff, zm) for zm in z])
    residual_inf = float(np.abs(weighted_values - w).max()) if len(w) else 0.0
    return InterpolationSolution(
        coefficients=coeff,
        residual_inf=residual_inf,
        lambda_min=lam_min,
        lambda_max=lam_max,
        condition=lam_max / lam_min,
        coeff_norm=float(np.linalg.norm(coeff)),
    )


def evaluate(alpha: float, ps: PointSet, coefficients, z) -> complex:
    """Value at z of f = sum_n c_n k_{z_n} (normalized kernels).

    Grows like exp(alpha |z|^2 / 2) away from the nodes; overflow raises
    rather than saturating.  Use :func:`evaluate_weighted` for the bounded
    weighted readout.
    """
    alpha = _check_alpha(alpha)
    c = np.asarray(coefficients, dtype=complex).ravel()
    if len(c) != len(ps):
        raise ValueError("coefficients length must match the point set")
    zc = _as_complex(z)
    nodes = ps.as_complex
    exponent = alpha * zc * nodes.conj() - 0.5 * alpha * (nodes.real ** 2 + nodes.imag ** 2)
    if len(exponent) and float(exponent.real.max()) > _EXP_RE_LIMIT:
        raise ComputationError("kernel overflow: evaluation point too far out")
    return complex(np.sum(c * np.exp(exponent)))


def evaluate_weighted(alpha: float, ps: PointSet, coefficients, z) -> complex:
    """Weighted value f(z) exp(-alpha |z|^2 / 2), computed in bounded form.

    Each term has modulus |c_n| exp(-alpha |z - z_n|^2 / 2), so the sum
    never overflows regardless of |z|.
    """
    alpha = _check_alpha(alpha)
    c = np.asarray(coefficients, dtype=complex).ravel()
    if len(c) != len(ps):
        raise ValueError("coefficients length must match the point set")
    zc = _as_complex(z)
    nodes = ps.as_complex
    exponent = (alpha * zc * nodes.conj()
                - 0.5 * alpha * (nodes.real ** 2 + nodes.imag ** 2)
                - 0.5 * alpha * (zc.real ** 2 + zc.imag ** 2))
    return complex(np.sum(c * np.exp(exponent)))


def conditioning_sweep(alpha: float, spacings, rings: int = 4) -> list[dict]:
    """Extreme Gram eigenvalues on hexagonal patches across spacings.

    Rows are ordered by decreasing spacing so the conditioning degradation
    toward small separation reads top to bottom.  Patch size is
    1 + 3*rings*(rings + 1) points.
    """
    alpha = _check_alpha(alpha)
    values = sorted({float(s) for s in spacings}, reverse=True)
    if not values:
        raise ValueError("spacings must be nonempty")
    if any(not (math.isfinite(s) and s > 0) for s in values):
        raise ValueError("spacings must be positive")
    rows = []
    for s in values:
        patch = hexagonal_patch(s, rings)
        lam_min, lam_max = eig_extremes(gram(alpha, patch))
        rows.append({
            "sigma": s,
            "lambda_min": lam_min,
            "lambda_max": lam_max,
            "condition": lam_max / lam_min if lam_min > 0 else math.inf,
        })
    return rows


def sweep_to_csv(rows: list[dict]) -> str:
    """CSV rendering of a conditioning sweep."""
    lines = ["sigma,lambda_min,lambda_max,condition"]
    for row in rows:
        lines.append(f"{row['sigma']!r},{row['lambda_min']!r},"
                     f"{row['lambda_max']!r},{row['condition']!r}")
    return "\n".join(lines) + "\n"
