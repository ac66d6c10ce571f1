"""Planar point-set densities and Fock-space interpolation certificates.

Capabilities:

* geometry: separation, disk counts, covering radii on grid-indexed
  point sets (:mod:`fockdensity.geometry`)
* lattice: hexagonal/square generators and seeded perturbation
  (:mod:`fockdensity.lattice`)
* density: empirical upper/lower densities, packing and covering
  densities, certified density bounds (:mod:`fockdensity.density`)
* certify: separation/covering thresholds and machine-checkable
  interpolation/sampling certificates (:mod:`fockdensity.certify`)
* fock: normalized-kernel Gram matrices, finite interpolation solves,
  conditioning sweeps (:mod:`fockdensity.fock`)
* cli: the ``fockdensity`` command (:mod:`fockdensity.cli`)
"""

__version__ = "0.1.0"

from .errors import ComputationError
from .geometry import (
    CoverageResult,
    Disk,
    GridSpec,
    Point,
    PointSet,
    Region,
    count_in_disk,
    covering_radius,
    is_covering,
    load_point_set,
    min_separation,
    save_point_set,
)
from .lattice import HEXAGONAL, SQUARE, LatticeSpec, generate, hexagonal_patch, perturb
from .density import (
    HEX_COVERING_DENSITY,
    HEX_PACKING_DENSITY,
    DensityEstimate,
    DensityProfile,
    PackingConfig,
    covering_density,
    covering_density_bound,
    default_radii,
    density_profile,
    estimate_lower_density,
    estimate_upper_density,
    packing_density,
    separation_density_bound,
)
from .certify import (
    Certificate,
    FockParams,
    certify_interpolating_by_separation,
    certify_sampling_by_covering,
    classify_by_density,
    covering_sampling_threshold,
    critical_density,
    improved_interpolation_threshold,
    tung_threshold,
)
from .fock import (
    GramMatrix,
    InterpolationSolution,
    conditioning_sweep,
    eig_extremes,
    evaluate,
    evaluate_weighted,
    gershgorin_riesz_lower_bound,
    gram,
    interpolate,
    kernel,
    sweep_to_csv,
)

__all__ = [
    "__version__",
    "ComputationError",
    # geometry
    "Point", "Region", "GridSpec", "Disk", "PointSet", "CoverageResult",
    "min_separation", "count_in_disk", "covering_radius", "is_covering",
    "load_point_set", "save_point_set",
    # lattice
    "HEXAGONAL", "SQUARE", "LatticeSpec", "generate", "hexagonal_patch", "perturb",
    # density
    "HEX_PACKING_DENSITY", "HEX_COVERING_DENSITY",
    "DensityProfile", "DensityEstimate", "PackingConfig",
    "default_radii", "density_profile",
    "estimate_upper_density", "estimate_lower_density",
    "packing_density", "covering_density",
    "separation_density_bound", "covering_density_bound",
    # certify
    "FockParams", "Certificate",
    "tung_threshold", "improved_interpolation_threshold",
    "covering_sampling_threshold", "critical_density",
    "certify_interpolating_by_separation", "certify_sampling_by_covering",
    "classify_by_density",
    # fock
    "GramMatrix", "InterpolationSolution",
    "kernel", "gram", "gershgorin_riesz_lower_bound", "eig_extremes",
    "interpolate", "evaluate", "evaluate_weighted",
    "conditioning_sweep", "sweep_to_csv",
]
