"""Finite-stage combing audits, coarse cohomology and corona approximations."""

from ._core import (  # noqa: F401
    Combing,
    Space,
    annulus,
    audit_coherent,
    audit_controlled,
    audit_expanding,
    audit_proper,
    ball,
    boundary_clusters,
    bresenham_combing,
    cayley_ball,
    cohomology_betti,
    cycle_space,
    estimate_asdim_upper,
    estimate_hyperbolicity,
    geodesic_combing,
    gromov_product,
    nonproper_example,
    noncoherent_example,
    ray_gap,
    rips_counts,
    run_config,
    segment_space,
    verify_report,
)

__all__ = [
    "Combing",
    "Space",
    "annulus",
    "audit_coherent",
    "audit_controlled",
    "audit_expanding",
    "audit_proper",
    "ball",
    "boundary_clusters",
    "bresenham_combing",
    "cayley_ball",
    "cohomology_betti",
    "cycle_space",
    "estimate_asdim_upper",
    "estimate_hyperbolicity",
    "geodesic_combing",
    "gromov_product",
    "nonproper_example",
    "noncoherent_example",
    "ray_gap",
    "rips_counts",
    "run_config",
    "segment_space",
    "verify_report",
]

__version__ = "0.1.0"
