"""Spectra of finite multigraphs against their universal cover trees.

The package computes, certifies, and compares three spectral quantities:
the adjacency top eigenvalue of a finite connected multigraph G, the
spectral radius of its universal cover tree, and the fraction of G's
eigenvalues lying within the cover's radius. Around these sit exact walk
counting on the cover, 2-core based gap certificates, local ball statistics,
and generators for graph families sharing a common cover.
"""

from .cover import (
    BallCapExceeded,
    OrbitClass,
    OrbitDistribution,
    TreeBall,
    backtracking_walk_count,
    backtracking_walk_profile,
    orbit_distribution,
    tree_ball,
    tree_ball_walk_count,
)
from .gapcert import (
    CertificationError,
    GapCertificate,
    certify_gap,
    delta_assignment,
    g_values,
    gamma_assignment,
    unicyclic_defect,
)
from .generators import (
    LiftSpec,
    biregular,
    bowtie,
    canonical_key,
    complete,
    cycle,
    make,
    path,
    random_lift,
    random_regular,
    small_connected_multigraphs,
    star,
    theta,
    two_cycles_glued,
)
from .localstats import (
    Cycle,
    CycleStats,
    LocalStatsReport,
    MassTransportReport,
    ball_code,
    bs_histogram,
    cycle_stats,
    enumerate_cycles,
    find_bouquet,
    local_stats_report,
    mass_transport_check,
    tree_fraction,
    tv_distance,
)
from .multigraph import (
    CyclomaticClass,
    GraphParseError,
    MultiGraph,
    Neighborhood,
    ball,
    cyclomatic_class,
    dump_graph,
    is_tree,
    load_graph,
    require_connected,
)
from .rho import (
    ProbeReport,
    RhoResult,
    feasibility_probe,
    rho_ball_power,
    rho_lower_sequence,
    rho_tree,
)
from .spectra import (
    Spectrum,
    closed_walk_count,
    closed_walk_profile,
    eigen_spectrum,
    wr_fraction,
)
from .twocore import CoreDecomposition, two_core

__version__ = "0.1.0"

__all__ = [
    "BallCapExceeded",
    "CertificationError",
    "CoreDecomposition",
    "Cycle",
    "CycleStats",
    "CyclomaticClass",
    "GapCertificate",
    "GraphParseError",
    "LiftSpec",
    "LocalStatsReport",
    "MassTransportReport",
    "MultiGraph",
    "Neighborhood",
    "OrbitClass",
    "OrbitDistribution",
    "ProbeReport",
    "RhoResult",
    "Spectrum",
    "TreeBall",
    "backtracking_walk_count",
    "backtracking_walk_profile",
    "ball",
    "ball_code",
    "biregular",
    "bowtie",
    "bs_histogram",
    "canonical_key",
    "certify_gap",
    "closed_walk_count",
    "closed_walk_profile",
    "complete",
    "cycle",
    "cycle_stats",
    "cyclomatic_class",
    "delta_assignment",
    "dump_graph",
    "eigen_spectrum",
    "enumerate_cycles",
    "feasibility_probe",
    "find_bouquet",
    "g_values",
    "gamma_assignment",
    "is_tree",
    "load_graph",
    "local_stats_report",
    "make",
    "mass_transport_check",
    "orbit_distribution",
    "path",
    "random_lift",
    "random_regular",
    "require_connected",
    "rho_ball_power",
    "rho_lower_sequence",
    "rho_tree",
    "small_connected_multigraphs",
    "star",
    "theta",
    "tree_ball",
    "tree_ball_walk_count",
    "tree_fraction",
    "tv_distance",
    "two_core",
    "two_cycles_glued",
    "unicyclic_defect",
    "wr_fraction",
]
