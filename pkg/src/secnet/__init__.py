"""Connectivity of secure sensor networks: random key graphs meet random geometric graphs.

Sensors dropped on the unit torus or square hold random key rings; a link
requires both physical proximity and a shared key.  The package provides
exact overlap combinatorics, boundary-aware geometry, graph samplers,
connectivity analysis, threshold/isolation analytics, and a reproducible
experiment harness with a CLI.
"""

from .combinatorics import (
    KeyScheme,
    OverlapDistribution,
    conditional_joint_share,
    conditional_joint_share_bound,
    key_share_probability,
    key_share_upper_bound,
    log_binomial,
    overlap_distribution,
)
from .geometry import (
    Point,
    Region,
    SquareZone,
    boundary_area_H,
    classify_square_zone,
    clipped_disk_area,
    distance,
    lens_area,
    square_zone_areas,
)
from .graph_analysis import GraphStats, UnionFind, analyze, is_subgraph
from .graph_models import (
    NetworkParams,
    RigSample,
    SampledNetwork,
    depoissonized_count,
    geometric_pairs,
    pair_share_flags,
    poissonize_count,
    rings_share_key,
    rng_for,
    sample_er,
    sample_network,
    sample_poissonized_network,
    sample_positions,
    sample_rig,
    sample_rings,
)
from .asymptotics import (
    ConditionConstants,
    CouplingParameters,
    DeltaResult,
    IsolationBreakdown,
    RegimeBranch,
    alpha_from_radius,
    check_theorem1_conditions,
    check_theorem2_conditions,
    coupling_parameters,
    critical_range_square,
    critical_range_torus,
    delta_from_radius,
    isolated_prob_square,
    isolated_prob_torus,
    pair_isolation_torus,
    pair_isolation_torus_unconditioned,
    phase_transition_limit,
    regime_branch,
)
from .harness import (
    CSV_HEADER,
    AnalyticReport,
    CouplingExperimentResult,
    SweepConfig,
    SweepMode,
    SweepResult,
    SweepRow,
    analytic_report,
    coupling_domination_experiment,
    emit_csv,
    load_csv,
    render_report,
    run_sweep,
)

__version__ = "0.1.0"
