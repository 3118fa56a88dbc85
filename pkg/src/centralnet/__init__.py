"""Persistence-diagram time series of dynamic weighted networks and their central subnetworks."""
__version__ = "0.1.0"

from .centrality import (
    CentralityReport,
    ThresholdSpec,
    central_subnetwork,
    closeness,
    path_costs,
    quantile_threshold,
    select_central,
)
from .graph import (
    ReturnsMatrix,
    WeightedMatrix,
    apply_threshold,
    arithmetic_returns,
    correlation_matrix,
    correlation_to_distance,
    from_point_cloud,
    log_returns,
    pruned_fraction,
)
from .persistence import FiltrationConfig, PersistenceDiagram, betti_at, h0_diagram, rips_diagrams
from .pipeline import (
    DynamicNetwork,
    PipelineConfig,
    diagram_series,
    ingest,
    run_comparison,
    wasserstein_series,
)
from .simgen import SimSpec, gen_ar1, gen_covariance, gen_hub
from .stats import SeriesComparison, adjusted_r2, compare, kendall_tau, linreg
from .wasserstein import DIAG, matching, wasserstein
