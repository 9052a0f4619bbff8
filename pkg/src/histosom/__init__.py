"""Density-based two-level clustering of histogram-valued data.

The package represents each observation as a vector of histograms,
compares observations with the squared L2 Wasserstein distance (computed
in closed form on homogenized quantile functions), organizes them on a
batch self-organizing map, enriches the trained prototypes with local
density and connectivity estimates, and segments the prototypes into
clusters whose number is detected automatically.
"""

from .clustering import (
    ClusterResult,
    MicroClusterState,
    cluster_prototypes,
    connected_components,
    density_maxima,
    gradient_labeling,
    merge_microclusters,
    merge_threshold,
    micro_clusters,
)
from .datagen import (
    BENCHMARKS,
    DatasetSpec,
    LabeledDataset,
    benchmark_spec,
    generate,
    sample_gamma3,
)
from .enrichment import (
    EnrichedMap,
    connectivity_counts,
    default_bandwidth,
    enrich,
    local_density,
)
from .histograms import (
    AlignedDataset,
    Bin,
    Histogram,
    ObservationVector,
    QuantileProfile,
    build_equidepth,
    homogenize,
    to_quantile_profile,
)
from .metrics import adjusted_rand, contingency_table, nmi, v_measure
from .pipeline import PipelineResult, run_pipeline
from .som import (
    GridTopology,
    SomConfig,
    SomMap,
    batch_update,
    cost,
    default_config,
    find_bmu,
    grid_distance,
    neighborhood_kernel,
    temperature,
    train,
)
from .wasserstein import (
    DISSIMILARITIES,
    Dissimilarity,
    alt_dissimilarity,
    barycenter,
    total_inertia,
    wasserstein_components,
    wasserstein_sq,
)

__version__ = "0.1.0"

__all__ = [
    "AlignedDataset",
    "BENCHMARKS",
    "Bin",
    "ClusterResult",
    "DISSIMILARITIES",
    "DatasetSpec",
    "Dissimilarity",
    "EnrichedMap",
    "GridTopology",
    "Histogram",
    "LabeledDataset",
    "MicroClusterState",
    "ObservationVector",
    "PipelineResult",
    "QuantileProfile",
    "SomConfig",
    "SomMap",
    "adjusted_rand",
    "alt_dissimilarity",
    "barycenter",
    "batch_update",
    "benchmark_spec",
    "build_equidepth",
    "cluster_prototypes",
    "connected_components",
    "connectivity_counts",
    "contingency_table",
    "cost",
    "default_bandwidth",
    "default_config",
    "density_maxima",
    "enrich",
    "find_bmu",
    "generate",
    "gradient_labeling",
    "grid_distance",
    "homogenize",
    "local_density",
    "merge_microclusters",
    "merge_threshold",
    "micro_clusters",
    "neighborhood_kernel",
    "nmi",
    "run_pipeline",
    "sample_gamma3",
    "temperature",
    "to_quantile_profile",
    "total_inertia",
    "train",
    "v_measure",
    "wasserstein_components",
    "wasserstein_sq",
]
