"""End-to-end convenience: train, enrich, cluster in one call."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .clustering import ClusterResult, cluster_prototypes
from .enrichment import EnrichedMap, enrich
from .histograms import ObservationVector
from .som import SomConfig, SomMap, default_config, train
from .wasserstein import Dissimilarity

__all__ = ["PipelineResult", "run_pipeline"]


@dataclass(frozen=True)
class PipelineResult:
    som: SomMap
    enriched: EnrichedMap
    clusters: ClusterResult


def run_pipeline(
    observations: Sequence[ObservationVector],
    config: SomConfig | None = None,
    dissimilarity: str = "dW",
    sigma: float | None = None,
    seed: int = 0,
    functor: Dissimilarity | None = None,
) -> PipelineResult:
    """Train a map on the observations, enrich it, and cluster prototypes.

    ``config`` defaults to :func:`histosom.som.default_config` for the
    dataset size.  ``functor`` can inject a custom dissimilarity object
    (overriding the configured kind).
    """
    observations = list(observations)
    if config is None:
        config = default_config(len(observations), dissimilarity, seed)
    som = train(observations, config, dissimilarity=functor)
    enriched = enrich(som, observations, sigma=sigma)
    clusters = cluster_prototypes(enriched)
    return PipelineResult(som, enriched, clusters)
