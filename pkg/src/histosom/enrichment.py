"""Density and connectivity enrichment of a trained map.

Each prototype gets a Gaussian-kernel estimate of the data density around
it, computed with the map's dissimilarity, and every pair of neurons gets
a connectivity count: the number of observations for which those two
neurons are the first and second best matching units.  Connectivity
detects breaks in the map (empty regions between clusters); density
detects low-density borders inside connected regions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .histograms import ObservationVector
from .som import SomMap, _with_data

__all__ = [
    "EnrichedMap",
    "default_bandwidth",
    "local_density",
    "connectivity_counts",
    "enrich",
]

# Bandwidth floor for degenerate maps where all prototypes coincide.
MIN_BANDWIDTH = 1e-6


@dataclass(frozen=True)
class EnrichedMap:
    som: SomMap
    densities: np.ndarray
    connectivity: np.ndarray
    bandwidth: float

    def __post_init__(self) -> None:
        m = self.som.size
        if self.densities.shape != (m,):
            raise ValueError("one density per neuron required")
        if self.connectivity.shape != (m, m):
            raise ValueError("connectivity must be an MxM matrix")

    @property
    def size(self) -> int:
        return self.som.size


def _cross_values(som: SomMap, data: Sequence[ObservationVector]) -> np.ndarray:
    """(N, M) dissimilarity values between data and prototypes."""
    proto, aligned = _with_data(som, data)
    diss = som.dissimilarity
    return diss.cross(diss.embed(aligned), diss.embed(proto))


def default_bandwidth(som: SomMap) -> float:
    """Average distance from each prototype to its nearest other prototype.

    Distances are square roots of the map's dissimilarity values, so the
    bandwidth lives on the same scale as the kernel argument.
    """
    if som.size < 2:
        raise ValueError("bandwidth heuristic needs at least two prototypes")
    diss = som.dissimilarity
    e = diss.embed(som.proto)
    d2 = diss.cross(e, e)
    np.fill_diagonal(d2, np.inf)
    bw = float(np.mean(np.sqrt(d2.min(axis=1))))
    return max(bw, MIN_BANDWIDTH)


def local_density(
    som: SomMap, data: Sequence[ObservationVector], sigma: float
) -> np.ndarray:
    """Gaussian-kernel density of the data around each prototype."""
    if not sigma > 0.0:
        raise ValueError("bandwidth must be positive")
    d2 = _cross_values(som, data)
    kern = np.exp(-d2 / (2.0 * sigma * sigma)) / (sigma * math.sqrt(2.0 * math.pi))
    return kern.sum(axis=0) / d2.shape[0]


def connectivity_counts(
    som: SomMap, data: Sequence[ObservationVector]
) -> np.ndarray:
    """Symmetric matrix of two-first-BMU counts; ties go to lower indices."""
    if som.size < 2:
        raise ValueError("connectivity needs at least two prototypes")
    d2 = _cross_values(som, data)
    order = np.argsort(d2, axis=1, kind="stable")
    first, second = order[:, 0], order[:, 1]
    v = np.zeros((som.size, som.size), dtype=np.int64)
    np.add.at(v, (first, second), 1)
    np.add.at(v, (second, first), 1)
    return v


def enrich(
    som: SomMap,
    data: Sequence[ObservationVector],
    sigma: float | None = None,
) -> EnrichedMap:
    """Bundle densities and connectivity; sigma defaults to the heuristic."""
    bw = default_bandwidth(som) if sigma is None else float(sigma)
    return EnrichedMap(
        som=som,
        densities=local_density(som, data, bw),
        connectivity=connectivity_counts(som, data),
        bandwidth=bw,
    )
