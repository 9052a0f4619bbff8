"""Synthetic benchmark datasets with ground-truth cluster labels.

Each cluster is a set of draws from fixed generating distributions: one
location-shifted Gamma per (cluster, variable), controlled by its mean,
its standard deviation and a shape parameter (skewness 2/sqrt(shape)).
Within a dataset exactly one of the three parameters differs across
clusters; the other two are shared by all clusters at a dataset-global
level.  Every observation is a fresh batch of raw draws binned into
equi-depth histograms, so within-cluster variation is pure sampling
noise.

Cluster levels of the varying parameter are redrawn until they are
distinguishable: mean levels need an absolute gap (location noise is
absolute), while standard-deviation and shape levels need a ratio gap
(their footprint on the quantile functions scales with the level).  Six
standard configurations (``--db 1`` to ``6`` on the command line) cover
dimension 2 or 10, 3 or 5 clusters, and which parameter varies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .histograms import Histogram, ObservationVector, build_equidepth

__all__ = [
    "VARYING",
    "BENCHMARKS",
    "DatasetSpec",
    "LabeledDataset",
    "sample_gamma3",
    "generate",
    "benchmark_spec",
]

VARYING = ("mean", "std", "shape")

# (dimension, clusters, varying parameter) for presets 1..6; 3 and 4 vary
# the shape (the hard problem: only the skewness separates the clusters),
# 5 and 6 vary the dispersion.
BENCHMARKS = {
    1: (2, 3, "mean"),
    2: (10, 5, "mean"),
    3: (2, 3, "shape"),
    4: (10, 5, "shape"),
    5: (2, 3, "std"),
    6: (10, 5, "std"),
}

# Normal jitter applied to each parameter draw around its level.
PARAM_SIGMA = 0.1
# Positive parameters (std, shape) are redrawn until above this floor.
PARAM_FLOOR = 0.05
# Mean levels are redrawn until pairwise gaps reach 5 jitter sigmas.
MEAN_SEPARATION = 0.5
# Level ranges for the varying parameter.  Std/shape levels are drawn
# log-uniformly and redrawn until adjacent levels differ by the largest
# ratio the range supports for k clusters, scaled by a slack factor that
# keeps the draw feasible.
LEVEL_RANGES = {"mean": (0.0, 5.0), "std": (0.2, 2.0), "shape": (0.05, 5.0)}
# Dataset-global levels of the two non-varying parameters.
GLOBAL_RANGES = {"mean": (0.0, 5.0), "std": (0.5, 1.5), "shape": (2.0, 5.0)}


def _ratio_slack(varying: str, k: int) -> float:
    if varying == "std":
        return 0.8
    return 0.95 if k <= 3 else 0.9


@dataclass(frozen=True)
class DatasetSpec:
    dimension: int
    n_clusters: int
    varying: str
    n_per_cluster: int = 100
    samples_per_histogram: int = 1000
    bins: int = 10
    seed: int = 0

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError("dimension must be at least 1")
        if self.n_clusters < 2:
            raise ValueError("at least two clusters required")
        if self.varying not in VARYING:
            raise ValueError(f"varying must be one of {VARYING}")
        if min(self.n_per_cluster, self.samples_per_histogram, self.bins) < 1:
            raise ValueError("sizes must be positive")

    @property
    def n(self) -> int:
        return self.n_clusters * self.n_per_cluster


@dataclass(frozen=True)
class LabeledDataset:
    observations: tuple[ObservationVector, ...]
    labels: np.ndarray
    spec: DatasetSpec
    # drawn parameter levels, kept for diagnostics
    cluster_levels: tuple[float, ...] = field(default=())
    global_levels: tuple[tuple[str, float], ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.observations)


def sample_gamma3(m: float, s: float, shape: float, n: int, rng) -> np.ndarray:
    """Draws from a location-shifted Gamma with mean ``m``, std ``s``.

    Shape controls the skewness (2/sqrt(shape)); scale is s/sqrt(shape)
    and the location shift pins the mean at ``m``.
    """
    if not s > 0.0:
        raise ValueError("standard deviation must be positive")
    if not shape > 0.0:
        raise ValueError("shape must be positive")
    theta = s / np.sqrt(shape)
    return rng.gamma(shape, theta, size=n) + (m - shape * theta)


def _positive_normal(rng, mu: float, sigma: float) -> float:
    # rejection sampling above the floor
    while True:
        x = rng.normal(mu, sigma)
        if x > PARAM_FLOOR:
            return float(x)


def _separated_levels(rng, k: int, varying: str) -> np.ndarray:
    lo, hi = LEVEL_RANGES[varying]
    if varying == "mean":
        while True:
            mus = rng.uniform(lo, hi, size=k)
            if np.diff(np.sort(mus)).min() >= MEAN_SEPARATION:
                return mus
    ratio = (hi / lo) ** (1.0 / (k - 1)) * _ratio_slack(varying, k)
    while True:
        mus = np.exp(rng.uniform(np.log(lo), np.log(hi), size=k))
        srt = np.sort(mus)
        if np.all(srt[1:] / srt[:-1] >= ratio):
            return mus


def generate(spec: DatasetSpec) -> LabeledDataset:
    """Build a labeled dataset; bitwise deterministic for a given spec.

    The seed is split into one parameter stream plus one child stream per
    observation, so generation could be parallelized over observations
    without changing the result.
    """
    ss = np.random.SeedSequence(spec.seed)
    children = ss.spawn(spec.n + 1)
    prng = np.random.default_rng(children[0])

    levels = _separated_levels(prng, spec.n_clusters, spec.varying)
    glob = {
        p: float(prng.uniform(*GLOBAL_RANGES[p]))
        for p in VARYING
        if p != spec.varying
    }

    def _draw(p: str, mu: float) -> float:
        if p == "mean":
            return float(prng.normal(mu, PARAM_SIGMA))
        return _positive_normal(prng, mu, PARAM_SIGMA)

    # one generating (m, s, h) per (cluster, variable); the non-varying
    # parameters are drawn once per variable and shared across clusters
    shared = {
        v: {p: _draw(p, glob[p]) for p in VARYING if p != spec.varying}
        for v in range(spec.dimension)
    }
    params = np.empty((spec.n_clusters, spec.dimension, 3))
    for c in range(spec.n_clusters):
        for v in range(spec.dimension):
            params[c, v] = [
                _draw(p, levels[c]) if p == spec.varying else shared[v][p]
                for p in VARYING
            ]

    observations: list[ObservationVector] = []
    labels = np.repeat(np.arange(spec.n_clusters), spec.n_per_cluster)
    for idx in range(spec.n):
        rng = np.random.default_rng(children[idx + 1])
        c = int(labels[idx])
        hists: list[Histogram] = []
        for v in range(spec.dimension):
            m, s, h = params[c, v]
            samples = sample_gamma3(m, s, h, spec.samples_per_histogram, rng)
            hists.append(build_equidepth(samples, spec.bins))
        observations.append(ObservationVector(hists))

    return LabeledDataset(
        observations=tuple(observations),
        labels=labels,
        spec=spec,
        cluster_levels=tuple(float(x) for x in levels),
        global_levels=tuple(sorted(glob.items())),
    )


def benchmark_spec(db: int, seed: int = 0, **overrides) -> DatasetSpec:
    """Spec for one of the six standard benchmark configurations."""
    if db not in BENCHMARKS:
        raise ValueError(f"unknown benchmark {db!r}; choose 1..6")
    d, k, varying = BENCHMARKS[db]
    return DatasetSpec(
        dimension=d, n_clusters=k, varying=varying, seed=seed, **overrides
    )
