"""Batch self-organizing map for histogram-valued observations.

Prototypes are histograms living on the same quantile grid as the
(homogenized) training data.  One training iteration assigns every
observation to its best matching unit under the configured dissimilarity,
then replaces every prototype by the neighborhood-kernel-weighted
barycenter of the whole dataset, with the kernel evaluated between the
prototype's grid position and each observation's BMU.  Weighted
barycenters of valid quantile functions are valid quantile functions, so
prototypes remain proper histograms throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .histograms import AlignedDataset, ObservationVector
from .wasserstein import DISSIMILARITIES, Dissimilarity

__all__ = [
    "GridTopology",
    "SomConfig",
    "SomMap",
    "default_config",
    "grid_distance",
    "temperature",
    "neighborhood_kernel",
    "find_bmu",
    "batch_update",
    "train",
    "cost",
]


@dataclass(frozen=True)
class GridTopology:
    """Rectangular neuron grid; index i maps to (i // cols, i % cols)."""

    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1 or self.rows * self.cols < 2:
            raise ValueError("grid needs at least two neurons")

    @property
    def size(self) -> int:
        return self.rows * self.cols

    def coords(self, i: int) -> tuple[int, int]:
        if not 0 <= i < self.size:
            raise IndexError(f"neuron index {i} out of range")
        return divmod(i, self.cols)

    def manhattan_matrix(self) -> np.ndarray:
        r, c = np.divmod(np.arange(self.size), self.cols)
        return np.abs(r[:, None] - r[None, :]) + np.abs(c[:, None] - c[None, :])


def grid_distance(i: int, j: int, topo: GridTopology) -> int:
    """Manhattan distance between two neurons on the grid."""
    ri, ci = topo.coords(i)
    rj, cj = topo.coords(j)
    return abs(ri - rj) + abs(ci - cj)


@dataclass(frozen=True)
class SomConfig:
    topology: GridTopology
    lambda_initial: float = 9.0
    lambda_final: float = 0.3
    t_max: int = 50
    dissimilarity: str = "dW"
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.lambda_initial <= 0.0 or self.lambda_final <= 0.0:
            raise ValueError("temperatures must be positive")
        if self.lambda_final > self.lambda_initial:
            raise ValueError("final temperature must not exceed the initial one")
        if self.t_max < 1:
            raise ValueError("t_max must be at least 1")
        if self.dissimilarity not in DISSIMILARITIES:
            raise ValueError(f"unknown dissimilarity {self.dissimilarity!r}")


def default_config(
    n_observations: int, dissimilarity: str = "dW", rng_seed: int = 0, **overrides
) -> SomConfig:
    """Config with the package defaults for a dataset of a given size.

    Square grid sized by the usual 5*sqrt(N) neuron rule (so each neuron
    represents a handful of observations and the connectivity graph stays
    dense enough to be meaningful); initial temperature is half the grid
    diagonal in Manhattan units.
    """
    side = max(2, round(math.sqrt(5.0 * math.sqrt(max(n_observations, 1)))))
    topo = GridTopology(overrides.pop("rows", side), overrides.pop("cols", side))
    lam_i = overrides.pop(
        "lambda_initial", max(((topo.rows - 1) + (topo.cols - 1)) / 2.0, 0.5)
    )
    cfg = SomConfig(
        topology=topo,
        lambda_initial=lam_i,
        dissimilarity=dissimilarity,
        rng_seed=rng_seed,
        **overrides,
    )
    return cfg


def temperature(t: float, cfg: SomConfig) -> float:
    """Geometric interpolation from the initial to the final temperature."""
    if not 0 <= t <= cfg.t_max:
        raise ValueError(f"iteration {t} outside [0, {cfg.t_max}]")
    return cfg.lambda_initial * (cfg.lambda_final / cfg.lambda_initial) ** (
        t / cfg.t_max
    )


def neighborhood_kernel(i: int, j: int, t: float, cfg: SomConfig) -> float:
    """Kernel weight between two neurons at iteration ``t``."""
    lam = temperature(t, cfg)
    d = grid_distance(i, j, cfg.topology)
    return math.exp(-(d * d) / (lam * lam)) / lam


def _kernel_matrix(grid_d: np.ndarray, lam: float) -> np.ndarray:
    return np.exp(-(grid_d * grid_d) / (lam * lam)) / lam


@dataclass(frozen=True)
class SomMap:
    """A trained (or initialized) map.

    ``proto`` holds the prototypes on the dataset's quantile grid; use
    :attr:`prototypes` to materialize them as observation vectors.
    ``bmu_of`` is the final assignment of the training data.
    """

    config: SomConfig
    dissimilarity: Dissimilarity
    proto: AlignedDataset
    bmu_of: np.ndarray
    cost_history: tuple[float, ...] = field(default=())

    @property
    def size(self) -> int:
        return self.config.topology.size

    @property
    def prototypes(self) -> list[ObservationVector]:
        return self.proto.observations()

    def prototype(self, i: int) -> ObservationVector:
        return self.proto.observation(i)


def _assign(diss: Dissimilarity, proto_e: np.ndarray, data_e: np.ndarray) -> np.ndarray:
    # argmin breaks ties toward the lowest neuron index
    return np.argmin(diss.cross(data_e, proto_e), axis=1)


def _init_prototypes(
    data: AlignedDataset, m: int, rng: np.random.Generator
) -> AlignedDataset:
    n = data.n
    if m <= n:
        idx = rng.choice(n, size=m, replace=False)
        return data.take(idx)
    extra = rng.choice(n, size=m - n, replace=True)
    centers = np.vstack([data.centers, data.centers[extra]])
    radii = np.vstack([data.radii, data.radii[extra]])
    # jitter the copies by a per-variable constant so they stay valid histograms
    shifts = rng.uniform(-0.01, 0.01, size=(m - n, data.dimension))
    for v, sl in enumerate(data.var_slices):
        lo = float(np.min(data.centers[:, sl] - data.radii[:, sl]))
        hi = float(np.max(data.centers[:, sl] + data.radii[:, sl]))
        centers[n:, sl] += shifts[:, v][:, None] * (hi - lo)
    return data.replace(centers, radii)


def train(
    data: Sequence[ObservationVector],
    cfg: SomConfig,
    dissimilarity: Dissimilarity | None = None,
) -> SomMap:
    """Run the batch training loop and return the final map.

    Deterministic given the config (seed included) and the data.  If
    ``dissimilarity`` is given it overrides the configured kind (used to
    inject rescaled variants); prototypes are always updated as Wasserstein
    barycenters regardless of the dissimilarity steering BMU search.
    """
    observations = list(data)
    if not observations:
        raise ValueError("empty dataset")
    diss = dissimilarity if dissimilarity is not None else Dissimilarity(cfg.dissimilarity)
    aligned = AlignedDataset.align(observations)
    m = cfg.topology.size
    rng = np.random.default_rng(cfg.rng_seed)
    proto = _init_prototypes(aligned, m, rng)

    grid_d = cfg.topology.manhattan_matrix()
    data_e = diss.embed(aligned)
    bmu = _assign(diss, diss.embed(proto), data_e)
    history: list[float] = []
    for t in range(1, cfg.t_max + 1):
        lam = temperature(t, cfg)
        kern = _kernel_matrix(grid_d, lam)
        proto = _adapt(proto, aligned, kern, bmu)
        proto_e = diss.embed(proto)
        d2 = diss.cross(data_e, proto_e)
        bmu = np.argmin(d2, axis=1)
        history.append(float((kern[:, bmu] * d2.T).sum()))
    return SomMap(cfg, diss, proto, bmu, tuple(history))


def _adapt(
    proto: AlignedDataset,
    data: AlignedDataset,
    kern: np.ndarray,
    bmu: np.ndarray,
) -> AlignedDataset:
    w = kern[:, bmu]  # (M, N): weight of datum k in prototype i's barycenter
    denom = w.sum(axis=1)
    live = denom > 0.0  # fully underflowed rows keep their prototype
    centers = proto.centers.copy()
    radii = proto.radii.copy()
    centers[live] = (w[live] @ data.centers) / denom[live, None]
    radii[live] = (w[live] @ data.radii) / denom[live, None]
    return proto.replace(centers, radii)


def _with_data(som: SomMap, data: Sequence[ObservationVector]):
    proto, aligned = som.proto.refit(list(data))
    return proto, aligned


def find_bmu(x: ObservationVector, som: SomMap) -> int:
    """Index of the prototype minimizing the map's dissimilarity to ``x``."""
    proto, xa = _with_data(som, [x])
    d2 = som.dissimilarity.cross(
        som.dissimilarity.embed(xa), som.dissimilarity.embed(proto)
    )
    return int(np.argmin(d2[0]))


def batch_update(som: SomMap, data: Sequence[ObservationVector], t: float) -> SomMap:
    """One adaptation step at iteration ``t``; BMUs are reassigned after it."""
    if not 0 <= t <= som.config.t_max:
        raise ValueError(f"iteration {t} outside [0, {som.config.t_max}]")
    proto, aligned = _with_data(som, data)
    diss = som.dissimilarity
    data_e = diss.embed(aligned)
    bmu = _assign(diss, diss.embed(proto), data_e)
    kern = _kernel_matrix(
        som.config.topology.manhattan_matrix(), temperature(t, som.config)
    )
    proto = _adapt(proto, aligned, kern, bmu)
    bmu = _assign(diss, diss.embed(proto), data_e)
    return replace(som, proto=proto, bmu_of=bmu)


def cost(som: SomMap, data: Sequence[ObservationVector], t: float | None = None) -> float:
    """Kernel-weighted sum of squared dissimilarities to all prototypes.

    Every datum contributes through all neurons, weighted by the kernel
    between each neuron and the datum's BMU, at the temperature of
    iteration ``t`` (defaults to the final one).
    """
    proto, aligned = _with_data(som, data)
    diss = som.dissimilarity
    data_e = diss.embed(aligned)
    proto_e = diss.embed(proto)
    d2 = diss.cross(data_e, proto_e)  # (N, M)
    bmu = np.argmin(d2, axis=1)
    lam = temperature(som.config.t_max if t is None else t, som.config)
    kern = _kernel_matrix(som.config.topology.manhattan_matrix(), lam)
    return float((kern[:, bmu] * d2.T).sum())
