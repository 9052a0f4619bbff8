"""Segmentation of enriched prototypes into clusters.

The neuron graph has an edge wherever the connectivity count exceeds a
threshold (zero by default).  Its connected components are split further
by a watershed on the prototype densities: every neuron walks uphill to a
density maximum, which labels its micro-cluster.  Adjacent micro-clusters
are then merged when both border densities exceed the harmonic combination
of their peak densities, so only genuinely low-density valleys keep
clusters apart.  The number of clusters is whatever survives; it is never
an input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .enrichment import EnrichedMap

__all__ = [
    "MicroClusterState",
    "ClusterResult",
    "connected_components",
    "density_maxima",
    "merge_threshold",
    "gradient_labeling",
    "micro_clusters",
    "merge_microclusters",
    "cluster_prototypes",
]


class UnionFind:
    """Disjoint sets over 0..n-1 with the smallest member as representative."""

    def __init__(self, n: int):
        self._parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[i] != root:
            self._parent[i], i = root, self._parent[i]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if rb < ra:
            ra, rb = rb, ra
        self._parent[rb] = ra


def _adjacency(e: EnrichedMap, threshold: int) -> list[list[int]]:
    v = e.connectivity
    return [list(np.flatnonzero(v[i] > threshold)) for i in range(e.size)]


def connected_components(e: EnrichedMap, threshold: int = 0) -> list[list[int]]:
    """Maximal sets of neurons linked by connectivity above the threshold.

    Neurons without any such link form singleton components.  Components
    are sorted by their smallest member.
    """
    uf = UnionFind(e.size)
    rows, cols = np.nonzero(e.connectivity > threshold)
    for i, j in zip(rows, cols):
        if i < j:
            uf.union(int(i), int(j))
    groups: dict[int, list[int]] = {}
    for i in range(e.size):
        groups.setdefault(uf.find(i), []).append(i)
    return [groups[k] for k in sorted(groups)]


def density_maxima(component, e: EnrichedMap, threshold: int = 0) -> list[int]:
    """Neurons whose density is >= that of all their neighbors in the set.

    Plateaus are admitted: equal-density neighbors can both be maxima.  A
    singleton component is its own maximum.
    """
    comp = set(component)
    d = e.densities
    adj = _adjacency(e, threshold)
    out = []
    for i in sorted(comp):
        if all(d[i] >= d[j] for j in adj[i] if j in comp):
            out.append(i)
    return out


def merge_threshold(di: float, dj: float) -> float:
    """Harmonic combination of two peak densities; at most min(di, dj)."""
    if di <= 0.0 or dj <= 0.0:
        raise ValueError("densities must be positive")
    return 1.0 / (1.0 / di + 1.0 / dj)


def gradient_labeling(component, e: EnrichedMap, threshold: int = 0) -> dict[int, int]:
    """Label every neuron with the density maximum its uphill walk reaches.

    Each step moves to the highest-density neighbor if that is strictly
    denser than the current neuron (ties on the neighbor pick the lowest
    index); otherwise the walk stops at a maximum, which labels itself.
    """
    comp = set(component)
    d = e.densities
    adj = _adjacency(e, threshold)
    labels: dict[int, int] = {}
    for start in sorted(comp):
        path = []
        cur = start
        while cur not in labels:
            path.append(cur)
            nbrs = [j for j in adj[cur] if j in comp]
            if nbrs:
                dmax = max(d[j] for j in nbrs)
                if dmax > d[cur]:
                    cur = min(j for j in nbrs if d[j] == dmax)
                    continue
            labels[cur] = cur  # local maximum
        peak = labels[cur]
        for i in path:
            labels[i] = peak
    return labels


@dataclass(frozen=True)
class MicroClusterState:
    """Watershed result: components, per-neuron peak labels, peak lists."""

    component_of: np.ndarray
    label_of: np.ndarray
    maxima: tuple[tuple[int, ...], ...]


def micro_clusters(e: EnrichedMap, threshold: int = 0) -> MicroClusterState:
    comps = connected_components(e, threshold)
    component_of = np.empty(e.size, dtype=np.int64)
    label_of = np.empty(e.size, dtype=np.int64)
    maxima = []
    for ci, comp in enumerate(comps):
        component_of[comp] = ci
        maxima.append(tuple(density_maxima(comp, e, threshold)))
        for i, peak in gradient_labeling(comp, e, threshold).items():
            label_of[i] = peak
    return MicroClusterState(component_of, label_of, tuple(maxima))


def merge_microclusters(
    state: MicroClusterState, e: EnrichedMap, threshold: int = 0
) -> np.ndarray:
    """Merged micro-cluster id (a peak index) for every neuron.

    Every neighboring pair with different labels is tested against the
    harmonic combination of its two peak densities, using the original
    labels and densities; firing pairs are unioned transitively, so the
    result does not depend on evaluation order.
    """
    d = e.densities
    labels = state.label_of
    uf = UnionFind(e.size)
    rows, cols = np.nonzero(e.connectivity > threshold)
    for i, j in zip(rows, cols):
        if i >= j:
            continue
        li, lj = int(labels[i]), int(labels[j])
        if li == lj:
            continue
        s = merge_threshold(float(d[li]), float(d[lj]))
        if d[i] > s and d[j] > s:
            uf.union(li, lj)
    return np.array([uf.find(int(l)) for l in labels], dtype=np.int64)


@dataclass(frozen=True)
class ClusterResult:
    """Final clustering: per-neuron labels (None on data-free groups),
    induced per-observation labels, and the detected cluster count."""

    neuron_label: tuple
    data_label: np.ndarray
    n_clusters: int


def cluster_prototypes(e: EnrichedMap, threshold: int = 0) -> ClusterResult:
    """Full segmentation: components, watershed, merges, contiguous ids.

    Cluster ids 0..n_clusters-1 are assigned to merged groups holding at
    least one observation, in order of their smallest neuron index; groups
    without data stay unlabeled.  Observations inherit the label of their
    BMU.  Distinct connected components never merge.
    """
    state = micro_clusters(e, threshold)
    group_of = merge_microclusters(state, e, threshold)

    bmu = e.som.bmu_of
    data_count = np.bincount(bmu, minlength=e.size)
    group_count: dict[int, int] = {}
    first_member: dict[int, int] = {}
    for i in range(e.size):
        g = int(group_of[i])
        group_count[g] = group_count.get(g, 0) + int(data_count[i])
        first_member.setdefault(g, i)
    live = sorted(
        (g for g, c in group_count.items() if c > 0), key=first_member.__getitem__
    )
    cluster_id = {g: c for c, g in enumerate(live)}

    neuron_label = tuple(cluster_id.get(int(g)) for g in group_of)
    data_label = np.array([neuron_label[b] for b in bmu], dtype=np.int64)
    return ClusterResult(neuron_label, data_label, len(live))
