"""Two-level clustering with automatic cluster-count detection.
================================================================

The pipeline trains a map, enriches it with local densities and
connectivity counts, and segments the prototypes into clusters separated
by connectivity breaks or density valleys.  Nobody tells it how many
clusters to find.
"""

import numpy as np

from histosom import (
    adjusted_rand,
    benchmark_spec,
    connected_components,
    generate,
    nmi,
    run_pipeline,
    v_measure,
)

data = generate(benchmark_spec(1, seed=1))
print(f"ground truth: {data.spec.n_clusters} clusters "
      f"(levels {np.round(sorted(data.cluster_levels), 2)})")

result = run_pipeline(list(data.observations), seed=1)

print(f"detected     : {result.clusters.n_clusters} clusters")
print(f"ARI          : {adjusted_rand(result.clusters.data_label, data.labels):.3f}")
print(f"NMI          : {nmi(result.clusters.data_label, data.labels):.3f}")
print(f"V-measure    : {v_measure(result.clusters.data_label, data.labels):.3f}")

# the ingredients the segmentation works from
enriched = result.enriched
print(f"\ndensity bandwidth (nearest-prototype heuristic): {enriched.bandwidth:.4f}")
print(f"density range over neurons: {enriched.densities.min():.4f} "
      f"to {enriched.densities.max():.4f}")
components = connected_components(enriched)
occupied = [c for c in components if len(c) > 1]
print(f"connectivity components: {len(components)} "
      f"({len(occupied)} with more than one neuron)")

sizes = np.bincount(result.clusters.data_label)
print(f"cluster sizes: {sizes.tolist()}")
