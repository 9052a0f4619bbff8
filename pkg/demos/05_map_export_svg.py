"""Rendering a clustered map as a hexagonal SVG tiling.
========================================================

Runs the pipeline, serializes the map document, and renders it with the
optional layers: per-variable prototype histogram panels, per-tile
observation counts, and the trajectory of a sequence of observations.
"""

import os

from histosom import benchmark_spec, generate, run_pipeline
from histosom.dataio import load_map, save_map
from histosom.hexmap import render_map_svg

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

data = generate(benchmark_spec(1, seed=5, n_per_cluster=60))
result = run_pipeline(list(data.observations), seed=5)
ids = list(range(data.n))

map_path = os.path.join(OUT, "map.json")
save_map(map_path, result.enriched, result.clusters, ids)
doc = load_map(map_path)
print(f"map document: {doc['rows']}x{doc['cols']} neurons, "
      f"{doc['n_clusters']} clusters -> {map_path}")

# cluster coloring only
with open(os.path.join(OUT, "clusters.svg"), "w") as fh:
    fh.write(render_map_svg(doc))

# add per-variable prototype histograms and the observation counts
with open(os.path.join(OUT, "clusters_panels.svg"), "w") as fh:
    fh.write(render_map_svg(doc, panels=True, counts=True))

# follow a handful of observations across the map
trajectory = [0, 60, 120, 179]
with open(os.path.join(OUT, "trajectory.svg"), "w") as fh:
    fh.write(render_map_svg(doc, trajectory=trajectory))

print("wrote clusters.svg, clusters_panels.svg, trajectory.svg to", OUT)
