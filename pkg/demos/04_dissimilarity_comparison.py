"""What the reduced dissimilarities can and cannot see.
========================================================

The full Wasserstein distance uses the whole quantile function.  The
reduced variants throw information away: dM keeps only means, dS only
standard deviations, dC/dR only the center/radius channel, dI1/dI2 an
interval summary.  Running the same pipeline under each one on datasets
whose clusters differ in the mean, in the dispersion, or only in the
shape shows which signals each variant can exploit.
"""


from histosom import DatasetSpec, adjusted_rand, generate, run_pipeline

KINDS = ("dW", "dC", "dR", "dM", "dS", "dI1", "dI2")
CONFIGS = {
    "mean-separated": DatasetSpec(2, 3, "mean", seed=6),
    "std-separated": DatasetSpec(2, 3, "std", seed=6),
    "shape-separated": DatasetSpec(2, 3, "shape", seed=6),
}

print(f"{'dataset':<16}" + "".join(f"{k:>7}" for k in KINDS))
for name, spec in CONFIGS.items():
    data = generate(spec)
    row = []
    for kind in KINDS:
        res = run_pipeline(list(data.observations), dissimilarity=kind, seed=6)
        row.append(adjusted_rand(res.clusters.data_label, data.labels))
    print(f"{name:<16}" + "".join(f"{v:7.2f}" for v in row))

print("""
Reading the rows: a mean-only method scores well only on mean-separated
clusters, a std-only method only on dispersion-separated ones, and the
shape-separated dataset (same means, same standard deviations) is visible
only to dissimilarities that keep the full distributional information.
""")
