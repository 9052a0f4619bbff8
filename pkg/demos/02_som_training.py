"""Batch self-organizing map on histogram data.
================================================

Train a small map, watch the cost settle, and inspect how observations
distribute over the neurons.
"""

import collections

import numpy as np

from histosom import GridTopology, SomConfig, cost, find_bmu, generate, benchmark_spec, train

data = generate(benchmark_spec(1, seed=4, n_per_cluster=40))
observations = list(data.observations)
print(f"dataset: N={data.n}, d={data.spec.dimension}, k={data.spec.n_clusters}")

cfg = SomConfig(
    topology=GridTopology(6, 6),
    lambda_initial=5.0,
    lambda_final=0.3,
    t_max=40,
    rng_seed=1,
)
som = train(observations, cfg)

print("\ncost during training (every 5th iteration):")
for t, value in enumerate(som.cost_history[::5]):
    print(f"  t={5 * t + 1:>3}  cost={value:10.3f}")
print(f"final cost: {cost(som, observations):.3f}")

# occupancy: how many observations each neuron represents
occupancy = collections.Counter(som.bmu_of.tolist())
grid = np.zeros((6, 6), dtype=int)
for neuron, n in occupancy.items():
    grid[divmod(neuron, 6)] = n
print("\nobservations per neuron:")
print(grid)

# a fresh observation lands on the neuron with the closest prototype
probe = observations[0]
print(f"\nBMU of the first observation: neuron {find_bmu(probe, som)}")
