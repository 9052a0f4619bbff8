"""Shared builders and independent oracles used across the test modules."""

import numpy as np

from histosom import Histogram, ObservationVector


def random_histogram(rng, nbins=None, gaps=False, offset=0.0, scale=1.0):
    """Random valid histogram; with ``gaps`` the bins do not touch."""
    nb = int(nbins if nbins is not None else rng.integers(1, 8))
    weights = rng.dirichlet(np.full(nb, 2.0))
    if gaps:
        bounds = np.sort(rng.uniform(0.0, 10.0, size=2 * nb))
        lowers, uppers = bounds[0::2], bounds[1::2]
    else:
        bounds = np.sort(rng.uniform(0.0, 10.0, size=nb + 1))
        lowers, uppers = bounds[:-1], bounds[1:]
    return Histogram(
        zip(offset + scale * lowers, offset + scale * uppers, weights)
    )


def random_observation(rng, d=2, **kwargs):
    return ObservationVector([random_histogram(rng, **kwargs) for _ in range(d)])


def uniform_obs(lo, hi, d=1):
    """Observation whose variables are single-bin uniforms on [lo, hi]."""
    return ObservationVector([Histogram([(lo, hi, 1.0)]) for _ in range(d)])


def quantile_oracle(hist, s):
    """Reference quantile evaluation straight from the bins (scalar loop).

    Right-continuous at interior cut points, like the library.
    """
    bins = hist.bins
    cum = 0.0
    for i, (lower, upper, weight) in enumerate(bins):
        nxt = cum + weight
        if s < nxt or i == len(bins) - 1:
            t = (s - cum) / weight
            return lower + (upper - lower) * min(max(t, 0.0), 1.0)
        cum = nxt
    raise AssertionError("unreachable")


def wasserstein_oracle(a, b, npoints=200_000):
    """Trapezoid integration of the squared quantile difference.

    Independent of the library's representation: quantile functions are
    rebuilt from the raw bins via ``np.interp`` (valid for histograms with
    touching bins, where the quantile function is continuous).
    """
    total = 0.0
    grid = np.linspace(0.0, 1.0, npoints)
    for ha, hb in zip(a, b):
        qa = _interp_quantile(ha, grid)
        qb = _interp_quantile(hb, grid)
        total += np.trapezoid((qa - qb) ** 2, grid)
    return total


def _interp_quantile(hist, grid):
    xp = np.concatenate([[0.0], np.cumsum(hist.weights)])
    xp[-1] = 1.0
    fp = np.concatenate([[hist.bins[0].lower], hist.uppers])
    return np.interp(grid, xp, fp)
