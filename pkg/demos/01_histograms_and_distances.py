"""Histogram values and the squared L2 Wasserstein distance.
=============================================================

Build histogram-valued observations from raw samples, look at their
quantile-function form, and compare them with the closed-form distance
and its center/radius decomposition.
"""

import numpy as np

from histosom import (
    ObservationVector,
    barycenter,
    build_equidepth,
    to_quantile_profile,
    total_inertia,
    wasserstein_components,
    wasserstein_sq,
)

rng = np.random.default_rng(0)

# Two sensors produce raw measurement streams; we keep only their
# distributional summaries as 10-bin equi-depth histograms.
calm = build_equidepth(rng.normal(10.0, 1.0, 2000), 10)
gusty = build_equidepth(rng.gamma(2.0, 2.0, 2000) + 6.0, 10)

print("calm sensor:  mean %.2f  std %.2f  skew %.2f" % (calm.mean, calm.std, calm.skewness))
print("gusty sensor: mean %.2f  std %.2f  skew %.2f" % (gusty.mean, gusty.std, gusty.skewness))

# Each histogram is a piecewise linear quantile function; pieces are
# described by the center and radius of their support interval.
profile = to_quantile_profile(calm)
print("\nquantile function of the calm sensor at the quartiles:")
for s in (0.25, 0.5, 0.75):
    print(f"  Q({s:.2f}) = {float(profile.evaluate(s)):.3f}")

# The squared Wasserstein distance splits into a location part (centers)
# and a dispersion/shape part (radii).
a = ObservationVector([calm])
b = ObservationVector([gusty])
d2 = wasserstein_sq(a, b)
center_part, radius_part = wasserstein_components(a, b)
print(f"\nsquared distance  : {d2:.4f}")
print(f"  center part     : {center_part:.4f}")
print(f"  radius part     : {radius_part:.4f}")

# The barycenter is the Frechet mean under this distance: per-piece means
# of centers and radii.  Total inertia is the spread around it.
group = [
    ObservationVector([build_equidepth(rng.normal(10.0, 1.0, 2000), 10)])
    for _ in range(20)
]
center = barycenter(group)
print(f"\nbarycenter mean of 20 calm sensors: {center[0].mean:.3f}")
print(f"total inertia of the group        : {total_inertia(group):.4f}")
