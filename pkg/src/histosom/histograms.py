"""Histogram-valued data: bins, quantile profiles, homogenization.

A histogram value is an ordered sequence of disjoint intervals (bins) with
positive weights summing to one.  Under a uniform density inside each bin
the value is equivalent to a piecewise linear quantile function; most of
the numerical machinery in this package works on that form, where each
piece is described by the center and the radius of its support interval.

The module provides the value types (:class:`Histogram`,
:class:`QuantileProfile`, :class:`ObservationVector`), equi-depth binning
of raw samples, pairwise homogenization onto a shared set of cut points,
and :class:`AlignedDataset`, the matrix layout used by the distance and
map-training code.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "Bin",
    "Histogram",
    "QuantileProfile",
    "ObservationVector",
    "AlignedDataset",
    "build_equidepth",
    "to_quantile_profile",
    "homogenize",
]

# Tolerance for the sum-of-weights invariant at construction time.
WEIGHT_SUM_TOL = 1e-9
# Relative tolerance for bin ordering checks (float noise from averaging).
_ORDER_TOL = 1e-9


class Bin(NamedTuple):
    """One weighted interval of a histogram."""

    lower: float
    upper: float
    weight: float


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class Histogram:
    """Weighted sequence of disjoint intervals.

    Parameters
    ----------
    bins : iterable of (lower, upper, weight)
        Ordered, non-overlapping intervals with positive weights summing
        to one.  Degenerate bins (``lower == upper``) are allowed, as are
        gaps between consecutive bins.

    Examples
    --------
    >>> h = Histogram([(0.0, 1.0, 0.5), (1.0, 3.0, 0.5)])
    >>> h.nbins
    2
    >>> round(h.mean, 3)
    1.25
    """

    __slots__ = ("_lowers", "_uppers", "_weights")

    def __init__(self, bins: Iterable[Bin | Sequence[float]]):
        rows = [(float(l), float(u), float(w)) for (l, u, w) in bins]
        if not rows:
            raise ValueError("histogram needs at least one bin")
        lowers = np.array([r[0] for r in rows], dtype=np.float64)
        uppers = np.array([r[1] for r in rows], dtype=np.float64)
        weights = np.array([r[2] for r in rows], dtype=np.float64)

        if not (np.all(np.isfinite(lowers)) and np.all(np.isfinite(uppers))):
            raise ValueError("bin bounds must be finite")
        if np.any(uppers < lowers):
            raise ValueError("bin upper bound below its lower bound")
        span = max(1.0, float(np.max(np.abs(lowers))), float(np.max(np.abs(uppers))))
        if lowers.size > 1 and np.any(uppers[:-1] > lowers[1:] + _ORDER_TOL * span):
            raise ValueError("bins must be ordered and non-overlapping")
        if np.any(weights <= 0.0) or not np.all(np.isfinite(weights)):
            raise ValueError("bin weights must be positive")
        total = float(weights.sum())
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"bin weights must sum to 1 (got {total!r})")

        self._lowers = _readonly(lowers)
        self._uppers = _readonly(uppers)
        self._weights = _readonly(weights)

    # --- accessors --------------------------------------------------------

    @property
    def lowers(self) -> np.ndarray:
        return self._lowers

    @property
    def uppers(self) -> np.ndarray:
        return self._uppers

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def nbins(self) -> int:
        return self._weights.shape[0]

    @property
    def bins(self) -> tuple[Bin, ...]:
        return tuple(
            Bin(float(l), float(u), float(w))
            for l, u, w in zip(self._lowers, self._uppers, self._weights)
        )

    @property
    def support(self) -> tuple[float, float]:
        """Smallest and largest value carrying mass."""
        return float(self._lowers[0]), float(self._uppers[-1])

    # --- moments under the uniform-within-bin model -------------------------

    @property
    def mean(self) -> float:
        centers = 0.5 * (self._lowers + self._uppers)
        return float(self._weights @ centers)

    @property
    def variance(self) -> float:
        centers = 0.5 * (self._lowers + self._uppers)
        radii = 0.5 * (self._uppers - self._lowers)
        second = self._weights @ (centers * centers + radii * radii / 3.0)
        return max(float(second) - self.mean**2, 0.0)

    @property
    def std(self) -> float:
        return self.variance**0.5

    @property
    def skewness(self) -> float:
        """Standardized third central moment; 0.0 for a degenerate value."""
        l, u, w = self._lowers, self._uppers, self._weights
        # E[X^3] of a uniform on [l, u] is (l^3 + l^2 u + l u^2 + u^3) / 4.
        third = w @ ((l**3 + l**2 * u + l * u**2 + u**3) / 4.0)
        mu = self.mean
        var = self.variance
        if var == 0.0:
            return 0.0
        central = float(third) - 3.0 * mu * var - mu**3
        return central / var**1.5

    # --- dunder -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Histogram):
            return NotImplemented
        return (
            np.array_equal(self._lowers, other._lowers)
            and np.array_equal(self._uppers, other._uppers)
            and np.array_equal(self._weights, other._weights)
        )

    def __hash__(self) -> int:
        return hash(
            (self._lowers.tobytes(), self._uppers.tobytes(), self._weights.tobytes())
        )

    def __repr__(self) -> str:
        lo, hi = self.support
        return f"Histogram(nbins={self.nbins}, support=({lo:.6g}, {hi:.6g}))"


@dataclass(frozen=True)
class QuantileProfile:
    """Piecewise linear quantile function of a histogram.

    ``cut_points`` are the cumulated weights ``0 = q_0 < q_1 < ... < q_h = 1``;
    on the piece ``(q_{v-1}, q_v)`` the quantile function is the line through
    the interval ``[center_v - radius_v, center_v + radius_v]``.
    """

    cut_points: np.ndarray
    centers: np.ndarray
    radii: np.ndarray

    def __post_init__(self) -> None:
        cuts = np.asarray(self.cut_points, dtype=np.float64)
        centers = np.asarray(self.centers, dtype=np.float64)
        radii = np.asarray(self.radii, dtype=np.float64)
        if cuts.ndim != 1 or cuts.size < 2:
            raise ValueError("cut points must be a 1-D array of length >= 2")
        if centers.shape != radii.shape or centers.shape != (cuts.size - 1,):
            raise ValueError("centers and radii must have one entry per piece")
        if np.any(np.diff(cuts) <= 0.0):
            raise ValueError("cut points must be strictly increasing")
        if np.any(radii < -1e-12):
            raise ValueError("piece radii must be nonnegative")
        radii = np.maximum(radii, 0.0)
        # Reconstructed quantile function must be non-decreasing across pieces.
        hi = centers[:-1] + radii[:-1]
        lo = centers[1:] - radii[1:]
        span = max(1.0, float(np.max(np.abs(centers))) + float(np.max(radii)))
        if hi.size and np.any(hi > lo + _ORDER_TOL * span):
            raise ValueError("quantile function would be decreasing")
        object.__setattr__(self, "cut_points", _readonly(cuts))
        object.__setattr__(self, "centers", _readonly(centers))
        object.__setattr__(self, "radii", _readonly(radii))

    @property
    def npieces(self) -> int:
        return self.centers.shape[0]

    @property
    def piece_weights(self) -> np.ndarray:
        return np.diff(self.cut_points)

    def evaluate(self, s) -> np.ndarray:
        """Quantile values at probability levels ``s`` (right-continuous)."""
        s = np.asarray(s, dtype=np.float64)
        idx = np.searchsorted(self.cut_points, s, side="right") - 1
        idx = np.clip(idx, 0, self.npieces - 1)
        width = self.cut_points[idx + 1] - self.cut_points[idx]
        t = (s - self.cut_points[idx]) / width
        return self.centers[idx] + self.radii[idx] * (2.0 * t - 1.0)

    def to_histogram(self) -> Histogram:
        lowers = self.centers - self.radii
        uppers = self.centers + self.radii
        return Histogram(zip(lowers, uppers, self.piece_weights))


class ObservationVector:
    """One individual described by ``d`` histogram variables."""

    __slots__ = ("_variables",)

    def __init__(self, variables: Iterable[Histogram]):
        vs = tuple(variables)
        if not vs:
            raise ValueError("an observation needs at least one variable")
        for v in vs:
            if not isinstance(v, Histogram):
                raise TypeError("observation variables must be Histogram values")
        self._variables = vs

    @property
    def variables(self) -> tuple[Histogram, ...]:
        return self._variables

    @property
    def dimension(self) -> int:
        return len(self._variables)

    def __len__(self) -> int:
        return len(self._variables)

    def __iter__(self):
        return iter(self._variables)

    def __getitem__(self, i: int) -> Histogram:
        return self._variables[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ObservationVector):
            return NotImplemented
        return self._variables == other._variables

    def __hash__(self) -> int:
        return hash(self._variables)

    def __repr__(self) -> str:
        return f"ObservationVector(d={self.dimension})"


# --- construction from raw samples ------------------------------------------


def build_equidepth(samples, h: int) -> Histogram:
    """Bin raw samples into ``h`` equal-weight bins bounded by quantiles.

    The bound at level ``j/h`` is the order statistic of rank
    ``ceil(n * j / h)`` (the smallest sample for ``j = 0``), so bounds are
    actual sample values.  Ties may produce degenerate bins.
    """
    xs = np.sort(np.asarray(samples, dtype=np.float64).ravel())
    if xs.size == 0:
        raise ValueError("empty input")
    if h < 1:
        raise ValueError("invalid bin count")
    if not np.all(np.isfinite(xs)):
        raise ValueError("samples must be finite")
    n = xs.size
    ranks = np.maximum((n * np.arange(h + 1) + h - 1) // h, 1) - 1
    bounds = xs[ranks]
    w = 1.0 / h
    return Histogram((bounds[v], bounds[v + 1], w) for v in range(h))


def to_quantile_profile(x: Histogram) -> QuantileProfile:
    """Center/radius form of the quantile function of ``x``."""
    cuts = np.empty(x.nbins + 1, dtype=np.float64)
    cuts[0] = 0.0
    np.cumsum(x.weights, out=cuts[1:])
    cuts[-1] = 1.0  # sum of weights is 1 within tolerance; pin the endpoint
    centers = 0.5 * (x.lowers + x.uppers)
    radii = 0.5 * (x.uppers - x.lowers)
    return QuantileProfile(cuts, centers, radii)


# --- homogenization -----------------------------------------------------------


def _union_cuts(cut_arrays: Sequence[np.ndarray]) -> np.ndarray:
    cuts = np.unique(np.concatenate([np.asarray(c) for c in cut_arrays]))
    cuts[0] = 0.0
    cuts[-1] = 1.0
    return cuts


def _reprofile(
    old_cuts: np.ndarray,
    centers: np.ndarray,
    radii: np.ndarray,
    new_cuts: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Re-express pieces on a refinement of the original cut set.

    ``centers`` and ``radii`` may be 1-D (one profile) or 2-D with one row
    per profile sharing ``old_cuts``.  Exact when ``new_cuts`` contains the
    original cuts: each new piece lies inside one original piece, where the
    quantile function is a line.
    """
    idx = np.searchsorted(old_cuts, new_cuts[:-1], side="right") - 1
    idx = np.clip(idx, 0, old_cuts.size - 2)
    width = old_cuts[idx + 1] - old_cuts[idx]
    t0 = (new_cuts[:-1] - old_cuts[idx]) / width
    t1 = (new_cuts[1:] - old_cuts[idx]) / width
    c = centers[..., idx]
    r = radii[..., idx]
    q0 = c + r * (2.0 * t0 - 1.0)
    q1 = c + r * (2.0 * t1 - 1.0)
    return 0.5 * (q0 + q1), np.maximum(0.5 * (q1 - q0), 0.0)


def homogenize(
    a: QuantileProfile, b: QuantileProfile
) -> tuple[QuantileProfile, QuantileProfile]:
    """Re-express two profiles on the union of their cut points.

    The quantile functions are unchanged as functions on [0, 1]; only the
    piece decomposition is refined so the two profiles can be compared
    piece by piece.
    """
    cuts = _union_cuts([a.cut_points, b.cut_points])
    ca, ra = _reprofile(a.cut_points, a.centers, a.radii, cuts)
    cb, rb = _reprofile(b.cut_points, b.centers, b.radii, cuts)
    return QuantileProfile(cuts, ca, ra), QuantileProfile(cuts, cb, rb)


# --- dataset alignment ---------------------------------------------------------


@dataclass(frozen=True)
class AlignedDataset:
    """Observations homogenized per variable onto shared cut points.

    ``centers`` and ``radii`` hold one row per observation; columns are the
    pieces of all variables concatenated in order.  This is the layout the
    distance, barycenter and map-training code operates on.
    """

    cuts: tuple[np.ndarray, ...]
    centers: np.ndarray
    radii: np.ndarray

    def __post_init__(self) -> None:
        total = sum(c.size - 1 for c in self.cuts)
        if self.centers.shape != self.radii.shape or self.centers.shape[-1] != total:
            raise ValueError("piece matrix does not match the cut grid")

    # --- structure ----------------------------------------------------------

    @property
    def n(self) -> int:
        return self.centers.shape[0]

    @property
    def dimension(self) -> int:
        return len(self.cuts)

    @property
    def var_slices(self) -> tuple[slice, ...]:
        slices = []
        start = 0
        for c in self.cuts:
            k = c.size - 1
            slices.append(slice(start, start + k))
            start += k
        return tuple(slices)

    @property
    def piece_weights(self) -> np.ndarray:
        return np.concatenate([np.diff(c) for c in self.cuts])

    # --- construction ---------------------------------------------------------

    @classmethod
    def align(cls, observations: Sequence[ObservationVector]) -> "AlignedDataset":
        obs = list(observations)
        if not obs:
            raise ValueError("cannot align an empty dataset")
        d = obs[0].dimension
        for o in obs:
            if o.dimension != d:
                raise ValueError("observations have inconsistent dimensions")
        cuts: list[np.ndarray] = []
        cols_c: list[np.ndarray] = []
        cols_r: list[np.ndarray] = []
        for v in range(d):
            profiles = [to_quantile_profile(o[v]) for o in obs]
            u = _union_cuts([p.cut_points for p in profiles])
            c_rows = np.empty((len(obs), u.size - 1))
            r_rows = np.empty_like(c_rows)
            for i, p in enumerate(profiles):
                c_rows[i], r_rows[i] = _reprofile(p.cut_points, p.centers, p.radii, u)
            cuts.append(_readonly(u))
            cols_c.append(c_rows)
            cols_r.append(r_rows)
        return cls(tuple(cuts), np.hstack(cols_c), np.hstack(cols_r))

    def refit(self, others: Sequence[ObservationVector]) -> tuple["AlignedDataset", "AlignedDataset"]:
        """Join with extra observations on a common refined grid.

        Returns ``(self on the refined grid, others on the refined grid)``.
        """
        other = AlignedDataset.align(others)
        if other.dimension != self.dimension:
            raise ValueError("observations have inconsistent dimensions")
        new_cuts = tuple(
            _union_cuts([a, b]) for a, b in zip(self.cuts, other.cuts)
        )
        return self.reproject(new_cuts), other.reproject(new_cuts)

    def reproject(self, new_cuts: Sequence[np.ndarray]) -> "AlignedDataset":
        """Re-express all rows on a refinement of the current grid."""
        cols_c: list[np.ndarray] = []
        cols_r: list[np.ndarray] = []
        for old, new, sl in zip(self.cuts, new_cuts, self.var_slices):
            c, r = _reprofile(old, self.centers[:, sl], self.radii[:, sl], new)
            cols_c.append(c)
            cols_r.append(r)
        return AlignedDataset(
            tuple(_readonly(np.asarray(c)) for c in new_cuts),
            np.hstack(cols_c),
            np.hstack(cols_r),
        )

    def replace(self, centers: np.ndarray, radii: np.ndarray) -> "AlignedDataset":
        """Same grid, new piece matrices."""
        return AlignedDataset(self.cuts, centers, radii)

    def take(self, indices) -> "AlignedDataset":
        return AlignedDataset(self.cuts, self.centers[indices], self.radii[indices])

    # --- reconstruction --------------------------------------------------------

    def observation(self, i: int) -> ObservationVector:
        hists = []
        for cuts, sl in zip(self.cuts, self.var_slices):
            profile = QuantileProfile(cuts, self.centers[i, sl], self.radii[i, sl])
            hists.append(profile.to_histogram())
        return ObservationVector(hists)

    def observations(self) -> list[ObservationVector]:
        return [self.observation(i) for i in range(self.n)]
