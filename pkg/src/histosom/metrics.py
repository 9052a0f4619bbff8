"""External clustering validation indices (ARI, NMI, V-measure).

All three compare a predicted partition against a reference one and are
invariant under relabeling of either side.  The adjusted Rand index is
computed in exact integer arithmetic with a single final division;
entropies use natural logarithms (they cancel in every ratio).
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["contingency_table", "adjusted_rand", "nmi", "v_measure"]


def _as_codes(labels) -> np.ndarray:
    arr = np.asarray(labels).ravel()
    if arr.size == 0:
        raise ValueError("empty labeling")
    return np.unique(arr, return_inverse=True)[1]


def contingency_table(pred, truth) -> np.ndarray:
    """Co-occurrence counts between predicted and reference labels."""
    p = _as_codes(pred)
    t = _as_codes(truth)
    if p.size != t.size:
        raise ValueError("label vectors must have the same length")
    table = np.zeros((p.max() + 1, t.max() + 1), dtype=np.int64)
    np.add.at(table, (p, t), 1)
    return table


def adjusted_rand(pred, truth) -> float:
    """Chance-corrected pair-counting agreement in [-1, 1]."""
    table = contingency_table(pred, truth)
    n = int(table.sum())
    if n < 2:
        raise ValueError("need at least two observations")
    sum_cells = sum(math.comb(int(x), 2) for x in table.ravel())
    sum_rows = sum(math.comb(int(x), 2) for x in table.sum(axis=1))
    sum_cols = sum(math.comb(int(x), 2) for x in table.sum(axis=0))
    total = math.comb(n, 2)
    num = 2 * (sum_cells * total - sum_rows * sum_cols)
    den = total * (sum_rows + sum_cols) - 2 * sum_rows * sum_cols
    if den == 0:
        return 1.0  # both partitions degenerate in the same way
    return num / den


def _entropy(counts: np.ndarray, n: int) -> float:
    nz = counts[counts > 0]
    return float(sum((c / n) * math.log(n / c) for c in nz))


def _identical_partitions(table: np.ndarray) -> bool:
    # identical up to renaming: one nonzero per row and per column
    return (
        np.count_nonzero(table) == max(table.shape)
        and np.all((table > 0).sum(axis=0) <= 1)
        and np.all((table > 0).sum(axis=1) <= 1)
    )


def nmi(pred, truth) -> float:
    """Mutual information normalized by the geometric mean of entropies.

    If either partition has zero entropy the value is 1.0 when the
    partitions are identical and 0.0 otherwise.
    """
    table = contingency_table(pred, truth)
    n = int(table.sum())
    hp = _entropy(table.sum(axis=1), n)
    ht = _entropy(table.sum(axis=0), n)
    if _identical_partitions(table):
        return 1.0
    if hp == 0.0 or ht == 0.0:
        return 0.0
    rows = table.sum(axis=1)
    cols = table.sum(axis=0)
    info = 0.0
    for i, j in zip(*np.nonzero(table)):
        nij = int(table[i, j])
        info += (nij / n) * math.log((n * nij) / (int(rows[i]) * int(cols[j])))
    return min(max(info / math.sqrt(hp * ht), 0.0), 1.0)


def v_measure(pred, truth) -> float:
    """Harmonic mean of homogeneity and completeness."""
    table = contingency_table(pred, truth)
    n = int(table.sum())
    rows = table.sum(axis=1)  # predicted cluster sizes
    cols = table.sum(axis=0)  # reference cluster sizes
    ht = _entropy(cols, n)
    hp = _entropy(rows, n)

    h_truth_given_pred = 0.0
    h_pred_given_truth = 0.0
    for i, j in zip(*np.nonzero(table)):
        nij = int(table[i, j])
        h_truth_given_pred += (nij / n) * math.log(int(rows[i]) / nij)
        h_pred_given_truth += (nij / n) * math.log(int(cols[j]) / nij)

    homogeneity = 1.0 if ht == 0.0 else 1.0 - h_truth_given_pred / ht
    completeness = 1.0 if hp == 0.0 else 1.0 - h_pred_given_truth / hp
    if homogeneity + completeness == 0.0:
        return 0.0
    return 2.0 * homogeneity * completeness / (homogeneity + completeness)
