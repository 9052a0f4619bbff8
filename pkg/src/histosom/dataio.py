"""File formats: dataset JSON, raw-sample CSV, assignment CSV, map JSON.

All floating point values are serialized with Python's shortest
round-tripping representation, so write -> read -> write is byte stable.
Structural problems in input files raise :class:`InputError` naming the
offending record and field.
"""

from __future__ import annotations

import csv
import json
from typing import Sequence

import numpy as np

from .clustering import ClusterResult
from .enrichment import EnrichedMap
from .histograms import Histogram, ObservationVector, build_equidepth

__all__ = [
    "InputError",
    "dataset_to_doc",
    "dataset_from_doc",
    "save_dataset",
    "load_dataset",
    "load_samples_csv",
    "save_assignments",
    "load_assignments",
    "map_to_doc",
    "save_map",
    "load_map",
]

# Ingested weights are renormalized when their sum is this close to 1.
INGEST_WEIGHT_TOL = 1e-6


class InputError(ValueError):
    """Malformed external input (file contents, not caller bugs)."""


def _histogram_to_doc(h: Histogram) -> list[dict]:
    return [
        {"lower": float(l), "upper": float(u), "weight": float(w)}
        for l, u, w in zip(h.lowers, h.uppers, h.weights)
    ]


def _histogram_from_doc(doc, where: str) -> Histogram:
    if not isinstance(doc, list) or not doc:
        raise InputError(f"{where}: expected a non-empty list of bins")
    rows = []
    for b, binspec in enumerate(doc):
        try:
            rows.append(
                (float(binspec["lower"]), float(binspec["upper"]), float(binspec["weight"]))
            )
        except (TypeError, KeyError, ValueError) as exc:
            raise InputError(f"{where}: bin {b} needs lower/upper/weight") from exc
    total = sum(r[2] for r in rows)
    if abs(total - 1.0) > INGEST_WEIGHT_TOL:
        raise InputError(f"{where}: bin weights sum to {total!r}, not 1")
    rows = [(l, u, w / total) for (l, u, w) in rows]
    try:
        return Histogram(rows)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from exc


def dataset_to_doc(
    observations: Sequence[ObservationVector],
    labels=None,
    ids: Sequence | None = None,
    bins: int | None = None,
) -> dict:
    observations = list(observations)
    if ids is None:
        ids = list(range(len(observations)))
    doc: dict = {"dimension": observations[0].dimension if observations else 0}
    if bins is not None:
        doc["bins"] = bins
    rows = []
    for k, obs in enumerate(observations):
        row: dict = {"id": ids[k]}
        if labels is not None:
            row["label"] = int(labels[k])
        row["variables"] = [_histogram_to_doc(h) for h in obs]
        rows.append(row)
    doc["observations"] = rows
    return doc


def dataset_from_doc(doc) -> tuple[list[ObservationVector], list | None, list]:
    """Returns (observations, labels or None, ids)."""
    if not isinstance(doc, dict) or "observations" not in doc:
        raise InputError("dataset document needs an 'observations' list")
    rows = doc["observations"]
    if not isinstance(rows, list) or not rows:
        raise InputError("'observations' must be a non-empty list")
    dim = doc.get("dimension")
    observations: list[ObservationVector] = []
    labels: list = []
    ids: list = []
    have_labels = all(isinstance(r, dict) and "label" in r for r in rows)
    for k, row in enumerate(rows):
        where = f"observations[{k}]"
        if not isinstance(row, dict) or "variables" not in row:
            raise InputError(f"{where}: needs a 'variables' list")
        ids.append(row.get("id", k))
        variables = row["variables"]
        if dim is not None and len(variables) != dim:
            raise InputError(
                f"{where}: has {len(variables)} variables, expected {dim}"
            )
        hists = [
            _histogram_from_doc(var, f"{where}.variables[{v}]")
            for v, var in enumerate(variables)
        ]
        observations.append(ObservationVector(hists))
        if have_labels:
            labels.append(row["label"])
    d0 = observations[0].dimension
    for k, obs in enumerate(observations):
        if obs.dimension != d0:
            raise InputError(f"observations[{k}]: dimension {obs.dimension} != {d0}")
    return observations, (labels if have_labels else None), ids


def save_dataset(path, observations, labels=None, ids=None, bins=None) -> None:
    doc = dataset_to_doc(observations, labels=labels, ids=ids, bins=bins)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_dataset(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    return dataset_from_doc(doc)


# --- raw samples ---------------------------------------------------------------


def load_samples_csv(path, bins: int = 10):
    """Ingest rows of (observation id, variable id, value) into histograms.

    Observations keep first-appearance order; variables are sorted by id
    (numerically when possible).  Every observation must cover the same
    set of variables.  Returns (ids, observations).
    """
    groups: dict = {}
    obs_order: list = []
    var_ids: set = set()
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        for ln, row in enumerate(reader, start=1):
            if not row or (ln == 1 and not _is_number(row[-1])):
                continue  # header or blank
            if len(row) < 3:
                raise InputError(f"{path}: line {ln}: expected id,variable,value")
            oid, vid, sval = row[0].strip(), row[1].strip(), row[2]
            try:
                value = float(sval)
            except ValueError as exc:
                raise InputError(
                    f"{path}: line {ln}: value {sval!r} is not a number"
                ) from exc
            if oid not in groups:
                groups[oid] = {}
                obs_order.append(oid)
            groups[oid].setdefault(vid, []).append(value)
            var_ids.add(vid)
    if not groups:
        raise InputError(f"{path}: no sample rows found")

    def _var_key(v):
        try:
            return (0, float(v), v)
        except ValueError:
            return (1, 0.0, v)

    variables = sorted(var_ids, key=_var_key)
    observations = []
    for oid in obs_order:
        hists = []
        for vid in variables:
            if vid not in groups[oid]:
                raise InputError(f"{path}: observation {oid!r} lacks variable {vid!r}")
            hists.append(build_equidepth(groups[oid][vid], bins))
        observations.append(ObservationVector(hists))
    return obs_order, observations


def _is_number(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


# --- assignments -----------------------------------------------------------------


def save_assignments(path, ids, bmus, clusters) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "bmu", "cluster"])
        for oid, b, c in zip(ids, bmus, clusters):
            writer.writerow([oid, int(b), int(c)])


def load_assignments(path):
    """Returns (ids, bmus, clusters)."""
    ids, bmus, clusters = [], [], []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:3]] != ["id", "bmu", "cluster"]:
            raise InputError(f"{path}: expected header id,bmu,cluster")
        for ln, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) < 3:
                raise InputError(f"{path}: line {ln}: expected id,bmu,cluster")
            try:
                ids.append(row[0])
                bmus.append(int(row[1]))
                clusters.append(int(row[2]))
            except ValueError as exc:
                raise InputError(f"{path}: line {ln}: {exc}") from exc
    if not ids:
        raise InputError(f"{path}: no assignment rows")
    return ids, bmus, clusters


# --- map document -----------------------------------------------------------------


def map_to_doc(
    enriched: EnrichedMap, clusters: ClusterResult, ids: Sequence
) -> dict:
    som = enriched.som
    cfg = som.config
    conn = enriched.connectivity
    pairs = [
        [int(i), int(j), int(conn[i, j])]
        for i, j in zip(*np.nonzero(conn))
        if i < j
    ]
    return {
        "rows": cfg.topology.rows,
        "cols": cfg.topology.cols,
        "dissimilarity": som.dissimilarity.kind,
        "config": {
            "lambda_initial": cfg.lambda_initial,
            "lambda_final": cfg.lambda_final,
            "t_max": cfg.t_max,
            "rng_seed": cfg.rng_seed,
        },
        "bandwidth": float(enriched.bandwidth),
        "n_clusters": clusters.n_clusters,
        "densities": [float(x) for x in enriched.densities],
        "connectivity": pairs,
        "neuron_label": [
            (int(l) if l is not None else None) for l in clusters.neuron_label
        ],
        "prototypes": [
            [_histogram_to_doc(h) for h in som.prototype(i)]
            for i in range(som.size)
        ],
        "assignments": [
            {"id": oid, "bmu": int(b), "cluster": int(c)}
            for oid, b, c in zip(ids, som.bmu_of, clusters.data_label)
        ],
    }


def save_map(path, enriched, clusters, ids) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(map_to_doc(enriched, clusters, ids), fh, indent=1)
        fh.write("\n")


def load_map(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    for key in ("rows", "cols", "neuron_label", "prototypes"):
        if key not in doc:
            raise InputError(f"{path}: map document lacks {key!r}")
    if len(doc["prototypes"]) != doc["rows"] * doc["cols"]:
        raise InputError(f"{path}: prototype count does not match the grid")
    return doc
