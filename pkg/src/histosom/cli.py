"""Command-line pipeline: gen, cluster, eval, export-map.

Exit codes: 0 success, 1 usage error, 2 malformed input, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import dataio
from .datagen import DatasetSpec, benchmark_spec, generate
from .hexmap import render_map_svg
from .metrics import adjusted_rand, nmi, v_measure
from .pipeline import run_pipeline
from .som import default_config
from .wasserstein import DISSIMILARITIES


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="histosom", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a labeled benchmark dataset")
    gen.add_argument("--db", type=int, help="benchmark preset 1..6")
    gen.add_argument("--dimension", type=int, help="histogram variables per observation")
    gen.add_argument("--clusters", type=int, help="number of clusters")
    gen.add_argument("--varying", choices=("mean", "std", "shape"))
    gen.add_argument("--n-per-cluster", type=int, default=100)
    gen.add_argument("--samples", type=int, default=1000, help="raw draws per histogram")
    gen.add_argument("--bins", type=int, default=10)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output", required=True, help="dataset JSON path")

    clu = sub.add_parser("cluster", help="train, enrich and cluster a dataset")
    clu.add_argument("input", help="dataset JSON or raw-sample CSV")
    clu.add_argument("-o", "--output", default=".", help="output directory")
    clu.add_argument("--rows", type=int)
    clu.add_argument("--cols", type=int)
    clu.add_argument("--tmax", type=int)
    clu.add_argument("--lambda-i", type=float, dest="lambda_i")
    clu.add_argument("--lambda-f", type=float, dest="lambda_f")
    clu.add_argument("--sigma", type=float, help="density bandwidth override")
    clu.add_argument("--dissimilarity", choices=DISSIMILARITIES, default="dW")
    clu.add_argument("--bins", type=int, default=10, help="bins for CSV ingestion")
    clu.add_argument("--seed", type=int, default=0)
    clu.add_argument("--format", choices=("json", "svg", "csv"), default="json",
                     help="svg additionally writes map.svg")

    ev = sub.add_parser("eval", help="score assignments against ground truth")
    ev.add_argument("assignments", help="assignment CSV from 'cluster'")
    ev.add_argument("truth", help="dataset JSON with labels, or CSV of id,label")

    exp = sub.add_parser("export-map", help="render a map JSON as SVG")
    exp.add_argument("map", help="map JSON from 'cluster'")
    exp.add_argument("-o", "--output", required=True, help="SVG path")
    exp.add_argument("--format", choices=("svg",), default="svg")
    exp.add_argument("--panels", action="store_true",
                     help="add per-variable prototype histogram panels")
    exp.add_argument("--counts", action="store_true",
                     help="overlay per-tile observation counts")
    exp.add_argument("--trajectory", help="comma-separated observation ids")
    return parser


def _cmd_gen(args) -> int:
    if args.db is not None:
        if args.db not in range(1, 7):
            raise UsageError(f"--db must be 1..6, got {args.db}")
        spec = benchmark_spec(
            args.db,
            seed=args.seed,
            n_per_cluster=args.n_per_cluster,
            samples_per_histogram=args.samples,
            bins=args.bins,
        )
    else:
        if args.dimension is None or args.clusters is None or args.varying is None:
            raise UsageError("either --db or --dimension/--clusters/--varying required")
        spec = DatasetSpec(
            dimension=args.dimension,
            n_clusters=args.clusters,
            varying=args.varying,
            n_per_cluster=args.n_per_cluster,
            samples_per_histogram=args.samples,
            bins=args.bins,
            seed=args.seed,
        )
    data = generate(spec)
    dataio.save_dataset(
        args.output, data.observations, labels=data.labels, bins=spec.bins
    )
    print(
        f"wrote {args.output}: N={data.n} d={spec.dimension} "
        f"k={spec.n_clusters} varying={spec.varying}"
    )
    return 0


def _cmd_cluster(args) -> int:
    if args.input.endswith(".csv"):
        ids, observations = dataio.load_samples_csv(args.input, bins=args.bins)
    else:
        observations, _labels, ids = dataio.load_dataset(args.input)

    overrides = {}
    if args.rows is not None:
        overrides["rows"] = args.rows
    if args.cols is not None:
        overrides["cols"] = args.cols
    if args.tmax is not None:
        overrides["t_max"] = args.tmax
    if args.lambda_i is not None:
        overrides["lambda_initial"] = args.lambda_i
    if args.lambda_f is not None:
        overrides["lambda_final"] = args.lambda_f
    config = default_config(
        len(observations), args.dissimilarity, args.seed, **overrides
    )
    result = run_pipeline(observations, config=config, sigma=args.sigma)

    os.makedirs(args.output, exist_ok=True)
    csv_path = os.path.join(args.output, "assignments.csv")
    map_path = os.path.join(args.output, "map.json")
    dataio.save_assignments(
        csv_path, ids, result.som.bmu_of, result.clusters.data_label
    )
    dataio.save_map(map_path, result.enriched, result.clusters, ids)
    if args.format == "svg":
        svg_path = os.path.join(args.output, "map.svg")
        with open(svg_path, "w", encoding="utf-8") as fh:
            fh.write(render_map_svg(dataio.load_map(map_path)))
    print(
        f"clustered {len(observations)} observations: "
        f"n_clusters={result.clusters.n_clusters} -> {csv_path}, {map_path}"
    )
    return 0


def _load_truth(path):
    if path.endswith(".json"):
        _obs, labels, ids = dataio.load_dataset(path)
        if labels is None:
            raise dataio.InputError(f"{path}: dataset has no labels")
        return {str(i): l for i, l in zip(ids, labels)}
    truth = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise dataio.InputError(f"{path}: empty truth file")
        for ln, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) < 2:
                raise dataio.InputError(f"{path}: line {ln}: expected id,label")
            truth[row[0]] = row[1]
    if not truth:
        raise dataio.InputError(f"{path}: no truth rows")
    return truth


def _cmd_eval(args) -> int:
    ids, _bmus, clusters = dataio.load_assignments(args.assignments)
    truth_by_id = _load_truth(args.truth)
    missing = [i for i in ids if str(i) not in truth_by_id]
    if missing:
        raise dataio.InputError(
            f"{args.truth}: missing ids {missing[:5]!r}"
            + ("..." if len(missing) > 5 else "")
        )
    truth = [truth_by_id[str(i)] for i in ids]
    scores = {
        "ari": adjusted_rand(clusters, truth),
        "nmi": nmi(clusters, truth),
        "v_measure": v_measure(clusters, truth),
        "n": len(ids),
    }
    print(json.dumps(scores))
    print(f"{'index':<12}value")
    for name, key in (("ARI", "ari"), ("NMI", "nmi"), ("V-measure", "v_measure")):
        print(f"{name:<12}{scores[key]:.4f}")
    return 0


def _cmd_export_map(args) -> int:
    doc = dataio.load_map(args.map)
    trajectory = None
    if args.trajectory:
        trajectory = [t.strip() for t in args.trajectory.split(",") if t.strip()]
    try:
        svg = render_map_svg(
            doc, panels=args.panels, counts=args.counts, trajectory=trajectory
        )
    except ValueError as exc:
        raise dataio.InputError(str(exc)) from exc
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {args.output}")
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "cluster": _cmd_cluster,
    "eval": _cmd_eval,
    "export-map": _cmd_export_map,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (dataio.InputError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # invariant violations and the like
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
