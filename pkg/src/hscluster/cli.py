"""Batch command-line interface.

Subcommands: cluster, evaluate, bench, consistency, generate, plot.  Every
command is deterministic given its flags (seeds included): reruns produce
byte-identical artifacts.  Exit codes: 0 success (consistency: check passed),
1 consistency check failed, 2 invalid flags, 3 data errors, 4 numerical
degeneracy (the message names the failing stage).
"""

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import __version__, consistency, dataio, metrics, pipelines, plotting
from .affinity import KernelKind, KernelSpec
from .errors import (
    DegenerateMetricError,
    HsclusterError,
    InvalidInputError,
    IsolatedVertexError,
    PipelineStageError,
)

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_BAD_FLAGS = 2
EXIT_DATA = 3
EXIT_DEGENERATE = 4

SCHEMA_VERSION = 1

_KERNEL_KINDS = {
    ("gaussian", True): KernelKind.GAUSSIAN_HYPERBOLIC,
    ("gaussian", False): KernelKind.GAUSSIAN_EUCLIDEAN,
    ("poisson", True): KernelKind.POISSON_HYPERBOLIC,
    ("poisson", False): KernelKind.POISSON_EUCLIDEAN,
}


class _CliError(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


def _json_value(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if math.isnan(value):
        return "nan"
    return value


def _run_report(args, dataset, result, eval_report, include_timings):
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "algorithm": args.algo,
        "kernel": args.kernel,
        "sigma": _json_value(args.sigma),
        "epsilon": _json_value(args.epsilon),
        "k": args.k,
        "m": args.m,
        "delta": _json_value(args.delta),
        "seed": args.seed,
        "dataset": dataset.name,
        "n_samples": dataset.n,
        "n_features": dataset.dim,
        "metrics": None if eval_report is None else {
            key: _json_value(val) for key, val in eval_report.to_dict().items()
        },
        "timings_ms": dict(result.timings_ms) if include_timings else None,
        "flags": list(result.flags),
    }


def _load_dataset(path, label_column=None):
    try:
        return dataio.load_csv(path, label_column=label_column)
    except FileNotFoundError as exc:
        raise _CliError(EXIT_DATA, f"cannot read {path}: {exc}") from exc
    except InvalidInputError as exc:
        raise _CliError(EXIT_DATA, str(exc)) from exc


def _pipeline_config(args, hyperbolic):
    kind = _KERNEL_KINDS[(args.kernel, hyperbolic)]
    try:
        kernel = KernelSpec(kind=kind, sigma=args.sigma, epsilon=args.epsilon)
        return pipelines.PipelineConfig(
            algorithm=args.algo,
            kernel=kernel,
            k=args.k,
            m=args.m,
            delta=args.delta,
            seed=args.seed,
        )
    except InvalidInputError as exc:
        raise _CliError(EXIT_BAD_FLAGS, str(exc)) from exc


def cmd_cluster(args):
    dataset = _load_dataset(args.input)
    if dataset.n < args.k:
        raise _CliError(EXIT_BAD_FLAGS, f"--k {args.k} exceeds dataset size {dataset.n}")
    hyperbolic = args.algo in ("hsca", "hlsc-k", "fhsc")
    cfg = _pipeline_config(args, hyperbolic)
    try:
        result = pipelines.run(dataset.points, cfg)
    except PipelineStageError as exc:
        raise _CliError(EXIT_DEGENERATE, str(exc)) from exc
    except (DegenerateMetricError, IsolatedVertexError) as exc:
        raise _CliError(EXIT_DEGENERATE, str(exc)) from exc
    except InvalidInputError as exc:
        raise _CliError(EXIT_BAD_FLAGS, str(exc)) from exc

    eval_report = None
    if dataset.labels is not None:
        eval_report = metrics.EvaluationReport(
            space="poincare" if hyperbolic else "euclidean",
            ari=metrics.ari(dataset.labels, result.labels),
            nmi=metrics.nmi(dataset.labels, result.labels),
        )
    if args.labels_out:
        dataio.save_labels(args.labels_out, result.labels)
    report = _run_report(args, dataset, result, eval_report, args.timings)
    if args.report_out:
        dataio.save_report(args.report_out, report)
    print(json.dumps(report, sort_keys=True))
    return EXIT_OK


def cmd_evaluate(args):
    dataset = _load_dataset(args.points)
    labels = _load_labels_file(args.labels)
    truth = None
    if args.truth:
        truth = _load_labels_file(args.truth)
    if labels.shape[0] != dataset.n:
        raise _CliError(EXIT_DATA, "labels length does not match points")
    space = "euclidean"
    points = dataset.points
    if args.space == "hyperbolic":
        space = "poincare"
        from . import geometry

        points = geometry.embed_to_disc(points, args.delta)
    try:
        report = metrics.evaluate(points, labels, truth=truth, space=space)
    except InvalidInputError as exc:
        raise _CliError(EXIT_DATA, str(exc)) from exc
    payload = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "space": args.space,
        "metrics": {k: _json_value(v) for k, v in report.to_dict().items()},
    }
    if args.output:
        dataio.save_report(args.output, payload)
    print(json.dumps(payload, sort_keys=True))
    return EXIT_OK


def _load_labels_file(path):
    try:
        return dataio.load_labels(path)
    except FileNotFoundError as exc:
        raise _CliError(EXIT_DATA, f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise _CliError(EXIT_DATA, f"{path}: {exc}") from exc


def cmd_consistency(args):
    try:
        if args.check == "lemma51":
            report = consistency.check_kernel_domination(
                dim=args.dim, n_pairs=args.samples, a=args.a,
                kind=args.kind, seed=args.seed,
            )
        elif args.check == "lemma52":
            report = consistency.check_l1_bound(
                dim=args.dim, n_samples=args.samples, a=args.a, seed=args.seed,
            )
        elif args.check == "lemma53":
            report = consistency.check_radial_ft(
                grid_size=args.grid_size, a=args.a, seed=args.seed,
            )
        elif args.check == "lemma54":
            report = consistency.check_ft_decay(
                grid_size=args.grid_size, a=args.a, seed=args.seed,
            )
        else:
            ns = [int(part) for part in args.ns.split(",") if part.strip()]
            if len(ns) < 4:
                raise _CliError(EXIT_BAD_FLAGS, "rate check needs at least 4 sample sizes")
            report = consistency.check_convergence_rate(
                ns=ns, trials=args.trials, distribution=args.distribution,
                seed=args.seed,
            )
    except _CliError:
        raise
    except InvalidInputError as exc:
        raise _CliError(EXIT_BAD_FLAGS, str(exc)) from exc
    payload = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        **report.to_dict(),
    }
    if args.output:
        dataio.save_report(args.output, payload)
    print(json.dumps(payload, sort_keys=True))
    return EXIT_OK if report.passed else EXIT_FAILED_CHECK


_GENERATORS = {
    "st900": lambda args: dataio.make_st900(seed=args.seed),
    "2d-20c-no0": lambda args: dataio.make_2d_20c_no0(seed=args.seed),
    "tree": lambda args: dataio.generate_tree_blobs(
        depth=args.depth, branching=args.branching, scale_decay=args.scale_decay,
        n_leaf=args.n_leaf, seed=args.seed,
    ),
    "blobs": lambda args: dataio.generate_blobs(
        n_per_cluster=args.n_per_cluster,
        centers=[
            [10.0 * math.cos(2.0 * math.pi * i / args.clusters),
             10.0 * math.sin(2.0 * math.pi * i / args.clusters)]
            for i in range(args.clusters)
        ],
        spread=args.spread,
        seed=args.seed,
    ),
}


def cmd_generate(args):
    dataset = _GENERATORS[args.kind](args)
    dataio.save_csv(args.output, dataset)
    print(f"wrote {dataset.n} points, {dataset.k_true} clusters to {args.output}")
    return EXIT_OK


def cmd_plot(args):
    dataset = _load_dataset(args.points)
    if args.labels:
        labels = _load_labels_file(args.labels)
        if labels.shape[0] != dataset.n:
            raise _CliError(EXIT_DATA, "labels length does not match points")
    elif dataset.labels is not None:
        labels = dataset.labels
    else:
        labels = np.zeros(dataset.n, dtype=int)
    try:
        plotting.save_scatter(args.output, dataset.points, labels, title=args.title)
    except InvalidInputError as exc:
        raise _CliError(EXIT_DATA, str(exc)) from exc
    return EXIT_OK


def _bench_cell(dataset, algo, kernel_name, sigma, k, seed):
    hyperbolic = algo in ("hsca", "hlsc-k", "fhsc")
    kind = _KERNEL_KINDS[(kernel_name, hyperbolic)]
    cfg = pipelines.PipelineConfig(
        algorithm=algo,
        kernel=KernelSpec(kind=kind, sigma=sigma),
        k=k,
        seed=seed,
    )
    return pipelines.run(dataset.points, cfg)


def cmd_bench(args):
    import pathlib

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = sorted(pathlib.Path(args.datasets_dir).glob("*.csv"))
    if not paths:
        raise _CliError(EXIT_DATA, f"no CSV datasets found in {args.datasets_dir}")
    rows = []
    for path in paths:
        dataset = _load_dataset(path)
        if dataset.labels is None:
            print(f"skipping {path.name}: no ground-truth label column", file=sys.stderr)
            continue
        k = dataset.k_true
        name = path.stem
        for algo in pipelines.ALGORITHMS:
            for kernel_name in ("gaussian", "poisson"):
                hyperbolic = algo in ("hsca", "hlsc-k", "fhsc")
                kind = _KERNEL_KINDS[(kernel_name, hyperbolic)]
                if args.suite == "ablation":
                    sigmas = pipelines.sigma_grid(kind)
                else:
                    sigmas = (args.sigma,)
                best = None
                for sigma in sigmas:
                    try:
                        result = _bench_cell(dataset, algo, kernel_name, sigma, k, args.seed)
                    except HsclusterError as exc:
                        print(
                            f"{name}/{algo}/{kernel_name}/sigma={sigma:g}: {exc}",
                            file=sys.stderr,
                        )
                        continue
                    row = {
                        "dataset": name,
                        "algorithm": algo,
                        "kernel": kernel_name,
                        "sigma": sigma,
                        "ari": metrics.ari(dataset.labels, result.labels),
                        "nmi": metrics.nmi(dataset.labels, result.labels),
                    }
                    if args.suite == "intrinsic":
                        space = "poincare" if hyperbolic else "euclidean"
                        points = result.embedded_points if hyperbolic else dataset.points
                        intrinsic = metrics.evaluate(points, result.labels, space=space)
                        row.update(
                            silhouette=intrinsic.silhouette,
                            davies_bouldin=intrinsic.davies_bouldin,
                            calinski_harabasz=intrinsic.calinski_harabasz,
                        )
                    if args.suite == "ablation":
                        rows.append(row)
                    if best is None or row["ari"] > best["ari"]:
                        best = row
                if args.suite != "ablation" and best is not None:
                    rows.append(best)
    summary_path = out_dir / f"summary-{args.suite}.csv"
    fields = sorted({key for row in rows for key in row})
    order = ["dataset", "algorithm", "kernel", "sigma"]
    fields = order + [f for f in fields if f not in order]
    with open(summary_path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {summary_path}")
    return EXIT_OK


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="hscluster",
        description="Hyperbolic and Euclidean spectral clustering toolkit",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    cluster = sub.add_parser("cluster", help="run a clustering pipeline on a CSV")
    cluster.add_argument("--input", required=True)
    cluster.add_argument("--algo", required=True, choices=pipelines.ALGORITHMS)
    cluster.add_argument("--kernel", default="gaussian", choices=("gaussian", "poisson"))
    cluster.add_argument("--k", type=int, required=True)
    cluster.add_argument("--sigma", type=float, default=0.1)
    cluster.add_argument("--epsilon", type=float, default=math.inf)
    cluster.add_argument("--delta", type=float, default=0.01)
    cluster.add_argument("--m", type=int, default=None)
    cluster.add_argument("--seed", type=int, default=42)
    cluster.add_argument("--labels-out", default=None)
    cluster.add_argument("--report-out", default=None)
    cluster.add_argument(
        "--timings", action="store_true",
        help="include wall-clock stage timings in the report "
             "(off by default so reruns are byte-identical)",
    )
    cluster.set_defaults(func=cmd_cluster)

    evaluate = sub.add_parser("evaluate", help="score labels against points/truth")
    evaluate.add_argument("--points", required=True)
    evaluate.add_argument("--labels", required=True)
    evaluate.add_argument("--truth", default=None)
    evaluate.add_argument("--space", default="euclidean", choices=("euclidean", "hyperbolic"))
    evaluate.add_argument("--delta", type=float, default=0.01)
    evaluate.add_argument("--output", default=None)
    evaluate.set_defaults(func=cmd_evaluate)

    bench = sub.add_parser("bench", help="run a benchmark suite over a dataset directory")
    bench.add_argument("--datasets-dir", required=True)
    bench.add_argument("--suite", required=True, choices=("extrinsic", "intrinsic", "ablation"))
    bench.add_argument("--out-dir", required=True)
    bench.add_argument("--sigma", type=float, default=0.1)
    bench.add_argument("--seed", type=int, default=42)
    bench.set_defaults(func=cmd_bench)

    cons = sub.add_parser("consistency", help="run a numerical verification check")
    cons.add_argument(
        "--check", required=True,
        choices=("lemma51", "lemma52", "lemma53", "lemma54", "rate"),
    )
    cons.add_argument("--seed", type=int, default=0)
    cons.add_argument("--a", type=float, default=1.0)
    cons.add_argument("--dim", type=int, default=2)
    cons.add_argument("--samples", type=int, default=1_000_000)
    cons.add_argument("--kind", default="gaussian", choices=("gaussian", "poisson"))
    cons.add_argument("--grid-size", type=int, default=256)
    cons.add_argument("--ns", default="100,200,400,800,1600")
    cons.add_argument("--trials", type=int, default=10)
    cons.add_argument("--distribution", default="blobs", choices=("blobs", "uniform"))
    cons.add_argument("--output", default=None)
    cons.set_defaults(func=cmd_consistency)

    generate = sub.add_parser("generate", help="write a synthetic dataset CSV")
    generate.add_argument("--kind", required=True, choices=tuple(_GENERATORS))
    generate.add_argument("--output", required=True)
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--depth", type=int, default=3)
    generate.add_argument("--branching", type=int, default=2)
    generate.add_argument("--scale-decay", type=float, default=0.3)
    generate.add_argument("--n-leaf", type=int, default=30)
    generate.add_argument("--clusters", type=int, default=3)
    generate.add_argument("--n-per-cluster", type=int, default=100)
    generate.add_argument("--spread", type=float, default=1.0)
    generate.set_defaults(func=cmd_generate)

    plot = sub.add_parser("plot", help="render labeled points as an SVG scatter")
    plot.add_argument("--points", required=True)
    plot.add_argument("--labels", default=None)
    plot.add_argument("--output", required=True)
    plot.add_argument("--title", default="hscluster scatter")
    plot.set_defaults(func=cmd_plot)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except HsclusterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
