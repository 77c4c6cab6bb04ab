"""Command-line interface: determinism, exit codes, artifact formats."""

import json

import numpy as np
import pytest

from hscluster import cli, dataio, metrics


@pytest.fixture
def blobs_csv(tmp_path):
    path = tmp_path / "blobs.csv"
    assert cli.main([
        "generate", "--kind", "blobs", "--output", str(path),
        "--seed", "0", "--clusters", "3", "--n-per-cluster", "20", "--spread", "0.5",
    ]) == cli.EXIT_OK
    return path


def _cluster_args(blobs_csv, tmp_path, **extra):
    args = [
        "cluster", "--input", str(blobs_csv), "--algo", "hsca", "--k", "3",
        "--sigma", "8.0", "--seed", "7",
        "--labels-out", str(tmp_path / "labels.csv"),
        "--report-out", str(tmp_path / "report.json"),
    ]
    for key, value in extra.items():
        args += [f"--{key.replace('_', '-')}", str(value)]
    return args


def test_cluster_writes_artifacts(blobs_csv, tmp_path, capsys):
    assert cli.main(_cluster_args(blobs_csv, tmp_path)) == cli.EXIT_OK
    stdout = capsys.readouterr().out
    report = json.loads(stdout)
    assert report["schema_version"] == cli.SCHEMA_VERSION
    assert report["algorithm"] == "hsca"
    assert report["epsilon"] == "inf"
    assert report["timings_ms"] is None
    assert report["metrics"]["ari"] == 1.0
    on_disk = json.loads((tmp_path / "report.json").read_text())
    assert on_disk == report
    labels = dataio.load_labels(tmp_path / "labels.csv")
    assert labels.shape == (60,)


def test_cluster_rerun_byte_identical(blobs_csv, tmp_path):
    cli.main(_cluster_args(blobs_csv, tmp_path))
    first_report = (tmp_path / "report.json").read_bytes()
    first_labels = (tmp_path / "labels.csv").read_bytes()
    cli.main(_cluster_args(blobs_csv, tmp_path))
    assert (tmp_path / "report.json").read_bytes() == first_report
    assert (tmp_path / "labels.csv").read_bytes() == first_labels


def test_cluster_timings_opt_in(blobs_csv, tmp_path, capsys):
    args = _cluster_args(blobs_csv, tmp_path) + ["--timings"]
    assert cli.main(args) == cli.EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert isinstance(report["timings_ms"], dict)
    assert "kmeans" in report["timings_ms"]


def test_cluster_k_too_large_exits_2(blobs_csv, tmp_path):
    args = [
        "cluster", "--input", str(blobs_csv), "--algo", "esca", "--k", "1000",
    ]
    assert cli.main(args) == cli.EXIT_BAD_FLAGS


def test_cluster_missing_file_exits_3(tmp_path):
    args = [
        "cluster", "--input", str(tmp_path / "nope.csv"), "--algo", "esca", "--k", "2",
    ]
    assert cli.main(args) == cli.EXIT_DATA


def test_cluster_degenerate_exits_4(blobs_csv, tmp_path, capsys):
    # tiny cutoff kills landmark columns: numerical degeneracy, stage named
    args = [
        "cluster", "--input", str(blobs_csv), "--algo", "elsc-k", "--k", "3",
        "--m", "10", "--sigma", "8.0", "--epsilon", "1e-9",
    ]
    assert cli.main(args) == cli.EXIT_DEGENERATE
    assert "landmark-affinity" in capsys.readouterr().err


def test_cluster_bad_sigma_exits_2(blobs_csv):
    args = [
        "cluster", "--input", str(blobs_csv), "--algo", "esca", "--k", "3",
        "--sigma", "-1.0",
    ]
    assert cli.main(args) == cli.EXIT_BAD_FLAGS


def test_evaluate_matches_library(blobs_csv, tmp_path, capsys):
    cli.main(_cluster_args(blobs_csv, tmp_path))
    capsys.readouterr()
    assert cli.main([
        "evaluate", "--points", str(blobs_csv),
        "--labels", str(tmp_path / "labels.csv"),
        "--truth", str(tmp_path / "labels.csv"),
    ]) == cli.EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    dataset = dataio.load_csv(blobs_csv)
    labels = dataio.load_labels(tmp_path / "labels.csv")
    expected = metrics.evaluate(dataset.points, labels, truth=labels)
    assert payload["metrics"]["ari"] == 1.0
    assert payload["metrics"]["silhouette"] == pytest.approx(expected.silhouette)


def test_evaluate_hyperbolic_space(blobs_csv, tmp_path, capsys):
    cli.main(_cluster_args(blobs_csv, tmp_path))
    capsys.readouterr()
    assert cli.main([
        "evaluate", "--points", str(blobs_csv),
        "--labels", str(tmp_path / "labels.csv"), "--space", "hyperbolic",
    ]) == cli.EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["space"] == "hyperbolic"
    assert payload["metrics"]["silhouette"] is not None


def test_evaluate_length_mismatch_exits_3(blobs_csv, tmp_path):
    bad = tmp_path / "short.csv"
    dataio.save_labels(bad, [0, 1, 2])
    assert cli.main([
        "evaluate", "--points", str(blobs_csv), "--labels", str(bad),
    ]) == cli.EXIT_DATA


def test_generate_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        assert cli.main([
            "generate", "--kind", "tree", "--output", str(out), "--seed", "5",
        ]) == cli.EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_generate_all_kinds(tmp_path):
    for kind, expect_n in (("st900", 900), ("2d-20c-no0", 1517)):
        out = tmp_path / f"{kind}.csv"
        assert cli.main(["generate", "--kind", kind, "--output", str(out)]) == cli.EXIT_OK
        assert dataio.load_csv(out).n == expect_n


def test_plot_command(blobs_csv, tmp_path):
    out = tmp_path / "plot.svg"
    assert cli.main([
        "plot", "--points", str(blobs_csv), "--output", str(out), "--title", "t",
    ]) == cli.EXIT_OK
    body = out.read_text()
    assert body.startswith("<svg ") and body.rstrip().endswith("</svg>")
    # deterministic bytes on rerun
    again = tmp_path / "plot2.svg"
    cli.main(["plot", "--points", str(blobs_csv), "--output", str(again), "--title", "t"])
    assert out.read_bytes() == again.read_bytes()


def test_consistency_pass_and_fail_exit_codes(tmp_path, capsys):
    assert cli.main([
        "consistency", "--check", "lemma51", "--samples", "20000",
        "--output", str(tmp_path / "ok.json"),
    ]) == cli.EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] is True
    # too few sample sizes for the rate check: flag error
    assert cli.main([
        "consistency", "--check", "rate", "--ns", "100,200",
    ]) == cli.EXIT_BAD_FLAGS


def test_consistency_failed_check_exits_1(monkeypatch, capsys):
    from hscluster import consistency as cons

    def fake(**kwargs):
        return cons.ConsistencyReport(
            check_name="kernel-domination-gaussian", samples=1, violations=1, passed=False
        )

    monkeypatch.setattr(cli.consistency, "check_kernel_domination", fake)
    assert cli.main(["consistency", "--check", "lemma51"]) == cli.EXIT_FAILED_CHECK
    assert json.loads(capsys.readouterr().out)["passed"] is False


def test_bench_small_directory(tmp_path, capsys):
    data_dir = tmp_path / "data"
    data_dir.mkdir()
    ds = dataio.generate_blobs(
        10,
        [[10.0, 0.0], [-5.0, 8.66], [-5.0, -8.66]],
        0.5,
        seed=0,
    )
    dataio.save_csv(data_dir / "tiny.csv", ds)
    out_dir = tmp_path / "out"
    assert cli.main([
        "bench", "--datasets-dir", str(data_dir), "--suite", "extrinsic",
        "--out-dir", str(out_dir), "--sigma", "8.0",
    ]) == cli.EXIT_OK
    summary = (out_dir / "summary-extrinsic.csv").read_text().splitlines()
    header = summary[0].split(",")
    assert header[:4] == ["dataset", "algorithm", "kernel", "sigma"]
    assert "ari" in header and "nmi" in header
    # 6 algorithms x 2 kernels
    assert len(summary) == 1 + 12


def test_bench_empty_directory_exits_3(tmp_path):
    empty = tmp_path / "none"
    empty.mkdir()
    assert cli.main([
        "bench", "--datasets-dir", str(empty), "--suite", "extrinsic",
        "--out-dir", str(tmp_path / "out"),
    ]) == cli.EXIT_DATA


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["--version"])
    assert info.value.code == 0
