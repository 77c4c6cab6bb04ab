"""Dataset loading, synthetic generation and result persistence.

CSV convention: UTF-8, comma-separated, one header row, '.' decimals.  A
column named ``label`` (or one named explicitly) carries integer ground-truth
labels; all other columns must be numeric features.
"""

import csv
import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError

log = logging.getLogger(__name__)


@dataclass
class EuclideanDataset:
    points: np.ndarray
    labels: np.ndarray = None
    name: str = ""
    feature_names: list = None
    metadata: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def dim(self):
        return self.points.shape[1]

    @property
    def k_true(self):
        return None if self.labels is None else int(np.unique(self.labels).size)


def load_csv(path, label_column=None):
    """Load a dataset from CSV; rows with missing feature cells are dropped."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise InvalidInputError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        wanted_label = label_column if label_column is not None else "label"
        label_idx = header.index(wanted_label) if wanted_label in header else None
        if label_column is not None and label_idx is None:
            raise InvalidInputError(f"{path}: no column named {label_column!r}")
        feature_idx = [i for i in range(len(header)) if i != label_idx]

        rows, labels, dropped = [], [], 0
        for row_no, row in enumerate(reader, start=2):
            if not row or all(cell.strip() == "" for cell in row):
                continue
            if any(row[i].strip() == "" or row[i].strip() == "?" for i in feature_idx):
                dropped += 1
                continue
            values = []
            for i in feature_idx:
                try:
                    values.append(float(row[i]))
                except ValueError:
                    raise InvalidInputError(
                        f"{path}: non-numeric value {row[i]!r} at row {row_no}, "
                        f"column {header[i]!r}"
                    ) from None
            rows.append(values)
            if label_idx is not None:
                labels.append(row[label_idx].strip())
    if dropped:
        log.info("%s: dropped %d rows with missing features", path, dropped)
    points = np.asarray(rows, dtype=np.float64)
    label_arr = None
    if label_idx is not None:
        _, label_arr = np.unique(labels, return_inverse=True)
    return EuclideanDataset(
        points=points,
        labels=label_arr,
        name=str(path),
        feature_names=[header[i] for i in feature_idx],
    )


def save_csv(path, dataset):
    """Write a dataset back to CSV (features plus optional label column)."""
    names = dataset.feature_names or [f"x{i}" for i in range(dataset.dim)]
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        header = list(names) + (["label"] if dataset.labels is not None else [])
        writer.writerow(header)
        for i in range(dataset.n):
            row = [repr(float(v)) for v in dataset.points[i]]
            if dataset.labels is not None:
                row.append(int(dataset.labels[i]))
            writer.writerow(row)


def save_labels(path, labels):
    """Labels as a single-column CSV with header 'label'."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["label"])
        for value in np.asarray(labels).ravel():
            writer.writerow([int(value)])


def load_labels(path):
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        next(reader)
        return np.array([int(row[0]) for row in reader if row])


def save_report(path, report):
    """Persist a report dict as stable, human-diffable JSON."""

    def _default(value):
        if isinstance(value, np.ndarray):
            return value.tolist()
        if isinstance(value, (np.integer,)):
            return int(value)
        if isinstance(value, (np.floating,)):
            return float(value)
        raise TypeError(f"cannot serialize {type(value)}")

    with open(path, "w", encoding="utf-8") as handle:
        json.dump(report, handle, indent=2, sort_keys=True, default=_default)
        handle.write("\n")


def generate_blobs(n_per_cluster, centers, spread, seed):
    """Isotropic Gaussian blobs with ground-truth labels."""
    centers = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    rng = np.random.default_rng(seed)
    spreads = np.broadcast_to(np.asarray(spread, dtype=np.float64), (centers.shape[0],))
    points, labels = [], []
    for idx, center in enumerate(centers):
        points.append(center + spreads[idx] * rng.standard_normal((n_per_cluster, centers.shape[1])))
        labels.append(np.full(n_per_cluster, idx))
    return EuclideanDataset(
        points=np.vstack(points),
        labels=np.concatenate(labels),
        name="blobs",
    )


def _geodesic_step(point, direction, length):
    """Move a disc point along a tangent direction by a geodesic length."""
    from . import geometry

    direction = direction / np.linalg.norm(direction)
    scale = (1.0 - float(np.dot(point, point))) / 2.0
    out = geometry.exp_map(point, direction * (length * scale))
    norm = np.linalg.norm(out)
    if norm > 1.0 - 1e-6:
        out *= (1.0 - 1e-6) / norm
    return out


def _disc_to_plane(points, delta):
    """Inverse of the disc embedding: norm r maps back to delta * r / (1 - r)."""
    norms = np.linalg.norm(points, axis=-1, keepdims=True)
    return points * (delta / (1.0 - norms))


def generate_tree_blobs(depth, branching, scale_decay, n_leaf, seed, dim=2,
                        scale=4.0, delta=1e-2):
    """Clusters at the leaves of a random tree grown geodesically on the disc.

    Each child steps away from its parent by geodesic length
    ``scale * scale_decay**level`` in a direction biased away from the origin,
    so sibling leaves end geodesically closer than cousin leaves and the whole
    tree is a hierarchy of shrinking scales.  Leaf clusters are wrapped
    Gaussians of geodesic spread proportional to the final step.  The disc
    configuration is mapped back to Euclidean coordinates through the exact
    inverse of the disc embedding (margin ``delta``), which turns the uniform
    hyperbolic hierarchy into strongly multiscale Euclidean structure.
    """
    if depth < 1 or branching < 1:
        raise InvalidInputError("depth and branching must be >= 1")
    rng = np.random.default_rng(seed)
    spread = 0.15 * scale * scale_decay ** (depth - 1)

    def grow(center, direction, level, path):
        if level == depth:
            return [(center, path)]
        leaves = []
        step = scale * scale_decay**level
        for child in range(branching):
            u = direction + 0.9 * rng.standard_normal(dim)
            u /= np.linalg.norm(u)
            leaves.extend(grow(_geodesic_step(center, u, step), u, level + 1, path + (child,)))
        return leaves

    root_dir = rng.standard_normal(dim)
    root_dir /= np.linalg.norm(root_dir)
    leaves = grow(np.zeros(dim), root_dir, 0, ())
    points, labels = [], []
    for idx, (center, _) in enumerate(leaves):
        cluster = np.empty((n_leaf, dim))
        for row in range(n_leaf):
            offset = rng.standard_normal(dim)
            length = spread * np.linalg.norm(offset)
            cluster[row] = _geodesic_step(center, offset, length)
        points.append(_disc_to_plane(cluster, delta))
        labels.append(np.full(n_leaf, idx))
    return EuclideanDataset(
        points=np.vstack(points),
        labels=np.concatenate(labels),
        name="tree-blobs",
        metadata={
            "depth": depth,
            "branching": branching,
            "scale_decay": scale_decay,
            "leaf_paths": [list(path) for _, path in leaves],
        },
    )


def make_st900(seed=0):
    """Desk-scale stand-in for the st900 benchmark: 900 points, 2-D, 9 clusters.

    Nine clusters arranged as a two-level radial hierarchy (three branches,
    three scale rings per branch) with cluster spread proportional to the
    ring radius, so no single Euclidean bandwidth fits all scales.
    """
    rng = np.random.default_rng(seed)
    branch_angles = np.array([0.0, 2.0, 4.0]) * np.pi / 3.0
    radii = np.array([1.0, 12.0, 144.0])
    points, labels = [], []
    label = 0
    for angle in branch_angles:
        for radius in radii:
            theta = angle + 0.35 * rng.standard_normal()
            center = radius * np.array([np.cos(theta), np.sin(theta)])
            spread = 0.07 * radius
            points.append(center + spread * rng.standard_normal((100, 2)))
            labels.append(np.full(100, label))
            label += 1
    return EuclideanDataset(
        points=np.vstack(points), labels=np.concatenate(labels), name="st900"
    )


def make_2d_20c_no0(seed=0):
    """Desk-scale stand-in for 2d-20c-no0: 1517 points, 2-D, 20 clusters.

    Twenty clusters on five radial branches with four scale rings each and
    ring-proportional spread; uneven cluster sizes sum to 1517.
    """
    rng = np.random.default_rng(seed)
    branch_angles = np.arange(5) * 2.0 * np.pi / 5.0
    radii = np.array([1.0, 8.0, 64.0, 512.0])
    sizes = [75] * 20
    for i in range(1517 - 75 * 20):
        sizes[i] += 1
    points, labels = [], []
    label = 0
    for angle in branch_angles:
        for radius in radii:
            theta = angle + 0.22 * rng.standard_normal()
            center = radius * np.array([np.cos(theta), np.sin(theta)])
            spread = 0.06 * radius
            n = sizes[label]
            points.append(center + spread * rng.standard_normal((n, 2)))
            labels.append(np.full(n, label))
            label += 1
    return EuclideanDataset(
        points=np.vstack(points), labels=np.concatenate(labels), name="2d-20c-no0"
    )


def subsample(dataset, n, seed):
    """Seed-controlled random subsample without replacement, order preserved."""
    if n > dataset.n:
        raise InvalidInputError(f"cannot subsample {n} from {dataset.n} rows")
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(dataset.n, size=n, replace=False))
    return EuclideanDataset(
        points=dataset.points[idx],
        labels=None if dataset.labels is None else dataset.labels[idx],
        name=f"{dataset.name}[{n}]",
        feature_names=dataset.feature_names,
    )
