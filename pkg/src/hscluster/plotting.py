"""Deterministic SVG scatter plots of labeled 2-D point sets.

Higher-dimensional inputs are projected onto their first two principal
components and the plot title notes the projection.  Identical inputs produce
byte-identical SVG output.
"""

import numpy as np

from .errors import InvalidInputError

# Qualitative palette, cycled when there are more labels than colors.
PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5",
    "#c49c94", "#f7b6d2", "#c7c7c7", "#dbdb8d", "#9edae5",
)

WIDTH, HEIGHT = 640, 480
MARGIN = 48


def _fmt(value):
    return f"{value:.4f}"


def _pca_2d(points):
    centered = points - points.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    basis = vt[:2].T
    # Deterministic orientation: largest-magnitude entry of each axis positive.
    for j in range(basis.shape[1]):
        pivot = np.argmax(np.abs(basis[:, j]))
        if basis[pivot, j] < 0.0:
            basis[:, j] = -basis[:, j]
    return centered @ basis


def render_scatter(points, labels, title="hscluster scatter"):
    """Render labeled points as an SVG document string."""
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    labels = np.asarray(labels).ravel()
    if labels.shape[0] != points.shape[0]:
        raise InvalidInputError("labels length must match number of points")
    if points.shape[1] < 2:
        raise InvalidInputError("need at least 2 feature dimensions to plot")
    if points.shape[1] > 2:
        points = _pca_2d(points)
        title = f"{title} (first two principal components)"

    lo = points.min(axis=0)
    hi = points.max(axis=0)
    span = np.where(hi - lo == 0.0, 1.0, hi - lo)

    def to_px(p):
        x = MARGIN + (p[0] - lo[0]) / span[0] * (WIDTH - 2 * MARGIN)
        y = HEIGHT - MARGIN - (p[1] - lo[1]) / span[1] * (HEIGHT - 2 * MARGIN)
        return x, y

    unique = [int(v) for v in np.unique(labels)]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
        # axes
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<text x="{MARGIN}" y="{HEIGHT - MARGIN + 16}" font-family="sans-serif" '
        f'font-size="10">{_fmt(lo[0])}</text>',
        f'<text x="{WIDTH - MARGIN}" y="{HEIGHT - MARGIN + 16}" text-anchor="end" '
        f'font-family="sans-serif" font-size="10">{_fmt(hi[0])}</text>',
        f'<text x="{MARGIN - 4}" y="{HEIGHT - MARGIN}" text-anchor="end" '
        f'font-family="sans-serif" font-size="10">{_fmt(lo[1])}</text>',
        f'<text x="{MARGIN - 4}" y="{MARGIN + 4}" text-anchor="end" '
        f'font-family="sans-serif" font-size="10">{_fmt(hi[1])}</text>',
    ]
    for rank, value in enumerate(unique):
        color = PALETTE[rank % len(PALETTE)]
        parts.append(f'<g fill="{color}">')
        for p in points[labels == value]:
            x, y = to_px(p)
            parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3"/>')
        parts.append("</g>")
        # legend entry
        ly = MARGIN + 16 * rank
        parts.append(
            f'<rect x="{WIDTH - MARGIN + 8}" y="{ly - 8}" width="10" height="10" '
            f'fill="{color}"/>'
        )
        parts.append(
            f'<text x="{WIDTH - MARGIN + 22}" y="{ly + 1}" font-family="sans-serif" '
            f'font-size="10">{value}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def save_scatter(path, points, labels, title="hscluster scatter"):
    """Write the scatter plot to an SVG file (UTF-8, LF line endings)."""
    svg = render_scatter(points, labels, title=title)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(svg)
