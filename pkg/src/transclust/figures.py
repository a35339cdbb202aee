"""Deterministic SVG/PGM emitters for scatter plots and distance heatmaps.

Both emitters build their output as plain bytes with fixed-precision
formatting and no timestamps, so the same inputs always produce the same
file byte for byte.
"""

from __future__ import annotations

import os

import numpy as np

from .dataset import DataSet
from .errors import InvalidSpecError
from .mst import SpanningTree

# Qualitative palette, repeated if there are more clusters than entries.
_PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
)
_CANVAS = 512
_MARGIN = 20
_POINT_RADIUS = 3.0
_SVG_HEATMAP_MAX = 1024  # one rect per cell; beyond this ask for .pgm


def _to_canvas(xy: np.ndarray) -> np.ndarray:
    """Map data coordinates to canvas pixels, flipping y (SVG grows down)."""
    span = _CANVAS - 2 * _MARGIN
    out = np.empty_like(xy)
    out[:, 0] = _MARGIN + xy[:, 0] * span
    out[:, 1] = _MARGIN + (1.0 - xy[:, 1]) * span
    return out


def emit_scatter(data: DataSet, labels, path: str, tree: SpanningTree | None = None) -> None:
    """Write a colored scatter plot of a 2-d dataset as SVG.

    One fill color per cluster label; an optional spanning tree is drawn
    as n-1 line segments underneath the points. The viewBox fits the unit
    square, which is where the synthetic generators place their samples.
    """
    if data.dim != 2:
        raise InvalidSpecError(
            f"scatter plots need 2-d data, got {data.dim}-d; render a heatmap instead"
        )
    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape != (data.n,):
        raise InvalidSpecError(f"expected {data.n} labels, got shape {labels.shape}")
    if tree is not None and tree.n != data.n:
        raise InvalidSpecError("tree size does not match dataset size")

    pix = _to_canvas(data.points)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_CANVAS} {_CANVAS}">',
        f'<rect width="{_CANVAS}" height="{_CANVAS}" fill="#ffffff"/>',
    ]
    if tree is not None:
        for u, v in tree.edges:
            x1, y1 = pix[u]
            x2, y2 = pix[v]
            parts.append(
                f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                f'stroke="#888888" stroke-width="0.8"/>'
            )
    color_of = {lab: _PALETTE[i % len(_PALETTE)] for i, lab in enumerate(sorted(set(labels.tolist())))}
    for (x, y), lab in zip(pix, labels.tolist()):
        parts.append(
            f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{_POINT_RADIUS}" fill="{color_of[lab]}"/>'
        )
    parts.append("</svg>\n")
    _write_bytes(path, "\n".join(parts).encode("ascii"))


def emit_heatmap(matrix, path: str) -> None:
    """Write a distance matrix as a grayscale image, brighter = closer.

    Intensity is 1 - D/max(D), so a larger intensity denotes a smaller
    distance. The format follows the file extension: .svg renders one
    rect per cell (capped at a sensible matrix size), .pgm writes a
    binary P5 image and scales to any n.
    """
    values = getattr(matrix, "values", matrix)
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2 or values.shape[0] != values.shape[1] or values.shape[0] < 1:
        raise InvalidSpecError("heatmap needs a square, non-empty matrix")
    n = values.shape[0]
    top = float(values.max())
    intensity = 1.0 - values / top if top > 0.0 else np.ones_like(values)
    gray = np.clip(np.rint(intensity * 255.0), 0, 255).astype(np.uint8)

    ext = os.path.splitext(path)[1].lower()
    if ext == ".pgm":
        _write_bytes(path, b"P5\n%d %d\n255\n" % (n, n) + gray.tobytes())
        return
    if ext != ".svg":
        raise InvalidSpecError(f"unsupported heatmap extension {ext!r}, use .svg or .pgm")
    if n > _SVG_HEATMAP_MAX:
        raise InvalidSpecError(
            f"n = {n} is too large for an SVG heatmap (max {_SVG_HEATMAP_MAX}); write a .pgm instead"
        )
    cell = _CANVAS / n
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_CANVAS} {_CANVAS}">']
    for i in range(n):
        y = i * cell
        for j in range(n):
            g = gray[i, j]
            parts.append(
                f'<rect x="{j * cell:.2f}" y="{y:.2f}" width="{cell:.2f}" height="{cell:.2f}" '
                f'fill="#{g:02x}{g:02x}{g:02x}"/>'
            )
    parts.append("</svg>\n")
    _write_bytes(path, "\n".join(parts).encode("ascii"))


def _write_bytes(path: str, blob: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(blob)
