"""Static SVG rendering of a clustered map as a hexagonal tiling.

Works from the map document produced by :mod:`histosom.dataio`.  Optional
layers: per-variable panels with the prototype histograms drawn as bar
glyphs, a black hexagon per tile sized by the number of assigned
observations, and a trajectory polyline visiting the tiles of an ordered
list of observation ids.
"""

from __future__ import annotations

import math

__all__ = ["render_map_svg"]

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
)
UNLABELED = "#d9d9d9"
SIZE = 22.0  # hex circumradius in user units


def _center(row: int, col: int, size: float = SIZE) -> tuple[float, float]:
    # pointy-top hexes, odd rows shifted half a tile right
    x = math.sqrt(3.0) * size * (col + 0.5 * (row % 2)) + 2.0 * size
    y = 1.5 * size * row + 2.0 * size
    return x, y


def _hex_points(cx: float, cy: float, size: float) -> str:
    pts = []
    for k in range(6):
        a = math.radians(60.0 * k - 90.0)
        pts.append(f"{cx + size * math.cos(a):.2f},{cy + size * math.sin(a):.2f}")
    return " ".join(pts)


def _grid_extent(rows: int, cols: int) -> tuple[float, float]:
    w = math.sqrt(3.0) * SIZE * (cols + 0.5) + 4.0 * SIZE
    h = 1.5 * SIZE * (rows - 1) + 6.0 * SIZE
    return w, h


def _tile_layer(doc: dict, ox: float, parts: list, counts=None) -> None:
    rows, cols = doc["rows"], doc["cols"]
    labels = doc["neuron_label"]
    max_count = max(counts) if counts else 0
    for i in range(rows * cols):
        r, c = divmod(i, cols)
        cx, cy = _center(r, c)
        cx += ox
        label = labels[i]
        fill = UNLABELED if label is None else PALETTE[label % len(PALETTE)]
        parts.append(
            f'<polygon class="tile" points="{_hex_points(cx, cy, SIZE * 0.96)}" '
            f'fill="{fill}" stroke="#ffffff" stroke-width="1"/>'
        )
        if counts is not None:
            frac = math.sqrt(counts[i] / max_count) if max_count else 0.0
            parts.append(
                f'<polygon class="count" '
                f'points="{_hex_points(cx, cy, SIZE * 0.8 * frac)}" fill="#000000"/>'
            )


def _histogram_glyph(parts: list, bins, cx: float, cy: float, lo: float, hi: float) -> None:
    box_w = math.sqrt(3.0) * SIZE * 0.72
    box_h = SIZE * 0.9
    x0 = cx - box_w / 2.0
    y0 = cy + box_h / 2.0
    span = (hi - lo) or 1.0
    heights = []
    for b in bins:
        width = b["upper"] - b["lower"]
        heights.append(b["weight"] / width if width > 0 else 0.0)
    peak = max(heights) or 1.0
    for b, h in zip(bins, heights):
        bx = x0 + (b["lower"] - lo) / span * box_w
        bw = max((b["upper"] - b["lower"]) / span * box_w, 0.4)
        bh = h / peak * box_h
        parts.append(
            f'<rect class="glyph" x="{bx:.2f}" y="{y0 - bh:.2f}" '
            f'width="{bw:.2f}" height="{bh:.2f}" fill="#333333"/>'
        )


def _panel_layer(doc: dict, var: int, ox: float, parts: list) -> None:
    rows, cols = doc["rows"], doc["cols"]
    protos = doc["prototypes"]
    lo = min(b["lower"] for p in protos for b in p[var])
    hi = max(b["upper"] for p in protos for b in p[var])
    for i in range(rows * cols):
        r, c = divmod(i, cols)
        cx, cy = _center(r, c)
        cx += ox
        parts.append(
            f'<polygon class="tile" points="{_hex_points(cx, cy, SIZE * 0.96)}" '
            f'fill="#f4f4f4" stroke="#cccccc" stroke-width="1"/>'
        )
        _histogram_glyph(parts, protos[i][var], cx, cy, lo, hi)


def _trajectory_layer(doc: dict, trajectory, parts: list) -> None:
    bmu_of = {str(a["id"]): a["bmu"] for a in doc.get("assignments", [])}
    cols = doc["cols"]
    centers = []
    for oid in trajectory:
        key = str(oid)
        if key not in bmu_of:
            raise ValueError(f"trajectory id {oid!r} has no assignment in the map")
        r, c = divmod(bmu_of[key], cols)
        centers.append(_center(r, c))
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in centers)
    parts.append(
        f'<polyline class="trajectory" points="{pts}" fill="none" '
        f'stroke="#d62728" stroke-width="2.5"/>'
    )
    n = len(centers)
    for k, (x, y) in enumerate(centers):
        radius = SIZE * (0.45 - 0.3 * (k / max(n - 1, 1)))
        parts.append(
            f'<circle class="trajectory-stop" cx="{x:.2f}" cy="{y:.2f}" '
            f'r="{radius:.2f}" fill="#d62728" fill-opacity="0.65"/>'
        )


def render_map_svg(
    doc: dict,
    panels: bool = False,
    counts: bool = False,
    trajectory=None,
) -> str:
    """Render a map document to an SVG string."""
    rows, cols = doc["rows"], doc["cols"]
    panel_w, panel_h = _grid_extent(rows, cols)
    n_panels = 1 + (len(doc["prototypes"][0]) if panels else 0)
    width = panel_w * n_panels
    parts: list[str] = []

    tile_counts = None
    if counts:
        tile_counts = [0] * (rows * cols)
        for a in doc.get("assignments", []):
            tile_counts[a["bmu"]] += 1
    _tile_layer(doc, 0.0, parts, tile_counts)
    if panels:
        for var in range(n_panels - 1):
            _panel_layer(doc, var, panel_w * (var + 1), parts)
    if trajectory:
        _trajectory_layer(doc, trajectory, parts)

    body = "\n".join(parts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width:.0f}" height="{panel_h:.0f}" '
        f'viewBox="0 0 {width:.0f} {panel_h:.0f}">\n{body}\n</svg>\n'
    )
