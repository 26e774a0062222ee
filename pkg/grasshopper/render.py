"""SVG rendering of a jump sequence in the plane.

Start pieces are filled circles, every jump is one arrow from the old to the
new position of the mover, and the start and final point sets are outlined
as polygons (vertices ordered by angle around their centroid). The y axis
points up, as in the coordinates.
"""

from __future__ import annotations

import math
from typing import Sequence

from .configuration import Configuration, JumpSequence, point_to_float, trajectory
from .constants import DEFAULT_SVG_MARGIN, DEFAULT_SVG_SIZE
from .errors import InvalidInputError

Vec = tuple[float, float]


def _fmt(x: float) -> str:
    text = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if text in ("", "-0") else text


def _bounding_box(states: Sequence[Configuration]) -> tuple[float, float, float, float]:
    """(min_x, min_y, max_x, max_y); exact for rational positions."""
    if not states[0].backend.is_cyclotomic:
        xs = [p[0] for c in states for p in c.positions]  # type: ignore[index]
        ys = [p[1] for c in states for p in c.positions]  # type: ignore[index]
        return float(min(xs)), float(min(ys)), float(max(xs)), float(max(ys))
    pts = [point_to_float(p) for c in states for p in c.positions]
    return (
        min(p[0] for p in pts),
        min(p[1] for p in pts),
        max(p[0] for p in pts),
        max(p[1] for p in pts),
    )


def outline_order(points: Sequence[Vec]) -> list[int]:
    """Indices of points sorted by angle around the centroid."""
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(range(len(points)), key=lambda k: (math.atan2(points[k][1] - cy, points[k][0] - cx), k))


def _polygon(points: Sequence[Vec], css_class: str) -> str:
    ordered = [points[k] for k in outline_order(points)]
    coords = " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in ordered)
    return f'  <polygon class="{css_class}" points="{coords}"/>'


def render_svg(
    start: Configuration,
    jumps: JumpSequence,
    margin: float = DEFAULT_SVG_MARGIN,
    size: int = DEFAULT_SVG_SIZE,
) -> str:
    """Deterministic SVG document for start and the moves of jumps.

    Raises:
        InvalidInputError: the configuration is not planar.
    """
    if start.dim != 2:
        raise InvalidInputError(f"rendering needs a planar configuration, got dim={start.dim}")
    if margin < 0 or size < 1:
        raise InvalidInputError(f"invalid SVG margin {margin} or size {size}")
    states = trajectory(start, jumps)

    lo_x, lo_y, hi_x, hi_y = _bounding_box(states)
    extent = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    pad = margin * extent
    view_x, view_y = lo_x - pad, -(hi_y + pad)
    view_w, view_h = hi_x - lo_x + 2 * pad, hi_y - lo_y + 2 * pad
    height = max(1, round(size * view_h / view_w)) if view_w else size
    stroke = extent / 250
    radius = extent / 80

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{height}" '
        f'viewBox="{_fmt(view_x)} {_fmt(view_y)} {_fmt(view_w)} {_fmt(view_h)}">',
        "  <defs>",
        '    <marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" '
        'markerWidth="6" markerHeight="6" orient="auto-start-reverse">',
        '      <path d="M 0 0 L 10 5 L 0 10 z" fill="#c0392b"/>',
        "    </marker>",
        "  </defs>",
        "  <style>",
        f"    .start {{ fill: none; stroke: #2c3e50; stroke-width: {_fmt(stroke)}; }}",
        f"    .final {{ fill: none; stroke: #27ae60; stroke-width: {_fmt(stroke)}; }}",
        f"    .jump {{ stroke: #c0392b; stroke-width: {_fmt(stroke / 2)}; }}",
        "    .piece { fill: #2c3e50; }",
        "  </style>",
    ]

    first = [point_to_float(p) for p in states[0].positions]
    if start.n_pieces >= 3:
        lines.append(_polygon(first, "start"))  # type: ignore[arg-type]

    for j, (before, after) in zip(jumps, zip(states, states[1:])):
        x1, y1 = point_to_float(before.positions[j.mover])
        x2, y2 = point_to_float(after.positions[j.mover])
        lines.append(
            f'  <line class="jump" data-jump="{j}" x1="{_fmt(x1)}" y1="{_fmt(-y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(-y2)}" marker-end="url(#arrow)"/>'
        )

    if len(jumps) and start.n_pieces >= 3:
        last = [point_to_float(p) for p in states[-1].positions]
        lines.append(_polygon(last, "final"))  # type: ignore[arg-type]

    for k, (x, y) in enumerate(first):
        lines.append(f'  <circle class="piece" data-piece="{k}" cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(radius)}"/>')

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
