"""Deterministic SVG scatter plots for reduced coordinates.

Pure string construction: fixed canvas, fixed palette keyed by sorted
class names, fixed number formatting.  Identical inputs yield identical
bytes, which keeps figures diffable and lets reruns be compared directly.
3-D data is drawn through a fixed isometric projection of the min-max
normalized cube; a separating plane appears as its clipped polygon trace.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import InputError
from .separators import Hyperplane

WIDTH = 640
HEIGHT = 480
MARGIN = 46

PALETTE = ("#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377", "#bbbbbb")

COS30 = math.cos(math.pi / 6)


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _check_points(points, dim):
    pts = [tuple(float(c) for c in p) for p in points]
    if not pts:
        raise InputError("nothing to plot: no points")
    if any(len(p) != dim for p in pts):
        raise InputError(f"all points must have {dim} coordinates")
    if any(not math.isfinite(c) for p in pts for c in p):
        raise InputError("points must be finite")
    return pts


def _color_map(labels):
    classes = sorted({("unlabeled" if l is None else str(l)) for l in labels})
    return {cls: PALETTE[i % len(PALETTE)] for i, cls in enumerate(classes)}


def _legend(colors, x=WIDTH - MARGIN - 130, y=MARGIN + 4):
    parts = []
    for i, (cls, color) in enumerate(sorted(colors.items())):
        cy = y + 18 * i
        parts.append(
            f'<rect x="{x}" y="{cy}" width="10" height="10" fill="{color}"/>'
        )
        parts.append(
            f'<text x="{x + 15}" y="{cy + 9}" font-size="12" fill="#222">{cls}</text>'
        )
    return parts


def _padded_range(values):
    lo, hi = min(values), max(values)
    pad = (hi - lo) * 0.05 if hi > lo else 1.0
    return lo - pad, hi + pad


def _header(title):
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH // 2}" y="24" font-size="15" text-anchor="middle" '
            f'fill="#222">{title}</text>'
        )
    return parts


def _clip_line_to_box(plane: Hyperplane, xlim, ylim):
    """Boundary segment of a 2-D plane inside a rectangle, or None."""
    a, b = plane.normal
    d = plane.offset
    hits = []
    for x in xlim:
        if b != 0.0:
            y = -(d + a * x) / b
            if ylim[0] <= y <= ylim[1]:
                hits.append((x, y))
    for y in ylim:
        if a != 0.0:
            x = -(d + b * y) / a
            if xlim[0] <= x <= xlim[1]:
                hits.append((x, y))
    distinct = []
    for p in hits:
        if all(math.hypot(p[0] - q[0], p[1] - q[1]) > 1e-12 for q in distinct):
            distinct.append(p)
    return (distinct[0], distinct[1]) if len(distinct) >= 2 else None


def svg_scatter_2d(
    points,
    labels,
    lines: Sequence[tuple[Hyperplane, str]] = (),
    axis_names=("x", "y"),
    title="",
) -> str:
    """Scatter of labeled 2-D points with optional boundary-line overlays."""
    pts = _check_points(points, 2)
    if len(labels) != len(pts):
        raise InputError(f"{len(pts)} points vs {len(labels)} labels")
    for plane, _ in lines:
        if plane.dimension != 2:
            raise InputError("line overlays must be 2-D")
    xlim = _padded_range([p[0] for p in pts])
    ylim = _padded_range([p[1] for p in pts])

    def to_screen(x, y):
        sx = MARGIN + (x - xlim[0]) / (xlim[1] - xlim[0]) * (WIDTH - 2 * MARGIN)
        sy = HEIGHT - MARGIN - (y - ylim[0]) / (ylim[1] - ylim[0]) * (HEIGHT - 2 * MARGIN)
        return sx, sy

    colors = _color_map(labels)
    parts = _header(title)
    parts.append(
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" '
        f'height="{HEIGHT - 2 * MARGIN}" fill="none" stroke="#999"/>'
    )
    # axis extents and names
    for value, (ax, ay), anchor in (
        (xlim[0], to_screen(xlim[0], ylim[0]), "middle"),
        (xlim[1], to_screen(xlim[1], ylim[0]), "middle"),
    ):
        parts.append(
            f'<text x="{_fmt(ax)}" y="{HEIGHT - MARGIN + 16}" font-size="11" '
            f'text-anchor="{anchor}" fill="#222">{_fmt(value)}</text>'
        )
    for value in ylim:
        _, sy = to_screen(xlim[0], value)
        parts.append(
            f'<text x="{MARGIN - 6}" y="{_fmt(sy + 4)}" font-size="11" '
            f'text-anchor="end" fill="#222">{_fmt(value)}</text>'
        )
    parts.append(
        f'<text x="{WIDTH // 2}" y="{HEIGHT - 10}" font-size="13" '
        f'text-anchor="middle" fill="#222">{axis_names[0]}</text>'
    )
    parts.append(
        f'<text x="14" y="{HEIGHT // 2}" font-size="13" text-anchor="middle" '
        f'fill="#222" transform="rotate(-90 14 {HEIGHT // 2})">{axis_names[1]}</text>'
    )
    for plane, caption in lines:
        segment = _clip_line_to_box(plane, xlim, ylim)
        if segment is None:
            continue
        (x1, y1), (x2, y2) = (to_screen(*segment[0]), to_screen(*segment[1]))
        parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="#333" stroke-width="1.2" stroke-dasharray="6 3"/>'
        )
        if caption:
            parts.append(
                f'<text x="{_fmt((x1 + x2) / 2 + 4)}" y="{_fmt((y1 + y2) / 2 - 4)}" '
                f'font-size="11" fill="#333">{caption}</text>'
            )
    for p, label in zip(pts, labels):
        cls = "unlabeled" if label is None else str(label)
        sx, sy = to_screen(*p)
        parts.append(
            f'<circle cx="{_fmt(sx)}" cy="{_fmt(sy)}" r="3" fill="{colors[cls]}" '
            f'fill-opacity="0.75"/>'
        )
    parts.extend(_legend(colors))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _cube_corners(lims):
    (x0, x1), (y0, y1), (z0, z1) = lims
    return [
        (x, y, z) for x in (x0, x1) for y in (y0, y1) for z in (z0, z1)
    ]


CUBE_EDGES = (
    (0, 1), (0, 2), (0, 4), (1, 3), (1, 5), (2, 3),
    (2, 6), (3, 7), (4, 5), (4, 6), (5, 7), (6, 7),
)


def _project(point, lims):
    """Fixed isometric projection of min-max normalized coordinates."""
    normed = []
    for c, (lo, hi) in zip(point, lims):
        normed.append((c - lo) / (hi - lo) if hi > lo else 0.5)
    xh, yh, zh = normed
    u = (xh - yh) * COS30
    v = (xh + yh) / 2.0 - zh
    return u, v


def _plane_cube_trace(plane: Hyperplane, lims):
    """Where the plane crosses the data cube, as ordered projected points."""
    corners = _cube_corners(lims)
    values = [plane.side_value(c) for c in corners]
    hits = []
    for i, j in CUBE_EDGES:
        si, sj = values[i], values[j]
        if si == 0.0:
            hits.append(corners[i])
        if sj == 0.0:
            hits.append(corners[j])
        if (si < 0 < sj) or (sj < 0 < si):
            t = si / (si - sj)
            hits.append(
                tuple(a + t * (b - a) for a, b in zip(corners[i], corners[j]))
            )
    projected = []
    for p in hits:
        uv = _project(p, lims)
        if all(math.hypot(uv[0] - q[0], uv[1] - q[1]) > 1e-9 for q in projected):
            projected.append(uv)
    if len(projected) < 2:
        return []
    cu = sum(u for u, _ in projected) / len(projected)
    cv = sum(v for _, v in projected) / len(projected)
    projected.sort(key=lambda q: math.atan2(q[1] - cv, q[0] - cu))
    return projected


def svg_scatter_3d(
    points,
    labels,
    plane: Hyperplane | None = None,
    axis_names=("x", "y", "z"),
    title="",
) -> str:
    """Isometric scatter of labeled 3-D points with an optional plane trace."""
    pts = _check_points(points, 3)
    if len(labels) != len(pts):
        raise InputError(f"{len(pts)} points vs {len(labels)} labels")
    if plane is not None and plane.dimension != 3:
        raise InputError("plane overlay must be 3-D")
    lims = tuple(_padded_range([p[d] for p in pts]) for d in range(3))

    # projected u spans +-cos30, v spans [-1, 1]; fixed screen mapping
    def to_screen(u, v):
        sx = WIDTH / 2 + u * (WIDTH / 2 - MARGIN) / COS30 * 0.9
        sy = HEIGHT / 2 + v * (HEIGHT / 2 - MARGIN) * 0.9
        return sx, sy

    def screen_of(point):
        return to_screen(*_project(point, lims))

    colors = _color_map(labels)
    parts = _header(title)
    corners = _cube_corners(lims)
    for i, j in CUBE_EDGES:
        (x1, y1), (x2, y2) = screen_of(corners[i]), screen_of(corners[j])
        parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="#cccccc" stroke-width="0.8"/>'
        )
    origin = corners[0]
    for name, corner in zip(axis_names, (corners[4], corners[2], corners[1])):
        # corners 4, 2, 1 are origin +x, +y, +z respectively
        ex, ey = screen_of(corner)
        ox, oy = screen_of(origin)
        lx, ly = ox + (ex - ox) * 1.06, oy + (ey - oy) * 1.06
        parts.append(
            f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-size="13" '
            f'text-anchor="middle" fill="#222">{name}</text>'
        )
    if plane is not None:
        trace = _plane_cube_trace(plane, lims)
        if len(trace) >= 3:
            path = " ".join(
                f"{_fmt(to_screen(*uv)[0])},{_fmt(to_screen(*uv)[1])}" for uv in trace
            )
            parts.append(
                f'<polygon points="{path}" fill="#333333" fill-opacity="0.15" '
                f'stroke="#333" stroke-width="1"/>'
            )
        elif len(trace) == 2:
            (x1, y1), (x2, y2) = (to_screen(*trace[0]), to_screen(*trace[1]))
            parts.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                f'stroke="#333" stroke-width="1"/>'
            )
    for p, label in zip(pts, labels):
        cls = "unlabeled" if label is None else str(label)
        sx, sy = screen_of(p)
        parts.append(
            f'<circle cx="{_fmt(sx)}" cy="{_fmt(sy)}" r="3" fill="{colors[cls]}" '
            f'fill-opacity="0.75"/>'
        )
    parts.extend(_legend(colors))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
