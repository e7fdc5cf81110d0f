"""Exact polygon geometry: area, intersection area, IoU, simplicity tests.

Intersection of two simple polygons (convex or concave) is computed by
decomposing each into its signed fan triangles and summing the pairwise
triangle-triangle overlaps with the product of the fan signs:

    area(A ∩ B) = sum_ij  s_i * s_j * area(T_i ∩ U_j)

where ``1_A = sum_i s_i * 1_{T_i}`` holds pointwise for any simple polygon
fanned from its first vertex. Triangle-triangle overlap is convex clipping
(Sutherland-Hodgman), which has no degenerate special cases. This keeps the
computation exact up to float rounding without a general clipping arrangement.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

__all__ = [
    "signed_area",
    "polygon_area",
    "polygon_intersection_area",
    "iou",
    "is_simple_polygon",
    "canonicalize_ccw",
]

Polygon = Sequence[Sequence[float]]


def _as_vertices(p: Polygon) -> np.ndarray:
    v = np.asarray(p, dtype=np.float64)
    if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
        raise ValueError(f"polygon must be an (n>=3, 2) array of vertices, got shape {v.shape}")
    return v


def signed_area(p: Polygon) -> float:
    """Shoelace area; positive for counter-clockwise vertex order."""
    v = _as_vertices(p)
    x, y = v[:, 0], v[:, 1]
    return float(0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def polygon_area(p: Polygon) -> float:
    """Absolute area of a simple polygon."""
    return abs(signed_area(p))


def canonicalize_ccw(p: Polygon) -> np.ndarray:
    """Return vertices in counter-clockwise order, first vertex unchanged."""
    v = _as_vertices(p)
    if signed_area(v) < 0:
        v = np.concatenate([v[:1], v[:0:-1]], axis=0)
    return v


def _fan_triangles(v: np.ndarray) -> list[tuple[list[tuple[float, float]], float]]:
    """Fan a polygon from vertex 0 into CCW triangles with their fan signs."""
    v0 = (float(v[0, 0]), float(v[0, 1]))
    tris = []
    for i in range(1, len(v) - 1):
        a = (float(v[i, 0]), float(v[i, 1]))
        b = (float(v[i + 1, 0]), float(v[i + 1, 1]))
        cross = (a[0] - v0[0]) * (b[1] - v0[1]) - (a[1] - v0[1]) * (b[0] - v0[0])
        if cross == 0.0:
            continue
        if cross > 0:
            tris.append(([v0, a, b], 1.0))
        else:
            tris.append(([v0, b, a], -1.0))
    return tris


def _clip_area(subject: list[tuple[float, float]], clip_tri: list[tuple[float, float]]) -> float:
    """Area of a convex subject polygon clipped to a CCW triangle."""
    out = subject
    for k in range(3):
        px, py = clip_tri[k]
        qx, qy = clip_tri[(k + 1) % 3]
        ex, ey = qx - px, qy - py
        inp = out
        out = []
        n = len(inp)
        if n == 0:
            return 0.0
        cx, cy = inp[-1]
        c_side = ex * (cy - py) - ey * (cx - px)
        for i in range(n):
            nx, ny = inp[i]
            n_side = ex * (ny - py) - ey * (nx - px)
            if c_side >= 0.0:  # interior lies left of each CCW edge
                out.append((cx, cy))
                if n_side < 0.0:
                    t = c_side / (c_side - n_side)
                    out.append((cx + t * (nx - cx), cy + t * (ny - cy)))
            elif n_side >= 0.0:
                t = c_side / (c_side - n_side)
                out.append((cx + t * (nx - cx), cy + t * (ny - cy)))
            cx, cy, c_side = nx, ny, n_side
        if len(out) < 3:
            return 0.0
    area = 0.0
    ax, ay = out[-1]
    for bx, by in out:
        area += ax * by - bx * ay
        ax, ay = bx, by
    return 0.5 * area


def polygon_intersection_area(a: Polygon, b: Polygon) -> float:
    """Exact area of overlap between two simple polygons (concavity allowed)."""
    # the fan decomposition identity needs a fixed winding direction
    va = canonicalize_ccw(a)
    vb = canonicalize_ccw(b)
    if (
        va[:, 0].min() >= vb[:, 0].max()
        or vb[:, 0].min() >= va[:, 0].max()
        or va[:, 1].min() >= vb[:, 1].max()
        or vb[:, 1].min() >= va[:, 1].max()
    ):
        return 0.0
    tris_a = _fan_triangles(va)
    tris_b = _fan_triangles(vb)
    total = 0.0
    for ta, sa in tris_a:
        axs = (min(p[0] for p in ta), max(p[0] for p in ta))
        ays = (min(p[1] for p in ta), max(p[1] for p in ta))
        for tb, sb in tris_b:
            if (
                axs[0] >= max(p[0] for p in tb)
                or axs[1] <= min(p[0] for p in tb)
                or ays[0] >= max(p[1] for p in tb)
                or ays[1] <= min(p[1] for p in tb)
            ):
                continue
            area = _clip_area(tb, ta)
            if area != 0.0:
                total += sa * sb * area
    if total <= 0.0:
        return 0.0
    return min(total, polygon_area(va), polygon_area(vb))


def iou(a: Polygon, b: Polygon) -> float:
    """Intersection over union of two simple polygons, in [0, 1]."""
    va = _as_vertices(a)
    vb = _as_vertices(b)
    if va.shape == vb.shape and np.array_equal(va, vb):
        return 1.0
    area_a = polygon_area(va)
    area_b = polygon_area(vb)
    inter = polygon_intersection_area(va, vb)
    union = area_a + area_b - inter
    if union <= 0.0:
        return 0.0
    return min(max(inter / union, 0.0), 1.0)


def _orient(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> float:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _on_segment(ax: float, ay: float, bx: float, by: float, px: float, py: float) -> bool:
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def _segments_cross(p1, p2, p3, p4) -> bool:
    """True if closed segments share any point (touching counts)."""
    d1 = _orient(*p3, *p4, *p1)
    d2 = _orient(*p3, *p4, *p2)
    d3 = _orient(*p1, *p2, *p3)
    d4 = _orient(*p1, *p2, *p4)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0:
        return True
    if d1 == 0 and _on_segment(*p3, *p4, *p1):
        return True
    if d2 == 0 and _on_segment(*p3, *p4, *p2):
        return True
    if d3 == 0 and _on_segment(*p1, *p2, *p3):
        return True
    if d4 == 0 and _on_segment(*p1, *p2, *p4):
        return True
    return False


def is_simple_polygon(p: Polygon) -> bool:
    """Pairwise-segment simplicity test: edges meet only at shared endpoints."""
    try:
        v = _as_vertices(p)
    except ValueError:
        return False
    n = len(v)
    pts = [(float(x), float(y)) for x, y in v]
    for i in range(n):
        if pts[i] == pts[(i + 1) % n]:
            return False  # zero-length edge
    for i in range(n):
        p1, p2 = pts[i], pts[(i + 1) % n]
        for j in range(i + 1, n):
            p3, p4 = pts[j], pts[(j + 1) % n]
            adjacent = (j == i + 1) or (i == 0 and j == n - 1)
            if adjacent:
                shared = p2 if j == i + 1 else p1
                o1 = p1 if j == i + 1 else p2
                o2 = p4 if j == i + 1 else p3
                if _orient(*shared, *o1, *o2) == 0.0:
                    # collinear neighbours: reject if they fold back on each other
                    dot = (o1[0] - shared[0]) * (o2[0] - shared[0]) + (o1[1] - shared[1]) * (o2[1] - shared[1])
                    if dot > 0:
                        return False
                continue
            if _segments_cross(p1, p2, p3, p4):
                return False
    return True
