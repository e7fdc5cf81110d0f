"""Shared test fixtures: synthetic corpora, datasets, and geometry oracles."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from textrobust.annotations import TextInstance, gt_filename, write_gt
from textrobust.imaging import _resize_bilinear_float, from_float, save_image


def make_corpus(n: int = 10, h: int = 120, w: int = 160, seed: int = 99) -> list[np.ndarray]:
    """Deterministic natural-looking images: gradients, blobs, text-like bars."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        yy, xx = np.mgrid[0:h, 0:w].astype(float)
        base = np.stack(
            [
                0.25 + 0.5 * (xx / w) * rng.uniform(0.5, 1.0),
                0.25 + 0.5 * (yy / h) * rng.uniform(0.5, 1.0),
                0.35 + 0.3 * np.sin(2 * np.pi * (xx / w + rng.uniform())),
            ],
            axis=-1,
        )
        for _ in range(6):
            cx, cy, r = rng.uniform(0, w), rng.uniform(0, h), rng.uniform(8, 30)
            d = np.hypot(xx - cx, yy - cy) / r
            base += np.clip(1 - d, 0, 1)[..., None] * rng.uniform(-0.4, 0.4, 3)
        for _ in range(5):
            x0, y0 = int(rng.integers(0, max(1, w - 30))), int(rng.integers(0, max(1, h - 10)))
            bw, bh = int(rng.integers(15, 40)), int(rng.integers(4, 9))
            base[y0 : min(y0 + bh, h), x0 : min(x0 + bw, w)] *= rng.uniform(0.1, 0.4)
        tex = _resize_bilinear_float(rng.random((h // 4, w // 4)), h, w)
        base += 0.08 * (tex[..., None] - 0.5)
        out.append(from_float(np.clip(base, 0, 1)))
    return out


def quad(x0: float, y0: float, x1: float, y1: float) -> np.ndarray:
    return np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]], dtype=float)


def make_dataset(root: Path, n: int = 5, h: int = 72, w: int = 96, seed: int = 5, fmt: str = "ic15_quad") -> list[str]:
    """Write a small ic15-style dataset (images/ + gts/); returns image stems.

    Each image carries three text quads in disjoint horizontal bands (the
    third is a don't-care region), so identical predictions always score a
    perfect match.
    """
    (root / "images").mkdir(parents=True, exist_ok=True)
    (root / "gts").mkdir(parents=True, exist_ok=True)
    corpus = make_corpus(n=n, h=h, w=w, seed=seed)
    rng = np.random.default_rng(seed + 1)
    band = (h - 8) // 3
    stems = []
    for i, img in enumerate(corpus):
        stem = f"img_{i + 1}"
        save_image(img, root / "images" / f"{stem}.png")
        instances = []
        for k in range(3):
            bw = int(rng.integers(14, min(30, w - 6)))
            bh = int(rng.integers(4, band - 1))
            x0 = int(rng.integers(2, w - bw - 2))
            y0 = 4 + k * band + int(rng.integers(0, band - bh))
            instances.append(
                TextInstance(quad(x0, y0, x0 + bw, y0 + bh), ignore=(k == 2), transcription=None if k == 2 else f"word{k}")
            )
        (root / "gts" / gt_filename(stem, fmt)).write_text(write_gt(instances, fmt), encoding="utf-8")
        stems.append(stem)
    return stems


# ---------------------------------------------------------------------------
# independent geometry oracle: point-in-polygon sampling on a sub-pixel grid
# (cell centers tested by even-odd crossing, one scanline row at a time)
# ---------------------------------------------------------------------------


def _inside_grid(xs: np.ndarray, ys: np.ndarray, poly: np.ndarray) -> np.ndarray:
    """Even-odd membership of every (xs[j], ys[i]) sample point in a polygon.

    For each scanline the x positions of edge crossings are computed; a sample
    is inside iff an odd number of crossings lie at or left of it. Crossings
    are scattered as parity toggles and accumulated along the row.
    """
    x1, y1 = poly[:, 0], poly[:, 1]
    x2, y2 = np.roll(x1, -1), np.roll(y1, -1)
    hit = (y1[None, :] > ys[:, None]) != (y2[None, :] > ys[:, None])  # (rows, edges)
    with np.errstate(divide="ignore", invalid="ignore"):
        cross = x1[None, :] + (ys[:, None] - y1[None, :]) * (x2 - x1)[None, :] / (y2 - y1)[None, :]
    rows_idx, edges_idx = np.nonzero(hit)
    step = xs[1] - xs[0] if len(xs) > 1 else 1.0
    # first sample column with xs[j] >= crossing
    cols_idx = np.clip(np.ceil((cross[rows_idx, edges_idx] - xs[0]) / step).astype(np.int64), 0, len(xs))
    toggles = np.zeros((len(ys), len(xs) + 1), dtype=np.uint8)
    np.add.at(toggles, (rows_idx, cols_idx), 1)
    parity = (toggles & 1).astype(bool)
    return np.logical_xor.accumulate(parity, axis=1)[:, : len(xs)]


def raster_area(poly: np.ndarray, cells: int = 2000) -> float:
    """Grid-sampled area of one polygon over its bounding box."""
    poly = np.asarray(poly, dtype=float)
    lo, hi = poly.min(axis=0), poly.max(axis=0)
    xs = lo[0] + (np.arange(cells) + 0.5) * (hi[0] - lo[0]) / cells
    ys = lo[1] + (np.arange(cells) + 0.5) * (hi[1] - lo[1]) / cells
    count = int(_inside_grid(xs, ys, poly).sum())
    return count / (cells * cells) * float((hi[0] - lo[0]) * (hi[1] - lo[1]))


def raster_intersection_area(pa: np.ndarray, pb: np.ndarray, cells: int = 2000) -> float:
    """Grid-sampled overlap area over the intersection of the bounding boxes."""
    pa = np.asarray(pa, dtype=float)
    pb = np.asarray(pb, dtype=float)
    lo = np.maximum(pa.min(axis=0), pb.min(axis=0))
    hi = np.minimum(pa.max(axis=0), pb.max(axis=0))
    if (hi <= lo).any():
        return 0.0
    xs = lo[0] + (np.arange(cells) + 0.5) * (hi[0] - lo[0]) / cells
    ys = lo[1] + (np.arange(cells) + 0.5) * (hi[1] - lo[1]) / cells
    count = int((_inside_grid(xs, ys, pa) & _inside_grid(xs, ys, pb)).sum())
    return count / (cells * cells) * float((hi[0] - lo[0]) * (hi[1] - lo[1]))


def random_star_polygon(rng: np.random.Generator, cx: float, cy: float, rmax: float, k: int) -> np.ndarray:
    """Random simple (star-shaped, frequently concave) polygon with k vertices."""
    angles = np.sort(rng.uniform(0, 2 * np.pi, k))
    radii = rng.uniform(0.25, 1.0, k) * rmax
    return np.stack([cx + radii * np.cos(angles), cy + radii * np.sin(angles)], axis=1)
