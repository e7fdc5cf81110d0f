"""The 18 corruption transforms at 5 severity levels.

Fifteen transforms follow the familiar noise/blur/weather/digital recipes;
``dirty`` (stain blobs), ``lines`` (painted strokes), and ``rotation`` target
text imagery specifically. ``rotation`` is the only transform that moves
ground truth: its result carries the exact forward affine for mapping
annotation polygons into the enlarged canvas.

Randomness discipline: every transform derives two streams from
(master_seed, image_id, corruption). Spatial randomness (noise fields, blur
directions, blob/stroke placement) comes from a severity-independent "scene"
stream so that severity levels of the same image degrade the *same* scene
progressively -- severity k+1 is strictly harsher than k rather than a fresh
random draw. Only sample-count-dependent noise (shot noise) uses the
severity-keyed stream. Outputs are bit-reproducible for a given
(image, corruption, severity, master_seed, image_id) regardless of call
order or process count.

All pixel math runs in float64 on [0, 1] and is quantized exactly once.
Severity 0 returns the input unchanged (bit-exact) for every corruption.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np
from PIL import Image
from scipy import ndimage

from .catalog import CATEGORY_OF, list_corruptions, severity_params
from .imaging import (
    _check_image,
    _convolve2d_float,
    _resize_bilinear_float,
    _resize_nearest_float,
    from_float,
    to_float,
)
from .rng import derive_rng

__all__ = [
    "CorruptionResult",
    "apply_corruption",
    "corrupt_dirty",
    "corrupt_lines",
    "corrupt_rotation",
    "list_corruptions",
    "severity_params",
]


def identity_transform() -> np.ndarray:
    return np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])


@dataclass
class CorruptionResult:
    """Corrupted image plus the affine mapping original pixel coordinates
    into the corrupted image's frame (identity except for rotation)."""

    image: np.ndarray
    gt_transform: np.ndarray


# --------------------------------------------------------------------------
# shared field / kernel builders
# --------------------------------------------------------------------------


def _gaussian_blur(x: np.ndarray, sigma: float) -> np.ndarray:
    if x.ndim == 3:
        return ndimage.gaussian_filter(x, sigma=(sigma, sigma, 0), mode="mirror")
    return ndimage.gaussian_filter(x, sigma=sigma, mode="mirror")


def _disk_kernel(radius: int, alias_sigma: float) -> np.ndarray:
    L = np.arange(-radius, radius + 1)
    X, Y = np.meshgrid(L, L)
    disk = ((X * X + Y * Y) <= radius * radius).astype(np.float64)
    if alias_sigma > 0:
        disk = ndimage.gaussian_filter(disk, alias_sigma, mode="constant")
    return disk / disk.sum()


def _motion_kernel(length: float, angle_deg: float) -> np.ndarray:
    """Anti-aliased line segment kernel of the given length and direction."""
    n = int(math.ceil(length))
    if n % 2 == 0:
        n += 1
    half = (length - 1.0) / 2.0
    c = (n - 1) / 2.0
    ys, xs = np.mgrid[0:n, 0:n]
    xv = xs - c
    yv = ys - c
    dx = math.cos(math.radians(angle_deg))
    dy = math.sin(math.radians(angle_deg))
    t = np.clip(xv * dx + yv * dy, -half, half)
    dist = np.hypot(xv - t * dx, yv - t * dy)
    kernel = np.clip(1.0 - dist, 0.0, 1.0)
    return kernel / kernel.sum()


def _clipped_zoom(x: np.ndarray, zoom: float) -> np.ndarray:
    """Zoom into the center of the image, keeping the original size."""
    h, w = x.shape[:2]
    ch = max(1, int(round(h / zoom)))
    cw = max(1, int(round(w / zoom)))
    top = (h - ch) // 2
    left = (w - cw) // 2
    return _resize_bilinear_float(x[top : top + ch, left : left + cw], h, w)


def _value_noise(rng: np.random.Generator, h: int, w: int, grids=(4, 8, 16), gain: float = 0.5) -> np.ndarray:
    """Multi-octave value noise in [0, 1] on an (h, w) grid."""
    acc = np.zeros((h, w))
    amp = 1.0
    for g in grids:
        coarse = rng.random((g + 1, g + 1))
        acc += amp * _resize_bilinear_float(coarse, h, w)
        amp *= gain
    lo, hi = acc.min(), acc.max()
    return (acc - lo) / (hi - lo) if hi > lo else np.zeros_like(acc)


def _plasma(rng: np.random.Generator, h: int, w: int, decay: float) -> np.ndarray:
    """Diamond-square heightmap in [0, 1], cropped to (h, w)."""
    size = 1 << max(5, int(math.ceil(math.log2(max(h, w)))))
    a = np.zeros((size, size))
    step = size
    amp = 1.0

    def wibbled(base: np.ndarray) -> np.ndarray:
        return base / 4.0 + rng.uniform(-amp, amp, base.shape)

    while step >= 2:
        half = step // 2
        corners = a[0:size:step, 0:size:step]
        sq = corners + np.roll(corners, -1, axis=0)
        sq += np.roll(sq, -1, axis=1)
        a[half:size:step, half:size:step] = wibbled(sq)

        centers = a[half:size:step, half:size:step]
        ul = a[0:size:step, 0:size:step]
        left_sum = centers + np.roll(centers, 1, axis=0) + ul + np.roll(ul, -1, axis=1)
        a[0:size:step, half:size:step] = wibbled(left_sum)
        top_sum = centers + np.roll(centers, 1, axis=1) + ul + np.roll(ul, -1, axis=0)
        a[half:size:step, 0:size:step] = wibbled(top_sum)

        step = half
        amp /= decay

    a -= a.min()
    peak = a.max()
    if peak > 0:
        a /= peak
    return a[:h, :w]


def _hsv_color(hue: float, sat: float, val: float) -> np.ndarray:
    i = int(hue * 6.0) % 6
    f = hue * 6.0 - int(hue * 6.0)
    p, q, t = val * (1 - sat), val * (1 - sat * f), val * (1 - sat * (1 - f))
    rgb = [(val, t, p), (q, val, p), (p, val, t), (p, q, val), (t, p, val), (val, p, q)][i]
    return np.array(rgb)


# --------------------------------------------------------------------------
# transforms (float image in [0, 1] -> float image), identity geometry
# --------------------------------------------------------------------------


def _gaussian_noise(x, params, scene, sev):
    return x + params["sigma"] * scene.standard_normal(x.shape)


def _shot_noise(x, params, scene, sev):
    c = params["photons"]
    return sev.poisson(x * c) / float(c)


def _impulse_noise(x, params, scene, sev):
    u = scene.random(x.shape[:2])
    frac = params["fraction"]
    out = x.copy()
    out[u < frac / 2.0] = 0.0
    out[u > 1.0 - frac / 2.0] = 1.0
    return out


def _defocus_blur(x, params, scene, sev):
    kernel = _disk_kernel(params["radius"], params["alias_sigma"])
    return _convolve2d_float(x, kernel)


def _glass_blur(x, params, scene, sev):
    sigma = params["sigma"]
    shift = params["max_shift"]
    y = _gaussian_blur(x, sigma)
    h, w = y.shape[:2]
    if h > 2 * shift and w > 2 * shift:
        rows = np.arange(shift, h - shift)
        cols = np.arange(shift, w - shift)
        rr, cc = np.meshgrid(rows, cols, indexing="ij")
        for _ in range(params["iterations"]):
            dy, dx = scene.integers(-shift, shift + 1, size=(2, len(rows), len(cols)))
            rp, cp = rr + dy, cc + dx
            y[rr, cc], y[rp, cp] = y[rp, cp], y[rr, cc]
    return _gaussian_blur(y, sigma)


def _motion_blur(x, params, scene, sev):
    angle = scene.uniform(0.0, 180.0)
    return _convolve2d_float(x, _motion_kernel(params["length"], angle))


def _zoom_blur(x, params, scene, sev):
    factors = np.arange(1.0, params["max_zoom"], params["step"])
    acc = x.copy()
    for z in factors:
        acc = acc + _clipped_zoom(x, z)
    return acc / (len(factors) + 1)


def _snow(x, params, scene, sev):
    h, w = x.shape[:2]
    base = scene.standard_normal((h, w))
    angle = scene.uniform(-135.0, -45.0)
    flakes = params["amount"] + params["flake_sigma"] * base
    flakes = _clipped_zoom(flakes, params["flake_zoom"])
    flakes[flakes < params["threshold"]] = 0.0
    flakes = np.clip(flakes, 0.0, 1.0)
    flakes = _convolve2d_float(flakes, _motion_kernel(params["blur_length"], angle))
    gray = x @ np.array([0.299, 0.587, 0.114])
    lifted = np.maximum(x, (1.5 * gray + 0.5)[..., None])
    blend = params["blend"]
    out = blend * x + (1.0 - blend) * lifted
    return out + flakes[..., None] + flakes[::-1, ::-1][..., None]


def _frost(x, params, scene, sev):
    h, w = x.shape[:2]
    noise = _value_noise(scene, h, w, grids=(6, 12, 24, 48))
    ridged = (1.0 - np.abs(2.0 * noise - 1.0)) ** 1.5
    level = 0.55 + 0.45 * ridged
    texture = np.stack([level * 0.94, level * 0.97, level], axis=-1)
    o = params["opacity"]
    return (1.0 - o) * x + o * texture


def _fog(x, params, scene, sev):
    h, w = x.shape[:2]
    plasma = _plasma(scene, h, w, params["decay"])
    strength = params["strength"]
    peak = max(x.max(), 1e-6)
    return (x + strength * plasma[..., None]) * peak / (peak + strength)


def _brightness(x, params, scene, sev):
    return x + params["shift"]


def _contrast(x, params, scene, sev):
    means = x.mean(axis=(0, 1), keepdims=True)
    return (x - means) * params["scale"] + means


def _pixelate(x, params, scene, sev):
    h, w = x.shape[:2]
    f = params["factor"]
    small = _resize_bilinear_float(x, max(1, int(round(h * f))), max(1, int(round(w * f))))
    return _resize_nearest_float(small, h, w)


def _dirty(x, params, scene, sev, trace=None):
    h, w = x.shape[:2]
    out = x.copy()
    lo, hi = params["radius_range"]
    opacity = params["opacity"]
    for _ in range(params["blobs"]):
        cx = scene.uniform(0, w)
        cy = scene.uniform(0, h)
        r = max(2.0, scene.uniform(lo, hi) * min(h, w))
        dark = scene.random() < 0.5
        color = scene.uniform(0.02, 0.25, 3) if dark else scene.uniform(0.65, 0.95, 3)
        # full (unclipped) window, anchored to the blob; 1.4r covers the
        # noise-wobbled boundary, whose cutoff can reach 1.35r
        x0f, x1f = int(math.floor(cx - 1.4 * r)), int(math.ceil(cx + 1.4 * r))
        y0f, y1f = int(math.floor(cy - 1.4 * r)), int(math.ceil(cy + 1.4 * r))
        noise = _value_noise(scene, y1f - y0f, x1f - x0f, grids=(4, 8))
        if trace is not None:
            trace.append({"center": (cx, cy), "radius": r, "color": color, "opacity": opacity})
        x0, x1 = max(x0f, 0), min(x1f, w)
        y0, y1 = max(y0f, 0), min(y1f, h)
        if x0 >= x1 or y0 >= y1:
            continue
        ys, xs = np.mgrid[y0:y1, x0:x1]
        dist = np.hypot(xs + 0.5 - cx, ys + 0.5 - cy) / r
        field = (1.0 - dist) + 0.7 * (noise[y0 - y0f : y1 - y0f, x0 - x0f : x1 - x0f] - 0.5)
        alpha = opacity * np.clip(field * 3.0, 0.0, 1.0)[..., None]
        out[y0:y1, x0:x1] = out[y0:y1, x0:x1] * (1.0 - alpha) + alpha * color
    return out


def _border_point(scene: np.random.Generator, w: int, h: int) -> tuple[float, float]:
    side = int(scene.integers(0, 4))
    u = scene.uniform()
    if side == 0:
        return u * w, 0.0
    if side == 1:
        return float(w), u * h
    if side == 2:
        return u * w, float(h)
    return 0.0, u * h


def _lines(x, params, scene, sev, trace=None):
    h, w = x.shape[:2]
    out = x.copy()
    max_extra = params["width_frac"] * min(h, w) * params["width_scale"]
    for _ in range(params["strokes"]):
        p1 = _border_point(scene, w, h)
        p2 = _border_point(scene, w, h)
        width = 1.0 + scene.random() * max_extra
        flip = scene.random()
        hue = scene.uniform()
        val = scene.uniform()
        if flip < 0.5:
            color = _hsv_color(hue, 1.0, 0.7 + 0.3 * val)  # saturated paint
        else:
            color = _hsv_color(hue, 0.6, 0.05 + 0.15 * val)  # dark scrawl
        if trace is not None:
            trace.append({"p1": p1, "p2": p2, "width": width, "color": color})
        pad = width / 2.0 + 1.0
        x0 = max(int(math.floor(min(p1[0], p2[0]) - pad)), 0)
        x1 = min(int(math.ceil(max(p1[0], p2[0]) + pad)), w)
        y0 = max(int(math.floor(min(p1[1], p2[1]) - pad)), 0)
        y1 = min(int(math.ceil(max(p1[1], p2[1]) + pad)), h)
        if x0 >= x1 or y0 >= y1:
            continue
        ys, xs = np.mgrid[y0:y1, x0:x1]
        px = xs + 0.5
        py = ys + 0.5
        vx, vy = p2[0] - p1[0], p2[1] - p1[1]
        seg_len2 = vx * vx + vy * vy
        if seg_len2 == 0:
            continue
        t = np.clip(((px - p1[0]) * vx + (py - p1[1]) * vy) / seg_len2, 0.0, 1.0)
        dist = np.hypot(px - (p1[0] + t * vx), py - (p1[1] + t * vy))
        alpha = np.clip(width / 2.0 + 0.5 - dist, 0.0, 1.0)[..., None]
        out[y0:y1, x0:x1] = out[y0:y1, x0:x1] * (1.0 - alpha) + alpha * color
    return out


def _elastic_displaced(x, params, scene, sev):
    h, w = x.shape[:2]
    fx = scene.uniform(-1.0, 1.0, (h, w))
    fy = scene.uniform(-1.0, 1.0, (h, w))
    alpha, sigma = params["alpha"], params["sigma"]
    dx = ndimage.gaussian_filter(fx, sigma, mode="mirror") * alpha
    dy = ndimage.gaussian_filter(fy, sigma, mode="mirror") * alpha
    rows, cols = np.mgrid[0:h, 0:w]
    coords = [rows + dy, cols + dx]
    out = np.empty_like(x)
    for c in range(x.shape[2]):
        out[:, :, c] = ndimage.map_coordinates(x[:, :, c], coords, order=1, mode="mirror")
    return out


_FLOAT_TRANSFORMS = {
    "gaussian_noise": _gaussian_noise,
    "shot_noise": _shot_noise,
    "impulse_noise": _impulse_noise,
    "defocus_blur": _defocus_blur,
    "glass_blur": _glass_blur,
    "motion_blur": _motion_blur,
    "zoom_blur": _zoom_blur,
    "snow": _snow,
    "frost": _frost,
    "fog": _fog,
    "brightness": _brightness,
    "contrast": _contrast,
    "pixelate": _pixelate,
    "jpeg": None,  # byte-level round-trip, see apply_corruption
    "dirty": _dirty,
    "lines": _lines,
    "rotation": None,  # geometric, see corrupt_rotation
    "elastic": _elastic_displaced,
}


def _jpeg_roundtrip(img: np.ndarray, quality: int) -> np.ndarray:
    buf = io.BytesIO()
    Image.fromarray(img, mode="RGB").save(buf, format="JPEG", quality=quality)
    buf.seek(0)
    with Image.open(buf) as im:
        return np.asarray(im.convert("RGB"), dtype=np.uint8)


def _rotate_image(img: np.ndarray, angle_deg: float) -> tuple[np.ndarray, np.ndarray]:
    """Rotate about the image center onto an enlarged canvas (reflect fill).

    Returns (rotated image, 2x3 forward affine in continuous coordinates).
    """
    h, w = img.shape[:2]
    phi = math.radians(angle_deg)
    cos, sin = math.cos(phi), math.sin(phi)
    new_w = int(math.ceil(abs(w * cos) + abs(h * sin)))
    new_h = int(math.ceil(abs(w * sin) + abs(h * cos)))
    cx, cy = w / 2.0, h / 2.0
    ncx, ncy = new_w / 2.0, new_h / 2.0
    # forward map: p' = R (p - c) + c'
    matrix = np.array(
        [
            [cos, -sin, ncx - (cos * cx - sin * cy)],
            [sin, cos, ncy - (sin * cx + cos * cy)],
        ]
    )
    # inverse map for sampling output pixel centers
    xs, ys = np.meshgrid(np.arange(new_w) + 0.5, np.arange(new_h) + 0.5)
    rel_x = xs - ncx
    rel_y = ys - ncy
    src_x = cos * rel_x + sin * rel_y + cx
    src_y = -sin * rel_x + cos * rel_y + cy
    coords = [src_y - 0.5, src_x - 0.5]
    x = to_float(img)
    out = np.empty((new_h, new_w, 3))
    for c in range(3):
        out[:, :, c] = ndimage.map_coordinates(x[:, :, c], coords, order=1, mode="mirror")
    return from_float(out), matrix


# --------------------------------------------------------------------------
# public entry points
# --------------------------------------------------------------------------


def apply_corruption(
    img: np.ndarray, corruption: str, severity: int, master_seed: int = 0, image_id: str = ""
) -> CorruptionResult:
    """Apply one corruption at the given severity.

    Severity 0 returns the input bit-exact with an identity transform.
    """
    img = _check_image(img)
    if corruption not in CATEGORY_OF:
        raise KeyError(f"unknown corruption {corruption!r}")
    if not 0 <= severity <= 5:
        raise ValueError(f"severity must be in 0..5, got {severity}")
    if severity == 0:
        return CorruptionResult(img.copy(), identity_transform())

    params = severity_params(corruption, severity)
    scene = derive_rng(master_seed, image_id, corruption, 0)
    sev = derive_rng(master_seed, image_id, corruption, severity)

    if corruption == "rotation":
        sign = 1.0 if scene.random() < 0.5 else -1.0
        image, matrix = _rotate_image(img, sign * params["angle_deg"])
        return CorruptionResult(image, matrix)
    if corruption == "jpeg":
        return CorruptionResult(_jpeg_roundtrip(img, params["quality"]), identity_transform())

    out = _FLOAT_TRANSFORMS[corruption](to_float(img), params, scene, sev)
    return CorruptionResult(from_float(out), identity_transform())


def corrupt_dirty(
    img: np.ndarray,
    severity: int,
    master_seed: int = 0,
    image_id: str = "",
    params: dict | None = None,
    trace: list | None = None,
) -> CorruptionResult:
    """Stain-blob corruption; ``params``/``trace`` are test hooks."""
    img = _check_image(img)
    if params is None:
        params = severity_params("dirty", severity)
    scene = derive_rng(master_seed, image_id, "dirty", 0)
    out = _dirty(to_float(img), params, scene, None, trace=trace)
    return CorruptionResult(from_float(out), identity_transform())


def corrupt_lines(
    img: np.ndarray,
    severity: int,
    master_seed: int = 0,
    image_id: str = "",
    params: dict | None = None,
    trace: list | None = None,
) -> CorruptionResult:
    """Stroke corruption; ``params``/``trace`` are test hooks."""
    img = _check_image(img)
    if params is None:
        params = severity_params("lines", severity)
    scene = derive_rng(master_seed, image_id, "lines", 0)
    out = _lines(to_float(img), params, scene, None, trace=trace)
    return CorruptionResult(from_float(out), identity_transform())


def corrupt_rotation(
    img: np.ndarray,
    severity: int,
    master_seed: int = 0,
    image_id: str = "",
    params: dict | None = None,
) -> CorruptionResult:
    """Rotation corruption with exact ground-truth affine; ``params`` is a test hook."""
    img = _check_image(img)
    if params is None:
        params = severity_params("rotation", severity)
    scene = derive_rng(master_seed, image_id, "rotation", 0)
    sign = 1.0 if scene.random() < 0.5 else -1.0
    image, matrix = _rotate_image(img, sign * params["angle_deg"])
    return CorruptionResult(image, matrix)
