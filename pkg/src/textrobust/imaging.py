"""8-bit RGB raster primitives shared by the corruption and augmentation ops.

Images are ``numpy`` arrays of shape ``(height, width, 3)`` and dtype
``uint8``. All heavy math happens in float64 on a [0, 1] scale and is
quantized exactly once per operation (round-half-to-even, then clamp), so
rounding never compounds across the internal steps of a transform.

Spatial operations use the reflect-101 border convention (edge pixel not
repeated), which keeps corruption strength uniform up to the image border.
"""

from __future__ import annotations

import io
import os

import numpy as np
from PIL import Image, UnidentifiedImageError
from scipy import signal

__all__ = [
    "DecodeError",
    "convolve2d",
    "load_image",
    "psnr",
    "resize_bilinear",
    "save_image",
    "to_float",
    "from_float",
]


class DecodeError(ValueError):
    """Raised when a file exists but cannot be decoded as an image."""


def _check_image(img: np.ndarray, name: str = "img") -> np.ndarray:
    img = np.asarray(img)
    if img.ndim != 3 or img.shape[2] != 3 or img.dtype != np.uint8:
        raise ValueError(f"{name} must be an (H, W, 3) uint8 array, got shape {img.shape} dtype {img.dtype}")
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError(f"{name} must have positive dimensions")
    return img


def to_float(img: np.ndarray) -> np.ndarray:
    """uint8 image -> float64 in [0, 1]."""
    return _check_image(img).astype(np.float64) / 255.0


def from_float(x: np.ndarray) -> np.ndarray:
    """float image in [0, 1] -> uint8, quantized once (rint, then clamp)."""
    return np.clip(np.rint(np.asarray(x, dtype=np.float64) * 255.0), 0, 255).astype(np.uint8)


def load_image(path: str | os.PathLike) -> np.ndarray:
    """Decode a PNG or JPEG file to an RGB buffer.

    Grayscale and alpha inputs are converted to RGB (alpha dropped).
    Raises ``FileNotFoundError``/``OSError`` for I/O problems and
    ``DecodeError`` for corrupt files.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        with Image.open(io.BytesIO(data)) as im:
            im = im.convert("RGB")
            arr = np.asarray(im, dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise DecodeError(f"{path}: not a decodable image: {exc}") from exc
    except (OSError, SyntaxError, ValueError) as exc:
        raise DecodeError(f"{path}: corrupt image data: {exc}") from exc
    if arr.ndim == 2:
        arr = np.stack([arr] * 3, axis=-1)
    return arr


def save_image(img: np.ndarray, path: str | os.PathLike, format: str = "png", quality: int = 95) -> None:
    """Write an RGB buffer as PNG (lossless) or JPEG at the given quality."""
    img = _check_image(img)
    fmt = format.lower()
    if fmt not in ("png", "jpeg", "jpg"):
        raise ValueError(f"unsupported format {format!r}; use 'png' or 'jpeg'")
    if not 1 <= quality <= 100:
        raise ValueError("jpeg quality must be in 1..100")
    im = Image.fromarray(img, mode="RGB")
    if fmt == "png":
        im.save(path, format="PNG")
    else:
        im.save(path, format="JPEG", quality=quality)


def _resize_bilinear_float(x: np.ndarray, new_h: int, new_w: int) -> np.ndarray:
    """Bilinear resize of a float (H, W[, C]) array with half-pixel centers.

    Separable: rows are interpolated first, then columns.
    """
    h, w = x.shape[:2]
    if (new_h, new_w) == (h, w):
        return x.copy()
    src_y = np.clip((np.arange(new_h) + 0.5) * (h / new_h) - 0.5, 0.0, h - 1.0)
    src_x = np.clip((np.arange(new_w) + 0.5) * (w / new_w) - 0.5, 0.0, w - 1.0)
    y0 = np.floor(src_y).astype(np.intp)
    x0 = np.floor(src_x).astype(np.intp)
    y1 = np.minimum(y0 + 1, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    wy = src_y - y0
    wx = src_x - x0
    if x.ndim == 3:
        wy = wy[:, None, None]
        wx = wx[None, :, None]
    else:
        wy = wy[:, None]
        wx = wx[None, :]
    rows = x[y0] * (1 - wy) + x[y1] * wy
    return rows[:, x0] * (1 - wx) + rows[:, x1] * wx


def _resize_nearest_float(x: np.ndarray, new_h: int, new_w: int) -> np.ndarray:
    """Nearest-neighbour resize (half-pixel centers); used by pixelation."""
    h, w = x.shape[:2]
    iy = np.minimum(((np.arange(new_h) + 0.5) * (h / new_h)).astype(np.intp), h - 1)
    ix = np.minimum(((np.arange(new_w) + 0.5) * (w / new_w)).astype(np.intp), w - 1)
    return x[iy[:, None], ix[None, :]]


def resize_bilinear(img: np.ndarray, new_w: int, new_h: int) -> np.ndarray:
    """Resize an RGB buffer with bilinear interpolation (half-pixel centers).

    Resizing to the input dimensions returns a bit-exact copy.
    """
    img = _check_image(img)
    if new_w < 1 or new_h < 1:
        raise ValueError(f"target dimensions must be >= 1, got {new_w}x{new_h}")
    if (new_h, new_w) == img.shape[:2]:
        return img.copy()
    return from_float(_resize_bilinear_float(to_float(img), new_h, new_w))


def _convolve2d_float(x: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Per-channel 2-D convolution with reflect-101 padding, no clamping."""
    kernel = np.asarray(kernel, dtype=np.float64)
    if kernel.ndim != 2 or kernel.shape[0] % 2 == 0 or kernel.shape[1] % 2 == 0:
        raise ValueError(f"kernel must be 2-D with odd dimensions, got shape {kernel.shape}")
    ph, pw = kernel.shape[0] // 2, kernel.shape[1] // 2
    if x.ndim == 2:
        x = x[:, :, None]
    if ph >= x.shape[0] or pw >= x.shape[1]:
        # kernel wider than the image: single reflection cannot pad it; let
        # ndimage mirror repeatedly (slower, only reachable for tiny images)
        from scipy import ndimage

        out = ndimage.convolve(x, kernel[:, :, None], mode="mirror")
    else:
        pad = ((ph, ph), (pw, pw), (0, 0))
        # np.pad 'reflect' is the reflect-101 convention (edge sample not repeated)
        padded = np.pad(x, pad, mode="reflect") if (ph or pw) else x
        out = np.empty_like(x)
        for c in range(x.shape[2]):
            out[:, :, c] = signal.convolve(padded[:, :, c], kernel, mode="valid")
    return np.squeeze(out, axis=2) if out.shape[2] == 1 else out


def convolve2d(img: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Convolve each channel with an odd-sized kernel (reflect-101 border)."""
    img = _check_image(img)
    out = _convolve2d_float(img.astype(np.float64), np.asarray(kernel, dtype=np.float64))
    return np.clip(np.rint(out), 0, 255).astype(np.uint8)


def psnr(a: np.ndarray, b: np.ndarray) -> float:
    """Peak signal-to-noise ratio in dB; +inf when the buffers are identical."""
    a = _check_image(a, "a")
    b = _check_image(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    diff = a.astype(np.float64) - b.astype(np.float64)
    mse = np.mean(diff * diff)
    if mse == 0.0:
        return float("inf")
    return float(10.0 * np.log10(255.0**2 / mse))
