"""Training-data augmentation: foreground/background mixing.

``fbmix`` alpha-blends a labeled text image with a text-free natural
background image (resized to the foreground's size when needed); labels pass
through untouched, because the text itself does not move. ``mixup`` is the
classic two-labeled-image blend kept as a baseline: both label sets are kept,
with the second image's polygons rescaled by the resize ratios.

Blending is exact: each output pixel equals round(alpha * a + (1 - alpha) * b)
per channel, and the boundary alphas 0 and 1 short-circuit to bit-exact
copies of the corresponding input.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .annotations import TextInstance
from .imaging import _check_image, _resize_bilinear_float
from .rng import derive_rng

__all__ = ["AugmentedSample", "BackgroundPool", "fbmix", "mixup", "sample_background"]


@dataclass
class AugmentedSample:
    image: np.ndarray
    labels: list[TextInstance]


@dataclass
class BackgroundPool:
    """Paths to text-free background images; sampled uniformly by seed."""

    entries: list[Path]

    @classmethod
    def from_dir(cls, root: str | Path) -> "BackgroundPool":
        root = Path(root)
        entries = sorted(p for p in root.iterdir() if p.suffix.lower() in (".png", ".jpg", ".jpeg"))
        return cls(entries=entries)

    @classmethod
    def from_manifest(cls, path: str | Path) -> "BackgroundPool":
        """Plain text file listing one image path per line (# comments allowed)."""
        base = Path(path).parent
        entries = []
        for raw in Path(path).read_text(encoding="utf-8").splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            p = Path(line)
            entries.append(p if p.is_absolute() else base / p)
        return cls(entries=entries)


def _blend(a: np.ndarray, b: np.ndarray, alpha: float) -> np.ndarray:
    mixed = alpha * a.astype(np.float64) + (1.0 - alpha) * b
    return np.clip(np.rint(mixed), 0, 255).astype(np.uint8)


def fbmix(
    fg: np.ndarray, fg_labels: list[TextInstance], bg: np.ndarray, alpha: float = 0.5
) -> AugmentedSample:
    """Blend a foreground training image with a background image.

    Labels are returned unchanged (same objects) for every alpha.
    """
    fg = _check_image(fg, "fg")
    bg = _check_image(bg, "bg")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must be in [0, 1]")
    if alpha == 1.0:
        return AugmentedSample(fg.copy(), list(fg_labels))
    if bg.shape[:2] != fg.shape[:2]:
        h, w = fg.shape[:2]
        bg_f = _resize_bilinear_float(bg.astype(np.float64), h, w)
    else:
        bg_f = bg.astype(np.float64)
        if alpha == 0.0:
            return AugmentedSample(bg.copy(), list(fg_labels))
    return AugmentedSample(_blend(fg, bg_f, alpha), list(fg_labels))


def mixup(
    a: np.ndarray,
    a_labels: list[TextInstance],
    b: np.ndarray,
    b_labels: list[TextInstance],
    alpha: float = 0.5,
) -> AugmentedSample:
    """Blend two labeled images; labels are concatenated.

    ``b`` is resized to ``a``'s dimensions and its polygons are scaled by the
    same ratios.
    """
    a = _check_image(a, "a")
    b = _check_image(b, "b")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must be in [0, 1]")
    ah, aw = a.shape[:2]
    bh, bw = b.shape[:2]
    sx, sy = aw / bw, ah / bh
    b_f = b.astype(np.float64) if (bh, bw) == (ah, aw) else _resize_bilinear_float(b.astype(np.float64), ah, aw)
    scaled_b_labels = [
        TextInstance(inst.polygon * np.array([sx, sy]), inst.ignore, inst.transcription)
        for inst in b_labels
    ]
    return AugmentedSample(_blend(a, b_f, alpha), list(a_labels) + scaled_b_labels)


def sample_background(pool: BackgroundPool, master_seed: int = 0, image_id: str = "") -> Path:
    """Seeded uniform choice from the pool."""
    if not pool.entries:
        raise ValueError("background pool is empty")
    rng = derive_rng(master_seed, image_id, "fbmix-background", 0)
    return pool.entries[int(rng.integers(0, len(pool.entries)))]
