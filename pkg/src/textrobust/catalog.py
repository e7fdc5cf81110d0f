"""The corruption catalog: canonical ordering, categories, severity parameters.

The benchmark applies 18 corruption types at severity levels 1..5 (severity 0
is the identity, used for testing). Parameters are pinned here as plain data
so they can be emitted into documentation; each list is indexed by
``severity - 1``. Values were chosen to give five visibly distinct,
monotonically harsher levels on typical scene-text imagery.
"""

from __future__ import annotations

__all__ = [
    "CORRUPTIONS",
    "CATEGORIES",
    "CATEGORY_OF",
    "SEVERITIES",
    "list_corruptions",
    "severity_params",
]

# canonical order: noise, blur, weather, digital, geometry
CORRUPTIONS: tuple[tuple[str, str], ...] = (
    ("gaussian_noise", "noise"),
    ("shot_noise", "noise"),
    ("impulse_noise", "noise"),
    ("defocus_blur", "blur"),
    ("glass_blur", "blur"),
    ("motion_blur", "blur"),
    ("zoom_blur", "blur"),
    ("snow", "weather"),
    ("frost", "weather"),
    ("fog", "weather"),
    ("brightness", "digital"),
    ("contrast", "digital"),
    ("pixelate", "digital"),
    ("jpeg", "digital"),
    ("dirty", "digital"),
    ("lines", "digital"),
    ("rotation", "geometry"),
    ("elastic", "geometry"),
)

CATEGORIES: tuple[str, ...] = ("noise", "blur", "weather", "digital", "geometry")
CATEGORY_OF: dict[str, str] = dict(CORRUPTIONS)
SEVERITIES: tuple[int, ...] = (1, 2, 3, 4, 5)

_PARAMS: dict[str, list[dict]] = {
    "gaussian_noise": [{"sigma": s} for s in (0.08, 0.12, 0.18, 0.26, 0.38)],
    "shot_noise": [{"photons": c} for c in (60, 25, 12, 5, 3)],
    "impulse_noise": [{"fraction": a} for a in (0.03, 0.06, 0.09, 0.17, 0.27)],
    "defocus_blur": [{"radius": r, "alias_sigma": 0.5} for r in (3, 4, 6, 8, 10)],
    "glass_blur": [
        {"iterations": i, "sigma": s, "max_shift": 2}
        for i, s in ((1, 0.7), (2, 0.9), (2, 1.1), (3, 1.3), (4, 1.5))
    ],
    "motion_blur": [{"length": n} for n in (10, 15, 15, 20, 25)],
    "zoom_blur": [{"max_zoom": z, "step": 0.01} for z in (1.11, 1.16, 1.21, 1.26, 1.31)],
    "snow": [
        {"amount": a, "flake_sigma": 0.3, "flake_zoom": 2.0, "threshold": 0.55, "blur_length": n, "blend": b}
        for a, n, b in (
            (0.10, 10, 0.85),
            (0.15, 12, 0.78),
            (0.20, 14, 0.71),
            (0.25, 16, 0.64),
            (0.30, 18, 0.57),
        )
    ],
    "frost": [{"opacity": o} for o in (0.25, 0.35, 0.45, 0.55, 0.65)],
    "fog": [{"strength": s, "decay": 2.0} for s in (1.5, 2.0, 2.5, 3.0, 3.5)],
    "brightness": [{"shift": v} for v in (0.1, 0.2, 0.3, 0.4, 0.5)],
    "contrast": [{"scale": c} for c in (0.4, 0.3, 0.2, 0.1, 0.05)],
    "pixelate": [{"factor": f} for f in (0.6, 0.5, 0.4, 0.3, 0.25)],
    "jpeg": [{"quality": q} for q in (25, 18, 15, 10, 7)],
    "dirty": [
        {"blobs": n, "radius_range": (0.03, 0.12), "opacity": o}
        for n, o in ((2, 0.35), (4, 0.45), (6, 0.55), (9, 0.65), (12, 0.75))
    ],
    "lines": [
        {"strokes": k, "width_frac": 0.008, "width_scale": s / 5.0}
        for k, s in ((3, 1), (6, 2), (9, 3), (12, 4), (15, 5))
    ],
    "rotation": [{"angle_deg": a} for a in (5, 10, 15, 25, 35)],
    "elastic": [
        {"alpha": a, "sigma": s}
        for a, s in ((10.0, 5.0), (17.5, 4.75), (25.0, 4.5), (32.5, 4.25), (40.0, 4.0))
    ],
}


def list_corruptions() -> list[tuple[str, str]]:
    """All 18 (corruption id, category) pairs in canonical benchmark order."""
    return list(CORRUPTIONS)


def severity_params(corruption: str, severity: int) -> dict:
    """Catalog parameters for one corruption at one severity level (1..5)."""
    if corruption not in _PARAMS:
        raise KeyError(f"unknown corruption {corruption!r}")
    if severity not in SEVERITIES:
        raise ValueError(f"severity must be in 1..5, got {severity}")
    return dict(_PARAMS[corruption][severity - 1])
