"""Ground-truth and prediction annotation formats, plus dataset manifests.

Three interchangeable formats are supported:

* ``ic15_quad``  -- one 4-point quadrilateral per line:
  ``x1,y1,x2,y2,x3,y3,x4,y4,transcription`` (transcription ``###`` marks a
  don't-care region; it may itself contain commas).
* ``poly_txt``   -- one polygon per line as an even comma list
  ``x1,y1,...,xk,yk`` (k >= 3), optional trailing ``,###`` for don't-care.
  Prediction files use the same grammar with an optional trailing
  confidence value (odd field count).
* ``json``       -- ``{"image_id": ..., "instances": [{"polygon": [[x,y],...],
  "ignore": bool, "transcription": str|null, "confidence": num|null}]}``.

Parsed polygons are validated (simple, non-zero area) and stored in
canonical counter-clockwise order; coordinates are kept as floats because
geometrically corrupted ground truth is non-integral.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .geometry import canonicalize_ccw, is_simple_polygon, signed_area

__all__ = [
    "ParseError",
    "TextInstance",
    "ImageAnnotations",
    "DatasetManifest",
    "FORMATS",
    "parse_ic15_gt",
    "parse_poly_gt",
    "parse_predictions",
    "parse_json_annotations",
    "parse_gt",
    "write_gt",
    "write_json_annotations",
    "gt_filename",
    "build_manifest",
]

FORMATS = ("ic15_quad", "poly_txt", "json")

IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg")


class ParseError(ValueError):
    """Annotation file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class TextInstance:
    """One text region: a simple polygon, a don't-care flag, optional text."""

    polygon: np.ndarray  # (n, 2) float64, canonical CCW
    ignore: bool = False
    transcription: str | None = None

    def __post_init__(self):
        self.polygon = np.asarray(self.polygon, dtype=np.float64).reshape(-1, 2)

    def transformed(self, matrix: np.ndarray) -> "TextInstance":
        """Map the polygon through a 2x3 affine matrix."""
        m = np.asarray(matrix, dtype=np.float64)
        pts = self.polygon @ m[:, :2].T + m[:, 2]
        return TextInstance(canonicalize_ccw(pts), self.ignore, self.transcription)


@dataclass
class ImageAnnotations:
    image_id: str
    instances: list[TextInstance] = field(default_factory=list)
    width: int | None = None
    height: int | None = None


@dataclass
class DatasetManifest:
    root: Path
    format: str
    entries: list[tuple[Path, Path]]  # (image file, gt file)
    warnings: list[str] = field(default_factory=list)


def _validated_polygon(coords: list[float], line_no: int) -> np.ndarray:
    pts = np.asarray(coords, dtype=np.float64).reshape(-1, 2)
    if len(pts) < 3:
        raise ParseError(f"polygon needs at least 3 vertices, got {len(pts)}", line_no)
    if not is_simple_polygon(pts):
        raise ParseError("polygon is self-intersecting or degenerate", line_no)
    if signed_area(pts) == 0.0:
        raise ParseError("polygon has zero area", line_no)
    return canonicalize_ccw(pts)


def _parse_floats(fields: list[str], line_no: int) -> list[float]:
    out = []
    for f in fields:
        try:
            out.append(float(f))
        except ValueError:
            raise ParseError(f"non-numeric coordinate {f!r}", line_no) from None
    return out


def parse_ic15_gt(text: str) -> list[TextInstance]:
    """Parse ICDAR2015-style quadrilateral ground truth."""
    instances = []
    for line_no, raw in enumerate(text.lstrip("﻿").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split(",", 8)
        if len(fields) < 9:
            raise ParseError(f"expected 8 coordinates plus transcription, got {len(fields)} fields", line_no)
        coords = _parse_floats(fields[:8], line_no)
        transcription = fields[8]
        ignore = transcription == "###"
        instances.append(
            TextInstance(
                _validated_polygon(coords, line_no),
                ignore=ignore,
                transcription=None if ignore else transcription,
            )
        )
    return instances


def parse_poly_gt(text: str) -> list[TextInstance]:
    """Parse polygon-per-line ground truth (CTW1500-style, normalized)."""
    instances = []
    for line_no, raw in enumerate(text.lstrip("﻿").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split(",")
        ignore = False
        if fields and fields[-1].strip() == "###":
            ignore = True
            fields = fields[:-1]
        if len(fields) % 2 != 0:
            raise ParseError(f"odd coordinate count ({len(fields)})", line_no)
        coords = _parse_floats(fields, line_no)
        instances.append(TextInstance(_validated_polygon(coords, line_no), ignore=ignore))
    return instances


def parse_predictions(text: str) -> list[tuple[TextInstance, float | None]]:
    """Parse detector output: polygon lines with an optional trailing confidence."""
    out = []
    for line_no, raw in enumerate(text.lstrip("﻿").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split(",")
        confidence = None
        if len(fields) % 2 == 1:
            values = _parse_floats(fields, line_no)
            confidence = values[-1]
            if not 0.0 <= confidence <= 1.0:
                raise ParseError(f"confidence {confidence} out of range [0, 1]", line_no)
            coords = values[:-1]
        else:
            coords = _parse_floats(fields, line_no)
        out.append((TextInstance(_validated_polygon(coords, line_no)), confidence))
    return out


def parse_json_annotations(text: str) -> ImageAnnotations:
    """Parse the JSON interchange format."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    instances = []
    for idx, inst in enumerate(doc.get("instances", []), start=1):
        coords = [c for pt in inst["polygon"] for c in pt]
        instances.append(
            TextInstance(
                _validated_polygon(coords, idx),
                ignore=bool(inst.get("ignore", False)),
                transcription=inst.get("transcription"),
            )
        )
    return ImageAnnotations(image_id=doc.get("image_id", ""), instances=instances)


def parse_gt(text: str, format: str) -> list[TextInstance]:
    """Dispatch ground-truth parsing by format name."""
    if format == "ic15_quad":
        return parse_ic15_gt(text)
    if format == "poly_txt":
        return parse_poly_gt(text)
    if format == "json":
        return parse_json_annotations(text).instances
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def _fmt_coords(polygon: np.ndarray) -> str:
    return ",".join(f"{v:.2f}" for v in polygon.reshape(-1))


def write_gt(instances: list[TextInstance], format: str, image_id: str = "") -> str:
    """Serialize instances in the requested format (2-decimal coordinates)."""
    if format == "ic15_quad":
        lines = []
        for inst in instances:
            if len(inst.polygon) != 4:
                raise ValueError(f"ic15_quad requires 4-vertex polygons, got {len(inst.polygon)}")
            tail = "###" if inst.ignore else (inst.transcription or "")
            lines.append(f"{_fmt_coords(inst.polygon)},{tail}")
        return "\n".join(lines) + ("\n" if lines else "")
    if format == "poly_txt":
        lines = []
        for inst in instances:
            line = _fmt_coords(inst.polygon)
            if inst.ignore:
                line += ",###"
            lines.append(line)
        return "\n".join(lines) + ("\n" if lines else "")
    if format == "json":
        return write_json_annotations(ImageAnnotations(image_id=image_id, instances=instances))
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def write_json_annotations(annotations: ImageAnnotations, confidences: list[float | None] | None = None) -> str:
    conf = confidences or [None] * len(annotations.instances)
    doc = {
        "image_id": annotations.image_id,
        "instances": [
            {
                "polygon": [[round(float(x), 2), round(float(y), 2)] for x, y in inst.polygon],
                "ignore": inst.ignore,
                "transcription": inst.transcription,
                "confidence": c,
            }
            for inst, c in zip(annotations.instances, conf)
        ],
    }
    return json.dumps(doc, indent=1)


def gt_filename(image_stem: str, format: str) -> str:
    """Ground-truth filename paired with an image stem, per format convention."""
    if format == "ic15_quad":
        return f"gt_{image_stem}.txt"
    if format == "poly_txt":
        return f"{image_stem}.txt"
    if format == "json":
        return f"{image_stem}.json"
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def _gt_stem(gt_name: str, format: str) -> str | None:
    path = Path(gt_name)
    if format == "ic15_quad":
        if path.suffix == ".txt" and path.stem.startswith("gt_"):
            return path.stem[3:]
        return None
    if format == "poly_txt":
        return path.stem if path.suffix == ".txt" else None
    return path.stem if path.suffix == ".json" else None


def build_manifest(root: str | os.PathLike, format: str) -> DatasetManifest:
    """Pair image files with ground-truth files under a dataset root.

    Looks in ``root/images`` and ``root/gts`` when present, otherwise treats
    ``root`` as a flat directory. Unpaired files are returned as warnings,
    not errors. Ordering is lexicographic in the image filename.
    """
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"dataset root {root} does not exist")
    img_dir = root / "images" if (root / "images").is_dir() else root
    gt_dir = root / "gts" if (root / "gts").is_dir() else root

    images = {p.stem: p for p in sorted(img_dir.iterdir()) if p.suffix.lower() in IMAGE_EXTENSIONS}
    gts = {}
    for p in sorted(gt_dir.iterdir()):
        stem = _gt_stem(p.name, format)
        if stem is not None:
            gts[stem] = p

    entries = []
    warnings = []
    for stem in sorted(images):
        if stem in gts:
            entries.append((images[stem], gts[stem]))
        else:
            warnings.append(f"image without ground truth: {images[stem].name}")
    for stem in sorted(set(gts) - set(images)):
        warnings.append(f"ground truth without image: {gts[stem].name}")
    return DatasetManifest(root=root, format=format, entries=entries, warnings=warnings)
