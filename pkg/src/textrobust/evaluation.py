"""Detection evaluation: IoU matching against ground truth, P/R/F scoring.

The protocol mirrors the standard ICDAR single-operating-point evaluation:

1. predictions overlapping a don't-care ground-truth region (intersection
   over the prediction's own area above a threshold) are discarded, neither
   rewarded nor penalized;
2. remaining predictions are matched one-to-one to non-ignored ground truth
   greedily in descending IoU order, accepting pairs at or above the IoU
   threshold;
3. precision/recall/F-measure come from the matched counts. Dataset scores
   are micro-averaged: counts are summed across images before scoring.

Confidence values are accepted but ignored (no ranking sweep).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .annotations import TextInstance
from .geometry import iou, is_simple_polygon, polygon_area, polygon_intersection_area

__all__ = ["EvalConfig", "MatchCounts", "ScoreTriple", "match_instances", "score", "eval_dataset"]


@dataclass(frozen=True)
class EvalConfig:
    iou_threshold: float = 0.5
    ignore_overlap_threshold: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.iou_threshold <= 1.0:
            raise ValueError("iou_threshold must be in (0, 1]")
        if not 0.0 < self.ignore_overlap_threshold <= 1.0:
            raise ValueError("ignore_overlap_threshold must be in (0, 1]")


@dataclass(frozen=True)
class MatchCounts:
    true_positives: int = 0
    num_predictions: int = 0
    num_ground_truth: int = 0

    def __add__(self, other: "MatchCounts") -> "MatchCounts":
        return MatchCounts(
            self.true_positives + other.true_positives,
            self.num_predictions + other.num_predictions,
            self.num_ground_truth + other.num_ground_truth,
        )


@dataclass(frozen=True)
class ScoreTriple:
    precision: float
    recall: float
    f_measure: float


def _poly_key(inst: TextInstance) -> tuple:
    return tuple(map(tuple, inst.polygon))


def match_instances(
    preds: list[TextInstance], gts: list[TextInstance], cfg: EvalConfig = EvalConfig()
) -> MatchCounts:
    """Match predictions to ground truth for one image."""
    valid_preds = []
    for p in preds:
        if not is_simple_polygon(p.polygon) or polygon_area(p.polygon) == 0.0:
            warnings.warn("skipping invalid (self-intersecting or degenerate) prediction polygon")
            continue
        valid_preds.append(p)

    ignored = [g for g in gts if g.ignore]
    care_gts = [g for g in gts if not g.ignore]

    kept = []
    for p in valid_preds:
        area = polygon_area(p.polygon)
        discard = any(
            polygon_intersection_area(p.polygon, g.polygon) / area > cfg.ignore_overlap_threshold
            for g in ignored
        )
        if not discard:
            kept.append(p)

    # deterministic under input permutation: candidates ordered by IoU with
    # ties broken by the polygon values themselves (identity stays by index
    # so coincident duplicates can each be matched)
    candidates = []
    for pi, p in enumerate(kept):
        for gi, g in enumerate(care_gts):
            overlap = iou(p.polygon, g.polygon)
            if overlap >= cfg.iou_threshold:
                candidates.append((overlap, _poly_key(p), _poly_key(g), pi, gi))
    candidates.sort(key=lambda c: (-c[0], c[1], c[2]))

    matched_preds: set = set()
    matched_gts: set = set()
    tp = 0
    for overlap, _pk, _gk, pi, gi in candidates:
        if pi in matched_preds or gi in matched_gts:
            continue
        matched_preds.add(pi)
        matched_gts.add(gi)
        tp += 1

    return MatchCounts(true_positives=tp, num_predictions=len(kept), num_ground_truth=len(care_gts))


def score(counts: MatchCounts) -> ScoreTriple:
    """Precision/recall/F from matched counts.

    An image with no predictions and no ground truth scores 1/1/1 (vacuously
    perfect); it contributes only zeros to micro-averaged sums.
    """
    if counts.num_predictions == 0 and counts.num_ground_truth == 0:
        return ScoreTriple(1.0, 1.0, 1.0)
    p = counts.true_positives / counts.num_predictions if counts.num_predictions > 0 else 0.0
    r = counts.true_positives / counts.num_ground_truth if counts.num_ground_truth > 0 else 0.0
    f = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return ScoreTriple(p, r, f)


def eval_dataset(per_image: list[MatchCounts]) -> ScoreTriple:
    """Micro-averaged dataset score: sum counts across images, then score."""
    total = MatchCounts()
    for c in per_image:
        total = total + c
    return score(total)
