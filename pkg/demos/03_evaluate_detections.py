"""Score detector output against polygon ground truth.

Shows the matching protocol piece by piece: IoU of polygons, one-to-one
greedy matching at threshold 0.5, don't-care filtering, and the micro-average
over a dataset.

Run:  python demos/03_evaluate_detections.py
"""

import numpy as np

from textrobust import EvalConfig, eval_dataset, iou, match_instances, score
from textrobust.annotations import TextInstance


def box(x0, y0, x1, y1, ignore=False):
    return TextInstance(np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]], float), ignore=ignore)


# --- polygon IoU, the matching criterion -----------------------------------
gt = box(100, 40, 180, 60)
good = box(102, 41, 181, 61)      # tight detection
sloppy = box(100, 40, 260, 60)    # way too wide
print(f"IoU(tight detection, gt)  = {iou(good.polygon, gt.polygon):.3f}")
print(f"IoU(sloppy detection, gt) = {iou(sloppy.polygon, gt.polygon):.3f}")

# --- one image: greedy one-to-one matching at IoU >= 0.5 --------------------
gts = [gt, box(10, 10, 60, 25), box(200, 100, 240, 115, ignore=True)]
preds = [
    good,                      # matches gt 1
    box(12, 10, 58, 26),       # matches gt 2
    box(202, 101, 238, 114),   # falls inside the don't-care region -> discarded
    box(0, 200, 40, 215),      # false positive
]
counts = match_instances(preds, gts, EvalConfig(iou_threshold=0.5))
print(f"\nimage counts: TP={counts.true_positives}, "
      f"predictions kept={counts.num_predictions}, ground truth={counts.num_ground_truth}")
triple = score(counts)
print(f"precision={triple.precision:.3f} recall={triple.recall:.3f} F={triple.f_measure:.3f}")

# Note the prediction over the ignorable region was neither rewarded nor
# penalized: it simply vanished from the precision denominator.

# --- dataset level: micro-average, not mean-of-F ----------------------------
per_image = [
    match_instances([good], [gt]),                  # perfect image
    match_instances([good, sloppy], [gt]),          # one duplicate detection
    match_instances([], [box(0, 0, 10, 10)]),       # missed everything
]
overall = eval_dataset(per_image)
print(f"\ndataset micro-average: precision={overall.precision:.3f} "
      f"recall={overall.recall:.3f} F={overall.f_measure:.3f}")

# Counts are summed before scoring, so a large image with many words weighs
# more than a near-empty one; images with no text and no detections count as
# vacuously perfect without inflating anything.
