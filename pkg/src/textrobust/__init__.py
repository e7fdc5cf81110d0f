"""textrobust: corruption benchmarks and robustness evaluation for scene text detection.

The toolkit has three jobs:

1. generate corrupted copies of a text-detection dataset (18 corruption
   types x 5 severities, deterministic in a master seed);
2. generate FBMix / MixUp augmented training data;
3. evaluate detection polygons against ground truth and aggregate
   F-measures into mPC / rPC robustness reports.
"""

from .annotations import (
    DatasetManifest,
    ImageAnnotations,
    ParseError,
    TextInstance,
    build_manifest,
    parse_ic15_gt,
    parse_json_annotations,
    parse_poly_gt,
    parse_predictions,
    write_gt,
)
from .augment import AugmentedSample, BackgroundPool, fbmix, mixup, sample_background
from .catalog import CATEGORIES, CORRUPTIONS, list_corruptions, severity_params
from .corruptions import (
    CorruptionResult,
    apply_corruption,
    corrupt_dirty,
    corrupt_lines,
    corrupt_rotation,
)
from .evaluation import EvalConfig, MatchCounts, ScoreTriple, eval_dataset, match_instances, score
from .geometry import iou, polygon_area, polygon_intersection_area
from .imaging import convolve2d, load_image, psnr, resize_bilinear, save_image
from .metrics import (
    FGrid,
    IncompleteGridError,
    RobustnessReport,
    build_report,
    category_means,
    compute_mpc,
    compute_rpc,
    grid_from_corruption_means,
    render_report,
)
from .pipeline import run_augment, run_corrupt, run_eval, run_report
from .rng import SeedSpec, derive_rng

__version__ = "0.1.0"
