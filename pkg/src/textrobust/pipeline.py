"""Dataset-level pipelines behind the CLI: corrupt, augment, eval, report.

Each pipeline walks a dataset manifest and fans out over an embarrassingly
parallel task list. All randomness is derived per (image, corruption,
severity) from the master seed, so output trees are byte-identical for any
worker count and across reruns.

Corrupted benchmark layout (mirrors the ImageNet-C convention)::

    output_root/
      manifest.json
      <corruption>/<severity>/images/<stem>.png
      <corruption>/<severity>/gts/<gt file>

Evaluation results feed the report stage as one JSON per cell::

    eval_root/clean.json
    eval_root/<corruption>/<severity>.json
"""

from __future__ import annotations

import json
import shutil
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from pathlib import Path

from . import annotations as ann
from .augment import BackgroundPool, fbmix
from .catalog import CORRUPTIONS, SEVERITIES
from .corruptions import apply_corruption
from .evaluation import EvalConfig, MatchCounts, ScoreTriple, eval_dataset, match_instances
from .imaging import load_image, save_image
from .metrics import FGrid, IncompleteGridError, RobustnessReport, build_report, render_report
from .rng import derive_rng

__all__ = ["run_corrupt", "run_augment", "run_eval", "run_report"]

ALL_CORRUPTIONS = tuple(name for name, _ in CORRUPTIONS)


def _corrupt_task(task: tuple) -> None:
    image_path, gt_path, out_root, fmt, corruption, severity, master_seed = task
    stem = Path(image_path).stem
    img = load_image(image_path)
    instances = ann.parse_gt(Path(gt_path).read_text(encoding="utf-8"), fmt)
    result = apply_corruption(img, corruption, severity, master_seed=master_seed, image_id=stem)
    out_dir = Path(out_root) / corruption / str(severity)
    save_image(result.image, out_dir / "images" / f"{stem}.png", format="png")
    transformed = [inst.transformed(result.gt_transform) for inst in instances]
    gt_text = ann.write_gt(transformed, fmt, image_id=stem)
    (out_dir / "gts" / ann.gt_filename(stem, fmt)).write_text(gt_text, encoding="utf-8")


def _run_tasks(tasks: list[tuple], worker, jobs: int) -> None:
    if jobs <= 1:
        for task in tasks:
            worker(task)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # list() forces completed iteration so worker exceptions surface
            list(pool.map(worker, tasks, chunksize=max(1, len(tasks) // (jobs * 4))))


def run_corrupt(
    input_root: str | Path,
    output_root: str | Path,
    format: str,
    corruptions: list[str] | None = None,
    severities: list[int] | None = None,
    master_seed: int = 0,
    jobs: int = 1,
) -> dict:
    """Generate the corrupted benchmark tree; returns the manifest dict."""
    names = list(corruptions) if corruptions else list(ALL_CORRUPTIONS)
    for n in names:
        if n not in ALL_CORRUPTIONS:
            raise ValueError(f"unknown corruption {n!r}")
    sevs = sorted(set(severities)) if severities else list(SEVERITIES)
    for s in sevs:
        if s not in SEVERITIES:
            raise ValueError(f"severity must be in 1..5, got {s}")

    manifest = ann.build_manifest(input_root, format)
    output_root = Path(output_root)
    for name in names:
        for s in sevs:
            (output_root / name / str(s) / "images").mkdir(parents=True, exist_ok=True)
            (output_root / name / str(s) / "gts").mkdir(parents=True, exist_ok=True)

    tasks = [
        (str(image_path), str(gt_path), str(output_root), format, name, s, master_seed)
        for image_path, gt_path in manifest.entries
        for name in names
        for s in sevs
    ]

    doc = {
        "format": format,
        "master_seed": master_seed,
        "corruptions": names,
        "severities": sevs,
        "images": [p.stem for p, _ in manifest.entries],
        "variants": [
            {"corruption": name, "severity": s, "dir": f"{name}/{s}", "images": len(manifest.entries)}
            for name in names
            for s in sevs
        ],
        "complete": False,
    }
    manifest_path = output_root / "manifest.json"
    try:
        _run_tasks(tasks, _corrupt_task, jobs)
    except BaseException:
        manifest_path.write_text(json.dumps(doc, indent=1), encoding="utf-8")
        raise
    doc["complete"] = True
    manifest_path.write_text(json.dumps(doc, indent=1), encoding="utf-8")
    return doc


def _augment_task(task: tuple) -> None:
    image_path, gt_path, out_root, fmt, bg_entries, alpha, apply_prob, master_seed = task
    stem = Path(image_path).stem
    img = load_image(image_path)
    out_dir = Path(out_root)
    apply_rng = derive_rng(master_seed, stem, "fbmix-apply", 0)
    if apply_rng.random() < apply_prob:
        pick_rng = derive_rng(master_seed, stem, "fbmix-background", 0)
        bg_path = bg_entries[int(pick_rng.integers(0, len(bg_entries)))]
        out = fbmix(img, [], load_image(bg_path), alpha=alpha).image
    else:
        out = img
    save_image(out, out_dir / "images" / f"{stem}.png", format="png")
    shutil.copyfile(gt_path, out_dir / "gts" / Path(gt_path).name)


def run_augment(
    input_root: str | Path,
    output_root: str | Path,
    format: str,
    bg_pool: str | Path,
    alpha: float = 0.5,
    apply_prob: float = 1.0,
    master_seed: int = 0,
    jobs: int = 1,
) -> int:
    """Write one FBMix sample per input image; labels are copied unchanged.

    ``bg_pool`` is a directory of background images or a manifest text file
    listing image paths. Returns the number of samples written.
    """
    bg_pool = Path(bg_pool)
    pool = BackgroundPool.from_dir(bg_pool) if bg_pool.is_dir() else BackgroundPool.from_manifest(bg_pool)
    if not pool.entries:
        raise ValueError(f"background pool {bg_pool} is empty")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must be in [0, 1]")
    if not 0.0 <= apply_prob <= 1.0:
        raise ValueError("apply_prob must be in [0, 1]")

    manifest = ann.build_manifest(input_root, format)
    output_root = Path(output_root)
    (output_root / "images").mkdir(parents=True, exist_ok=True)
    (output_root / "gts").mkdir(parents=True, exist_ok=True)
    entries = [str(p) for p in pool.entries]
    tasks = [
        (str(image_path), str(gt_path), str(output_root), format, entries, alpha, apply_prob, master_seed)
        for image_path, gt_path in manifest.entries
    ]
    _run_tasks(tasks, _augment_task, jobs)
    return len(tasks)


def run_eval(
    input_root: str | Path,
    format: str,
    predictions_root: str | Path,
    iou_threshold: float = 0.5,
) -> ScoreTriple:
    """Micro-averaged P/R/F of prediction files against a dataset's ground truth.

    Predictions live at ``predictions_root/<image stem>.txt`` in the polygon
    grammar (optional trailing confidence). A missing file means the detector
    found nothing in that image.
    """
    cfg = EvalConfig(iou_threshold=iou_threshold)
    manifest = ann.build_manifest(input_root, format)
    predictions_root = Path(predictions_root)
    per_image: list[MatchCounts] = []
    for image_path, gt_path in manifest.entries:
        gts = ann.parse_gt(gt_path.read_text(encoding="utf-8"), format)
        pred_path = predictions_root / f"{image_path.stem}.txt"
        if pred_path.exists():
            try:
                preds = [inst for inst, _conf in ann.parse_predictions(pred_path.read_text(encoding="utf-8"))]
            except ann.ParseError as exc:
                raise ann.ParseError(f"{pred_path}: {exc}") from exc
        else:
            preds = []
        per_image.append(match_instances(preds, gts, cfg))
    return eval_dataset(per_image)


def score_to_json(triple: ScoreTriple) -> str:
    return json.dumps(asdict(triple), indent=1)


def run_report(eval_root: str | Path, output_root: str | Path, name: str = "") -> RobustnessReport:
    """Assemble per-cell eval results into CSV/Markdown/JSON robustness reports."""
    eval_root = Path(eval_root)
    clean_path = eval_root / "clean.json"
    if not clean_path.exists():
        raise FileNotFoundError(f"missing clean-set eval result {clean_path}")
    f_clean = json.loads(clean_path.read_text(encoding="utf-8"))["f_measure"]

    grid = FGrid(f_clean=f_clean)
    missing = []
    for corruption, _cat in CORRUPTIONS:
        for s in SEVERITIES:
            cell = eval_root / corruption / f"{s}.json"
            if cell.exists():
                grid.f[(corruption, s)] = json.loads(cell.read_text(encoding="utf-8"))["f_measure"]
            else:
                missing.append((corruption, s))
    if missing:
        raise IncompleteGridError(missing)

    report = build_report(grid, name=name)
    output_root = Path(output_root)
    output_root.mkdir(parents=True, exist_ok=True)
    (output_root / "report.md").write_text(render_report(report, "markdown"), encoding="utf-8")
    (output_root / "report.csv").write_text(render_report(report, "csv"), encoding="utf-8")
    (output_root / "report.json").write_text(render_report(report, "json"), encoding="utf-8")
    return report
