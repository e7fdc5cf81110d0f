"""Command-line interface.

    textrobust corrupt  --input-root DATA --output-root OUT --format ic15_quad
    textrobust augment  --input-root DATA --output-root OUT --format ic15_quad --bg-pool BGS
    textrobust eval     --input-root DATA --predictions-root PREDS --format ic15_quad
    textrobust report   --eval-root EVALS --output-root OUT

Exit codes: 0 success, 1 flag/input validation failure, 2 runtime failure.
Diagnostics go to stderr; machine-readable output (JSON) goes to stdout or
the requested files.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .annotations import FORMATS, ParseError
from .catalog import SEVERITIES
from .metrics import IncompleteGridError
from .pipeline import ALL_CORRUPTIONS, run_augment, run_corrupt, run_eval, run_report, score_to_json


def _add_common(p: argparse.ArgumentParser, needs_output: bool = True) -> None:
    p.add_argument("--input-root", required=True, help="dataset root (images/ + gts/, or flat)")
    if needs_output:
        p.add_argument("--output-root", required=True)
    p.add_argument("--format", required=True, choices=FORMATS, help="annotation format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="textrobust", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("corrupt", help="generate the corrupted benchmark tree")
    _add_common(p)
    p.add_argument("--corruptions", default=None, help="comma-separated subset (default: all 18)")
    p.add_argument("--severities", default=None, help="comma-separated subset of 1..5 (default: all)")
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes (default: CPU count)")

    p = sub.add_parser("augment", help="write FBMix-augmented training data")
    _add_common(p)
    p.add_argument("--bg-pool", required=True, help="background image directory or manifest file")
    p.add_argument("--alpha", type=float, default=0.5, help="foreground blend weight")
    p.add_argument("--apply-prob", type=float, default=1.0, help="per-image application probability")
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes (default: CPU count)")

    p = sub.add_parser("eval", help="score prediction files against ground truth")
    _add_common(p, needs_output=False)
    p.add_argument("--predictions-root", required=True)
    p.add_argument("--iou-threshold", type=float, default=0.5)
    p.add_argument("--output", default="-", help="result JSON path, '-' for stdout")

    p = sub.add_parser("report", help="aggregate eval results into robustness reports")
    p.add_argument("--eval-root", required=True, help="clean.json plus <corruption>/<severity>.json")
    p.add_argument("--output-root", required=True)
    p.add_argument("--name", default="", help="row label recorded in the JSON report")
    return parser


def _parse_corruptions(spec: str | None) -> list[str] | None:
    if spec is None:
        return None
    names = [s.strip() for s in spec.split(",") if s.strip()]
    for n in names:
        if n not in ALL_CORRUPTIONS:
            raise ValueError(f"unknown corruption {n!r}; known: {', '.join(ALL_CORRUPTIONS)}")
    return names


def _parse_severities(spec: str | None) -> list[int] | None:
    if spec is None:
        return None
    try:
        sevs = [int(s) for s in spec.split(",") if s.strip()]
    except ValueError:
        raise ValueError(f"severities must be integers, got {spec!r}") from None
    for s in sevs:
        if s not in SEVERITIES:
            raise ValueError(f"severity must be in 1..5, got {s}")
    return sevs


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "corrupt":
            corruptions = _parse_corruptions(args.corruptions)
            severities = _parse_severities(args.severities)
            if not Path(args.input_root).is_dir():
                raise FileNotFoundError(f"input root {args.input_root} does not exist")
        elif args.command in ("augment", "eval"):
            if not Path(args.input_root).is_dir():
                raise FileNotFoundError(f"input root {args.input_root} does not exist")
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        if args.command == "corrupt":
            doc = run_corrupt(
                args.input_root,
                args.output_root,
                args.format,
                corruptions=corruptions,
                severities=severities,
                master_seed=args.master_seed,
                jobs=args.jobs,
            )
            print(
                f"wrote {len(doc['images'])} images x {len(doc['variants'])} variants under {args.output_root}",
                file=sys.stderr,
            )
        elif args.command == "augment":
            n = run_augment(
                args.input_root,
                args.output_root,
                args.format,
                bg_pool=args.bg_pool,
                alpha=args.alpha,
                apply_prob=args.apply_prob,
                master_seed=args.master_seed,
                jobs=args.jobs,
            )
            print(f"wrote {n} augmented samples under {args.output_root}", file=sys.stderr)
        elif args.command == "eval":
            triple = run_eval(
                args.input_root,
                args.format,
                args.predictions_root,
                iou_threshold=args.iou_threshold,
            )
            text = score_to_json(triple)
            if args.output == "-":
                print(text)
            else:
                Path(args.output).parent.mkdir(parents=True, exist_ok=True)
                Path(args.output).write_text(text + "\n", encoding="utf-8")
        elif args.command == "report":
            report = run_report(args.eval_root, args.output_root, name=args.name)
            print(
                f"mPC {report.mpc * 100:.1f}  rPC {report.rpc * 100:.1f}  -> {args.output_root}",
                file=sys.stderr,
            )
    except ParseError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, FileNotFoundError, IncompleteGridError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
