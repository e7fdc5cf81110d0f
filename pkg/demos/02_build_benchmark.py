"""Generate a corrupted benchmark tree from a small dataset.

Creates a toy ICDAR2015-style dataset (images/ + gts/ with quad annotations),
then runs the corruption pipeline over a subset of types and severities. The
output mirrors the ImageNet-C layout: <corruption>/<severity>/{images,gts}.

The same thing from the command line:

    textrobust corrupt --input-root demo_output/dataset \
        --output-root demo_output/benchmark --format ic15_quad \
        --corruptions gaussian_noise,rotation --severities 1,3,5 --jobs 2

Run:  python demos/02_build_benchmark.py
"""

import json
from pathlib import Path

import numpy as np

from textrobust import run_corrupt, save_image
from textrobust.annotations import parse_ic15_gt

OUT = Path("demo_output")
DATASET = OUT / "dataset"
BENCH = OUT / "benchmark"


def write_toy_dataset(n=3, h=80, w=120):
    (DATASET / "images").mkdir(parents=True, exist_ok=True)
    (DATASET / "gts").mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(1)
    for i in range(1, n + 1):
        img = np.clip(
            np.rint((0.4 + 0.2 * rng.standard_normal((h, w, 3))) * 255), 0, 255
        ).astype(np.uint8)
        # two words and one don't-care region per image
        lines = []
        for k, ignore in enumerate((False, False, True)):
            x0, y0 = 8 + 30 * k, 10 + 20 * k
            img[y0 : y0 + 10, x0 : x0 + 34] = 20  # paint the "text"
            tail = "###" if ignore else f"word{k}"
            lines.append(f"{x0},{y0},{x0 + 34},{y0},{x0 + 34},{y0 + 10},{x0},{y0 + 10},{tail}")
        save_image(img, DATASET / "images" / f"img_{i}.png")
        (DATASET / "gts" / f"gt_img_{i}.txt").write_text("\n".join(lines) + "\n")
    print(f"toy dataset with {n} images -> {DATASET}")


write_toy_dataset()

# Generate a 2-corruption x 3-severity slice of the benchmark. Passing no
# filters generates all 18 x 5 = 90 variants per image.
manifest = run_corrupt(
    DATASET,
    BENCH,
    "ic15_quad",
    corruptions=["gaussian_noise", "rotation"],
    severities=[1, 3, 5],
    master_seed=0,
    jobs=2,
)
print(f"benchmark complete: {manifest['complete']}, variants: {len(manifest['variants'])}")
print(json.dumps(manifest["variants"][:2], indent=2))

# The rotation variants carry *transformed* ground truth: polygons were mapped
# through the exact rotation affine into the enlarged canvas.
original = parse_ic15_gt((DATASET / "gts" / "gt_img_1.txt").read_text())
rotated = parse_ic15_gt((BENCH / "rotation" / "5" / "gts" / "gt_img_1.txt").read_text())
print("\nfirst polygon before:", np.round(original[0].polygon, 1).tolist())
print("first polygon after: ", np.round(rotated[0].polygon, 1).tolist())
