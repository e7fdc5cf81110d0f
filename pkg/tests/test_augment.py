import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import make_corpus, quad
from textrobust.annotations import TextInstance
from textrobust.augment import BackgroundPool, fbmix, mixup, sample_background
from textrobust.imaging import save_image


@pytest.fixture(scope="module")
def fg():
    return make_corpus(n=1, h=60, w=80, seed=21)[0]


@pytest.fixture(scope="module")
def bg():
    return make_corpus(n=1, h=60, w=80, seed=22)[0]


@pytest.fixture
def labels():
    return [TextInstance(quad(5, 5, 30, 15), transcription="abc")]


class TestFbmix:
    def test_alpha_one_is_foreground_bit_exact(self, fg, bg, labels):
        out = fbmix(fg, labels, bg, alpha=1.0)
        assert np.array_equal(out.image, fg)

    def test_alpha_zero_same_size_is_background_bit_exact(self, fg, bg, labels):
        out = fbmix(fg, labels, bg, alpha=0.0)
        assert np.array_equal(out.image, bg)

    def test_midpoint_arithmetic(self, labels):
        a = np.full((4, 4, 3), 100, np.uint8)
        b = np.full((4, 4, 3), 200, np.uint8)
        out = fbmix(a, labels, b, alpha=0.5)
        assert (out.image == 150).all()

    def test_background_resized_to_foreground(self, fg, labels):
        small_bg = make_corpus(n=1, h=30, w=20, seed=23)[0]
        out = fbmix(fg, labels, small_bg, alpha=0.5)
        assert out.image.shape == fg.shape

    def test_labels_pass_through_unchanged(self, fg, bg, labels):
        for alpha in (0.0, 0.25, 0.5, 1.0):
            out = fbmix(fg, labels, bg, alpha=alpha)
            assert out.labels == labels
            assert out.labels[0] is labels[0]

    @settings(max_examples=40, deadline=None)
    @given(st.floats(0.0, 1.0), st.integers(0, 2**32 - 1))
    def test_blend_linearity_exact(self, alpha, seed):
        rng = np.random.default_rng(seed)
        a = rng.integers(0, 256, (5, 7, 3), dtype=np.uint8)
        b = rng.integers(0, 256, (5, 7, 3), dtype=np.uint8)
        out = fbmix(a, [], b, alpha=alpha)
        expected = np.clip(np.rint(alpha * a.astype(float) + (1 - alpha) * b.astype(float)), 0, 255)
        assert np.array_equal(out.image, expected.astype(np.uint8))


class TestMixup:
    def test_identical_inputs_keep_pixels(self, fg, labels):
        out = mixup(fg, labels, fg, labels, alpha=0.5)
        assert np.array_equal(out.image, fg)
        assert len(out.labels) == 2
        assert np.array_equal(out.labels[0].polygon, out.labels[1].polygon)

    def test_label_counts_concatenate(self, fg, bg, labels):
        more = labels + [TextInstance(quad(40, 20, 70, 40))]
        out = mixup(fg, labels, bg, more, alpha=0.5)
        assert len(out.labels) == len(labels) + len(more)

    def test_second_image_coordinates_rescaled(self, labels):
        a = np.zeros((100, 100, 3), np.uint8)
        b = np.zeros((100, 200, 3), np.uint8)  # x-coordinates must halve
        b_labels = [TextInstance(quad(40, 20, 80, 60))]
        out = mixup(a, [], b, b_labels, alpha=0.5)
        assert np.allclose(out.labels[0].polygon, quad(20, 20, 40, 60))


class TestBackgroundPool:
    def test_pool_of_one(self, tmp_path, fg):
        save_image(fg, tmp_path / "only.png")
        pool = BackgroundPool.from_dir(tmp_path)
        assert sample_background(pool, master_seed=0, image_id="a").name == "only.png"

    def test_same_seed_same_choice(self, tmp_path, fg):
        for i in range(5):
            save_image(fg, tmp_path / f"bg_{i}.png")
        pool = BackgroundPool.from_dir(tmp_path)
        a = sample_background(pool, master_seed=3, image_id="img")
        b = sample_background(pool, master_seed=3, image_id="img")
        assert a == b

    def test_empty_pool_rejected(self):
        with pytest.raises(ValueError):
            sample_background(BackgroundPool(entries=[]))

    def test_uniformity(self, tmp_path, fg):
        for i in range(10):
            save_image(fg[:2, :2], tmp_path / f"bg_{i}.png")
        pool = BackgroundPool.from_dir(tmp_path)
        hits = {}
        for k in range(100_000):
            choice = sample_background(pool, master_seed=1, image_id=f"img_{k}").name
            hits[choice] = hits.get(choice, 0) + 1
        for count in hits.values():
            assert abs(count / 100_000 - 0.1) < 0.02

    def test_manifest_file(self, tmp_path, fg):
        save_image(fg, tmp_path / "a.png")
        save_image(fg, tmp_path / "b.png")
        (tmp_path / "pool.txt").write_text("# backgrounds\na.png\nb.png\n")
        pool = BackgroundPool.from_manifest(tmp_path / "pool.txt")
        assert [p.name for p in pool.entries] == ["a.png", "b.png"]
