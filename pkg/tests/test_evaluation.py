import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import quad
from textrobust.annotations import TextInstance
from textrobust.evaluation import EvalConfig, MatchCounts, eval_dataset, match_instances, score


def inst(x0, y0, x1, y1, ignore=False):
    return TextInstance(quad(x0, y0, x1, y1), ignore=ignore)


class TestMatchInstances:
    def test_exact_match(self):
        counts = match_instances([inst(0, 0, 10, 10)], [inst(0, 0, 10, 10)])
        assert counts == MatchCounts(1, 1, 1)

    def test_prediction_over_ignored_gt_is_discarded(self):
        # prediction sits at IoA 0.9 inside a don't-care region; no real gt
        pred = inst(0, 0, 10, 9)
        ignored = inst(0, 0, 10, 10, ignore=True)
        counts = match_instances([pred], [ignored])
        assert counts == MatchCounts(0, 0, 0)

    def test_one_to_one_capping(self):
        gt = inst(0, 0, 10, 10)
        preds = [inst(0, 0, 10, 9), inst(0, 1, 10, 10)]
        counts = match_instances(preds, [gt])
        assert counts == MatchCounts(1, 2, 1)

    def test_below_threshold_not_matched(self):
        counts = match_instances([inst(0, 0, 4, 10)], [inst(0, 0, 10, 10)])
        assert counts == MatchCounts(0, 1, 1)

    def test_threshold_is_inclusive(self):
        counts = match_instances([inst(0, 0, 5, 10)], [inst(0, 0, 10, 10)], EvalConfig(iou_threshold=0.5))
        assert counts.true_positives == 1

    def test_invalid_prediction_excluded_with_warning(self):
        bowtie = TextInstance(np.array([[0, 0], [10, 10], [10, 0], [0, 10]], float))
        with pytest.warns(UserWarning):
            counts = match_instances([bowtie], [inst(0, 0, 10, 10)])
        assert counts == MatchCounts(0, 0, 1)

    def test_permutation_invariance(self):
        gts = [inst(0, 0, 10, 10), inst(20, 0, 30, 10), inst(0, 20, 10, 30, ignore=True)]
        preds = [inst(0, 0, 10, 11), inst(20, 0, 30, 9), inst(1, 21, 9, 29), inst(50, 50, 60, 60)]
        base = match_instances(preds, gts)
        assert base == match_instances(preds[::-1], gts[::-1])
        assert base == match_instances(preds[1:] + preds[:1], gts[::-1])

    def test_coincident_duplicates_can_both_match(self):
        gts = [inst(0, 0, 10, 10), inst(0, 0, 10, 10)]
        preds = [inst(0, 0, 10, 10), inst(0, 0, 10, 10)]
        assert match_instances(preds, gts) == MatchCounts(2, 2, 2)


class TestScore:
    def test_basic_formula(self):
        s = score(MatchCounts(1, 1, 2))
        assert (s.precision, s.recall) == (1.0, 0.5)
        assert s.f_measure == pytest.approx(2 / 3)

    def test_empty_empty_convention(self):
        s = score(MatchCounts(0, 0, 0))
        assert (s.precision, s.recall, s.f_measure) == (1.0, 1.0, 1.0)

    def test_no_predictions_with_gt(self):
        s = score(MatchCounts(0, 0, 3))
        assert (s.precision, s.recall, s.f_measure) == (0.0, 0.0, 0.0)

    def test_predictions_with_no_gt(self):
        s = score(MatchCounts(0, 3, 0))
        assert (s.precision, s.recall, s.f_measure) == (0.0, 0.0, 0.0)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 50), st.integers(0, 50))
    def test_f_equals_p_when_p_equals_r(self, tp, extra):
        n = tp + extra
        if n == 0:
            return
        s = score(MatchCounts(tp, n, n))
        assert s.precision == s.recall
        assert s.f_measure == pytest.approx(s.precision)


class TestEvalDataset:
    def test_single_image_equals_score(self):
        c = MatchCounts(2, 3, 4)
        assert eval_dataset([c]) == score(c)

    def test_micro_average(self):
        s = eval_dataset([MatchCounts(1, 1, 1), MatchCounts(0, 1, 1)])
        assert (s.precision, s.recall, s.f_measure) == (0.5, 0.5, 0.5)

    def test_order_invariance(self):
        counts = [MatchCounts(1, 2, 3), MatchCounts(0, 1, 1), MatchCounts(5, 5, 6)]
        assert eval_dataset(counts) == eval_dataset(counts[::-1])

    def test_fixture_two_thirds(self):
        counts = [MatchCounts(1, 1, 1), MatchCounts(1, 2, 1), MatchCounts(0, 0, 1)]
        s = eval_dataset(counts)
        assert s.precision == pytest.approx(2 / 3)
        assert s.recall == pytest.approx(2 / 3)
        assert s.f_measure == pytest.approx(2 / 3)

    def test_empty_empty_images_cannot_inflate(self):
        base = [MatchCounts(1, 2, 2)]
        padded = base + [MatchCounts(0, 0, 0)] * 10
        assert eval_dataset(base) == eval_dataset(padded)
