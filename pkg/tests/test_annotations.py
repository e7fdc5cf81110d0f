import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from textrobust.annotations import (
    ParseError,
    TextInstance,
    build_manifest,
    gt_filename,
    parse_ic15_gt,
    parse_json_annotations,
    parse_poly_gt,
    parse_predictions,
    write_gt,
    write_json_annotations,
    ImageAnnotations,
)
from textrobust.geometry import signed_area


class TestIc15Parse:
    def test_basic_quad(self):
        insts = parse_ic15_gt("0,0,10,0,10,10,0,10,hello\n")
        assert len(insts) == 1
        inst = insts[0]
        assert inst.polygon.tolist() == [[0, 0], [10, 0], [10, 10], [0, 10]]
        assert not inst.ignore
        assert inst.transcription == "hello"

    def test_dont_care_marker(self):
        inst = parse_ic15_gt("0,0,10,0,10,10,0,10,###")[0]
        assert inst.ignore

    def test_transcription_may_contain_commas(self):
        inst = parse_ic15_gt("0,0,10,0,10,10,0,10,a,b")[0]
        assert inst.transcription == "a,b"

    def test_bom_and_blank_lines(self):
        text = "﻿0,0,10,0,10,10,0,10,x\n\n1,1,5,1,5,5,1,5,y\n"
        assert len(parse_ic15_gt(text)) == 2

    def test_too_few_fields(self):
        with pytest.raises(ParseError) as exc:
            parse_ic15_gt("0,0,10,0,10,10,0,10\n")
        assert exc.value.line == 1

    def test_non_numeric_coordinate(self):
        with pytest.raises(ParseError):
            parse_ic15_gt("0,zero,10,0,10,10,0,10,x\n")

    def test_parsed_polygon_is_ccw(self):
        # clockwise input (in shoelace arithmetic) gets canonicalized
        inst = parse_ic15_gt("0,0,0,10,10,10,10,0,w\n")[0]
        assert signed_area(inst.polygon) > 0


class TestPolyParse:
    def test_quad(self):
        inst = parse_poly_gt("0,0,4,0,4,2,0,2\n")[0]
        assert len(inst.polygon) == 4
        assert not inst.ignore

    def test_fourteen_point_polygon(self):
        # CTW-style 14-vertex outline around a wavy band
        top = [(x, 10 + 2 * np.sin(x / 10)) for x in range(0, 70, 10)]
        bottom = [(x, 30 + 2 * np.sin(x / 10)) for x in range(60, -10, -10)]
        coords = ",".join(f"{x},{y:.3f}" for x, y in top + bottom)
        inst = parse_poly_gt(coords)[0]
        assert len(inst.polygon) == 14

    def test_too_few_vertices(self):
        with pytest.raises(ParseError):
            parse_poly_gt("0,0,4,0\n")

    def test_odd_coordinate_count(self):
        with pytest.raises(ParseError):
            parse_poly_gt("0,0,4,0,4,2,0\n")

    def test_self_intersecting_rejected(self):
        with pytest.raises(ParseError):
            parse_poly_gt("0,0,10,10,10,0,0,10\n")

    def test_zero_area_rejected(self):
        with pytest.raises(ParseError):
            parse_poly_gt("0,0,5,0,10,0\n")

    def test_trailing_ignore(self):
        inst = parse_poly_gt("0,0,4,0,4,2,0,2,###\n")[0]
        assert inst.ignore


class TestPredictionsParse:
    def test_no_confidence(self):
        inst, conf = parse_predictions("0,0,4,0,4,2,0,2\n")[0]
        assert conf is None

    def test_with_confidence(self):
        inst, conf = parse_predictions("0,0,4,0,4,2,0,2,0.93\n")[0]
        assert conf == pytest.approx(0.93)

    def test_confidence_out_of_range(self):
        with pytest.raises(ParseError):
            parse_predictions("0,0,4,0,4,2,0,2,1.5\n")


class TestWrite:
    def test_poly_roundtrip_within_formatting(self):
        poly = np.array([[0.123, 0.456], [10.987, 0.5], [10.0, 9.333], [0.25, 9.0]])
        inst = TextInstance(poly, ignore=False)
        back = parse_poly_gt(write_gt([inst], "poly_txt"))[0]
        assert np.allclose(back.polygon, poly, atol=0.005)

    def test_ic15_roundtrip(self):
        inst = parse_ic15_gt("1,2,11,2,11,8,1,8,word\n")[0]
        text = write_gt([inst], "ic15_quad")
        again = parse_ic15_gt(text)[0]
        assert np.allclose(again.polygon, inst.polygon, atol=0.005)
        assert again.transcription == "word"

    def test_five_vertex_polygon_rejected_for_ic15(self):
        poly = np.array([[0, 0], [4, 0], [5, 2], [4, 4], [0, 4]], dtype=float)
        with pytest.raises(ValueError):
            write_gt([TextInstance(poly)], "ic15_quad")

    def test_ignore_emits_dont_care_marker(self):
        inst = TextInstance(np.array([[0, 0], [4, 0], [4, 2], [0, 2]], float), ignore=True)
        assert write_gt([inst], "poly_txt").strip().endswith(",###")
        assert write_gt([inst], "ic15_quad").strip().endswith(",###")

    def test_json_roundtrip_preserves_everything(self):
        inst = TextInstance(np.array([[0, 0], [4, 0], [4, 2], [0, 2]], float), ignore=True, transcription=None)
        inst2 = TextInstance(np.array([[5, 5], [9, 5], [9, 8], [5, 8]], float), transcription="hi")
        text = write_json_annotations(ImageAnnotations("img_9", [inst, inst2]), confidences=[None, 0.5])
        back = parse_json_annotations(text)
        assert back.image_id == "img_9"
        assert back.instances[0].ignore and back.instances[1].transcription == "hi"

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_poly_roundtrip_property(self, seed):
        rng = np.random.default_rng(seed)
        w, h = rng.uniform(5, 200, 2)
        x0, y0 = rng.uniform(0, 500, 2)
        poly = np.array([[x0, y0], [x0 + w, y0], [x0 + w, y0 + h], [x0, y0 + h]])
        inst = TextInstance(poly, ignore=bool(rng.integers(2)))
        back = parse_poly_gt(write_gt([inst], "poly_txt"))[0]
        assert np.allclose(back.polygon, inst.polygon, atol=0.005)
        assert back.ignore == inst.ignore


class TestManifest:
    def test_empty_dir(self, tmp_path):
        m = build_manifest(tmp_path, "poly_txt")
        assert m.entries == [] and m.warnings == []

    def test_pairing_and_orphans(self, tmp_path):
        (tmp_path / "images").mkdir()
        (tmp_path / "gts").mkdir()
        for i in (1, 2, 3):
            (tmp_path / "images" / f"img_{i}.png").write_bytes(b"")
            (tmp_path / "gts" / f"gt_img_{i}.txt").write_text("")
        (tmp_path / "gts" / "gt_img_9.txt").write_text("")
        m = build_manifest(tmp_path, "ic15_quad")
        assert len(m.entries) == 3
        assert len(m.warnings) == 1 and "img_9" in m.warnings[0]

    def test_deterministic_ordering(self, tmp_path):
        for stem in ("b", "a", "c"):
            (tmp_path / f"{stem}.png").write_bytes(b"")
            (tmp_path / f"{stem}.txt").write_text("")
        m1 = build_manifest(tmp_path, "poly_txt")
        m2 = build_manifest(tmp_path, "poly_txt")
        assert [p.stem for p, _ in m1.entries] == ["a", "b", "c"]
        assert m1.entries == m2.entries

    def test_missing_root(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            build_manifest(tmp_path / "nope", "poly_txt")


def test_gt_filename_conventions():
    assert gt_filename("img_1", "ic15_quad") == "gt_img_1.txt"
    assert gt_filename("img_1", "poly_txt") == "img_1.txt"
    assert gt_filename("img_1", "json") == "img_1.json"
