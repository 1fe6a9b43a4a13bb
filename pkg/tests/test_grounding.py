import json
from pathlib import Path

import pytest

from pixelruler.utils.errors import InvalidArgumentError, InvalidInputError
from pixelruler.utils.geometry import BBox, Point
from pixelruler.utils.grounding import (
    GroundingSample,
    Prediction,
    denormalize,
    denormalize_predictions,
    element_accuracy,
    load_dataset,
    load_predictions,
    load_sample_fixture,
)


def sample(sample_id: str, platform: str = "web", ui_type: str | None = None) -> GroundingSample:
    return GroundingSample(sample_id, 100, 100, "press it", BBox(40, 40, 60, 60), platform, ui_type)


def write_lines(path: Path, records: list) -> Path:
    path.write_text("".join(json.dumps(record) + "\n" for record in records), encoding="utf-8")
    return path


@pytest.mark.parametrize(
    ("point", "width", "height", "expected"),
    [
        (Point(0.5, 0.5), 1920, 1080, Point(960, 540)),
        (Point(0, 1), 800, 600, Point(0, 600)),
        (Point(0.25, 0.1), 1000, 1000, Point(250, 100)),
    ],
)
def test_denormalize(point: Point, width: int, height: int, expected: Point) -> None:
    assert denormalize(point, width, height) == expected


@pytest.mark.parametrize("point", [Point(-0.1, 0.5), Point(0.5, 1.5)])
def test_denormalize_rejects_out_of_range(point: Point) -> None:
    with pytest.raises(InvalidArgumentError):
        denormalize(point, 100, 100)


def test_denormalize_rejects_bad_size() -> None:
    with pytest.raises(InvalidArgumentError):
        denormalize(Point(0.5, 0.5), 0, 100)


def test_bbox_contains_interior_and_boundary() -> None:
    box = BBox(40, 40, 60, 60)
    assert box.contains(Point(50, 50))
    assert box.contains(Point(60, 60))
    assert box.contains(Point(40, 60))
    assert not box.contains(Point(60.001, 50))


def test_bbox_rejects_inverted() -> None:
    with pytest.raises(InvalidArgumentError, match="inverted"):
        BBox(10, 10, 5, 20)


def test_sample_rejects_target_outside_image() -> None:
    with pytest.raises(InvalidArgumentError, match="outside the image"):
        GroundingSample("a", 50, 50, "x", BBox(40, 40, 60, 60), "web")


def test_accuracy_three_of_four() -> None:
    samples = [sample("a"), sample("b"), sample("c"), sample("d")]
    preds = [
        Prediction("a", Point(50, 50)),
        Prediction("b", Point(60, 60)),
        Prediction("c", Point(40, 40)),
        Prediction("d", Point(0, 0)),
    ]
    report = element_accuracy(samples, preds)
    assert report.accuracy == 0.75
    assert report.hits == {"a": True, "b": True, "c": True, "d": False}


def test_missing_and_unknown_predictions() -> None:
    report = element_accuracy([sample("a"), sample("b")], [Prediction("a", Point(50, 50)), Prediction("z", None)])
    assert report.missing_ids == ("b",)
    assert report.unknown_ids == ("z",)
    assert report.hit_count == 1
    assert report.accuracy == 0.5


def test_unparsed_prediction_is_a_miss() -> None:
    report = element_accuracy([sample("a")], [Prediction("a", None, "no idea")])
    assert report.unparsed_ids == ("a",)
    assert report.accuracy == 0.0


def test_duplicate_prediction_ids() -> None:
    preds = [Prediction("a", Point(1, 1)), Prediction("a", Point(2, 2)), Prediction("b", None)]
    with pytest.raises(InvalidInputError, match="duplicate prediction ids: a") as excinfo:
        element_accuracy([sample("a"), sample("b")], preds)
    assert excinfo.value.details == ("a",)


def test_duplicate_sample_ids() -> None:
    with pytest.raises(InvalidInputError, match="duplicate sample ids"):
        element_accuracy([sample("a"), sample("a")], [])


def test_empty_dataset() -> None:
    report = element_accuracy([], [])
    assert report.total == 0
    assert report.accuracy == 0.0


def test_groups_sorted_and_untyped_samples_skipped() -> None:
    samples = [sample("a", "web", "icon"), sample("b", "desktop"), sample("c", "web", "text")]
    preds = [Prediction("a", Point(50, 50)), Prediction("b", Point(50, 50))]
    report = element_accuracy(samples, preds)
    assert list(report.per_platform) == ["desktop", "web"]
    assert report.per_platform["web"].accuracy == 0.5
    assert list(report.per_ui_type) == ["icon", "text"]
    assert report.per_ui_type["text"].hits == 0


def test_report_record() -> None:
    record = element_accuracy([sample("a")], [Prediction("a", Point(50, 50))]).to_record()
    assert record["accuracy"] == 1.0
    assert record["per_platform"] == {"web": {"total": 1, "hits": 1, "accuracy": 1.0}}
    assert record["per_sample"] == [{"id": "a", "hit": True}]


def test_denormalize_predictions_uses_sample_size() -> None:
    samples = [GroundingSample("a", 200, 100, "x", BBox(0, 0, 10, 10), "web")]
    preds = denormalize_predictions(samples, [Prediction("a", Point(0.5, 0.5)), Prediction("z", Point(0.5, 0.5))])
    assert preds[0].point == Point(100, 50)
    assert preds[1].point == Point(0.5, 0.5)


def test_load_dataset(tmp_path: Path) -> None:
    path = write_lines(
        tmp_path / "d.jsonl",
        [
            {
                "id": 7,
                "image_width": 100,
                "image_height": 80,
                "instruction": "ok",
                "bbox": [1, 2, 3, 4],
                "platform": "web",
            }
        ],
    )
    (loaded,) = load_dataset(path)
    assert loaded.id == "7"
    assert loaded.target == BBox(1, 2, 3, 4)
    assert loaded.ui_type is None


def test_load_dataset_missing_field(tmp_path: Path) -> None:
    path = write_lines(tmp_path / "d.jsonl", [{"id": "a", "image_width": 10}])
    with pytest.raises(InvalidInputError, match="missing field"):
        load_dataset(path)


def test_load_dataset_bad_json(tmp_path: Path) -> None:
    path = tmp_path / "d.jsonl"
    path.write_text("{not json\n", encoding="utf-8")
    with pytest.raises(InvalidInputError, match="not valid JSON"):
        load_dataset(path)


def test_load_predictions(tmp_path: Path) -> None:
    path = write_lines(
        tmp_path / "p.jsonl",
        [
            {"id": "a", "x": 1, "y": 2},
            {"id": "b", "raw_text": "I would click (3, 4) or (5, 6)"},
            {"id": "c", "raw_text": "nothing here"},
        ],
    )
    a, b, c = load_predictions(path)
    assert a.point == Point(1, 2)
    assert (b.point, b.ambiguous) == (Point(3, 4), True)
    assert c.point is None
    assert c.raw_text == "nothing here"


def test_load_predictions_without_point(tmp_path: Path) -> None:
    path = write_lines(tmp_path / "p.jsonl", [{"id": "a"}])
    with pytest.raises(InvalidInputError, match="expected x and y"):
        load_predictions(path)


def test_sample_fixture_scores_seven_of_ten() -> None:
    samples, preds = load_sample_fixture()
    report = element_accuracy(samples, preds)
    assert report.total == 10
    assert report.hit_count == 7
    assert report.accuracy == 0.7
    assert [sample_id for sample_id, hit in report.hits.items() if not hit] == ["s03", "s06", "s09"]
    assert {name: (g.hits, g.total) for name, g in report.per_platform.items()} == {
        "desktop": (3, 4),
        "mobile": (2, 3),
        "web": (2, 3),
    }
