"""
Element-accuracy evaluation for GUI grounding.

A prediction is a hit when its point lies inside the sample's target bounding box, boundaries included.
Datasets and predictions are read from line-delimited JSON files.

Dataset record:     {"id", "image_width", "image_height", "instruction", "bbox": [x_min, y_min, x_max, y_max],
                     "platform", optional "ui_type"}
Prediction record:  {"id", "x", "y"} or {"id", "raw_text"}
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from pixelruler.utils.coordparse import parse_point
from pixelruler.utils.errors import CoordinateParseError, InvalidArgumentError, InvalidInputError
from pixelruler.utils.geometry import BBox, Point

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroundingSample:
    """One instruction and the box of its target element.

    Raises:
        InvalidArgumentError: non-positive image size or a target outside the image.
    """

    id: str
    image_width_px: int
    image_height_px: int
    instruction: str
    target: BBox
    platform: str
    ui_type: str | None = None

    def __post_init__(self) -> None:
        if self.image_width_px <= 0 or self.image_height_px <= 0:
            raise InvalidArgumentError(
                f"sample {self.id}: image size must be positive, got {self.image_width_px}x{self.image_height_px}"
            )
        if not self.target.fits_within(self.image_width_px, self.image_height_px):
            raise InvalidArgumentError(f"sample {self.id}: target {self.target} lies outside the image")


@dataclass(frozen=True)
class Prediction:
    """A predicted click point for a sample. point is None when raw model text held no coordinate pair.

    Args:
        id (str): sample id
        point (Point | None): predicted point in raw pixels
        raw_text (str | None): model output the point was parsed from
        ambiguous (bool): raw_text held more than one coordinate pair
    """

    id: str
    point: Point | None
    raw_text: str | None = None
    ambiguous: bool = False


def denormalize(point: Point, width_px: int, height_px: int) -> Point:
    """Maps a normalized point (u, v) in [0, 1]^2 to raw pixels (u * width, v * height). No rounding.

    Raises:
        InvalidArgumentError: u or v outside [0, 1], or a non-positive size.
    """
    if not (0.0 <= point.x <= 1.0 and 0.0 <= point.y <= 1.0):
        raise InvalidArgumentError(f"normalized point must lie in [0, 1]^2, got ({point.x}, {point.y})")
    if width_px <= 0 or height_px <= 0:
        raise InvalidArgumentError(f"image size must be positive, got {width_px}x{height_px}")
    return Point(point.x * width_px, point.y * height_px)


@dataclass(frozen=True)
class GroupAccuracy:
    total: int
    hits: int

    @property
    def accuracy(self) -> float:
        return self.hits / self.total if self.total else 0.0


@dataclass(frozen=True)
class AccuracyReport:
    """Result of element_accuracy.

    hits maps every sample id, in dataset order, to its hit flag. missing_ids are samples without a
    prediction (scored as misses), unknown_ids are predictions that reference no sample, unparsed_ids are
    predictions whose raw text held no coordinate pair (scored as misses).
    """

    total: int
    hit_count: int
    hits: dict[str, bool]
    per_platform: dict[str, GroupAccuracy]
    per_ui_type: dict[str, GroupAccuracy]
    missing_ids: tuple[str, ...] = ()
    unknown_ids: tuple[str, ...] = ()
    unparsed_ids: tuple[str, ...] = ()
    points: dict[str, Point | None] = field(default_factory=dict)

    @property
    def accuracy(self) -> float:
        """hit_count / total, 0.0 for an empty dataset."""
        return self.hit_count / self.total if self.total else 0.0

    def to_record(self) -> dict:
        return {
            "total": self.total,
            "hits": self.hit_count,
            "accuracy": self.accuracy,
            "per_platform": _groups_record(self.per_platform),
            "per_ui_type": _groups_record(self.per_ui_type),
            "missing_ids": list(self.missing_ids),
            "unknown_ids": list(self.unknown_ids),
            "unparsed_ids": list(self.unparsed_ids),
            "per_sample": [{"id": sample_id, "hit": hit} for sample_id, hit in self.hits.items()],
        }


def _groups_record(groups: dict[str, GroupAccuracy]) -> dict[str, dict]:
    return {
        name: {"total": group.total, "hits": group.hits, "accuracy": group.accuracy} for name, group in groups.items()
    }


def _group(samples: Sequence[GroundingSample], hits: dict[str, bool], key) -> dict[str, GroupAccuracy]:
    totals: Counter[str] = Counter()
    hit_counts: Counter[str] = Counter()
    for sample in samples:
        name = key(sample)
        if name is None:
            continue
        totals[name] += 1
        hit_counts[name] += hits[sample.id]
    return {name: GroupAccuracy(totals[name], hit_counts[name]) for name in sorted(totals)}


def element_accuracy(samples: Sequence[GroundingSample], preds: Iterable[Prediction]) -> AccuracyReport:
    """Scores predictions against their samples.

    Args:
        samples (Sequence[GroundingSample]): evaluated dataset
        preds (Iterable[Prediction]): at most one prediction per sample id

    Raises:
        InvalidInputError: duplicate sample ids or duplicate prediction ids.

    Returns:
        AccuracyReport: overall, per-platform and per-ui-type accuracy plus per-sample hit flags
    """
    preds = list(preds)
    for kind, ids in (("sample", [s.id for s in samples]), ("prediction", [p.id for p in preds])):
        duplicates = sorted(item for item, count in Counter(ids).items() if count > 1)
        if duplicates:
            raise InvalidInputError(f"duplicate {kind} ids", tuple(duplicates))

    by_id = {pred.id: pred for pred in preds}
    sample_ids = {sample.id for sample in samples}
    unknown = tuple(sorted(pred.id for pred in preds if pred.id not in sample_ids))
    if unknown:
        logger.warning("%d predictions reference no sample: %s", len(unknown), ", ".join(unknown))

    hits: dict[str, bool] = {}
    points: dict[str, Point | None] = {}
    missing: list[str] = []
    unparsed: list[str] = []
    for sample in samples:
        pred = by_id.get(sample.id)
        if pred is None:
            missing.append(sample.id)
            point = None
        elif pred.point is None:
            unparsed.append(sample.id)
            point = None
        else:
            point = pred.point
        points[sample.id] = point
        hits[sample.id] = point is not None and sample.target.contains(point)
    if missing:
        logger.warning("%d samples have no prediction, scored as misses", len(missing))

    return AccuracyReport(
        total=len(samples),
        hit_count=sum(hits.values()),
        hits=hits,
        per_platform=_group(samples, hits, lambda sample: sample.platform),
        per_ui_type=_group(samples, hits, lambda sample: sample.ui_type),
        missing_ids=tuple(missing),
        unknown_ids=unknown,
        unparsed_ids=tuple(unparsed),
        points=points,
    )


def denormalize_predictions(samples: Sequence[GroundingSample], preds: Iterable[Prediction]) -> list[Prediction]:
    """Routes every prediction of a known sample through denormalize with that sample's image size."""
    sizes = {sample.id: (sample.image_width_px, sample.image_height_px) for sample in samples}
    resolved = []
    for pred in preds:
        if pred.point is not None and pred.id in sizes:
            pred = Prediction(pred.id, denormalize(pred.point, *sizes[pred.id]), pred.raw_text, pred.ambiguous)
        resolved.append(pred)
    return resolved


def _read_records(path: Path) -> Iterable[tuple[int, dict]]:
    with Path(path).open(encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InvalidInputError(f"{path}:{line_number}: not valid JSON ({exc.msg})")
            if not isinstance(record, dict):
                raise InvalidInputError(f"{path}:{line_number}: expected an object")
            yield line_number, record


def load_dataset(path: Path) -> list[GroundingSample]:
    """Reads a line-delimited dataset file.

    Raises:
        InvalidInputError: a malformed line, a missing field or an invalid sample.
        OSError: the file cannot be read.
    """
    samples = []
    for line_number, record in _read_records(path):
        try:
            x_min, y_min, x_max, y_max = record["bbox"]
            samples.append(
                GroundingSample(
                    id=str(record["id"]),
                    image_width_px=int(record["image_width"]),
                    image_height_px=int(record["image_height"]),
                    instruction=str(record["instruction"]),
                    target=BBox(float(x_min), float(y_min), float(x_max), float(y_max)),
                    platform=str(record["platform"]),
                    ui_type=None if record.get("ui_type") is None else str(record["ui_type"]),
                )
            )
        except KeyError as exc:
            raise InvalidInputError(f"{path}:{line_number}: missing field {exc.args[0]!r}")
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"{path}:{line_number}: {exc}")
    return samples


def load_predictions(path: Path) -> list[Prediction]:
    """Reads a line-delimited predictions file. raw_text records are routed through parse_point.

    Raw text without a coordinate pair yields a Prediction with point None, which scores as a miss.

    Raises:
        InvalidInputError: a malformed line.
        OSError: the file cannot be read.
    """
    preds = []
    for line_number, record in _read_records(path):
        if "id" not in record:
            raise InvalidInputError(f"{path}:{line_number}: missing field 'id'")
        pred_id = str(record["id"])
        if "x" in record and "y" in record:
            try:
                preds.append(Prediction(pred_id, Point(float(record["x"]), float(record["y"]))))
            except (TypeError, ValueError):
                raise InvalidInputError(f"{path}:{line_number}: x and y must be numbers")
        elif "raw_text" in record:
            raw_text = str(record["raw_text"])
            try:
                parsed = parse_point(raw_text)
            except CoordinateParseError as exc:
                logger.warning("%s:%d: %s", path, line_number, exc)
                preds.append(Prediction(pred_id, None, raw_text))
                continue
            preds.append(Prediction(pred_id, parsed.point, raw_text, parsed.multiple_matches))
        else:
            raise InvalidInputError(f"{path}:{line_number}: expected x and y, or raw_text")
    return preds


def load_sample_fixture() -> tuple[list[GroundingSample], list[Prediction]]:
    """Loads the bundled 10-sample dataset and its predictions."""
    data = resources.files("pixelruler.data")
    with resources.as_file(data / "sample_dataset.jsonl") as dataset_path:
        samples = load_dataset(dataset_path)
    with resources.as_file(data / "sample_predictions.jsonl") as predictions_path:
        preds = load_predictions(predictions_path)
    return samples, preds
