"""Scores one prediction file per ruler interval and tabulates element accuracy against the interval."""

import logging
import typing
from dataclasses import dataclass
from pathlib import Path

import pixelruler.utils.arg_validators as arg_validators
from pixelruler.utils.argsdataclass import ArgField, ArgsDataClass, argclass
from pixelruler.utils.errors import InvalidInputError
from pixelruler.utils.grounding import (
    AccuracyReport,
    denormalize_predictions,
    element_accuracy,
    load_dataset,
    load_predictions,
)
from pixelruler.utils.report import Report, ReportArgs

logger = logging.getLogger(__name__)

BASELINE_FILE = "baseline.jsonl"


def get_command_and_args() -> tuple[type[typing.Any], type[ArgsDataClass]]:
    return SweepCommand, SweepArgs


@argclass(
    name="sweep",
    formatter_class=arg_validators.CustomFormatter,
    help="Element accuracy per ruler interval from a directory of prediction files.",
    description="sweep | Element accuracy per ruler interval, overall and per platform.",
    epilog="""The predictions directory holds one file per interval named s<interval>.jsonl (e.g. s8.jsonl).
An optional baseline.jsonl, predictions of a model without ruler tokens, is reported as interval "none".

Example: pixelruler sweep --dataset d.jsonl --preds-dir preds --intervals 2,4,8,16""",
)
@dataclass
class SweepArgs(ReportArgs):
    dataset: Path = ArgField(
        cmd_name="--dataset", type_parser=Path, metavar="FILE", default=None, required=True, help="Dataset file."
    )  # type: ignore[assignment]

    preds_dir: Path = ArgField(
        cmd_name="--preds-dir",
        type_parser=Path,
        metavar="DIR",
        default=None,
        required=True,
        help="Directory of s<interval>.jsonl prediction files.",
    )  # type: ignore[assignment]

    intervals: tuple[int, ...] = ArgField(
        cmd_name="--intervals",
        type_parser=arg_validators.IntList.type_parser,
        metavar=arg_validators.IntList.METAVAR,
        default=(2, 4, 8, 16),
        help="Ruler intervals to score.",
    )  # type: ignore[assignment]

    normalized: bool = ArgField(
        cmd_name="--normalized",
        action="store_true",
        help="Predictions are normalized to [0, 1] and are scaled by each sample's image size.",
    )  # type: ignore[assignment]

    @classmethod
    def get_command_class(cls):
        return SweepCommand


def accuracy_rows(label: str | int, report: AccuracyReport) -> list[tuple]:
    rows = [(label, "all", report.total, report.hit_count, report.accuracy)]
    rows.extend((label, name, group.total, group.hits, group.accuracy) for name, group in report.per_platform.items())
    return rows


class SweepCommand:
    def __init__(self, args: SweepArgs):
        self.args = args

    def score(self, samples, path: Path) -> AccuracyReport:
        preds = load_predictions(path)
        if self.args.normalized:
            preds = denormalize_predictions(samples, preds)
        logger.info("scored %s", path)
        return element_accuracy(samples, preds)

    def run(self) -> Report:
        samples = load_dataset(self.args.dataset)
        files = {interval: self.args.preds_dir / f"s{interval}.jsonl" for interval in self.args.intervals}
        missing = [str(path) for path in files.values() if not path.is_file()]
        if missing:
            raise InvalidInputError("missing prediction files", tuple(missing))

        rows = []
        baseline = self.args.preds_dir / BASELINE_FILE
        if baseline.is_file():
            rows.extend(accuracy_rows("none", self.score(samples, baseline)))
        for interval, path in files.items():
            rows.extend(accuracy_rows(interval, self.score(samples, path)))
        return Report(
            command="sweep",
            columns=("interval", "platform", "total", "hits", "accuracy"),
            rows=rows,
            meta={"dataset": str(self.args.dataset), "samples": len(samples)},
        )
