"""Element accuracy of one predictions file."""

import typing
from dataclasses import dataclass
from pathlib import Path

import pixelruler.utils.arg_validators as arg_validators
from pixelruler.utils.argsdataclass import ArgField, ArgsDataClass, argclass
from pixelruler.utils.grounding import denormalize_predictions, element_accuracy, load_dataset, load_predictions
from pixelruler.utils.report import Report, ReportArgs, format_table


def get_command_and_args() -> tuple[type[typing.Any], type[ArgsDataClass]]:
    return EvalCommand, EvalArgs


@argclass(
    name="eval",
    formatter_class=arg_validators.CustomFormatter,
    help="Score predictions: a hit is a point inside the target box, boundaries included.",
    description="eval | Element accuracy overall, per platform and per UI type.",
    epilog="""Dataset lines: {"id", "image_width", "image_height", "instruction", "bbox": [x0, y0, x1, y1], "platform"}
with an optional "ui_type". Prediction lines: {"id", "x", "y"} or {"id", "raw_text"}.
Samples without a prediction, or whose raw text holds no coordinate pair, count as misses.

Example: pixelruler eval --dataset d.jsonl --preds p.jsonl --json""",
)
@dataclass
class EvalArgs(ReportArgs):
    dataset: Path = ArgField(
        cmd_name="--dataset", type_parser=Path, metavar="FILE", default=None, required=True, help="Dataset file."
    )  # type: ignore[assignment]

    preds: Path = ArgField(
        cmd_name="--preds", type_parser=Path, metavar="FILE", default=None, required=True, help="Predictions file."
    )  # type: ignore[assignment]

    normalized: bool = ArgField(
        cmd_name="--normalized",
        action="store_true",
        help="Predictions are normalized to [0, 1] and are scaled by each sample's image size.",
    )  # type: ignore[assignment]

    @classmethod
    def get_command_class(cls):
        return EvalCommand


class EvalCommand:
    def __init__(self, args: EvalArgs):
        self.args = args

    def run(self) -> Report:
        samples = load_dataset(self.args.dataset)
        preds = load_predictions(self.args.preds)
        if self.args.normalized:
            preds = denormalize_predictions(samples, preds)
        report = element_accuracy(samples, preds)

        rows = []
        for sample in samples:
            point = report.points[sample.id]
            rows.append(
                (
                    sample.id,
                    sample.platform,
                    sample.ui_type,
                    None if point is None else point.x,
                    None if point is None else point.y,
                    report.hits[sample.id],
                )
            )

        groups = [("all", "", report.total, report.hit_count, report.accuracy)]
        groups += [("platform", name, g.total, g.hits, g.accuracy) for name, g in report.per_platform.items()]
        groups += [("ui_type", name, g.total, g.hits, g.accuracy) for name, g in report.per_ui_type.items()]
        body = format_table(("group", "name", "total", "hits", "accuracy"), groups)
        for label, ids in (
            ("missing", report.missing_ids),
            ("unparsed", report.unparsed_ids),
            ("unknown", report.unknown_ids),
        ):
            if ids:
                body += f"{label}: {', '.join(ids)}\n"

        meta = report.to_record()
        del meta["per_sample"]
        return Report(
            command="eval",
            columns=("id", "platform", "ui_type", "x", "y", "hit"),
            rows=rows,
            meta=meta,
            body=body,
        )
