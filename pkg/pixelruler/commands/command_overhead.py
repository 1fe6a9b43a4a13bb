"""Ruler token overhead per resolution and interval."""

import typing
from dataclasses import dataclass
from pathlib import Path

import pixelruler.utils.arg_validators as arg_validators
from pixelruler.utils.argsdataclass import ArgField, ArgsDataClass, argclass
from pixelruler.utils.report import Report, ReportArgs, format_table
from pixelruler.utils.ruler import DEFAULT_PATCH_PX, load_resolutions, overhead


def get_command_and_args() -> tuple[type[typing.Any], type[ArgsDataClass]]:
    return OverheadCommand, OverheadArgs


@argclass(
    name="overhead",
    formatter_class=arg_validators.CustomFormatter,
    help="Tabulate ruler tokens against vision tokens for a list of resolutions.",
    description="overhead | Ratio of ruler tokens to vision tokens per resolution and interval.",
    epilog="""The resolutions file lists one `name,width,height` per line; blank lines and # comments are skipped.
Without --resolutions a bundled list of mobile and desktop resolutions up to 8K is used.

Example: pixelruler overhead --resolutions res.csv --patch 28 --intervals 2,4,8,16 --csv""",
)
@dataclass
class OverheadArgs(ReportArgs):
    resolutions: Path | None = ArgField(
        cmd_name="--resolutions",
        type_parser=Path,
        metavar="FILE",
        default=None,
        help="Resolution list. Defaults to the bundled list.",
    )  # type: ignore[assignment]

    patch: int = ArgField(
        cmd_name="--patch",
        type_parser=arg_validators.PositiveInt.type_parser,
        metavar=arg_validators.PositiveInt.METAVAR,
        default=DEFAULT_PATCH_PX,
        help="Pixels per patch side.",
    )  # type: ignore[assignment]

    intervals: tuple[int, ...] = ArgField(
        cmd_name="--intervals",
        type_parser=arg_validators.IntList.type_parser,
        metavar=arg_validators.IntList.METAVAR,
        default=(2, 4, 8, 16),
        help="Ruler intervals to tabulate.",
    )  # type: ignore[assignment]

    @classmethod
    def get_command_class(cls):
        return OverheadCommand


class OverheadCommand:
    def __init__(self, args: OverheadArgs):
        self.args = args

    def run(self) -> Report:
        resolutions = load_resolutions(self.args.resolutions)
        rows = []
        pivot = []
        for resolution in resolutions:
            percentages = []
            for interval in self.args.intervals:
                stats = overhead(resolution.width, resolution.height, self.args.patch, interval)
                rows.append(
                    (
                        resolution.name,
                        resolution.width,
                        resolution.height,
                        interval,
                        stats.vision_count,
                        stats.ruler_count,
                        stats.ratio,
                        stats.total_ratio,
                        stats.sparse,
                    )
                )
                marker = "*" if stats.sparse else ""
                percentages.append(f"{stats.ratio * 100:.3f}%{marker}")
            pivot.append((resolution.name, f"{resolution.width}x{resolution.height}", *percentages))

        body = f"ruler / vision tokens, patch {self.args.patch}px\n\n"
        body += format_table(("name", "size", *(f"s={s}" for s in self.args.intervals)), pivot)
        if any(row[-1] for row in rows):
            body += "\n* a single ruler token covers the image\n"
        return Report(
            command="overhead",
            columns=(
                "name",
                "width",
                "height",
                "interval",
                "vision_count",
                "ruler_count",
                "ratio",
                "total_ratio",
                "sparse",
            ),
            rows=rows,
            meta={"patch": self.args.patch, "intervals": list(self.args.intervals)},
            body=body,
        )
