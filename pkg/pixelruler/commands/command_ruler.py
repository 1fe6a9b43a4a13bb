"""Builds the ruler tokens of an image and optionally splits pixel coordinates into reference + adjustment."""

import typing
from dataclasses import dataclass

import pixelruler.utils.arg_validators as arg_validators
from pixelruler.utils.argsdataclass import ArgField, ArgsDataClass, argclass
from pixelruler.utils.mrope import AXIS_NAMES
from pixelruler.utils.report import Report, ReportArgs
from pixelruler.utils.ruler import DEFAULT_INTERVAL, DEFAULT_PATCH_PX, build_grid, build_ruler_tokens


def get_command_and_args() -> tuple[type[typing.Any], type[ArgsDataClass]]:
    return RulerCommand, RulerArgs


@argclass(
    name="ruler",
    formatter_class=arg_validators.CustomFormatter,
    help="Print the ruler tokens of an image: grid indices, position IDs, face values and arithmetic bound.",
    description="ruler | Print the ruler tokens of an image.",
    epilog="""Ruler tokens sit at grid indices 0, s, 2s, ..., floor(max(H, W) / s) * s. Each token shares the
position ID t0 + i with patch row/column i and carries the pixel coordinate i * p as its face value.

Example: pixelruler ruler --width 1920 --height 1080 --patch 28 --interval 8 --decompose 1000""",
)
@dataclass
class RulerArgs(ReportArgs):
    width: int = ArgField(
        cmd_name="--width",
        type_parser=arg_validators.PositiveInt.type_parser,
        metavar=arg_validators.PositiveInt.METAVAR,
        default=None,
        required=True,
        help="Image width in pixels.",
    )  # type: ignore[assignment]

    height: int = ArgField(
        cmd_name="--height",
        type_parser=arg_validators.PositiveInt.type_parser,
        metavar=arg_validators.PositiveInt.METAVAR,
        default=None,
        required=True,
        help="Image height in pixels.",
    )  # type: ignore[assignment]

    patch: int = ArgField(
        cmd_name="--patch",
        type_parser=arg_validators.PositiveInt.type_parser,
        metavar=arg_validators.PositiveInt.METAVAR,
        default=DEFAULT_PATCH_PX,
        help="Pixels per patch side.",
    )  # type: ignore[assignment]

    interval: int = ArgField(
        cmd_name="--interval",
        type_parser=arg_validators.PositiveInt.type_parser,
        metavar=arg_validators.PositiveInt.METAVAR,
        default=DEFAULT_INTERVAL,
        help="Ruler interval s, in patches.",
    )  # type: ignore[assignment]

    axes: int = ArgField(
        cmd_name="--axes", type_parser=int, choices=[2, 3], default=2, help="Axes of the position IDs."
    )  # type: ignore[assignment]

    t0: int = ArgField(
        cmd_name="--t0",
        type_parser=arg_validators.NonNegativeInt.type_parser,
        metavar=arg_validators.NonNegativeInt.METAVAR,
        default=0,
        help="Initial spatial position ID of the image.",
    )  # type: ignore[assignment]

    decompose: tuple[float, ...] = ArgField(
        cmd_name="--decompose",
        type_parser=arg_validators.NonNegativeFloat.type_parser,
        metavar=arg_validators.NonNegativeFloat.METAVAR,
        nargs="+",
        default=(),
        help="Pixel coordinates to split into the nearest ruler face value at or below them plus an adjustment.",
    )  # type: ignore[assignment]

    @classmethod
    def get_command_class(cls):
        return RulerCommand


class RulerCommand:
    def __init__(self, args: RulerArgs):
        self.args = args

    def run(self) -> Report:
        grid = build_grid(self.args.width, self.args.height, self.args.patch, self.args.t0)
        rulers = build_ruler_tokens(grid, self.args.interval, self.args.axes)
        decompositions = []
        for x_px in self.args.decompose:
            token, adjustment = rulers.decompose(x_px)
            decompositions.append(
                {"x": x_px, "reference": token.face_value, "grid_index": token.grid_index, "adjustment": adjustment}
            )
        meta = {
            "grid_columns": grid.columns,
            "grid_rows": grid.rows,
            "t0": grid.t0,
            "interval": rulers.interval,
            "patch": rulers.patch_px,
            "arithmetic_bound": rulers.arithmetic_bound,
            "count": len(rulers),
        }
        if decompositions:
            meta["decompositions"] = decompositions
        return Report(
            command="ruler",
            columns=("index", *AXIS_NAMES[self.args.axes], "face_value"),
            rows=[(token.grid_index, *token.position.axes, token.face_value) for token in rulers.tokens],
            meta=meta,
        )
