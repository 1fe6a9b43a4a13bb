"""Assembles a multimodal sequence and writes its token dump."""

import typing
from dataclasses import dataclass

import pixelruler.utils.arg_validators as arg_validators
from pixelruler.multimodal_sequence import PositionScheme, assemble_sequence
from pixelruler.utils.argsdataclass import ArgField, ArgsDataClass, argclass
from pixelruler.utils.errors import ArgumentValidationError
from pixelruler.utils.mrope import AXIS_NAMES
from pixelruler.utils.report import Report, ReportArgs
from pixelruler.utils.ruler import DEFAULT_INTERVAL, DEFAULT_PATCH_PX, build_grid


def get_command_and_args() -> tuple[type[typing.Any], type[ArgsDataClass]]:
    return SequenceCommand, SequenceArgs


@argclass(
    name="sequence",
    formatter_class=arg_validators.CustomFormatter,
    help="Assemble [system, (ruler, vision) per image, prompt] and dump every token with its position ID.",
    description="sequence | Assemble a multimodal sequence and dump it one token per line.",
    epilog="""Dump format, one token per line:
    seq_idx<TAB>segment<TAB>(h,w) or (t,h,w)<TAB>payload

Example: pixelruler sequence --width 84 --height 56 --image 56x56 --interval 1 --system 2 --prompt 1""",
)
@dataclass
class SequenceArgs(ReportArgs):
    width: int | None = ArgField(
        cmd_name="--width",
        type_parser=arg_validators.PositiveInt.type_parser,
        metavar=arg_validators.PositiveInt.METAVAR,
        default=None,
        help="Width in pixels of the first image. Requires --height.",
    )  # type: ignore[assignment]

    height: int | None = ArgField(
        cmd_name="--height",
        type_parser=arg_validators.PositiveInt.type_parser,
        metavar=arg_validators.PositiveInt.METAVAR,
        default=None,
        help="Height in pixels of the first image. Requires --width.",
    )  # type: ignore[assignment]

    image: tuple[tuple[int, int], ...] = ArgField(
        cmd_name="--image",
        type_parser=arg_validators.ImageSize.type_parser,
        metavar=arg_validators.ImageSize.METAVAR,
        nargs="+",
        default=(),
        help="Further images, in order.",
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

    no_ruler: bool = ArgField(
        cmd_name="--no-ruler", action="store_true", help="Emit no ruler tokens (ignores --interval)."
    )  # type: ignore[assignment]

    axes: int = ArgField(
        cmd_name="--axes", type_parser=int, choices=[2, 3], default=2, help="Axes of the position IDs."
    )  # type: ignore[assignment]

    system: int = ArgField(
        cmd_name="--system",
        type_parser=arg_validators.NonNegativeInt.type_parser,
        metavar=arg_validators.NonNegativeInt.METAVAR,
        default=1,
        help="Number of placeholder system tokens.",
    )  # type: ignore[assignment]

    prompt: int = ArgField(
        cmd_name="--prompt",
        type_parser=arg_validators.NonNegativeInt.type_parser,
        metavar=arg_validators.NonNegativeInt.METAVAR,
        default=1,
        help="Number of placeholder prompt tokens.",
    )  # type: ignore[assignment]

    scheme: PositionScheme = ArgField(
        cmd_name="--scheme",
        type_parser=arg_validators.PositionSchemeArg.type_parser,
        metavar=arg_validators.PositionSchemeArg.METAVAR,
        default=PositionScheme.MULTIMODAL,
        help="multimodal: 2-D patch positions and shared ruler positions. flat: 1-D numbering of every token.",
    )  # type: ignore[assignment]

    def validate(self) -> None:
        super().validate()
        if (self.width is None) != (self.height is None):
            raise ArgumentValidationError("--width and --height must be given together")

    def image_sizes(self) -> list[tuple[int, int]]:
        sizes = [] if self.width is None else [(self.width, self.height)]
        return sizes + list(self.image)

    @classmethod
    def get_command_class(cls):
        return SequenceCommand


class SequenceCommand:
    def __init__(self, args: SequenceArgs):
        self.args = args

    def run(self) -> Report:
        grids = [build_grid(width, height, self.args.patch) for width, height in self.args.image_sizes()]
        sequence = assemble_sequence(
            system_tokens=[f"<sys{i}>" for i in range(self.args.system)],
            images=[(grid, grid.patch_count) for grid in grids],
            prompt_tokens=[f"<tok{i}>" for i in range(self.args.prompt)],
            interval=None if self.args.no_ruler else self.args.interval,
            axis_count=self.args.axes,
            scheme=self.args.scheme,
        )
        return Report(
            command="sequence",
            columns=("seq_index", "segment", *AXIS_NAMES[self.args.axes], "payload"),
            rows=[
                (token.seq_index, token.segment.tag, *token.position.axes, token.payload) for token in sequence
            ],
            meta={
                "axes": self.args.axes,
                "scheme": self.args.scheme.name.lower(),
                "images": [{"columns": grid.columns, "rows": grid.rows, "t0": grid.t0} for grid in sequence.grids],
            },
            body=sequence.dump(),
        )
