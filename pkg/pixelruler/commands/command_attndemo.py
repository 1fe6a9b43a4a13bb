"""Scores a vision token's query against every ruler token of its image."""

import typing
from dataclasses import dataclass

import numpy as np

import pixelruler.utils.arg_validators as arg_validators
from pixelruler.utils.argsdataclass import ArgField, ArgsDataClass, argclass
from pixelruler.utils.attention import AttentionConfig, ruler_peak
from pixelruler.utils.errors import ArgumentValidationError
from pixelruler.utils.geometry import Coord
from pixelruler.utils.mrope import AssignmentMode, assign_axes
from pixelruler.utils.report import Report, ReportArgs
from pixelruler.utils.rope import DEFAULT_BASE, make_spectrum
from pixelruler.utils.ruler import DEFAULT_PATCH_PX, build_grid, build_ruler_tokens


def get_command_and_args() -> tuple[type[typing.Any], type[ArgsDataClass]]:
    return AttnDemoCommand, AttnDemoArgs


@argclass(
    name="attn-demo",
    formatter_class=arg_validators.CustomFormatter,
    help="Print the score of a probe patch against every ruler token and the winning ruler index.",
    description="attn-demo | Score a vision token against the ruler tokens of its image.",
    epilog="""The probe vector is all ones, used as both query and key. Ties within 1e-12 (relative) are flagged and
resolved to the smallest index.

Example: pixelruler attn-demo --grid 16x16 --interval 4 --probe 10,10 --mode inter""",
)
@dataclass
class AttnDemoArgs(ReportArgs):
    grid: tuple[int, int] = ArgField(
        cmd_name="--grid",
        type_parser=arg_validators.GridShape.type_parser,
        metavar=arg_validators.GridShape.METAVAR,
        default=(16, 16),
        help="Patch grid, rows x columns.",
    )  # type: ignore[assignment]

    interval: int = ArgField(
        cmd_name="--interval",
        type_parser=arg_validators.PositiveInt.type_parser,
        metavar=arg_validators.PositiveInt.METAVAR,
        default=4,
        help="Ruler interval s, in patches.",
    )  # type: ignore[assignment]

    probe: Coord = ArgField(
        cmd_name="--probe",
        type_parser=arg_validators.ProbeCoord.type_parser,
        metavar=arg_validators.ProbeCoord.METAVAR,
        default=Coord(9, 9),
        help="Patch cell of the querying vision token.",
    )  # type: ignore[assignment]

    mode: AssignmentMode = ArgField(
        cmd_name="--mode",
        type_parser=arg_validators.AssignmentModeArg.type_parser,
        metavar=arg_validators.AssignmentModeArg.METAVAR,
        default=AssignmentMode.INTERLEAVED,
        help="Frequency assignment mode.",
    )  # type: ignore[assignment]

    axes: int = ArgField(
        cmd_name="--axes", type_parser=int, choices=[2, 3], default=2, help="Axes of the position IDs."
    )  # type: ignore[assignment]

    dim: int = ArgField(
        cmd_name="--dim",
        type_parser=arg_validators.EvenPositiveInt.type_parser,
        metavar=arg_validators.EvenPositiveInt.METAVAR,
        default=32,
        help="Head dimension d.",
    )  # type: ignore[assignment]

    base: float = ArgField(
        cmd_name="--base",
        type_parser=arg_validators.PositiveFloat.type_parser,
        metavar=arg_validators.PositiveFloat.METAVAR,
        default=DEFAULT_BASE,
        help="RoPE base.",
    )  # type: ignore[assignment]

    def validate(self) -> None:
        super().validate()
        rows, columns = self.grid
        if self.probe.row >= rows or self.probe.column >= columns:
            raise ArgumentValidationError(
                f"--probe {self.probe.row},{self.probe.column} lies outside the {rows}x{columns} --grid"
            )

    @classmethod
    def get_command_class(cls):
        return AttnDemoCommand


class AttnDemoCommand:
    def __init__(self, args: AttnDemoArgs):
        self.args = args

    def run(self) -> Report:
        rows, columns = self.args.grid
        grid = build_grid(columns * DEFAULT_PATCH_PX, rows * DEFAULT_PATCH_PX, DEFAULT_PATCH_PX)
        rulers = build_ruler_tokens(grid, self.args.interval, self.args.axes)
        spec = make_spectrum(self.args.dim, self.args.base)
        cfg = AttentionConfig(spec, assign_axes(spec.half_dim, self.args.axes, self.args.mode))
        peak = ruler_peak(grid, rulers, self.args.probe, cfg, np.ones(spec.head_dim))
        faces = dict(zip(rulers.indices, rulers.face_values))
        return Report(
            command="attn-demo",
            columns=("index", "face_value", "score", "winner"),
            rows=[(index, faces[index], value, index in peak.tied_indices) for index, value in peak.scores],
            meta={
                "probe": {"row": self.args.probe.row, "col": self.args.probe.column},
                "mode": self.args.mode.name.lower(),
                "axes": self.args.axes,
                "winner": peak.winner,
                "score": peak.score,
                "tie": peak.tie,
                "tied_indices": list(peak.tied_indices),
            },
        )
