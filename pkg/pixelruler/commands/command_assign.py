"""Prints a frequency-to-axis assignment and the frequency range each axis owns."""

import typing
from dataclasses import dataclass

import pixelruler.utils.arg_validators as arg_validators
from pixelruler.utils.argsdataclass import ArgField, ArgsDataClass, argclass
from pixelruler.utils.errors import ArgumentValidationError
from pixelruler.utils.mrope import AssignmentMode, assign_axes, axis_frequency_profile
from pixelruler.utils.report import Report, ReportArgs
from pixelruler.utils.rope import DEFAULT_BASE, make_spectrum


def get_command_and_args() -> tuple[type[typing.Any], type[ArgsDataClass]]:
    return AssignCommand, AssignArgs


@argclass(
    name="assign",
    formatter_class=arg_validators.CustomFormatter,
    help="Print the frequency-to-axis mapping (sequential MRoPE or interleaved I-MRoPE).",
    description="assign | Print the frequency-to-axis mapping and the per-axis frequency profile.",
    epilog="""Sequential mode gives each axis one consecutive chunk of frequency indices, t (or h) first.
Interleaved mode cycles j mod 3 through w, h, t (j mod 2 through h, w for two axes).

Example: pixelruler assign --half-dim 6 --axes 3 --mode inter""",
)
@dataclass
class AssignArgs(ReportArgs):
    half_dim: int = ArgField(
        cmd_name="--half-dim",
        type_parser=arg_validators.PositiveInt.type_parser,
        metavar=arg_validators.PositiveInt.METAVAR,
        default=64,
        help="Number of frequency pairs, head_dim / 2.",
    )  # type: ignore[assignment]

    axes: int = ArgField(
        cmd_name="--axes",
        type_parser=int,
        choices=[2, 3],
        default=2,
        help="2 for (h, w) positions, 3 for (t, h, w).",
    )  # type: ignore[assignment]

    mode: AssignmentMode = ArgField(
        cmd_name="--mode",
        type_parser=arg_validators.AssignmentModeArg.type_parser,
        metavar=arg_validators.AssignmentModeArg.METAVAR,
        default=AssignmentMode.INTERLEAVED,
        help="Frequency assignment mode.",
    )  # type: ignore[assignment]

    sections: tuple[int, ...] | None = ArgField(
        cmd_name="--sections",
        type_parser=arg_validators.SectionSizes.type_parser,
        metavar=arg_validators.SectionSizes.METAVAR,
        default=None,
        help="Per-axis chunk lengths for sequential mode. Defaults to a near-equal split.",
    )  # type: ignore[assignment]

    base: float = ArgField(
        cmd_name="--base",
        type_parser=arg_validators.PositiveFloat.type_parser,
        metavar=arg_validators.PositiveFloat.METAVAR,
        default=DEFAULT_BASE,
        help="RoPE base used for the frequency profile.",
    )  # type: ignore[assignment]

    def validate(self) -> None:
        super().validate()
        if self.sections is None:
            return
        if self.mode is AssignmentMode.INTERLEAVED:
            raise ArgumentValidationError("--sections only applies to --mode seq")
        if len(self.sections) != self.axes:
            raise ArgumentValidationError(f"--sections needs {self.axes} sizes, got {len(self.sections)}")
        if sum(self.sections) != self.half_dim:
            raise ArgumentValidationError(f"--sections must sum to --half-dim {self.half_dim}")

    @classmethod
    def get_command_class(cls):
        return AssignCommand


class AssignCommand:
    def __init__(self, args: AssignArgs):
        self.args = args

    def run(self) -> Report:
        assign = assign_axes(self.args.half_dim, self.args.axes, self.args.mode, self.args.sections)
        spec = make_spectrum(2 * self.args.half_dim, self.args.base)
        profile = axis_frequency_profile(assign, spec)
        return Report(
            command="assign",
            columns=("axis", "count", "min_theta", "max_theta", "min_j", "max_j"),
            rows=[
                (p.axis, p.count, p.min_theta, p.max_theta, p.min_index, p.max_index) for p in profile
            ],
            meta={
                "half_dim": assign.half_dim,
                "axes": list(assign.axis_names),
                "mode": assign.mode.name.lower(),
                "mapping": assign.labels(),
            },
        )
