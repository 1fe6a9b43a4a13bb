"""Dumps the RoPE frequency spectrum of a head dimension."""

import typing
from dataclasses import dataclass

import pixelruler.utils.arg_validators as arg_validators
from pixelruler.utils.argsdataclass import ArgField, ArgsDataClass, argclass
from pixelruler.utils.report import Report, ReportArgs
from pixelruler.utils.rope import DEFAULT_BASE, make_spectrum


def get_command_and_args() -> tuple[type[typing.Any], type[ArgsDataClass]]:
    return SpectrumCommand, SpectrumArgs


@argclass(
    name="spectrum",
    formatter_class=arg_validators.CustomFormatter,
    help="Print the RoPE frequencies thetas[j] = base^(-2j/d).",
    description="spectrum | Print the RoPE frequencies thetas[j] = base^(-2j/d) for j = 0 ... d/2 - 1.",
    epilog="Example: pixelruler spectrum --dim 8 --base 10000",
)
@dataclass
class SpectrumArgs(ReportArgs):
    dim: int = ArgField(
        cmd_name="--dim",
        type_parser=arg_validators.EvenPositiveInt.type_parser,
        metavar=arg_validators.EvenPositiveInt.METAVAR,
        default=128,
        help="Head dimension d.",
    )  # type: ignore[assignment]

    base: float = ArgField(
        cmd_name="--base",
        type_parser=arg_validators.PositiveFloat.type_parser,
        metavar=arg_validators.PositiveFloat.METAVAR,
        default=DEFAULT_BASE,
        help="RoPE base.",
    )  # type: ignore[assignment]

    @classmethod
    def get_command_class(cls):
        return SpectrumCommand


class SpectrumCommand:
    def __init__(self, args: SpectrumArgs):
        self.args = args

    def run(self) -> Report:
        spec = make_spectrum(self.args.dim, self.args.base)
        return Report(
            command="spectrum",
            columns=("j", "theta"),
            rows=[(j, float(theta)) for j, theta in enumerate(spec.thetas)],
            meta={"head_dim": spec.head_dim, "base": spec.base},
        )
