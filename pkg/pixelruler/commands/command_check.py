"""Runs the seeded property suite and reports pass/fail per invariant."""

import typing
from dataclasses import dataclass

import pixelruler.utils.arg_validators as arg_validators
from pixelruler.utils import properties
from pixelruler.utils.argsdataclass import ArgField, ArgsDataClass, argclass
from pixelruler.utils.errors import ArgumentValidationError
from pixelruler.utils.report import Report, ReportArgs


def get_command_and_args() -> tuple[type[typing.Any], type[ArgsDataClass]]:
    return CheckCommand, CheckArgs


@argclass(
    name="check",
    formatter_class=arg_validators.CustomFormatter,
    help="Run the property suite. Exits 0 iff every property passes.",
    description="check | Run the seeded property suite over every module.",
    epilog="""The seed defaults to the RULER_SEED environment variable when it is set; --seed wins over both.

Example: RULER_SEED=7 pixelruler check --only diagonal-retrieval""",
)
@dataclass
class CheckArgs(ReportArgs):
    seed: int = ArgField(
        cmd_name="--seed",
        type_parser=arg_validators.NonNegativeInt.type_parser,
        metavar=arg_validators.NonNegativeInt.METAVAR,
        env_var="RULER_SEED",
        default=properties.DEFAULT_SEED,
        help="Seed of the randomized properties.",
    )  # type: ignore[assignment]

    only: tuple[str, ...] = ArgField(
        cmd_name="--only",
        nargs="+",
        metavar="NAME",
        default=(),
        help="Run only the named properties.",
    )  # type: ignore[assignment]

    def validate(self) -> None:
        super().validate()
        unknown = sorted(set(self.only) - set(properties.property_names()))
        if unknown:
            raise ArgumentValidationError(f"unknown properties: {', '.join(unknown)}")

    @classmethod
    def get_command_class(cls):
        return CheckCommand


class CheckCommand:
    def __init__(self, args: CheckArgs):
        self.args = args

    def run(self) -> Report:
        results = properties.run_suite(self.args.seed, self.args.only)
        failed = [result for result in results if not result.passed]
        return Report(
            command="check",
            columns=("module", "property", "cases", "status", "detail"),
            rows=[
                (r.module, r.name, r.cases, "pass" if r.passed else "FAIL", r.detail) for r in results
            ],
            meta={"seed": self.args.seed, "passed": len(results) - len(failed), "failed": len(failed)},
            ok=not failed,
        )
