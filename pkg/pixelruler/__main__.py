import argparse
import importlib
import logging
import pkgutil
import sys
import typing
from collections.abc import Sequence

import pixelruler.commands
from pixelruler.utils.argsdataclass import ArgsDataClass
from pixelruler.utils.errors import ArgumentValidationError, PixelRulerError

logger = logging.getLogger("pixelruler")

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser that exits with the usage status 1 instead of argparse's 2."""

    def error(self, message: str) -> typing.NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = CommandParser(
        prog="pixelruler",
        description="Position-to-pixel mapping tools for GUI grounding: rotary embeddings, ruler tokens, "
        "sequence assembly, overhead tables, attention probes and element-accuracy evaluation.",
        epilog="Ex: pixelruler overhead --patch 28 --intervals 2,4,8,16 --csv",
    )
    subparsers = parser.add_subparsers(
        title="Command",
        description="Name of the command to run. Use <command> -h for command specific help.",
        help="Available Commands",
        dest="command",
        required=True,
    )

    for module_info in pkgutil.iter_modules(pixelruler.commands.__path__, pixelruler.commands.__name__ + "."):
        module = importlib.import_module(module_info.name)

        if hasattr(module, "get_command_and_args"):
            _, args_class = module.get_command_and_args()
            args_class.add_to_args_subparsers(subparsers)
    return parser


def configure_logging(verbosity: int) -> None:
    """Sends pixelruler logs to standard error. 0 -> WARNING, 1 -> INFO, 2+ -> DEBUG."""
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    for existing in list(logger.handlers):
        logger.removeHandler(existing)
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False


def run(argv: Sequence[str] | None = None, stdout: typing.TextIO | None = None, setup_logging: bool = True) -> int:
    """Parses argv, runs the selected command and writes its report.

    Args:
        argv (Sequence[str] | None, optional): arguments without the program name. Defaults to sys.argv[1:].
        stdout (typing.TextIO | None, optional): report stream. Defaults to sys.stdout.
        setup_logging (bool, optional): install the stderr log handler. Defaults to True.

    Returns:
        int: 0 on success, 1 on usage or validation errors, 2 on computation or input errors
    """
    stream = sys.stdout if stdout is None else stdout
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except argparse.ArgumentTypeError as exc:
        sys.stderr.write(f"pixelruler: error: {exc}\n")
        return EXIT_USAGE

    command_args = ArgsDataClass.from_parsed_args_mapping(args)
    if setup_logging:
        configure_logging(command_args.verbose)
    try:
        command_args.validate()
    except ArgumentValidationError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"pixelruler {args.command}: error: {exc}\n")
        return EXIT_USAGE

    command_class = command_args.get_command_class()
    try:
        report = command_class(command_args).run()
    except (PixelRulerError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_FAILURE
    stream.write(report.render(command_args.output_format))
    return EXIT_OK if report.ok else EXIT_FAILURE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
