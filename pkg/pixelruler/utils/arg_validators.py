import argparse

from pixelruler.multimodal_sequence import PositionScheme
from pixelruler.utils.geometry import Coord
from pixelruler.utils.mrope import AssignmentMode


class CustomFormatter(argparse.ArgumentDefaultsHelpFormatter, argparse.RawDescriptionHelpFormatter):
    """Custom formatter for argparse that combines ArgumentDefaultsHelpFormatter and RawDescriptionHelpFormatter."""

    pass


class PositiveInt:
    """Argument type for positive integers.

    int(n) > 0

    Raises:
        argparse.ArgumentTypeError: Value is not a positive integer.
    """

    METAVAR = "(int > 0)"

    @staticmethod
    def type_parser(arg: str) -> int:
        """Validates that the given argument is a positive integer. n > 0.

        Args:
            arg (str): argument to validate

        Returns:
            int: validated positive integer
        """
        if int(arg) > 0:
            return int(arg)
        else:
            raise argparse.ArgumentTypeError(f"invalid value: '{arg}' is not > 0.")


class NonNegativeInt:
    """Validates that the given argument is a nonnegative integer. n >= 0.

    Raises:
        argparse.ArgumentTypeError: Value is not in range.
    """

    METAVAR = "(int >= 0)"

    @staticmethod
    def type_parser(arg: str) -> int:
        if int(arg) < 0:
            raise argparse.ArgumentTypeError(f"invalid value: '{arg}' Argument must be int >= 0.")
        return int(arg)


class EvenPositiveInt:
    """Argument type for head dimensions: even integers >= 2.

    Raises:
        argparse.ArgumentTypeError: Value is odd or < 2.
    """

    METAVAR = "(even int >= 2)"

    @staticmethod
    def type_parser(arg: str) -> int:
        value = int(arg)
        if value < 2 or value % 2:
            raise argparse.ArgumentTypeError(f"invalid value: '{arg}' must be an even int >= 2.")
        return value


class PositiveFloat:
    """Validates that the given argument is a positive float. n > 0.

    Raises:
        argparse.ArgumentTypeError: Value is not in range.
    """

    METAVAR = "(float > 0)"

    @staticmethod
    def type_parser(arg: str) -> float:
        """Validates that the given argument is a positive float. n > 0.

        Args:
            arg (str): argument to validate

        Raises:
            argparse.ArgumentTypeError: value is not in range.

        Returns:
            float: validated positive float
        """
        if float(arg) > 0:
            return float(arg)
        else:
            raise argparse.ArgumentTypeError(
                f"invalid value: '{arg}' is not a valid value. Argument must be a float > 0."
            )


class NonNegativeFloat:
    """Validates that the given argument is a float >= 0, e.g. a pixel coordinate.

    Raises:
        argparse.ArgumentTypeError: Argument value is not in range.
    """

    METAVAR = "(float >= 0)"

    @staticmethod
    def type_parser(arg: str) -> float:
        if not float(arg) >= 0:
            raise argparse.ArgumentTypeError(f"invalid argument value: '{arg}' is out of range. Must be float >= 0.")
        return float(arg)


class IntList:
    """Argument type for comma separated positive integers. Ex: 2,4,8,16

    Raises:
        argparse.ArgumentTypeError: An item is not a positive integer, or the list is empty.
    """

    METAVAR = "(comma separated ints > 0 e.g. '2,4,8,16')"

    @staticmethod
    def type_parser(arg: str) -> tuple[int, ...]:
        try:
            values = tuple(int(item) for item in arg.split(",") if item.strip())
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid list: '{arg}' must be comma separated ints. Ex: 2,4,8,16")
        if not values or any(value <= 0 for value in values):
            raise argparse.ArgumentTypeError(f"invalid list: '{arg}' must hold at least one int and every int > 0.")
        return values


class SectionSizes:
    """Argument type for sequential section sizes, comma separated ints >= 0. Ex: 22,21,21

    Raises:
        argparse.ArgumentTypeError: An item is not a nonnegative integer.
    """

    METAVAR = "(comma separated ints >= 0 e.g. '22,21,21')"

    @staticmethod
    def type_parser(arg: str) -> tuple[int, ...]:
        try:
            values = tuple(int(item) for item in arg.split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid sections: '{arg}' must be comma separated ints. Ex: 22,21,21")
        if any(value < 0 for value in values):
            raise argparse.ArgumentTypeError(f"invalid sections: '{arg}' sizes must be >= 0.")
        return values


class _Dimensions:
    SEPARATOR = "x"

    @classmethod
    def _split(cls, arg: str, example: str) -> tuple[int, int]:
        try:
            first, second = (int(part) for part in arg.lower().split(cls.SEPARATOR))
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid size: '{arg}' Ex: {example}")
        if first <= 0 or second <= 0:
            raise argparse.ArgumentTypeError(f"invalid size: '{arg}' both values must be > 0. Ex: {example}")
        return first, second


class ImageSize(_Dimensions):
    """Argument type for image sizes in pixels, width x height. Ex: 1920x1080

    Raises:
        argparse.ArgumentTypeError: Value is not WxH with positive ints.
    """

    METAVAR = "(WxH pixels e.g. '1920x1080')"

    @classmethod
    def type_parser(cls, arg: str) -> tuple[int, int]:
        return cls._split(arg, "1920x1080")


class GridShape(_Dimensions):
    """Argument type for patch grid shapes, rows x columns. Ex: 16x16

    Raises:
        argparse.ArgumentTypeError: Value is not HxW with positive ints.
    """

    METAVAR = "(HxW patches e.g. '16x16')"

    @classmethod
    def type_parser(cls, arg: str) -> tuple[int, int]:
        return cls._split(arg, "16x16")


class ProbeCoord:
    """Argument type for a patch cell given as row,column. Ex: 9,9

    Raises:
        argparse.ArgumentTypeError: Value is not two ints >= 0.
    """

    METAVAR = "(row,col e.g. '9,9')"

    @staticmethod
    def type_parser(arg: str) -> Coord:
        try:
            row, column = (int(part) for part in arg.split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid probe: '{arg}' must be row,col. Ex: 9,9")
        if row < 0 or column < 0:
            raise argparse.ArgumentTypeError(f"invalid probe: '{arg}' row and col must be >= 0.")
        return Coord(column, row)


class AssignmentModeArg:
    """Argument type for frequency assignment modes.

    Raises:
        argparse.ArgumentTypeError: Argument value is not a valid mode.
    """

    METAVAR = "(seq, inter)"

    @staticmethod
    def type_parser(arg: str) -> AssignmentMode:
        mode_map = {
            "seq": AssignmentMode.SEQUENTIAL,
            "sequential": AssignmentMode.SEQUENTIAL,
            "inter": AssignmentMode.INTERLEAVED,
            "interleaved": AssignmentMode.INTERLEAVED,
        }
        if arg.lower() in mode_map:
            return mode_map[arg.lower()]
        raise argparse.ArgumentTypeError(f"invalid mode: '{arg}' is not a valid mode. Choices are seq or inter.")


class PositionSchemeArg:
    """Argument type for position schemes.

    Raises:
        argparse.ArgumentTypeError: Argument value is not a valid scheme.
    """

    METAVAR = "(multimodal, flat)"

    @staticmethod
    def type_parser(arg: str) -> PositionScheme:
        try:
            return PositionScheme[arg.upper()]
        except KeyError:
            raise argparse.ArgumentTypeError(
                f"invalid scheme: '{arg}' is not a valid scheme. Choices are multimodal or flat."
            )
