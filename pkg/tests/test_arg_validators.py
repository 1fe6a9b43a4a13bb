import argparse

import pytest

from pixelruler.multimodal_sequence import PositionScheme
from pixelruler.utils import arg_validators
from pixelruler.utils.geometry import Coord
from pixelruler.utils.mrope import AssignmentMode


def test_int_list() -> None:
    assert arg_validators.IntList.type_parser("2,4,8,16") == (2, 4, 8, 16)


@pytest.mark.parametrize("arg", ["", "2,x", "0,4", "-2"])
def test_int_list_rejects(arg: str) -> None:
    with pytest.raises(argparse.ArgumentTypeError):
        arg_validators.IntList.type_parser(arg)


def test_section_sizes_allow_zero() -> None:
    assert arg_validators.SectionSizes.type_parser("0,3,3") == (0, 3, 3)
    with pytest.raises(argparse.ArgumentTypeError):
        arg_validators.SectionSizes.type_parser("1,-1,6")


def test_image_size_is_width_by_height() -> None:
    assert arg_validators.ImageSize.type_parser("1920x1080") == (1920, 1080)
    assert arg_validators.ImageSize.type_parser("28X56") == (28, 56)


def test_grid_shape_is_rows_by_columns() -> None:
    assert arg_validators.GridShape.type_parser("16x8") == (16, 8)


@pytest.mark.parametrize("arg", ["1920", "0x10", "axb", "1x2x3"])
def test_dimensions_reject(arg: str) -> None:
    with pytest.raises(argparse.ArgumentTypeError):
        arg_validators.ImageSize.type_parser(arg)


def test_probe_coord_is_row_then_column() -> None:
    assert arg_validators.ProbeCoord.type_parser("3,7") == Coord(column=7, row=3)
    with pytest.raises(argparse.ArgumentTypeError):
        arg_validators.ProbeCoord.type_parser("-1,2")


def test_even_positive_int() -> None:
    assert arg_validators.EvenPositiveInt.type_parser("128") == 128
    for arg in ("0", "7"):
        with pytest.raises(argparse.ArgumentTypeError):
            arg_validators.EvenPositiveInt.type_parser(arg)


@pytest.mark.parametrize(
    ("arg", "mode"),
    [
        ("seq", AssignmentMode.SEQUENTIAL),
        ("Interleaved", AssignmentMode.INTERLEAVED),
        ("inter", AssignmentMode.INTERLEAVED),
    ],
)
def test_assignment_mode(arg: str, mode: AssignmentMode) -> None:
    assert arg_validators.AssignmentModeArg.type_parser(arg) is mode


def test_assignment_mode_rejects() -> None:
    with pytest.raises(argparse.ArgumentTypeError):
        arg_validators.AssignmentModeArg.type_parser("diagonal")


def test_position_scheme() -> None:
    assert arg_validators.PositionSchemeArg.type_parser("flat") is PositionScheme.FLAT
    with pytest.raises(argparse.ArgumentTypeError):
        arg_validators.PositionSchemeArg.type_parser("spiral")
