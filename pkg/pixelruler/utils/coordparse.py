"""
Extraction of a click point from free-form model output.

Grammar (first match wins, surrounding prose ignored, case-insensitive):

    x=<num>, y=<num>
    (<num>, <num>)
    <num>, <num>

where <num> is an optionally signed decimal with an optional exponent.
"""

import logging
import re
from typing import NamedTuple

from pixelruler.utils.errors import CoordinateParseError
from pixelruler.utils.geometry import Point

logger = logging.getLogger(__name__)

_NUM = r"[-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?"

_POINT_PATTERN = re.compile(
    rf"""
    x\s*=\s*(?P<kx>{_NUM})\s*,\s*y\s*=\s*(?P<ky>{_NUM})
    | \(\s*(?P<px>{_NUM})\s*,\s*(?P<py>{_NUM})\s*\)
    | (?<![\w.])(?P<bx>{_NUM})\s*,\s*(?P<by>{_NUM})
    """,
    re.IGNORECASE | re.VERBOSE,
)


class ParsedPoint(NamedTuple):
    """A parsed point. multiple_matches is set when the text held more than one coordinate pair."""

    point: Point
    multiple_matches: bool


def parse_point(text: str) -> ParsedPoint:
    """Extracts the first coordinate pair from text.

    Args:
        text (str): model output, e.g. "x=523, y=217" or "The target is at (100.5, 200)."

    Raises:
        CoordinateParseError: no coordinate pair is present.

    Returns:
        ParsedPoint: the point and whether further pairs were ignored
    """
    matches = list(_POINT_PATTERN.finditer(text))
    if not matches:
        raise CoordinateParseError(text)
    groups = {name: value for name, value in matches[0].groupdict().items() if value is not None}
    prefix = next(key[0] for key in groups)
    point = Point(float(groups[prefix + "x"]), float(groups[prefix + "y"]))
    if len(matches) > 1:
        logger.warning("%d coordinate pairs in %r, using the first", len(matches), text)
    return ParsedPoint(point, len(matches) > 1)


def format_point(point: Point) -> str:
    """Formats a point in the `x=<x>, y=<y>` form parse_point reads back exactly."""
    return f"x={point.x!r}, y={point.y!r}"
