"""
RULER coordinate tokens.

A ruler token r_i sits at grid index i (a multiple of the interval s), shares the position ID t0 + i with the
patch row/column i of its image and carries the pixel coordinate i * p as its face value. With an interval s
the model never has to add more than the arithmetic bound s * p pixels to a retrieved reference coordinate.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import NamedTuple

from pixelruler.utils.errors import InvalidArgumentError, InvalidInputError
from pixelruler.utils.geometry import ImageGrid
from pixelruler.utils.mrope import PositionId

logger = logging.getLogger(__name__)

DEFAULT_INTERVAL = 8
DEFAULT_PATCH_PX = 28


def build_grid(width_px: int, height_px: int, patch_px: int, t0: int = 0) -> ImageGrid:
    """Tokenizes image geometry into a patch grid, W = ceil(width / p), H = ceil(height / p).

    Raises:
        InvalidArgumentError: a size is zero or negative, or t0 < 0.
    """
    return ImageGrid(width_px=width_px, height_px=height_px, patch_px=patch_px, t0=t0)


@dataclass(frozen=True)
class RulerToken:
    """One ruler token.

    Args:
        grid_index (int): patch row/column index i
        position (PositionId): every axis equal to t0 + i
        face_value (str): decimal pixel coordinate i * p
    """

    grid_index: int
    position: PositionId
    face_value: str

    @property
    def pixel(self) -> int:
        return int(self.face_value)


class RulerReference(NamedTuple):
    """A pixel coordinate split into a ruler reference and the adjustment added to it."""

    token: RulerToken
    adjustment: float


@dataclass(frozen=True)
class RulerTokenSet:
    """Ordered ruler tokens for one image.

    Args:
        interval (int): stride s between ruler tokens, in patches
        patch_px (int): pixels per patch side
        tokens (tuple[RulerToken, ...]): tokens ordered by grid index
    """

    interval: int
    patch_px: int
    tokens: tuple[RulerToken, ...]

    @property
    def arithmetic_bound(self) -> int:
        """s * p, the largest adjustment a coordinate needs on top of its nearest reference."""
        return self.interval * self.patch_px

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(token.grid_index for token in self.tokens)

    @property
    def face_values(self) -> tuple[str, ...]:
        return tuple(token.face_value for token in self.tokens)

    @property
    def covered_extent_px(self) -> int:
        """Pixels [0, extent) have a reference within the arithmetic bound."""
        return (self.tokens[-1].grid_index + self.interval) * self.patch_px

    def __len__(self) -> int:
        return len(self.tokens)

    def decompose(self, x_px: float) -> RulerReference:
        """Splits a pixel coordinate into the nearest ruler face value at or below it plus an adjustment.

        Args:
            x_px (float): pixel coordinate, >= 0

        Raises:
            InvalidArgumentError: x_px is negative.

        Returns:
            RulerReference: reference token and adjustment x_px - face value
        """
        if x_px < 0:
            raise InvalidArgumentError(f"pixel coordinate must be >= 0, got {x_px}")
        slot = min(int(x_px // self.arithmetic_bound), len(self.tokens) - 1)
        token = self.tokens[slot]
        return RulerReference(token, x_px - token.pixel)


def build_ruler_tokens(grid: ImageGrid, interval: int, axis_count: int = 2) -> RulerTokenSet:
    """Builds the ruler tokens for indices {0, s, 2s, ..., floor(max(H, W) / s) * s}.

    The last index equals max(H, W) when it is divisible by s; that token marks the far edge of the image
    and is kept.

    Args:
        grid (ImageGrid): image patch grid
        interval (int): stride s >= 1
        axis_count (int, optional): axes of the position IDs. Defaults to 2.

    Raises:
        InvalidArgumentError: interval < 1.

    Returns:
        RulerTokenSet: the tokens and their arithmetic bound
    """
    if interval < 1:
        raise InvalidArgumentError(f"ruler interval must be >= 1, got {interval}")
    last = (grid.max_side // interval) * interval
    tokens = tuple(
        RulerToken(
            grid_index=index,
            position=PositionId.uniform(grid.t0 + index, axis_count),
            face_value=str(index * grid.patch_px),
        )
        for index in range(0, last + 1, interval)
    )
    if len(tokens) < 2:
        logger.info("single ruler token for a %dx%d patch grid at interval %d", grid.columns, grid.rows, interval)
    return RulerTokenSet(interval=interval, patch_px=grid.patch_px, tokens=tokens)


class TokenOverhead(NamedTuple):
    """Ruler token cost for one image."""

    vision_count: int
    ruler_count: int
    ratio: float

    @property
    def total_ratio(self) -> float:
        """Share of ruler tokens in the whole image block (vision + ruler)."""
        return self.ruler_count / (self.vision_count + self.ruler_count)

    @property
    def sparse(self) -> bool:
        """A single ruler token covers the image."""
        return self.ruler_count < 2


def overhead(width_px: int, height_px: int, patch_px: int, interval: int) -> TokenOverhead:
    """Counts vision and ruler tokens for an image.

    Returns:
        TokenOverhead: vision_count = H * W, ruler_count = floor(max(H, W) / s) + 1, ratio = ruler / vision
    """
    if interval < 1:
        raise InvalidArgumentError(f"ruler interval must be >= 1, got {interval}")
    grid = build_grid(width_px, height_px, patch_px)
    vision_count = grid.patch_count
    ruler_count = grid.max_side // interval + 1
    return TokenOverhead(vision_count, ruler_count, ruler_count / vision_count)


@dataclass(frozen=True)
class Resolution:
    name: str
    width: int
    height: int

    @property
    def min_side(self) -> int:
        return min(self.width, self.height)


def parse_resolutions(text: str, source: str = "<resolutions>") -> list[Resolution]:
    """Parses a line-oriented `name,width,height` list. Blank lines, `#` comments and a header line are skipped.

    Raises:
        InvalidInputError: a line is malformed.
    """
    resolutions = []
    for line_number, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        cells = [cell.strip() for cell in row]
        if line_number == 1 and cells == ["name", "width", "height"]:
            continue
        try:
            name, width, height = cells
            resolution = Resolution(name, int(width), int(height))
        except ValueError:
            raise InvalidInputError(f"{source}:{line_number}: expected name,width,height", (",".join(row),))
        if resolution.width <= 0 or resolution.height <= 0:
            raise InvalidInputError(f"{source}:{line_number}: width and height must be positive", (name,))
        resolutions.append(resolution)
    return resolutions


def load_resolutions(path: Path | None = None) -> list[Resolution]:
    """Loads a resolution list from a file, or the bundled list when path is None."""
    if path is None:
        text = resources.files("pixelruler.data").joinpath("resolutions.csv").read_text(encoding="utf-8")
        return parse_resolutions(text, "resolutions.csv")
    return parse_resolutions(Path(path).read_text(encoding="utf-8"), str(path))
