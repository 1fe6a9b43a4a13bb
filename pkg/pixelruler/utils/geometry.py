"""
Geometric value objects shared by the ruler, attention and evaluation modules.

Classes:
- Coord: a patch cell (column, row) inside an image grid.
- Point: a pixel location with real coordinates.
- BBox: an axis-aligned pixel bounding box with inclusive boundaries.
- ImageGrid: the patch grid an image is tokenized into.
"""

from collections.abc import Iterator
from dataclasses import dataclass

from pixelruler.utils.errors import InvalidArgumentError


@dataclass(eq=True, frozen=True)
class Coord:
    """A patch cell with column and row values, both 0-based.

    Args:
        column (int): column value
        row (int): row value"""

    column: int
    row: int


@dataclass(eq=True, frozen=True)
class Point:
    """A pixel location in raw (non-normalized) pixel units."""

    x: float
    y: float


@dataclass(frozen=True)
class BBox:
    """Axis-aligned bounding box in pixels.

    Args:
        x_min (float): left edge
        y_min (float): top edge
        x_max (float): right edge
        y_max (float): bottom edge

    Raises:
        InvalidArgumentError: an edge is negative or the box is inverted.
    """

    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def __post_init__(self) -> None:
        if min(self.x_min, self.y_min, self.x_max, self.y_max) < 0:
            raise InvalidArgumentError(f"bounding box edges must be >= 0: {self}")
        if self.x_min > self.x_max or self.y_min > self.y_max:
            raise InvalidArgumentError(f"bounding box is inverted: {self}")

    def contains(self, point: Point) -> bool:
        """Checks whether the point lies inside the box. Boundaries are inclusive.

        Args:
            point (Point): point to check

        Returns:
            bool: whether the point is inside the box
        """
        return self.x_min <= point.x <= self.x_max and self.y_min <= point.y <= self.y_max

    def fits_within(self, width_px: float, height_px: float) -> bool:
        return self.x_max <= width_px and self.y_max <= height_px


@dataclass(frozen=True)
class ImageGrid:
    """Patch grid of one image. Partial patches at the right/bottom edge are padded, so every pixel is covered.

    Args:
        width_px (int): image width in pixels
        height_px (int): image height in pixels
        patch_px (int): pixels per patch side
        t0 (int): initial spatial position ID of the image patches. Defaults to 0.
    """

    width_px: int
    height_px: int
    patch_px: int
    t0: int = 0

    def __post_init__(self) -> None:
        if self.width_px <= 0 or self.height_px <= 0:
            raise InvalidArgumentError(f"image size must be positive, got {self.width_px}x{self.height_px}")
        if self.patch_px <= 0:
            raise InvalidArgumentError(f"patch size must be positive, got {self.patch_px}")
        if self.t0 < 0:
            raise InvalidArgumentError(f"t0 must be >= 0, got {self.t0}")

    @property
    def columns(self) -> int:
        """W, the number of patches along the width."""
        return -(-self.width_px // self.patch_px)

    @property
    def rows(self) -> int:
        """H, the number of patches along the height."""
        return -(-self.height_px // self.patch_px)

    @property
    def max_side(self) -> int:
        return max(self.rows, self.columns)

    @property
    def patch_count(self) -> int:
        return self.rows * self.columns

    def contains(self, coord: Coord) -> bool:
        return 0 <= coord.row < self.rows and 0 <= coord.column < self.columns

    def coords(self) -> Iterator[Coord]:
        """Yields every patch cell in row-major order (the vision token emission order)."""
        for row in range(self.rows):
            for column in range(self.columns):
                yield Coord(column, row)

    def patch_origin(self, coord: Coord) -> Point:
        """Returns the pixel coordinate of the top-left corner of a patch."""
        return Point(coord.column * self.patch_px, coord.row * self.patch_px)
