"""Multimodal input sequences: system tokens, a ruler block before each image, the image patches, and the prompt."""

from __future__ import annotations

import dataclasses
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from enum import Enum, auto

from pixelruler.utils.errors import InvalidArgumentError
from pixelruler.utils.geometry import Coord, ImageGrid
from pixelruler.utils.mrope import PositionId
from pixelruler.utils.ruler import RulerTokenSet, build_ruler_tokens


class Segment(Enum):
    """Segment a token belongs to."""

    SYSTEM = auto()
    RULER = auto()
    VISION = auto()
    PROMPT = auto()

    @property
    def tag(self) -> str:
        return self.name.lower()


class PositionScheme(Enum):
    """How position IDs are assigned.

    MULTIMODAL: text tokens count up on all axes, image patches get (t0, t0 + row, t0 + col), ruler tokens
        share t0 + i with patch row/column i.
    FLAT: every token gets its sequence index on all axes (1-D RoPE baseline).
    """

    MULTIMODAL = auto()
    FLAT = auto()


@dataclass(frozen=True)
class SequenceToken:
    """One entry of a multimodal sequence.

    Args:
        seq_index (int): 0-based causal order
        segment (Segment): segment tag
        position (PositionId): multi-axis position ID
        payload (str): text token, ruler face value, or vision patch reference
        image_index (int | None): image the token belongs to, for ruler and vision tokens
        coord (Coord | None): patch cell, for vision tokens
    """

    seq_index: int
    segment: Segment
    position: PositionId
    payload: str
    image_index: int | None = None
    coord: Coord | None = None

    def dump_line(self) -> str:
        """Formats the token as `seq_idx TAB segment TAB pos TAB payload`."""
        payload = self.payload.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")
        return f"{self.seq_index}\t{self.segment.tag}\t{self.position}\t{payload}"

    def to_record(self) -> dict:
        return {
            "seq_index": self.seq_index,
            "segment": self.segment.tag,
            "position": self.position.to_dict(),
            "payload": self.payload,
        }


@dataclass(frozen=True)
class MultimodalSequence:
    """An assembled sequence plus the placed image grids and their ruler sets.

    Args:
        tokens (tuple[SequenceToken, ...]): tokens in emission order
        grids (tuple[ImageGrid, ...]): image grids with their assigned t0
        rulers (tuple[RulerTokenSet, ...]): ruler set per image, empty when no interval is configured
        axis_count (int): axes of every position ID
    """

    tokens: tuple[SequenceToken, ...]
    grids: tuple[ImageGrid, ...]
    rulers: tuple[RulerTokenSet, ...]
    axis_count: int

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[SequenceToken]:
        return iter(self.tokens)

    def segment_tokens(self, segment: Segment, image_index: int | None = None) -> list[SequenceToken]:
        return [
            token
            for token in self.tokens
            if token.segment is segment and (image_index is None or token.image_index == image_index)
        ]

    def dump(self) -> str:
        """Renders the documented tab-separated dump, one token per line."""
        return "".join(token.dump_line() + "\n" for token in self.tokens)


class _SequenceBuilder:
    def __init__(self, axis_count: int, scheme: PositionScheme):
        self.axis_count = axis_count
        self.scheme = scheme
        self.tokens: list[SequenceToken] = []
        self.max_position = -1

    @property
    def next_position(self) -> int:
        return self.max_position + 1

    def emit(
        self,
        segment: Segment,
        position: PositionId,
        payload: str,
        image_index: int | None = None,
        coord: Coord | None = None,
    ) -> None:
        seq_index = len(self.tokens)
        if self.scheme is PositionScheme.FLAT:
            position = PositionId.uniform(seq_index, self.axis_count)
        self.tokens.append(SequenceToken(seq_index, segment, position, payload, image_index, coord))
        self.max_position = max(self.max_position, *position.axes)

    def emit_text(self, segment: Segment, payloads: Sequence[str]) -> None:
        for payload in payloads:
            self.emit(segment, PositionId.uniform(self.next_position, self.axis_count), payload)


def vision_position(grid: ImageGrid, coord: Coord, axis_count: int) -> PositionId:
    """Position ID of a patch: h = t0 + row, w = t0 + column, and t = t0 with three axes."""
    spatial = (grid.t0 + coord.row, grid.t0 + coord.column)
    if axis_count == 3:
        return PositionId((grid.t0, *spatial))
    return PositionId(spatial)


def assemble_sequence(
    system_tokens: Sequence[str],
    images: Sequence[tuple[ImageGrid, int]],
    prompt_tokens: Sequence[str],
    interval: int | None,
    axis_count: int = 2,
    scheme: PositionScheme = PositionScheme.MULTIMODAL,
) -> MultimodalSequence:
    """Assembles [system, (ruler, vision) per image, prompt] with position IDs.

    Each image starts at t0 = (largest position component used so far) + 1, its ruler block precedes its
    vision block, and the prompt resumes after the largest component used. A pure-text sequence is numbered
    exactly like 1-D RoPE.

    Args:
        system_tokens (Sequence[str]): system text tokens
        images (Sequence[tuple[ImageGrid, int]]): grid and vision placeholder count (must equal H * W) per
            image; the grid's own t0 is replaced by the assigned one
        prompt_tokens (Sequence[str]): prompt text tokens
        interval (int | None): ruler interval s, None for no ruler tokens
        axis_count (int, optional): 2 for (h, w), 3 for (t, h, w). Defaults to 2.
        scheme (PositionScheme, optional): position assignment. Defaults to PositionScheme.MULTIMODAL.

    Raises:
        InvalidArgumentError: unsupported axis count, or a vision count that does not match its grid.

    Returns:
        MultimodalSequence: the assembled sequence
    """
    if axis_count not in (2, 3):
        raise InvalidArgumentError(f"axis_count must be 2 or 3, got {axis_count}")
    builder = _SequenceBuilder(axis_count, scheme)
    builder.emit_text(Segment.SYSTEM, system_tokens)

    placed_grids: list[ImageGrid] = []
    ruler_sets: list[RulerTokenSet] = []
    for image_index, (grid, vision_count) in enumerate(images):
        if vision_count != grid.patch_count:
            raise InvalidArgumentError(
                f"image {image_index}: {vision_count} vision tokens for a {grid.columns}x{grid.rows} patch grid"
            )
        placed = dataclasses.replace(grid, t0=builder.next_position)
        placed_grids.append(placed)
        if interval is not None:
            rulers = build_ruler_tokens(placed, interval, axis_count)
            ruler_sets.append(rulers)
            for ruler in rulers.tokens:
                builder.emit(Segment.RULER, ruler.position, ruler.face_value, image_index)
        for coord in placed.coords():
            builder.emit(
                Segment.VISION,
                vision_position(placed, coord, axis_count),
                f"<img{image_index}:{coord.row},{coord.column}>",
                image_index,
                coord,
            )

    builder.emit_text(Segment.PROMPT, prompt_tokens)
    return MultimodalSequence(
        tokens=tuple(builder.tokens),
        grids=tuple(placed_grids),
        rulers=tuple(ruler_sets),
        axis_count=axis_count,
    )
