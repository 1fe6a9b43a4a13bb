"""
Multi-axis rotary embeddings.

Frequency indices are assigned to the temporal/height/width axes either in consecutive chunks (sequential,
classic MRoPE) or cyclically (interleaved, I-MRoPE). Positions are (t, h, w) for three axes and (h, w) for two.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, auto

import numpy as np
import numpy.typing as npt

from pixelruler.utils.errors import InvalidArgumentError
from pixelruler.utils.rope import FrequencySpectrum, HeadVector, as_head_vector, rotate_pairs

AXIS_NAMES: dict[int, tuple[str, ...]] = {3: ("t", "h", "w"), 2: ("h", "w")}

# axis owning residue class j mod axis_count: 3 axes -> (w, h, t), 2 axes -> (h, w)
INTERLEAVE_ORDER: dict[int, tuple[int, ...]] = {3: (2, 1, 0), 2: (0, 1)}


def _check_axis_count(axis_count: int) -> None:
    if axis_count not in AXIS_NAMES:
        raise InvalidArgumentError(f"axis_count must be 2 or 3, got {axis_count}")


@dataclass(frozen=True)
class PositionId:
    """Multi-axis integer position of a token.

    Args:
        axes (tuple[int, ...]): (t, h, w) or (h, w)
    """

    axes: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_axis_count(len(self.axes))
        object.__setattr__(self, "axes", tuple(int(axis) for axis in self.axes))

    @classmethod
    def uniform(cls, m: int, axis_count: int) -> PositionId:
        """Position with every axis equal to m (text-token convention)."""
        _check_axis_count(axis_count)
        return cls((m,) * axis_count)

    @classmethod
    def from_dict(cls, named: dict[str, int]) -> PositionId:
        """Builds a position from named fields, e.g. {"t": 0, "h": 3, "w": 4} or {"h": 3, "w": 4}."""
        for axis_count in (3, 2):
            names = AXIS_NAMES[axis_count]
            if set(named) == set(names):
                return cls(tuple(named[name] for name in names))
        raise InvalidArgumentError(f"position fields must be (t, h, w) or (h, w), got {sorted(named)}")

    @property
    def axis_count(self) -> int:
        return len(self.axes)

    @property
    def axis_names(self) -> tuple[str, ...]:
        return AXIS_NAMES[self.axis_count]

    def get(self, name: str) -> int:
        return self.axes[self.axis_names.index(name)]

    def to_dict(self) -> dict[str, int]:
        return dict(zip(self.axis_names, self.axes))

    def __sub__(self, other: PositionId) -> PositionId:
        if other.axis_count != self.axis_count:
            raise InvalidArgumentError("cannot subtract positions with different axis counts")
        return PositionId(tuple(a - b for a, b in zip(self.axes, other.axes)))

    def shifted(self, offset: int) -> PositionId:
        return PositionId(tuple(axis + offset for axis in self.axes))

    def __str__(self) -> str:
        return "(" + ",".join(str(axis) for axis in self.axes) + ")"


class AssignmentMode(Enum):
    """How frequency indices are distributed over the axes."""

    SEQUENTIAL = auto()
    INTERLEAVED = auto()


@dataclass(frozen=True, eq=False)
class AxisAssignment:
    """Map from frequency index j to the axis that drives its rotation.

    Args:
        axis_count (int): 2 or 3
        half_dim (int): number of frequency pairs, head_dim / 2
        mode (AssignmentMode): sequential or interleaved
        mapping (npt.NDArray[np.intp]): read-only, mapping[j] = axis index owning frequency j
        section_sizes (tuple[int, ...] | None): per-axis chunk lengths in sequential mode
    """

    axis_count: int
    half_dim: int
    mode: AssignmentMode
    mapping: npt.NDArray[np.intp]
    section_sizes: tuple[int, ...] | None = None

    @property
    def axis_names(self) -> tuple[str, ...]:
        return AXIS_NAMES[self.axis_count]

    def labels(self) -> list[str]:
        """Returns the mapping as axis names, e.g. ['w', 'h', 't', 'w', 'h', 't']."""
        return [self.axis_names[axis] for axis in self.mapping]

    def indices_for(self, axis: int) -> npt.NDArray[np.intp]:
        return np.flatnonzero(self.mapping == axis)

    def __repr__(self) -> str:
        return f"AxisAssignment({self.mode.name.lower()}, {''.join(self.labels())})"


def default_sections(half_dim: int, axis_count: int) -> tuple[int, ...]:
    """Near-equal split of half_dim over the axes, remainder to the earliest axes."""
    size, remainder = divmod(half_dim, axis_count)
    return tuple(size + (1 if axis < remainder else 0) for axis in range(axis_count))


def assign_axes(
    half_dim: int,
    axis_count: int,
    mode: AssignmentMode,
    section_sizes: tuple[int, ...] | None = None,
) -> AxisAssignment:
    """Builds the frequency-to-axis assignment.

    Sequential mode gives the first axis (t, or h for two axes) the lowest indices, i.e. the highest
    frequencies. Interleaved mode cycles j mod axis_count through (w, h, t) for three axes and (h, w) for two.

    Args:
        half_dim (int): number of frequency pairs, > 0
        axis_count (int): 2 or 3
        mode (AssignmentMode): sequential or interleaved
        section_sizes (tuple[int, ...] | None, optional): per-axis chunk lengths, sequential only.
            Defaults to a near-equal split.

    Raises:
        InvalidArgumentError: section sizes do not sum to half_dim, or are given in interleaved mode.

    Returns:
        AxisAssignment: the assignment
    """
    if half_dim < 1:
        raise InvalidArgumentError(f"half_dim must be > 0, got {half_dim}")
    _check_axis_count(axis_count)
    if mode is AssignmentMode.INTERLEAVED:
        if section_sizes is not None:
            raise InvalidArgumentError("section_sizes cannot be combined with interleaved mode")
        order = INTERLEAVE_ORDER[axis_count]
        mapping = np.array([order[j % axis_count] for j in range(half_dim)], dtype=np.intp)
        sections = None
    else:
        sections = default_sections(half_dim, axis_count) if section_sizes is None else tuple(section_sizes)
        if len(sections) != axis_count:
            raise InvalidArgumentError(f"expected {axis_count} section sizes, got {len(sections)}")
        if any(size < 0 for size in sections):
            raise InvalidArgumentError(f"section sizes must be >= 0, got {sections}")
        if sum(sections) != half_dim:
            raise InvalidArgumentError(f"section sizes {sections} do not sum to half_dim {half_dim}")
        mapping = np.repeat(np.arange(axis_count, dtype=np.intp), sections)
    mapping.flags.writeable = False
    return AxisAssignment(
        axis_count=axis_count, half_dim=half_dim, mode=mode, mapping=mapping, section_sizes=sections
    )


def _check_compatible(assign: AxisAssignment, spec: FrequencySpectrum) -> None:
    if spec.half_dim != assign.half_dim:
        raise InvalidArgumentError(
            f"spectrum half_dim {spec.half_dim} does not match assignment half_dim {assign.half_dim}"
        )


def _pair_positions(pos: PositionId, assign: AxisAssignment) -> npt.NDArray[np.float64]:
    if pos.axis_count != assign.axis_count:
        raise InvalidArgumentError(
            f"position {pos} has {pos.axis_count} axes, assignment expects {assign.axis_count}"
        )
    return np.asarray(pos.axes, dtype=np.float64)[assign.mapping]


def apply_mrope(v, pos: PositionId, assign: AxisAssignment, spec: FrequencySpectrum) -> HeadVector:
    """Rotates pair j of v by pos[assign.mapping[j]] * thetas[j].

    With every axis of pos equal to m the result is bit-identical to apply_rotation(v, m, spec).

    Raises:
        InvalidArgumentError: any dimension or axis mismatch.
    """
    _check_compatible(assign, spec)
    vector = as_head_vector(v, spec)
    return rotate_pairs(vector, _pair_positions(pos, assign), spec)


def mrope_gradient(upstream, pos: PositionId, assign: AxisAssignment, spec: FrequencySpectrum) -> HeadVector:
    """Gradient of apply_mrope(v, pos) with respect to v: the rotation at the negated position."""
    return apply_mrope(upstream, PositionId(tuple(-axis for axis in pos.axes)), assign, spec)


@dataclass(frozen=True)
class AxisProfile:
    """Frequencies owned by one axis. Statistics are None when the axis owns no index."""

    axis: str
    count: int
    min_theta: float | None
    max_theta: float | None
    min_index: int | None
    max_index: int | None


def axis_frequency_profile(assign: AxisAssignment, spec: FrequencySpectrum) -> tuple[AxisProfile, ...]:
    """Summarizes, per axis, which frequency indices and which frequency range it owns.

    Raises:
        InvalidArgumentError: the spectrum and assignment disagree on half_dim.
    """
    _check_compatible(assign, spec)
    profiles = []
    for axis, name in enumerate(assign.axis_names):
        indices = assign.indices_for(axis)
        if indices.size == 0:
            profiles.append(AxisProfile(name, 0, None, None, None, None))
            continue
        owned = spec.thetas[indices]
        profiles.append(
            AxisProfile(
                axis=name,
                count=int(indices.size),
                min_theta=float(owned.min()),
                max_theta=float(owned.max()),
                min_index=int(indices.min()),
                max_index=int(indices.max()),
            )
        )
    return tuple(profiles)
