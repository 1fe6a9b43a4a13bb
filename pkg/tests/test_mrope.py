import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from pixelruler.utils.errors import InvalidArgumentError
from pixelruler.utils.mrope import (
    AssignmentMode,
    PositionId,
    apply_mrope,
    assign_axes,
    axis_frequency_profile,
    default_sections,
)
from pixelruler.utils.rope import apply_rotation, make_spectrum


def test_sequential_three_axes() -> None:
    assign = assign_axes(6, 3, AssignmentMode.SEQUENTIAL)
    assert assign.labels() == ["t", "t", "h", "h", "w", "w"]
    assert assign.section_sizes == (2, 2, 2)


def test_interleaved_three_axes() -> None:
    assert assign_axes(6, 3, AssignmentMode.INTERLEAVED).labels() == ["w", "h", "t", "w", "h", "t"]


def test_interleaved_two_axes() -> None:
    assert assign_axes(4, 2, AssignmentMode.INTERLEAVED).labels() == ["h", "w", "h", "w"]


def test_default_sections_remainder_goes_to_earliest_axes() -> None:
    assert default_sections(8, 3) == (3, 3, 2)
    assert default_sections(7, 2) == (4, 3)


def test_custom_sections() -> None:
    assign = assign_axes(8, 3, AssignmentMode.SEQUENTIAL, (2, 3, 3))
    assert assign.labels() == ["t", "t", "h", "h", "h", "w", "w", "w"]


def test_sections_must_sum_to_half_dim() -> None:
    with pytest.raises(InvalidArgumentError, match="do not sum"):
        assign_axes(8, 3, AssignmentMode.SEQUENTIAL, (2, 2, 2))


def test_sections_rejected_with_interleaved() -> None:
    with pytest.raises(InvalidArgumentError, match="interleaved"):
        assign_axes(6, 3, AssignmentMode.INTERLEAVED, (2, 2, 2))


def test_assignment_rejects_axis_count() -> None:
    with pytest.raises(InvalidArgumentError):
        assign_axes(6, 4, AssignmentMode.INTERLEAVED)


def test_position_from_dict() -> None:
    assert PositionId.from_dict({"t": 0, "h": 3, "w": 4}).axes == (0, 3, 4)
    assert PositionId.from_dict({"w": 4, "h": 3}).axes == (3, 4)
    with pytest.raises(InvalidArgumentError):
        PositionId.from_dict({"x": 1, "y": 2})


def test_position_str_and_shift() -> None:
    pos = PositionId((2, 5))
    assert str(pos) == "(2,5)"
    assert pos.shifted(3) == PositionId((5, 8))
    assert (pos - PositionId((1, 1))).axes == (1, 4)
    assert pos.get("w") == 5


def test_mrope_hand_evaluated() -> None:
    spec = make_spectrum(4, 100)
    assert_allclose(spec.thetas, [1.0, 0.1])
    assign = assign_axes(2, 2, AssignmentMode.INTERLEAVED)
    out = apply_mrope([1.0, 0.0, 1.0, 0.0], PositionId((2, 0)), assign, spec)
    assert_allclose(out, [math.cos(2), math.sin(2), 1.0, 0.0], atol=1e-15)


def test_mrope_at_origin_is_identity() -> None:
    spec = make_spectrum(12)
    v = np.random.default_rng(3).standard_normal(12)
    out = apply_mrope(v, PositionId((0, 0, 0)), assign_axes(6, 3, AssignmentMode.SEQUENTIAL), spec)
    assert_array_equal(out, v)


@given(
    m=st.integers(min_value=-10_000, max_value=10_000),
    half_dim=st.integers(min_value=3, max_value=64),
    axis_count=st.sampled_from([2, 3]),
    mode=st.sampled_from(list(AssignmentMode)),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_text_tokens_reduce_to_rope_exactly(
    m: int, half_dim: int, axis_count: int, mode: AssignmentMode, seed: int
) -> None:
    spec = make_spectrum(2 * half_dim)
    v = np.random.default_rng(seed).standard_normal(2 * half_dim)
    out = apply_mrope(v, PositionId.uniform(m, axis_count), assign_axes(half_dim, axis_count, mode), spec)
    assert_array_equal(out, apply_rotation(v, m, spec))


def test_mrope_rejects_axis_mismatch() -> None:
    spec = make_spectrum(12)
    with pytest.raises(InvalidArgumentError, match="axes"):
        apply_mrope(np.ones(12), PositionId((1, 2)), assign_axes(6, 3, AssignmentMode.INTERLEAVED), spec)


def test_mrope_rejects_half_dim_mismatch() -> None:
    with pytest.raises(InvalidArgumentError, match="half_dim"):
        apply_mrope(np.ones(8), PositionId((1, 2)), assign_axes(6, 2, AssignmentMode.INTERLEAVED), make_spectrum(8))


def test_profile_interleaved() -> None:
    profiles = {p.axis: p for p in axis_frequency_profile(
        assign_axes(6, 3, AssignmentMode.INTERLEAVED), make_spectrum(12)
    )}
    assert [p.count for p in profiles.values()] == [2, 2, 2]
    assert profiles["w"].min_index == 0
    assert profiles["t"].max_index == 5
    assert profiles["w"].max_theta == 1.0


def test_profile_sequential() -> None:
    profiles = {p.axis: p for p in axis_frequency_profile(
        assign_axes(6, 3, AssignmentMode.SEQUENTIAL), make_spectrum(12)
    )}
    assert profiles["t"].max_index == 1
    assert profiles["w"].min_index == 4


def test_profile_one_index_per_axis() -> None:
    profiles = axis_frequency_profile(assign_axes(3, 3, AssignmentMode.INTERLEAVED), make_spectrum(6))
    assert all(p.count == 1 for p in profiles)


def test_profile_empty_axis() -> None:
    profiles = axis_frequency_profile(assign_axes(4, 3, AssignmentMode.SEQUENTIAL, (0, 2, 2)), make_spectrum(8))
    assert profiles[0].count == 0
    assert profiles[0].min_theta is None


@pytest.mark.parametrize("axis_count", [2, 3])
@pytest.mark.parametrize("half_dim", [4, 7, 16, 64, 128])
def test_interleaved_axes_span_the_spectrum(half_dim: int, axis_count: int) -> None:
    assign = assign_axes(half_dim, axis_count, AssignmentMode.INTERLEAVED)
    counts = [assign.indices_for(axis).size for axis in range(axis_count)]
    assert max(counts) - min(counts) <= 1
    for axis in range(axis_count):
        indices = assign.indices_for(axis)
        assert indices.min() < axis_count
        assert indices.max() >= half_dim - axis_count


@pytest.mark.parametrize("axis_count", [2, 3])
def test_sequential_axes_miss_part_of_the_spectrum(axis_count: int) -> None:
    half_dim = 64
    assign = assign_axes(half_dim, axis_count, AssignmentMode.SEQUENTIAL)
    assert any(
        assign.indices_for(axis).min() >= axis_count or assign.indices_for(axis).max() < half_dim - axis_count
        for axis in range(axis_count)
    )
