from pathlib import Path

import pytest

from pixelruler.utils.errors import InvalidArgumentError, InvalidInputError
from pixelruler.utils.mrope import PositionId
from pixelruler.utils.ruler import (
    build_grid,
    build_ruler_tokens,
    load_resolutions,
    overhead,
    parse_resolutions,
)


def test_grid_full_hd() -> None:
    grid = build_grid(1920, 1080, 28, t0=10)
    assert (grid.columns, grid.rows) == (69, 39)
    assert grid.t0 == 10


def test_grid_single_patch() -> None:
    grid = build_grid(28, 28, 28)
    assert (grid.columns, grid.rows) == (1, 1)


def test_grid_pads_partial_patch() -> None:
    grid = build_grid(29, 28, 28)
    assert (grid.columns, grid.rows) == (2, 1)


@pytest.mark.parametrize("size", [(0, 10, 28), (10, -1, 28), (10, 10, 0)])
def test_grid_rejects_non_positive_sizes(size: tuple[int, int, int]) -> None:
    with pytest.raises(InvalidArgumentError):
        build_grid(*size)


def test_grid_coords_row_major() -> None:
    coords = list(build_grid(56, 56, 28).coords())
    assert [(c.row, c.column) for c in coords] == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_ruler_tokens_interval_8() -> None:
    grid = build_grid(13 * 28, 5 * 28, 28)
    rulers = build_ruler_tokens(grid, 8)
    assert rulers.indices == (0, 8)
    assert rulers.face_values == ("0", "224")
    assert rulers.arithmetic_bound == 224


def test_ruler_tokens_keep_far_edge() -> None:
    rulers = build_ruler_tokens(build_grid(16 * 28, 28, 28), 8)
    assert rulers.indices == (0, 8, 16)


def test_ruler_tokens_interval_1() -> None:
    grid = build_grid(7 * 28, 11 * 28, 28)
    assert len(build_ruler_tokens(grid, 1)) == 12


def test_ruler_tokens_share_patch_positions() -> None:
    rulers = build_ruler_tokens(build_grid(560, 560, 28, t0=5), 4, axis_count=3)
    assert [token.position for token in rulers.tokens] == [PositionId.uniform(5 + i, 3) for i in (0, 4, 8, 12, 16, 20)]
    assert rulers.tokens[2].pixel == 224


def test_ruler_tokens_reject_interval() -> None:
    with pytest.raises(InvalidArgumentError):
        build_ruler_tokens(build_grid(100, 100, 28), 0)


def test_decompose() -> None:
    rulers = build_ruler_tokens(build_grid(1920, 1080, 28), 8)
    reference = rulers.decompose(523)
    assert reference.token.face_value == "448"
    assert reference.adjustment == 75
    assert 0 <= reference.adjustment < rulers.arithmetic_bound


def test_decompose_past_last_ruler() -> None:
    rulers = build_ruler_tokens(build_grid(13 * 28, 28, 28), 8)
    reference = rulers.decompose(13 * 28 - 1)
    assert reference.token.grid_index == 8
    assert reference.adjustment == 13 * 28 - 1 - 224


def test_decompose_rejects_negative() -> None:
    with pytest.raises(InvalidArgumentError):
        build_ruler_tokens(build_grid(100, 100, 28), 2).decompose(-1)


def test_overhead_full_hd() -> None:
    result = overhead(1920, 1080, 28, 8)
    assert result.vision_count == 2691
    assert result.ruler_count == 9
    assert result.ratio == pytest.approx(0.003344, abs=1e-6)
    assert not result.sparse


def test_overhead_8k() -> None:
    result = overhead(7680, 4320, 28, 8)
    assert (result.vision_count, result.ruler_count) == (42625, 35)
    assert result.ratio == pytest.approx(0.00082, abs=1e-5)
    assert result.ratio < 0.01


def test_overhead_single_patch() -> None:
    result = overhead(28, 28, 28, 8)
    assert (result.vision_count, result.ruler_count, result.ratio) == (1, 1, 1.0)
    assert result.sparse
    assert result.total_ratio == 0.5


def test_parse_resolutions() -> None:
    text = "name,width,height\n# phones\nphone,1080,2400\n\n fhd , 1920 , 1080\n"
    resolutions = parse_resolutions(text)
    assert [(r.name, r.width, r.height) for r in resolutions] == [("phone", 1080, 2400), ("fhd", 1920, 1080)]
    assert resolutions[0].min_side == 1080


@pytest.mark.parametrize("text", ["fhd,1920\n", "fhd,wide,1080\n", "fhd,0,1080\n"])
def test_parse_resolutions_rejects_malformed(text: str) -> None:
    with pytest.raises(InvalidInputError):
        parse_resolutions(text)


def test_load_bundled_resolutions() -> None:
    names = [r.name for r in load_resolutions()]
    assert "fhd" in names
    assert "8k-uhd" in names


def test_load_resolutions_from_file(tmp_path: Path) -> None:
    path = tmp_path / "res.csv"
    path.write_text("wide,3440,1440\n", encoding="utf-8")
    assert [r.width for r in load_resolutions(path)] == [3440]


def test_bundled_large_screens_stay_under_one_percent() -> None:
    for resolution in load_resolutions():
        if resolution.min_side >= 720:
            assert overhead(resolution.width, resolution.height, 28, 8).ratio < 0.01, resolution.name
