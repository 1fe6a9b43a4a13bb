import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from pixelruler.utils.attention import AttentionConfig, ruler_peak, score, score_gradient
from pixelruler.utils.errors import InvalidArgumentError
from pixelruler.utils.geometry import Coord
from pixelruler.utils.gradcheck import numeric_gradient, relative_error
from pixelruler.utils.mrope import AssignmentMode, PositionId, assign_axes
from pixelruler.utils.rope import make_spectrum
from pixelruler.utils.ruler import build_grid, build_ruler_tokens


@pytest.fixture
def cfg() -> AttentionConfig:
    spec = make_spectrum(32)
    return AttentionConfig(spec, assign_axes(spec.half_dim, 2, AssignmentMode.INTERLEAVED))


@pytest.fixture
def grid():
    return build_grid(16 * 28, 16 * 28, 28)


def test_default_scale(cfg: AttentionConfig) -> None:
    assert cfg.scale == pytest.approx(1 / math.sqrt(32))


def test_config_rejects_mismatch() -> None:
    with pytest.raises(InvalidArgumentError, match="half_dim"):
        AttentionConfig(make_spectrum(8), assign_axes(6, 2, AssignmentMode.INTERLEAVED))


def test_config_rejects_non_positive_scale() -> None:
    spec = make_spectrum(8)
    with pytest.raises(InvalidArgumentError):
        AttentionConfig(spec, assign_axes(4, 2, AssignmentMode.INTERLEAVED), scale=0.0)


def test_same_position_scores_squared_norm(cfg: AttentionConfig) -> None:
    q = np.random.default_rng(1).standard_normal(32)
    pos = PositionId((4, 9))
    assert score(q, q, pos, pos, cfg) == pytest.approx(cfg.scale * np.dot(q, q), rel=1e-12)


def test_single_pair_offset() -> None:
    spec = make_spectrum(2)
    cfg = AttentionConfig(spec, assign_axes(1, 2, AssignmentMode.INTERLEAVED))
    value = score([1.0, 0.0], [1.0, 0.0], PositionId((0, 0)), PositionId((3, 0)), cfg)
    assert value == pytest.approx(cfg.scale * math.cos(3), abs=1e-15)


def test_score_is_shift_invariant(cfg: AttentionConfig) -> None:
    rng = np.random.default_rng(2)
    q, k = rng.standard_normal(32), rng.standard_normal(32)
    pos_q, pos_k = PositionId((3, 11)), PositionId((-4, 7))
    before = score(q, k, pos_q, pos_k, cfg)
    after = score(q, k, PositionId((103, -89)), PositionId((96, -93)), cfg)
    assert after == pytest.approx(before, abs=1e-9)


def test_score_gradient_matches_finite_differences(cfg: AttentionConfig) -> None:
    rng = np.random.default_rng(3)
    q, k = rng.standard_normal(32), rng.standard_normal(32)
    pos_q, pos_k = PositionId((5, 2)), PositionId((1, 8))
    grad_q, grad_k = score_gradient(q, k, pos_q, pos_k, cfg)
    numeric_q = numeric_gradient(lambda x: score(x, k, pos_q, pos_k, cfg), q)
    numeric_k = numeric_gradient(lambda x: score(q, x, pos_q, pos_k, cfg), k)
    assert relative_error(grad_q, numeric_q) < 1e-6
    assert relative_error(grad_k, numeric_k) < 1e-6


def test_score_rejects_dimension_mismatch(cfg: AttentionConfig) -> None:
    with pytest.raises(InvalidArgumentError):
        score(np.ones(16), np.ones(32), PositionId((0, 0)), PositionId((0, 0)), cfg)


def test_peak_nearest_ruler(cfg: AttentionConfig, grid) -> None:
    peak = ruler_peak(grid, build_ruler_tokens(grid, 4), Coord(9, 9), cfg, np.ones(32))
    assert peak.winner == 8
    assert not peak.tie


def test_peak_exact_match(cfg: AttentionConfig, grid) -> None:
    peak = ruler_peak(grid, build_ruler_tokens(grid, 4), Coord(12, 12), cfg, np.ones(32))
    assert peak.winner == 12
    assert peak.score == pytest.approx(cfg.scale * 32, rel=1e-12)


def test_peak_symmetric_tie(cfg: AttentionConfig, grid) -> None:
    peak = ruler_peak(grid, build_ruler_tokens(grid, 4), Coord(10, 10), cfg, np.ones(32))
    assert peak.tie
    assert peak.tied_indices == (8, 12)
    assert peak.winner == 8


def test_peak_scores_every_ruler(cfg: AttentionConfig, grid) -> None:
    rulers = build_ruler_tokens(grid, 8)
    peak = ruler_peak(grid, rulers, Coord(0, 0), cfg, np.ones(32))
    assert [index for index, _ in peak.scores] == list(rulers.indices)


def test_peak_rejects_probe_outside_grid(cfg: AttentionConfig, grid) -> None:
    with pytest.raises(InvalidArgumentError, match="outside"):
        ruler_peak(grid, build_ruler_tokens(grid, 4), Coord(16, 0), cfg, np.ones(32))


def test_peak_rejects_zero_pair(cfg: AttentionConfig, grid) -> None:
    vector = np.ones(32)
    vector[4:6] = 0.0
    with pytest.raises(InvalidArgumentError, match="zero-norm"):
        ruler_peak(grid, build_ruler_tokens(grid, 4), Coord(1, 1), cfg, vector)
