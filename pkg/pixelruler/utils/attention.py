"""
Single-head attention scores under a pluggable multi-axis positional scheme.

Used to check the retrieval geometry ruler tokens rely on: a vision token's query scores highest against the
ruler token whose position ID matches its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from pixelruler.multimodal_sequence import vision_position
from pixelruler.utils.errors import InvalidArgumentError
from pixelruler.utils.geometry import Coord, ImageGrid
from pixelruler.utils.mrope import AxisAssignment, PositionId, apply_mrope, mrope_gradient
from pixelruler.utils.rope import FrequencySpectrum, HeadVector, as_head_vector
from pixelruler.utils.ruler import RulerTokenSet

TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class AttentionConfig:
    """Positional scheme and scaling of the attention head.

    Args:
        spec (FrequencySpectrum): RoPE frequencies
        assign (AxisAssignment): frequency-to-axis assignment
        scale (float | None, optional): score scale, defaults to 1 / sqrt(head_dim)

    Raises:
        InvalidArgumentError: spectrum and assignment disagree on half_dim, or scale <= 0.
    """

    spec: FrequencySpectrum
    assign: AxisAssignment
    scale: float | None = field(default=None)

    def __post_init__(self) -> None:
        if self.spec.half_dim != self.assign.half_dim:
            raise InvalidArgumentError(
                f"spectrum half_dim {self.spec.half_dim} does not match assignment half_dim {self.assign.half_dim}"
            )
        if self.scale is None:
            object.__setattr__(self, "scale", 1.0 / math.sqrt(self.spec.head_dim))
        elif not self.scale > 0:
            raise InvalidArgumentError(f"scale must be > 0, got {self.scale}")

    def rotate(self, v, pos: PositionId) -> HeadVector:
        return apply_mrope(v, pos, self.assign, self.spec)


def score(q, k, pos_q: PositionId, pos_k: PositionId, cfg: AttentionConfig) -> float:
    """scale * <apply_mrope(q, pos_q), apply_mrope(k, pos_k)>.

    Raises:
        InvalidArgumentError: dimensions or axes inconsistent with cfg.
    """
    return float(cfg.scale * np.dot(cfg.rotate(q, pos_q), cfg.rotate(k, pos_k)))


def score_gradient(
    q, k, pos_q: PositionId, pos_k: PositionId, cfg: AttentionConfig
) -> tuple[HeadVector, HeadVector]:
    """Analytic gradients of score with respect to q and k.

    Returns:
        tuple[HeadVector, HeadVector]: (d score / d q, d score / d k)
    """
    rotated_q = cfg.rotate(q, pos_q)
    rotated_k = cfg.rotate(k, pos_k)
    grad_q = cfg.scale * mrope_gradient(rotated_k, pos_q, cfg.assign, cfg.spec)
    grad_k = cfg.scale * mrope_gradient(rotated_q, pos_k, cfg.assign, cfg.spec)
    return grad_q, grad_k


@dataclass(frozen=True)
class RulerPeak:
    """Outcome of a ruler retrieval probe.

    Args:
        winner (int): grid index of the best-scoring ruler token (smallest index among ties)
        score (float): its score
        tie (bool): another ruler token scores within tolerance of the winner
        tied_indices (tuple[int, ...]): every grid index within tolerance of the best score
        scores (tuple[tuple[int, float], ...]): (grid index, score) for every ruler token
    """

    winner: int
    score: float
    tie: bool
    tied_indices: tuple[int, ...]
    scores: tuple[tuple[int, float], ...]


def ruler_peak(
    grid: ImageGrid,
    rulers: RulerTokenSet,
    probe: Coord,
    cfg: AttentionConfig,
    probe_vector,
) -> RulerPeak:
    """Finds the ruler token a vision token attends to most, using the same vector as query and key.

    Args:
        grid (ImageGrid): image grid, its t0 places the vision token
        rulers (RulerTokenSet): ruler tokens of the image
        probe (Coord): patch cell of the querying vision token
        cfg (AttentionConfig): positional scheme
        probe_vector (HeadVector): query/key vector, every pair norm > 0

    Raises:
        InvalidArgumentError: probe outside the grid, a zero pair in probe_vector, or an empty ruler set.

    Returns:
        RulerPeak: winner, score, tie flag and the full score table
    """
    if not grid.contains(probe):
        raise InvalidArgumentError(f"probe {probe} lies outside the {grid.columns}x{grid.rows} patch grid")
    if not rulers.tokens:
        raise InvalidArgumentError("ruler set is empty")
    vector = as_head_vector(probe_vector, cfg.spec)
    pair_norms = np.hypot(vector[0::2], vector[1::2])
    if not np.all(pair_norms > 0):
        raise InvalidArgumentError("probe vector has a zero-norm pair")

    query = cfg.rotate(vector, vision_position(grid, probe, cfg.assign.axis_count))
    table = tuple(
        (token.grid_index, float(cfg.scale * np.dot(query, cfg.rotate(vector, token.position))))
        for token in rulers.tokens
    )
    best = max(value for _, value in table)
    tolerance = TIE_TOLERANCE * max(1.0, abs(best))
    tied = tuple(index for index, value in table if best - value <= tolerance)
    winner = tied[0]
    return RulerPeak(
        winner=winner,
        score=dict(table)[winner],
        tie=len(tied) > 1,
        tied_indices=tied,
        scores=table,
    )
