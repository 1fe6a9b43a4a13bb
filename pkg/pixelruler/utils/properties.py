"""
Seeded property suite run by the `check` subcommand.

Every invariant of the kernels, the ruler construction, the attention scaffold and the evaluation harness is
expressed as a check function registered with @suite_property. A check draws its cases from its own numpy
Generator (seeded from the suite seed and the check's position), returns the number of cases it ran, and
signals a violation by raising PropertyViolation.
"""

from __future__ import annotations

import contextlib
import io
import logging
import math
import time
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from pixelruler.multimodal_sequence import Segment, assemble_sequence
from pixelruler.utils.attention import AttentionConfig, ruler_peak, score, score_gradient
from pixelruler.utils.coordparse import format_point, parse_point
from pixelruler.utils.errors import PixelRulerError
from pixelruler.utils.geometry import BBox, Coord, Point
from pixelruler.utils.gradcheck import numeric_gradient, relative_error
from pixelruler.utils.grounding import (
    GroundingSample,
    Prediction,
    denormalize,
    element_accuracy,
    load_sample_fixture,
)
from pixelruler.utils.mrope import (
    INTERLEAVE_ORDER,
    AssignmentMode,
    PositionId,
    apply_mrope,
    assign_axes,
    axis_frequency_profile,
)
from pixelruler.utils.rope import apply_rotation, make_spectrum, rotation_gradient
from pixelruler.utils.ruler import build_grid, build_ruler_tokens, load_resolutions, overhead

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240601
NORM_TOLERANCE = 1e-12
IDENTITY_TOLERANCE = 1e-9
GRADIENT_TOLERANCE = 1e-6

BASES = (100.0, 10000.0, 500000.0, 1000000.0)
MODES = (AssignmentMode.SEQUENTIAL, AssignmentMode.INTERLEAVED)


class PropertyViolation(AssertionError):
    """A property does not hold for a generated case."""


@dataclass(frozen=True)
class PropertyResult:
    module: str
    name: str
    passed: bool
    cases: int
    seconds: float
    detail: str = ""


PropertyCheck = Callable[[np.random.Generator], int]

_SUITE: list[tuple[str, str, PropertyCheck]] = []


def suite_property(module: str, name: str) -> Callable[[PropertyCheck], PropertyCheck]:
    def decorator(check: PropertyCheck) -> PropertyCheck:
        _SUITE.append((module, name, check))
        return check

    return decorator


def property_names() -> list[str]:
    return [name for _, name, _ in _SUITE]


def _expect(condition: bool, detail: str) -> None:
    if not condition:
        raise PropertyViolation(detail)


def _scaled(tolerance: float, *magnitudes: float) -> float:
    return tolerance * max(1.0, *magnitudes)


@contextlib.contextmanager
def _quiet(*logger_names: str) -> Iterator[None]:
    """Raises the named loggers to ERROR while randomized inputs trigger expected warnings."""
    loggers = [logging.getLogger(name) for name in logger_names]
    levels = [log.level for log in loggers]
    for log in loggers:
        log.setLevel(logging.ERROR)
    try:
        yield
    finally:
        for log, level in zip(loggers, levels):
            log.setLevel(level)


def _random_spectrum(rng: np.random.Generator, max_half: int = 64):
    return make_spectrum(2 * int(rng.integers(1, max_half + 1)), float(rng.choice(BASES)))


def _random_assignment(rng: np.random.Generator, half_dim: int, axis_count: int | None = None):
    if axis_count is None:
        axis_count = int(rng.choice((2, 3)))
    return assign_axes(half_dim, axis_count, MODES[int(rng.integers(2))])


def _random_position(rng: np.random.Generator, axis_count: int, span: int = 1000) -> PositionId:
    return PositionId(tuple(int(value) for value in rng.integers(-span, span + 1, size=axis_count)))


def _nonzero_pairs(rng: np.random.Generator, head_dim: int) -> np.ndarray:
    vector = rng.standard_normal(head_dim)
    norms = np.hypot(vector[0::2], vector[1::2])
    vector[0::2][norms < 1e-3] = 1.0
    return vector


# rope-core


@suite_property("rope-core", "spectrum-shape")
def _spectrum_shape(rng: np.random.Generator) -> int:
    cases = 0
    for half_dim in range(1, 129):
        for base in BASES:
            spec = make_spectrum(2 * half_dim, base)
            _expect(spec.thetas.shape == (half_dim,), f"d={spec.head_dim}: {spec.thetas.shape[0]} thetas")
            _expect(spec.thetas[0] == 1.0, f"d={spec.head_dim}, base={base}: thetas[0] = {spec.thetas[0]}")
            if base > 1:
                _expect(bool(np.all(np.diff(spec.thetas) < 0)), f"d={spec.head_dim}: thetas not strictly decreasing")
            cases += 1
    return cases


@suite_property("rope-core", "norm-preservation")
def _norm_preservation(rng: np.random.Generator) -> int:
    for _ in range(1000):
        spec = _random_spectrum(rng)
        v = rng.standard_normal(spec.head_dim)
        m = int(rng.integers(-100000, 100001))
        out = apply_rotation(v, m, spec)
        drift = abs(np.linalg.norm(out) - np.linalg.norm(v))
        _expect(drift <= _scaled(NORM_TOLERANCE, np.linalg.norm(v)), f"d={spec.head_dim}, m={m}: norm drift {drift}")
        pair_drift = np.max(np.abs(np.hypot(out[0::2], out[1::2]) - np.hypot(v[0::2], v[1::2])))
        _expect(pair_drift <= NORM_TOLERANCE * 10, f"d={spec.head_dim}, m={m}: pair norm drift {pair_drift}")
    return 1000


@suite_property("rope-core", "relative-position")
def _relative_position(rng: np.random.Generator) -> int:
    for _ in range(1000):
        spec = _random_spectrum(rng)
        q, k = rng.standard_normal((2, spec.head_dim))
        m, n = (int(value) for value in rng.integers(-1000, 1001, size=2))
        lhs = np.dot(apply_rotation(q, m, spec), apply_rotation(k, n, spec))
        rhs = np.dot(apply_rotation(q, m - n, spec), k)
        bound = _scaled(IDENTITY_TOLERANCE, np.linalg.norm(q) * np.linalg.norm(k))
        _expect(abs(lhs - rhs) <= bound, f"d={spec.head_dim}, m={m}, n={n}: {lhs} != {rhs}")
    return 1000


@suite_property("rope-core", "composition")
def _composition(rng: np.random.Generator) -> int:
    for _ in range(1000):
        spec = _random_spectrum(rng)
        v = rng.standard_normal(spec.head_dim)
        m, n = (int(value) for value in rng.integers(-1000, 1001, size=2))
        twice = apply_rotation(apply_rotation(v, m, spec), n, spec)
        once = apply_rotation(v, m + n, spec)
        error = float(np.max(np.abs(twice - once)))
        _expect(error <= _scaled(IDENTITY_TOLERANCE, np.linalg.norm(v)), f"d={spec.head_dim}, m={m}, n={n}: {error}")
    return 1000


@suite_property("rope-core", "rotation-gradient")
def _rotation_gradient(rng: np.random.Generator) -> int:
    for _ in range(100):
        spec = _random_spectrum(rng, max_half=32)
        v, upstream = rng.standard_normal((2, spec.head_dim))
        m = int(rng.integers(-500, 501))
        numeric = numeric_gradient(lambda x: float(np.dot(upstream, apply_rotation(x, m, spec))), v)
        error = relative_error(rotation_gradient(upstream, m, spec), numeric)
        _expect(error < GRADIENT_TOLERANCE, f"d={spec.head_dim}, m={m}: relative error {error}")
    return 100


# mrope


@suite_property("mrope", "assignment-mapping")
def _assignment_mapping(rng: np.random.Generator) -> int:
    cases = 0
    for half_dim in range(1, 129):
        for axis_count in (2, 3):
            sequential = assign_axes(half_dim, axis_count, AssignmentMode.SEQUENTIAL)
            runs = np.repeat(np.arange(axis_count), sequential.section_sizes)
            _expect(sum(sequential.section_sizes) == half_dim, f"half_dim={half_dim}: sections do not sum")
            _expect(bool(np.array_equal(sequential.mapping, runs)), f"half_dim={half_dim}: sequential runs broken")
            interleaved = assign_axes(half_dim, axis_count, AssignmentMode.INTERLEAVED)
            order = INTERLEAVE_ORDER[axis_count]
            expected = [order[j % axis_count] for j in range(half_dim)]
            _expect(interleaved.mapping.tolist() == expected, f"half_dim={half_dim}: interleaved residue rule broken")
            for assign in (sequential, interleaved):
                _expect(bool(np.all((assign.mapping >= 0) & (assign.mapping < axis_count))), "invalid axis index")
                profile = axis_frequency_profile(assign, make_spectrum(2 * half_dim))
                _expect(sum(p.count for p in profile) == half_dim, f"half_dim={half_dim}: profile counts")
            cases += 2
    return cases


@suite_property("mrope", "text-token-reduction")
def _text_token_reduction(rng: np.random.Generator) -> int:
    for _ in range(1000):
        spec = _random_spectrum(rng)
        assign = _random_assignment(rng, spec.half_dim)
        v = rng.standard_normal(spec.head_dim)
        m = int(rng.integers(-100000, 100001))
        multi = apply_mrope(v, PositionId.uniform(m, assign.axis_count), assign, spec)
        _expect(bool(np.array_equal(multi, apply_rotation(v, m, spec))), f"{assign!r}, m={m}: not bit-identical")
    return 1000


@suite_property("mrope", "interleaved-balance")
def _interleaved_balance(rng: np.random.Generator) -> int:
    cases = 0
    for axis_count in (2, 3):
        for half_dim in range(max(4, 2 * axis_count), 129):
            assign = assign_axes(half_dim, axis_count, AssignmentMode.INTERLEAVED)
            counts = np.bincount(assign.mapping, minlength=axis_count)
            _expect(int(counts.max() - counts.min()) <= 1, f"half_dim={half_dim}, axes={axis_count}: counts {counts}")
            for axis in range(axis_count):
                owned = assign.indices_for(axis)
                _expect(int(owned.min()) < axis_count, f"half_dim={half_dim}: axis {axis} misses the high frequencies")
                _expect(
                    int(owned.max()) >= half_dim - axis_count,
                    f"half_dim={half_dim}: axis {axis} misses the low frequencies",
                )
            cases += 1
    return cases


@suite_property("mrope", "sequential-imbalance")
def _sequential_imbalance(rng: np.random.Generator) -> int:
    cases = 0
    for axis_count in (2, 3):
        for half_dim in range(2 * axis_count, 129):
            assign = assign_axes(half_dim, axis_count, AssignmentMode.SEQUENTIAL)
            quartile = math.ceil(half_dim / 4)
            owners_bottom = set(assign.mapping[:quartile].tolist())
            owners_top = set(assign.mapping[half_dim - quartile :].tolist())
            axes = set(range(axis_count))
            missing_top = axes - owners_top
            missing_bottom = axes - owners_bottom
            _expect(
                bool(missing_top) and bool(missing_bottom) and missing_top != missing_bottom,
                f"half_dim={half_dim}, axes={axis_count}: sequential split covers both quartiles",
            )
            cases += 1
    return cases


@suite_property("mrope", "axis-relative-position")
def _axis_relative_position(rng: np.random.Generator) -> int:
    for _ in range(1000):
        spec = _random_spectrum(rng)
        assign = _random_assignment(rng, spec.half_dim)
        q, k = rng.standard_normal((2, spec.head_dim))
        p1 = _random_position(rng, assign.axis_count)
        p2 = _random_position(rng, assign.axis_count)
        lhs = np.dot(apply_mrope(q, p1, assign, spec), apply_mrope(k, p2, assign, spec))
        rhs = np.dot(apply_mrope(q, p1 - p2, assign, spec), k)
        bound = _scaled(IDENTITY_TOLERANCE, np.linalg.norm(q) * np.linalg.norm(k))
        _expect(abs(lhs - rhs) <= bound, f"{assign!r}, {p1} vs {p2}: {lhs} != {rhs}")
    return 1000


# ruler-seq


@suite_property("ruler-seq", "grid-ceil")
def _grid_ceil(rng: np.random.Generator) -> int:
    for _ in range(1000):
        width, height = (int(value) for value in rng.integers(1, 8000, size=2))
        patch = int(rng.integers(1, 64))
        grid = build_grid(width, height, patch)
        _expect(
            grid.columns == (width + patch - 1) // patch and grid.rows == (height + patch - 1) // patch,
            f"{width}x{height} @ {patch}: got {grid.columns}x{grid.rows}",
        )
        _expect(grid.columns >= 1 and grid.rows >= 1, "empty grid")
    return 1000


@suite_property("ruler-seq", "ruler-count-law")
def _ruler_count_law(rng: np.random.Generator) -> int:
    cases = 0
    patch = 28
    for max_side in range(1, 257):
        other = int(rng.integers(1, max_side + 1))
        for columns, rows in ((max_side, other), (other, max_side)):
            grid = build_grid(columns * patch, rows * patch, patch, t0=int(rng.integers(0, 50)))
            for interval in (1, 2, 4, 8, 16):
                rulers = build_ruler_tokens(grid, interval)
                last = (max_side // interval) * interval
                _expect(len(rulers) == max_side // interval + 1, f"max={max_side}, s={interval}: {len(rulers)}")
                _expect(
                    rulers.indices == tuple(range(0, last + 1, interval)),
                    f"max={max_side}, s={interval}: indices {rulers.indices}",
                )
                _expect(rulers.arithmetic_bound == interval * patch, f"s={interval}: bound")
                _expect(
                    all(token.position.axes == (grid.t0 + token.grid_index,) * 2 for token in rulers.tokens),
                    f"max={max_side}, s={interval}: positions not all-axes t0 + i",
                )
                cases += 1
    return cases


@suite_property("ruler-seq", "face-value-law")
def _face_value_law(rng: np.random.Generator) -> int:
    cases = 0
    for _ in range(200):
        patch = int(rng.integers(1, 64))
        grid = build_grid(int(rng.integers(1, 8000)), int(rng.integers(1, 8000)), patch)
        rulers = build_ruler_tokens(grid, int(rng.integers(1, 17)))
        for token in rulers.tokens:
            _expect(int(token.face_value) == token.grid_index * patch, f"face value {token.face_value}")
            _expect(token.face_value == str(token.grid_index * patch), f"non-canonical face value {token.face_value}")
            cases += 1
    return cases


@suite_property("ruler-seq", "bound-law")
def _bound_law(rng: np.random.Generator) -> int:
    cases = 0
    for _ in range(30):
        patch = int(rng.integers(1, 40))
        grid = build_grid(int(rng.integers(1, 1500)), int(rng.integers(1, 1500)), patch)
        rulers = build_ruler_tokens(grid, int(rng.integers(1, 17)))
        faces = np.array([token.pixel for token in rulers.tokens])
        for x in range(max(grid.width_px, grid.height_px)):
            reference, adjustment = rulers.decompose(x)
            expected = int(faces[faces <= x].max())
            _expect(reference.pixel == expected, f"x={x}: reference {reference.pixel}, expected {expected}")
            _expect(0 <= adjustment < rulers.arithmetic_bound, f"x={x}: adjustment {adjustment}")
            cases += 1
    return cases


@suite_property("ruler-seq", "position-sharing")
def _position_sharing(rng: np.random.Generator) -> int:
    cases = 0
    for _ in range(50):
        patch = int(rng.integers(1, 30))
        grid = build_grid(int(rng.integers(1, 40)) * patch, int(rng.integers(1, 40)) * patch, patch)
        axis_count = int(rng.choice((2, 3)))
        sequence = assemble_sequence(["<s>"], [(grid, grid.patch_count)], ["go"], int(rng.integers(1, 9)), axis_count)
        vision = sequence.segment_tokens(Segment.VISION)
        h_values = {token.position.get("h") for token in vision}
        w_values = {token.position.get("w") for token in vision}
        for ruler in sequence.segment_tokens(Segment.RULER):
            index = ruler.position.get("h") - sequence.grids[0].t0
            if index <= min(grid.rows, grid.columns) - 1:
                _expect(ruler.position.get("h") in h_values, f"ruler {index}: no vision row shares h")
                _expect(ruler.position.get("w") in w_values, f"ruler {index}: no vision column shares w")
                cases += 1
    return cases


@suite_property("ruler-seq", "monotone-overhead")
def _monotone_overhead(rng: np.random.Generator) -> int:
    cases = 0
    patch = 28
    for interval in (2, 4, 8, 16):
        for aspect_w, aspect_h in ((16, 9), (9, 16), (4, 3), (1, 1), (21, 9)):
            unit = interval * patch
            ratios = [overhead(k * aspect_w * unit, k * aspect_h * unit, patch, interval).ratio for k in range(1, 12)]
            _expect(
                all(later <= earlier for earlier, later in zip(ratios, ratios[1:])),
                f"{aspect_w}:{aspect_h}, s={interval}: ratios {ratios}",
            )
            cases += 1
    for _ in range(200):
        width, height = (int(value) for value in rng.integers(1, 8000, size=2))
        counts = [overhead(width, height, patch, interval).ruler_count for interval in range(1, 33)]
        _expect(all(b <= a for a, b in zip(counts, counts[1:])), f"{width}x{height}: ruler counts {counts}")
        cases += 1
    return cases


@suite_property("ruler-seq", "assembly-layout")
def _assembly_layout(rng: np.random.Generator) -> int:
    for _ in range(100):
        patch = int(rng.integers(1, 30))
        images = []
        for _ in range(int(rng.integers(0, 4))):
            grid = build_grid(int(rng.integers(1, 300)), int(rng.integers(1, 300)), patch)
            images.append((grid, grid.patch_count))
        axis_count = int(rng.choice((2, 3)))
        system = [f"<s{i}>" for i in range(int(rng.integers(0, 4)))]
        prompt = [f"p{i}" for i in range(int(rng.integers(0, 4)))]
        sequence = assemble_sequence(system, images, prompt, int(rng.integers(1, 9)), axis_count)
        _expect([token.seq_index for token in sequence] == list(range(len(sequence))), "sequence indices")
        tags = [token.segment for token in sequence]
        expected_tags = [Segment.SYSTEM] * len(system)
        for rulers, (grid, count) in zip(sequence.rulers, images):
            expected_tags += [Segment.RULER] * len(rulers) + [Segment.VISION] * count
        expected_tags += [Segment.PROMPT] * len(prompt)
        _expect(tags == expected_tags, "segment order")
        for token in sequence.segment_tokens(Segment.VISION):
            t0 = sequence.grids[token.image_index].t0
            _expect(token.position.get("h") == t0 + token.coord.row, f"vision h at {token.coord}")
            _expect(token.position.get("w") == t0 + token.coord.column, f"vision w at {token.coord}")
            if axis_count == 3:
                _expect(token.position.get("t") == t0, f"vision t at {token.coord}")
        if not images:
            flat = [PositionId.uniform(i, axis_count) for i in range(len(sequence))]
            _expect([token.position for token in sequence] == flat, "pure-text positions differ from 1-D numbering")
    return 100


@suite_property("ruler-seq", "assembly-determinism")
def _assembly_determinism(rng: np.random.Generator) -> int:
    for _ in range(50):
        patch = int(rng.integers(1, 30))
        grids = [build_grid(int(rng.integers(1, 200)), int(rng.integers(1, 200)), patch) for _ in range(2)]
        args = (["<s>"], [(grid, grid.patch_count) for grid in grids], ["a", "b"], int(rng.integers(1, 9)), 3)
        first = assemble_sequence(*args)
        second = assemble_sequence(*args)
        _expect(first == second and first.dump() == second.dump(), "assembly is not deterministic")
    return 50


@suite_property("ruler-seq", "overhead-claim")
def _overhead_claim(rng: np.random.Generator) -> int:
    cases = 0
    for resolution in load_resolutions():
        if resolution.min_side < 720:
            continue
        stats = overhead(resolution.width, resolution.height, 28, 8)
        _expect(stats.ratio < 0.01, f"{resolution.name}: ratio {stats.ratio}")
        cases += 1
    eight_k = overhead(7680, 4320, 28, 8)
    _expect((eight_k.vision_count, eight_k.ruler_count) == (42625, 35), f"8K: {eight_k}")
    full_hd = overhead(1920, 1080, 28, 8)
    _expect((full_hd.vision_count, full_hd.ruler_count) == (2691, 9), f"1080p: {full_hd}")
    return cases + 2


# attn-scaffold


def _random_config(rng: np.random.Generator, axis_count: int | None = None) -> AttentionConfig:
    spec = _random_spectrum(rng, max_half=32)
    return AttentionConfig(spec, _random_assignment(rng, spec.half_dim, axis_count))


@suite_property("attn-scaffold", "self-match-dominance")
def _self_match_dominance(rng: np.random.Generator) -> int:
    cases = 0
    while cases < 500:
        cfg = _random_config(rng)
        if min(np.bincount(cfg.assign.mapping, minlength=cfg.assign.axis_count)) == 0:
            continue
        q = _nonzero_pairs(rng, cfg.spec.head_dim)
        pos = _random_position(rng, cfg.assign.axis_count)
        # |offset * thetas[0]| < pi keeps the highest frequency from aliasing
        offset = PositionId(tuple(int(value) for value in rng.integers(-3, 4, size=cfg.assign.axis_count)))
        if not any(offset.axes):
            continue
        best = score(q, q, pos, pos, cfg)
        other = score(q, q, pos, PositionId(tuple(a + b for a, b in zip(pos.axes, offset.axes))), cfg)
        _expect(other < best, f"{cfg.assign!r}, offset {offset}: {other} >= {best}")
        cases += 1
    return cases


@suite_property("attn-scaffold", "diagonal-retrieval")
def _diagonal_retrieval(rng: np.random.Generator) -> int:
    cases = 0
    spec = make_spectrum(32)
    cfg = AttentionConfig(spec, assign_axes(spec.half_dim, 2, AssignmentMode.INTERLEAVED))
    probe_vector = np.ones(spec.head_dim)
    for side in range(1, 65):
        grid = build_grid(side, side, 1)
        for interval in (2, 4, 8, 16):
            rulers = build_ruler_tokens(grid, interval)
            indices = np.array(rulers.indices)
            for r in range(side):
                distances = np.abs(indices - r)
                nearest = set(indices[distances == distances.min()].tolist())
                peak = ruler_peak(grid, rulers, Coord(r, r), cfg, probe_vector)
                _expect(
                    set(peak.tied_indices) == nearest,
                    f"{side}x{side}, s={interval}, r={r}: peak {peak.tied_indices}, nearest {sorted(nearest)}",
                )
                cases += 1
    return cases


@suite_property("attn-scaffold", "shift-invariance")
def _shift_invariance(rng: np.random.Generator) -> int:
    for _ in range(1000):
        cfg = _random_config(rng)
        q, k = rng.standard_normal((2, cfg.spec.head_dim))
        pos_q = _random_position(rng, cfg.assign.axis_count)
        pos_k = _random_position(rng, cfg.assign.axis_count)
        shift = int(rng.integers(-1000, 1001))
        before = score(q, k, pos_q, pos_k, cfg)
        after = score(q, k, pos_q.shifted(shift), pos_k.shifted(shift), cfg)
        bound = _scaled(IDENTITY_TOLERANCE, np.linalg.norm(q) * np.linalg.norm(k))
        _expect(abs(before - after) <= bound, f"shift {shift}: {before} != {after}")
    return 1000


@suite_property("attn-scaffold", "score-gradient")
def _score_gradient(rng: np.random.Generator) -> int:
    for _ in range(100):
        cfg = _random_config(rng)
        q, k = rng.standard_normal((2, cfg.spec.head_dim))
        pos_q = _random_position(rng, cfg.assign.axis_count, span=200)
        pos_k = _random_position(rng, cfg.assign.axis_count, span=200)
        grad_q, grad_k = score_gradient(q, k, pos_q, pos_k, cfg)
        numeric_q = numeric_gradient(lambda x: score(x, k, pos_q, pos_k, cfg), q)
        numeric_k = numeric_gradient(lambda x: score(q, x, pos_q, pos_k, cfg), k)
        error = max(relative_error(grad_q, numeric_q), relative_error(grad_k, numeric_k))
        _expect(error < GRADIENT_TOLERANCE, f"{cfg.assign!r}: relative error {error}")
    return 100


# grounding-eval

PLATFORMS = ("mobile", "desktop", "web")


def _random_dataset(rng: np.random.Generator, size: int) -> tuple[list[GroundingSample], list[Prediction]]:
    samples, preds = [], []
    for index in range(size):
        width, height = (int(value) for value in rng.integers(1, 4000, size=2))
        x0, x1 = sorted(rng.uniform(0, width, size=2))
        y0, y1 = sorted(rng.uniform(0, height, size=2))
        sample = GroundingSample(
            id=f"s{index}",
            image_width_px=width,
            image_height_px=height,
            instruction="click",
            target=BBox(float(x0), float(y0), float(x1), float(y1)),
            platform=str(rng.choice(PLATFORMS)),
            ui_type=str(rng.choice(("text", "icon"))) if rng.random() < 0.5 else None,
        )
        samples.append(sample)
        roll = rng.random()
        if roll < 0.1:
            continue
        if roll < 0.2:
            point = Point(sample.target.x_max, sample.target.y_min)
        else:
            point = Point(float(rng.uniform(0, width)), float(rng.uniform(0, height)))
        preds.append(Prediction(sample.id, point))
    order = rng.permutation(len(preds))
    return samples, [preds[i] for i in order]


def _oracle_hits(samples: Sequence[GroundingSample], preds: Sequence[Prediction]) -> dict[str, bool]:
    hits = {}
    for sample in samples:
        hit = False
        for pred in preds:
            if pred.id == sample.id and pred.point is not None:
                box, point = sample.target, pred.point
                hit = box.x_min <= point.x <= box.x_max and box.y_min <= point.y <= box.y_max
        hits[sample.id] = hit
    return hits


@suite_property("grounding-eval", "oracle-equivalence")
def _oracle_equivalence(rng: np.random.Generator) -> int:
    with _quiet("pixelruler.utils.grounding"):
        for _ in range(50):
            samples, preds = _random_dataset(rng, int(rng.integers(0, 201)))
            report = element_accuracy(samples, preds)
            expected = _oracle_hits(samples, preds)
            _expect(report.hits == expected, "per-sample hits differ from the loop oracle")
            _expect(report.hit_count == sum(expected.values()), "hit count differs from the loop oracle")
    return 50


@suite_property("grounding-eval", "accuracy-bounds")
def _accuracy_bounds(rng: np.random.Generator) -> int:
    with _quiet("pixelruler.utils.grounding"):
        for _ in range(50):
            samples, preds = _random_dataset(rng, int(rng.integers(1, 201)))
            report = element_accuracy(samples, preds)
            _expect(0.0 <= report.accuracy <= 1.0, f"accuracy {report.accuracy}")
            _expect(report.accuracy == report.hit_count / report.total, "accuracy is not hits / total")
            _expect(abs(report.accuracy * report.total - report.hit_count) < 1e-9, "accuracy * total != hit count")
            platform_total = sum(group.total for group in report.per_platform.values())
            platform_hits = sum(group.hits for group in report.per_platform.values())
            weighted = sum(
                Fraction(group.total, report.total) * Fraction(group.hits, group.total)
                for group in report.per_platform.values()
            )
            _expect(platform_total == report.total and platform_hits == report.hit_count, "platform counts")
            _expect(weighted == Fraction(report.hit_count, report.total), "weighted platform average")
    return 50


@suite_property("grounding-eval", "parse-format-roundtrip")
def _parse_format_roundtrip(rng: np.random.Generator) -> int:
    for _ in range(1000):
        magnitude = 10.0 ** rng.integers(-8, 9)
        point = Point(float(rng.standard_normal() * magnitude), float(rng.standard_normal() * magnitude))
        text = format_point(point)
        parsed = parse_point(f"Answer: {text}.")
        _expect(parsed.point == point and not parsed.multiple_matches, f"{text} parsed as {parsed.point}")
    return 1000


@suite_property("grounding-eval", "denormalize-monotone")
def _denormalize_monotone(rng: np.random.Generator) -> int:
    for _ in range(1000):
        width, height = (int(value) for value in rng.integers(1, 10000, size=2))
        u1, u2 = sorted(rng.uniform(0, 1, size=2))
        v1, v2 = sorted(rng.uniform(0, 1, size=2))
        low = denormalize(Point(float(u1), float(v1)), width, height)
        high = denormalize(Point(float(u2), float(v2)), width, height)
        _expect(low.x <= high.x and low.y <= high.y, f"not monotone at {width}x{height}")
        _expect(denormalize(Point(0.0, 0.0), width, height) == Point(0.0, 0.0), "origin not exact")
        _expect(denormalize(Point(1.0, 1.0), width, height) == Point(width, height), "far corner not exact")
    return 1000


@suite_property("grounding-eval", "fixture-accuracy")
def _fixture_accuracy(rng: np.random.Generator) -> int:
    report = element_accuracy(*load_sample_fixture())
    _expect((report.total, report.hit_count) == (10, 7), f"fixture scored {report.hit_count}/{report.total}")
    _expect(report.accuracy == 0.7, f"fixture accuracy {report.accuracy}")
    return 1


# cli


@suite_property("cli", "deterministic-output")
def _deterministic_output(rng: np.random.Generator) -> int:
    from pixelruler.__main__ import run

    argvs = (
        ["overhead", "--json"],
        ["overhead", "--csv"],
        ["ruler", "--width", "1920", "--height", "1080", "--json"],
        ["assign", "--half-dim", "12", "--axes", "3", "--csv"],
        ["attn-demo", "--grid", "12x12", "--json"],
        ["sequence", "--width", "84", "--height", "56", "--csv"],
    )
    for argv in argvs:
        outputs = []
        for _ in range(2):
            stream = io.StringIO()
            code = run(argv, stdout=stream, setup_logging=False)
            _expect(code == 0, f"{' '.join(argv)} exited {code}")
            outputs.append(stream.getvalue())
        _expect(outputs[0] == outputs[1], f"{' '.join(argv)} output differs between runs")
    return len(argvs)


def run_suite(seed: int = DEFAULT_SEED, only: Sequence[str] = ()) -> list[PropertyResult]:
    """Runs the registered checks in registration order.

    Args:
        seed (int, optional): suite seed. Defaults to DEFAULT_SEED.
        only (Sequence[str], optional): restrict to these property names. Defaults to all.

    Returns:
        list[PropertyResult]: one result per check run
    """
    results = []
    for position, (module, name, check) in enumerate(_SUITE):
        if only and name not in only:
            continue
        rng = np.random.default_rng([seed, position])
        started = time.perf_counter()
        try:
            cases = check(rng)
            passed, detail = True, ""
        except PropertyViolation as exc:
            cases, passed, detail = 0, False, str(exc)
        except PixelRulerError as exc:
            cases, passed, detail = 0, False, f"{type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - started
        logger.info("%s/%s: %s in %.2fs", module, name, "pass" if passed else "FAIL", elapsed)
        results.append(PropertyResult(module, name, passed, cases, elapsed, detail))
    return results
