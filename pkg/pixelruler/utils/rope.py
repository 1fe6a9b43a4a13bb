"""
Rotary positional embedding kernels.

Pairs are consecutive dimensions (2j, 2j+1); pair j is rotated by m * thetas[j] where
thetas[j] = base ** (-2j / head_dim). All arithmetic is float64.

Functions:
- make_spectrum: builds the frequency spectrum for a head dimension and base.
- apply_rotation: rotates every pair of a head vector by its position-dependent angle.
- rotation_gradient: backward pass of apply_rotation (transpose rotation).
"""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from pixelruler.utils.errors import InvalidArgumentError

HeadVector = npt.NDArray[np.float64]

DEFAULT_BASE = 10000.0


@dataclass(frozen=True, eq=False)
class FrequencySpectrum:
    """RoPE frequencies for one attention head.

    Args:
        head_dim (int): even head dimension d
        base (float): RoPE base
        thetas (npt.NDArray[np.float64]): read-only array of d/2 frequencies, thetas[0] == 1
    """

    head_dim: int
    base: float
    thetas: npt.NDArray[np.float64]

    @property
    def half_dim(self) -> int:
        return self.head_dim // 2

    def __repr__(self) -> str:
        return f"FrequencySpectrum(head_dim={self.head_dim}, base={self.base})"


def make_spectrum(head_dim: int, base: float = DEFAULT_BASE) -> FrequencySpectrum:
    """Builds the frequency spectrum thetas[j] = base ** (-2j / head_dim), j = 0 ... head_dim/2 - 1.

    Args:
        head_dim (int): even head dimension >= 2
        base (float, optional): RoPE base, > 0. Defaults to 10000.

    Raises:
        InvalidArgumentError: head_dim is odd or not positive, or base is not positive.

    Returns:
        FrequencySpectrum: the spectrum
    """
    if isinstance(head_dim, bool) or not isinstance(head_dim, (int, np.integer)):
        raise InvalidArgumentError(f"head_dim must be an integer, got {head_dim!r}")
    if head_dim < 2 or head_dim % 2:
        raise InvalidArgumentError(f"head_dim must be an even integer >= 2, got {head_dim}")
    if not base > 0:
        raise InvalidArgumentError(f"base must be > 0, got {base}")
    exponents = -2.0 * np.arange(head_dim // 2, dtype=np.float64) / head_dim
    thetas = np.power(np.float64(base), exponents)
    # base ** 0 is exactly 1 for any base, keep it explicit
    thetas[0] = 1.0
    thetas.flags.writeable = False
    return FrequencySpectrum(head_dim=int(head_dim), base=float(base), thetas=thetas)


def as_head_vector(values, spec: FrequencySpectrum) -> HeadVector:
    """Converts values to a float64 head vector and checks its length against the spectrum.

    Raises:
        InvalidArgumentError: dimension mismatch.
    """
    vector = np.asarray(values, dtype=np.float64)
    if vector.ndim != 1 or vector.shape[0] != spec.head_dim:
        raise InvalidArgumentError(
            f"head vector of shape {vector.shape} does not match head_dim {spec.head_dim}"
        )
    return vector


def rotate_pairs(v: HeadVector, pair_positions: npt.NDArray[np.float64], spec: FrequencySpectrum) -> HeadVector:
    """Rotates pair j of v by pair_positions[j] * thetas[j].

    Shared by the 1-D and multi-axis kernels so both perform identical floating-point operations per pair.
    """
    angles = pair_positions * spec.thetas
    cos = np.cos(angles)
    sin = np.sin(angles)
    even = v[0::2]
    odd = v[1::2]
    out = np.empty_like(v)
    out[0::2] = cos * even - sin * odd
    out[1::2] = sin * even + cos * odd
    return out


def apply_rotation(v, m: int, spec: FrequencySpectrum) -> HeadVector:
    """Applies the RoPE rotation for position m.

    Args:
        v (HeadVector): vector of length spec.head_dim
        m (int): signed position
        spec (FrequencySpectrum): frequencies

    Raises:
        InvalidArgumentError: dimension mismatch.

    Returns:
        HeadVector: rotated copy of v
    """
    vector = as_head_vector(v, spec)
    pair_positions = np.full(spec.half_dim, m, dtype=np.float64)
    return rotate_pairs(vector, pair_positions, spec)


def rotation_gradient(upstream, m: int, spec: FrequencySpectrum) -> HeadVector:
    """Gradient of apply_rotation(v, m) with respect to v, given the upstream cotangent.

    The rotation is orthogonal, so the transpose is the rotation by -m.

    Args:
        upstream (HeadVector): cotangent of the rotated output
        m (int): position used in the forward pass
        spec (FrequencySpectrum): frequencies

    Returns:
        HeadVector: cotangent of the input vector
    """
    return apply_rotation(upstream, -m, spec)
