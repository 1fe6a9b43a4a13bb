"""Central finite differences for checking analytic gradients of the rotation and score kernels."""

from collections.abc import Callable

import numpy as np
import numpy.typing as npt

DEFAULT_STEP = 1e-5


def numeric_gradient(
    fn: Callable[[npt.NDArray[np.float64]], float], x: npt.ArrayLike, step: float = DEFAULT_STEP
) -> npt.NDArray[np.float64]:
    """Gradient of a scalar function by central differences, (f(x + h e_i) - f(x - h e_i)) / 2h."""
    point = np.array(x, dtype=np.float64)
    grad = np.empty_like(point)
    for i in range(point.size):
        original = point[i]
        point[i] = original + step
        upper = fn(point)
        point[i] = original - step
        lower = fn(point)
        point[i] = original
        grad[i] = (upper - lower) / (2.0 * step)
    return grad


def relative_error(analytic: npt.ArrayLike, numeric: npt.ArrayLike) -> float:
    """max |a - n| / max(1, max |a|, max |n|)."""
    a = np.asarray(analytic, dtype=np.float64)
    n = np.asarray(numeric, dtype=np.float64)
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)), float(np.max(np.abs(n), initial=0.0)))
    return float(np.max(np.abs(a - n), initial=0.0)) / scale
