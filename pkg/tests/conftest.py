import numpy as np
import pytest

from dtwmean.frechet import component_value
from dtwmean.warping import WarpingPath


def random_valid_path(rng: np.random.Generator, m: int, n: int) -> WarpingPath:
    """Uniform-ish random monotone path from (1,1) to (m,n)."""
    points = [(1, 1)]
    i, j = 1, 1
    while (i, j) != (m, n):
        steps = []
        if i < m and j < n:
            steps.append((1, 1))
        if i < m:
            steps.append((1, 0))
        if j < n:
            steps.append((0, 1))
        di, dj = steps[int(rng.integers(len(steps)))]
        i, j = i + di, j + dj
        points.append((i, j))
    return WarpingPath(points=tuple(points), order=(m, n))


def random_sample(rng: np.random.Generator, count: int, d: int, min_len=2, max_len=6):
    return [
        rng.normal(0.0, 1.0, size=(int(rng.integers(min_len, max_len + 1)), d))
        for _ in range(count)
    ]


def finite_difference_gradient(z, sample, config, h: float = 1e-5) -> np.ndarray:
    """Central-difference gradient of the component value (independent oracle)."""
    z = np.array(z, dtype=np.float64)
    grad = np.zeros_like(z)
    it = np.nditer(z, flags=["multi_index"])
    for _ in it:
        idx = it.multi_index
        zp = z.copy()
        zm = z.copy()
        zp[idx] += h
        zm[idx] -= h
        grad[idx] = (component_value(zp, sample, config) - component_value(zm, sample, config)) / (
            2.0 * h
        )
    return grad


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
