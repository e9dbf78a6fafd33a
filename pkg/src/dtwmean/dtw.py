"""DTW distance, alignment costs, optimal paths, and exhaustive oracles.

The dynamic program accumulates squared Euclidean costs and takes the
square root only for the reported distance, since downstream consumers
(the Frechet function and the solvers) need dtw^2 directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import GuardError
from .series import as_time_series
from .warping import WarpingPath, require_valid

DEFAULT_ENUMERATION_GUARD = 16  # largest m + n enumerated exhaustively


@dataclass(frozen=True)
class DtwResult:
    distance: float
    path: WarpingPath


def alignment_cost(x, y, path: WarpingPath) -> float:
    """Cost of aligning x and y along `path`: sum of squared errors over path points."""
    x = as_time_series(x)
    y = as_time_series(y)
    require_valid(path)
    if path.order != (x.shape[0], y.shape[0]):
        raise ValueError(
            f"path order {path.order} does not match series lengths "
            f"({x.shape[0]}, {y.shape[0]})"
        )
    if x.shape[1] != y.shape[1]:
        raise ValueError(f"dimension mismatch: {x.shape[1]} vs {y.shape[1]}")
    ii = np.array([p[0] - 1 for p in path.points])
    jj = np.array([p[1] - 1 for p in path.points])
    diff = x[ii] - y[jj]
    return float(np.sum(diff * diff))


def dtw(x, y) -> DtwResult:
    """DTW distance and one optimal warping path.

    Deterministic: ties in the backtrace prefer diagonal, then vertical,
    then horizontal predecessors.
    """
    x = as_time_series(x)
    y = as_time_series(y)
    if x.shape[1] != y.shape[1]:
        raise ValueError(f"dimension mismatch: {x.shape[1]} vs {y.shape[1]}")
    table = _kernels.squared_cost_matrix(x, y)
    ii, jj = _kernels.backtrace(table)
    points = tuple((int(i) + 1, int(j) + 1) for i, j in zip(ii, jj))
    path = WarpingPath(points=points, order=(x.shape[0], y.shape[0]))
    return DtwResult(distance=math.sqrt(float(table[-1, -1])), path=path)


def dtw_squared(x, y) -> float:
    """Squared DTW distance (no path)."""
    x = as_time_series(x)
    y = as_time_series(y)
    if x.shape[1] != y.shape[1]:
        raise ValueError(f"dimension mismatch: {x.shape[1]} vs {y.shape[1]}")
    return float(_kernels.dtw_squared(x, y))


def delannoy(m: int, n: int) -> int:
    """Number of valid warping paths of order (m, n)."""
    counts = np.zeros((m, n), dtype=object)
    counts[0, :] = 1
    counts[:, 0] = 1
    for i in range(1, m):
        for j in range(1, n):
            counts[i, j] = counts[i - 1, j] + counts[i, j - 1] + counts[i - 1, j - 1]
    return int(counts[m - 1, n - 1])


@lru_cache(maxsize=64)
def _enumerate_cached(m: int, n: int) -> tuple[WarpingPath, ...]:
    paths: list[WarpingPath] = []
    prefix: list[tuple[int, int]] = [(1, 1)]

    def extend(i: int, j: int) -> None:
        if i == m and j == n:
            paths.append(WarpingPath(points=tuple(prefix), order=(m, n)))
            return
        for di, dj in ((1, 1), (1, 0), (0, 1)):
            ni, nj = i + di, j + dj
            if ni <= m and nj <= n:
                prefix.append((ni, nj))
                extend(ni, nj)
                prefix.pop()

    extend(1, 1)
    return tuple(paths)


def enumerate_paths(m: int, n: int, guard: int = DEFAULT_ENUMERATION_GUARD) -> list[WarpingPath]:
    """All valid warping paths of order (m, n); guarded by m + n <= guard."""
    if m < 1 or n < 1:
        raise ValueError(f"orders must be positive, got ({m}, {n})")
    if m + n > guard:
        raise GuardError(f"enumeration guard exceeded: m + n = {m + n} > {guard}")
    return list(_enumerate_cached(m, n))


def dtw_brute_force(x, y, guard: int = DEFAULT_ENUMERATION_GUARD) -> DtwResult:
    """Exact DTW by exhaustive path enumeration (independent oracle)."""
    x = as_time_series(x)
    y = as_time_series(y)
    if x.shape[1] != y.shape[1]:
        raise ValueError(f"dimension mismatch: {x.shape[1]} vs {y.shape[1]}")
    best_cost = math.inf
    best_path = None
    for path in enumerate_paths(x.shape[0], y.shape[0], guard=guard):
        ii = np.array([p[0] - 1 for p in path.points])
        jj = np.array([p[1] - 1 for p in path.points])
        diff = x[ii] - y[jj]
        cost = float(np.sum(diff * diff))
        if cost < best_cost:
            best_cost = cost
            best_path = path
    assert best_path is not None
    return DtwResult(distance=math.sqrt(best_cost), path=best_path)
