"""Validation helpers for time series and samples.

A time series is an (n, d) float array of finite values: n time points,
d feature dimensions. One-dimensional inputs are treated as univariate
series and reshaped to (n, 1). A sample is a non-empty list of series
sharing the same dimension d; lengths may differ.
"""

from __future__ import annotations

import numpy as np


def as_time_series(x) -> np.ndarray:
    """Coerce input to an (n, d) float64 array, validating finiteness."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValueError(f"time series must be 1-D or 2-D, got ndim={arr.ndim}")
    n, d = arr.shape
    if n < 1 or d < 1:
        raise ValueError(f"time series must have n >= 1 and d >= 1, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("time series contains NaN or infinite values")
    return np.ascontiguousarray(arr)


def as_sample(series) -> list[np.ndarray]:
    """Coerce a sequence of series into a validated sample (shared dimension)."""
    sample = [as_time_series(x) for x in series]
    if not sample:
        raise ValueError("sample must contain at least one time series")
    d = sample[0].shape[1]
    for k, x in enumerate(sample):
        if x.shape[1] != d:
            raise ValueError(
                f"series {k} has dimension {x.shape[1]}, expected {d} shared by the sample"
            )
    return sample


def pack_sample(sample: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """Pack a sample into a zero-padded (N, max_len, d) array plus a length vector.

    Used by the numba kernels, which want one contiguous buffer.
    """
    lengths = np.array([x.shape[0] for x in sample], dtype=np.int64)
    d = sample[0].shape[1]
    data = np.zeros((len(sample), int(lengths.max()), d), dtype=np.float64)
    for k, x in enumerate(sample):
        data[k, : x.shape[0], :] = x
    return data, lengths
