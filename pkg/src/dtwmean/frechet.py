"""The Frechet function of a sample, its component functions, and their calculus.

The Frechet function F(z) = (1/N) sum_k dtw^2(z, x_k) is the pointwise
minimum of component functions F_C(z) = (1/N) sum_k C_{p_k}(z, x_k),
one per configuration C of warping paths. Each component function is
convex and differentiable; fixing an optimal configuration at z yields
an active component whose gradient is a subgradient of F at z.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .dtw import alignment_cost, dtw
from .series import as_sample, as_time_series, pack_sample
from .warping import Configuration, WarpingPath, require_valid


def _check_configuration(z: np.ndarray, sample: list[np.ndarray], config: Configuration) -> None:
    if len(config) != len(sample):
        raise ValueError(f"configuration has {len(config)} paths for {len(sample)} series")
    n = z.shape[0]
    for k, (path, xk) in enumerate(zip(config, sample)):
        require_valid(path)
        if path.order != (n, xk.shape[0]):
            raise ValueError(
                f"path {k} has order {path.order}, expected ({n}, {xk.shape[0]})"
            )


def frechet_variation(z, sample) -> float:
    """F(z) = (1/N) sum_k dtw^2(z, x_k)."""
    z = as_time_series(z)
    sample = as_sample(sample)
    if z.shape[1] != sample[0].shape[1]:
        raise ValueError(f"dimension mismatch: {z.shape[1]} vs {sample[0].shape[1]}")
    data, lengths = pack_sample(sample)
    return float(np.mean(_kernels.batch_eval(z, data, lengths)))


def frechet_alignment(z, sample) -> tuple[float, Configuration]:
    """Frechet variation together with the optimal warping paths that attain it.

    Returning the paths lets solvers reuse the alignments of a function
    evaluation instead of recomputing them.
    """
    z = as_time_series(z)
    sample = as_sample(sample)
    if z.shape[1] != sample[0].shape[1]:
        raise ValueError(f"dimension mismatch: {z.shape[1]} vs {sample[0].shape[1]}")
    paths: list[WarpingPath] = []
    total = 0.0
    for xk in sample:
        result = dtw(z, xk)
        total += result.distance**2
        paths.append(result.path)
    return total / len(sample), Configuration(paths=tuple(paths))


def optimal_configuration(z, sample) -> Configuration:
    """One optimal configuration at z (deterministic under the DTW tie-break)."""
    return frechet_alignment(z, sample)[1]


def component_value(z, sample, config: Configuration) -> float:
    """F_C(z): average alignment cost under the fixed configuration."""
    z = as_time_series(z)
    sample = as_sample(sample)
    _check_configuration(z, sample, config)
    total = sum(alignment_cost(z, xk, path) for xk, path in zip(sample, config))
    return total / len(sample)


def _scatter_sums(sample: list[np.ndarray], config: Configuration, n: int):
    """Summed valence vector and summed warped series over the configuration."""
    d = sample[0].shape[1]
    valence_sum = np.zeros(n)
    warped_sum = np.zeros((n, d))
    for xk, path in zip(sample, config):
        ii = np.array([p[0] - 1 for p in path.points])
        jj = np.array([p[1] - 1 for p in path.points])
        np.add.at(valence_sum, ii, 1.0)
        np.add.at(warped_sum, ii, xk[jj])
    return valence_sum, warped_sum


def component_gradient(z, sample, config: Configuration) -> np.ndarray:
    """Gradient of F_C at z: (2/N) sum_k (V_k z - W_k x_k), per dimension column."""
    z = as_time_series(z)
    sample = as_sample(sample)
    _check_configuration(z, sample, config)
    valence_sum, warped_sum = _scatter_sums(sample, config, z.shape[0])
    return (2.0 / len(sample)) * (valence_sum[:, None] * z - warped_sum)


def component_minimizer(sample, config: Configuration) -> np.ndarray:
    """Unique minimizer of F_C: per-time-point mean of aligned sample elements.

    The summed valence matrix is diagonal with positive integer entries,
    so the inverse is an exact per-coordinate division.
    """
    sample = as_sample(sample)
    n = config.paths[0].order[0]
    dummy = np.zeros((n, sample[0].shape[1]))
    _check_configuration(dummy, sample, config)
    valence_sum, warped_sum = _scatter_sums(sample, config, n)
    return warped_sum / valence_sum[:, None]
