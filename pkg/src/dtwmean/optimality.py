"""Optimality certificates for candidate means, plus an exact global oracle.

Necessary conditions at z: (C1) some configuration built from optimal
warping paths is active, F_C(z) = F(z); (C2) z reproduces the closed-form
component minimizer of that configuration. If additionally the optimal
configuration is unique, z is certified as a local minimizer (sufficient
condition). The global oracle enumerates every configuration on small
instances and minimizes each component function exactly.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from itertools import product

import numpy as np

from . import _kernels
from .dtw import DEFAULT_ENUMERATION_GUARD, delannoy, enumerate_paths
from .errors import GuardError
from .frechet import component_minimizer, component_value, frechet_alignment
from .series import as_sample, as_time_series, pack_sample
from .warping import Configuration

ZERO_COST_ABS_TOL = 1e-12


@dataclass(frozen=True)
class OptimalityReport:
    c1_holds: bool
    c1_gap: float
    c2_holds: bool
    c2_residual: float
    certificate: str  # "local-min-certified" | "necessary-only" | "fails"

    def to_dict(self) -> dict:
        return asdict(self)


def _report(z: np.ndarray, sample: list[np.ndarray], tol: float, unique: bool | None):
    variation, config = frechet_alignment(z, sample)
    value = component_value(z, sample, config)
    c1_gap = abs(value - variation)
    c1_holds = c1_gap <= tol * max(1.0, variation)
    reconstruction = component_minimizer(sample, config)
    c2_residual = float(np.max(np.abs(z - reconstruction)))
    c2_holds = c2_residual <= tol
    if not (c1_holds and c2_holds):
        certificate = "fails"
    elif unique:
        certificate = "local-min-certified"
    else:
        certificate = "necessary-only"
    return OptimalityReport(
        c1_holds=c1_holds,
        c1_gap=c1_gap,
        c2_holds=c2_holds,
        c2_residual=c2_residual,
        certificate=certificate,
    )


def check_necessary(z, sample, tol: float = 1e-9) -> OptimalityReport:
    """Evaluate conditions (C1) and (C2) at z; no uniqueness test."""
    z = as_time_series(z)
    sample = as_sample(sample)
    return _report(z, sample, tol, unique=None)


def optimal_path_sets(z, sample, tol: float = 1e-9, guard: int = DEFAULT_ENUMERATION_GUARD):
    """All optimal warping paths per sample series, by exhaustive enumeration.

    Paths are optimal if their cost is within tol (relative; absolute
    `ZERO_COST_ABS_TOL` for zero minima) of the minimum.
    """
    z = as_time_series(z)
    sample = as_sample(sample)
    sets = []
    for xk in sample:
        paths = enumerate_paths(z.shape[0], xk.shape[0], guard=guard)
        costs = []
        for path in paths:
            ii = np.array([p[0] - 1 for p in path.points])
            jj = np.array([p[1] - 1 for p in path.points])
            diff = z[ii] - xk[jj]
            costs.append(float(np.sum(diff * diff)))
        cost_min = min(costs)
        cutoff = max(cost_min * (1.0 + tol), cost_min + ZERO_COST_ABS_TOL)
        sets.append([p for p, c in zip(paths, costs) if c <= cutoff])
    return sets


def certify_local_min(
    z, sample, tol: float = 1e-9, guard: int = DEFAULT_ENUMERATION_GUARD
) -> OptimalityReport:
    """Sufficient-condition certificate: (C1), (C2), and a unique optimal configuration.

    The test is sufficient but not necessary: multiple optimal
    configurations demote the certificate to "necessary-only" even when z
    may still be a local minimizer.
    """
    z = as_time_series(z)
    sample = as_sample(sample)
    sets = optimal_path_sets(z, sample, tol=tol, guard=guard)
    unique = all(len(s) == 1 for s in sets)
    return _report(z, sample, tol, unique=unique)


def global_mean_oracle(
    sample,
    n: int,
    config_guard: int = 10**6,
    path_guard: int = DEFAULT_ENUMERATION_GUARD,
) -> tuple[np.ndarray, float]:
    """Exact global minimum of the Frechet function over length-n candidates.

    Enumerates every configuration of warping paths, minimizes its
    component function in closed form, and evaluates the true Frechet
    variation at each candidate; returns the arg-min and the minimum.
    """
    sample = as_sample(sample)
    total = 1
    for xk in sample:
        total *= delannoy(n, xk.shape[0])
        if total > config_guard:
            raise GuardError(
                f"configuration count exceeds guard {config_guard} "
                f"({total}+ configurations)"
            )
    path_lists = [enumerate_paths(n, xk.shape[0], guard=path_guard) for xk in sample]
    data, lengths = pack_sample(sample)
    best_value = math.inf
    best_z = None
    for combo in product(*path_lists):
        config = Configuration(paths=combo)
        z = component_minimizer(sample, config)
        value = float(np.mean(_kernels.batch_eval(np.ascontiguousarray(z), data, lengths)))
        if value < best_value:
            best_value = value
            best_z = z
    assert best_z is not None
    return best_z, best_value
