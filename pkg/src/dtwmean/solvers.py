"""Mean algorithms: batch subgradient (SG), majorize-minimize (MM), stochastic (SSG).

All three minimize the Frechet function of a sample. MM alternates
optimal-configuration selection with the closed-form component minimizer
and is a descent method with finite termination. SG performs batch
subgradient steps; with the per-coordinate step size (the inverse of the
summed valence matrix scaled by 2/N) its update coincides with MM's
closed-form minimizer, which is how that mode is implemented so the two
iterate sequences agree bitwise. SSG updates on one randomly chosen
series at a time and is not a descent method, so the best solution seen
so far is tracked separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .series import as_sample, as_time_series, pack_sample

ALGORITHMS = ("sg", "mm", "ssg")
INIT_STRATEGIES = ("random-member", "random-series", "medoid", "subsample-medoid")


def step_schedule(t: int, sample_size: int, eta0: float = 0.05, eta1: float = 0.005) -> float:
    """Step size at iteration t >= 1.

    Decreases linearly from eta0 to eta1 over the first `sample_size`
    iterations (so the step at t = sample_size is exactly eta1), then
    stays at eta1.
    """
    if t < 1:
        raise ValueError(f"iteration index must be >= 1, got {t}")
    return float(_kernels.step_size(t, sample_size, eta0, eta1))


@dataclass
class SolverOptions:
    algorithm: str = "mm"
    max_epochs: int = 50
    init: str = "random-member"
    init_subsample: int | None = None  # subsample-medoid size
    eta0: float = 0.05
    eta1: float = 0.005
    seed: int = 0
    track_best_every: int = 1
    no_improvement_patience: int | None = None
    sg_step: str = "per-coordinate"  # or "scalar"
    ssg_sampling: str = "permutation"  # or "iid"
    fixed_point_tol: float = 1e-12

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be >= 1")
        if self.init not in INIT_STRATEGIES:
            raise ValueError(f"unknown init strategy {self.init!r}")
        if self.eta0 < 0:
            raise ValueError("eta0 must be nonnegative")
        if self.eta1 > self.eta0:
            raise ValueError("eta1 must not exceed eta0")
        if self.track_best_every < 1:
            raise ValueError("track_best_every must be >= 1")
        if self.sg_step not in ("per-coordinate", "scalar"):
            raise ValueError(f"unknown sg_step {self.sg_step!r}")
        if self.ssg_sampling not in ("permutation", "iid"):
            raise ValueError(f"unknown ssg_sampling {self.ssg_sampling!r}")


@dataclass
class MeanResult:
    best: np.ndarray
    best_variation: float
    trace: list[tuple[int, float]]  # (epoch, best-so-far variation V_A(e))
    visited_examples: int
    epochs_run: int
    terminated_by: str
    raw_trace: list[tuple[int, float]] = field(default_factory=list)  # (epoch, F(z^(e)))

    def trace_at(self, epoch: int) -> float:
        """Best-so-far variation at the latest tracked epoch <= `epoch`."""
        value = None
        for e, v in self.trace:
            if e <= epoch:
                value = v
        if value is None:
            raise ValueError(f"no trace entry at or before epoch {epoch}")
        return value


def pairwise_squared_sums(sample: list[np.ndarray]) -> np.ndarray:
    """sum_j dtw^2(x_k, x_j) for every k."""
    data, lengths = pack_sample(sample)
    sums = np.empty(len(sample))
    for k, xk in enumerate(sample):
        sums[k] = float(np.sum(_kernels.batch_eval(xk, data, lengths)))
    return sums


def init_solution(
    strategy: str,
    sample,
    rng: np.random.Generator,
    subsample_size: int | None = None,
) -> np.ndarray:
    """Initial candidate per strategy; ties in medoid selection go to the lowest index."""
    sample = as_sample(sample)
    count = len(sample)
    if strategy == "random-member":
        return sample[int(rng.integers(count))].copy()
    if strategy == "random-series":
        n = int(round(sum(x.shape[0] for x in sample) / count))
        return rng.standard_normal((max(n, 1), sample[0].shape[1]))
    if strategy == "medoid":
        return sample[int(np.argmin(pairwise_squared_sums(sample)))].copy()
    if strategy == "subsample-medoid":
        size = subsample_size if subsample_size is not None else min(count, 10)
        if size > count:
            raise ValueError(f"subsample size {size} exceeds sample size {count}")
        idx = rng.choice(count, size=size, replace=False)
        sub = [sample[int(i)] for i in idx]
        return sub[int(np.argmin(pairwise_squared_sums(sub)))].copy()
    raise ValueError(f"unknown init strategy {strategy!r}")


def _prepare(sample, opts: SolverOptions | None, init):
    opts = opts if opts is not None else SolverOptions()
    opts.validate()
    sample = as_sample(sample)
    rng = np.random.default_rng(opts.seed)
    if init is None:
        z0 = init_solution(opts.init, sample, rng, opts.init_subsample)
    else:
        z0 = as_time_series(init)
        if z0.shape[1] != sample[0].shape[1]:
            raise ValueError("initial solution dimension does not match the sample")
    data, lengths = pack_sample(sample)
    return sample, opts, rng, z0, data, lengths


def mm_mean(sample, opts: SolverOptions | None = None, init=None) -> MeanResult:
    """Majorize-minimize mean (DBA): alternate optimal alignment and averaging.

    Terminates when the Frechet variation stops decreasing (relative
    tolerance `fixed_point_tol`) or after `max_epochs` updates. At a
    fixed point the result satisfies the necessary optimality conditions.
    """
    sample, opts, rng, z, data, lengths = _prepare(sample, opts, init)
    count = len(sample)
    costs, valence_sum, warped_sum = _kernels.batch_align(z, data, lengths)
    visited = count
    f_prev = float(np.mean(costs))
    trace = [(0, f_prev)]
    terminated_by = "T1-max-epochs"
    epoch = 0
    for epoch in range(1, opts.max_epochs + 1):
        z = warped_sum / valence_sum[:, None]
        costs, valence_sum, warped_sum = _kernels.batch_align(z, data, lengths)
        visited += count
        f_curr = float(np.mean(costs))
        trace.append((epoch, f_curr))
        if abs(f_prev - f_curr) <= opts.fixed_point_tol * max(1.0, f_prev):
            terminated_by = "MM-fixed-point"
            break
        f_prev = f_curr
    return MeanResult(
        best=z,
        best_variation=trace[-1][1],
        trace=trace,
        visited_examples=visited,
        epochs_run=epoch,
        terminated_by=terminated_by,
        raw_trace=list(trace),
    )


def sg_mean(sample, opts: SolverOptions | None = None, init=None) -> MeanResult:
    """Batch subgradient mean: one update per epoch from the full-sample subgradient.

    With sg_step="per-coordinate" (default) the step is the inverse of
    (2/N) times the summed valence matrix, making the update identical
    to MM's closed-form minimizer. With sg_step="scalar" the schedule of
    `step_schedule` is applied with t counted in epochs.
    """
    sample, opts, rng, z, data, lengths = _prepare(sample, opts, init)
    count = len(sample)
    costs, valence_sum, warped_sum = _kernels.batch_align(z, data, lengths)
    visited = count
    f_curr = float(np.mean(costs))
    best = z.copy()
    best_f = f_curr
    trace = [(0, best_f)]
    raw_trace = [(0, f_curr)]
    last_improved = 0
    terminated_by = "T1-max-epochs"
    epoch = 0
    for epoch in range(1, opts.max_epochs + 1):
        if opts.sg_step == "per-coordinate":
            z = warped_sum / valence_sum[:, None]
        else:
            eta = step_schedule(epoch, count, opts.eta0, opts.eta1)
            grad = (2.0 / count) * (valence_sum[:, None] * z - warped_sum)
            z = z - eta * grad
        costs, valence_sum, warped_sum = _kernels.batch_align(z, data, lengths)
        visited += count
        f_curr = float(np.mean(costs))
        raw_trace.append((epoch, f_curr))
        if f_curr < best_f:
            best_f = f_curr
            best = z.copy()
            last_improved = epoch
        trace.append((epoch, best_f))
        if (
            opts.no_improvement_patience is not None
            and epoch - last_improved >= opts.no_improvement_patience
        ):
            terminated_by = "T2-no-improvement"
            break
    return MeanResult(
        best=best,
        best_variation=best_f,
        trace=trace,
        visited_examples=visited,
        epochs_run=epoch,
        terminated_by=terminated_by,
        raw_trace=raw_trace,
    )


def ssg_mean(sample, opts: SolverOptions | None = None, init=None) -> MeanResult:
    """Stochastic subgradient mean: one single-series update per iteration.

    An epoch is N iterations; by default each epoch visits the sample in
    a fresh seeded permutation (set ssg_sampling="iid" for independent
    draws). Not a descent method: the best solution so far is tracked
    every `track_best_every` epochs, and that evaluation is charged to
    the visited-examples counter.
    """
    sample, opts, rng, z, data, lengths = _prepare(sample, opts, init)
    count = len(sample)
    z = z.copy()
    best_f = float(np.mean(_kernels.batch_eval(z, data, lengths)))
    visited = count
    best = z.copy()
    trace = [(0, best_f)]
    raw_trace: list[tuple[int, float]] = [(0, best_f)]
    last_improved = 0
    terminated_by = "T1-max-epochs"
    t = 0
    epoch = 0
    for epoch in range(1, opts.max_epochs + 1):
        if opts.ssg_sampling == "permutation":
            order = rng.permutation(count)
        else:
            order = rng.integers(0, count, size=count)
        t = _kernels.ssg_epoch(
            z, data, lengths, order.astype(np.int64), t, count, opts.eta0, opts.eta1
        )
        visited += count
        if epoch % opts.track_best_every == 0 or epoch == opts.max_epochs:
            f_curr = float(np.mean(_kernels.batch_eval(z, data, lengths)))
            visited += count
            raw_trace.append((epoch, f_curr))
            if f_curr < best_f:
                best_f = f_curr
                best = z.copy()
                last_improved = epoch
            trace.append((epoch, best_f))
            if (
                opts.no_improvement_patience is not None
                and epoch - last_improved >= opts.no_improvement_patience
            ):
                terminated_by = "T2-no-improvement"
                break
    return MeanResult(
        best=best,
        best_variation=best_f,
        trace=trace,
        visited_examples=visited,
        epochs_run=epoch,
        terminated_by=terminated_by,
        raw_trace=raw_trace,
    )


def ssg_online(
    stream,
    init,
    schedule_horizon: int,
    eta0: float = 0.05,
    eta1: float = 0.005,
    max_updates: int | None = None,
) -> tuple[np.ndarray, int]:
    """Online SSG: consume a stream of series, update once each, discard.

    No best-solution tracking; terminates when the stream is exhausted or
    after `max_updates` updates (criterion T1). `schedule_horizon` plays
    the role of the sample size in the step-size schedule. Returns the
    final solution and the number of series processed.
    """
    z = as_time_series(init).copy()
    t = 0
    for x in stream:
        x = as_time_series(x)
        if x.shape[1] != z.shape[1]:
            raise ValueError("streamed series dimension does not match the solution")
        data = x.reshape(1, *x.shape)
        lengths = np.array([x.shape[0]], dtype=np.int64)
        order = np.zeros(1, dtype=np.int64)
        t = _kernels.ssg_epoch(z, data, lengths, order, t, schedule_horizon, eta0, eta1)
        if max_updates is not None and t >= max_updates:
            break
    return z, t


def compute_mean(sample, opts: SolverOptions | None = None, init=None) -> MeanResult:
    """Dispatch on opts.algorithm; used by the CLI."""
    opts = opts if opts is not None else SolverOptions()
    opts.validate()
    if opts.algorithm == "mm":
        return mm_mean(sample, opts, init)
    if opts.algorithm == "sg":
        return sg_mean(sample, opts, init)
    return ssg_mean(sample, opts, init)
