"""Benchmark protocols comparing the SSG and MM solvers, and derived metrics.

Protocol A runs both solvers once per trial from a shared random-member
initialization and records per-epoch variation traces. Protocol B nests
that over a list of subsample sizes. Variant records (SSG-1, SSG-e,
SSG-50, MM-1, MM-50) are derived from the two traces of a trial, never
by re-running. Runtime is measured by counting visited (processed)
sample series: e*N for a solver stopped after e epochs.
"""

from __future__ import annotations

import csv
import json
import warnings
import zlib
from dataclasses import dataclass

import numpy as np

from .datasets import Dataset, subsample
from .solvers import MeanResult, SolverOptions, mm_mean, ssg_mean


@dataclass(frozen=True)
class TrialRecord:
    dataset: str
    trial: int
    size: int
    seed: int
    variant: str
    final_variation: float
    visited_examples: int
    epochs_run: int
    trace: tuple[tuple[int, float], ...]


def _child_seed(master: int, dataset_name: str, trial: int, size: int) -> np.random.SeedSequence:
    tag = zlib.crc32(dataset_name.encode())
    return np.random.SeedSequence([master, tag, trial, size])


def _variant_records(
    dataset_name: str,
    trial: int,
    size: int,
    seed: int,
    epochs: int,
    ssg: MeanResult,
    mm: MeanResult,
) -> list[TrialRecord]:
    def rec(variant, final, visited, epochs_run, trace):
        return TrialRecord(
            dataset=dataset_name,
            trial=trial,
            size=size,
            seed=seed,
            variant=variant,
            final_variation=final,
            visited_examples=visited,
            epochs_run=epochs_run,
            trace=tuple(trace),
        )

    e_mm = mm.epochs_run
    return [
        rec("SSG-1", ssg.trace_at(1), size, 1, [p for p in ssg.trace if p[0] <= 1]),
        rec("SSG-e", ssg.trace_at(e_mm), e_mm * size, e_mm, [p for p in ssg.trace if p[0] <= e_mm]),
        rec(f"SSG-{epochs}", ssg.best_variation, epochs * size, epochs, ssg.trace),
        rec("MM-1", mm.trace_at(1), size, 1, [p for p in mm.trace if p[0] <= 1]),
        rec(f"MM-{epochs}", mm.best_variation, e_mm * size, e_mm, mm.trace),
    ]


def _run_cell(
    sample: list[np.ndarray],
    dataset_name: str,
    trial: int,
    size: int,
    master_seed: int,
    epochs: int,
) -> list[TrialRecord]:
    ss = _child_seed(master_seed, dataset_name, trial, size)
    rng = np.random.default_rng(ss)
    init = sample[int(rng.integers(len(sample)))]
    cell_seed = int(rng.integers(2**63))
    ssg = ssg_mean(
        sample,
        SolverOptions(algorithm="ssg", max_epochs=epochs, seed=cell_seed, track_best_every=1),
        init=init,
    )
    mm = mm_mean(sample, SolverOptions(algorithm="mm", max_epochs=epochs), init=init)
    return _variant_records(dataset_name, trial, size, cell_seed, epochs, ssg, mm)


def run_protocol_A(
    dataset: Dataset, trials: int = 30, epochs: int = 50, seed: int = 0
) -> list[TrialRecord]:
    """Per trial: shared random-member init, one SSG run and one MM run, full traces."""
    if len(dataset) < 1:
        raise ValueError("dataset is empty")
    records: list[TrialRecord] = []
    for trial in range(trials):
        records.extend(
            _run_cell(dataset.series, dataset.name, trial, len(dataset), seed, epochs)
        )
    return records


def run_protocol_B(
    dataset: Dataset,
    sizes: list[int],
    trials: int = 30,
    epochs: int = 50,
    seed: int = 0,
) -> list[TrialRecord]:
    """Nested trials x sizes loop over random subsamples, shared init per cell."""
    if max(sizes) > len(dataset):
        raise ValueError(f"size {max(sizes)} exceeds dataset size {len(dataset)}")
    records: list[TrialRecord] = []
    for trial in range(trials):
        for size in sizes:
            ss = _child_seed(seed, dataset.name + "#subsample", trial, size)
            sub = subsample(dataset, size, np.random.default_rng(ss))
            records.extend(
                _run_cell(sub.series, dataset.name, trial, size, seed, epochs)
            )
    return records


def _group_trials(records: list[TrialRecord]) -> tuple[list[str], dict]:
    variants: list[str] = []
    for r in records:
        if r.variant not in variants:
            variants.append(r.variant)
    groups: dict[tuple, dict[str, TrialRecord]] = {}
    for r in records:
        groups.setdefault((r.dataset, r.size, r.trial), {})[r.variant] = r
    for key, group in groups.items():
        if set(group) != set(variants):
            raise ValueError(f"trial {key} is missing variants: {set(variants) - set(group)}")
    return variants, groups


def wins_matrix(records: list[TrialRecord]) -> tuple[list[str], np.ndarray]:
    """Percentage of trials in which the row variant strictly beat the column variant."""
    variants, groups = _group_trials(records)
    v = len(variants)
    wins = np.zeros((v, v))
    for group in groups.values():
        for i, vi in enumerate(variants):
            for j, vj in enumerate(variants):
                if i != j and group[vi].final_variation < group[vj].final_variation:
                    wins[i, j] += 1
    return variants, 100.0 * wins / len(groups)


def percent_change_matrix(records: list[TrialRecord]) -> tuple[list[str], np.ndarray]:
    """Average per-trial percentage change 100 (V_j - V_i) / V_j.

    Trials with V_j = 0 contribute 0 when V_i = 0 as well, and are
    excluded with a warning otherwise.
    """
    variants, groups = _group_trials(records)
    v = len(variants)
    totals = np.zeros((v, v))
    counts = np.zeros((v, v))
    excluded = 0
    for group in groups.values():
        for i, vi in enumerate(variants):
            for j, vj in enumerate(variants):
                if i == j:
                    continue
                val_i = group[vi].final_variation
                val_j = group[vj].final_variation
                if val_j == 0.0:
                    if val_i == 0.0:
                        counts[i, j] += 1
                    else:
                        excluded += 1
                    continue
                totals[i, j] += 100.0 * (val_j - val_i) / val_j
                counts[i, j] += 1
    if excluded:
        warnings.warn(
            f"excluded {excluded} zero-denominator comparisons from percent change",
            stacklevel=2,
        )
    with np.errstate(invalid="ignore"):
        matrix = np.where(counts > 0, totals / np.maximum(counts, 1), 0.0)
    return variants, matrix


def _full_variants(records: list[TrialRecord]) -> tuple[str, str]:
    ssg_epochs = [int(r.variant[4:]) for r in records
                  if r.variant.startswith("SSG-") and r.variant[4:].isdigit()]
    mm_epochs = [int(r.variant[3:]) for r in records
                 if r.variant.startswith("MM-") and r.variant[3:].isdigit()]
    if not ssg_epochs or not mm_epochs:
        raise ValueError("records contain no full SSG/MM variant runs")
    return f"SSG-{max(ssg_epochs)}", f"MM-{max(mm_epochs)}"


def runtime_comparison(records: list[TrialRecord]) -> dict:
    """Visited-example comparison: SSG-e' (first epoch matching MM quality) vs MM.

    Trials where SSG never reaches MM's final variation are excluded and
    reported through the exclusion rate.
    """
    ssg_full, mm_full = _full_variants(records)
    _, groups = _group_trials(records)
    per_size: dict[int, dict] = {}
    excluded = 0
    total = 0
    for (dataset, size, trial), group in sorted(groups.items()):
        total += 1
        mm = group[mm_full]
        ssg = group[ssg_full]
        e_prime = None
        for epoch, variation in ssg.trace:
            if epoch >= 1 and variation <= mm.final_variation:
                e_prime = epoch
                break
        if e_prime is None:
            excluded += 1
            continue
        bucket = per_size.setdefault(size, {"ssg_visited": [], "mm_visited": []})
        bucket["ssg_visited"].append(e_prime * size)
        bucket["mm_visited"].append(mm.epochs_run * size)
    table = {}
    for size, bucket in sorted(per_size.items()):
        ssg_v = np.array(bucket["ssg_visited"], dtype=np.float64)
        mm_v = np.array(bucket["mm_visited"], dtype=np.float64)
        table[size] = {
            "trials": int(len(ssg_v)),
            "ssg_visited_median": float(np.median(ssg_v)),
            "mm_visited_median": float(np.median(mm_v)),
            "ssg_visited_mean": float(np.mean(ssg_v)),
            "mm_visited_mean": float(np.mean(mm_v)),
            "delta_mean": float(np.mean(mm_v - ssg_v)),
        }
    return {
        "per_size": table,
        "excluded_rate": excluded / total if total else 0.0,
        "excluded_trials": excluded,
        "total_trials": total,
    }


def write_records_csv(records: list[TrialRecord], path) -> None:
    """One row per TrialRecord (final values only)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["dataset", "trial", "size", "variant", "variation", "visited", "epochs", "seed"]
        )
        for r in records:
            writer.writerow(
                [r.dataset, r.trial, r.size, r.variant, repr(r.final_variation),
                 r.visited_examples, r.epochs_run, r.seed]
            )


def write_trace_csv(records: list[TrialRecord], path) -> None:
    """Long-format per-epoch traces: dataset,trial,size,variant,epoch,variation,visited,seed."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["dataset", "trial", "size", "variant", "epoch", "variation", "visited", "seed"]
        )
        for r in records:
            for epoch, variation in r.trace:
                writer.writerow(
                    [r.dataset, r.trial, r.size, r.variant, epoch, repr(variation),
                     epoch * r.size, r.seed]
                )


def summarize(records: list[TrialRecord]) -> dict:
    variants, wins = wins_matrix(records)
    _, pct = percent_change_matrix(records)
    runtime = runtime_comparison(records)
    return {
        "variants": variants,
        "wins": wins.tolist(),
        "pct_change": pct.tolist(),
        "runtime": runtime,
        "excluded_rate": runtime["excluded_rate"],
    }


def write_summary_json(records: list[TrialRecord], path) -> None:
    with open(path, "w") as fh:
        json.dump(summarize(records), fh, indent=2, sort_keys=True)
        fh.write("\n")
