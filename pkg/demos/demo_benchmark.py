"""Desk-scale benchmark: SSG vs MM across trials and subsample sizes.

Runs the nested trials x sizes protocol on a synthetic dataset and
prints the derived comparison metrics: wins matrix, percent change,
and the visited-examples runtime proxy.

Run: python3 demos/demo_benchmark.py
"""

import numpy as np

from dtwmean import (
    percent_change_matrix,
    run_protocol_B,
    runtime_comparison,
    synth_sines,
    wins_matrix,
)


def show_matrix(title, variants, matrix):
    print(f"\n{title}")
    width = max(len(v) for v in variants) + 2
    print(" " * width + "".join(f"{v:>{width}}" for v in variants))
    for name, row in zip(variants, matrix):
        print(f"{name:>{width}}" + "".join(f"{v:>{width}.1f}" for v in row))


def main():
    dataset = synth_sines(200, 32, 0.1, np.random.default_rng(0))
    records = run_protocol_B(dataset, sizes=[20, 100], trials=10, epochs=25, seed=0)
    print(f"collected {len(records)} trial records")

    variants, wins = wins_matrix(records)
    show_matrix("wins (% of trials row beat column)", variants, wins)

    _, pct = percent_change_matrix(records)
    show_matrix("mean percent change (positive: row better)", variants, pct)

    table = runtime_comparison(records)
    print("\nvisited examples until SSG matches MM-final quality:")
    for size, cell in table["per_size"].items():
        print(f"  size {size:4d}: SSG median {cell['ssg_visited_median']:.0f} "
              f"vs MM median {cell['mm_visited_median']:.0f} "
              f"(mean delta {cell['delta_mean']:.0f})")
    print(f"excluded trials (SSG never reached MM quality): "
          f"{table['excluded_trials']}/{table['total_trials']}")


if __name__ == "__main__":
    main()
