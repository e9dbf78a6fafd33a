"""Tour of the DTW engine: distances, optimal paths, and exhaustive oracles.

Run: python3 demos/demo_dtw.py
"""

import numpy as np

from dtwmean import (
    alignment_cost,
    delannoy,
    dtw,
    dtw_brute_force,
    enumerate_paths,
    format_path,
)


def main():
    x = np.array([0.0, 1.0, 2.0, 1.0, 0.0])
    y = np.array([0.0, 1.0, 1.0, 2.0, 1.0, 0.0])

    result = dtw(x, y)
    print(f"dtw(x, y) = {result.distance:.6f}")
    print(f"optimal path: {format_path(result.path)}")
    print(f"path cost recomputed: {alignment_cost(x, y, result.path):.6f}")

    # the dynamic program agrees with exhaustive path enumeration
    exact = dtw_brute_force(x, y)
    print(f"brute-force oracle:   {exact.distance:.6f}")

    # how many warping paths are there to search through?
    for m, n in [(2, 2), (3, 3), (5, 6), (8, 8)]:
        print(f"delannoy({m},{n}) = {delannoy(m, n)} paths")
    paths = enumerate_paths(3, 3)
    print(f"all {len(paths)} paths of order (3,3):")
    for p in paths:
        print("  ", format_path(p))

    # warping absorbs local time shifts: a repeated element costs nothing
    print(f"dtw((1,2,3), (1,2,2,3)) = {dtw([1.0, 2.0, 3.0], [1.0, 2.0, 2.0, 3.0]).distance}")


if __name__ == "__main__":
    main()
