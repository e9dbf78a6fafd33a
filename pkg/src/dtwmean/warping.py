"""Warping paths, their matrix representations, and induced embeddings.

A warping path of order (m, n) is a sequence of 1-based index pairs that
starts at (1, 1), ends at (m, n), and moves by unit steps down, right, or
diagonally. The warping matrix W of a path is the boolean m x n matrix
with a one at every path point; the valence vector holds the row sums of
W. Each path also induces a pair of 0/1 embedding matrices (phi, psi)
whose rows are standard basis vectors selected by the path points; they
satisfy phi.T @ psi == W and phi.T @ phi == diag(valence).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

VALID_STEPS = frozenset({(1, 0), (0, 1), (1, 1)})


@dataclass(frozen=True)
class WarpingPath:
    """A monotone boundary-to-boundary alignment path, 1-based index pairs."""

    points: tuple[tuple[int, int], ...]
    order: tuple[int, int]

    def __len__(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return self.order[0]

    @property
    def n(self) -> int:
        return self.order[1]


@dataclass(frozen=True)
class AlignmentSummary:
    """Sparse warping matrix (list of unit-entry pairs) plus valence vector."""

    order: tuple[int, int]
    pairs: tuple[tuple[int, int], ...]
    valence: np.ndarray  # length m, positive integers

    def warping_dense(self) -> np.ndarray:
        """Materialize W as a dense m x n integer matrix (tests/oracles only)."""
        m, n = self.order
        w = np.zeros((m, n), dtype=np.int64)
        for i, j in self.pairs:
            w[i - 1, j - 1] = 1
        return w

    def valence_dense(self) -> np.ndarray:
        """Materialize V = diag(valence) as a dense m x m integer matrix."""
        return np.diag(self.valence)


@dataclass(frozen=True)
class EmbeddingPair:
    """Embedding matrices phi (L x m) and psi (L x n) induced by a path."""

    phi: np.ndarray
    psi: np.ndarray


@dataclass(frozen=True)
class Configuration:
    """An ordered list of warping paths, one per sample series.

    Path k has order (n, n_k), where n is the candidate-solution length
    and n_k the length of sample series k.
    """

    paths: tuple[WarpingPath, ...]

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)


def validate_path(path: WarpingPath) -> bool:
    """Check the boundary and step conditions against the declared order."""
    pts = path.points
    m, n = path.order
    if len(pts) == 0:
        return False
    if pts[0] != (1, 1) or pts[-1] != (m, n):
        return False
    for (i0, j0), (i1, j1) in zip(pts, pts[1:]):
        if (i1 - i0, j1 - j0) not in VALID_STEPS:
            return False
    return True


def require_valid(path: WarpingPath) -> None:
    if not validate_path(path):
        raise ValueError(f"invalid warping path of order {path.order}: {path.points}")


def alignment_summary(path: WarpingPath) -> AlignmentSummary:
    """Sparse warping matrix and valence vector of a valid path."""
    require_valid(path)
    m = path.order[0]
    valence = np.zeros(m, dtype=np.int64)
    for i, _ in path.points:
        valence[i - 1] += 1
    return AlignmentSummary(order=path.order, pairs=path.points, valence=valence)


def embeddings(path: WarpingPath) -> EmbeddingPair:
    """Embedding matrices of a valid path: row l of phi is e_{i_l}, of psi e_{j_l}."""
    require_valid(path)
    m, n = path.order
    length = len(path)
    phi = np.zeros((length, m), dtype=np.int64)
    psi = np.zeros((length, n), dtype=np.int64)
    for l, (i, j) in enumerate(path.points):
        phi[l, i - 1] = 1
        psi[l, j - 1] = 1
    return EmbeddingPair(phi=phi, psi=psi)


def format_path(path: WarpingPath) -> str:
    """Serialize as ``L;(i1,j1),(i2,j2),...`` (diagnostic dumps)."""
    pts = ",".join(f"({i},{j})" for i, j in path.points)
    return f"{len(path)};{pts}"


def parse_path(line: str) -> WarpingPath:
    """Parse the `format_path` serialization; the order is read off the last pair."""
    head, _, body = line.strip().partition(";")
    length = int(head)
    pts = []
    for chunk in body.split("),"):
        chunk = chunk.strip().strip("()")
        if not chunk:
            continue
        i_str, j_str = chunk.split(",")
        pts.append((int(i_str), int(j_str)))
    if len(pts) != length:
        raise ValueError(f"declared length {length} but found {len(pts)} points")
    path = WarpingPath(points=tuple(pts), order=pts[-1])
    require_valid(path)
    return path
