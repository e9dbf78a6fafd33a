import numpy as np
import pytest

from dtwmean.warping import (
    WarpingPath,
    alignment_summary,
    embeddings,
    format_path,
    parse_path,
    validate_path,
)
from dtwmean.dtw import alignment_cost

from conftest import random_valid_path


def P(points, order):
    return WarpingPath(points=tuple(points), order=tuple(order))


class TestValidatePath:
    def test_degenerate_single_point(self):
        assert validate_path(P([(1, 1)], (1, 1)))

    def test_pure_diagonal(self):
        assert validate_path(P([(1, 1), (2, 2)], (2, 2)))

    def test_boundary_violation(self):
        assert not validate_path(P([(1, 1), (2, 2)], (3, 2)))

    def test_bad_start(self):
        assert not validate_path(P([(1, 2), (2, 2)], (2, 2)))

    def test_bad_step(self):
        assert not validate_path(P([(1, 1), (3, 3)], (3, 3)))
        assert not validate_path(P([(1, 1), (1, 1), (2, 2)], (2, 2)))
        assert not validate_path(P([(1, 1), (2, 2), (1, 2), (2, 2)], (2, 2)))

    def test_empty(self):
        assert not validate_path(P([], (1, 1)))

    def test_random_paths_valid(self, rng):
        for _ in range(100):
            m = int(rng.integers(1, 7))
            n = int(rng.integers(1, 7))
            assert validate_path(random_valid_path(rng, m, n))


class TestAlignmentSummary:
    def test_vertical_then_diagonal(self):
        s = alignment_summary(P([(1, 1), (2, 1), (2, 2)], (2, 2)))
        assert np.array_equal(s.warping_dense(), [[1, 0], [1, 1]])
        assert np.array_equal(s.valence, [1, 2])

    def test_diagonal_identity(self):
        s = alignment_summary(P([(1, 1), (2, 2), (3, 3)], (3, 3)))
        assert np.array_equal(s.warping_dense(), np.eye(3, dtype=np.int64))
        assert np.array_equal(s.valence, [1, 1, 1])

    def test_horizontal_then_diagonal(self):
        s = alignment_summary(P([(1, 1), (1, 2), (2, 2)], (2, 2)))
        assert np.array_equal(s.warping_dense(), [[1, 1], [0, 1]])
        assert np.array_equal(s.valence, [2, 1])

    def test_invalid_path_rejected(self):
        with pytest.raises(ValueError):
            alignment_summary(P([(1, 1), (2, 2)], (3, 2)))

    def test_valence_dense_is_diagonal(self):
        s = alignment_summary(P([(1, 1), (2, 1), (2, 2)], (2, 2)))
        assert np.array_equal(s.valence_dense(), np.diag([1, 2]))

    def test_random_valence_is_row_sum(self, rng):
        for _ in range(100):
            m = int(rng.integers(1, 8))
            n = int(rng.integers(1, 8))
            path = random_valid_path(rng, m, n)
            s = alignment_summary(path)
            w = s.warping_dense()
            assert np.array_equal(w.sum(axis=1), s.valence)
            assert np.all(s.valence >= 1)
            assert np.all(w.sum(axis=0) >= 1)
            assert int(s.valence.sum()) == len(path)


class TestEmbeddings:
    def test_diagonal_identity(self):
        e = embeddings(P([(1, 1), (2, 2)], (2, 2)))
        assert np.array_equal(e.phi, np.eye(2, dtype=np.int64))
        assert np.array_equal(e.psi, np.eye(2, dtype=np.int64))

    def test_vertical_then_diagonal(self):
        e = embeddings(P([(1, 1), (2, 1), (2, 2)], (2, 2)))
        assert np.array_equal(e.phi, [[1, 0], [0, 1], [0, 1]])
        assert np.array_equal(e.psi, [[1, 0], [1, 0], [0, 1]])

    def test_random_identities(self, rng):
        for _ in range(200):
            m = int(rng.integers(1, 8))
            n = int(rng.integers(1, 8))
            path = random_valid_path(rng, m, n)
            s = alignment_summary(path)
            e = embeddings(path)
            assert np.array_equal(e.phi.T @ e.psi, s.warping_dense())
            assert np.array_equal(e.phi.T @ e.phi, s.valence_dense())

    def test_random_cost_identity(self, rng):
        for _ in range(200):
            m = int(rng.integers(1, 7))
            n = int(rng.integers(1, 7))
            d = int(rng.integers(1, 4))
            path = random_valid_path(rng, m, n)
            x = rng.normal(size=(m, d))
            y = rng.normal(size=(n, d))
            e = embeddings(path)
            frob = float(np.sum((e.phi @ x - e.psi @ y) ** 2))
            cost = alignment_cost(x, y, path)
            assert cost == pytest.approx(frob, rel=1e-12, abs=1e-15)


class TestSerialization:
    def test_format(self):
        assert format_path(P([(1, 1), (2, 1), (2, 2)], (2, 2))) == "3;(1,1),(2,1),(2,2)"

    def test_round_trip(self, rng):
        for _ in range(50):
            m = int(rng.integers(1, 8))
            n = int(rng.integers(1, 8))
            path = random_valid_path(rng, m, n)
            assert parse_path(format_path(path)) == path

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            parse_path("2;(1,1)")

    def test_invalid_points(self):
        with pytest.raises(ValueError):
            parse_path("2;(1,1),(3,3)")
