import numpy as np
import pytest

from dtwmean.frechet import (
    component_gradient,
    component_minimizer,
    component_value,
    frechet_alignment,
    frechet_variation,
    optimal_configuration,
)
from dtwmean.warping import Configuration, WarpingPath

from conftest import finite_difference_gradient, random_sample, random_valid_path


def P(points, order):
    return WarpingPath(points=tuple(points), order=tuple(order))


def diag(n):
    return P([(i, i) for i in range(1, n + 1)], (n, n))


class TestFrechetVariation:
    def test_copies_of_z(self, rng):
        z = rng.normal(size=(4, 2))
        assert frechet_variation(z, [z.copy() for _ in range(5)]) == 0.0

    def test_single_series(self):
        assert frechet_variation([0.0, 0.0], [np.array([1.0, 1.0])]) == 2.0

    def test_two_series(self):
        sample = [np.array([1.0, 1.0]), np.array([-1.0, -1.0])]
        assert frechet_variation([0.0, 0.0], sample) == 2.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            frechet_variation(np.zeros((2, 2)), [np.zeros((2, 1))])


class TestOptimalConfiguration:
    def test_identical_series_diagonal(self, rng):
        z = rng.normal(size=(4, 1))
        config = optimal_configuration(z, [z.copy()])
        assert config.paths[0] == diag(4)

    def test_unit_pair_diagonal(self):
        config = optimal_configuration([0.0, 0.0], [np.array([1.0, 1.0])])
        assert config.paths[0] == P([(1, 1), (2, 2)], (2, 2))

    def test_activity(self, rng):
        for _ in range(50):
            sample = random_sample(rng, int(rng.integers(1, 5)), d=1)
            z = rng.normal(size=(int(rng.integers(2, 6)), 1))
            variation, config = frechet_alignment(z, sample)
            assert component_value(z, sample, config) == pytest.approx(
                variation, rel=1e-12, abs=1e-12
            )
            assert variation == pytest.approx(frechet_variation(z, sample), rel=1e-12)


class TestComponentValue:
    def test_equals_variation_at_optimum(self, rng):
        sample = random_sample(rng, 3, d=2)
        z = rng.normal(size=(4, 2))
        config = optimal_configuration(z, sample)
        assert component_value(z, sample, config) == pytest.approx(
            frechet_variation(z, sample), rel=1e-12
        )

    def test_unit_pair(self):
        sample = [np.array([1.0, 1.0])]
        config = Configuration(paths=(P([(1, 1), (2, 2)], (2, 2)),))
        assert component_value([0.0, 0.0], sample, config) == 2.0

    def test_suboptimal_path_dominates(self):
        sample = [np.array([1.0, 1.0])]
        config = Configuration(paths=(P([(1, 1), (1, 2), (2, 2)], (2, 2)),))
        value = component_value([0.0, 0.0], sample, config)
        assert value == 3.0
        assert value >= frechet_variation([0.0, 0.0], sample)

    def test_dominates_variation_on_random_configs(self, rng):
        for _ in range(50):
            sample = random_sample(rng, 3, d=1, min_len=2, max_len=5)
            z = rng.normal(size=(3, 1))
            config = Configuration(
                paths=tuple(random_valid_path(rng, 3, x.shape[0]) for x in sample)
            )
            assert component_value(z, sample, config) >= frechet_variation(
                z, sample
            ) - 1e-12

    def test_wrong_path_count(self):
        sample = [np.array([1.0, 1.0])]
        with pytest.raises(ValueError):
            component_value([0.0, 0.0], sample, Configuration(paths=()))


class TestComponentGradient:
    def test_zero_at_identical(self, rng):
        z = rng.normal(size=(4, 1))
        config = Configuration(paths=(diag(4),))
        assert np.array_equal(component_gradient(z, [z.copy()], config), np.zeros((4, 1)))

    def test_unit_pair(self):
        config = Configuration(paths=(P([(1, 1), (2, 2)], (2, 2)),))
        grad = component_gradient([0.0, 0.0], [np.array([1.0, 1.0])], config)
        assert np.array_equal(grad, [[-2.0], [-2.0]])

    def test_matches_finite_differences(self, rng):
        for _ in range(50):
            count = int(rng.integers(1, 5))
            d = int(rng.integers(1, 4))
            sample = random_sample(rng, count, d=d)
            z = rng.normal(size=(int(rng.integers(2, 6)), d))
            config = optimal_configuration(z, sample)
            grad = component_gradient(z, sample, config)
            fd = finite_difference_gradient(z, sample, config)
            scale = max(1.0, float(np.max(np.abs(fd))))
            assert np.max(np.abs(grad - fd)) / scale <= 1e-6


class TestComponentMinimizer:
    def test_euclidean_mean_case(self, rng):
        sample = [rng.normal(size=(4, 2)) for _ in range(5)]
        config = Configuration(paths=(diag(4),) * 5)
        expected = np.mean(np.stack(sample), axis=0)
        assert np.allclose(component_minimizer(sample, config), expected, rtol=1e-14)

    def test_two_series(self):
        sample = [np.array([0.0, 0.0]), np.array([2.0, 2.0])]
        config = Configuration(paths=(diag(2), diag(2)))
        assert np.array_equal(component_minimizer(sample, config), [[1.0], [1.0]])

    def test_gradient_vanishes_at_minimizer(self, rng):
        for _ in range(30):
            sample = random_sample(rng, int(rng.integers(1, 5)), d=2)
            z = rng.normal(size=(4, 2))
            config = optimal_configuration(z, sample)
            z_star = component_minimizer(sample, config)
            grad = component_gradient(z_star, sample, config)
            assert np.max(np.abs(grad)) <= 1e-10

    def test_is_component_minimum_in_perturbation_ball(self, rng):
        sample = random_sample(rng, 3, d=1)
        z = rng.normal(size=(4, 1))
        config = optimal_configuration(z, sample)
        z_star = component_minimizer(sample, config)
        value = component_value(z_star, sample, config)
        for _ in range(100):
            perturbed = z_star + rng.normal(0.0, 0.1, size=z_star.shape)
            assert component_value(perturbed, sample, config) >= value - 1e-12
