import time

import numpy as np
import pytest

from mixquant import (
    DiscreteMeasure,
    EmptyCellError,
    discretize,
    dp_optimal_quantizer,
    lloyd,
    make_mixed_uniform,
    solve_n_means,
    variance,
)

from conftest import random_two_piece
from test_casesolver import assert_centroid_fixed_point


class TestDiscretize:
    def test_midpoint_rule_two_atoms(self):
        mu = make_mixed_uniform([(0, 1, 1.0)])
        dm = discretize(mu, 10)
        assert dm.size == 10
        assert dm.positions[0] == pytest.approx(0.05)
        assert dm.weights.sum() == pytest.approx(1.0, abs=1e-15)

    def test_minimum_one_atom_per_segment(self, hundredth):
        dm = discretize(hundredth, 100)
        left = dm.positions < 0.5
        assert left.sum() == 1 and (~left).sum() == 99

    def test_atom_count_near_target(self, paper_presets):
        for mu in paper_presets.values():
            dm = discretize(mu, 100_000)
            assert 100_000 <= dm.size <= 100_000 + len(mu.segments)

    def test_rejects_tiny_grids(self, fifth):
        with pytest.raises(ValueError):
            discretize(fifth, 9)


class TestDiscreteMeasureValidation:
    def test_rejects_unsorted(self):
        with pytest.raises(ValueError):
            DiscreteMeasure(np.array([1.0, 0.0]), np.array([0.5, 0.5]))

    def test_rejects_bad_mass(self):
        with pytest.raises(ValueError):
            DiscreteMeasure(np.array([0.0, 1.0]), np.array([0.5, 0.4]))


class TestDynamicProgram:
    def test_one_point_is_mean_and_variance(self):
        dm = DiscreteMeasure(np.array([0.0, 1.0]), np.array([0.5, 0.5]))
        res = dp_optimal_quantizer(dm, 1)
        assert res.points == pytest.approx((0.5,))
        assert res.error == pytest.approx(0.25, rel=1e-14)

    def test_point_per_atom_is_exact(self):
        dm = DiscreteMeasure(np.array([0.0, 1.0]), np.array([0.5, 0.5]))
        res = dp_optimal_quantizer(dm, 2)
        assert res.points == (0.0, 1.0)
        assert res.error == 0.0

    def test_error_nonincreasing_in_n(self, fifth):
        dm = discretize(fifth, 5000)
        errs = [dp_optimal_quantizer(dm, n).error for n in range(1, 9)]
        assert all(b <= a for a, b in zip(errs, errs[1:]))

    def test_methods_identical(self):
        rng = np.random.default_rng(11)
        for trial in range(6):
            mu = random_two_piece(rng, gapped=bool(trial % 2))
            dm = discretize(mu, 1500)
            for n in (1, 2, 3, 5, 8):
                a = dp_optimal_quantizer(dm, n, method="dac")
                b = dp_optimal_quantizer(dm, n, method="reference")
                assert a.error == b.error
                assert a.points == b.points

    def test_unknown_method(self, fifth):
        with pytest.raises(ValueError):
            dp_optimal_quantizer(discretize(fifth, 100), 2, method="exact")

    def test_refinement_converges_to_solver(self, paper_presets):
        # decreasing gap across grids, final relative gap under 5e-4
        for name, mu in paper_presets.items():
            for n in (1, 3, 5):
                target = solve_n_means(mu, n).distortion
                gaps = []
                for m in (1000, 10_000, 100_000):
                    dp = dp_optimal_quantizer(discretize(mu, m), n)
                    gaps.append(abs(dp.error - target) / target)
                assert gaps[2] <= gaps[1] <= gaps[0], (name, n, gaps)
                assert gaps[2] < 5e-4, (name, n)

    def test_large_grid_runtime(self, fifth):
        dm = discretize(fifth, 100_000)
        start = time.monotonic()
        dp_optimal_quantizer(dm, 5)
        assert time.monotonic() - start < 60.0


class TestLloyd:
    def test_third_two_means_fixed_point(self, third):
        res = lloyd(third, [0.4, 1.6])
        assert res.points == pytest.approx((0.5, 1.5), abs=1e-10)
        assert res.error == pytest.approx(1 / 12, rel=1e-10)

    def test_uniform_equal_spacing(self):
        mu = make_mixed_uniform([(0, 1, 1.0)])
        res = lloyd(mu, [0.1, 0.2])
        assert res.points == pytest.approx((0.25, 0.75), abs=1e-9)
        assert res.error == pytest.approx(1 / 48, rel=1e-9)

    def test_massless_cell_raises(self, hundredth):
        with pytest.raises(EmptyCellError):
            lloyd(hundredth, [0.45, 0.5, 0.55])

    def test_duplicate_init_rejected(self, fifth):
        with pytest.raises(ValueError):
            lloyd(fifth, [0.5, 0.5])

    def test_fixed_points_satisfy_centroid_conditions(self, paper_presets):
        for name, mu in paper_presets.items():
            span = mu.support_hi - mu.support_lo
            init = [mu.support_lo + f * span for f in (0.2, 0.5, 0.8)]
            try:
                res = lloyd(mu, init)
            except EmptyCellError:
                continue
            assert_centroid_fixed_point(mu, res.points)
            assert res.iterations > 0

    def test_never_better_than_dp(self, fifth):
        res = lloyd(fifth, [0.3, 0.6, 1.2])
        dp = dp_optimal_quantizer(discretize(fifth, 100_000), 3)
        assert res.error >= dp.error * (1 - 5e-4)

    def test_one_mean_is_variance(self, two_fifths):
        res = lloyd(two_fifths, [0.5])
        assert res.error == pytest.approx(variance(two_fifths), rel=1e-12)
