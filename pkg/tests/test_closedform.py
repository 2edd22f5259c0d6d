import math

import numpy as np
import pytest

from mixquant import (
    AllocationRangeError,
    GapError,
    Segment,
    conditional_mean,
    f_of_n,
    high_resolution_seed,
    left_seed_fifth,
    right_seed_third,
    seed_allocation,
    split_quantizer,
    uniform_quantizer,
)
from mixquant.closedform import split_error

from conftest import random_two_piece


class TestUniformQuantizer:
    def test_single_point_unit_interval(self):
        res = uniform_quantizer(Segment(0, 1, 1.0), 1)
        assert res.points == (0.5,)
        assert res.error == pytest.approx(1 / 12, rel=1e-14)

    def test_right_piece_of_hundredth(self):
        res = uniform_quantizer(Segment(2 / 3, 1.0, 0.99), 1)
        assert res.points[0] == pytest.approx(5 / 6, rel=1e-14)
        assert res.error == pytest.approx(11 / 1200, rel=1e-13)

    def test_two_points_on_left_third(self):
        res = uniform_quantizer(Segment(0, 1 / 3, 0.01), 2)
        assert res.points == pytest.approx((1 / 12, 1 / 4), rel=1e-14)
        assert res.error == pytest.approx((1 / 27) * (3 / 100) / 48, rel=1e-13)

    def test_rejects_zero_points(self):
        with pytest.raises(AllocationRangeError):
            uniform_quantizer(Segment(0, 1, 1.0), 0)

    @pytest.mark.parametrize("n", [1, 2, 5, 17])
    def test_points_are_cell_conditional_means(self, n, hundredth):
        seg = hundredth.segments[1]
        res = uniform_quantizer(seg, n)
        bounds = np.linspace(seg.lo, seg.hi, n + 1)
        for p, lo, hi in zip(res.points, bounds, bounds[1:]):
            assert p == pytest.approx(conditional_mean(hundredth, lo, hi), rel=1e-12)


class TestSplitQuantizer:
    def test_hundredth_three_means(self, hundredth):
        res = split_quantizer(hundredth, 3, 1)
        assert res.points == pytest.approx((1 / 6, 3 / 4, 11 / 12), rel=1e-14)
        assert res.error == pytest.approx(103 / 43200, rel=1e-13)

    def test_two_fifths_four_means(self, two_fifths):
        res = split_quantizer(two_fifths, 4, 2)
        assert res.points == pytest.approx((1 / 12, 1 / 4, 3 / 4, 11 / 12), rel=1e-14)
        assert res.error == pytest.approx(1 / 432, rel=1e-13)

    def test_thousandth_five_means(self, thousandth):
        res = split_quantizer(thousandth, 5, 1)
        assert res.points == pytest.approx((1 / 6, 17 / 24, 19 / 24, 7 / 8, 23 / 24), rel=1e-14)
        assert res.error == pytest.approx(0.000587384, abs=5e-7)

    def test_connected_support_rejected(self, fifth):
        with pytest.raises(GapError):
            split_quantizer(fifth, 3, 1)

    def test_out_of_range_k_rejected(self, hundredth):
        with pytest.raises(AllocationRangeError):
            split_quantizer(hundredth, 3, 3)
        with pytest.raises(AllocationRangeError):
            split_quantizer(hundredth, 3, 0)

    @pytest.mark.parametrize("seed", range(5))
    def test_points_satisfy_centroid_condition(self, seed):
        rng = np.random.default_rng(3000 + seed)
        mu = random_two_piece(rng, gapped=True)
        n = int(rng.integers(4, 12))
        k = int(rng.integers(1, n))
        res = split_quantizer(mu, n, k)
        pts = res.points
        bounds = [mu.support_lo]
        bounds += [0.5 * (a + b) for a, b in zip(pts, pts[1:])]
        bounds += [mu.support_hi]
        for p, lo, hi in zip(pts, bounds, bounds[1:]):
            assert abs(p - conditional_mean(mu, lo, hi)) <= 1e-12


class TestAllocationFunction:
    def test_examples(self, hundredth, two_fifths):
        assert f_of_n(hundredth, 8) == 2
        assert f_of_n(hundredth, 4985) == 886
        assert f_of_n(two_fifths, 2) == 1

    def test_matches_exhaustive_scan(self, thousandth):
        for n in range(2, 101):
            brute = min(range(1, n), key=lambda k: (split_error(thousandth, n, k), k))
            assert f_of_n(thousandth, n) == brute

    @pytest.mark.parametrize("seed", range(4))
    def test_split_distortion_single_local_minimum(self, seed):
        # discrete strict convexity: one sign change in the difference sequence
        rng = np.random.default_rng(4000 + seed)
        mu = random_two_piece(rng, gapped=True)
        n = int(rng.integers(6, 40))
        vals = [split_error(mu, n, k) for k in range(1, n)]
        diffs = [b - a for a, b in zip(vals, vals[1:])]
        descents = [d < 0 for d in diffs]
        # once the sequence starts rising it never falls again
        first_rise = descents.index(False) if False in descents else len(descents)
        assert all(not d for d in descents[first_rise:])

    def test_gap_required(self, fifth):
        with pytest.raises(GapError):
            f_of_n(fifth, 5)


class TestSeeds:
    def test_fifth_sequence_values(self):
        assert left_seed_fifth(30) == 11
        assert left_seed_fifth(51) == 19
        assert left_seed_fifth(1000) == 381

    def test_third_sequence_values(self):
        assert right_seed_third(21) == 12
        assert right_seed_third(100) == 57
        assert right_seed_third(500) == 286

    def test_named_measures_use_floor_laws(self, fifth, third):
        assert seed_allocation(fifth, 30) == 11
        assert seed_allocation(fifth, 1000) == 381
        assert seed_allocation(third, 100) == 100 - 57

    def test_generic_measure_uses_high_resolution_estimate(self, hundredth):
        assert seed_allocation(hundredth, 5000) == 889
        assert seed_allocation(hundredth, 5000) == high_resolution_seed(hundredth, 5000)

    def test_seed_clamped_to_valid_range(self, hundredth):
        assert seed_allocation(hundredth, 2) == 1

    @pytest.mark.parametrize("mu_key", ["hundredth", "two_fifths", "thousandth"])
    def test_seed_tracks_f_within_six(self, mu_key, request):
        mu = request.getfixturevalue(mu_key)
        for n in list(range(2, 200)) + [1000, 2500, 5011]:
            assert abs(seed_allocation(mu, n) - f_of_n(mu, n)) <= 6


class TestAsymptotics:
    @pytest.mark.parametrize("mu_key,p", [("hundredth", 0.01), ("two_fifths", 0.4), ("thousandth", 0.001)])
    def test_scaled_error_approaches_high_resolution_limit(self, mu_key, p, request):
        # n^2 V_n -> L^2 (p^(1/3) + q^(1/3))^3 / 12 for equal piece lengths L
        mu = request.getfixturevalue(mu_key)
        L = 1 / 3
        limit = L * L * (p ** (1 / 3) + (1 - p) ** (1 / 3)) ** 3 / 12
        for n in (100, 300, 1000):
            v = split_error(mu, n, f_of_n(mu, n))
            assert n * n * v == pytest.approx(limit, rel=0.05)

    def test_split_error_nonincreasing_in_n(self, hundredth):
        vals = [split_error(hundredth, n, f_of_n(hundredth, n)) for n in range(3, 200)]
        assert all(b < a for a, b in zip(vals, vals[1:]))
