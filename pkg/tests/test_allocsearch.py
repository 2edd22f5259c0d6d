import pytest

from mixquant import (
    AllocationRangeError,
    CaseTag,
    ScanCapError,
    argmin_allocation,
    neighbor_descent,
    solve_n_means,
    variance,
)


class TestNeighborDescent:
    @pytest.mark.parametrize("n,k", [(30, 11), (51, 19), (1000, 386)])
    def test_fifth_endpoints(self, fifth, n, k):
        report = neighbor_descent(fifth, n)
        assert report.allocation.k == k

    @pytest.mark.parametrize("n,m", [(21, 12), (100, 56), (500, 279)])
    def test_third_endpoints(self, third, n, m):
        report = neighbor_descent(third, n)
        assert report.allocation.m == m

    def test_seed_and_steps_for_large_fifth(self, fifth):
        report = neighbor_descent(fifth, 1000)
        assert report.seed_k == 381
        assert report.descent_steps == 5

    def test_zero_steps_when_seed_exact(self, fifth):
        report = neighbor_descent(fifth, 51)
        assert report.seed_k == 19 and report.descent_steps == 0

    def test_descent_steps_stay_small_on_gapped_measures(self, hundredth, two_fifths, thousandth):
        for mu in (hundredth, two_fifths, thousandth):
            for n in (20, 100, 1000, 5011):
                assert neighbor_descent(mu, n).descent_steps <= 8

    def test_n_too_small(self, fifth):
        with pytest.raises(AllocationRangeError):
            neighbor_descent(fifth, 1)


class TestArgminAllocation:
    def test_third_two_means(self, third):
        report = argmin_allocation(third, 2)
        assert report.allocation.k == 1
        assert report.distortion == pytest.approx(1 / 12, rel=1e-12)

    def test_hundredth_three_means(self, hundredth):
        report = argmin_allocation(hundredth, 3)
        assert report.allocation.k == 1
        assert report.distortion == pytest.approx(103 / 43200, rel=1e-12)

    def test_fifth_three_means(self, fifth):
        report = argmin_allocation(fifth, 3)
        assert (report.allocation.k, report.allocation.m) == (1, 2)
        assert report.distortion == pytest.approx(0.0295695, abs=5e-8)

    def test_scan_cap(self, fifth):
        with pytest.raises(ScanCapError):
            argmin_allocation(fifth, 2500)
        report = argmin_allocation(fifth, 2, scan_cap=2)
        assert report.allocation.k == 1

    def test_matches_descent_on_sampled_sizes(self, fifth, third):
        for mu in (fifth, third):
            for n in (2, 3, 7, 23, 64, 150, 300):
                scan = argmin_allocation(mu, n)
                walk = neighbor_descent(mu, n)
                assert scan.allocation == walk.allocation
                assert abs(scan.distortion - walk.distortion) <= 1e-12


class TestSolveFrontDoor:
    def test_one_mean(self, fifth):
        report = solve_n_means(fifth, 1)
        assert report.points == pytest.approx((1.3,), rel=1e-13)
        assert report.distortion == pytest.approx(variance(fifth), rel=1e-13)

    def test_gapped_small_n_goes_through_enumeration(self, hundredth):
        report = solve_n_means(hundredth, 2)
        assert report.allocation.k == 0
        assert report.case_tag is CaseTag.FREE

    def test_gapped_large_n_uses_descent(self, hundredth):
        report = solve_n_means(hundredth, 40)
        assert report.case_tag is CaseTag.SEPARATED
        assert report.distortion == pytest.approx(
            argmin_allocation(hundredth, 40).distortion, rel=1e-12)

    def test_incremental_left_counts(self, fifth):
        # adding one point grows exactly one side's count
        prev = solve_n_means(fifth, 2).allocation.k
        for n in range(3, 202):
            cur = solve_n_means(fifth, n).allocation.k
            assert cur in (prev, prev + 1)
            prev = cur

    def test_error_strictly_decreasing_in_n(self, paper_presets):
        for name, mu in paper_presets.items():
            values = [solve_n_means(mu, n).distortion for n in range(1, 51)]
            assert all(b < a for a, b in zip(values, values[1:])), name

    def test_scaled_error_bounded(self, fifth, hundredth):
        for mu in (fifth, hundredth):
            vals = [n * n * solve_n_means(mu, n).distortion for n in (40, 80, 160, 320)]
            assert max(vals) <= 2.0 * min(vals)
