"""
Unit tests for the Monte Carlo DOA simulator
Tests RMSE statistics, seeding, sweeps and the estimation trends of the channel
"""

import math
from dataclasses import replace

import numpy as np
import pytest

from app.errors import DomainError
from app.models.experiment import ExperimentConfig, RmseReport
from app.utils.simulator import (DoaSimulator, cross_term_envelope, cross_term_magnitude, resolve_medium,
                                 rmse, rmse_stderr, run_trial, sweep, trial_rng)

# 5-6 THz observed for 10 ps: 11 bins, searched over 0-20 degrees
FAST = ExperimentConfig(f_start_thz=5.0, bandwidth_thz=1.0, observation_ps=10.0,
                        angle_min_deg=0.0, angle_max_deg=20.0, angle_step_deg=0.01,
                        snapshots=20, runs=30)


def rmse_by_value(reports):
    return {r.sweep_value: r.rmse_deg for r in reports}


class TestStatistics:
    """RMSE and standard error tests"""

    def test_rmse(self):
        """Test RMSE of a symmetric error pair"""
        assert rmse([9.0, 11.0], 10.0) == pytest.approx(1.0)
        assert rmse([10.0], 10.0) == 0.0

    def test_rmse_needs_estimates(self):
        """Test an empty estimate list is rejected"""
        with pytest.raises(DomainError):
            rmse([], 0.0)

    def test_stderr(self):
        """Test the delta-method standard error"""
        assert rmse_stderr([10.0, 12.0], 10.0) == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-12)
        assert rmse_stderr([9.0, 11.0], 10.0) == 0.0
        assert rmse_stderr([12.0], 10.0) == 0.0
        assert rmse_stderr([10.0, 10.0], 10.0) == 0.0

    def test_report_fields(self):
        """Test run count and errors derived from stored estimates"""
        report = RmseReport(1.0, 1.0, 0.0, (9.0, 11.0), 10.0, 0)
        assert report.n_run == 2
        assert report.errors.tolist() == [-1.0, 1.0]


class TestCrossTerm:
    """Signal / self-noise cross-correlation bound tests"""

    def test_known_value(self):
        """Test the cross term at 6 THz, 0.5 m and k = 2 /m"""
        assert cross_term_magnitude(6e12, 0.5, 2.0) == pytest.approx(3.049e-11, rel=1e-3)

    def test_vanishes_without_absorption(self):
        """Test no absorption means no cross term"""
        assert cross_term_magnitude(6e12, 0.5, 0.0) == 0.0

    def test_envelope_bounds_every_absorption(self):
        """Test the envelope dominates the cross term for any k and larger d, f_o"""
        rng = np.random.default_rng(3)
        envelope = cross_term_envelope(1e12, 0.1)
        for _ in range(1000):
            f_o = rng.uniform(1e12, 10e12)
            distance = rng.uniform(0.1, 10.0)
            k = 10 ** rng.uniform(-4, 2)
            assert cross_term_magnitude(f_o, distance, k) <= envelope

    def test_negligible_at_working_distances(self):
        """Test the cross term stays below 1e-8 from 0.1 m and below 1e-3 at 1 mm"""
        assert cross_term_envelope(2e12, 0.1) < 1e-8
        assert cross_term_envelope(2e12, 1e-3) < 1e-3

    def test_invalid_inputs(self):
        """Test non-physical inputs are rejected"""
        with pytest.raises(DomainError):
            cross_term_magnitude(0.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            cross_term_magnitude(1e12, 1.0, -1.0)


class TestExperimentConfig:
    """Sweep expansion tests"""

    def test_points_without_sweep(self):
        """Test a config without sweep values is a single point"""
        points = FAST.points()
        assert len(points) == 1
        assert points[0][0] == FAST.distance_m and points[0][1] is None

    def test_secondary_axis_varies_fastest(self):
        """Test two-axis sweeps enumerate the secondary axis innermost"""
        config = replace(FAST, sweep_values=(0.5, 1.0), secondary_axis="order", secondary_values=(1.0, 6.0))
        points = config.points()
        assert [(p, s) for p, s, _ in points] == [(0.5, 1.0), (0.5, 6.0), (1.0, 1.0), (1.0, 6.0)]
        assert points[1][2].order == 6 and points[1][2].distance_m == 0.5

    def test_integer_axis_rounding(self):
        """Test integer axes come back as ints"""
        point = FAST.with_value("snapshots", 7.0)
        assert point.snapshots == 7 and isinstance(point.snapshots, int)

    def test_unknown_axis(self):
        """Test unknown sweep axes are rejected"""
        with pytest.raises(DomainError):
            replace(FAST, sweep_axis="temperature")

    def test_resolve_medium(self):
        """Test bundled profiles resolve by name"""
        assert np.all(resolve_medium(replace(FAST, medium_profile="vacuum")).k == 0)
        assert np.allclose(resolve_medium(replace(FAST, medium_profile="constant", medium_k_per_m=0.3)).k, 0.3)
        with pytest.raises(DomainError):
            resolve_medium(replace(FAST, medium_profile="file"))


class TestSeeding:
    """Reproducibility tests"""

    def test_trial_streams_independent(self):
        """Test streams differ per sweep point and trial and repeat per key"""
        a = trial_rng(0, 0, 0).standard_normal(4)
        assert np.array_equal(a, trial_rng(0, 0, 0).standard_normal(4))
        assert not np.array_equal(a, trial_rng(0, 0, 1).standard_normal(4))
        assert not np.array_equal(a, trial_rng(0, 1, 0).standard_normal(4))
        assert not np.array_equal(a, trial_rng(1, 0, 0).standard_normal(4))

    def test_run_trial_deterministic(self):
        """Test a trial repeats exactly for the same seed"""
        assert run_trial(FAST, 3) == run_trial(FAST, 3)

    def test_single_value_sweep_matches_trials(self):
        """Test a one-point sweep stores exactly the run_trial estimates"""
        config = replace(FAST, sweep_values=(1.0,), runs=5)
        report = sweep(config)[0]
        assert report.estimates == tuple(run_trial(config, i) for i in range(5))

    def test_worker_count_does_not_change_results(self):
        """Test threaded trials produce the serial estimates"""
        serial = sweep(replace(FAST, runs=8, workers=1))
        threaded = sweep(replace(FAST, runs=8, workers=2))
        assert serial == threaded

    def test_report_recomputes_from_estimates(self):
        """Test the stored RMSE follows from the stored estimates"""
        report = sweep(replace(FAST, runs=10))[0]
        assert report.n_run == 10
        assert report.rmse_deg == pytest.approx(rmse(report.estimates, report.truth_deg), rel=1e-15)
        assert report.stderr_deg == pytest.approx(rmse_stderr(report.estimates, report.truth_deg), rel=1e-15)


class TestPipeline:
    """End-to-end estimation tests"""

    def test_noiseless_recovers_grid_angles(self):
        """Test noise-free snapshots recover on-grid angles exactly"""
        config = replace(FAST, medium_profile="vacuum", noise_enabled=False, snapshots=1,
                         angle_min_deg=-90.0, angle_max_deg=90.0)
        rng = np.random.default_rng(12)
        for doa in rng.integers(-8000, 8001, 20) / 100.0:
            point = replace(config, doa_deg=float(doa))
            assert run_trial(point, 0) == pytest.approx(float(doa), abs=1e-6)
            assert run_trial(replace(point, refine=False), 0) == float(doa)

    def test_pipeline_matches_direct_computation(self):
        """Test the simulator against covariance and pseudo-spectrum computed directly"""
        config = replace(FAST, refine=False, snapshots=10)
        simulator = DoaSimulator(config)
        prepared = simulator.prepare(config)
        _, tensor = simulator.spectrum(prepared, 0, 2)

        geom = config.geometry()
        angles = prepared.angles
        values = np.zeros(angles.size)
        for l, f in enumerate(tensor.grid.bins):
            y = tensor.data[:, :, l]
            cov = y @ y.conj().T / y.shape[1]
            _, vectors = np.linalg.eigh(cov)
            e_n = vectors[:, :-1]
            steering = np.exp(-2j * np.pi * f * np.outer(geom.positions, np.sin(np.radians(angles))) / 299792458.0)
            values += geom.element_count / np.maximum(np.sum(np.abs(e_n.conj().T @ steering) ** 2, axis=0), 1e-18)

        assert simulator.estimate(prepared, 0, 2) == pytest.approx(float(angles[np.argmax(values)]), abs=1e-10)

    def test_prepared_point_caches_steering(self):
        """Test a prepared point holds one steering matrix per bin on its search grid"""
        simulator = DoaSimulator(FAST)
        prepared = simulator.prepare(FAST)
        bins = prepared.synthesizer.grid.bins
        assert len(prepared.steering) == bins.size
        for l in (0, bins.size - 1):
            assert np.array_equal(prepared.steering[l],
                                  prepared.geometry.steering_matrix(float(bins[l]), prepared.angles))

    def test_near_source_is_accurate(self):
        """Test a source at 1 cm is located to within 0.05 degrees"""
        report = sweep(replace(FAST, distance_m=0.01))[0]
        assert report.rmse_deg < 0.05


class TestTrends:
    """Estimation accuracy trends across the sweep axes"""

    def test_rmse_grows_with_distance(self):
        """Test accuracy degrades from 1 cm to 1 m to 6 m"""
        result = rmse_by_value(sweep(replace(FAST, sweep_values=(0.01, 1.0, 6.0))))
        assert result[0.01] < result[1.0] < result[6.0]

    def test_more_snapshots_help(self):
        """Test 50 snapshots beat a single snapshot at 1 m"""
        result = rmse_by_value(sweep(replace(FAST, sweep_axis="snapshots", sweep_values=(1.0, 50.0))))
        assert result[50.0] < result[1.0]

    def test_more_energy_helps(self):
        """Test a 100 aJ pulse beats a 0.01 aJ pulse at 2 THz"""
        config = replace(FAST, fc_thz=2.0, distance_m=0.1, sweep_axis="energy_aj", sweep_values=(0.01, 100.0))
        result = rmse_by_value(sweep(config))
        assert result[100.0] < result[0.01]



def reports_by_value(reports):
    return {r.sweep_value: r for r in reports}


def within(a, b, multiple=2.0):
    """True when a exceeds b by no more than `multiple` combined standard errors"""
    return a.rmse_deg - b.rmse_deg <= multiple * math.hypot(a.stderr_deg, b.stderr_deg)


# default band 1-10 THz, summer air, 100 runs per point
FULL = ExperimentConfig(workers=4)


@pytest.mark.slow
class TestAcceptanceDesigns:
    """Full-band accuracy studies over the bundled summer-air medium"""

    @pytest.fixture(scope="class")
    def distance(self):
        config = replace(FULL, snapshots=1, sweep_values=(0.01, 0.1, 1.0, 3.0, 5.0, 6.0))
        return reports_by_value(sweep(config))

    @pytest.fixture(scope="class")
    def center_frequency(self):
        config = replace(FULL, distance_m=0.5, energy_aj=0.01, order=1,
                         sweep_axis="fc_thz", sweep_values=(2.0, 3.0, 4.0, 5.0, 6.0))
        return reports_by_value(sweep(config))

    @pytest.fixture(scope="class")
    def snapshot_count(self):
        return reports_by_value(sweep(replace(FULL, sweep_axis="snapshots", sweep_values=(1.0, 50.0, 100.0))))

    def test_rmse_non_decreasing_with_distance(self, distance):
        """Test single-snapshot RMSE never falls by more than 2 standard errors as distance grows"""
        values = sorted(distance)
        for near, far in zip(values, values[1:]):
            assert within(distance[near], distance[far]), (near, far)

    def test_near_source_accuracy(self, distance):
        """Test a single snapshot from 1 cm locates the source within 0.05 degrees"""
        assert distance[0.01].rmse_deg < 0.05

    @pytest.mark.xfail(strict=False, reason="background noise caps per-element SNR near 0.14 at 6 m for 1 aJ")
    def test_far_source_accuracy(self, distance):
        """Test a single snapshot from 6 m locates the source within 1 degree"""
        assert distance[6.0].rmse_deg < 1.0

    def test_rmse_falls_with_center_frequency(self, center_frequency):
        """Test first-order RMSE does not rise by more than 2 standard errors from 2 to 6 THz"""
        values = sorted(center_frequency)
        for low, high in zip(values, values[1:]):
            assert within(center_frequency[high], center_frequency[low]), (low, high)

    def test_low_order_high_frequency_pulse_wins(self, center_frequency):
        """Test a first-order 6 THz pulse beats a sixth-order 2 THz pulse by 2 standard errors"""
        wide = center_frequency[6.0]
        narrow = sweep(replace(FULL, distance_m=0.5, energy_aj=0.01, order=6, fc_thz=2.0))[0]
        assert narrow.rmse_deg - wide.rmse_deg >= 2.0 * math.hypot(narrow.stderr_deg, wide.stderr_deg)

    def test_energy_matters_at_2thz(self):
        """Test 0.01 aJ trails 100 aJ by at least 2 standard errors for a first-order 2 THz pulse"""
        config = replace(FULL, distance_m=0.1, fc_thz=2.0, sweep_axis="energy_aj", sweep_values=(0.01, 100.0))
        result = reports_by_value(sweep(config))
        weak, strong = result[0.01], result[100.0]
        assert weak.rmse_deg - strong.rmse_deg >= 2.0 * math.hypot(weak.stderr_deg, strong.stderr_deg)

    @pytest.mark.xfail(strict=False, reason="background noise dominates a 0.01 aJ pulse at 0.1 m")
    def test_energy_barely_matters_at_6thz(self):
        """Test the 6 THz RMSE spread over 0.01-100 aJ stays within 3 standard errors"""
        config = replace(FULL, distance_m=0.1, sweep_axis="energy_aj", sweep_values=(0.01, 1.0, 100.0))
        reports = sweep(config)
        spread = max(r.rmse_deg for r in reports) - min(r.rmse_deg for r in reports)
        assert spread < 3.0 * max(r.stderr_deg for r in reports)

    def test_more_snapshots_help(self, snapshot_count):
        """Test 50 snapshots beat a single snapshot at 1 m"""
        assert snapshot_count[50.0].rmse_deg < snapshot_count[1.0].rmse_deg

    @pytest.mark.xfail(strict=False, reason="RMSE keeps shrinking roughly as 1/sqrt(K) past 50 snapshots")
    def test_snapshots_saturate_after_50(self, snapshot_count):
        """Test going from 50 to 100 snapshots changes RMSE by less than 2 standard errors"""
        k50, k100 = snapshot_count[50.0], snapshot_count[100.0]
        assert abs(k100.rmse_deg - k50.rmse_deg) < 2.0 * math.hypot(k50.stderr_deg, k100.stderr_deg)
