"""
DOA Simulator Utilities
Monte Carlo engine: synthesis, IMUSIC estimation and RMSE aggregation per sweep point
"""

import logging
import math
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from app.errors import DomainError
from app.models.array import SnapshotTensor, SourceScenario, UlaGeometry
from app.models.channel import SPEED_OF_LIGHT, ChannelParams
from app.models.experiment import ExperimentConfig, RmseReport
from app.models.medium import AbsorptionProfile, load_profile, summer_air_profile, synthetic_profile
from app.utils.subspace import (MusicSpectrum, angle_grid, estimate_doa, imusic_spectrum, sample_covariance,
                                steering_matrices)
from app.utils.synthesis import SnapshotSynthesizer

logger = logging.getLogger(__name__)


def resolve_medium(config: ExperimentConfig) -> AbsorptionProfile:
    """Absorption profile selected by the medium section"""
    profile = config.medium_profile
    if profile == "summer_air":
        return summer_air_profile()
    if profile == "vacuum":
        return synthetic_profile("vacuum")
    if profile == "constant":
        return synthetic_profile("constant", k0=config.medium_k_per_m)
    if profile == "file":
        if not config.medium_path:
            raise DomainError("medium profile 'file' needs a path")
        return load_profile(config.medium_path)
    raise DomainError(f"unknown medium profile {profile!r}")


def trial_rng(seed: int, sweep_index: int, trial_index: int) -> np.random.Generator:
    """Independent stream per (base seed, sweep index, trial index)"""
    return np.random.default_rng([seed, sweep_index, trial_index])


def rmse(estimates: Sequence[float], truth: float) -> float:
    """Root mean square error in degrees"""
    errors = np.asarray(estimates, dtype=float) - truth
    if errors.size == 0:
        raise DomainError("RMSE needs at least one estimate")
    return float(np.sqrt(np.mean(errors ** 2)))


def rmse_stderr(estimates: Sequence[float], truth: float) -> float:
    """
    Monte Carlo standard error of the RMSE

    Delta method on the mean squared error: se(RMSE) = se(MSE) / (2·RMSE).
    Zero for fewer than two runs or an exact estimator.
    """
    errors = np.asarray(estimates, dtype=float) - truth
    if errors.size < 2:
        return 0.0
    value = math.sqrt(float(np.mean(errors ** 2)))
    if value == 0.0:
        return 0.0
    squared = errors ** 2
    return float(np.std(squared, ddof=1) / math.sqrt(errors.size) / (2.0 * value))


def cross_term_magnitude(f_o: float, distance: float, k: float) -> float:
    """
    Envelope of the signal / self-noise cross-correlation term

    Args:
        f_o: Antenna center frequency in Hz
        distance: Link distance in m
        k: Absorption coefficient in 1/m

    Returns:
        (c_0/(4π d_r f_o))² · √(1 - e^(-k d_r)) / e^(0.5 k d_r)
    """
    if not (f_o > 0 and distance > 0):
        raise DomainError(f"cross term needs positive f_o and distance, got {f_o}, {distance}")
    if not k >= 0:
        raise DomainError(f"absorption coefficient must be non-negative, got {k}")
    spread = (SPEED_OF_LIGHT / (4.0 * math.pi * distance * f_o)) ** 2
    return spread * math.sqrt(-math.expm1(-k * distance)) * math.exp(-0.5 * k * distance)


def cross_term_envelope(f_o_min: float, distance_min: float) -> float:
    """
    Largest cross term over every k ≥ 0, d_r ≥ distance_min, f_o ≥ f_o_min

    √(1 - e^(-x))·e^(-x/2) peaks at 1/2 (x = ln 2), and the spreading
    factor falls with both distance and frequency.
    """
    if not (f_o_min > 0 and distance_min > 0):
        raise DomainError("cross term envelope needs positive bounds")
    return 0.5 * (SPEED_OF_LIGHT / (4.0 * math.pi * distance_min * f_o_min)) ** 2


@dataclass
class PreparedPoint:
    """Per-sweep-point state shared by all trials"""

    config: ExperimentConfig
    geometry: UlaGeometry
    synthesizer: SnapshotSynthesizer
    angles: np.ndarray
    steering: List[np.ndarray]  # one N×A matrix per bin


class DoaSimulator:
    """Monte Carlo DOA estimation engine"""

    def __init__(self, config: ExperimentConfig, medium: Optional[AbsorptionProfile] = None):
        """
        Initialize simulator

        Args:
            config: Resolved experiment configuration
            medium: Absorption profile, resolved from the config when omitted
        """
        self.config = config
        self.medium = medium if medium is not None else resolve_medium(config)
        self.reports: List[RmseReport] = []

    def prepare(self, point: ExperimentConfig) -> PreparedPoint:
        """Build the synthesizer, search grid and per-bin steering matrices for one scenario"""
        geometry = point.geometry()
        grid = point.grid()
        pulse = point.pulse()
        channel = ChannelParams(
            distance=point.distance_m,
            antenna_center=point.antenna_center_hz,
            medium=self.medium,
            temperature=point.temperature_k,
            background_mode=point.background_mode,
            self_noise=point.self_noise,
        )
        scenario = SourceScenario(point.doa_deg, pulse, channel)
        synthesizer = SnapshotSynthesizer(scenario, geometry, grid, noise=point.noise_enabled)
        angles = angle_grid(point.angle_min_deg, point.angle_max_deg, point.angle_step_deg)
        steering = steering_matrices(geometry, grid.bins, angles)
        return PreparedPoint(point, geometry, synthesizer, angles, steering)

    def spectrum(self, prepared: PreparedPoint, sweep_index: int,
                 trial_index: int) -> Tuple[MusicSpectrum, SnapshotTensor]:
        """
        Synthesize one trial and compute its IMUSIC spectrum

        Returns:
            (spectrum, snapshot tensor)
        """
        point = prepared.config
        rng = trial_rng(self.config.seed, sweep_index, trial_index)
        tensor = prepared.synthesizer.synthesize(point.snapshots, rng)
        bins = prepared.synthesizer.grid.bins
        per_bin = [(sample_covariance(tensor.bin_matrix(l)), float(bins[l])) for l in range(tensor.bin_count)]
        spectrum = imusic_spectrum(per_bin, prepared.geometry, prepared.angles, point.sources,
                                   steering=prepared.steering)
        return spectrum, tensor

    def estimate(self, prepared: PreparedPoint, sweep_index: int, trial_index: int) -> float:
        spectrum, _ = self.spectrum(prepared, sweep_index, trial_index)
        estimate = estimate_doa(spectrum, prepared.config.refine)
        logger.debug(f"point {sweep_index} trial {trial_index}: estimate {estimate:.6f} deg")
        return estimate

    def run_point(self, sweep_index: int, sweep_value: float, point: ExperimentConfig,
                  secondary_value: Optional[float] = None) -> RmseReport:
        """
        Run all Monte Carlo trials of one sweep point

        Trials are independent and may run on joblib worker threads; results
        are collected in trial order.
        """
        start = time.perf_counter()
        prepared = self.prepare(point)
        estimates = Parallel(n_jobs=self.config.workers, prefer="threads")(
            delayed(self.estimate)(prepared, sweep_index, i) for i in range(self.config.runs)
        )
        report = RmseReport(
            sweep_value=sweep_value,
            rmse_deg=rmse(estimates, point.doa_deg),
            stderr_deg=rmse_stderr(estimates, point.doa_deg),
            estimates=tuple(float(e) for e in estimates),
            truth_deg=point.doa_deg,
            seed=self.config.seed,
            wall_time=time.perf_counter() - start,
            secondary_value=secondary_value,
        )
        label = f"{self.config.sweep_axis}={sweep_value:g}"
        if secondary_value is not None:
            label += f", {self.config.secondary_axis}={secondary_value:g}"
        logger.info(f"{label}: RMSE {report.rmse_deg:.6f} deg (±{report.stderr_deg:.6f}) "
                    f"over {report.n_run} runs in {report.wall_time:.2f} s")
        return report

    def run(self) -> List[RmseReport]:
        """
        Run the whole sweep

        Returns:
            One RmseReport per sweep point, in sweep order
        """
        self.reports = [
            self.run_point(index, value, point, secondary)
            for index, (value, secondary, point) in enumerate(self.config.points())
        ]
        return self.reports


def run_trial(config: ExperimentConfig, trial_index: int, sweep_index: int = 0,
              medium: Optional[AbsorptionProfile] = None) -> float:
    """
    Single synthesize → covariance → IMUSIC → estimate pass

    Args:
        config: Scenario, taken as-is (no sweep expansion)
        trial_index: Trial number i
        sweep_index: Sweep point index used in seed derivation

    Returns:
        Estimated direction of arrival in degrees
    """
    simulator = DoaSimulator(config, medium)
    return simulator.estimate(simulator.prepare(config), sweep_index, trial_index)


def sweep(config: ExperimentConfig, medium: Optional[AbsorptionProfile] = None) -> List[RmseReport]:
    return DoaSimulator(config, medium).run()
