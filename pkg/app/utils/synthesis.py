"""
Snapshot Synthesis
Draws frequency-domain array snapshots: pulse-train signal through the channel plus absorption noise
"""

import logging
from typing import Optional

import numpy as np

from app.errors import DomainError
from app.models.array import SnapshotTensor, SourceScenario, UlaGeometry
from app.models.channel import SPEED_OF_LIGHT, bin_noise_variances, channel_response
from app.models.pulse import FrequencyGrid, pulse_spectrum, symbol_count

logger = logging.getLogger(__name__)


class SnapshotSynthesizer:
    """Reusable snapshot generator for one scenario on one array and grid"""

    def __init__(self, scenario: SourceScenario, geom: UlaGeometry, grid: FrequencyGrid,
                 noise: bool = True, variances: Optional[np.ndarray] = None):
        """
        Precompute everything that does not depend on the random draws

        Args:
            scenario: Source angle, pulse and channel
            geom: Receive array
            grid: Frequency bins
            noise: Whether absorption noise is added
            variances: Per-bin noise variances, computed from the channel when omitted
        """
        lambda_min = SPEED_OF_LIGHT / grid.f_stop
        bound = geom.far_field_min_distance(lambda_min)
        if not scenario.distance > bound:
            raise DomainError(
                f"distance {scenario.distance:.6g} m is inside the far-field bound 2D²/λ_min = {bound:.6g} m")

        self.scenario = scenario
        self.geom = geom
        self.grid = grid
        self.noise_enabled = noise
        self.symbols_per_window = symbol_count(scenario.pulse, grid.observation_interval)

        bins = grid.bins
        # window-averaged Fourier coefficient: pulse spectrum · channel / ΔT
        self.bin_gain = pulse_spectrum(scenario.pulse, bins) * channel_response(bins, scenario.channel) \
            / grid.observation_interval
        delays = np.arange(self.symbols_per_window) * scenario.pulse.duration
        self.train_phases = np.exp(-2j * np.pi * np.multiply.outer(bins, delays))  # (L, M)
        self.steering = np.exp(-2j * np.pi * np.multiply.outer(geom.delays(scenario.doa), bins))  # (N, L)

        if not noise:
            self.variances = np.zeros(grid.bin_count)
        elif variances is not None:
            variances = np.asarray(variances, dtype=float)
            if variances.shape != (grid.bin_count,) or np.any(variances < 0):
                raise DomainError("noise variances must be non-negative, one per bin")
            self.variances = variances
        else:
            self.variances = bin_noise_variances(grid, scenario.channel, scenario.pulse)

        logger.debug(f"Synthesizer ready: N={geom.element_count}, L={grid.bin_count}, "
                     f"M={self.symbols_per_window}, max σ²={self.variances.max():.3e} W")

    def signal(self, symbols: np.ndarray) -> np.ndarray:
        """
        Noise-free snapshots for given symbol sequences

        Row s equals train_coefficient(pulse, SymbolSequence(symbols[s], T_p), bins)
        · channel_response(bins) / ΔT on each element's steering phase. The
        per-bin factor and the train phases are computed once in __init__.

        Args:
            symbols: ±1 array of shape (K, M)

        Returns:
            Complex array of shape (N, K, L)
        """
        coefficients = (symbols @ self.train_phases.T) * self.bin_gain  # (K, L)
        return self.steering[:, np.newaxis, :] * coefficients[np.newaxis, :, :]

    def noise(self, snapshot_count: int, rng: np.random.Generator) -> np.ndarray:
        """Circular complex Gaussian noise, variance σ²(f_l) per entry, shape (N, K, L)"""
        shape = (self.geom.element_count, snapshot_count, self.grid.bin_count)
        scale = np.sqrt(self.variances / 2.0)
        return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))

    def synthesize(self, snapshot_count: int, rng: np.random.Generator) -> SnapshotTensor:
        """
        Draw one snapshot tensor

        Symbols are drawn first, then noise, both from the given stream.

        Args:
            snapshot_count: K, number of observation windows
            rng: Seeded random stream

        Returns:
            SnapshotTensor holding the coefficients and the drawn symbols
        """
        if isinstance(snapshot_count, bool) or int(snapshot_count) != snapshot_count or snapshot_count < 1:
            raise DomainError(f"snapshot count must be a positive integer, got {snapshot_count}")
        symbols = rng.integers(0, 2, size=(snapshot_count, self.symbols_per_window)) * 2 - 1
        data = self.signal(symbols)
        if self.noise_enabled:
            data = data + self.noise(snapshot_count, rng)
        return SnapshotTensor(data, self.grid, symbols.astype(np.int8))


def synthesize_snapshots(scenario: SourceScenario, geom: UlaGeometry, grid: FrequencyGrid,
                         snapshot_count: int, rng: np.random.Generator, noise: bool = True) -> SnapshotTensor:
    return SnapshotSynthesizer(scenario, geom, grid, noise=noise).synthesize(snapshot_count, rng)
