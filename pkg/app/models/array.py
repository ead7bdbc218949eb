"""
Uniform Linear Array Model
Geometry, steering vectors and the frequency-domain snapshot tensor
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from app.errors import DomainError
from app.models.channel import SPEED_OF_LIGHT, ChannelParams
from app.models.pulse import FrequencyGrid, PulseSpec

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class UlaGeometry:
    """Equally spaced collinear receive elements, element 1 is the phase reference"""

    element_count: int
    spacing: float  # m

    def __post_init__(self):
        if isinstance(self.element_count, bool) or int(self.element_count) != self.element_count \
                or self.element_count < 2:
            raise DomainError(f"array needs at least 2 elements, got {self.element_count}")
        if not (math.isfinite(self.spacing) and self.spacing > 0):
            raise DomainError(f"element spacing must be positive, got {self.spacing}")

    @property
    def aperture(self) -> float:
        """D = (N - 1)·d_s"""
        return (self.element_count - 1) * self.spacing

    @property
    def positions(self) -> np.ndarray:
        return np.arange(self.element_count) * self.spacing

    def element_delay(self, i: int, theta_deg: float) -> float:
        """
        Propagation delay of element i relative to element 1

        Args:
            i: One-based element index
            theta_deg: Arrival angle in degrees

        Returns:
            (i - 1)·d_s·sin θ / c_0 in seconds
        """
        if isinstance(i, bool) or int(i) != i or not 1 <= i <= self.element_count:
            raise DomainError(f"element index {i} outside 1..{self.element_count}")
        return (int(i) - 1) * self.spacing * math.sin(math.radians(theta_deg)) / SPEED_OF_LIGHT

    def delays(self, theta_deg: float) -> np.ndarray:
        return self.positions * math.sin(math.radians(theta_deg)) / SPEED_OF_LIGHT

    def steering_vector(self, f: float, theta_deg: float) -> np.ndarray:
        """Array manifold [1, e^(-j2πfτ_2), ..., e^(-j2πfτ_N)]"""
        if not f > 0:
            raise DomainError(f"steering frequency must be positive, got {f}")
        return np.exp(-2j * np.pi * f * self.delays(theta_deg))

    def steering_matrix(self, f: float, thetas_deg: ArrayLike) -> np.ndarray:
        """
        Steering vectors for many angles at one frequency

        Args:
            f: Frequency in Hz
            thetas_deg: Candidate angles in degrees

        Returns:
            Complex matrix of shape (N, len(thetas_deg))
        """
        if not f > 0:
            raise DomainError(f"steering frequency must be positive, got {f}")
        sines = np.sin(np.radians(np.atleast_1d(np.asarray(thetas_deg, dtype=float))))
        delays = np.multiply.outer(self.positions, sines) / SPEED_OF_LIGHT
        return np.exp(-2j * np.pi * f * delays)

    def far_field_min_distance(self, lambda_min: float) -> float:
        """Fraunhofer bound 2D²/λ_min in meters"""
        if not lambda_min > 0:
            raise DomainError(f"wavelength must be positive, got {lambda_min}")
        return 2.0 * self.aperture ** 2 / lambda_min

    def to_dict(self) -> dict:
        return {"element_count": self.element_count, "spacing_m": self.spacing}


def element_delay(i: int, theta_deg: float, geom: UlaGeometry) -> float:
    return geom.element_delay(i, theta_deg)


def steering_vector(f: float, theta_deg: float, geom: UlaGeometry) -> np.ndarray:
    return geom.steering_vector(f, theta_deg)


def far_field_min_distance(geom: UlaGeometry, lambda_min: float) -> float:
    return geom.far_field_min_distance(lambda_min)


@dataclass(frozen=True)
class SourceScenario:
    """Single far-field source radiating a pulse train through the channel"""

    doa: float  # degrees
    pulse: PulseSpec
    channel: ChannelParams

    def __post_init__(self):
        if not (math.isfinite(self.doa) and -90.0 < self.doa < 90.0):
            raise DomainError(f"direction of arrival must lie in (-90, 90) degrees, got {self.doa}")

    @property
    def distance(self) -> float:
        return self.channel.distance


class SnapshotTensor:
    """Complex Fourier coefficients Y[i, k, l] for N elements, K snapshots and L bins"""

    def __init__(self, data: np.ndarray, grid: FrequencyGrid, symbols: Optional[np.ndarray] = None):
        """
        Wrap synthesized coefficients

        Args:
            data: Complex array of shape (N, K, L)
            grid: Frequency bins the last axis refers to
            symbols: Optional ±1 symbols per snapshot, shape (K, M)
        """
        data = np.asarray(data, dtype=complex)
        if data.ndim != 3:
            raise DomainError(f"snapshot tensor must be 3-D, got shape {data.shape}")
        if data.shape[2] != grid.bin_count:
            raise DomainError(f"tensor has {data.shape[2]} bins, grid has {grid.bin_count}")
        if not np.isfinite(data).all():
            raise DomainError("snapshot tensor entries must be finite")
        if symbols is not None and symbols.shape[0] != data.shape[1]:
            raise DomainError("one symbol sequence per snapshot is required")
        data.setflags(write=False)
        self.data = data
        self.grid = grid
        self.symbols = symbols

    @property
    def element_count(self) -> int:
        return self.data.shape[0]

    @property
    def snapshot_count(self) -> int:
        return self.data.shape[1]

    @property
    def bin_count(self) -> int:
        return self.data.shape[2]

    def bin_matrix(self, l: int) -> np.ndarray:
        """N×K snapshot matrix Y_l of one bin"""
        return self.data[:, :, l]

    def dump(self, path: Union[str, Path]) -> Path:
        """
        Write the tensor as text for debugging

        Header `N K L f_start delta_f`, then one `i k l re im` row per entry
        with one-based indices.
        """
        path = Path(path)
        n, k, l = self.data.shape
        lines = [f"{n} {k} {l} {self.grid.f_start!r} {self.grid.bin_width!r}"]
        for i in range(n):
            for s in range(k):
                for b in range(l):
                    value = self.data[i, s, b]
                    lines.append(f"{i + 1} {s + 1} {b + 1} {float(value.real)!r} {float(value.imag)!r}")
        path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
        return path

    def __repr__(self) -> str:
        n, k, l = self.data.shape
        return f"SnapshotTensor(N={n}, K={k}, L={l})"
