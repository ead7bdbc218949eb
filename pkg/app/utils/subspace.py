"""
Subspace Estimation
Per-bin covariance, Hermitian eigendecomposition and incoherent wideband MUSIC
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.errors import DomainError
from app.models.array import UlaGeometry

HERMITIAN_TOLERANCE = 1e-12
DENOMINATOR_FLOOR = 1e-18


class HermitianMatrix:
    """Square, finite, conjugate-symmetric complex matrix"""

    def __init__(self, data: np.ndarray):
        data = np.asarray(data, dtype=complex)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise DomainError(f"Hermitian matrix must be square, got shape {data.shape}")
        if not np.isfinite(data).all():
            raise DomainError("Hermitian matrix entries must be finite")
        scale = max(np.linalg.norm(data), np.finfo(float).tiny)
        asymmetry = np.linalg.norm(data - data.conj().T)
        if asymmetry > HERMITIAN_TOLERANCE * scale:
            raise DomainError(f"matrix is not Hermitian (relative asymmetry {asymmetry / scale:.3e})")
        data = 0.5 * (data + data.conj().T)
        data.setflags(write=False)
        self.data = data

    @property
    def dimension(self) -> int:
        return self.data.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))

    def __repr__(self) -> str:
        return f"HermitianMatrix(N={self.dimension})"


@dataclass(frozen=True, eq=False)
class EigenPairs:
    """Eigenvalues in descending order with matching orthonormal eigenvector columns"""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def dimension(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class MusicSpectrum:
    """IMUSIC pseudo-spectrum sampled on an angle grid"""

    angles: np.ndarray  # degrees, strictly increasing
    values: np.ndarray

    def __post_init__(self):
        if self.angles.ndim != 1 or self.angles.shape != self.values.shape or self.angles.size == 0:
            raise DomainError("spectrum needs matching, non-empty angle and value arrays")
        if np.any(np.diff(self.angles) <= 0):
            raise DomainError("spectrum angles must be strictly increasing")
        if not np.isfinite(self.values).all() or np.any(self.values <= 0):
            raise DomainError("spectrum values must be finite and positive")

    @property
    def resolution(self) -> float:
        if self.angles.size < 2:
            return 0.0
        return float(self.angles[1] - self.angles[0])

    def rows(self) -> List[Tuple[float, float]]:
        return list(zip(self.angles.tolist(), self.values.tolist()))

    def __len__(self) -> int:
        return int(self.angles.size)


def angle_grid(angle_min: float = -90.0, angle_max: float = 90.0, step: float = 0.01) -> np.ndarray:
    """
    Uniform search grid in degrees, endpoints inclusive

    Values are rounded to 10 decimals so grid points compare equal to the
    decimal angles a user types.
    """
    if not (math.isfinite(angle_min) and math.isfinite(angle_max) and angle_min < angle_max):
        raise DomainError(f"invalid angle range [{angle_min}, {angle_max}]")
    if not (math.isfinite(step) and step > 0):
        raise DomainError(f"angle step must be positive, got {step}")
    count = int(math.floor((angle_max - angle_min) / step + 1e-9)) + 1
    return np.round(angle_min + step * np.arange(count), 10)


def sample_covariance(y: np.ndarray) -> HermitianMatrix:
    """
    Per-bin sample covariance

    Args:
        y: Complex N×K snapshot matrix of one frequency bin

    Returns:
        (1/K)·Y·Yᴴ
    """
    y = np.asarray(y, dtype=complex)
    if y.ndim != 2:
        raise DomainError(f"snapshot matrix must be 2-D, got shape {y.shape}")
    k = y.shape[1]
    if k == 0:
        raise DomainError("sample covariance needs at least one snapshot")
    return HermitianMatrix(y @ y.conj().T / k)


def hermitian_evd(a: HermitianMatrix) -> EigenPairs:
    """Eigendecomposition with eigenvalues sorted descending"""
    values, vectors = np.linalg.eigh(a.data)
    return EigenPairs(values[::-1].copy(), vectors[:, ::-1].copy())


def noise_subspace(pairs: EigenPairs, source_count: int) -> np.ndarray:
    """
    Eigenvectors spanning the noise subspace

    Args:
        pairs: Descending eigendecomposition
        source_count: m, assumed number of sources

    Returns:
        Complex N×(N-m) matrix of the eigenvectors of the N-m smallest eigenvalues
    """
    if isinstance(source_count, bool) or int(source_count) != source_count \
            or not 1 <= source_count < pairs.dimension:
        raise DomainError(f"source count must lie in 1..{pairs.dimension - 1}, got {source_count}")
    return pairs.vectors[:, int(source_count):]


def steering_matrices(geom: UlaGeometry, frequencies: Sequence[float], angles: np.ndarray) -> List[np.ndarray]:
    """N×A steering matrix for every bin frequency, reusable across trials"""
    angles = np.asarray(angles, dtype=float)
    return [geom.steering_matrix(float(f), angles) for f in frequencies]


def imusic_spectrum(per_bin: Sequence[Tuple[HermitianMatrix, float]], geom: UlaGeometry,
                    angles: np.ndarray, source_count: int = 1,
                    steering: Optional[Sequence[np.ndarray]] = None) -> MusicSpectrum:
    """
    Incoherent wideband MUSIC spectrum

    Sums the narrowband pseudo-spectra aᴴa / (aᴴ E_n E_nᴴ a) of every bin,
    in bin order.

    Args:
        per_bin: (covariance, bin frequency in Hz) pairs
        geom: Receive array the covariances belong to
        angles: Search grid in degrees
        source_count: m
        steering: Precomputed steering matrices, one per entry of per_bin
            (see steering_matrices); built on the fly when omitted

    Returns:
        MusicSpectrum over the grid
    """
    if len(per_bin) == 0:
        raise DomainError("IMUSIC needs at least one frequency bin")
    angles = np.asarray(angles, dtype=float)
    n = geom.element_count
    if steering is not None:
        if len(steering) != len(per_bin):
            raise DomainError(f"{len(steering)} steering matrices for {len(per_bin)} bins")
        if any(a.shape != (n, angles.shape[0]) for a in steering):
            raise DomainError(f"steering matrices must be {n}×{angles.shape[0]}")
    values = np.zeros(angles.shape[0])
    for l, (covariance, f) in enumerate(per_bin):
        if covariance.dimension != n:
            raise DomainError(f"covariance is {covariance.dimension}×{covariance.dimension}, array has {n} elements")
        e_n = noise_subspace(hermitian_evd(covariance), source_count)
        a = steering[l] if steering is not None else geom.steering_matrix(f, angles)
        projection = e_n.conj().T @ a
        denominator = np.maximum(np.sum(np.abs(projection) ** 2, axis=0), DENOMINATOR_FLOOR)
        values += n / denominator
    return MusicSpectrum(angles, values)


def estimate_doa(spectrum: MusicSpectrum, refine: bool = True) -> float:
    """
    Peak of the pseudo-spectrum

    The first maximum wins, so ties go to the smallest angle. With refine,
    a parabola through the peak and its two neighbours moves the estimate
    by at most half a grid cell; edge peaks and non-concave triples are
    returned unrefined.

    Args:
        spectrum: IMUSIC spectrum
        refine: Apply three-point parabolic interpolation

    Returns:
        Estimated direction of arrival in degrees
    """
    values = spectrum.values
    peak = int(np.argmax(values))
    theta = float(spectrum.angles[peak])
    if not refine or peak == 0 or peak == len(values) - 1:
        return theta

    left, center, right = values[peak - 1], values[peak], values[peak + 1]
    curvature = left - 2.0 * center + right
    if not curvature < 0:
        return theta
    offset = float(np.clip(0.5 * (left - right) / curvature, -0.5, 0.5))
    step = 0.5 * float(spectrum.angles[peak + 1] - spectrum.angles[peak - 1])
    return theta + offset * step
