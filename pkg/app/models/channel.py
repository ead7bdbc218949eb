"""
Terahertz Channel Model
Spreading and molecular absorption losses, absorption noise PSDs and per-bin noise variance
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy import constants
from scipy.integrate import quad

from app.errors import DomainError, RangeError
from app.models.medium import AbsorptionProfile, absorption_at
from app.models.pulse import FrequencyGrid, PulseSpec, pulse_psd

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

SPEED_OF_LIGHT = constants.c  # m/s
BOLTZMANN = constants.k  # J/K
ROOM_TEMPERATURE = 296.0  # K

BACKGROUND_MODES = ("limit", "finite")


@dataclass(frozen=True)
class ChannelParams:
    """Link geometry, receiver antenna and medium for one transmitter"""

    distance: float  # m
    antenna_center: float  # Hz
    medium: AbsorptionProfile = field(repr=False)
    temperature: float = ROOM_TEMPERATURE
    background_mode: str = "limit"
    self_noise: bool = True
    speed_of_light: float = SPEED_OF_LIGHT
    boltzmann: float = BOLTZMANN

    def __post_init__(self):
        if not (math.isfinite(self.distance) and self.distance > 0):
            raise DomainError(f"distance must be positive, got {self.distance}")
        if not (math.isfinite(self.antenna_center) and self.antenna_center > 0):
            raise DomainError(f"antenna center frequency must be positive, got {self.antenna_center}")
        if not (math.isfinite(self.temperature) and self.temperature > 0):
            raise DomainError(f"temperature must be positive, got {self.temperature}")
        if self.background_mode not in BACKGROUND_MODES:
            raise DomainError(f"background mode must be one of {BACKGROUND_MODES}, got {self.background_mode!r}")

    @property
    def path_gain(self) -> float:
        """|H_spread| = c_0 / (4π d_r f_o)"""
        return self.speed_of_light / (4.0 * math.pi * self.distance * self.antenna_center)

    def to_dict(self) -> dict:
        return {
            "distance_m": self.distance,
            "antenna_center_hz": self.antenna_center,
            "temperature_k": self.temperature,
            "background_mode": self.background_mode,
            "self_noise": self.self_noise,
            "medium": self.medium.name,
        }


def spreading_loss(f: ArrayLike, p: ChannelParams) -> ArrayLike:
    """Free-space spreading (c_0/(4π d_r f_o))·exp(-j2πf d_r/c_0)"""
    f_arr = np.asarray(f, dtype=float)
    return p.path_gain * np.exp(-2j * np.pi * f_arr * p.distance / p.speed_of_light)


def absorption_loss(f: ArrayLike, p: ChannelParams) -> ArrayLike:
    """Molecular absorption amplitude gain exp(-0.5 k(f) d_r)"""
    return np.exp(-0.5 * absorption_at(p.medium, f) * p.distance)


def channel_response(f: ArrayLike, p: ChannelParams) -> ArrayLike:
    return spreading_loss(f, p) * absorption_loss(f, p)


def background_noise_psd(f: ArrayLike, p: ChannelParams) -> ArrayLike:
    """
    Background atmospheric noise PSD seen by the receiver

    Args:
        f: Frequency or array of frequencies in Hz
        p: Channel parameters; background_mode picks the emissivity factor

    Returns:
        k_B T_0 · ε(f) · (c_0/(√(4π) f_o))² in W/Hz, where ε is 1 for any
        absorbing frequency in 'limit' mode and 1 - exp(-k d_r) in 'finite' mode
    """
    return _background(absorption_at(p.medium, f), p)


def self_noise_psd(f: ArrayLike, p: ChannelParams, source_psd: ArrayLike) -> ArrayLike:
    """
    Noise re-radiated by molecules excited by the transmitted pulse

    Args:
        f: Frequency or array of frequencies in Hz
        p: Channel parameters
        source_psd: Transmitted PSD S_P(f) in W/Hz

    Returns:
        S_P(f) · (1 - exp(-k d_r)) · (c_0/(4π d_r f_o))² in W/Hz
    """
    source = np.asarray(source_psd, dtype=float)
    if np.any(source < 0):
        raise DomainError("source PSD must be non-negative")
    return _self_induced(absorption_at(p.medium, f), p, source)


def total_noise_psd(f: ArrayLike, p: ChannelParams, source_psd: ArrayLike) -> ArrayLike:
    source = np.asarray(source_psd, dtype=float)
    if np.any(source < 0):
        raise DomainError("source PSD must be non-negative")
    return _total(absorption_at(p.medium, f), p, source)


def _background(k: ArrayLike, p: ChannelParams) -> ArrayLike:
    if p.background_mode == "limit":
        emissivity = np.where(k > 0, 1.0, 0.0)
    else:
        emissivity = -np.expm1(-k * p.distance)
    aperture = (p.speed_of_light / (math.sqrt(4.0 * math.pi) * p.antenna_center)) ** 2
    return p.boltzmann * p.temperature * emissivity * aperture


def _self_induced(k: ArrayLike, p: ChannelParams, source: ArrayLike) -> ArrayLike:
    return source * -np.expm1(-k * p.distance) * p.path_gain ** 2


def _total(k: ArrayLike, p: ChannelParams, source: ArrayLike) -> ArrayLike:
    total = _background(k, p)
    if p.self_noise:
        total = total + _self_induced(k, p, source)
    return total


def _sub_band(grid: FrequencyGrid, l: int):
    if not 0 <= l < grid.bin_count:
        raise DomainError(f"bin index {l} outside 0..{grid.bin_count - 1}")
    f_l = float(grid.bins[l])
    width = grid.bin_width
    return f_l, width, f_l - 0.5 * width, f_l + 0.5 * width


def bin_noise_variance(grid: FrequencyGrid, l: int, p: ChannelParams, spec: PulseSpec) -> float:
    """
    Noise variance σ²(f_l, d_r) of one frequency bin

    Integrates the total absorption noise PSD over [f_l - Δf/2, f_l + Δf/2]
    by adaptive quadrature, splitting at the medium's sample points where
    k(f) has kinks.

    Args:
        grid: Frequency bins
        l: Zero-based bin index
        p: Channel parameters
        spec: Transmitted pulse, source of the self-noise PSD

    Returns:
        Variance in watts (non-negative)

    Raises:
        RangeError: If the bin's sub-band leaves the medium's sampled band
    """
    f_l, width, lo, hi = _sub_band(grid, l)
    if not p.medium.covers(lo, hi):
        raise RangeError(f"bin {l} sub-band [{lo:.6e}, {hi:.6e}] Hz outside medium {p.medium.name!r}")
    if not np.any(p.medium.k > 0):
        return 0.0

    medium = p.medium

    def integrand(x: float) -> float:
        f = f_l + x * width
        # the sub-band was range-checked above
        k = float(np.interp(f, medium.frequencies, medium.k))
        return float(_total(k, p, pulse_psd(spec, f)))

    points = (p.medium.breakpoints(lo, hi) - f_l) / width
    limit = max(200, 4 * len(points) + 50)
    value, _ = quad(integrand, -0.5, 0.5, points=points if len(points) else None,
                    epsabs=0.0, epsrel=1e-8, limit=limit)
    variance = max(0.0, value * width)
    logger.debug(f"bin {l} ({f_l / 1e12:.3f} THz): noise variance {variance:.6e} W")
    return variance


def riemann_noise_variance(grid: FrequencyGrid, l: int, p: ChannelParams, spec: PulseSpec,
                           panels: int = 100000) -> float:
    """Fixed-panel midpoint rule over the same sub-band, for cross-checking quadrature"""
    if panels < 1:
        raise DomainError(f"panel count must be positive, got {panels}")
    f_l, width, lo, hi = _sub_band(grid, l)
    if not p.medium.covers(lo, hi):
        raise RangeError(f"bin {l} sub-band [{lo:.6e}, {hi:.6e}] Hz outside medium {p.medium.name!r}")
    step = width / panels
    mids = lo + (np.arange(panels) + 0.5) * step
    return float(np.sum(total_noise_psd(mids, p, pulse_psd(spec, mids))) * step)


def bin_noise_variances(grid: FrequencyGrid, p: ChannelParams, spec: PulseSpec) -> np.ndarray:
    """σ² for every bin of the grid, shape (L,)"""
    return np.array([bin_noise_variance(grid, l, p, spec) for l in range(grid.bin_count)])


def signal_to_noise(grid: FrequencyGrid, l: int, p: ChannelParams, spec: PulseSpec) -> float:
    """
    Expected per-bin SNR of the received pulse train

    Signal power per bin is pulse_psd(f_l)·Δf·|H(f_l)|²; returns inf for a
    noiseless bin.
    """
    f_l, width, _, _ = _sub_band(grid, l)
    signal = float(pulse_psd(spec, f_l)) * width * float(np.abs(channel_response(f_l, p)) ** 2)
    noise = bin_noise_variance(grid, l, p, spec)
    if noise == 0.0:
        return math.inf
    return signal / noise
