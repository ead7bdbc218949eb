"""
Gaussian Pulse Model
Frequency grid, nth-derivative Gaussian pulse spectra and pulse trains
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.special import gammaln

from app.errors import DomainError

ArrayLike = Union[float, np.ndarray]

# Published half-power table cells that disagree with the closed-form values
PUBLISHED_BANDWIDTH_MISMATCHES = {
    (1, 2.0): "published_b3db_3.27",
    (4, 2.0): "published_b3db_1.71",
    (5, 6.0): "published_tp_0.50",
}


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Uniform frequency bins spanning the observed band"""

    f_start: float
    bandwidth: float
    observation_interval: float
    bin_count: int
    bins: np.ndarray

    @property
    def bin_width(self) -> float:
        """Bin spacing in Hz (1/ΔT)"""
        return 1.0 / self.observation_interval

    @property
    def f_stop(self) -> float:
        return self.f_start + self.bandwidth

    def to_dict(self) -> dict:
        return {
            "f_start_hz": self.f_start,
            "bandwidth_hz": self.bandwidth,
            "observation_s": self.observation_interval,
            "bin_count": self.bin_count,
            "bin_width_hz": self.bin_width,
        }

    def __repr__(self) -> str:
        return f"FrequencyGrid(L={self.bin_count}, {self.f_start:.3e}..{self.f_stop:.3e} Hz)"


@dataclass(frozen=True)
class PulseSpec:
    """nth time-derivative Gaussian pulse with fixed energy"""

    order: int
    center_frequency: float
    energy: float
    sigma: float
    duration: float
    normalization: float

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "center_frequency_hz": self.center_frequency,
            "energy_j": self.energy,
            "sigma_s": self.sigma,
            "duration_s": self.duration,
            "normalization": self.normalization,
        }

    def __repr__(self) -> str:
        return (f"PulseSpec(n={self.order}, fc={self.center_frequency / 1e12:.2f} THz, "
                f"E={self.energy:.3e} J, Tp={self.duration * 1e12:.3f} ps)")


@dataclass(frozen=True)
class SymbolSequence:
    """Bi-phase information symbols spaced one pulse duration apart"""

    symbols: Tuple[int, ...]
    spacing: float

    def __post_init__(self):
        if len(self.symbols) == 0:
            raise DomainError("symbol sequence must not be empty")
        if any(s not in (1, -1) for s in self.symbols):
            raise DomainError("symbols must be +1 or -1")
        if not self.spacing > 0:
            raise DomainError(f"symbol spacing must be positive, got {self.spacing}")

    @classmethod
    def random(cls, count: int, spacing: float, rng: np.random.Generator) -> 'SymbolSequence':
        """
        Draw i.i.d. uniform ±1 symbols

        Args:
            count: Number of symbols
            spacing: Pulse spacing in seconds
            rng: Seeded random stream

        Returns:
            New symbol sequence
        """
        draws = rng.integers(0, 2, size=count) * 2 - 1
        return cls(tuple(int(s) for s in draws), spacing)

    def __len__(self) -> int:
        return len(self.symbols)


def _floor_product(a: float, b: float) -> int:
    # decimal inputs such as 9e12 * 1e-11 must floor to the intended integer
    x = a * b
    nearest = round(x)
    if abs(x - nearest) <= 1e-9 * max(1.0, abs(x)):
        return int(nearest)
    return math.floor(x)


def build_grid(f_start: float, bandwidth: float, observation_interval: float) -> FrequencyGrid:
    """
    Build the frequency bins observed over one window

    Args:
        f_start: Lowest bin frequency in Hz
        bandwidth: Channel bandwidth B in Hz
        observation_interval: Window length ΔT in seconds

    Returns:
        Grid with L = floor(B·ΔT) + 1 bins spaced 1/ΔT apart
    """
    if not (f_start > 0 and bandwidth > 0 and observation_interval > 0):
        raise DomainError(
            f"grid inputs must be positive: f_start={f_start}, B={bandwidth}, ΔT={observation_interval}")

    count = _floor_product(bandwidth, observation_interval) + 1
    bins = f_start + np.arange(count) / observation_interval
    bins = np.clip(bins, f_start, f_start + bandwidth)
    bins.setflags(write=False)
    return FrequencyGrid(f_start, bandwidth, observation_interval, count, bins)


def pulse_spec(order: int, center_frequency: float, energy: float) -> PulseSpec:
    """
    Derive σ, T_p and a_n for a Gaussian derivative pulse

    Args:
        order: Derivative order n (>= 1)
        center_frequency: Spectral peak f_c in Hz
        energy: Two-sided pulse energy in joules

    Returns:
        Fully populated PulseSpec
    """
    if isinstance(order, bool) or int(order) != order or order < 1:
        raise DomainError(f"pulse order must be a positive integer, got {order}")
    if not center_frequency > 0:
        raise DomainError(f"center frequency must be positive, got {center_frequency}")
    if not energy > 0:
        raise DomainError(f"pulse energy must be positive, got {energy}")

    order = int(order)
    sigma = math.sqrt(order) / (2.0 * math.pi * center_frequency)
    # 2∫|G|² df = a²·Γ(n+½) / (2π σ^(2n+1))
    log_a2 = (math.log(2.0 * math.pi * energy) + (2 * order + 1) * math.log(sigma)
              - gammaln(order + 0.5))
    normalization = math.exp(0.5 * log_a2)
    return PulseSpec(order, float(center_frequency), float(energy), sigma, 10.0 * sigma, normalization)


def pulse_spectrum(spec: PulseSpec, f: ArrayLike) -> ArrayLike:
    """Complex amplitude a_n (j2πf)^n exp(-0.5 (2πσf)²)"""
    w = 2.0 * np.pi * np.asarray(f, dtype=float)
    return spec.normalization * (1j * w) ** spec.order * np.exp(-0.5 * (w * spec.sigma) ** 2)


def pulse_psd(spec: PulseSpec, f: ArrayLike) -> ArrayLike:
    """Transmitted power spectral density |G_n(f)|² / T_p in W/Hz"""
    return np.abs(pulse_spectrum(spec, f)) ** 2 / spec.duration


def spectral_energy(spec: PulseSpec) -> float:
    """
    Two-sided energy of the pulse spectrum by adaptive quadrature

    Args:
        spec: Pulse to integrate

    Returns:
        2∫₀^∞ |G_n(f)|² df in joules
    """
    n = spec.order
    # substitute x = 2πσf so the integrand is O(1)
    moment, _ = quad(lambda x: x ** (2 * n) * math.exp(-x * x), 0.0, 40.0,
                     epsabs=0.0, epsrel=1e-12, limit=200)
    return 2.0 * spec.normalization ** 2 * moment / (2.0 * math.pi * spec.sigma ** (2 * n + 1))


def _half_power_residual(u: float, order: int) -> float:
    # log of |G(f_c u)|² / |G(f_c)|² = u^(2n) e^(n(1-u²)), shifted so the root is at 1/2
    return order * (2.0 * math.log(u) + 1.0 - u * u) + math.log(2.0)


def half_power_band(spec: PulseSpec) -> Tuple[float, float, float]:
    """
    Half-power frequencies around the spectral peak

    Args:
        spec: Pulse to analyse

    Returns:
        (f_l, f_h, B_3dB) in Hz
    """
    lower = brentq(_half_power_residual, 1e-9, 1.0, args=(spec.order,), xtol=1e-14, rtol=1e-14)
    upper = brentq(_half_power_residual, 1.0, 20.0, args=(spec.order,), xtol=1e-14, rtol=1e-14)
    f_l = lower * spec.center_frequency
    f_h = upper * spec.center_frequency
    return f_l, f_h, f_h - f_l


def train_coefficient(spec: PulseSpec, seq: SymbolSequence, f: ArrayLike) -> ArrayLike:
    """
    Fourier coefficient of a finite pulse train

    Args:
        spec: Pulse shape
        seq: Symbols a_r, r = 0..R-1
        f: Frequency or array of frequencies in Hz

    Returns:
        G_n(f) · Σ_r a_r exp(-j2πf r T_p)
    """
    f_arr = np.asarray(f, dtype=float)
    symbols = np.asarray(seq.symbols, dtype=float)
    delays = np.arange(len(symbols)) * seq.spacing
    phases = np.exp(-2j * np.pi * np.multiply.outer(f_arr, delays))
    return pulse_spectrum(spec, f_arr) * (phases @ symbols)


def symbol_count(spec: PulseSpec, observation_interval: float) -> int:
    """Number of whole pulses received in one window, floor(ΔT/T_p)"""
    count = _floor_product(observation_interval, 1.0 / spec.duration)
    if count < 1:
        raise DomainError(
            f"observation interval {observation_interval:.3e} s is shorter than the pulse ({spec.duration:.3e} s)")
    return count


def bandwidth_table_rows(orders: Sequence[int] = range(1, 7),
                         centers_thz: Sequence[float] = (2.0, 3.0, 4.0, 5.0, 6.0),
                         energy: float = 1e-18) -> List[dict]:
    """
    Half-power bandwidth table over orders and center frequencies

    Returns:
        One row per (n, f_c) with T_p in ps and frequencies in THz
    """
    rows = []
    for fc in centers_thz:
        for n in orders:
            spec = pulse_spec(n, fc * 1e12, energy)
            f_l, f_h, b3 = half_power_band(spec)
            rows.append({
                "n": n,
                "fc_thz": float(fc),
                "tp_ps": spec.duration * 1e12,
                "fl_thz": f_l / 1e12,
                "fh_thz": f_h / 1e12,
                "b3db_thz": b3 / 1e12,
                "flag": _published_flag(n, fc),
            })
    return rows


def _published_flag(order: int, fc_thz: float) -> Optional[str]:
    return PUBLISHED_BANDWIDTH_MISMATCHES.get((order, float(fc_thz)))
