"""
Absorption Medium Model
Sampled medium absorption coefficients k(f): loading, mixing, interpolation
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.errors import DomainError, ProfileParseError, RangeError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

SYNTHETIC_BAND_HZ = (0.5e12, 12.0e12)


@dataclass(frozen=True)
class LorentzLine:
    """Single pressure-broadened absorption line"""

    center: float  # Hz
    hwhm: float  # Hz
    peak: float  # 1/m at the line center

    def __post_init__(self):
        if not np.isfinite([self.center, self.hwhm, self.peak]).all():
            raise DomainError(f"line parameters must be finite: {self}")
        if self.hwhm <= 0:
            raise DomainError(f"line width must be positive, got {self.hwhm}")
        if self.peak < 0:
            raise DomainError(f"line strength must be non-negative, got {self.peak}")

    def evaluate(self, f: ArrayLike) -> ArrayLike:
        x = np.asarray(f, dtype=float) - self.center
        return self.peak * self.hwhm ** 2 / (x * x + self.hwhm ** 2)


# Water-vapour-style lines for a humid summer atmosphere. Synthetic: line
# positions are placed near strong H2O transitions, strengths are invented.
SUMMER_AIR_LINES = (
    LorentzLine(1.097e12, 0.012e12, 6.0),
    LorentzLine(1.410e12, 0.012e12, 3.5),
    LorentzLine(1.670e12, 0.015e12, 9.0),
    LorentzLine(2.040e12, 0.015e12, 4.0),
    LorentzLine(2.640e12, 0.018e12, 7.5),
    LorentzLine(3.010e12, 0.018e12, 5.0),
    LorentzLine(3.810e12, 0.020e12, 6.5),
    LorentzLine(4.470e12, 0.020e12, 4.5),
    LorentzLine(5.320e12, 0.022e12, 8.0),
    LorentzLine(6.250e12, 0.022e12, 5.5),
    LorentzLine(7.180e12, 0.025e12, 7.0),
    LorentzLine(8.330e12, 0.025e12, 4.0),
    LorentzLine(9.440e12, 0.028e12, 6.0),
)
SUMMER_AIR_CONTINUUM = 2.0e-3  # 1/m per THz², weak far-wing continuum


class AbsorptionProfile:
    """Medium absorption coefficient sampled over frequency"""

    def __init__(self, frequencies: Sequence[float], k: Sequence[float], name: str = "profile"):
        """
        Initialize profile from samples

        Args:
            frequencies: Strictly increasing sample frequencies in Hz
            k: Absorption coefficients in 1/m, non-negative
            name: Human-readable label
        """
        f_arr = np.array(frequencies, dtype=float)
        k_arr = np.array(k, dtype=float)
        if f_arr.ndim != 1 or f_arr.shape != k_arr.shape:
            raise DomainError("frequencies and k must be 1-D arrays of equal length")
        if f_arr.size < 2:
            raise DomainError("a profile needs at least 2 samples")
        if not (np.isfinite(f_arr).all() and np.isfinite(k_arr).all()):
            raise DomainError("profile samples must be finite")
        if np.any(np.diff(f_arr) <= 0):
            raise DomainError("profile frequencies must be strictly increasing")
        if np.any(k_arr < 0):
            raise DomainError("absorption coefficients must be non-negative")

        f_arr.setflags(write=False)
        k_arr.setflags(write=False)
        self.frequencies = f_arr
        self.k = k_arr
        self.name = name

    @property
    def f_min(self) -> float:
        return float(self.frequencies[0])

    @property
    def f_max(self) -> float:
        return float(self.frequencies[-1])

    @property
    def samples(self) -> List[Tuple[float, float]]:
        return list(zip(self.frequencies.tolist(), self.k.tolist()))

    def covers(self, f_lo: float, f_hi: float) -> bool:
        return self.f_min <= f_lo and f_hi <= self.f_max

    def breakpoints(self, f_lo: float, f_hi: float) -> np.ndarray:
        """Sample frequencies strictly inside (f_lo, f_hi)"""
        mask = (self.frequencies > f_lo) & (self.frequencies < f_hi)
        return self.frequencies[mask]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "samples": len(self.frequencies),
            "f_min_hz": self.f_min,
            "f_max_hz": self.f_max,
        }

    def __repr__(self) -> str:
        return f"AbsorptionProfile({self.name!r}, {len(self.frequencies)} samples)"


def absorption_at(profile: AbsorptionProfile, f: ArrayLike) -> ArrayLike:
    """
    Linearly interpolated absorption coefficient

    Args:
        profile: Sampled medium
        f: Frequency or array of frequencies in Hz

    Returns:
        k(f) in 1/m

    Raises:
        RangeError: If any frequency lies outside the sampled band
    """
    f_arr = np.asarray(f, dtype=float)
    if np.any(f_arr < profile.f_min) or np.any(f_arr > profile.f_max):
        raise RangeError(
            f"frequency outside {profile.name!r} band [{profile.f_min:.6e}, {profile.f_max:.6e}] Hz")
    return np.interp(f_arr, profile.frequencies, profile.k)


def mix_profiles(parts: Sequence[Tuple[AbsorptionProfile, float]], name: Optional[str] = None) -> AbsorptionProfile:
    """
    Mole-fraction weighted mixture k(f) = Σ x_q K_q(f)

    Args:
        parts: (profile, mole fraction) pairs
        name: Label for the mixture

    Returns:
        Profile sampled on the union of the parts' grids over their common band
    """
    if not parts:
        raise DomainError("mixture needs at least one component")
    fractions = np.array([fraction for _, fraction in parts], dtype=float)
    if np.any(fractions < 0) or not np.isfinite(fractions).all():
        raise DomainError("mole fractions must be finite and non-negative")
    if abs(fractions.sum() - 1.0) > 1e-9:
        raise DomainError(f"mole fractions must sum to 1, got {fractions.sum():.12g}")

    f_lo = max(p.f_min for p, _ in parts)
    f_hi = min(p.f_max for p, _ in parts)
    if f_lo >= f_hi:
        raise DomainError("mixture components share no common frequency band")

    grid = np.unique(np.concatenate([p.frequencies for p, _ in parts]))
    grid = grid[(grid >= f_lo) & (grid <= f_hi)]
    k = np.zeros_like(grid)
    for (profile, _), fraction in zip(parts, fractions):
        k += fraction * np.interp(grid, profile.frequencies, profile.k)

    label = name or " + ".join(f"{x:g}*{p.name}" for p, x in parts)
    return AbsorptionProfile(grid, k, label)


def synthetic_profile(kind: str, k0: float = 0.0, lines: Iterable[LorentzLine] = (),
                      continuum: float = 0.0, band: Tuple[float, float] = SYNTHETIC_BAND_HZ,
                      samples: int = 2301, name: Optional[str] = None) -> AbsorptionProfile:
    """
    Build an analytic test profile

    Args:
        kind: 'vacuum', 'constant' or 'lorentzian_lines'
        k0: Constant absorption in 1/m (constant kind)
        lines: Lorentzian lines (lorentzian_lines kind)
        continuum: Extra k per THz² added to the lines
        band: (f_min, f_max) sampled band in Hz
        samples: Uniform sample count before line refinement
        name: Profile label

    Returns:
        Synthetic AbsorptionProfile
    """
    f_min, f_max = band
    if not (0 < f_min < f_max) or samples < 2:
        raise DomainError(f"invalid synthetic band {band} / samples {samples}")

    if kind == "vacuum":
        return AbsorptionProfile([f_min, f_max], [0.0, 0.0], name or "vacuum")

    if kind == "constant":
        if not np.isfinite(k0) or k0 < 0:
            raise DomainError(f"constant absorption must be finite and non-negative, got {k0}")
        return AbsorptionProfile([f_min, f_max], [k0, k0], name or f"constant({k0:g})")

    if kind == "lorentzian_lines":
        lines = tuple(lines)
        if continuum < 0:
            raise DomainError(f"continuum must be non-negative, got {continuum}")
        pieces = [np.linspace(f_min, f_max, samples)]
        for line in lines:
            # hwhm/10 steps across each line core keep linear interpolation within 1%
            pieces.append(line.center + line.hwhm * np.linspace(-5.0, 5.0, 101))
        grid = np.unique(np.concatenate(pieces))
        grid = grid[(grid >= f_min) & (grid <= f_max)]
        k = continuum * (grid / 1e12) ** 2
        for line in lines:
            k = k + line.evaluate(grid)
        return AbsorptionProfile(grid, k, name or "lorentzian_lines")

    raise DomainError(f"unknown synthetic profile kind {kind!r}")


def summer_air_profile() -> AbsorptionProfile:
    """Bundled synthetic stand-in for humid summer air over 0.5–12 THz"""
    return synthetic_profile("lorentzian_lines", lines=SUMMER_AIR_LINES,
                             continuum=SUMMER_AIR_CONTINUUM,
                             name="summer-air (synthetic)")


def load_profile(path: Union[str, Path]) -> AbsorptionProfile:
    """
    Read a `frequency_hz,k_per_m` text profile

    Args:
        path: Profile file location

    Returns:
        Parsed profile

    Raises:
        ProfileParseError: Naming the offending line
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ProfileParseError(str(path), "file not found")
    except UnicodeDecodeError as e:
        raise ProfileParseError(str(path), f"not UTF-8 text (byte {e.start})")
    except OSError as e:
        raise ProfileParseError(str(path), f"cannot read file: {e.strerror or e}")

    name = path.stem
    freqs: List[float] = []
    ks: List[float] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line[1:].strip().startswith("name:"):
                name = line[1:].strip()[len("name:"):].strip() or name
            continue

        fields = line.split(",")
        if len(fields) != 2:
            raise ProfileParseError(str(path), f"expected 'frequency_hz,k_per_m', got {line!r}", lineno)
        try:
            f, k = float(fields[0]), float(fields[1])
        except ValueError:
            raise ProfileParseError(str(path), f"non-numeric record {line!r}", lineno)
        if not (np.isfinite(f) and np.isfinite(k)):
            raise ProfileParseError(str(path), "non-finite value", lineno)
        if f <= 0:
            raise ProfileParseError(str(path), f"frequency must be positive, got {f}", lineno)
        if k < 0:
            raise ProfileParseError(str(path), f"negative absorption coefficient {k}", lineno)
        if freqs and f <= freqs[-1]:
            raise ProfileParseError(str(path), "frequencies must be strictly ascending", lineno)
        freqs.append(f)
        ks.append(k)

    if len(freqs) < 2:
        raise ProfileParseError(str(path), f"need at least 2 records, found {len(freqs)}")

    logger.debug(f"Loaded profile {name!r} from {path} ({len(freqs)} samples)")
    return AbsorptionProfile(freqs, ks, name)


def save_profile(profile: AbsorptionProfile, path: Union[str, Path]) -> Path:
    """
    Write a profile in the loadable text format

    Args:
        profile: Profile to write
        path: Destination file

    Returns:
        Path written
    """
    path = Path(path)
    lines = [f"# name: {profile.name}", "# frequency_hz,k_per_m"]
    lines.extend(f"{f!r},{k!r}" for f, k in profile.samples)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def profile_stats(profile: AbsorptionProfile) -> dict:
    """Summary statistics reported by `medium inspect`"""
    return {
        "name": profile.name,
        "samples": int(profile.frequencies.size),
        "f_min_hz": profile.f_min,
        "f_max_hz": profile.f_max,
        "k_min_per_m": float(profile.k.min()),
        "k_max_per_m": float(profile.k.max()),
        "k_mean_per_m": float(profile.k.mean()),
    }
