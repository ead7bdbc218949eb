"""
Experiment Models
Resolved scenario configuration, Monte Carlo results and run manifests
"""

import math
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from app.errors import DomainError
from app.models.array import UlaGeometry
from app.models.pulse import FrequencyGrid, PulseSpec, build_grid, pulse_spec

SWEEP_AXES = ("distance_m", "energy_aj", "fc_thz", "order", "snapshots", "doa_deg")
INTEGER_AXES = ("order", "snapshots")
MEDIUM_PROFILES = ("summer_air", "vacuum", "constant", "file")


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved scenario: every default filled in, units in the field names"""

    # scenario
    doa_deg: float = 10.25
    distance_m: float = 1.0
    # pulse
    order: int = 1
    fc_thz: float = 6.0
    energy_aj: float = 1.0
    # array
    elements: int = 8
    spacing_um: float = 15.0
    # band
    f_start_thz: float = 1.0
    bandwidth_thz: float = 9.0
    observation_ps: float = 10.0
    # medium
    medium_profile: str = "summer_air"
    medium_path: Optional[str] = None
    medium_k_per_m: float = 0.0
    # noise
    noise_enabled: bool = True
    self_noise: bool = True
    background_mode: str = "limit"
    temperature_k: float = 296.0
    antenna_center_thz: Optional[float] = None
    # estimator
    snapshots: int = 50
    sources: int = 1
    angle_min_deg: float = -90.0
    angle_max_deg: float = 90.0
    angle_step_deg: float = 0.01
    refine: bool = True
    # sweep
    sweep_axis: str = "distance_m"
    sweep_values: Tuple[float, ...] = ()
    secondary_axis: Optional[str] = None
    secondary_values: Tuple[float, ...] = ()
    runs: int = 100
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.runs < 1:
            raise DomainError(f"run count must be at least 1, got {self.runs}")
        for axis in (self.sweep_axis, self.secondary_axis):
            if axis is not None and axis not in SWEEP_AXES:
                raise DomainError(f"unknown sweep axis {axis!r}")
        if self.secondary_axis is not None:
            if self.secondary_axis == self.sweep_axis:
                raise DomainError("secondary sweep axis must differ from the primary axis")
            if not self.secondary_values:
                raise DomainError("secondary sweep axis needs values")
        for value in self.sweep_values + self.secondary_values:
            if not math.isfinite(value):
                raise DomainError(f"sweep values must be finite, got {value}")

    @property
    def antenna_center_hz(self) -> float:
        """f_o, tied to the pulse center frequency unless set explicitly"""
        center = self.antenna_center_thz if self.antenna_center_thz is not None else self.fc_thz
        return center * 1e12

    def geometry(self) -> UlaGeometry:
        return UlaGeometry(self.elements, self.spacing_um * 1e-6)

    def grid(self) -> FrequencyGrid:
        return build_grid(self.f_start_thz * 1e12, self.bandwidth_thz * 1e12, self.observation_ps * 1e-12)

    def pulse(self) -> PulseSpec:
        return pulse_spec(self.order, self.fc_thz * 1e12, self.energy_aj * 1e-18)

    def with_value(self, axis: str, value: float) -> 'ExperimentConfig':
        """Copy with one sweep axis set to value"""
        if axis not in SWEEP_AXES:
            raise DomainError(f"unknown sweep axis {axis!r}")
        if axis in INTEGER_AXES:
            value = int(round(value))
        return replace(self, **{axis: value})

    def points(self) -> List[Tuple[float, Optional[float], 'ExperimentConfig']]:
        """
        Expand the sweep into concrete scenarios

        Returns:
            (primary value, secondary value or None, config) in sweep order;
            the secondary axis varies fastest
        """
        primary = self.sweep_values or (getattr(self, self.sweep_axis),)
        expanded = []
        for value in primary:
            point = self.with_value(self.sweep_axis, value)
            if self.secondary_axis is None:
                expanded.append((float(value), None, point))
                continue
            for second in self.secondary_values:
                expanded.append((float(value), float(second), point.with_value(self.secondary_axis, second)))
        return expanded

    def to_dict(self) -> Dict[str, Any]:
        """Nested mapping in scenario-file layout, loadable again by the validators"""
        return {
            "scenario": {"doa_deg": self.doa_deg, "distance_m": self.distance_m},
            "pulse": {"order": self.order, "fc_thz": self.fc_thz, "energy_aj": self.energy_aj},
            "array": {"elements": self.elements, "spacing_um": self.spacing_um},
            "band": {
                "f_start_thz": self.f_start_thz,
                "bandwidth_thz": self.bandwidth_thz,
                "observation_ps": self.observation_ps,
            },
            "medium": {
                "profile": self.medium_profile,
                "path": self.medium_path,
                "k_per_m": self.medium_k_per_m,
            },
            "noise": {
                "enabled": self.noise_enabled,
                "self_noise": self.self_noise,
                "background_mode": self.background_mode,
                "temperature_k": self.temperature_k,
                "antenna_center_thz": self.antenna_center_thz,
            },
            "estimator": {
                "snapshots": self.snapshots,
                "sources": self.sources,
                "angle_min_deg": self.angle_min_deg,
                "angle_max_deg": self.angle_max_deg,
                "angle_step_deg": self.angle_step_deg,
                "refine": self.refine,
            },
            "sweep": {
                "axis": self.sweep_axis,
                "values": list(self.sweep_values),
                "secondary_axis": self.secondary_axis,
                "secondary_values": list(self.secondary_values),
                "runs": self.runs,
                "seed": self.seed,
                "workers": self.workers,
            },
        }


@dataclass(frozen=True)
class RmseReport:
    """Monte Carlo result for one sweep point"""

    sweep_value: float
    rmse_deg: float
    stderr_deg: float
    estimates: Tuple[float, ...]
    truth_deg: float
    seed: int
    wall_time: float = field(default=0.0, compare=False)
    secondary_value: Optional[float] = None

    @property
    def n_run(self) -> int:
        return len(self.estimates)

    @property
    def errors(self) -> np.ndarray:
        return np.asarray(self.estimates) - self.truth_deg

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to reproduce an output directory"""

    config_path: str
    config: Dict[str, Any]
    output_dir: str
    version: str
    timestamp: str

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "timestamp": self.timestamp,
            "config_path": self.config_path,
            "output_dir": self.output_dir,
            "config": self.config,
        }
