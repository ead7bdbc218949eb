"""
Configuration Validators
Validation of scenario files into resolved experiment configurations
"""

import copy
import math
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import yaml
from flask import current_app, has_app_context

from app.models.channel import SPEED_OF_LIGHT
from app.models.experiment import (INTEGER_AXES, MEDIUM_PROFILES, SWEEP_AXES,
                                   ExperimentConfig)
from app.models.medium import SYNTHETIC_BAND_HZ

# (section, key) -> ExperimentConfig field
FIELD_MAP = {
    ("scenario", "doa_deg"): "doa_deg",
    ("scenario", "distance_m"): "distance_m",
    ("pulse", "order"): "order",
    ("pulse", "fc_thz"): "fc_thz",
    ("pulse", "energy_aj"): "energy_aj",
    ("array", "elements"): "elements",
    ("array", "spacing_um"): "spacing_um",
    ("band", "f_start_thz"): "f_start_thz",
    ("band", "bandwidth_thz"): "bandwidth_thz",
    ("band", "observation_ps"): "observation_ps",
    ("medium", "profile"): "medium_profile",
    ("medium", "path"): "medium_path",
    ("medium", "k_per_m"): "medium_k_per_m",
    ("noise", "enabled"): "noise_enabled",
    ("noise", "self_noise"): "self_noise",
    ("noise", "background_mode"): "background_mode",
    ("noise", "temperature_k"): "temperature_k",
    ("noise", "antenna_center_thz"): "antenna_center_thz",
    ("estimator", "snapshots"): "snapshots",
    ("estimator", "sources"): "sources",
    ("estimator", "angle_min_deg"): "angle_min_deg",
    ("estimator", "angle_max_deg"): "angle_max_deg",
    ("estimator", "angle_step_deg"): "angle_step_deg",
    ("estimator", "refine"): "refine",
    ("sweep", "axis"): "sweep_axis",
    ("sweep", "values"): "sweep_values",
    ("sweep", "secondary_axis"): "secondary_axis",
    ("sweep", "secondary_values"): "secondary_values",
    ("sweep", "runs"): "runs",
    ("sweep", "seed"): "seed",
    ("sweep", "workers"): "workers",
}

# sweep axis -> scenario-file field it overrides
AXIS_FIELDS = {
    "distance_m": "scenario.distance_m",
    "doa_deg": "scenario.doa_deg",
    "energy_aj": "pulse.energy_aj",
    "fc_thz": "pulse.fc_thz",
    "order": "pulse.order",
    "snapshots": "estimator.snapshots",
}


class ValidationError(Exception):
    """Scenario configuration error tied to a dotted field path"""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


def default_sections() -> Dict[str, Dict[str, Any]]:
    """Nested defaults, taken from the app config when one is active"""
    defaults = ExperimentConfig().to_dict()
    if has_app_context():
        overrides = current_app.config.get('EXPERIMENT_DEFAULTS', {})
        for section, values in overrides.items():
            defaults.setdefault(section, {}).update(values)
    return defaults


def _number(field: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(field, f"must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(field, "must be finite")
    return value


def _integer(field: str, value: Any) -> int:
    number = _number(field, value)
    if number != int(number):
        raise ValidationError(field, f"must be an integer, got {value!r}")
    return int(number)


def _flag(field: str, value: Any) -> bool:
    if not isinstance(value, bool):
        raise ValidationError(field, f"must be true or false, got {value!r}")
    return value


def _positive(field: str, value: Any) -> float:
    number = _number(field, value)
    if number <= 0:
        raise ValidationError(field, f"must be positive, got {number:g}")
    return number


def _check_axis_value(axis: str, value: Any, field: str) -> float:
    """Apply the range rule of the field a sweep axis overrides"""
    if axis == "doa_deg":
        number = _number(field, value)
        if not -90.0 < number < 90.0:
            raise ValidationError(field, f"direction of arrival must lie in (-90, 90), got {number:g}")
        return number
    if axis in INTEGER_AXES:
        number = _integer(field, value)
        if number < 1:
            raise ValidationError(field, f"must be at least 1, got {number}")
        return float(number)
    return _positive(field, value)


def _value_list(field: str, value: Any, limit: int) -> list:
    if value is None:
        return []
    if not isinstance(value, (list, tuple)):
        raise ValidationError(field, f"must be a list, got {value!r}")
    if len(value) > limit:
        raise ValidationError(field, f"too many values (max: {limit})")
    return list(value)


def _merge(raw: Dict[str, Any], defaults: Dict[str, Dict[str, Any]]) -> Dict[str, Dict[str, Any]]:
    merged = copy.deepcopy(defaults)
    for section, values in raw.items():
        if section not in merged:
            raise ValidationError(section, f"unknown section (expected one of: {', '.join(merged)})")
        if values is None:
            continue
        if not isinstance(values, dict):
            raise ValidationError(section, "must be a mapping")
        for key, value in values.items():
            if key not in merged[section]:
                raise ValidationError(f"{section}.{key}", "unknown key")
            merged[section][key] = value
    return merged


def validate_config(raw: Optional[dict], defaults: Optional[Dict[str, Dict[str, Any]]] = None) -> ExperimentConfig:
    """
    Validate scenario configuration

    Args:
        raw: Parsed scenario mapping (sections of keys); a run manifest is
            accepted too and its resolved config is used
        defaults: Nested defaults, app defaults when omitted

    Returns:
        Immutable, fully resolved ExperimentConfig

    Raises:
        ValidationError: Naming the dotted field that failed
    """
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ValidationError("config", "configuration must be a mapping")
    if "config" in raw and "version" in raw:
        raw = raw["config"] or {}
        if not isinstance(raw, dict):
            raise ValidationError("config", "manifest config must be a mapping")

    merged = _merge(raw, defaults if defaults is not None else default_sections())

    max_runs = current_app.config.get('MAX_RUNS', 100000) if has_app_context() else 100000
    max_values = current_app.config.get('MAX_SWEEP_VALUES', 1000) if has_app_context() else 1000

    checks: Dict[str, Callable[[str, Any], Any]] = {
        "scenario.doa_deg": lambda f, v: _check_axis_value("doa_deg", v, f),
        "scenario.distance_m": _positive,
        "pulse.order": lambda f, v: int(_check_axis_value("order", v, f)),
        "pulse.fc_thz": _positive,
        "pulse.energy_aj": _positive,
        "array.spacing_um": _positive,
        "band.f_start_thz": _positive,
        "band.bandwidth_thz": _positive,
        "band.observation_ps": _positive,
        "noise.enabled": _flag,
        "noise.self_noise": _flag,
        "noise.temperature_k": _positive,
        "estimator.snapshots": lambda f, v: int(_check_axis_value("snapshots", v, f)),
        "estimator.angle_min_deg": _number,
        "estimator.angle_max_deg": _number,
        "estimator.angle_step_deg": _positive,
        "estimator.refine": _flag,
    }

    fields: Dict[str, Any] = {}
    for (section, key), attr in FIELD_MAP.items():
        name = f"{section}.{key}"
        value = merged[section][key]
        if name in checks:
            value = checks[name](name, value)
        fields[attr] = value

    fields["elements"] = _integer("array.elements", fields["elements"])
    if fields["elements"] < 2:
        raise ValidationError("array.elements", f"need at least 2 elements, got {fields['elements']}")

    sources = _integer("estimator.sources", fields["sources"])
    if not 1 <= sources < fields["elements"]:
        raise ValidationError("estimator.sources", f"must lie in 1..{fields['elements'] - 1}, got {sources}")
    fields["sources"] = sources

    if fields["angle_min_deg"] < -90.0 or fields["angle_max_deg"] > 90.0:
        raise ValidationError("estimator", "angle grid must stay within [-90, 90] degrees")
    if fields["angle_min_deg"] >= fields["angle_max_deg"]:
        raise ValidationError("estimator.angle_max_deg", "must exceed angle_min_deg")

    _validate_medium(fields)
    _validate_noise(fields)
    _validate_sweep(fields, max_runs, max_values)
    _validate_physics(fields)

    return ExperimentConfig(**fields)


def _validate_medium(fields: Dict[str, Any]):
    if fields["medium_profile"] not in MEDIUM_PROFILES:
        raise ValidationError("medium.profile", f"must be one of {list(MEDIUM_PROFILES)}, "
                                                f"got {fields['medium_profile']!r}")
    fields["medium_k_per_m"] = _number("medium.k_per_m", fields["medium_k_per_m"])
    if fields["medium_k_per_m"] < 0:
        raise ValidationError("medium.k_per_m", "must be non-negative")
    path = fields["medium_path"]
    if fields["medium_profile"] == "file":
        if not isinstance(path, str) or not path:
            raise ValidationError("medium.path", "required when profile is 'file'")
    elif path is not None and not isinstance(path, str):
        raise ValidationError("medium.path", "must be a file path")


def _validate_noise(fields: Dict[str, Any]):
    if fields["background_mode"] not in ("limit", "finite"):
        raise ValidationError("noise.background_mode", f"must be 'limit' or 'finite', "
                                                       f"got {fields['background_mode']!r}")
    if fields["antenna_center_thz"] is not None:
        fields["antenna_center_thz"] = _positive("noise.antenna_center_thz", fields["antenna_center_thz"])


def _validate_sweep(fields: Dict[str, Any], max_runs: int, max_values: int):
    axis = fields["sweep_axis"]
    if axis not in SWEEP_AXES:
        raise ValidationError("sweep.axis", f"must be one of {list(SWEEP_AXES)}, got {axis!r}")
    values = _value_list("sweep.values", fields["sweep_values"], max_values)
    fields["sweep_values"] = tuple(
        _check_axis_value(axis, v, f"sweep.values[{i}]") for i, v in enumerate(values))

    secondary = fields["secondary_axis"]
    second_values = _value_list("sweep.secondary_values", fields["secondary_values"], max_values)
    if secondary is None:
        if second_values:
            raise ValidationError("sweep.secondary_axis", "required when secondary_values are given")
        fields["secondary_values"] = ()
    else:
        if secondary not in SWEEP_AXES or secondary == axis:
            raise ValidationError("sweep.secondary_axis", f"must be a sweep axis other than {axis!r}, "
                                                          f"got {secondary!r}")
        if not second_values:
            raise ValidationError("sweep.secondary_values", "must not be empty")
        fields["secondary_values"] = tuple(
            _check_axis_value(secondary, v, f"sweep.secondary_values[{i}]") for i, v in enumerate(second_values))

    runs = _integer("sweep.runs", fields["runs"])
    if not 1 <= runs <= max_runs:
        raise ValidationError("sweep.runs", f"must lie in 1..{max_runs}, got {runs}")
    fields["runs"] = runs

    seed = _integer("sweep.seed", fields["seed"])
    if seed < 0:
        raise ValidationError("sweep.seed", "must be non-negative")
    fields["seed"] = seed

    workers = _integer("sweep.workers", fields["workers"])
    if workers == 0 or workers < -1:
        raise ValidationError("sweep.workers", "must be a positive count or -1 for all cores")
    fields["workers"] = workers


def _axis_values(fields: Dict[str, Any], axis: str) -> List[Tuple[str, float]]:
    """(field path, value) for the base value of an axis and every swept value"""
    values = [(AXIS_FIELDS[axis], fields[axis])]
    if fields["sweep_axis"] == axis:
        values += [(f"sweep.values[{i}]", v) for i, v in enumerate(fields["sweep_values"])]
    if fields["secondary_axis"] == axis:
        values += [(f"sweep.secondary_values[{i}]", v) for i, v in enumerate(fields["secondary_values"])]
    return values


def _validate_physics(fields: Dict[str, Any]):
    """Cross-field checks: far field, pulse fits the window, band inside bundled media"""
    f_stop = (fields["f_start_thz"] + fields["bandwidth_thz"]) * 1e12
    aperture = (fields["elements"] - 1) * fields["spacing_um"] * 1e-6
    bound = 2.0 * aperture ** 2 / (SPEED_OF_LIGHT / f_stop)
    for field, distance in _axis_values(fields, "distance_m"):
        if not distance > bound:
            raise ValidationError(field, f"distance {distance:g} m is inside the far-field bound {bound:.6g} m")

    window = fields["observation_ps"] * 1e-12
    for _, order in _axis_values(fields, "order"):
        for _, fc in _axis_values(fields, "fc_thz"):
            duration = 10.0 * math.sqrt(order) / (2.0 * math.pi * fc * 1e12)
            if duration > window:
                raise ValidationError("band.observation_ps",
                                      f"window shorter than the n={int(order)}, {fc:g} THz pulse "
                                      f"({duration * 1e12:.3f} ps)")

    if fields["medium_profile"] != "file":
        half_bin = 0.5 / window
        lo = fields["f_start_thz"] * 1e12 - half_bin
        hi = f_stop + half_bin
        if lo < SYNTHETIC_BAND_HZ[0] or hi > SYNTHETIC_BAND_HZ[1]:
            raise ValidationError("band", f"band with bin margins [{lo / 1e12:g}, {hi / 1e12:g}] THz leaves the "
                                          f"bundled medium range [{SYNTHETIC_BAND_HZ[0] / 1e12:g}, "
                                          f"{SYNTHETIC_BAND_HZ[1] / 1e12:g}] THz")


def load_config_file(path: Union[str, Path]) -> dict:
    """
    Read a YAML scenario file

    A relative `medium.path` is resolved against the scenario file's
    directory when the file exists there.

    Raises:
        ValidationError: For unreadable files or invalid YAML
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ValidationError("config", f"cannot read {path}: {e.strerror or e}")
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ValidationError("config", f"invalid YAML in {path}: {e}")
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ValidationError("config", f"{path} must contain a mapping of sections")

    body = raw["config"] if "config" in raw and "version" in raw else raw
    medium = body.get("medium") if isinstance(body, dict) else None
    if isinstance(medium, dict) and isinstance(medium.get("path"), str):
        candidate = path.parent / medium["path"]
        if not Path(medium["path"]).is_absolute() and candidate.exists():
            medium["path"] = str(candidate)
    return raw
