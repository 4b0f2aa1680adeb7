"""Scenario configuration: a versioned JSON document with explicit units in
every physical key name. Validation errors carry the offending field path."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .channel import ChannelModel, InterferenceMode, db_to_linear
from .econ import ArchitectureCost, Environment, Rounding, Technology
from .geometry import Region
from .model import EnergyParams
from .simulate import RadioConfig

SCHEMA_VERSION = 1


class ConfigError(Exception):
    """Invalid configuration; the message names the field path."""


def _section(raw: dict, name: str) -> Optional[dict]:
    value = raw.get(name)
    if value is None:
        return None
    if not isinstance(value, dict):
        raise ConfigError(f"{name}: must be an object")
    return value


def _number(obj: dict, path: str, key: str, *, default=None, minimum=None, positive=False):
    if key not in obj:
        if default is not None:
            return default
        raise ConfigError(f"{path}.{key}: required")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}: must be a number")
    value = float(value)
    if positive and value <= 0.0:
        raise ConfigError(f"{path}.{key}: must be > 0")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{path}.{key}: must be >= {minimum}")
    return value


def _integer(obj: dict, path: str, key: str, *, default=None, minimum=None) -> int:
    if key not in obj:
        if default is not None:
            return default
        raise ConfigError(f"{path}.{key}: required")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}.{key}: must be an integer")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{path}.{key}: must be >= {minimum}")
    return value


def _boolean(obj: dict, path: str, key: str, *, default: bool) -> bool:
    value = obj.get(key, default)
    if not isinstance(value, bool):
        raise ConfigError(f"{path}.{key}: must be true or false")
    return value


def _string(obj: dict, path: str, key: str, *, default=None) -> str:
    if key not in obj:
        if default is not None:
            return default
        raise ConfigError(f"{path}.{key}: required")
    value = obj[key]
    if not isinstance(value, str):
        raise ConfigError(f"{path}.{key}: must be a string")
    return value


def _enum(obj: dict, path: str, key: str, enum_cls, *, default=None):
    raw = _string(obj, path, key, default=default.value if default is not None else None)
    try:
        return enum_cls(raw)
    except ValueError:
        allowed = ", ".join(e.value for e in enum_cls)
        raise ConfigError(f"{path}.{key}: must be one of {allowed}") from None


def _gain_c(obj: dict, path: str) -> float:
    has_db = "gain_c_db" in obj
    has_linear = "gain_c_linear" in obj
    if has_db and has_linear:
        raise ConfigError(f"{path}: gain_c_db and gain_c_linear are mutually exclusive")
    if has_db:
        return db_to_linear(_number(obj, path, "gain_c_db"))
    if has_linear:
        return _number(obj, path, "gain_c_linear", positive=True)
    return 1.0


@dataclass(frozen=True)
class CustomPlanRow:
    """One user-defined spectrum-planning row."""

    label: str
    technology: Technology
    area_m2: float
    target_capacity_bps_m2: float
    peak_rate_bps: Optional[float] = None
    channel_bw_hz: Optional[float] = None
    rounding: Rounding = Rounding.CEIL
    lambda_u_per_m2: Optional[float] = None
    ratio: Optional[float] = None
    gain_c: Optional[float] = None
    alpha: Optional[float] = None


@dataclass(frozen=True)
class PlanSpec:
    area_m2: float
    target_capacity_bps_m2: float
    peak_rate_bps: float
    channel_bw_hz: float
    rounding: Rounding
    custom_rows: tuple = ()


@dataclass(frozen=True)
class ClassifySpec:
    available_spectrum_hz: float
    environment: Environment
    required_spectrum_hz: Optional[float] = None


@dataclass
class ScenarioConfig:
    """Everything a CLI run needs, parsed and validated."""

    region: Optional[Region] = None
    lambda_u: Optional[float] = None
    lambda_ap: Optional[float] = None
    ratio_sweep: Optional[list] = None
    channel: Optional[ChannelModel] = None
    radio: Optional[RadioConfig] = None
    snapshots: int = 100
    seed: int = 0
    workers: int = 1
    fixed_counts: bool = False
    curve_ratios: np.ndarray = field(default_factory=lambda: np.geomspace(0.1, 1000.0, 121))
    energy: Optional[EnergyParams] = None
    architectures: list = field(default_factory=list)
    cost_targets: list = field(default_factory=lambda: list(np.geomspace(0.01, 2.0, 25)))
    plan: Optional[PlanSpec] = None
    classify: Optional[ClassifySpec] = None

    def require(self, attr: str, section: str) -> Any:
        value = getattr(self, attr)
        if value is None:
            raise ConfigError(f"{section}: section required by this command")
        return value


def _parse_region(obj: dict) -> Region:
    try:
        return Region(
            width=_number(obj, "region", "width_m", positive=True),
            height=_number(obj, "region", "height_m", positive=True),
            wrap=_boolean(obj, "region", "wrap", default=True),
        )
    except ValueError as exc:
        raise ConfigError(f"region: {exc}") from None


def _parse_densities(obj: dict, cfg: ScenarioConfig) -> None:
    cfg.lambda_u = _number(obj, "densities", "lambda_u_per_m2", minimum=0.0)
    has_ap = "lambda_ap_per_m2" in obj
    has_sweep = "ratio_sweep" in obj
    if has_ap and has_sweep:
        raise ConfigError("densities: lambda_ap_per_m2 and ratio_sweep are mutually exclusive")
    if has_ap:
        cfg.lambda_ap = _number(obj, "densities", "lambda_ap_per_m2", minimum=0.0)
    if has_sweep:
        sweep = obj["ratio_sweep"]
        if not isinstance(sweep, list) or not sweep:
            raise ConfigError("densities.ratio_sweep: must be a non-empty list")
        parsed = []
        for i, r in enumerate(sweep):
            if isinstance(r, bool) or not isinstance(r, (int, float)) or r < 0:
                raise ConfigError(f"densities.ratio_sweep[{i}]: must be a number >= 0")
            parsed.append(float(r))
        cfg.ratio_sweep = parsed


def _parse_channel(obj: dict) -> ChannelModel:
    try:
        return ChannelModel(
            alpha=_number(obj, "channel", "alpha", positive=True),
            gain_c=_gain_c(obj, "channel"),
            mode=_enum(obj, "channel", "mode", InterferenceMode,
                       default=InterferenceMode.NEAREST_INTERFERER),
            d_min=_number(obj, "channel", "d_min_m", default=0.1, positive=True),
        )
    except ValueError as exc:
        raise ConfigError(f"channel: {exc}") from None


def _parse_radio(obj: dict) -> RadioConfig:
    try:
        return RadioConfig(
            bandwidth_hz=_number(obj, "radio", "bandwidth_hz", positive=True),
            peak_rate_bps=_number(obj, "radio", "peak_rate_bps", positive=True),
        )
    except ValueError as exc:
        raise ConfigError(f"radio: {exc}") from None


def _parse_simulation(obj: dict, cfg: ScenarioConfig) -> None:
    cfg.snapshots = _integer(obj, "simulation", "snapshots", default=100, minimum=1)
    cfg.seed = _integer(obj, "simulation", "seed", default=0, minimum=0)
    cfg.workers = _integer(obj, "simulation", "workers", default=1, minimum=1)
    cfg.fixed_counts = _boolean(obj, "simulation", "fixed_counts", default=False)


def _parse_curve(obj: dict, cfg: ScenarioConfig) -> None:
    lo = _number(obj, "curve", "ratio_min", default=0.1, positive=True)
    hi = _number(obj, "curve", "ratio_max", default=1000.0, positive=True)
    n = _integer(obj, "curve", "points", default=121, minimum=2)
    if hi <= lo:
        raise ConfigError("curve.ratio_max: must be > curve.ratio_min")
    cfg.curve_ratios = np.geomspace(lo, hi, n)


def _parse_energy(obj: dict, alpha: float) -> EnergyParams:
    try:
        return EnergyParams(
            c1=_number(obj, "energy", "c1_transmit_w_m_alpha", minimum=0.0),
            c2=_number(obj, "energy", "c2_idle_w", minimum=0.0),
            alpha=alpha,
        )
    except ValueError as exc:
        raise ConfigError(f"energy: {exc}") from None


def _parse_architectures(raw_list, path: str = "architectures") -> list:
    if not isinstance(raw_list, list) or not raw_list:
        raise ConfigError(f"{path}: must be a non-empty list")
    archs = []
    for i, obj in enumerate(raw_list):
        p = f"{path}[{i}]"
        if not isinstance(obj, dict):
            raise ConfigError(f"{p}: must be an object")
        ceiling = None
        if "capacity_ceiling_bps_hz_m2" in obj:
            ceiling = _number(obj, p, "capacity_ceiling_bps_hz_m2", positive=True)
        try:
            archs.append(
                ArchitectureCost(
                    name=_string(obj, p, "name"),
                    fixed_cost=_number(obj, p, "fixed_cost_units", minimum=0.0),
                    per_ap_cost=_number(obj, p, "per_ap_cost_units", minimum=0.0),
                    backhaul_per_ap=_number(obj, p, "backhaul_per_ap_cost_units", minimum=0.0),
                    gain_c=_gain_c(obj, p),
                    capacity_ceiling=ceiling,
                )
            )
        except ValueError as exc:
            raise ConfigError(f"{p}: {exc}") from None
    return archs


def _parse_plan(obj: dict) -> PlanSpec:
    rows = []
    raw_rows = obj.get("custom_rows", [])
    if not isinstance(raw_rows, list):
        raise ConfigError("plan.custom_rows: must be a list")
    for i, row in enumerate(raw_rows):
        p = f"plan.custom_rows[{i}]"
        if not isinstance(row, dict):
            raise ConfigError(f"{p}: must be an object")
        tech = _enum(row, p, "technology", Technology)
        common = dict(
            label=_string(row, p, "label"),
            technology=tech,
            area_m2=_number(row, p, "area_m2", positive=True),
            target_capacity_bps_m2=_number(row, p, "target_capacity_bps_m2", positive=True),
        )
        if tech is Technology.WIFI_CHANNELIZED:
            lam_u = None
            if "lambda_u_per_m2" in row:
                lam_u = _number(row, p, "lambda_u_per_m2", positive=True)
            rows.append(
                CustomPlanRow(
                    **common,
                    peak_rate_bps=_number(row, p, "peak_rate_bps", positive=True),
                    channel_bw_hz=_number(row, p, "channel_bw_hz", positive=True),
                    rounding=_enum(row, p, "rounding", Rounding, default=Rounding.CEIL),
                    lambda_u_per_m2=lam_u,
                )
            )
        else:
            rows.append(
                CustomPlanRow(
                    **common,
                    lambda_u_per_m2=_number(row, p, "lambda_u_per_m2", positive=True),
                    ratio=_number(row, p, "ratio", minimum=0.0),
                    gain_c=_gain_c(row, p),
                    alpha=_number(row, p, "alpha", positive=True),
                )
            )
    return PlanSpec(
        area_m2=_number(obj, "plan", "area_m2", positive=True),
        target_capacity_bps_m2=_number(obj, "plan", "target_capacity_bps_m2", positive=True),
        peak_rate_bps=_number(obj, "plan", "peak_rate_bps", positive=True),
        channel_bw_hz=_number(obj, "plan", "channel_bw_hz", positive=True),
        rounding=_enum(obj, "plan", "rounding", Rounding, default=Rounding.CEIL),
        custom_rows=tuple(rows),
    )


def _parse_classify(obj: dict) -> ClassifySpec:
    required = None
    if "required_spectrum_hz" in obj:
        required = _number(obj, "classify", "required_spectrum_hz", positive=True)
    return ClassifySpec(
        available_spectrum_hz=_number(obj, "classify", "available_spectrum_hz", positive=True),
        environment=_enum(obj, "classify", "environment", Environment),
        required_spectrum_hz=required,
    )


def parse_config(raw: dict) -> ScenarioConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config: top level must be an object")
    version = _integer(raw, "config", "schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"schema_version: expected {SCHEMA_VERSION}, got {version}")

    cfg = ScenarioConfig()
    section = _section(raw, "region")
    if section is not None:
        cfg.region = _parse_region(section)
    section = _section(raw, "densities")
    if section is not None:
        _parse_densities(section, cfg)
    section = _section(raw, "channel")
    if section is not None:
        cfg.channel = _parse_channel(section)
    section = _section(raw, "radio")
    if section is not None:
        cfg.radio = _parse_radio(section)
    section = _section(raw, "simulation")
    if section is not None:
        _parse_simulation(section, cfg)
    section = _section(raw, "curve")
    if section is not None:
        _parse_curve(section, cfg)
    section = _section(raw, "energy")
    if section is not None:
        if cfg.channel is None:
            raise ConfigError("energy: requires the channel section (for alpha)")
        cfg.energy = _parse_energy(section, cfg.channel.alpha)
    if "architectures" in raw:
        cfg.architectures = _parse_architectures(raw["architectures"])
    cost = _section(raw, "cost") if "cost" in raw else None
    if cost is not None:
        targets = cost.get("targets_bps_hz_m2")
        if targets is not None:
            if not isinstance(targets, list) or not targets:
                raise ConfigError("cost.targets_bps_hz_m2: must be a non-empty list")
            parsed = []
            for i, t in enumerate(targets):
                if isinstance(t, bool) or not isinstance(t, (int, float)) or t <= 0:
                    raise ConfigError(f"cost.targets_bps_hz_m2[{i}]: must be a number > 0")
                parsed.append(float(t))
            cfg.cost_targets = parsed
    section = _section(raw, "plan")
    if section is not None:
        cfg.plan = _parse_plan(section)
    section = _section(raw, "classify")
    if section is not None:
        cfg.classify = _parse_classify(section)
    return cfg


def load_config(path: str) -> ScenarioConfig:
    """Read and validate a scenario configuration file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON in {path}: {exc}") from None
    return parse_config(raw)
