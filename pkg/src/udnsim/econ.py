"""Techno-economic layer: spectrum dimensioning for a capacity target, cost
curves per deployment architecture, and regime classification."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .channel import db_to_linear
from .model import density_ratio_for_spectral_efficiency
from .simulate import RadioConfig


class UnattainableError(Exception):
    """The capacity target cannot be met at the given parameters."""


class Technology(Enum):
    WIFI_CHANNELIZED = "WiFiChannelized"
    UDN = "UDN"


class Rounding(Enum):
    CEIL = "ceil"
    NEAREST = "nearest"


class Environment(Enum):
    CLOSED = "closed"  # walled-in offices, homes: interference stays in the room
    OPEN = "open"  # malls, stations, stadiums: long line-of-sight interference paths


class DeploymentRegion(Enum):
    A = "A"
    B = "B"
    C = "C"


class RecommendedDesign(Enum):
    WIFI_LIKE = "WiFiLike"
    PICO_CELLULAR_REUSE = "PicoCellularReuse"
    CENTRALIZED_COORDINATED = "CentralizedCoordinated"


_DESIGN_FOR_REGION = {
    DeploymentRegion.A: RecommendedDesign.WIFI_LIKE,
    DeploymentRegion.B: RecommendedDesign.PICO_CELLULAR_REUSE,
    DeploymentRegion.C: RecommendedDesign.CENTRALIZED_COORDINATED,
}


@dataclass(frozen=True)
class ScenarioClass:
    region: DeploymentRegion
    recommended: RecommendedDesign

    def __post_init__(self) -> None:
        if _DESIGN_FOR_REGION[self.region] is not self.recommended:
            raise ValueError(f"region {self.region.value} pairs with {_DESIGN_FOR_REGION[self.region].value}")


@dataclass(frozen=True)
class SpectrumPlan:
    """Access point count and bandwidth needed to reach a capacity target."""

    ap_count: int
    spectrum_hz: float
    ratio: Optional[float]  # AP density over user density, when known
    inter_ap_distance_m: float
    technology: Technology

    def __post_init__(self) -> None:
        if self.ap_count < 1:
            raise ValueError("ap_count must be >= 1")
        if self.spectrum_hz <= 0.0:
            raise ValueError("spectrum_hz must be positive")
        if self.inter_ap_distance_m <= 0.0:
            raise ValueError("inter_ap_distance_m must be positive")


@dataclass(frozen=True)
class ArchitectureCost:
    """Cost model of one deployment architecture.

    Costs are per square meter of served floor; the absolute scale is
    arbitrary, the curves are for comparison. ``capacity_ceiling``, when set,
    is the largest area spectral efficiency (bit/s/Hz/m^2) the design can
    reach no matter how many access points are added.
    """

    name: str
    fixed_cost: float
    per_ap_cost: float
    backhaul_per_ap: float
    gain_c: float
    capacity_ceiling: Optional[float] = None

    def __post_init__(self) -> None:
        if min(self.fixed_cost, self.per_ap_cost, self.backhaul_per_ap) < 0.0:
            raise ValueError("costs must be >= 0")
        if self.gain_c <= 0.0:
            raise ValueError("gain_c must be positive")
        if self.capacity_ceiling is not None and self.capacity_ceiling <= 0.0:
            raise ValueError("capacity_ceiling must be positive when present")


def required_spectrum_udn(
    target_capacity: float, lambda_u: float, ratio: float, gain_c: float, alpha: float
) -> float:
    """Bandwidth (Hz) needed to reach ``target_capacity`` (bit/s/m^2) at a
    given density ratio, assuming full-band reuse at every access point."""
    if target_capacity <= 0.0 or lambda_u <= 0.0 or gain_c <= 0.0 or alpha <= 0.0:
        raise ValueError("target, lambda_u, gain_c and alpha must be positive")
    if ratio < 0.0:
        raise ValueError("ratio must be >= 0")
    log_term = math.log2(1.0 + gain_c * ratio ** (alpha / 2.0))
    if log_term == 0.0:
        raise UnattainableError("a zero density ratio cannot carry any traffic")
    return target_capacity / (lambda_u * log_term)


def wifi_spectrum_plan(
    area: float,
    target_capacity: float,
    peak_rate: float,
    channel_bw: float,
    rounding: Rounding = Rounding.CEIL,
    lambda_u: Optional[float] = None,
) -> SpectrumPlan:
    """Orthogonal-channel plan: every access point gets its own clean channel
    (no spatial reuse), so spectrum grows linearly with the AP count."""
    if min(area, target_capacity, peak_rate, channel_bw) <= 0.0:
        raise ValueError("area, target, peak rate and channel bandwidth must be positive")
    raw = area * target_capacity / peak_rate
    count = math.ceil(raw) if rounding is Rounding.CEIL else math.floor(raw + 0.5)
    count = max(1, count)
    ratio = (count / area) / lambda_u if lambda_u else None
    return SpectrumPlan(
        ap_count=count,
        spectrum_hz=count * channel_bw,
        ratio=ratio,
        inter_ap_distance_m=math.sqrt(area / count),
        technology=Technology.WIFI_CHANNELIZED,
    )


def udn_spectrum_plan(
    area: float,
    target_capacity: float,
    lambda_u: float,
    ratio: float,
    gain_c: float,
    alpha: float,
) -> SpectrumPlan:
    """Dense full-reuse plan: all access points share the whole band and the
    bandwidth follows from inverting the capacity law."""
    spectrum = required_spectrum_udn(target_capacity, lambda_u, ratio, gain_c, alpha)
    count = max(1, round(ratio * lambda_u * area))
    return SpectrumPlan(
        ap_count=count,
        spectrum_hz=spectrum,
        ratio=ratio,
        inter_ap_distance_m=math.sqrt(area / count),
        technology=Technology.UDN,
    )


def preset_plans() -> list[tuple[str, float, SpectrumPlan]]:
    """Bundled reference rooms as (label, area_m2, plan), all dimensioned for
    1 Gbit/s/m^2 at 0.2 users/m^2: a small conference room on channelized WiFi
    (7 Gbit/s peak in a 160 MHz channel), and a cafeteria-sized open area on
    WiFi, on a dense full-reuse deployment, and on the same deployment with
    20 dB of beamforming gain."""
    lambda_u = 0.2
    target = 1e9
    return [
        ("small_conference_room_wifi", 20.0,
         wifi_spectrum_plan(20.0, target, 7e9, 160e6, Rounding.CEIL, lambda_u)),
        ("cafeteria_wifi", 150.0,
         wifi_spectrum_plan(150.0, target, 7e9, 160e6, Rounding.NEAREST, lambda_u)),
        ("cafeteria_udn", 150.0,
         udn_spectrum_plan(150.0, target, lambda_u, 5.0, 1.0, 2.0)),
        ("cafeteria_udn_beamforming", 150.0,
         udn_spectrum_plan(150.0, target, lambda_u, 5.0, db_to_linear(20.0), 2.0)),
    ]


def default_architectures() -> list[ArchitectureCost]:
    """Illustrative cost parameter sets for the three design families. The
    numbers are shipped configuration defaults chosen to show the qualitative
    trade-offs (cheap WiFi until its ceiling, moderate pico-cellular growth,
    centralized coordination paying off at high targets); they are not
    calibrated against any vendor data."""
    return [
        ArchitectureCost("wifi_like", 0.0, 100.0, 50.0, 1.0, capacity_ceiling=0.5),
        ArchitectureCost("pico_cellular", 1.0, 250.0, 150.0, 1.0),
        ArchitectureCost("centralized_coordinated", 25.0, 400.0, 600.0, db_to_linear(20.0)),
    ]


def cost_curve(
    arch: ArchitectureCost,
    lambda_u: float,
    radio: RadioConfig,
    alpha: float,
    targets,
) -> list[tuple[float, Optional[float]]]:
    """Deployment cost against area spectral efficiency targets
    (bit/s/Hz/m^2).

    Cost is ``None`` (unattainable) beyond the architecture's explicit
    ceiling, and beyond the point where the per-user equipment peak rate caps
    the achievable spectral efficiency regardless of density.
    """
    if lambda_u <= 0.0:
        raise ValueError("lambda_u must be positive")
    peak_se = radio.peak_rate_bps / radio.bandwidth_hz
    points: list[tuple[float, Optional[float]]] = []
    for eta in targets:
        if eta <= 0.0:
            raise ValueError("targets must be positive")
        per_user_se = eta / lambda_u
        if (arch.capacity_ceiling is not None and eta > arch.capacity_ceiling) or per_user_se > peak_se:
            points.append((eta, None))
            continue
        lam_required = lambda_u * density_ratio_for_spectral_efficiency(
            per_user_se, arch.gain_c, alpha
        )
        cost = arch.fixed_cost + (arch.per_ap_cost + arch.backhaul_per_ap) * lam_required
        points.append((eta, cost))
    return points


def classify_scenario(
    available_spectrum_hz: float,
    required_spectrum_hz: float,
    environment: Environment,
) -> ScenarioClass:
    """Pick a deployment regime from spectrum supply versus the spectrum a
    low-complexity (WiFi-grade) design would need.

    Plenty of spectrum puts any environment in region A (WiFi-like). Under
    spectrum shortage, walls make frequency reuse work (region B); open
    spaces need centralized interference coordination (region C).
    """
    if available_spectrum_hz <= 0.0 or required_spectrum_hz <= 0.0:
        raise ValueError("spectrum amounts must be positive")
    if available_spectrum_hz >= required_spectrum_hz:
        return ScenarioClass(DeploymentRegion.A, RecommendedDesign.WIFI_LIKE)
    if environment is Environment.CLOSED:
        return ScenarioClass(DeploymentRegion.B, RecommendedDesign.PICO_CELLULAR_REUSE)
    return ScenarioClass(DeploymentRegion.C, RecommendedDesign.CENTRALIZED_COORDINATED)
