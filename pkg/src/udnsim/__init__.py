"""Stochastic-geometry simulator and deployment planner for ultra-dense
indoor wireless networks: Monte Carlo area-capacity and SIR estimation over
Poisson deployments, the matching closed-form capacity and energy laws, and
spectrum/cost planning for competing architectures."""

from .channel import (
    NO_INTERFERENCE,
    ChannelModel,
    InterferenceMode,
    db_to_linear,
    path_gain,
    sir_at_user,
    sir_for_all_users,
)
from .econ import (
    ArchitectureCost,
    DeploymentRegion,
    Environment,
    RecommendedDesign,
    Rounding,
    ScenarioClass,
    SpectrumPlan,
    Technology,
    UnattainableError,
    classify_scenario,
    cost_curve,
    default_architectures,
    preset_plans,
    required_spectrum_udn,
    udn_spectrum_plan,
    wifi_spectrum_plan,
)
from .geometry import (
    NoCandidateError,
    PointPattern,
    Region,
    distance,
    nearest_neighbor,
    sample_fixed_count,
    sample_poisson_process,
)
from .model import (
    DensityPair,
    EnergyParams,
    area_capacity_closed_form,
    critical_ap_density,
    critical_ratio,
    density_ratio_for_spectral_efficiency,
    optimal_ap_density,
    per_user_rate_closed_form,
    power_per_user,
)
from .simulate import (
    CapacityEstimate,
    RadioConfig,
    Snapshot,
    build_snapshot,
    estimate_area_capacity,
    snapshot_user_rates,
    user_rate,
)

__version__ = "0.1.0"
