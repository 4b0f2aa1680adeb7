"""Closed-form capacity and energy laws for dense deployments.

The per-user rate follows the Shannon form

    rate = min(W * log2(1 + c * ratio**(alpha/2)), R_max)

with ratio = lambda_ap / lambda_u and the proportionality constant fixed to
one; the econ module inverts exactly this normalization, so the two stay
consistent. Per-user power decomposes into a transmit term that shrinks as
access points move closer and an idle term that grows with the number of
silent access points per user.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .simulate import RadioConfig

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class DensityPair:
    """Access point and user densities, both per square meter."""

    lambda_ap: float
    lambda_u: float

    def __post_init__(self) -> None:
        if self.lambda_ap < 0.0 or self.lambda_u < 0.0:
            raise ValueError("densities must be >= 0")

    def ratio(self) -> float:
        if self.lambda_u <= 0.0:
            raise ValueError("ratio undefined for zero user density")
        return self.lambda_ap / self.lambda_u


@dataclass(frozen=True)
class EnergyParams:
    """Coefficients of the per-user power law
    ``c1 / lambda_ap**(alpha/2) + c2 * lambda_ap / lambda_u``.

    c1 scales the transmit term (watts times meters**alpha, folding in the
    target receive level); c2 is the idle draw of one access point in watts.
    """

    c1: float
    c2: float
    alpha: float

    def __post_init__(self) -> None:
        if self.c1 < 0.0 or self.c2 < 0.0:
            raise ValueError("c1 and c2 must be >= 0")
        if self.c1 == 0.0 and self.c2 == 0.0:
            raise ValueError("c1 and c2 cannot both be zero")
        if self.alpha <= 0.0:
            raise ValueError("alpha must be positive")


def density_ratio_for_spectral_efficiency(
    bits_per_hz: float, gain_c: float, alpha: float
) -> float:
    """Invert the rate law: the density ratio at which one user reaches
    ``bits_per_hz`` of spectral efficiency, ``((2**b - 1)/c)**(2/alpha)``.

    Stays finite and overflow-safe for extreme arguments; returns infinity
    when the required ratio exceeds the floating point range.
    """
    if bits_per_hz < 0.0:
        raise ValueError("spectral efficiency must be >= 0")
    if bits_per_hz == 0.0:
        return 0.0
    if bits_per_hz <= 1000.0:
        t = math.expm1(bits_per_hz * _LN2)
        log2_t = math.log2(t)
    else:
        log2_t = bits_per_hz  # 2**b - 1 == 2**b at double precision
    v = (2.0 / alpha) * (log2_t - math.log2(gain_c))
    if v >= 1023.9:
        return math.inf
    return 2.0**v


def critical_ratio(radio: RadioConfig, gain_c: float, alpha: float) -> float:
    """Density ratio beyond which every user is capped at the peak rate."""
    return density_ratio_for_spectral_efficiency(
        radio.peak_rate_bps / radio.bandwidth_hz, gain_c, alpha
    )


def critical_ap_density(
    lambda_u: float, radio: RadioConfig, gain_c: float, alpha: float
) -> float:
    """AP density at which the per-user rate first reaches the peak rate."""
    if lambda_u <= 0.0:
        raise ValueError("lambda_u must be positive")
    return lambda_u * critical_ratio(radio, gain_c, alpha)


def per_user_rate_closed_form(
    ratio: float, radio: RadioConfig, gain_c: float, alpha: float
) -> float:
    """Per-user data rate (bit/s) at a given AP/user density ratio.

    Exactly ``peak_rate_bps`` at and beyond the critical ratio; continuous at
    the branch point.
    """
    if ratio < 0.0:
        raise ValueError("ratio must be >= 0")
    if ratio >= critical_ratio(radio, gain_c, alpha):
        return radio.peak_rate_bps
    if ratio > 0.0:
        log2_arg = (alpha / 2.0) * math.log2(ratio) + math.log2(gain_c)
    else:
        log2_arg = -math.inf
    if log2_arg > 60.0:
        # log2(1 + x) == log2(x) to double precision; avoids overflow in x
        shannon = radio.bandwidth_hz * log2_arg
    else:
        shannon = radio.bandwidth_hz * math.log2(1.0 + gain_c * ratio ** (alpha / 2.0))
    return min(shannon, radio.peak_rate_bps)


def area_capacity_closed_form(
    densities: DensityPair, radio: RadioConfig, gain_c: float, alpha: float
) -> float:
    """Area capacity (bit/s per m^2): user density times the per-user rate.
    Zero user density yields zero by convention."""
    if densities.lambda_u == 0.0:
        return 0.0
    return densities.lambda_u * per_user_rate_closed_form(
        densities.ratio(), radio, gain_c, alpha
    )


def power_per_user(densities: DensityPair, params: EnergyParams) -> float:
    """Per-user power draw (watts): transmit term plus idle term."""
    if densities.lambda_u <= 0.0:
        raise ValueError("lambda_u must be positive")
    lam_ap = densities.lambda_ap
    if lam_ap == 0.0:
        if params.c1 > 0.0:
            raise ValueError("transmit term diverges at zero AP density")
        return 0.0
    return (
        params.c1 * lam_ap ** (-params.alpha / 2.0)
        + params.c2 * lam_ap / densities.lambda_u
    )


def optimal_ap_density(lambda_u: float, params: EnergyParams) -> float:
    """AP density minimizing the per-user power,
    ``((alpha/2) * c1 * lambda_u / c2) ** (2/(alpha+2))``."""
    if lambda_u <= 0.0:
        raise ValueError("lambda_u must be positive")
    if params.c1 <= 0.0 or params.c2 <= 0.0:
        raise ValueError("no interior minimum unless both c1 > 0 and c2 > 0")
    return ((params.alpha / 2.0) * params.c1 * lambda_u / params.c2) ** (
        2.0 / (params.alpha + 2.0)
    )
