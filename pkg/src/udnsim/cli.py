"""Command line front end: evaluates scenarios from a JSON config file and
emits deterministic CSV (header row, full-precision scientific notation,
``unattainable`` as the sentinel for out-of-reach targets)."""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import econ, model
from .config import ConfigError, ScenarioConfig, load_config
from .simulate import estimate_area_capacity

UNATTAINABLE = "unattainable"


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17e")


def _render_csv(header: list, rows: list) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def cmd_simulate(cfg: ScenarioConfig):
    region = cfg.require("region", "region")
    channel = cfg.require("channel", "channel")
    radio = cfg.require("radio", "radio")
    lambda_u = cfg.require("lambda_u", "densities")
    if cfg.lambda_ap is not None:
        lambda_aps = [cfg.lambda_ap]
    elif cfg.ratio_sweep is not None:
        lambda_aps = [r * lambda_u for r in cfg.ratio_sweep]
    else:
        raise ConfigError("densities: lambda_ap_per_m2 or ratio_sweep required")

    rows = []
    for lambda_ap in lambda_aps:
        est = estimate_area_capacity(
            lambda_ap, lambda_u, region, channel, radio,
            snapshots=cfg.snapshots, seed=cfg.seed, workers=cfg.workers,
            fixed_counts=cfg.fixed_counts,
        )
        ratio = lambda_ap / lambda_u if lambda_u > 0 else math.nan
        median_sir = float(np.median(est.sir_samples)) if est.sir_samples.size else math.nan
        rows.append(
            (
                lambda_ap,
                lambda_u,
                ratio,
                est.mean_area_capacity_bps_per_m2,
                est.standard_error_of_area_capacity,
                est.mean_user_rate_bps,
                median_sir,
            )
        )
    header = [
        "lambda_ap_per_m2",
        "lambda_u_per_m2",
        "ratio",
        "mean_area_capacity_bps_m2",
        "stderr_area_capacity_bps_m2",
        "mean_user_rate_bps",
        "median_sir_linear",
    ]
    return header, rows


def cmd_capacity_curve(cfg: ScenarioConfig):
    channel = cfg.require("channel", "channel")
    radio = cfg.require("radio", "radio")
    rows = [
        (r, model.per_user_rate_closed_form(r, radio, channel.gain_c, channel.alpha))
        for r in cfg.curve_ratios
    ]
    return ["ratio", "per_user_rate_bps"], rows


def cmd_energy_curve(cfg: ScenarioConfig):
    energy = cfg.require("energy", "energy")
    lambda_u = cfg.require("lambda_u", "densities")
    if lambda_u <= 0:
        raise ConfigError("densities.lambda_u_per_m2: must be > 0 for the energy curve")
    rows = [
        (r, model.power_per_user(model.DensityPair(r * lambda_u, lambda_u), energy))
        for r in cfg.curve_ratios
    ]
    return ["ratio", "power_per_user_w"], rows


def _plan_to_row(label: str, plan: econ.SpectrumPlan, area: float):
    return (
        label,
        plan.technology.value,
        area,
        plan.ap_count,
        plan.ratio if plan.ratio is not None else math.nan,
        plan.inter_ap_distance_m,
        plan.spectrum_hz,
    )


def cmd_spectrum_plan(cfg: ScenarioConfig):
    rows = [_plan_to_row(label, plan, area) for label, area, plan in econ.preset_plans()]
    if cfg.plan is not None:
        for row in cfg.plan.custom_rows:
            if row.technology is econ.Technology.WIFI_CHANNELIZED:
                plan = econ.wifi_spectrum_plan(
                    row.area_m2, row.target_capacity_bps_m2, row.peak_rate_bps,
                    row.channel_bw_hz, row.rounding, row.lambda_u_per_m2,
                )
            else:
                plan = econ.udn_spectrum_plan(
                    row.area_m2, row.target_capacity_bps_m2, row.lambda_u_per_m2,
                    row.ratio, row.gain_c, row.alpha,
                )
            rows.append(_plan_to_row(row.label, plan, row.area_m2))
    header = [
        "scenario",
        "technology",
        "area_m2",
        "ap_count",
        "ratio",
        "inter_ap_distance_m",
        "spectrum_hz",
    ]
    return header, rows


def cmd_cost_compare(cfg: ScenarioConfig):
    radio = cfg.require("radio", "radio")
    channel = cfg.require("channel", "channel")
    lambda_u = cfg.require("lambda_u", "densities")
    archs = cfg.architectures or econ.default_architectures()
    curves = [
        econ.cost_curve(arch, lambda_u, radio, channel.alpha, cfg.cost_targets)
        for arch in archs
    ]
    rows = []
    for i, target in enumerate(cfg.cost_targets):
        row = [target]
        for curve in curves:
            cost = curve[i][1]
            row.append(UNATTAINABLE if cost is None else cost)
        rows.append(tuple(row))
    header = ["target_bps_hz_m2"] + [f"{arch.name}_cost_units" for arch in archs]
    return header, rows


def cmd_classify(cfg: ScenarioConfig):
    spec = cfg.require("classify", "classify")
    required = spec.required_spectrum_hz
    if required is None:
        if cfg.plan is None:
            raise ConfigError(
                "classify.required_spectrum_hz: required (or provide a plan section to derive it)"
            )
        plan = econ.wifi_spectrum_plan(
            cfg.plan.area_m2, cfg.plan.target_capacity_bps_m2,
            cfg.plan.peak_rate_bps, cfg.plan.channel_bw_hz, cfg.plan.rounding,
        )
        required = plan.spectrum_hz
    result = econ.classify_scenario(spec.available_spectrum_hz, required, spec.environment)
    return ["region", "recommended_architecture"], [
        (result.region.value, result.recommended.value)
    ]


_COMMANDS = {
    "simulate": cmd_simulate,
    "capacity-curve": cmd_capacity_curve,
    "energy-curve": cmd_energy_curve,
    "spectrum-plan": cmd_spectrum_plan,
    "cost-compare": cmd_cost_compare,
    "classify": cmd_classify,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="udnsim",
        description="Dense indoor wireless network simulator and deployment planner",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("simulate", "Monte Carlo area capacity over the configured density sweep"),
        ("capacity-curve", "closed-form per-user rate vs density ratio"),
        ("energy-curve", "closed-form per-user power vs density ratio"),
        ("spectrum-plan", "bundled reference rooms plus custom spectrum plans"),
        ("cost-compare", "cost vs area spectral efficiency per architecture"),
        ("classify", "deployment regime from available vs required spectrum"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to the JSON scenario config")
        p.add_argument("--out", default=None, help="output CSV path (default: stdout)")
        if name == "simulate":
            p.add_argument("--seed", type=int, default=None, help="override simulation.seed")
            p.add_argument("--snapshots", type=int, default=None,
                           help="override simulation.snapshots")
            p.add_argument("--workers", type=int, default=None,
                           help="override simulation.workers")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if getattr(args, "seed", None) is not None:
            if args.seed < 0:
                raise ConfigError("--seed: must be >= 0")
            cfg.seed = args.seed
        if getattr(args, "snapshots", None) is not None:
            if args.snapshots < 1:
                raise ConfigError("--snapshots: must be >= 1")
            cfg.snapshots = args.snapshots
        if getattr(args, "workers", None) is not None:
            if args.workers < 1:
                raise ConfigError("--workers: must be >= 1")
            cfg.workers = args.workers
        header, rows = _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure contract: exit code 1
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = _render_csv(header, rows)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
