"""Acceptance suite: one test per exit criterion, each printing a pass/fail
line with the measured values (use ``pytest -s`` to watch them live).

The heavyweight Monte Carlo criteria (3 and 4) stay within their runtime
budgets on two cores; everything else is near-instant.
"""
import json
import math
import time

import numpy as np

from udnsim.channel import ChannelModel
from udnsim.cli import main
from udnsim.geometry import PointPattern, Region, nearest_neighbor, sample_poisson_process
from udnsim.model import (
    DensityPair,
    EnergyParams,
    area_capacity_closed_form,
    critical_ratio,
    optimal_ap_density,
    per_user_rate_closed_form,
    power_per_user,
)
from udnsim.econ import required_spectrum_udn
from udnsim.simulate import RadioConfig, estimate_area_capacity

WORKERS = 2


def _report(criterion: str, passed: bool, detail: str) -> None:
    print(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")
    assert passed, f"{criterion}: {detail}"


def test_criterion_1_reference_table_reproduction(tmp_path, capsys):
    cfg = tmp_path / "plan.json"
    cfg.write_text(json.dumps({"schema_version": 1}))
    assert main(["spectrum-plan", "--config", str(cfg)]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    rows = {r.split(",")[0]: r.split(",") for r in lines[1:]}
    conf = rows["small_conference_room_wifi"]
    caf = rows["cafeteria_wifi"]
    udn = rows["cafeteria_udn"]
    bf = rows["cafeteria_udn_beamforming"]

    checks = [
        ("conference 3 APs exact", int(conf[3]) == 3),
        ("conference 480 MHz exact", float(conf[6]) == 480e6),
        ("conference inter-AP 2.58 m vs 2.5 m +-5%",
         abs(float(conf[5]) - 2.5) / 2.5 <= 0.05),
        ("cafeteria 21 APs (nearest rounding)", int(caf[3]) == 21),
        ("cafeteria 3.36 GHz vs 3.3 GHz +-5%", abs(float(caf[6]) - 3.3e9) / 3.3e9 <= 0.05),
        ("dense reuse 1.934 GHz vs 2 GHz +-5%", abs(float(udn[6]) - 2e9) / 2e9 <= 0.05),
        ("dense reuse 150 APs", int(udn[3]) == 150),
        ("dense reuse inter-AP 1 m +-5%", abs(float(udn[5]) - 1.0) <= 0.05),
        ("beamformed 557.5 MHz vs 500 MHz +-12%", abs(float(bf[6]) - 5e8) / 5e8 <= 0.12),
    ]
    detail = "; ".join(name for name, ok in checks if not ok) or (
        f"480 MHz / 3.36 GHz / {float(udn[6])/1e9:.3f} GHz / {float(bf[6])/1e6:.1f} MHz"
    )
    _report("criterion 1 (spectrum planning table)", all(ok for _, ok in checks), detail)


def test_criterion_2_closed_form_saturation_and_monotonicity():
    rng = np.random.default_rng(2025)
    draws = 10_000
    worst_cont = 0.0
    for _ in range(draws):
        radio = RadioConfig(10 ** rng.uniform(5, 10), 10 ** rng.uniform(6, 11))
        gain_c = 10 ** rng.uniform(-2, 3)
        alpha = rng.uniform(1.5, 6.0)
        r1, r2 = np.sort(10 ** rng.uniform(-3, 4, size=2))
        rate1 = per_user_rate_closed_form(float(r1), radio, gain_c, alpha)
        rate2 = per_user_rate_closed_form(float(r2), radio, gain_c, alpha)
        assert rate2 >= rate1, f"monotonicity violated: {rate1} > {rate2}"

        crit = critical_ratio(radio, gain_c, alpha)
        if math.isfinite(crit):
            for factor in (1.0, 10 ** rng.uniform(0.0, 3.0)):
                capped = per_user_rate_closed_form(crit * factor, radio, gain_c, alpha)
                assert capped == radio.peak_rate_bps, "not exactly peak beyond critical ratio"
            if (alpha / 2.0) * math.log2(crit) + math.log2(gain_c) <= 900.0:
                left = radio.bandwidth_hz * math.log2(1.0 + gain_c * crit ** (alpha / 2.0))
                worst_cont = max(worst_cont, abs(left - radio.peak_rate_bps) / radio.peak_rate_bps)
    _report(
        "criterion 2 (rate law saturation/monotonicity)",
        worst_cont <= 1e-9,
        f"{draws} draws, worst branch-point discontinuity {worst_cont:.2e} (tol 1e-9)",
    )


def test_criterion_3_sir_exponent_scaling():
    t0 = time.perf_counter()
    region = Region(100.0, 100.0, wrap=True)
    lambda_u = 0.05
    ratios = np.array([2.0, 5.0, 10.0, 20.0, 50.0])
    radio = RadioConfig(1e8, 1e30)
    details = []
    ok = True
    for alpha in (2.0, 4.0):
        medians = []
        for j, ratio in enumerate(ratios):
            est = estimate_area_capacity(
                ratio * lambda_u, lambda_u, region, ChannelModel(alpha=alpha),
                radio, snapshots=500, seed=3000 + 100 * int(alpha) + j, workers=WORKERS,
            )
            medians.append(float(np.median(est.sir_samples)))
        slope = float(np.polyfit(np.log(ratios), np.log(medians), 1)[0])
        rel = slope / (alpha / 2.0) - 1.0
        ok = ok and abs(rel) <= 0.15
        details.append(f"alpha={alpha:g}: slope {slope:.3f} vs {alpha/2:g} ({rel:+.1%})")
    details.append(f"{time.perf_counter() - t0:.1f}s")
    _report("criterion 3 (SIR exponent, +-15%)", ok, "; ".join(details))


def test_criterion_4_simulated_capacity_growth_and_cap():
    t0 = time.perf_counter()
    # growth across the density sweep
    region = Region(50.0, 50.0, wrap=True)
    lambda_u = 0.05
    radio = RadioConfig(1e8, 1e10)
    means, errs = [], []
    for j, ratio in enumerate([2.0, 5.0, 10.0, 20.0, 50.0]):
        est = estimate_area_capacity(
            ratio * lambda_u, lambda_u, region, ChannelModel(alpha=2.0),
            radio, snapshots=300, seed=4000 + j, workers=WORKERS,
        )
        means.append(est.mean_area_capacity_bps_per_m2)
        errs.append(est.standard_error_of_area_capacity)
    growth_ok = all(
        means[i + 1] >= means[i] - 3.0 * math.hypot(errs[i], errs[i + 1])
        for i in range(len(means) - 1)
    )

    # peak-rate cap: critical ratio 10 by construction, evaluated at ratio 1000
    bandwidth = 1e8
    peak = bandwidth * math.log2(1.0 + 10.0)
    cap_radio = RadioConfig(bandwidth, peak)
    cap_region = Region(20.0, 20.0, wrap=True)
    est = estimate_area_capacity(
        1000 * lambda_u, lambda_u, cap_region, ChannelModel(alpha=2.0),
        cap_radio, snapshots=150, seed=4100, workers=WORKERS,
    )
    cap_rel = abs(est.mean_user_rate_bps - peak) / peak
    _report(
        "criterion 4 (capacity growth and peak cap)",
        growth_ok and cap_rel <= 0.01,
        f"sweep means {['%.3g' % m for m in means]} non-decreasing={growth_ok}; "
        f"mean rate at ratio 1000 within {cap_rel:.3%} of peak (tol 1%); "
        f"{time.perf_counter() - t0:.1f}s",
    )


def test_criterion_5_energy_optimum_vs_grid_oracle():
    rng = np.random.default_rng(55)
    worst_steps = 0.0
    for _ in range(100):
        params = EnergyParams(
            c1=10 ** rng.uniform(-1, 1), c2=10 ** rng.uniform(-1, 1),
            alpha=rng.uniform(1.5, 5.0),
        )
        lam_u = 10 ** rng.uniform(-1.3, 0.0)
        grid = np.geomspace(1e-3 * lam_u, 1e3 * lam_u, 2000)
        powers = np.array([power_per_user(DensityPair(g, lam_u), params) for g in grid])
        slopes = np.diff(powers) / np.diff(grid)
        assert np.all(np.diff(slopes) >= -1e-7 * np.abs(slopes[:-1]) - 1e-30), "not convex"
        best = grid[int(np.argmin(powers))]
        opt = optimal_ap_density(lam_u, params)
        step = math.log(grid[1] / grid[0])
        worst_steps = max(worst_steps, abs(math.log(opt / best)) / step)
    _report(
        "criterion 5 (energy optimum vs 2000-point grid)",
        worst_steps <= 1.0,
        f"worst offset {worst_steps:.3f} grid steps (tol 1); curve discretely convex",
    )


def test_criterion_6_poisson_statistics_and_nearest_neighbor_oracle():
    rng = np.random.default_rng(66)
    region = Region(10.0, 10.0, wrap=True)
    lam_area, draws = 100.0, 10_000
    counts = np.array(
        [len(sample_poisson_process(1.0, region, rng)) for _ in range(draws)]
    )
    se_mean = math.sqrt(lam_area / draws)
    se_var = math.sqrt((lam_area + 3 * lam_area**2 - lam_area**2) / draws)
    mean_err = abs(counts.mean() - lam_area)
    var_err = abs(counts.var(ddof=1) - lam_area)

    nn_ok = True
    for _ in range(100):
        pts = rng.random((80, 2)) * 10.0
        pat = PointPattern(pts)
        q = rng.random(2) * 10.0
        got_i, got_d = nearest_neighbor(q, pat, region)
        best_i, best_d = None, math.inf
        for i, (x, y) in enumerate(pts):
            dx, dy = abs(q[0] - x), abs(q[1] - y)
            dx, dy = min(dx, 10.0 - dx), min(dy, 10.0 - dy)
            d = math.hypot(dx, dy)
            if d < best_d:
                best_i, best_d = i, d
        nn_ok = nn_ok and got_i == best_i and abs(got_d - best_d) < 1e-12
    _report(
        "criterion 6 (point process statistics)",
        mean_err < 3 * se_mean and var_err < 3 * se_var and nn_ok,
        f"mean off {mean_err:.3f} (3SE {3*se_mean:.3f}), "
        f"var off {var_err:.3f} (3SE {3*se_var:.3f}), nearest-neighbor oracle {nn_ok}",
    )


def test_criterion_7_csv_determinism_across_parallelism(tmp_path):
    raw = {
        "schema_version": 1,
        "region": {"width_m": 40.0, "height_m": 40.0, "wrap": True},
        "densities": {"lambda_u_per_m2": 0.05, "ratio_sweep": [2, 5, 10, 20]},
        "channel": {"alpha": 2.0},
        "radio": {"bandwidth_hz": 1e8, "peak_rate_bps": 7e9},
        "simulation": {"snapshots": 40, "seed": 12345},
    }
    cfg = tmp_path / "sim.json"
    cfg.write_text(json.dumps(raw))
    outs = []
    for name, workers in [("w1.csv", "1"), ("w2.csv", "2"), ("w1b.csv", "1")]:
        out = tmp_path / name
        assert main(["simulate", "--config", str(cfg), "--out", str(out),
                     "--workers", workers]) == 0
        outs.append(out.read_bytes())
    identical = outs[0] == outs[1] == outs[2]
    _report(
        "criterion 7 (byte-identical CSV across reruns and worker counts)",
        identical,
        f"{len(outs[0])} bytes, workers 1/2/1 identical={identical}",
    )


def test_criterion_8_spectrum_capacity_round_trip():
    rng = np.random.default_rng(88)
    worst = 0.0
    for _ in range(1000):
        target = 10 ** rng.uniform(6, 10)
        lam_u = 10 ** rng.uniform(-2, 0)
        ratio = 10 ** rng.uniform(-1, 3)
        gain_c = 10 ** rng.uniform(-1, 3)
        alpha = rng.uniform(1.5, 6.0)
        w = required_spectrum_udn(target, lam_u, ratio, gain_c, alpha)
        back = area_capacity_closed_form(
            DensityPair(ratio * lam_u, lam_u), RadioConfig(w, 1e300), gain_c, alpha
        )
        worst = max(worst, abs(back - target) / target)
    _report(
        "criterion 8 (spectrum round trip)",
        worst <= 1e-9,
        f"1000 draws, worst relative error {worst:.2e} (tol 1e-9)",
    )
