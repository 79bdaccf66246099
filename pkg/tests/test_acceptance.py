"""Acceptance suite: one test per release criterion, at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL
line per criterion.
"""

import time

import numpy as np
import pytest

from atomgw import (
    BeamSplitterSpec,
    NoiseCurve,
    build_folded_triple_loop,
    build_mean_trajectory,
    build_single_loop,
    default_config,
    detection_phase_asd,
    ftl_phase_from_trajectory,
    full_requirement_report,
    interleaved_strain_asd,
    intrinsic_strain_asd,
    mirror_vibration_strain_asd,
    resonant_strain_asd,
    strain_response,
    strain_response_closed_form,
    timing_error_phase,
)
from atomgw.cli import EXIT_OK, main
from atomgw.sensitivity import DISPLACEMENT_UNITS
from atomgw.trajectory import RelaunchSpec

SPLITTER = BeamSplitterSpec()
K = SPLITTER.effective_wave_number
L = 1e4
T = 0.26
G = 9.81
CONFIG = default_config()


def report_line(number, description, passed):
    status = "PASS" if passed else "FAIL"
    print(f"criterion {number:02d} {status}: {description}")
    assert passed, f"criterion {number}: {description}"


def test_criterion_01_closed_form_kernel_equivalence():
    """Closed form vs generic kernel, < 1e-12 of the response scale on a
    2000-point log grid over [1e-3, 1e2] Hz, in under a second.

    The deviation is measured relative to the grid's peak magnitude: both
    evaluations land on rounding noise at the exact response zeros the log
    grid hits (for instance 100 Hz, where f*T = 26), where a pointwise
    ratio is 0/0.
    """
    grid = np.logspace(-3, 2, 2000)
    start = time.perf_counter()
    worst = 0.0
    for geometry, builder in (("sl", build_single_loop), ("ftl", build_folded_triple_loop)):
        seq = builder(T, SPLITTER)
        kernel = np.abs(strain_response(seq, L, grid))
        closed = strain_response_closed_form(geometry, K, L, T, grid)
        scale = max(float(kernel.max()), float(closed.max()))
        worst = max(worst, float(np.max(np.abs(kernel - closed))) / scale)
    elapsed = time.perf_counter() - start
    report_line(
        1,
        f"closed-form/kernel deviation {worst:.2e} < 1e-12 in {elapsed:.3f} s",
        worst < 1e-12 and elapsed < 1.0,
    )


def test_criterion_02_single_loop_requirement_table():
    """Single-loop tolerances at sigma_phi = 1 urad within 5 percent."""
    report = full_requirement_report(default_config("sl"), 1e-6, geometry="sl")
    entry = {e.name: e for e in report.entries}
    checks = [
        ("position 4.3e-10 m", entry["position_gravity_gradient"].tolerance, 4.3e-10),
        ("launch angle 1.4e-9 rad", entry["position_gravity_gradient"].launch_angle, 1.4e-9),
        ("velocity 1.7e-9 m/s", entry["velocity_gravity_gradient"].tolerance, 1.7e-9),
        ("Sagnac velocity 5.6e-12 m/s", entry["velocity_rotation"].tolerance, 5.6e-12),
        ("Sagnac launch angle 2.2e-12 rad", entry["velocity_rotation"].launch_angle, 2.2e-12),
    ]
    ok = all(abs(value / expected - 1) < 0.05 for _, value, expected in checks)
    detail = ", ".join(f"{name}: {value:.3g}" for name, value, _ in checks)
    report_line(2, f"single-loop table reproduced ({detail})", ok)


def test_criterion_03_triple_loop_relaunch_pointing():
    """Relaunch pointing: y within 5 percent of 3.3e-10 rad; x within a
    factor 2.5 of the tabulated 1e-12 rad with the discrepancy flagged."""
    report = full_requirement_report(default_config("ftl"), 1e-6, geometry="ftl")
    entry = {e.name: e for e in report.entries}
    y = entry["relaunch_pointing_y"].tolerance
    x = entry["relaunch_pointing_x"].tolerance
    y_ok = abs(y / 3.3e-10 - 1) < 0.05
    factor = max(x / 1e-12, 1e-12 / x)
    x_ok = factor < 2.5 and entry["relaunch_pointing_x"].warning is not None
    report_line(
        3,
        f"relaunch pointing y={y:.3g} rad, x={x:.3g} rad (factor {factor:.2f}, flagged)",
        y_ok and x_ok,
    )


def test_criterion_04_shot_noise_asd():
    """detection_phase_asd(1e9, 10 Hz, 20 dB) = 1.00e-6 rad/rtHz within 2%."""
    value = detection_phase_asd(1e9, 10.0, 20.0)
    report_line(4, f"detection phase ASD {value:.4e} rad/rtHz", abs(value / 1e-6 - 1) < 0.02)


def test_criterion_05_timing_error_bound():
    """10 ns common offset with 1 nrad relative tilt and a*tau = (5/2)gT
    stays within [0.3, 1] urad."""
    tau = 0.015
    accel = 2.5 * G * T / tau
    phi = timing_error_phase(K, accel, tau, 10e-9, 0.0, 0.0, 1e-9)
    report_line(5, f"timing-error phase {phi:.3e} rad", 0.3e-6 <= phi <= 1e-6)


def test_criterion_06_trajectory_oracle():
    """Closed form matches the exact trajectory evaluation to 1e-9 relative
    on 1000 random draws, in under 5 s."""
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        tau = float(rng.uniform(1e-3, 0.03))
        accel = 2.5 * G * T / tau
        tilt1, tilt2 = (float(v) for v in rng.uniform(-1e-6, 1e-6, 2))
        off1, off2 = (float(v) for v in rng.uniform(-1e-6, 1e-6, 2))
        segments = build_mean_trajectory(
            0.0,
            0.0,
            (RelaunchSpec(tau, accel, tilt1, off1), RelaunchSpec(tau, accel, tilt2, off2)),
            T,
        )
        phi_traj = ftl_phase_from_trajectory(segments, K, T)
        phi_closed = timing_error_phase(K, accel, tau, off2 + off1, off2 - off1, tilt1, tilt2)
        if abs(phi_closed) < 1e-15:
            worst = max(worst, abs(phi_traj - phi_closed) / 1e-15 * 1e-9)
        else:
            worst = max(worst, abs(phi_traj - phi_closed) / abs(phi_closed))
    elapsed = time.perf_counter() - start
    report_line(
        6,
        f"trajectory oracle worst deviation {worst:.2e} in {elapsed:.2f} s",
        worst < 1e-9 and elapsed < 5.0,
    )


def test_criterion_07_intrinsic_sensitivity_band():
    """Interleaved triple-loop curve finite and below 1e-19 /rtHz on
    [0.3, 5] Hz with its minimum inside [5e-22, 5e-21] /rtHz."""
    grid = np.linspace(0.3, 5.0, 2000)
    curve = interleaved_strain_asd(CONFIG, "ftl", grid)
    finite = bool(np.all(np.isfinite(curve.asd_values)))
    worst = float(curve.asd_values.max())
    best = float(curve.asd_values.min())
    ok = finite and worst < 1e-19 and 5e-22 <= best <= 5e-21
    report_line(7, f"interleaved band: max {worst:.2e}, min {best:.2e} /rtHz", ok)


def test_criterion_08_rolloff_slopes():
    """Below-band intrinsic ASD slopes: -2 (single loop) and -4 (folded
    triple loop) within 10 percent."""
    f = np.logspace(np.log10(1e-4 / T), np.log10(1e-3 / T), 200)
    slopes = {}
    for geometry, builder in (("sl", build_single_loop), ("ftl", build_folded_triple_loop)):
        curve = intrinsic_strain_asd(builder(T, SPLITTER), CONFIG, f)
        slopes[geometry] = float(
            np.polyfit(np.log(f), np.log(curve.asd_values), 1)[0]
        )
    ok = abs(slopes["sl"] / -2.0 - 1) < 0.10 and abs(slopes["ftl"] / -4.0 - 1) < 0.10
    report_line(8, f"roll-off slopes sl={slopes['sl']:.3f}, ftl={slopes['ftl']:.3f}", ok)


def test_criterion_09_resonant_enhancement():
    """n = 3 at T = 260 ms improves the peak sensitivity by 2.4 to 3.6
    before the measurement-rate adjustment."""
    grid = np.linspace(0.3, 5.0, 20000)
    base = resonant_strain_asd(T, 1, CONFIG, grid, adjust_rate=False)
    multi = resonant_strain_asd(T, 3, CONFIG, grid, adjust_rate=False)
    improvement = float(np.nanmin(base.asd_values) / np.nanmin(multi.asd_values))
    report_line(9, f"resonant peak improvement {improvement:.3f}", 2.4 <= improvement <= 3.6)


def test_criterion_10_mirror_vibration_crossover():
    """With an ingested isolation curve scaled to cross the intrinsic curve
    near 1 Hz, the mirror-vibration strain dominates at 0.3 Hz and is
    dominated at 3 Hz."""
    grid = np.linspace(0.3, 5.0, 2000)
    intrinsic = intrinsic_strain_asd(CONFIG.sequence, CONFIG, grid)
    shape_grid = np.logspace(-2, 2, 200)
    shape = NoiseCurve(shape_grid, shape_grid**-6.0, DISPLACEMENT_UNITS, label="isolation shape")
    probe = mirror_vibration_strain_asd(CONFIG.sequence, CONFIG, shape, np.array([1.0, 1.01]))
    scale = intrinsic.sample(1.0) / probe.asd_values[0]
    isolation = NoiseCurve(shape_grid, scale * shape_grid**-6.0, DISPLACEMENT_UNITS, label="isolation")
    mirror = mirror_vibration_strain_asd(CONFIG.sequence, CONFIG, isolation, grid)

    def value_at(curve, frequency):
        return float(curve.asd_values[np.argmin(np.abs(grid - frequency))])

    low_ok = value_at(mirror, 0.3) > value_at(intrinsic, 0.3)
    high_ok = value_at(mirror, 3.0) < value_at(intrinsic, 3.0)
    report_line(
        10,
        f"mirror/intrinsic at 0.3 Hz: {value_at(mirror, 0.3):.2e}/{value_at(intrinsic, 0.3):.2e}, "
        f"at 3 Hz: {value_at(mirror, 3.0):.2e}/{value_at(intrinsic, 3.0):.2e}",
        low_ok and high_ok,
    )


def test_criterion_11_cli_determinism(tmp_path):
    """Every CLI subcommand run twice on identical inputs yields
    byte-identical data files."""
    iso = tmp_path / "iso.csv"
    shape_grid = np.logspace(-2, 2, 40)
    lines = ["# units: m_per_rtHz", "# label: iso", "frequency_hz,asd"]
    lines += [f"{float(f)!r},{float(1e-16 * f ** -4.0)!r}" for f in shape_grid]
    iso.write_text("\n".join(lines) + "\n")

    cases = [
        (["response", "--output", str(tmp_path / "r.csv")], ["r.csv"]),
        (
            [
                "sensitivity",
                "--interleave",
                "--isolation",
                str(iso),
                "--reproducible",
                "--output",
                str(tmp_path / "s.csv"),
            ],
            ["s.csv", "s.csv.meta.json"],
        ),
        (["budget", "--geometry", "ftl", "--output", str(tmp_path / "b.json")], ["b.json"]),
        (["requirements", "--geometry", "sl", "--output", str(tmp_path / "q.json")], ["q.json"]),
        (
            ["trajectory", "--tilt2", "1e-9", "--timing-offset2", "1e-8", "--output", str(tmp_path / "t.csv")],
            ["t.csv"],
        ),
        (["resonant", "--loops", "3", "--output", str(tmp_path / "n.csv")], ["n.csv"]),
    ]
    identical = True
    for args, outputs in cases:
        assert main(args) == EXIT_OK
        first = {name: (tmp_path / name).read_bytes() for name in outputs}
        assert main(args) == EXIT_OK
        for name in outputs:
            identical = identical and (tmp_path / name).read_bytes() == first[name]
    report_line(11, "all six subcommands byte-identical across repeated runs", identical)
