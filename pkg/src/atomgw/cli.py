"""Command-line frontend: compute-and-exit subcommands emitting CSV/JSON.

Every subcommand is batch and deterministic: the same invocation on the
same inputs produces byte-identical data files.  Provenance timestamps
appear only in JSON metadata sidecars and are zeroed by ``--reproducible``.

Exit codes: 0 success, 1 usage error, 2 validation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import budget, fileio, sensitivity, trajectory
from .errors import AtomgwError
from .model import FOLDED_TRIPLE_LOOP, GEOMETRIES, DetectorConfig, build_sequence, default_config
from .response import find_peak_response, strain_response_curve
from .sensitivity import band_limit, log_frequency_grid

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    """Argument parser that exits 1 (not 2) on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(parser):
    parser.add_argument("--config", metavar="PATH", help="detector config file (key = value, SI units)")
    parser.add_argument(
        "--reproducible",
        action="store_true",
        help="zero the provenance timestamp in JSON metadata",
    )


def _add_grid(parser):
    parser.add_argument("--f-min", type=float, default=0.01, help="grid start in Hz (default 0.01)")
    parser.add_argument("--f-max", type=float, default=10.0, help="grid end in Hz (default 10)")
    parser.add_argument(
        "--points", type=int, default=2000, help="number of log-spaced grid points (default 2000)"
    )


def _load_config(args) -> DetectorConfig:
    if args.config:
        return fileio.read_config(args.config)
    return default_config()


def _sequence_for(args, config):
    geometry = getattr(args, "geometry", None) or config.geometry
    return geometry, build_sequence(
        geometry, config.sequence.pulse_separation, config.splitter
    )


def _grid(args):
    if not args.f_min < args.f_max:
        raise AtomgwError("--f-min must be smaller than --f-max")
    if args.points < 2:
        raise AtomgwError("--points must be >= 2")
    return log_frequency_grid(args.f_min, args.f_max, args.points)


def _metadata(args, config, extra=None):
    meta = {
        "schema_version": 1,
        "config_sha256": fileio.config_digest(config),
        "timestamp_unix": 0 if args.reproducible else int(time.time()),
    }
    if extra:
        meta.update(extra)
    return meta


def _cmd_response(args) -> int:
    config = _load_config(args)
    geometry, sequence = _sequence_for(args, config)
    curve = strain_response_curve(sequence, config.arm_length, _grid(args))
    fileio.write_response(curve, args.output, label=f"strain response {geometry}")
    return EXIT_OK


def _cmd_sensitivity(args) -> int:
    config = _load_config(args)
    geometry = args.geometry or config.geometry
    grid = band_limit(_grid(args), config.source.shot_rate)

    if args.interleave:
        intrinsic = sensitivity.interleaved_strain_asd(
            config, geometry, grid, split_flux=args.split_flux
        )
    else:
        _, sequence = _sequence_for(args, config)
        intrinsic = sensitivity.intrinsic_strain_asd(sequence, config, grid)
    components = [intrinsic.relabeled("intrinsic")]

    if args.isolation:
        isolation = fileio.read_curve(args.isolation)
        _, sequence = _sequence_for(args, config)
        components.append(
            sensitivity.mirror_vibration_strain_asd(sequence, config, isolation, grid)
        )
    if args.newtonian:
        newtonian = fileio.read_curve(args.newtonian)
        components.append(newtonian.resampled(grid).relabeled("newtonian"))

    overlays = [fileio.read_curve(p) for p in args.overlay]
    breakdown = sensitivity.assemble_breakdown(components, overlays)
    fileio.write_breakdown(breakdown, args.output)

    overlay_files = []
    out = Path(args.output)
    for i, curve in enumerate(overlays):
        overlay_path = out.with_name(f"{out.stem}.overlay-{i}{out.suffix}")
        fileio.write_curve(curve, overlay_path, source=str(args.overlay[i]))
        overlay_files.append(overlay_path.name)

    meta = _metadata(
        args,
        config,
        {
            "units": breakdown.total.units,
            "columns": [c.label for c in breakdown.components] + ["total"],
            "geometry": geometry,
            "interleaved": bool(args.interleave),
            "overlay_files": overlay_files,
            "omitted_components": []
            if args.newtonian
            else ["newtonian (no input curve supplied)"],
        },
    )
    fileio.write_json(meta, out.with_name(out.name + ".meta.json"))
    return EXIT_OK


def _cmd_budget(args) -> int:
    config = _load_config(args)
    geometry = args.geometry or config.geometry
    terms = budget.couplings_for(geometry)
    names = [t.name for t in terms]

    if args.params:
        values = fileio.read_params(args.params, names)
    else:
        # Default: shot-noise-limited source statistics after 1 s of cycles.
        cycles = max(1, int(round(config.source.shot_rate)))
        position, velocity = budget.source_statistics(
            config.source.initial_radius,
            config.source.expansion_rate,
            config.source.atoms_per_shot,
            cycles,
        )
        values = {}
        for term in terms:
            if term.ensemble_kind == "position":
                values[term.name] = position
            elif term.ensemble_kind == "velocity":
                values[term.name] = velocity

    phases = budget.coupling_phases(
        geometry,
        values,
        config.splitter.effective_wave_number,
        config.sequence.pulse_separation,
        config.constants,
        differential=not args.per_arm,
    )
    payload = {
        "schema_version": 1,
        "geometry": geometry,
        "differential": not args.per_arm,
        "parameter_values": {n: values.get(n, 0.0) for n in names},
        "phases_rad": phases,
    }
    fileio.write_json(payload, args.output)
    for name in names:
        print(f"{name}: {phases[name]:.6e} rad")
    return EXIT_OK


def _cmd_requirements(args) -> int:
    config = _load_config(args)
    geometry = args.geometry or config.geometry
    report = budget.full_requirement_report(
        config,
        phase_floor=args.phase_floor,
        geometry=geometry,
        differential=not args.per_arm,
    )
    print(budget.format_report(report), end="")
    if args.output:
        fileio.write_json(budget.report_to_dict(report), args.output)
    return EXIT_OK


def _cmd_trajectory(args) -> int:
    config = _load_config(args)
    T = config.sequence.pulse_separation
    summary = trajectory.relaunch_phase_summary(
        pulse_separation=T,
        wave_number=config.splitter.effective_wave_number,
        gravitational_acceleration=config.constants.gravitational_acceleration,
        duration=args.relaunch_duration,
        tilt_first=args.tilt1,
        tilt_second=args.tilt2,
        offset_first=args.timing_offset1,
        offset_second=args.timing_offset2,
    )
    times, positions = trajectory.trajectory_series(summary["segments"], args.samples)
    fmt = fileio._format_float
    lines = [
        "# columns: time_s,position_m",
        f"# timing_error_phase_rad = {fmt(summary['closed_form_phase_rad'])}",
        f"# trajectory_phase_rad = {fmt(summary['trajectory_phase_rad'])}",
        "time_s,position_m",
    ]
    for t, y in zip(times, positions):
        lines.append(f"{fmt(t)},{fmt(y)}")
    Path(args.output).write_text("\n".join(lines) + "\n")
    print(f"timing_error_phase_rad: {summary['closed_form_phase_rad']:.6e}")
    print(f"trajectory_phase_rad: {summary['trajectory_phase_rad']:.6e}")
    return EXIT_OK


def _cmd_resonant(args) -> int:
    config = _load_config(args)
    T = config.sequence.pulse_separation
    grid = band_limit(_grid(args), config.source.shot_rate)
    curve = sensitivity.resonant_strain_asd(
        T,
        args.loops,
        config,
        grid,
        dead_time=args.dead_time,
        adjust_rate=not args.no_rate_adjust,
    )
    from .model import build_resonant_sequence

    sequence = build_resonant_sequence(T, args.loops, config.splitter)
    f_peak, _ = find_peak_response(
        sequence, config.arm_length, float(grid[0]), float(grid[-1])
    )
    lines = [
        f"# units: {curve.units}",
        f"# label: {curve.label}",
        f"# resonance_frequency_hz = {fileio._format_float(f_peak)}",
        "frequency_hz,asd",
    ]
    for f, v in zip(curve.frequencies, curve.asd_values):
        lines.append(f"{fileio._format_float(f)},{fileio._format_float(v)}")
    Path(args.output).write_text("\n".join(lines) + "\n")
    print(f"resonance_frequency_hz: {f_peak:.6f}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(
        prog="atomgw",
        description="Atom-interferometric infrasound GW antenna modeling toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("response", help="strain-response magnitude/phase CSV")
    _add_common(p)
    _add_grid(p)
    p.add_argument("--geometry", choices=GEOMETRIES, help="interferometer geometry (default: config)")
    p.add_argument("--output", metavar="PATH", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_response)

    p = sub.add_parser("sensitivity", help="strain sensitivity breakdown CSV")
    _add_common(p)
    _add_grid(p)
    p.add_argument("--geometry", choices=GEOMETRIES, help="interferometer geometry (default: config)")
    p.add_argument("--interleave", action="store_true", help="combine the configured interleaved channels")
    p.add_argument(
        "--split-flux", action="store_true", help="split the source rate across interleaved channels"
    )
    p.add_argument("--isolation", metavar="PATH", help="residual mirror displacement curve, m_per_rtHz")
    p.add_argument("--newtonian", metavar="PATH", help="Newtonian-noise strain curve, strain_per_rtHz")
    p.add_argument(
        "--overlay",
        metavar="PATH",
        action="append",
        default=[],
        help="overlay curve passed through without entering the sum (repeatable)",
    )
    p.add_argument("--output", metavar="PATH", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_sensitivity)

    p = sub.add_parser("budget", help="per-coupling spurious phase values, JSON")
    _add_common(p)
    p.add_argument("--geometry", choices=GEOMETRIES, help="interferometer geometry (default: config)")
    p.add_argument(
        "--params",
        metavar="PATH",
        help="coupling values file (key = value, SI units); default: shot-noise-limited source statistics",
    )
    p.add_argument("--per-arm", action="store_true", help="drop the sqrt(2) uncorrelated-arms factor")
    p.add_argument("--output", metavar="PATH", required=True, help="output JSON path")
    p.set_defaults(func=_cmd_budget)

    p = sub.add_parser("requirements", help="requirement tolerances table and JSON")
    _add_common(p)
    p.add_argument("--geometry", choices=GEOMETRIES, help="interferometer geometry (default: config)")
    p.add_argument(
        "--phase-floor", type=float, default=1e-6, help="phase-noise floor in rad (default 1e-6)"
    )
    p.add_argument("--per-arm", action="store_true", help="drop the sqrt(2) uncorrelated-arms factor")
    p.add_argument("--output", metavar="PATH", help="optional output JSON path")
    p.set_defaults(func=_cmd_requirements)

    p = sub.add_parser("trajectory", help="folded-triple-loop (t, y) series and timing-error phase")
    _add_common(p)
    p.add_argument("--tilt1", type=float, default=0.0, help="first relaunch tilt in rad")
    p.add_argument("--tilt2", type=float, default=0.0, help="second relaunch tilt in rad")
    p.add_argument("--timing-offset1", type=float, default=0.0, help="first relaunch timing offset in s")
    p.add_argument("--timing-offset2", type=float, default=0.0, help="second relaunch timing offset in s")
    p.add_argument(
        "--relaunch-duration", type=float, default=0.015, help="relaunch window duration in s (default 0.015)"
    )
    p.add_argument("--samples", type=int, default=200, help="samples per trajectory segment")
    p.add_argument("--output", metavar="PATH", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_trajectory)

    p = sub.add_parser("resonant", help="narrow-band 3n-loop sensitivity curve")
    _add_common(p)
    _add_grid(p)
    p.add_argument("--loops", type=int, default=3, help="number n of triple-loop units (3n loops total)")
    p.add_argument(
        "--dead-time", type=float, default=0.1, help="dead time between measurements in s (default 0.1)"
    )
    p.add_argument(
        "--no-rate-adjust",
        action="store_true",
        help="skip the measurement-rate adjustment for the longer sequence",
    )
    p.add_argument("--output", metavar="PATH", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_resonant)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except AtomgwError as exc:
        print(f"atomgw: validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"atomgw: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
