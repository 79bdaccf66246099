"""Deterministic reading and writing of curves, configs, and reports.

Curve files are CSV with a comment header::

    # units: strain_per_rtHz
    # label: interleaved ftl
    # source: where this came from
    frequency_hz,asd
    0.3,1.2e-20

The units tag must be one of ``strain_per_rtHz``, ``m_per_rtHz``,
``rad_per_rtHz``.  Config files are flat ``key = value`` pairs in SI base
units with unit-suffixed key names; unknown keys are rejected and all
validation failures are reported together.  Floats are printed with
``repr``, which round-trips exactly and is byte-deterministic, so writing
the same object twice produces identical files.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, CurveParseError, InvalidParameterError
from .model import (
    GEOMETRIES,
    AtomSource,
    BeamSplitterSpec,
    DetectorConfig,
    PhysicalConstants,
    build_sequence,
)
from .sensitivity import CURVE_UNITS, NoiseCurve, SensitivityBreakdown


@dataclass(frozen=True)
class CurveFileHeader:
    """Comment-header metadata of a curve file."""

    units: str
    label: str = ""
    source: str = ""


def _format_float(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return repr(float(x))


def write_curve(curve: NoiseCurve, path, source: str = "") -> None:
    """Write a curve in the canonical CSV format (byte-deterministic)."""
    lines = [
        f"# units: {curve.units}",
        f"# label: {curve.label}",
        f"# source: {source}",
        "frequency_hz,asd",
    ]
    for f, v in zip(curve.frequencies, curve.asd_values):
        lines.append(f"{_format_float(f)},{_format_float(v)}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_curve(path) -> NoiseCurve:
    """Parse a curve file, validating header, grid, and values.

    Raises :class:`CurveParseError` naming the offending line.
    """
    path = Path(path)
    header = {"units": None, "label": "", "source": ""}
    frequencies: list[float] = []
    values: list[float] = []
    saw_column_header = False

    for number, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, _, value = body.partition(":")
                key = key.strip().lower()
                if key in header:
                    header[key] = value.strip()
            continue
        if not saw_column_header:
            if line != "frequency_hz,asd":
                raise CurveParseError(path, number, f"expected header 'frequency_hz,asd', got {line!r}")
            saw_column_header = True
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise CurveParseError(path, number, f"expected two comma-separated values, got {line!r}")
        try:
            f = float(parts[0])
            v = float(parts[1])
        except ValueError:
            raise CurveParseError(path, number, f"could not parse numbers from {line!r}") from None
        if frequencies and f <= frequencies[-1]:
            raise CurveParseError(path, number, f"frequency grid not strictly increasing at {f!r}")
        if f <= 0:
            raise CurveParseError(path, number, f"frequency must be positive, got {f!r}")
        if math.isnan(v) or v < 0:
            raise CurveParseError(path, number, f"ASD value must be non-negative, got {v!r}")
        frequencies.append(f)
        values.append(v)

    if header["units"] is None:
        raise CurveParseError(path, 1, "missing '# units:' header line")
    if header["units"] not in CURVE_UNITS:
        raise CurveParseError(
            path, 1, f"unknown units tag {header['units']!r}, expected one of {CURVE_UNITS}"
        )
    if not saw_column_header:
        raise CurveParseError(path, 1, "missing 'frequency_hz,asd' column header")
    if len(frequencies) < 2:
        raise CurveParseError(path, 1, "curve needs at least two samples")
    return NoiseCurve(
        np.asarray(frequencies), np.asarray(values), header["units"], label=header["label"]
    )


def read_curve_header(path) -> CurveFileHeader:
    """Header metadata only, without materializing the samples."""
    curve = read_curve(path)
    return CurveFileHeader(units=curve.units, label=curve.label)


def write_response(response, path, label: str = "") -> None:
    """Write a phase-response curve as CSV: frequency_hz, magnitude, phase_rad."""
    units = "rad_per_strain" if response.kind == "strain" else "rad_per_m"
    lines = [
        f"# units: {units}",
        f"# label: {label}",
        "frequency_hz,magnitude,phase_rad",
    ]
    for f, m, p in zip(response.frequencies, np.abs(response.values), np.angle(response.values)):
        lines.append(f"{_format_float(f)},{_format_float(m)},{_format_float(p)}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_breakdown(breakdown: SensitivityBreakdown, path) -> None:
    """Write a breakdown as CSV: frequency, one column per component, total."""
    columns = [c.label for c in breakdown.components]
    lines = [
        f"# units: {breakdown.total.units}",
        "# columns: frequency_hz," + ",".join(columns) + ",total",
        "frequency_hz," + ",".join(columns) + ",total",
    ]
    grid = breakdown.total.frequencies
    series = [c.asd_values for c in breakdown.components] + [breakdown.total.asd_values]
    for i, f in enumerate(grid):
        row = [_format_float(f)] + [_format_float(s[i]) for s in series]
        lines.append(",".join(row))
    Path(path).write_text("\n".join(lines) + "\n")


def write_json(payload: dict, path) -> None:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


# --- config files -----------------------------------------------------------

_CONFIG_DEFAULTS = DetectorConfig()

#: key -> (caster, validator description).  All values are SI base units.
_CONFIG_KEYS = (
    "arm_length_m",
    "geometry",
    "pulse_separation_s",
    "interleave_pulse_separations_s",
    "speed_of_light_m_per_s",
    "gravitational_acceleration_m_per_s2",
    "gravity_gradient_per_s2",
    "earth_rotation_rate_rad_per_s",
    "photon_recoils_per_side",
    "optical_wavelength_m",
    "atoms_per_shot",
    "shot_rate_hz",
    "initial_radius_m",
    "expansion_rate_m_per_s",
    "squeezing_db",
    "source_distance_m",
    "launch_velocity_m_per_s",
)


def _parse_key_value_lines(path):
    """Yield (line_number, key, value) from a flat key-value file."""
    for number, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            yield number, None, line
            continue
        key, _, value = line.partition("=")
        yield number, key.strip(), value.strip()


def read_config(path) -> DetectorConfig:
    """Parse a detector config file; absent keys keep the reference defaults.

    Unknown keys, unparsable values, and physical-constraint violations are
    all collected and raised together as one :class:`ConfigError`.
    """
    path = Path(path)
    problems: list[str] = []
    raw: dict[str, str] = {}
    for number, key, value in _parse_key_value_lines(path):
        if key is None:
            problems.append(f"line {number}: expected 'key = value', got {value!r}")
            continue
        if key not in _CONFIG_KEYS:
            problems.append(f"line {number}: unknown key {key!r}")
            continue
        if key in raw:
            problems.append(f"line {number}: duplicate key {key!r}")
            continue
        raw[key] = value

    def take_float(key, default, positive=True, non_negative=False):
        if key not in raw:
            return default
        try:
            value = float(raw[key])
        except ValueError:
            problems.append(f"{key}: could not parse {raw[key]!r} as a number")
            return default
        if positive and value <= 0:
            problems.append(f"{key}: must be strictly positive, got {value!r}")
            return default
        if non_negative and value < 0:
            problems.append(f"{key}: must be >= 0, got {value!r}")
            return default
        return value

    defaults = _CONFIG_DEFAULTS
    arm_length = take_float("arm_length_m", defaults.arm_length)
    geometry = raw.get("geometry", "ftl")
    if geometry not in GEOMETRIES:
        problems.append(f"geometry: must be one of {GEOMETRIES}, got {geometry!r}")
        geometry = "ftl"
    pulse_separation = take_float("pulse_separation_s", 0.26)

    interleave = defaults.interleave_values
    if "interleave_pulse_separations_s" in raw:
        try:
            interleave = tuple(float(x) for x in raw["interleave_pulse_separations_s"].split(","))
            if not interleave or any(t <= 0 for t in interleave):
                problems.append("interleave_pulse_separations_s: values must be strictly positive")
                interleave = defaults.interleave_values
        except ValueError:
            problems.append(
                "interleave_pulse_separations_s: expected a comma-separated list of numbers"
            )
            interleave = defaults.interleave_values

    constants = dict(
        speed_of_light=take_float("speed_of_light_m_per_s", defaults.constants.speed_of_light),
        gravitational_acceleration=take_float(
            "gravitational_acceleration_m_per_s2", defaults.constants.gravitational_acceleration
        ),
        gravity_gradient=take_float("gravity_gradient_per_s2", defaults.constants.gravity_gradient),
        earth_rotation_rate=take_float(
            "earth_rotation_rate_rad_per_s", defaults.constants.earth_rotation_rate
        ),
    )

    recoils = defaults.splitter.photon_recoils_per_side
    if "photon_recoils_per_side" in raw:
        try:
            recoils = int(raw["photon_recoils_per_side"])
            if recoils < 1:
                problems.append("photon_recoils_per_side: must be >= 1")
                recoils = defaults.splitter.photon_recoils_per_side
        except ValueError:
            problems.append(
                f"photon_recoils_per_side: could not parse {raw['photon_recoils_per_side']!r} as an integer"
            )
    wavelength = take_float("optical_wavelength_m", defaults.splitter.optical_wavelength)

    source = dict(
        atoms_per_shot=take_float("atoms_per_shot", defaults.source.atoms_per_shot),
        shot_rate=take_float("shot_rate_hz", defaults.source.shot_rate),
        initial_radius=take_float("initial_radius_m", defaults.source.initial_radius),
        expansion_rate=take_float("expansion_rate_m_per_s", defaults.source.expansion_rate),
        squeezing_db=take_float("squeezing_db", defaults.source.squeezing_db, positive=False, non_negative=True),
        source_distance=take_float("source_distance_m", defaults.source.source_distance),
        launch_velocity=take_float("launch_velocity_m_per_s", None)
        if "launch_velocity_m_per_s" in raw
        else None,
    )
    if source["atoms_per_shot"] is not None and source["atoms_per_shot"] < 1:
        problems.append("atoms_per_shot: must be >= 1")
        source["atoms_per_shot"] = defaults.source.atoms_per_shot

    if problems:
        raise ConfigError(path, problems)

    splitter = BeamSplitterSpec(photon_recoils_per_side=recoils, optical_wavelength=wavelength)
    return DetectorConfig(
        arm_length=arm_length,
        constants=PhysicalConstants(**constants),
        splitter=splitter,
        source=AtomSource(**source),
        sequence=build_sequence(geometry, pulse_separation, splitter),
        interleave_values=interleave,
    )


def write_config(config: DetectorConfig, path) -> None:
    """Write a config in the canonical key-value format (round-trips)."""
    c = config.constants
    sp = config.splitter
    so = config.source
    lines = [
        "# detector configuration (SI base units)",
        f"arm_length_m = {_format_float(config.arm_length)}",
        f"geometry = {config.geometry}",
        f"pulse_separation_s = {_format_float(config.sequence.pulse_separation)}",
        "interleave_pulse_separations_s = "
        + ", ".join(_format_float(t) for t in config.interleave_values),
        f"speed_of_light_m_per_s = {_format_float(c.speed_of_light)}",
        f"gravitational_acceleration_m_per_s2 = {_format_float(c.gravitational_acceleration)}",
        f"gravity_gradient_per_s2 = {_format_float(c.gravity_gradient)}",
        f"earth_rotation_rate_rad_per_s = {_format_float(c.earth_rotation_rate)}",
        f"photon_recoils_per_side = {sp.photon_recoils_per_side}",
        f"optical_wavelength_m = {_format_float(sp.optical_wavelength)}",
        f"atoms_per_shot = {_format_float(so.atoms_per_shot)}",
        f"shot_rate_hz = {_format_float(so.shot_rate)}",
        f"initial_radius_m = {_format_float(so.initial_radius)}",
        f"expansion_rate_m_per_s = {_format_float(so.expansion_rate)}",
        f"squeezing_db = {_format_float(so.squeezing_db)}",
        f"source_distance_m = {_format_float(so.source_distance)}",
    ]
    if so.launch_velocity is not None:
        lines.append(f"launch_velocity_m_per_s = {_format_float(so.launch_velocity)}")
    else:
        lines.append("# launch_velocity_m_per_s unset: geometry default (g*T or g*T/2)")
    Path(path).write_text("\n".join(lines) + "\n")


def config_digest(config: DetectorConfig) -> str:
    """Stable sha256 over the canonical serialization of a config."""
    c = config.constants
    sp = config.splitter
    so = config.source
    fields = (
        config.arm_length,
        config.geometry,
        config.sequence.pulse_separation,
        config.interleave_values,
        c.speed_of_light,
        c.gravitational_acceleration,
        c.gravity_gradient,
        c.earth_rotation_rate,
        sp.photon_recoils_per_side,
        sp.optical_wavelength,
        so.atoms_per_shot,
        so.shot_rate,
        so.initial_radius,
        so.expansion_rate,
        so.squeezing_db,
        so.source_distance,
        so.launch_velocity,
    )
    return hashlib.sha256(repr(fields).encode()).hexdigest()


def read_params(path, allowed_keys) -> dict[str, float]:
    """Read a flat parameter file restricted to ``allowed_keys``.

    Used by the budget evaluation: keys are coupling names, values the
    tolerance-variable values in SI units.
    """
    path = Path(path)
    allowed = set(allowed_keys)
    problems: list[str] = []
    out: dict[str, float] = {}
    for number, key, value in _parse_key_value_lines(path):
        if key is None:
            problems.append(f"line {number}: expected 'key = value', got {value!r}")
            continue
        if key not in allowed:
            problems.append(f"line {number}: unknown key {key!r}; allowed: {sorted(allowed)}")
            continue
        try:
            out[key] = float(value)
        except ValueError:
            problems.append(f"line {number}: could not parse {value!r} as a number")
    if problems:
        raise ConfigError(path, problems)
    return out
