"""Strain amplitude-spectral-density curves and their assembly.

The intrinsic (shot-noise-limited) strain ASD of a sequence is the
detection phase ASD divided by the strain-response magnitude.  Response
zeros therefore show up as infinite ASD points, which is why the
broad-band mode interleaves sequences with staggered pulse separations:
independent channels combine in inverse quadrature,

    1 / h_comb^2 = sum_T 1 / h_T^2,

and no zero survives unless all channels share it.  Mirror-vibration and
environmental (Newtonian) contributions are converted to strain and added
to the intrinsic curve in quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .budget import detection_phase_asd
from .errors import CoverageError, InvalidParameterError, UnitError
from .model import DetectorConfig, PulseSequence, build_resonant_sequence, build_sequence
from .response import (
    differential_arm_factor,
    mirror_displacement_response,
    strain_response,
)

STRAIN_UNITS = "strain_per_rtHz"
DISPLACEMENT_UNITS = "m_per_rtHz"
PHASE_UNITS = "rad_per_rtHz"
CURVE_UNITS = (STRAIN_UNITS, DISPLACEMENT_UNITS, PHASE_UNITS)


@dataclass(frozen=True)
class NoiseCurve:
    """One-sided amplitude spectral density on a frequency grid.

    Values are non-negative (infinities mark response zeros).  Sampling
    between grid points interpolates linearly in log-log space;
    extrapolation outside the grid raises :class:`CoverageError`.
    """

    frequencies: np.ndarray
    asd_values: np.ndarray
    units: str
    label: str = ""

    def __post_init__(self):
        f = np.asarray(self.frequencies, dtype=float)
        v = np.asarray(self.asd_values, dtype=float)
        if f.ndim != 1 or v.shape != f.shape:
            raise InvalidParameterError("frequencies and asd_values must be 1-d and equal length")
        if f.size < 2:
            raise InvalidParameterError("a curve needs at least two samples")
        if np.any(f <= 0) or np.any(np.diff(f) <= 0):
            raise InvalidParameterError("frequency grid must be strictly increasing and positive")
        if np.any(np.isnan(v)) or np.any(v < 0):
            raise InvalidParameterError("ASD values must be non-negative")
        if self.units not in CURVE_UNITS:
            raise UnitError(f"unknown units tag {self.units!r}, expected one of {CURVE_UNITS}")
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "asd_values", v)

    def sample(self, frequency) -> np.ndarray:
        """Log-log interpolated values at the requested frequencies."""
        f = np.asarray(frequency, dtype=float)
        lo, hi = self.frequencies[0], self.frequencies[-1]
        if np.any(f < lo) or np.any(f > hi):
            raise CoverageError(
                f"curve {self.label!r} covers [{lo:g}, {hi:g}] Hz; "
                f"requested [{f.min():g}, {f.max():g}] Hz"
            )
        with np.errstate(divide="ignore"):
            logv = np.log(self.asd_values)
        out = np.exp(np.interp(np.log(f), np.log(self.frequencies), logv))
        return float(out) if np.isscalar(frequency) else out

    def resampled(self, frequencies) -> "NoiseCurve":
        grid = np.asarray(frequencies, dtype=float)
        return NoiseCurve(grid, self.sample(grid), self.units, self.label)

    def relabeled(self, label: str) -> "NoiseCurve":
        return replace(self, label=label)


@dataclass(frozen=True)
class SensitivityBreakdown:
    """Total strain sensitivity with its named components.

    The total is the pointwise quadrature sum of the components; overlay
    curves (signal or reference sensitivities) ride along without entering
    the sum.
    """

    total: NoiseCurve
    components: tuple[NoiseCurve, ...]
    overlays: tuple[NoiseCurve, ...] = ()


def log_frequency_grid(f_min: float, f_max: float, points: int) -> np.ndarray:
    """Log-spaced frequency grid, the toolkit's default sampling."""
    if not 0 < f_min < f_max:
        raise InvalidParameterError("need 0 < f_min < f_max")
    if points < 2:
        raise InvalidParameterError("points must be >= 2")
    return np.logspace(np.log10(f_min), np.log10(f_max), points)


def band_limit(frequencies, shot_rate: float) -> np.ndarray:
    """Truncate a grid at the interrogation-rate Nyquist, shot_rate/2."""
    f = np.asarray(frequencies, dtype=float)
    out = f[f <= shot_rate / 2.0]
    if out.size < 2:
        raise InvalidParameterError("grid truncation at shot_rate/2 left fewer than 2 points")
    return out


def _check_band(f: np.ndarray, shot_rate: float):
    if np.any(f <= 0) or np.any(f > shot_rate / 2.0):
        raise InvalidParameterError(
            f"frequency grid must lie within (0, {shot_rate / 2.0:g}] Hz "
            "(interrogation-rate Nyquist); use band_limit() to truncate"
        )


def intrinsic_strain_asd(
    sequence: PulseSequence, config: DetectorConfig, frequencies
) -> NoiseCurve:
    """Shot-noise-limited strain ASD of one sequence, 1/sqrt(Hz).

    Detection phase ASD divided by the strain-response magnitude; grid
    points at response zeros become infinity, not errors.
    """
    f = np.asarray(frequencies, dtype=float)
    _check_band(f, config.source.shot_rate)
    phase = detection_phase_asd(
        config.source.atoms_per_shot, config.source.shot_rate, config.source.squeezing_db
    )
    magnitude = np.abs(strain_response(sequence, config.arm_length, f))
    with np.errstate(divide="ignore"):
        asd = phase / magnitude
    return NoiseCurve(f, asd, STRAIN_UNITS, label=f"intrinsic {sequence.label}")


def interleaved_strain_asd(
    config: DetectorConfig,
    geometry: str,
    frequencies,
    split_flux: bool = False,
) -> NoiseCurve:
    """Inverse-quadrature combination of the interleaved channels.

    One channel runs per entry of ``config.interleave_values``; the source
    rate supports running each at the full shot rate (default), or the
    rate can be split evenly across channels with ``split_flux``.
    """
    values = config.interleave_values
    if len(values) == 0:
        raise InvalidParameterError("interleave_values must contain at least one pulse separation")
    f = np.asarray(frequencies, dtype=float)
    channels = len(values)
    source = config.source
    rate = source.shot_rate / channels if split_flux else source.shot_rate
    _check_band(f, rate)
    phase = detection_phase_asd(source.atoms_per_shot, rate, source.squeezing_db)

    inverse_power = np.zeros_like(f)
    for T in values:
        sequence = build_sequence(geometry, T, config.splitter)
        magnitude = np.abs(strain_response(sequence, config.arm_length, f))
        inverse_power += (magnitude / phase) ** 2
    with np.errstate(divide="ignore"):
        combined = 1.0 / np.sqrt(inverse_power)
    return NoiseCurve(f, combined, STRAIN_UNITS, label=f"interleaved {geometry}")


def resonant_strain_asd(
    pulse_separation: float,
    n_units: int,
    config: DetectorConfig,
    frequencies,
    dead_time: float = 0.1,
    adjust_rate: bool = True,
) -> NoiseCurve:
    """Intrinsic ASD of the narrow-band 3n-loop sequence.

    The longer sequence lowers the measurement rate: the phase ASD scales
    with the sequence duration as rate(n) proportional to 1/(6nT + dead
    time), normalized so n = 1 reproduces the broad-band intrinsic curve.
    ``adjust_rate=False`` isolates the pure response enhancement.
    """
    if dead_time < 0:
        raise InvalidParameterError("dead_time must be >= 0")
    sequence = build_resonant_sequence(pulse_separation, n_units, config.splitter)
    source = config.source
    rate = source.shot_rate
    if adjust_rate:
        rate *= (6.0 * pulse_separation + dead_time) / (6.0 * n_units * pulse_separation + dead_time)
    f = np.asarray(frequencies, dtype=float)
    _check_band(f, source.shot_rate)
    phase = detection_phase_asd(source.atoms_per_shot, rate, source.squeezing_db)
    magnitude = np.abs(strain_response(sequence, config.arm_length, f))
    with np.errstate(divide="ignore"):
        asd = phase / magnitude
    return NoiseCurve(f, asd, STRAIN_UNITS, label=f"resonant n={n_units}")


def mirror_vibration_strain_asd(
    sequence: PulseSequence,
    config: DetectorConfig,
    isolation_curve: NoiseCurve,
    frequencies,
) -> NoiseCurve:
    """Strain-equivalent ASD of residual retroreflection-mirror motion.

    The isolation curve is the residual mirror displacement in m/sqrt(Hz).
    Its phase imprint passes through the same pulse weighting as the
    signal and survives only through the light round-trip delay between
    the two interferometers:

        h_mirror = |mirror response| * |delay factor| * x(f) / |strain response|
    """
    if isolation_curve.units != DISPLACEMENT_UNITS:
        raise UnitError(
            f"isolation curve must be in {DISPLACEMENT_UNITS}, got {isolation_curve.units!r}"
        )
    f = np.asarray(frequencies, dtype=float)
    displacement = isolation_curve.sample(f)
    mirror = np.abs(mirror_displacement_response(sequence, f))
    delay = np.abs(
        differential_arm_factor(f, config.arm_length, config.constants.speed_of_light)
    )
    signal = np.abs(strain_response(sequence, config.arm_length, f))
    with np.errstate(divide="ignore", invalid="ignore"):
        asd = mirror * delay * displacement / signal
    # 0/0 where both kernels vanish: the physical limit is delay * x / L.
    bad = ~np.isfinite(asd) & (displacement > 0)
    if np.any(bad):
        asd[bad] = delay[bad] * displacement[bad] / config.arm_length
    asd = np.where(displacement == 0.0, 0.0, asd)
    return NoiseCurve(f, asd, STRAIN_UNITS, label="mirror vibration")


def assemble_breakdown(
    components: list[NoiseCurve] | tuple[NoiseCurve, ...],
    overlays: list[NoiseCurve] | tuple[NoiseCurve, ...] = (),
) -> SensitivityBreakdown:
    """Quadrature-sum strain components into a sensitivity breakdown.

    All components must be strain ASDs; they are resampled onto the first
    component's grid (log-log interpolation).  Overlays attach unchanged.
    """
    components = tuple(components)
    if not components:
        raise InvalidParameterError("a breakdown requires at least one component")
    for curve in components:
        if curve.units != STRAIN_UNITS:
            raise UnitError(
                f"component {curve.label!r} has units {curve.units!r}; "
                f"breakdown components must be {STRAIN_UNITS}"
            )
    labels = [c.label for c in components]
    if len(set(labels)) != len(labels):
        raise InvalidParameterError(f"component labels must be unique, got {labels}")

    grid = components[0].frequencies
    resampled = [components[0]] + [c.resampled(grid) for c in components[1:]]
    with np.errstate(over="ignore"):
        power = np.zeros_like(grid)
        for curve in resampled:
            power += curve.asd_values**2
        total = NoiseCurve(grid, np.sqrt(power), STRAIN_UNITS, label="total")
    return SensitivityBreakdown(total=total, components=tuple(resampled), overlays=tuple(overlays))
