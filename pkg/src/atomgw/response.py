"""Frequency response of pulse sequences to strain and mirror motion.

The single source of truth is the generic kernel

    R(f) = k * L * sum_j w_j * exp(i * 2*pi*f * t_j)

over the sequence's pulse times t_j and weights w_j.  For the two named
geometries the kernel collapses to closed forms:

    single loop:        |R| = 2 k L |cos(2*pi*f*T) - 1|
    folded triple loop: |R| = (1/2) k L |5 - 9 cos(2*2*pi*f*T) + 4 cos(3*2*pi*f*T)|

which are provided as validated conveniences.  Responses are complex; only
magnitudes feed sensitivity curves, but the phases matter when combining
with the retroreflection delay factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .model import FOLDED_TRIPLE_LOOP, SINGLE_LOOP, TWO_PI, PulseSequence


def _check_frequencies(frequency):
    f = np.asarray(frequency, dtype=float)
    if np.any(f <= 0):
        raise InvalidParameterError("frequency must be strictly positive")
    return f


def _kernel(sequence: PulseSequence, f: np.ndarray) -> np.ndarray:
    """sum_j w_j exp(i*omega*t_j), broadcast over f."""
    t = np.asarray(sequence.times())
    w = np.asarray(sequence.weights())
    phases = np.multiply.outer(TWO_PI * f, t)
    return (w * np.exp(1j * phases)).sum(axis=-1)


def strain_response(sequence: PulseSequence, arm_length: float, frequency):
    """Complex phase response to gravitational-wave strain, rad per unit h.

    Parameters
    ----------
    sequence : PulseSequence
    arm_length : float
        Baseline between the two interferometers of one arm, m.
    frequency : float or array_like
        Signal frequency in Hz, > 0.

    Returns
    -------
    complex or ndarray
        k * L * sum_j w_j exp(i*2*pi*f*t_j).  The magnitude is the strain
        transfer |d(phase)/dh| at that frequency; it vanishes as f -> 0
        because of the weight closure sums.
    """
    if arm_length <= 0:
        raise InvalidParameterError("arm_length must be strictly positive")
    f = _check_frequencies(frequency)
    out = sequence.wave_number * arm_length * _kernel(sequence, f)
    return complex(out) if np.isscalar(frequency) else out


def mirror_displacement_response(sequence: PulseSequence, frequency):
    """Complex phase response to retroreflection-mirror displacement, rad/m.

    Same weighting kernel as the strain response without the baseline
    factor: k * sum_j w_j exp(i*2*pi*f*t_j).
    """
    f = _check_frequencies(frequency)
    out = sequence.wave_number * _kernel(sequence, f)
    return complex(out) if np.isscalar(frequency) else out


def differential_arm_factor(frequency, arm_length: float, speed_of_light: float):
    """Delay factor 1 - exp(-i*2*pi*f * 2L/c), dimensionless.

    Mirror vibrations reach the two interferometers of an arm with a light
    round-trip delay 2L/c (about 67 us for L = 10 km), so only the delayed
    difference survives in the differential signal.  Multiplies the mirror
    displacement response.
    """
    if arm_length <= 0 or speed_of_light <= 0:
        raise InvalidParameterError("arm_length and speed_of_light must be positive")
    f = _check_frequencies(frequency)
    delay = 2.0 * arm_length / speed_of_light
    out = 1.0 - np.exp(-1j * TWO_PI * f * delay)
    return complex(out) if np.isscalar(frequency) else out


def strain_response_closed_form(
    geometry: str,
    wave_number: float,
    arm_length: float,
    pulse_separation: float,
    frequency,
):
    """Closed-form strain response magnitude for the named geometries.

    Agrees with ``abs(strain_response(...))`` of the built sequence to
    rounding error; the generic kernel remains the source of truth.
    """
    if wave_number <= 0 or arm_length <= 0 or pulse_separation <= 0:
        raise InvalidParameterError("wave_number, arm_length, pulse_separation must be positive")
    f = _check_frequencies(frequency)
    x = TWO_PI * f * pulse_separation
    if geometry == SINGLE_LOOP:
        out = 2.0 * wave_number * arm_length * np.abs(np.cos(x) - 1.0)
    elif geometry == FOLDED_TRIPLE_LOOP:
        out = (
            0.5
            * wave_number
            * arm_length
            * np.abs(5.0 - 9.0 * np.cos(2.0 * x) + 4.0 * np.cos(3.0 * x))
        )
    else:
        raise InvalidParameterError(
            f"unknown geometry {geometry!r}, expected '{SINGLE_LOOP}' or '{FOLDED_TRIPLE_LOOP}'"
        )
    return float(out) if np.isscalar(frequency) else out


@dataclass(frozen=True)
class PhaseResponse:
    """Complex response of a sequence sampled on a frequency grid.

    ``kind`` is ``"strain"`` (rad per unit strain) or
    ``"mirror_displacement"`` (rad per meter).
    """

    frequencies: np.ndarray
    values: np.ndarray
    kind: str

    def __post_init__(self):
        f = np.asarray(self.frequencies, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if f.ndim != 1 or v.shape != f.shape:
            raise InvalidParameterError("frequencies and values must be 1-d and equal length")
        if np.any(f <= 0) or np.any(np.diff(f) <= 0):
            raise InvalidParameterError("frequencies must be strictly increasing and positive")
        if self.kind not in ("strain", "mirror_displacement"):
            raise InvalidParameterError(f"unknown response kind {self.kind!r}")
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "values", v)

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)

    @property
    def phase(self) -> np.ndarray:
        return np.angle(self.values)


def strain_response_curve(sequence: PulseSequence, arm_length: float, frequencies) -> PhaseResponse:
    """Strain response sampled on a grid, as a :class:`PhaseResponse`."""
    f = np.asarray(frequencies, dtype=float)
    return PhaseResponse(f, strain_response(sequence, arm_length, f), kind="strain")


def mirror_response_curve(sequence: PulseSequence, frequencies) -> PhaseResponse:
    """Mirror displacement response sampled on a grid."""
    f = np.asarray(frequencies, dtype=float)
    return PhaseResponse(f, mirror_displacement_response(sequence, f), kind="mirror_displacement")


def find_peak_response(
    sequence: PulseSequence,
    arm_length: float,
    f_min: float,
    f_max: float,
    points: int = 20000,
) -> tuple[float, float]:
    """Locate the strain-response maximum on a dense log grid.

    Returns ``(frequency, magnitude)``.  Used to report the resonance
    frequency of narrow-band sequences instead of hard-coding one.
    """
    if not 0 < f_min < f_max:
        raise InvalidParameterError("need 0 < f_min < f_max")
    if points < 2:
        raise InvalidParameterError("points must be >= 2")
    grid = np.logspace(np.log10(f_min), np.log10(f_max), points)
    mag = np.abs(strain_response(sequence, arm_length, grid))
    i = int(np.argmax(mag))
    return float(grid[i]), float(mag[i])
