"""Mean trajectory of the folded triple loop along the beam-splitting axis.

The model is ballistic free flight interrupted by two finite relaunch
windows.  A relaunch nominally points orthogonal to the horizontal beam
axis; a small tilt leaks the relaunch acceleration into the beam axis, and
a timing offset moves the window away from the trajectory intersection it
should be centered on.  Only that leaked horizontal motion matters here;
vertical motion and the launch itself never enter the phase.  Rotations
and gravity gradients are budgeted separately.

The phase read out by the five-pulse sequence is

    phi = k * [y(0) - (9/4) y(T) + (5/2) y(3T) - (9/4) y(5T) + y(6T)]

whose weights annihilate any global linear motion, so only the
relaunch-induced kinks survive.  For equal relaunch durations and
accelerations the closed form is

    phi = (5/4) k a tau * (sum_offset * (tilt2 - tilt1)/2
                           + diff_offset * (tilt2 + tilt1)/2)

with sum_offset and diff_offset the sum and difference of the two timing
offsets.  A common timing error therefore couples to the *relative* tilt
of the two relaunches, a differential timing error to their *mean* tilt.

Segments are exact piecewise polynomials over rational arithmetic.  The
weighted sum cancels terms about twelve orders of magnitude larger than
the surviving phase, which plain double precision cannot represent; exact
coefficients keep the five-term sum exact so the equivalence with the
closed form holds to rounding error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidParameterError

#: Pulse weights of the folded triple loop as exact rationals.
_WEIGHTS = (Fraction(1), Fraction(-9, 4), Fraction(5, 2), Fraction(-9, 4), Fraction(1))
#: Pulse times in units of the pulse separation.
_TIME_MULTIPLES = (0, 1, 3, 5, 6)
#: Relaunch centers in units of the pulse separation.
_RELAUNCH_CENTERS = (Fraction(9, 5), Fraction(21, 5))


@dataclass(frozen=True)
class RelaunchSpec:
    """One vertical relaunch window.

    Attributes
    ----------
    duration : float
        Window length tau in s.
    acceleration : float
        Relaunch acceleration a in m/s^2.  The impulse a*tau restores the
        vertical velocity; for the folded geometry that is (5/2)*g*T.
    tilt_angle : float
        Deviation from orthogonality to the beam-splitting axis, rad.  The
        horizontal acceleration leaked into the readout axis is
        tilt_angle * acceleration.
    timing_offset : float
        Displacement of the window center from the trajectory
        intersection, s.
    """

    duration: float
    acceleration: float
    tilt_angle: float = 0.0
    timing_offset: float = 0.0

    def __post_init__(self):
        if self.duration <= 0:
            raise InvalidParameterError("relaunch duration must be strictly positive")

    @property
    def impulse(self) -> float:
        """Velocity transferred by the window, a*tau in m/s."""
        return self.acceleration * self.duration


def vertical_relaunch(
    pulse_separation: float,
    gravitational_acceleration: float = 9.81,
    duration: float = 0.015,
    tilt_angle: float = 0.0,
    timing_offset: float = 0.0,
) -> RelaunchSpec:
    """Relaunch with the impulse (5/2)*g*T that refolds the trajectory.

    The default 15 ms window matches a combined lattice-launch duration.
    """
    if pulse_separation <= 0:
        raise InvalidParameterError("pulse_separation must be strictly positive")
    acceleration = 2.5 * gravitational_acceleration * pulse_separation / duration
    return RelaunchSpec(duration, acceleration, tilt_angle, timing_offset)


@dataclass(frozen=True)
class TrajectorySegment:
    """One ballistic section of the mean trajectory.

    The position law is quadratic in local time u = t - start_time:

        y(t) = c0 + c1 * u + c2 * u**2

    with exact rational coefficients (c0 in m, c1 in m/s, c2 in m/s^2;
    c2 is nonzero only inside relaunch windows).
    """

    start_time: Fraction
    end_time: Fraction
    position_law: tuple[Fraction, Fraction, Fraction]

    def covers(self, t) -> bool:
        return self.start_time <= t <= self.end_time

    def position_exact(self, t: Fraction) -> Fraction:
        u = t - self.start_time
        c0, c1, c2 = self.position_law
        return c0 + c1 * u + c2 * u * u

    def position(self, t: float) -> float:
        """Float position at absolute time t (s)."""
        return float(self.position_exact(Fraction(t)))

    def float_coefficients(self) -> tuple[float, float, float]:
        return tuple(float(c) for c in self.position_law)


def build_mean_trajectory(
    initial_position: float,
    initial_velocity: float,
    relaunches: tuple[RelaunchSpec, RelaunchSpec],
    pulse_separation: float,
) -> tuple[TrajectorySegment, ...]:
    """Piecewise trajectory over [0, 6T] with two relaunch windows.

    Returns five segments: free flight, first window, free flight, second
    window, free flight.  They tile [0, 6T] and the position is continuous
    (exactly, by construction) at every boundary.  Each window adds the
    horizontal velocity tilt*a*tau on top of the initial drift.

    Raises
    ------
    InvalidParameterError
        If the windows overlap, are out of order, or stray outside their
        free-flight intervals (T, 3T) and (3T, 5T), which would overlap the
        pulse times.
    """
    if pulse_separation <= 0:
        raise InvalidParameterError("pulse_separation must be strictly positive")
    if len(relaunches) != 2:
        raise InvalidParameterError("exactly two relaunches are required")

    T = Fraction(pulse_separation)
    y0 = Fraction(initial_position)
    v0 = Fraction(initial_velocity)

    bounds = []
    leaks = []  # horizontal acceleration tilt*a inside each window
    for center_multiple, spec in zip(_RELAUNCH_CENTERS, relaunches):
        center = center_multiple * T + Fraction(spec.timing_offset)
        half = Fraction(spec.duration) / 2
        bounds.append((center - half, center + half))
        leaks.append(Fraction(spec.tilt_angle) * Fraction(spec.acceleration))

    (t1, t2), (t3, t4) = bounds
    if not (0 < t1 < t2 < t3 < t4 < 6 * T):
        raise InvalidParameterError("relaunch windows must be ordered, non-overlapping, inside (0, 6T)")
    if not (T < t1 and t2 < 3 * T and 3 * T < t3 and t4 < 5 * T):
        raise InvalidParameterError("relaunch windows must lie inside (T, 3T) and (3T, 5T)")

    tau1 = t2 - t1
    tau2 = t4 - t3
    half_leak1, half_leak2 = leaks[0] / 2, leaks[1] / 2
    kick1 = leaks[0] * tau1
    kick2 = leaks[1] * tau2

    segments = []
    # free flight before the first window
    segments.append(TrajectorySegment(Fraction(0), t1, (y0, v0, Fraction(0))))
    p1 = y0 + v0 * t1
    # first window: quadratic in local time
    segments.append(TrajectorySegment(t1, t2, (p1, v0, half_leak1)))
    p2 = p1 + v0 * tau1 + half_leak1 * tau1 * tau1
    # drift between the windows carries the first kick
    segments.append(TrajectorySegment(t2, t3, (p2, v0 + kick1, Fraction(0))))
    p3 = p2 + (v0 + kick1) * (t3 - t2)
    # second window
    segments.append(TrajectorySegment(t3, t4, (p3, v0 + kick1, half_leak2)))
    p4 = p3 + (v0 + kick1) * tau2 + half_leak2 * tau2 * tau2
    # final drift to recombination
    segments.append(TrajectorySegment(t4, 6 * T, (p4, v0 + kick1 + kick2, Fraction(0))))
    return tuple(segments)


def ftl_phase_from_trajectory(
    segments: tuple[TrajectorySegment, ...],
    wave_number: float,
    pulse_separation: float,
) -> float:
    """Five-term weighted readout phase of the folded triple loop, rad.

    Evaluates k * sum_j w_j * y(t_j) at t_j = (0, T, 3T, 5T, 6T) exactly
    over the segments' rational laws, then rounds once to float.
    """
    if pulse_separation <= 0:
        raise InvalidParameterError("pulse_separation must be strictly positive")
    T = Fraction(pulse_separation)
    total = Fraction(0)
    for weight, multiple in zip(_WEIGHTS, _TIME_MULTIPLES):
        t = multiple * T
        for segment in segments:
            if segment.covers(t):
                total += weight * segment.position_exact(t)
                break
        else:
            raise InvalidParameterError(
                f"trajectory does not cover the evaluation time {float(t)} s"
            )
    return wave_number * float(total)


def timing_error_phase(
    wave_number: float,
    acceleration: float,
    duration: float,
    common_offset: float,
    differential_offset: float,
    tilt_first: float,
    tilt_second: float,
) -> float:
    """Closed-form relaunch timing-error phase, rad.

    For equal relaunch durations and accelerations:

        phi = (5/4) k a tau (common_offset*(tilt2 - tilt1)/2
                             + differential_offset*(tilt2 + tilt1)/2)

    where common_offset and differential_offset are the sum and difference
    of the two window timing offsets.  Agrees with
    :func:`ftl_phase_from_trajectory` under matching parameters.
    """
    if duration <= 0:
        raise InvalidParameterError("duration must be strictly positive")
    return (
        1.25
        * wave_number
        * acceleration
        * duration
        * (
            common_offset * (tilt_second - tilt_first) / 2.0
            + differential_offset * (tilt_second + tilt_first) / 2.0
        )
    )


def trajectory_series(
    segments: tuple[TrajectorySegment, ...], samples_per_segment: int = 200
) -> tuple[np.ndarray, np.ndarray]:
    """Sample (t, y) along the trajectory for plotting or CSV export."""
    if samples_per_segment < 2:
        raise InvalidParameterError("samples_per_segment must be >= 2")
    ts: list[float] = []
    ys: list[float] = []
    for segment in segments:
        grid = np.linspace(float(segment.start_time), float(segment.end_time), samples_per_segment)
        c0, c1, c2 = segment.float_coefficients()
        u = grid - float(segment.start_time)
        ts.extend(grid.tolist())
        ys.extend((c0 + c1 * u + c2 * u * u).tolist())
    return np.asarray(ts), np.asarray(ys)


def relaunch_phase_summary(
    pulse_separation: float,
    wave_number: float,
    gravitational_acceleration: float,
    duration: float,
    tilt_first: float,
    tilt_second: float,
    offset_first: float,
    offset_second: float,
) -> dict:
    """Build the trajectory and report both phase routes side by side."""
    relaunches = (
        vertical_relaunch(
            pulse_separation, gravitational_acceleration, duration, tilt_first, offset_first
        ),
        vertical_relaunch(
            pulse_separation, gravitational_acceleration, duration, tilt_second, offset_second
        ),
    )
    segments = build_mean_trajectory(0.0, 0.0, relaunches, pulse_separation)
    phi_traj = ftl_phase_from_trajectory(segments, wave_number, pulse_separation)
    phi_closed = timing_error_phase(
        wave_number,
        relaunches[0].acceleration,
        duration,
        offset_second + offset_first,
        offset_second - offset_first,
        tilt_first,
        tilt_second,
    )
    return {
        "trajectory_phase_rad": phi_traj,
        "closed_form_phase_rad": phi_closed,
        "segments": segments,
    }
