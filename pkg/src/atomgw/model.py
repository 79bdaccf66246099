"""Detector model: physical constants, beam-splitter scale, pulse sequences.

An interferometer geometry is described by an ordered list of light-pulse
events.  Each event carries a time (seconds, relative to the first pulse)
and a dimensionless signed weight, the multiple of the effective wave
number transferred at that pulse.  Two closure conditions make a sequence
a usable accelerometer-free geometry:

* sum of weights = 0, so a constant mirror or platform displacement drops
  out of the phase, and
* sum of weight*time = 0, so a constant platform velocity drift drops out.

The symmetric single-loop geometry uses pulses at (0, T, 2T) with weights
(+1, -2, +1).  The folded triple-loop geometry uses five pulses at
(0, T, 3T, 5T, 6T) with weights (+1, -9/4, +5/2, -9/4, +1) and two
vertical relaunches at (9/5)T and (21/5)T; its weight set additionally
cancels the second time moment (sum of weight*time^2 = 0), which is what
steepens its low-frequency response roll-off from f^2 to f^4.

All units are SI throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import InvalidParameterError

TWO_PI = 2.0 * math.pi

#: Geometry tags used by builders, budgets, and the CLI.
SINGLE_LOOP = "sl"
FOLDED_TRIPLE_LOOP = "ftl"
GEOMETRIES = (SINGLE_LOOP, FOLDED_TRIPLE_LOOP)

#: Mass of a rubidium-87 atom in kg (source species for the default antenna).
RB87_MASS = 1.44316060e-25

#: Boltzmann constant in J/K, used for informational kinetic temperatures.
BOLTZMANN = 1.380649e-23


def _require(condition, message):
    if not condition:
        raise InvalidParameterError(message)


@dataclass(frozen=True)
class PhysicalConstants:
    """Environment constants of the detector site.

    Attributes
    ----------
    speed_of_light : float
        m/s.
    gravitational_acceleration : float
        Local gravity g in m/s^2.
    gravity_gradient : float
        Vertical gravity-gradient magnitude in 1/s^2.
    earth_rotation_rate : float
        Earth rotation rate in rad/s (projected magnitude at the site).
    """

    speed_of_light: float = 299_792_458.0
    gravitational_acceleration: float = 9.81
    gravity_gradient: float = 1.5e-6
    earth_rotation_rate: float = 5.75e-5

    def __post_init__(self):
        for name in (
            "speed_of_light",
            "gravitational_acceleration",
            "gravity_gradient",
            "earth_rotation_rate",
        ):
            _require(getattr(self, name) > 0, f"{name} must be strictly positive")


@dataclass(frozen=True)
class BeamSplitterSpec:
    """Momentum scale of the symmetric twin-lattice beam splitter.

    ``photon_recoils_per_side`` photon recoils are transferred to *each* of
    the two interferometer paths, in opposite directions, so the effective
    wave number counts both sides:

        k_eff = 2 * photon_recoils_per_side * 2*pi / optical_wavelength

    With the defaults (1000 recoils per side on the rubidium D2 line at
    780 nm) this is 2000 * 2*pi / 780 nm = 1.611e10 rad/m.
    """

    photon_recoils_per_side: int = 1000
    optical_wavelength: float = 780e-9

    def __post_init__(self):
        _require(self.photon_recoils_per_side >= 1, "photon_recoils_per_side must be >= 1")
        _require(self.optical_wavelength > 0, "optical_wavelength must be strictly positive")

    @property
    def effective_wave_number(self) -> float:
        """Differential wave number between the two paths, rad/m."""
        return 2 * self.photon_recoils_per_side * TWO_PI / self.optical_wavelength


@dataclass(frozen=True)
class PulseEvent:
    """One light-pulse interaction: time in s, signed wave-number weight."""

    time: float
    weight: float


#: Tolerance on the closure sums of normalized weights.
CLOSURE_TOL = 1e-12


@dataclass(frozen=True)
class PulseSequence:
    """Ordered light-pulse events defining an interferometer geometry.

    Relaunch times are metadata: the relaunches transfer vertical momentum
    only and do not enter the horizontal weight sums.  ``wave_number`` is
    the effective beam-splitter wave number the weights multiply.
    """

    events: tuple[PulseEvent, ...]
    pulse_separation: float
    wave_number: float
    relaunch_times: tuple[float, ...] = ()
    label: str = ""

    def __post_init__(self):
        _require(len(self.events) >= 2, "a sequence needs at least two pulses")
        _require(self.pulse_separation > 0, "pulse_separation must be strictly positive")
        _require(self.wave_number > 0, "wave_number must be strictly positive")
        times = [e.time for e in self.events]
        _require(
            all(b > a for a, b in zip(times, times[1:])),
            "pulse times must be strictly increasing",
        )
        _require(
            abs(self.weight_sum()) < CLOSURE_TOL,
            "weights must sum to zero (displacement insensitivity)",
        )
        _require(
            abs(self.weight_moment(1)) < CLOSURE_TOL * self.pulse_separation,
            "weight*time must sum to zero (velocity-drift insensitivity)",
        )

    def times(self) -> tuple[float, ...]:
        return tuple(e.time for e in self.events)

    def weights(self) -> tuple[float, ...]:
        return tuple(e.weight for e in self.events)

    def weight_sum(self) -> float:
        return math.fsum(e.weight for e in self.events)

    def weight_moment(self, order: int) -> float:
        """Sum of weight * time**order over all events."""
        return math.fsum(e.weight * e.time**order for e in self.events)

    @property
    def duration(self) -> float:
        return self.events[-1].time - self.events[0].time


def build_single_loop(pulse_separation: float, splitter: BeamSplitterSpec) -> PulseSequence:
    """Symmetric single-loop sequence: pulses at (0, T, 2T), weights (1, -2, 1).

    The first pulse splits, the apex pulse at T inverts the momenta, the
    final pulse at 2T recombines.
    """
    _require(pulse_separation > 0, "pulse_separation must be strictly positive")
    T = pulse_separation
    events = (
        PulseEvent(0.0, 1.0),
        PulseEvent(T, -2.0),
        PulseEvent(2 * T, 1.0),
    )
    return PulseSequence(
        events=events,
        pulse_separation=T,
        wave_number=splitter.effective_wave_number,
        label="single-loop",
    )


# Folded triple-loop schedule as exact integer ratios: times in units of T,
# weights in quarters.  -9/4, 5/2 and the unit time multiples are all exact
# in double precision, so the closure sums land on machine zero.
_FTL_TIME_MULTIPLES = (0, 1, 3, 5, 6)
_FTL_WEIGHTS = (1.0, -9.0 / 4.0, 5.0 / 2.0, -9.0 / 4.0, 1.0)
_FTL_RELAUNCH_MULTIPLES = (9.0 / 5.0, 21.0 / 5.0)


def build_folded_triple_loop(pulse_separation: float, splitter: BeamSplitterSpec) -> PulseSequence:
    """Folded triple-loop sequence with two vertical relaunches.

    Five pulses at (0, T, 3T, 5T, 6T) with wave-number weights
    (1, -9/4, 5/2, -9/4, 1); relaunches at (9/5)T and (21/5)T fold the
    three loops onto a single horizontal beam axis.
    """
    _require(pulse_separation > 0, "pulse_separation must be strictly positive")
    T = pulse_separation
    events = tuple(
        PulseEvent(m * T, w) for m, w in zip(_FTL_TIME_MULTIPLES, _FTL_WEIGHTS)
    )
    return PulseSequence(
        events=events,
        pulse_separation=T,
        wave_number=splitter.effective_wave_number,
        relaunch_times=tuple(m * T for m in _FTL_RELAUNCH_MULTIPLES),
        label="folded-triple-loop",
    )


def build_resonant_sequence(
    pulse_separation: float, n_units: int, splitter: BeamSplitterSpec
) -> PulseSequence:
    """Narrow-band 3n-loop sequence built from n triple-loop units.

    Consecutive units of duration 6T are concatenated; each junction merges
    the outgoing recombination pulse with the next unit's splitting pulse by
    summing their weights (1 + 1 = 2).  Both closure moments survive the
    merge because each unit satisfies them individually.  Relaunches repeat
    the per-unit (9/5)T / (21/5)T pattern.

    ``n_units=1`` reproduces :func:`build_folded_triple_loop` exactly.
    """
    _require(pulse_separation > 0, "pulse_separation must be strictly positive")
    _require(n_units >= 1, "n_units must be >= 1")
    if n_units == 1:
        return build_folded_triple_loop(pulse_separation, splitter)

    T = pulse_separation
    times: list[float] = []
    weights: list[float] = []
    relaunches: list[float] = []
    for j in range(n_units):
        offset = 6 * j
        unit_times = [(m + offset) * T for m in _FTL_TIME_MULTIPLES]
        unit_weights = list(_FTL_WEIGHTS)
        if j > 0:
            # Merge junction: previous final pulse coincides with this
            # unit's initial pulse.
            weights[-1] += unit_weights[0]
            unit_times = unit_times[1:]
            unit_weights = unit_weights[1:]
        times.extend(unit_times)
        weights.extend(unit_weights)
        relaunches.extend((m + offset) * T for m in _FTL_RELAUNCH_MULTIPLES)

    events = tuple(PulseEvent(t, w) for t, w in zip(times, weights))
    return PulseSequence(
        events=events,
        pulse_separation=T,
        wave_number=splitter.effective_wave_number,
        relaunch_times=tuple(relaunches),
        label=f"resonant-{3 * n_units}-loop",
    )


def build_sequence(geometry: str, pulse_separation: float, splitter: BeamSplitterSpec) -> PulseSequence:
    """Build a sequence from a geometry tag, ``"sl"`` or ``"ftl"``."""
    if geometry == SINGLE_LOOP:
        return build_single_loop(pulse_separation, splitter)
    if geometry == FOLDED_TRIPLE_LOOP:
        return build_folded_triple_loop(pulse_separation, splitter)
    raise InvalidParameterError(f"unknown geometry {geometry!r}, expected one of {GEOMETRIES}")


@dataclass(frozen=True)
class AtomSource:
    """Atomic source and detection parameters.

    ``launch_velocity`` is the upward launch speed used to convert velocity
    tolerances into launch-pointing tolerances.  Leave it ``None`` to use
    the geometry default (g*T for the single loop, whose apex pulse sits at
    T, and g*T/2 for the folded triple loop, whose apex sits at T/2).
    """

    atoms_per_shot: float = 1e9
    shot_rate: float = 10.0
    initial_radius: float = 4.3e-5
    expansion_rate: float = 1e-4
    squeezing_db: float = 20.0
    source_distance: float = 0.3
    launch_velocity: float | None = None

    def __post_init__(self):
        _require(self.atoms_per_shot >= 1, "atoms_per_shot must be >= 1")
        _require(self.shot_rate > 0, "shot_rate must be strictly positive")
        _require(self.initial_radius > 0, "initial_radius must be strictly positive")
        _require(self.expansion_rate > 0, "expansion_rate must be strictly positive")
        _require(self.squeezing_db >= 0, "squeezing_db must be >= 0")
        _require(self.source_distance > 0, "source_distance must be strictly positive")
        if self.launch_velocity is not None:
            _require(self.launch_velocity > 0, "launch_velocity must be strictly positive")


@dataclass(frozen=True)
class DetectorConfig:
    """Full antenna configuration.

    ``interleave_values`` lists the pulse-separation times of concurrently
    running sequences; staggering them removes the response zeros of any
    single value from the combined sensitivity.
    """

    arm_length: float = 1e4
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    splitter: BeamSplitterSpec = field(default_factory=BeamSplitterSpec)
    source: AtomSource = field(default_factory=AtomSource)
    sequence: PulseSequence | None = None
    interleave_values: tuple[float, ...] = (0.182, 0.234, 0.260)

    def __post_init__(self):
        _require(self.arm_length > 0, "arm_length must be strictly positive")
        _require(
            all(t > 0 for t in self.interleave_values),
            "interleave pulse separations must be strictly positive",
        )
        if self.sequence is None:
            object.__setattr__(
                self, "sequence", build_folded_triple_loop(0.26, self.splitter)
            )

    @property
    def geometry(self) -> str:
        """Geometry tag of the configured sequence."""
        return SINGLE_LOOP if self.sequence.label == "single-loop" else FOLDED_TRIPLE_LOOP

    def launch_speed(self, geometry: str | None = None) -> float:
        """Upward launch speed for pointing conversions, m/s."""
        if self.source.launch_velocity is not None:
            return self.source.launch_velocity
        geometry = geometry or self.geometry
        g = self.constants.gravitational_acceleration
        T = self.sequence.pulse_separation
        return g * T if geometry == SINGLE_LOOP else g * T / 2.0


def default_config(geometry: str = FOLDED_TRIPLE_LOOP, pulse_separation: float = 0.26) -> DetectorConfig:
    """Config with the reference antenna parameters (10 km arms, 10^9 atoms
    at 10 Hz, 20 dB squeezing, 1000 recoils per side at 780 nm)."""
    splitter = BeamSplitterSpec()
    return DetectorConfig(
        splitter=splitter,
        sequence=build_sequence(geometry, pulse_separation, splitter),
    )


def with_sequence(config: DetectorConfig, sequence: PulseSequence) -> DetectorConfig:
    """Copy of ``config`` with a different pulse sequence."""
    return replace(config, sequence=sequence)
