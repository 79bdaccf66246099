"""atomgw: modeling toolkit for atom-interferometric infrasound GW antennas.

Computes the gravitational-wave phase response of single-loop, folded
triple-loop, and resonant 3n-loop pulse sequences, spurious-phase noise
budgets with requirement inversion, and strain-sensitivity spectra.
"""

from .budget import (
    CouplingTerm,
    RequirementEntry,
    RequirementReport,
    coupling_phases,
    detection_phase_asd,
    format_report,
    ftl_coupling_phases,
    full_requirement_report,
    invert_requirement,
    kinetic_temperature,
    report_to_dict,
    single_loop_couplings,
    sl_coupling_phases,
    source_statistics,
    triple_loop_couplings,
)
from .errors import (
    AtomgwError,
    ConfigError,
    CoverageError,
    CurveParseError,
    DegenerateCouplingError,
    InvalidParameterError,
    UnitError,
)
from .fileio import (
    CurveFileHeader,
    config_digest,
    read_config,
    read_curve,
    write_breakdown,
    write_config,
    write_curve,
    write_response,
)
from .model import (
    FOLDED_TRIPLE_LOOP,
    SINGLE_LOOP,
    AtomSource,
    BeamSplitterSpec,
    DetectorConfig,
    PhysicalConstants,
    PulseEvent,
    PulseSequence,
    build_folded_triple_loop,
    build_resonant_sequence,
    build_sequence,
    build_single_loop,
    default_config,
)
from .response import (
    PhaseResponse,
    differential_arm_factor,
    find_peak_response,
    mirror_displacement_response,
    mirror_response_curve,
    strain_response,
    strain_response_closed_form,
    strain_response_curve,
)
from .sensitivity import (
    NoiseCurve,
    SensitivityBreakdown,
    assemble_breakdown,
    band_limit,
    interleaved_strain_asd,
    intrinsic_strain_asd,
    log_frequency_grid,
    mirror_vibration_strain_asd,
    resonant_strain_asd,
)
from .trajectory import (
    RelaunchSpec,
    TrajectorySegment,
    build_mean_trajectory,
    ftl_phase_from_trajectory,
    timing_error_phase,
    trajectory_series,
    vertical_relaunch,
)

__version__ = "0.1.0"
