import numpy as np
import pytest

from atomgw import (
    CoverageError,
    InvalidParameterError,
    NoiseCurve,
    UnitError,
    assemble_breakdown,
    band_limit,
    build_folded_triple_loop,
    build_single_loop,
    default_config,
    interleaved_strain_asd,
    intrinsic_strain_asd,
    log_frequency_grid,
    mirror_vibration_strain_asd,
    resonant_strain_asd,
)
from atomgw.sensitivity import DISPLACEMENT_UNITS, STRAIN_UNITS

CONFIG = default_config()
SEQ = CONFIG.sequence
T = 0.26


class TestNoiseCurve:
    def test_validation(self):
        with pytest.raises(InvalidParameterError):
            NoiseCurve(np.array([2.0, 1.0]), np.array([1.0, 1.0]), STRAIN_UNITS)
        with pytest.raises(InvalidParameterError):
            NoiseCurve(np.array([1.0, 2.0]), np.array([1.0, -1.0]), STRAIN_UNITS)
        with pytest.raises(UnitError):
            NoiseCurve(np.array([1.0, 2.0]), np.array([1.0, 1.0]), "furlongs")

    def test_loglog_interpolation(self):
        # power law f^-2 interpolates exactly in log-log space
        f = np.array([0.1, 1.0, 10.0])
        curve = NoiseCurve(f, f**-2.0, STRAIN_UNITS)
        assert curve.sample(0.31622776601683794) == pytest.approx(10.0, rel=1e-12)

    def test_extrapolation_forbidden(self):
        curve = NoiseCurve(np.array([1.0, 2.0]), np.array([1.0, 1.0]), STRAIN_UNITS)
        with pytest.raises(CoverageError):
            curve.sample(0.5)
        with pytest.raises(CoverageError):
            curve.sample(np.array([1.5, 2.5]))


class TestIntrinsic:
    def test_band_values(self):
        f = np.linspace(0.3, 5, 500)
        curve = intrinsic_strain_asd(SEQ, CONFIG, f)
        finite = curve.asd_values[np.isfinite(curve.asd_values)]
        assert finite.min() > 1e-22
        assert finite.min() < 1e-19

    def test_response_zero_becomes_infinity(self):
        # single loop has response zeros at f*T integer
        seq = build_single_loop(T, CONFIG.splitter)
        curve = intrinsic_strain_asd(seq, CONFIG, np.array([0.5 / T, 1.0 / T]))
        assert np.isfinite(curve.asd_values[0])
        assert np.isinf(curve.asd_values[1])

    def test_arm_length_scaling(self):
        from dataclasses import replace

        f = np.linspace(0.3, 5, 50)
        doubled = replace(CONFIG, arm_length=2 * CONFIG.arm_length)
        a = intrinsic_strain_asd(SEQ, CONFIG, f)
        b = intrinsic_strain_asd(SEQ, doubled, f)
        np.testing.assert_allclose(b.asd_values, a.asd_values / 2, rtol=1e-12)

    def test_grid_outside_nyquist_rejected(self):
        with pytest.raises(InvalidParameterError):
            intrinsic_strain_asd(SEQ, CONFIG, np.array([1.0, 6.0]))

    def test_band_limit_helper(self):
        grid = band_limit(log_frequency_grid(0.01, 10, 100), CONFIG.source.shot_rate)
        assert grid[-1] <= 5.0


class TestInterleaved:
    def test_single_value_degenerates_to_intrinsic(self):
        from dataclasses import replace

        config = replace(CONFIG, interleave_values=(T,))
        f = np.linspace(0.3, 5, 200)
        combined = interleaved_strain_asd(config, "ftl", f)
        single = intrinsic_strain_asd(SEQ, CONFIG, f)
        np.testing.assert_allclose(combined.asd_values, single.asd_values, rtol=1e-12)

    def test_finite_across_band(self):
        f = np.linspace(0.3, 5, 2000)
        combined = interleaved_strain_asd(CONFIG, "ftl", f)
        assert np.all(np.isfinite(combined.asd_values))
        assert combined.asd_values.max() < 1e-19

    def test_never_worse_than_best_channel(self):
        from atomgw import build_sequence

        f = np.linspace(0.3, 5, 400)
        combined = interleaved_strain_asd(CONFIG, "ftl", f).asd_values
        singles = [
            intrinsic_strain_asd(build_sequence("ftl", t, CONFIG.splitter), CONFIG, f).asd_values
            for t in CONFIG.interleave_values
        ]
        best = np.minimum.reduce(singles)
        assert np.all(combined <= best * (1 + 1e-12))

    def test_empty_interleave_rejected(self):
        from dataclasses import replace

        config = replace(CONFIG, interleave_values=())
        with pytest.raises(InvalidParameterError):
            interleaved_strain_asd(config, "ftl", np.linspace(0.3, 5, 10))

    def test_split_flux_costs_sqrt_channels(self):
        # splitting the rate also lowers the per-channel Nyquist to rate/6
        f = np.linspace(0.3, 1.5, 100)
        full = interleaved_strain_asd(CONFIG, "ftl", f).asd_values
        split = interleaved_strain_asd(CONFIG, "ftl", f, split_flux=True).asd_values
        np.testing.assert_allclose(split, np.sqrt(3) * full, rtol=1e-12)


class TestResonant:
    def test_n1_matches_intrinsic(self):
        f = np.linspace(0.3, 5, 300)
        res = resonant_strain_asd(T, 1, CONFIG, f)
        intrinsic = intrinsic_strain_asd(SEQ, CONFIG, f)
        np.testing.assert_allclose(res.asd_values, intrinsic.asd_values, rtol=1e-12)

    def test_peak_enhancement_before_rate_adjustment(self):
        f = np.linspace(0.3, 5, 20000)
        base = resonant_strain_asd(T, 1, CONFIG, f, adjust_rate=False)
        multi = resonant_strain_asd(T, 3, CONFIG, f, adjust_rate=False)
        improvement = np.nanmin(base.asd_values) / np.nanmin(multi.asd_values)
        assert 2.4 <= improvement <= 3.6

    def test_rate_adjustment_costs_noise(self):
        f = np.linspace(0.3, 5, 2000)
        raw = resonant_strain_asd(T, 3, CONFIG, f, adjust_rate=False)
        adj = resonant_strain_asd(T, 3, CONFIG, f, adjust_rate=True)
        expected = np.sqrt((6 * 3 * T + 0.1) / (6 * T + 0.1))
        np.testing.assert_allclose(adj.asd_values, raw.asd_values * expected, rtol=1e-12)

    def test_off_resonance_worse_than_broadband(self):
        f = np.linspace(0.3, 5, 5000)
        broadband = interleaved_strain_asd(CONFIG, "ftl", f).asd_values
        narrow = resonant_strain_asd(T, 3, CONFIG, f).asd_values
        worse = np.sum(narrow > broadband)
        assert worse > 0.5 * f.size


class TestMirrorVibration:
    def white_isolation(self, level=1e-18):
        f = np.array([1e-3, 100.0])
        return NoiseCurve(f, np.full(2, level), DISPLACEMENT_UNITS, label="white")

    def test_zero_curve_contributes_nothing(self):
        f = np.linspace(0.3, 5, 50)
        iso = NoiseCurve(np.array([0.01, 100.0]), np.zeros(2), DISPLACEMENT_UNITS)
        curve = mirror_vibration_strain_asd(SEQ, CONFIG, iso, f)
        assert np.all(curve.asd_values == 0.0)

    def test_golden_value_at_1hz(self):
        # The pulse-weighting kernel cancels between the mirror and strain
        # responses, leaving |1 - exp(-i*omega*2L/c)| * x / L.  For white
        # x = 1e-18 m/rtHz at 1 Hz with L = 10 km this is 4.1917e-26.
        curve = mirror_vibration_strain_asd(SEQ, CONFIG, self.white_isolation(), np.array([0.5, 1.0]))
        assert curve.asd_values[1] == pytest.approx(4.1917e-26, rel=1e-3)

    def test_unit_mismatch_rejected(self):
        iso = NoiseCurve(np.array([0.01, 100.0]), np.full(2, 1e-18), STRAIN_UNITS)
        with pytest.raises(UnitError):
            mirror_vibration_strain_asd(SEQ, CONFIG, iso, np.linspace(0.3, 5, 10))

    def test_coverage_failure(self):
        iso = NoiseCurve(np.array([2.0, 3.0]), np.full(2, 1e-18), DISPLACEMENT_UNITS)
        with pytest.raises(CoverageError):
            mirror_vibration_strain_asd(SEQ, CONFIG, iso, np.linspace(0.3, 5, 10))

    def test_crossover_with_steep_isolation(self):
        # A steep residual-displacement curve scaled to cross the intrinsic
        # near 1 Hz dominates at 0.3 Hz and is dominated at 3 Hz.
        f = np.linspace(0.3, 5, 2000)
        intrinsic = intrinsic_strain_asd(SEQ, CONFIG, f)
        grid = np.logspace(-2, 2, 200)
        shape = NoiseCurve(grid, grid**-6.0, DISPLACEMENT_UNITS, label="steep")
        trial = mirror_vibration_strain_asd(SEQ, CONFIG, shape, np.array([1.0, 1.1]))
        target = intrinsic.sample(1.0)
        scale = target / trial.asd_values[0]
        iso = NoiseCurve(grid, scale * grid**-6.0, DISPLACEMENT_UNITS, label="scaled")
        mirror = mirror_vibration_strain_asd(SEQ, CONFIG, iso, f)

        def at(curve, freq):
            return curve.asd_values[np.argmin(np.abs(f - freq))]

        assert at(mirror, 0.3) > at(intrinsic, 0.3)
        assert at(mirror, 3.0) < at(intrinsic, 3.0)


class TestBreakdown:
    def flat(self, value, label):
        f = np.linspace(0.3, 5, 100)
        return NoiseCurve(f, np.full_like(f, value), STRAIN_UNITS, label=label)

    def test_single_component_total(self):
        curve = self.flat(1e-20, "a")
        breakdown = assemble_breakdown([curve])
        np.testing.assert_allclose(breakdown.total.asd_values, curve.asd_values, rtol=1e-15)

    def test_two_equal_components(self):
        breakdown = assemble_breakdown([self.flat(1e-20, "a"), self.flat(1e-20, "b")])
        np.testing.assert_allclose(
            breakdown.total.asd_values, np.sqrt(2) * 1e-20, rtol=1e-12
        )

    def test_quadrature_identity(self):
        f = np.linspace(0.3, 5, 500)
        intrinsic = intrinsic_strain_asd(SEQ, CONFIG, f)
        iso = NoiseCurve(np.array([0.01, 100.0]), np.full(2, 1e-16), DISPLACEMENT_UNITS)
        mirror = mirror_vibration_strain_asd(SEQ, CONFIG, iso, f)
        breakdown = assemble_breakdown([intrinsic, mirror])
        power = sum(c.asd_values**2 for c in breakdown.components)
        np.testing.assert_allclose(breakdown.total.asd_values**2, power, rtol=1e-12)

    def test_requires_strain_units(self):
        iso = NoiseCurve(np.array([0.3, 5.0]), np.full(2, 1e-18), DISPLACEMENT_UNITS, label="x")
        with pytest.raises(UnitError):
            assemble_breakdown([iso])

    def test_requires_components(self):
        with pytest.raises(InvalidParameterError):
            assemble_breakdown([])

    def test_overlays_do_not_enter_sum(self):
        base = self.flat(1e-20, "a")
        overlay = self.flat(5e-19, "signal")
        breakdown = assemble_breakdown([base], overlays=[overlay])
        np.testing.assert_allclose(breakdown.total.asd_values, base.asd_values, rtol=1e-15)
        assert breakdown.overlays[0].label == "signal"
