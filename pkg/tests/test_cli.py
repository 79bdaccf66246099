import json

import numpy as np
import pytest

from atomgw.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, build_parser, main


def write_isolation_curve(path):
    grid = np.logspace(-2, 2, 40)
    lines = ["# units: m_per_rtHz", "# label: demo isolation", "frequency_hz,asd"]
    for f, v in zip(grid, 1e-16 * grid**-4.0):
        lines.append(f"{float(f)!r},{float(v)!r}")
    path.write_text("\n".join(lines) + "\n")


def write_strain_curve(path, level=1e-20):
    lines = ["# units: strain_per_rtHz", "# label: demo strain", "frequency_hz,asd"]
    for f in (0.01, 0.1, 1.0, 10.0):
        lines.append(f"{f!r},{level!r}")
    path.write_text("\n".join(lines) + "\n")


class TestExitCodes:
    def test_usage_error_unknown_command(self, capsys):
        assert main(["frobnicate"]) == EXIT_USAGE

    def test_usage_error_missing_output(self, capsys):
        assert main(["response"]) == EXIT_USAGE

    def test_usage_error_bad_flag(self, capsys):
        assert main(["response", "--output", "x.csv", "--no-such-flag"]) == EXIT_USAGE

    def test_validation_error(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("arm_length_m = -1\n")
        code = main(
            ["response", "--config", str(cfg), "--output", str(tmp_path / "out.csv")]
        )
        assert code == EXIT_VALIDATION
        assert "validation error" in capsys.readouterr().err

    def test_io_error_missing_input(self, tmp_path, capsys):
        code = main(
            [
                "sensitivity",
                "--isolation",
                str(tmp_path / "nope.csv"),
                "--output",
                str(tmp_path / "out.csv"),
            ]
        )
        assert code == EXIT_IO

    def test_bad_grid_is_validation(self, tmp_path, capsys):
        code = main(
            [
                "response",
                "--f-min",
                "5",
                "--f-max",
                "1",
                "--output",
                str(tmp_path / "out.csv"),
            ]
        )
        assert code == EXIT_VALIDATION


class TestHelpDocumentsUnits:
    @pytest.mark.parametrize(
        "command", ["response", "sensitivity", "budget", "requirements", "trajectory", "resonant"]
    )
    def test_each_subcommand_mentions_units(self, command, capsys):
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args([command, "--help"])
        assert exc.value.code == 0
        text = capsys.readouterr().out
        assert "Hz" in text or "rad" in text or "s" in text


class TestResponseCommand:
    def test_emits_magnitude_and_phase(self, tmp_path, capsys):
        out = tmp_path / "resp.csv"
        assert main(["response", "--geometry", "ftl", "--output", str(out)]) == EXIT_OK
        lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert lines[0] == "frequency_hz,magnitude,phase_rad"
        assert len(lines) == 2001

    def test_low_frequency_rolloff(self, tmp_path, capsys):
        out = tmp_path / "resp.csv"
        assert (
            main(
                [
                    "response",
                    "--geometry",
                    "ftl",
                    "--f-min",
                    "1e-6",
                    "--f-max",
                    "2e-6",
                    "--points",
                    "2",
                    "--output",
                    str(out),
                ]
            )
            == EXIT_OK
        )
        rows = [l for l in out.read_text().splitlines() if not l.startswith("#")][1:]
        magnitude = float(rows[0].split(",")[1])
        # f^4 roll-off leaves essentially nothing six decades below band
        assert magnitude < 1e-8 * 1.26e15


class TestRequirementsCommand:
    def test_table_contains_reference_values(self, tmp_path, capsys):
        out = tmp_path / "req.json"
        assert main(["requirements", "--geometry", "sl", "--output", str(out)]) == EXIT_OK
        table = capsys.readouterr().out
        assert "4.328e-10" in table
        assert "1.665e-09" in table
        assert "5.646e-12" in table
        payload = json.loads(out.read_text())
        assert payload["schema_version"] == 1


class TestBudgetCommand:
    def test_default_params_use_source_statistics(self, tmp_path, capsys):
        out = tmp_path / "budget.json"
        assert main(["budget", "--geometry", "sl", "--output", str(out)]) == EXIT_OK
        payload = json.loads(out.read_text())
        assert payload["geometry"] == "sl"
        assert payload["phases_rad"]["position_gravity_gradient"] > 0

    def test_params_file(self, tmp_path, capsys):
        params = tmp_path / "p.cfg"
        params.write_text("relaunch_pointing_x = 1e-12\n")
        out = tmp_path / "budget.json"
        assert (
            main(
                [
                    "budget",
                    "--geometry",
                    "ftl",
                    "--params",
                    str(params),
                    "--output",
                    str(out),
                ]
            )
            == EXIT_OK
        )
        payload = json.loads(out.read_text())
        assert payload["phases_rad"]["relaunch_pointing_x"] == pytest.approx(2.0e-6, rel=0.05)

    def test_unknown_param_rejected(self, tmp_path, capsys):
        params = tmp_path / "p.cfg"
        params.write_text("warp_drive = 9\n")
        code = main(
            ["budget", "--geometry", "sl", "--params", str(params), "--output", str(tmp_path / "b.json")]
        )
        assert code == EXIT_VALIDATION


class TestTrajectoryCommand:
    def test_emits_series_and_phase(self, tmp_path, capsys):
        out = tmp_path / "traj.csv"
        code = main(
            [
                "trajectory",
                "--tilt2",
                "1e-9",
                "--timing-offset2",
                "1e-8",
                "--output",
                str(out),
            ]
        )
        assert code == EXIT_OK
        text = out.read_text()
        assert "# timing_error_phase_rad = " in text
        phase_line = [l for l in text.splitlines() if "timing_error_phase" in l][0]
        assert float(phase_line.split("=")[1]) == pytest.approx(1.2841e-6, rel=1e-3)


class TestResonantCommand:
    def test_emits_curve_and_resonance(self, tmp_path, capsys):
        out = tmp_path / "res.csv"
        assert main(["resonant", "--loops", "3", "--output", str(out)]) == EXIT_OK
        text = out.read_text()
        line = [l for l in text.splitlines() if "resonance_frequency_hz" in l][0]
        f_res = float(line.split("=")[1])
        assert 0.3 < f_res < 5.0


class TestSensitivityCommand:
    def test_interleaved_breakdown(self, tmp_path, capsys):
        out = tmp_path / "sens.csv"
        assert main(["sensitivity", "--interleave", "--output", str(out)]) == EXIT_OK
        rows = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        header = rows[0].split(",")
        assert header == ["frequency_hz", "intrinsic", "total"]
        meta = json.loads((tmp_path / "sens.csv.meta.json").read_text())
        assert meta["schema_version"] == 1
        assert "config_sha256" in meta

    def test_with_curves_and_overlay(self, tmp_path, capsys):
        iso = tmp_path / "iso.csv"
        nn = tmp_path / "nn.csv"
        ov = tmp_path / "ov.csv"
        write_isolation_curve(iso)
        write_strain_curve(nn, 1e-21)
        write_strain_curve(ov, 5e-19)
        out = tmp_path / "sens.csv"
        code = main(
            [
                "sensitivity",
                "--interleave",
                "--isolation",
                str(iso),
                "--newtonian",
                str(nn),
                "--overlay",
                str(ov),
                "--output",
                str(out),
            ]
        )
        assert code == EXIT_OK
        rows = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert rows[0].split(",") == [
            "frequency_hz",
            "intrinsic",
            "mirror vibration",
            "newtonian",
            "total",
        ]
        assert (tmp_path / "sens.overlay-0.csv").exists()


class TestDeterminism:
    def run_twice(self, args, tmp_path, outputs):
        first = {}
        for name in outputs:
            (tmp_path / name).unlink(missing_ok=True)
        assert main(args) == EXIT_OK
        for name in outputs:
            first[name] = (tmp_path / name).read_bytes()
        assert main(args) == EXIT_OK
        for name in outputs:
            assert (tmp_path / name).read_bytes() == first[name], name

    def test_all_subcommands_byte_identical(self, tmp_path, capsys):
        iso = tmp_path / "iso.csv"
        write_isolation_curve(iso)
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
            (["budget", "--geometry", "sl", "--output", str(tmp_path / "b.json")], ["b.json"]),
            (
                ["requirements", "--geometry", "ftl", "--output", str(tmp_path / "q.json")],
                ["q.json"],
            ),
            (
                ["trajectory", "--tilt1", "1e-9", "--output", str(tmp_path / "t.csv")],
                ["t.csv"],
            ),
            (["resonant", "--loops", "2", "--output", str(tmp_path / "n.csv")], ["n.csv"]),
        ]
        for args, outputs in cases:
            self.run_twice(args, tmp_path, outputs)
