import json

import numpy as np
import pytest

from cfroots.cli import main, read_curve_csv


@pytest.fixture()
def config_file(tmp_path):
    def make(payload: dict, name="config.json"):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)

    return make


@pytest.fixture()
def base_config(config_file, tmp_path):
    return config_file(
        {
            "spec": {"b0": 1.0, "positives": [[2.0, 4.0]]},
            "n": 3,
            "seed": 20250801,
            "output": str(tmp_path / "out"),
        }
    )


class TestValidate:
    def test_valid_spec(self, base_config, capsys):
        assert main(["validate", "--config", base_config]) == 0
        assert capsys.readouterr().out.strip() == "comp=3 rho=1"

    def test_overlapping_intervals(self, config_file, capsys):
        cfg = config_file({"spec": {"b0": 1.0, "positives": [[0.5, 4.0]]}})
        assert main(["validate", "--config", cfg]) == 2
        assert "error" in capsys.readouterr().err

    def test_missing_b0(self, config_file):
        cfg = config_file({"spec": {"positives": [[2.0, 4.0]]}})
        assert main(["validate", "--config", cfg]) == 2

    def test_malformed_json_reports_line(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"spec": {"b0": 1.0,\n  "positives": [[2, }')
        assert main(["validate", "--config", str(bad)]) == 2
        assert ":2:" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["validate", "--config", str(tmp_path / "nope.json")]) == 2

    def test_halfwidth_must_cover_support(self, config_file):
        cfg = config_file(
            {"spec": {"b0": 1.0, "positives": [[2.0, 4.0]]}, "grid": {"halfwidth": 3.0}}
        )
        assert main(["validate", "--config", cfg]) == 2


class TestBuildAndFamily:
    def test_build_writes_blueprint(self, base_config, tmp_path):
        assert main(["build", "--config", base_config]) == 0
        data = json.loads((tmp_path / "out" / "blueprint.json").read_text())
        assert data["normalizer"] == 1.5
        assert data["coefficients"] == [0.25, 0.25]

    def test_family_manifest(self, base_config, tmp_path):
        assert main(["family", "--config", base_config]) == 0
        data = json.loads((tmp_path / "out" / "family_manifest.json").read_text())
        assert data["count"] == 3
        assert data["distinctness"]["min_pairwise_max_abs_diff"] > 0.01

    def test_family_n_override(self, base_config, tmp_path):
        assert main(["family", "--config", base_config, "--n", "5"]) == 0
        data = json.loads((tmp_path / "out" / "family_manifest.json").read_text())
        assert data["count"] == 5

    def test_nine_member_family(self, config_file, tmp_path):
        cfg = config_file(
            {
                "spec": {"b0": 1.0, "positives": [[2.0, 4.0], [5.0, 9.0]]},
                "n": 3,
                "output": str(tmp_path / "out9"),
            }
        )
        assert main(["family", "--config", cfg]) == 0
        data = json.loads((tmp_path / "out9" / "family_manifest.json").read_text())
        assert data["count"] == 9


class TestVerify:
    def test_all_members_pass(self, base_config, tmp_path, capsys):
        assert main(["verify", "--config", base_config]) == 0
        report = json.loads(
            (tmp_path / "out" / "verification_report.json").read_text()
        )
        assert report["passed"]
        assert len(report["members"]) == 3
        out = capsys.readouterr().out
        assert out.count("pass") >= 3

    def test_jobs_flag(self, base_config):
        assert main(["verify", "--config", base_config, "--jobs", "3"]) == 0


class TestPhaseRoundTrip:
    def test_recovers_the_phases(self, base_config, tmp_path, capsys):
        assert main(["family", "--config", base_config, "--curves"]) == 0
        out = tmp_path / "out"
        rc = main(
            [
                "phase",
                "--config",
                base_config,
                "--f",
                str(out / "member_base.csv"),
                "--g",
                str(out / "member_2.csv"),
            ]
        )
        assert rc == 0
        profile = json.loads((out / "phase_profile.json").read_text())
        assert profile["lambdas"]["1"] == pytest.approx(
            [np.cos(4 * np.pi / 3), np.sin(4 * np.pi / 3)], abs=1e-9
        )

    def test_incompatible_curves_fail(self, base_config, tmp_path):
        main(["family", "--config", base_config, "--curves"])
        out = tmp_path / "out"
        base = read_curve_csv(out / "member_base.csv")
        doctored = out / "doctored.csv"
        with open(doctored, "w") as fh:
            fh.write("x,re,im\n")
            for x, v in zip(base.x, base.values):
                scale = 0.5 if 2.0 < x < 4.0 else 1.0
                fh.write(
                    f"{float(x)!r},{float(scale * v.real)!r},"
                    f"{float(scale * v.imag)!r}\n"
                )
        rc = main(
            [
                "phase",
                "--config",
                base_config,
                "--f",
                str(out / "member_base.csv"),
                "--g",
                str(doctored),
            ]
        )
        assert rc == 1


class TestExplore:
    def test_blueprint_candidates_all_pass(self, base_config, tmp_path):
        assert main(["explore", "--config", base_config]) == 0
        data = json.loads((tmp_path / "out" / "explore_results.json").read_text())
        assert data["upper_bound"] == 3
        assert data["passing"] == 3
        assert len(data["candidates"]) == 3


class TestCurvesAndSamples:
    def test_density_curve(self, base_config, tmp_path):
        assert main(["density", "--config", base_config, "--omega", "1"]) == 0
        lines = (tmp_path / "out" / "density.csv").read_text().splitlines()
        assert lines[0] == "t,value"
        assert all(float(line.split(",")[1]) >= 0.0 for line in lines[1:])

    def test_sample_reproducible_bytes(self, base_config, tmp_path):
        args = ["sample", "--config", base_config, "--omega", "1", "--count", "500"]
        assert main(args) == 0
        first = (tmp_path / "out" / "samples.csv").read_bytes()
        assert main(args) == 0
        second = (tmp_path / "out" / "samples.csv").read_bytes()
        assert first == second
        header = first.decode().splitlines()[0]
        assert "seed=20250801" in header and "omega=[1]" in header

    def test_sample_seed_override_changes_bytes(self, base_config, tmp_path):
        args = ["sample", "--config", base_config, "--omega", "0", "--count", "200"]
        main(args)
        first = (tmp_path / "out" / "samples.csv").read_bytes()
        main(args + ["--seed", "7"])
        second = (tmp_path / "out" / "samples.csv").read_bytes()
        assert first != second

    def test_bad_omega_arity(self, base_config):
        assert main(
            ["sample", "--config", base_config, "--omega", "1,2", "--count", "10"]
        ) == 2

    def test_classic_tables(self, base_config, tmp_path):
        assert main(["classic", "--config", base_config, "--atoms", "99"]) == 0
        out = tmp_path / "out"
        pair = (out / "classic_pair.csv").read_text().splitlines()
        assert pair[0] == "x,f,g"
        atoms_f = (out / "classic_atoms_f.csv").read_text().splitlines()
        assert atoms_f[0] == "location,weight"
        assert len(atoms_f) == 1 + 2 * 50 + 1  # both signs of 50 odd orders + origin

    def test_curve_files_round_trip(self, base_config, tmp_path):
        assert main(["family", "--config", base_config, "--curves"]) == 0
        grid = read_curve_csv(tmp_path / "out" / "member_1.csv")
        assert grid.value_near(0.0) == 1.0
        assert grid.is_symmetric

    def test_json_format_curves(self, base_config, tmp_path):
        assert (
            main(["density", "--config", base_config, "--omega", "0",
                  "--format", "json"]) == 0
        )
        data = json.loads((tmp_path / "out" / "density.json").read_text())
        assert set(data) == {"t", "value"}


class TestOutputDirectory:
    def test_env_var_fallback(self, config_file, tmp_path, monkeypatch):
        target = tmp_path / "envout"
        monkeypatch.setenv("CFROOTS_OUTPUT", str(target))
        cfg = config_file({"spec": {"b0": 1.0, "positives": []}})
        assert main(["build", "--config", cfg]) == 0
        assert (target / "blueprint.json").exists()

    def test_flag_overrides_config(self, base_config, tmp_path):
        other = tmp_path / "other"
        assert main(["build", "--config", base_config, "--output", str(other)]) == 0
        assert (other / "blueprint.json").exists()
