import csv
import io
import json
import subprocess
import sys

import pytest

from radjump import CSV_COLUMNS, BoundCertificate, gaussian_profile
from radjump.cli import main, parse_config

SMOKE = {
    "profiles": [
        {
            "name": "pair",
            "profile": {
                "type": "gaussian_mixture",
                "d": 2,
                "weights": [0.5, 0.5],
                "variances": [0.5, 1.5],
            },
        }
    ],
    "checks": ["ImprovedStam", "DvLemma"],
    "epsilons": [1.0],
}


def run_cli(*args, cwd=None, env=None):
    return subprocess.run(
        [sys.executable, "-m", "radjump", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
        env=env,
    )


def write_config(tmp_path, cfg, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return path


class TestRun:
    def test_green_run_exit_zero(self, tmp_path):
        cfg = dict(SMOKE, output={"csv": str(tmp_path / "out.csv"), "json": str(tmp_path / "out.json")})
        res = run_cli("run", str(write_config(tmp_path, cfg)))
        assert res.returncode == 0, res.stderr
        rows = list(csv.reader(io.StringIO((tmp_path / "out.csv").read_text())))
        assert tuple(rows[0]) == CSV_COLUMNS
        assert len(rows) == 3  # header + 2 certificates
        assert all(row[-1] == "true" for row in rows[1:])
        payload = json.loads((tmp_path / "out.json").read_text())
        assert payload["summary"]["total"] == 2
        assert payload["summary"]["failed"] == []
        assert payload["config"]["checks"] == ["ImprovedStam", "DvLemma"]
        assert len(payload["functionals"]) == 1

    def test_rerun_is_byte_identical(self, tmp_path):
        cfg_path = write_config(tmp_path, SMOKE)
        outs = []
        for tag in ("a", "b"):
            res = run_cli(
                "run", str(cfg_path),
                "--csv", str(tmp_path / f"{tag}.csv"),
                "--json", str(tmp_path / f"{tag}.json"),
            )
            assert res.returncode == 0, res.stderr
            outs.append(((tmp_path / f"{tag}.csv").read_bytes(), (tmp_path / f"{tag}.json").read_bytes()))
        assert outs[0] == outs[1]

    def test_jobs_do_not_change_output(self, tmp_path):
        two = dict(SMOKE)
        two["profiles"] = SMOKE["profiles"] + [
            {"type": "gaussian_mixture", "d": 3, "weights": [1.0], "variances": [1.0]}
        ]
        cfg_path = write_config(tmp_path, two)
        res1 = run_cli("run", str(cfg_path), "--csv", str(tmp_path / "j1.csv"), "--json", "/dev/null")
        res4 = run_cli("run", str(cfg_path), "--jobs", "4", "--csv", str(tmp_path / "j4.csv"), "--json", "/dev/null")
        assert res1.returncode == 0 and res4.returncode == 0
        assert (tmp_path / "j1.csv").read_bytes() == (tmp_path / "j4.csv").read_bytes()

    def test_bad_weight_names_field(self, tmp_path):
        cfg = {
            "profiles": [
                {"type": "gaussian_mixture", "d": 2, "weights": [-0.5, 1.5], "variances": [1.0, 2.0]}
            ]
        }
        res = run_cli("run", str(write_config(tmp_path, cfg)))
        assert res.returncode == 1
        assert "weights[0]" in res.stderr

    def test_unknown_check_names_field(self, tmp_path):
        cfg = dict(SMOKE, checks=["NoSuchCheck"])
        res = run_cli("run", str(write_config(tmp_path, cfg)))
        assert res.returncode == 1
        assert "checks[0]" in res.stderr

    def test_missing_config_file(self, tmp_path):
        res = run_cli("run", str(tmp_path / "absent.json"))
        assert res.returncode == 1
        assert "config error" in res.stderr

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        res = run_cli("run", str(path))
        assert res.returncode == 1
        assert "line 1" in res.stderr

    def test_failing_certificate_exits_two(self, monkeypatch, tmp_path, capsys):
        prof = gaussian_profile(2, 1.0)
        bad = BoundCertificate.build(
            "ImprovedStam", prof, lhs=0.0, rhs=1.0, tolerance=0.0, direction="lower"
        )
        assert not bad.passed
        monkeypatch.setattr("radjump.cli.run_battery", lambda *a, **k: [bad])
        cfg_path = write_config(tmp_path, SMOKE)
        code = main(["run", str(cfg_path), "--json", str(tmp_path / "f.json")])
        assert code == 2
        payload = json.loads((tmp_path / "f.json").read_text())
        assert payload["summary"]["failed"] == [
            {"check": "ImprovedStam", "profile_id": prof.profile_id, "epsilon": None}
        ]

    def test_figures_rendered(self, tmp_path):
        cfg_path = write_config(tmp_path, SMOKE)
        res = run_cli(
            "run", str(cfg_path), "--json", "/dev/null",
            "--figures", str(tmp_path / "figs"),
        )
        assert res.returncode == 0, res.stderr
        names = {p.name for p in (tmp_path / "figs").iterdir()}
        assert names == {"margins.png", "profiles.png", "eps_sweep.png"}


class TestParseConfig:
    def test_defaults(self):
        cfg = parse_config({"profiles": [{"type": "gaussian_mixture", "d": 2, "weights": [1.0], "variances": [1.0]}]})
        assert cfg.checks == ("all",)
        assert cfg.epsilons == (0.5, 1.0, 2.0)
        assert cfg.mc_samples == 0

    @pytest.mark.parametrize(
        "patch,needle",
        [
            ({"profiles": []}, "profiles"),
            ({"epsilons": [0.5, -1.0]}, "epsilons[1]"),
            ({"t_grid": [0.0]}, "t_grid[0]"),
            ({"mc": {"samples": -5}}, "mc.samples"),
            ({"quadrature": {"radial_order": 1}}, "quadrature.radial_order"),
            ({"output": {"csv": ""}}, "output.csv"),
            ({"profiles": [{"name": "", "profile": {"type": "gaussian_mixture", "d": 2, "weights": [1.0], "variances": [1.0]}}]}, "profiles[0].name"),
        ],
    )
    def test_field_diagnostics(self, patch, needle):
        base = {"profiles": [{"type": "gaussian_mixture", "d": 2, "weights": [1.0], "variances": [1.0]}]}
        from radjump import ConfigError

        with pytest.raises(ConfigError) as exc_info:
            parse_config({**base, **patch})
        assert needle in str(exc_info.value)

    def test_quadrature_override(self):
        cfg = parse_config(
            {
                "profiles": [{"type": "gaussian_mixture", "d": 2, "weights": [1.0], "variances": [1.0]}],
                "quadrature": {"radial_panels": 30, "radial_order": 24, "angular_order": 64, "w2_nodes": 2048},
            }
        )
        assert cfg.scheme.radial_panels == 30
        assert cfg.scheme.w2_nodes == 2048


class TestCorpus:
    def test_deterministic_for_seed(self, tmp_path):
        a = run_cli("corpus", "--seed", "7")
        b = run_cli("corpus", "--seed", "7")
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout

    def test_seed_changes_only_tabulated_entries(self):
        a = json.loads(run_cli("corpus", "--seed", "0").stdout)
        b = json.loads(run_cli("corpus", "--seed", "1").stdout)
        for ea, eb in zip(a["profiles"], b["profiles"]):
            assert ea["name"] == eb["name"]
            if ea["profile"]["type"] == "gaussian_mixture":
                assert ea == eb
            else:
                assert ea != eb
        assert a["mc"]["seed"] == 0 and b["mc"]["seed"] == 1

    def test_shape(self):
        cfg = json.loads(run_cli("corpus", "--seed", "0").stdout)
        kinds = [p["profile"]["type"] for p in cfg["profiles"]]
        assert kinds.count("gaussian_mixture") == 12
        assert kinds.count("tabulated") == 2
        assert cfg["checks"] == ["all"]
        parse_config(cfg)  # the bundled config is itself valid

    def test_out_file(self, tmp_path):
        path = tmp_path / "corpus.json"
        res = run_cli("corpus", "--seed", "0", "--out", str(path))
        assert res.returncode == 0
        assert json.loads(path.read_text())["mc"]["samples"] == 200000


class TestEval:
    @pytest.fixture()
    def profile_file(self, tmp_path):
        path = tmp_path / "prof.json"
        path.write_text(
            json.dumps({"type": "gaussian_mixture", "d": 2, "weights": [1.0], "variances": [1.0]})
        )
        return path

    @pytest.mark.parametrize("functional,value", [("h", 2.8378770664093453), ("N", 1.0), ("J", 2.0)])
    def test_prints_one_number(self, profile_file, functional, value):
        res = run_cli("eval", str(profile_file), "--functional", functional)
        assert res.returncode == 0, res.stderr
        assert float(res.stdout.strip()) == pytest.approx(value, abs=1e-8)
        assert len(res.stdout.strip().splitlines()) == 1

    def test_named_wrapper_accepted(self, tmp_path):
        path = tmp_path / "named.json"
        path.write_text(
            json.dumps(
                {"name": "g", "profile": {"type": "gaussian_mixture", "d": 2, "weights": [1.0], "variances": [1.0]}}
            )
        )
        res = run_cli("eval", str(path), "--functional", "D")
        assert res.returncode == 0
        assert abs(float(res.stdout.strip())) < 1e-9

    def test_rejects_unknown_functional(self, profile_file):
        res = run_cli("eval", str(profile_file), "--functional", "entropy")
        assert res.returncode == 2  # argparse usage error


class TestPrecisionEnv:
    def test_extended_mode_agrees(self, tmp_path, monkeypatch):
        import os

        path = tmp_path / "prof.json"
        path.write_text(
            json.dumps({"type": "gaussian_mixture", "d": 2, "weights": [0.5, 0.5], "variances": [0.5, 1.5]})
        )
        env = dict(os.environ)
        base = float(run_cli("eval", str(path), "--functional", "h", env=env).stdout)
        env["RADJUMP_PRECISION"] = "extended"
        ext = float(run_cli("eval", str(path), "--functional", "h", env=env).stdout)
        assert abs(base - ext) < 1e-10

    def test_invalid_mode_is_config_error(self, tmp_path):
        import os

        path = tmp_path / "prof.json"
        path.write_text(json.dumps({"type": "gaussian_mixture", "d": 2, "weights": [1.0], "variances": [1.0]}))
        env = dict(os.environ, RADJUMP_PRECISION="quad")
        res = run_cli("eval", str(path), "--functional", "h", env=env)
        assert res.returncode == 1
        assert "RADJUMP_PRECISION" in res.stderr
