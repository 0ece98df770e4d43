import json
from pathlib import Path

import numpy as np
import pytest

from conflow import cli

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def write_cfg(tmp_path, text, name="cfg.yaml"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run(cfg, out, *extra):
    return cli.main(["run", "--config", cfg, "--out", str(out), *extra])


def summary(out):
    return json.loads((Path(out) / "summary.json").read_text())


def test_parse_yaml_exponent_floats():
    assert cli.parse_yaml("x: 1e-9\ny: 2")["x"] == 1e-9
    assert isinstance(cli.parse_yaml("y: 2")["y"], int)


@pytest.mark.parametrize("item, key, value", [
    ("N=8", ("N",), 8),
    ("tolerances.rel_tol=1e-8", ("tolerances", "rel_tol"), 1e-8),
    ("checks.drift.H=1e-14", ("checks", "drift.H"), 1e-14),
])
def test_override(item, key, value):
    cfg = {"experiment": "evolve", "checks": {}}
    cli.apply_override(cfg, item)
    node = cfg
    for k in key:
        node = node[k]
    assert node == value


@pytest.mark.parametrize("v, z", [(1, 1), ("1+2j", 1 + 2j), ([0.5, -1], 0.5 - 1j)])
def test_to_complex(v, z):
    assert cli.to_complex(v) == z


@pytest.mark.parametrize("name", sorted(p.name for p in CONFIGS.glob("*.yaml") if "validate" not in p.name))
def test_shipped_configs(name, tmp_path):
    out = tmp_path / "out"
    assert run(str(CONFIGS / name), out) == 0
    s = summary(out)
    assert all(c["passed"] for c in s["checks"]), s["checks"]


@pytest.mark.slow
def test_validate_config(tmp_path):
    cfg = write_cfg(tmp_path, "experiment: validate\nN: 16\nepsilons: [0.2, 0.1]\nhorizon: 0.25\ninitial: {amplitudes: [1, 1]}\n")
    assert run(cfg, tmp_path / "o") == 0
    res = summary(tmp_path / "o")["results"]
    assert (tmp_path / "o" / "errors.csv").exists()
    assert res["time_map_deviation"] < 1e-8


def test_rerun_is_byte_identical(tmp_path):
    cfg = str(CONFIGS / "evolve_random.yaml")
    assert run(cfg, tmp_path / "a", "--override", "t_end=5") == 0
    assert run(cfg, tmp_path / "b", "--override", "t_end=5") == 0
    for f in ("summary.json", "trajectory.csv", "charges.csv"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


def test_zero_state(tmp_path):
    assert run(str(CONFIGS / "evolve_zero.yaml"), tmp_path) == 0
    assert summary(tmp_path)["results"]["drift"] == {"E": 0.0, "H": 0.0, "Q": 0.0}


def test_subspace_period(tmp_path):
    assert run(str(CONFIGS / "subspace.yaml"), tmp_path) == 0
    res = summary(tmp_path)["results"]
    assert res["Omega"] == pytest.approx(np.sqrt(3472) / 6)
    assert abs(res["measured_period"] / res["period"] - 1) < 1e-5


@pytest.mark.parametrize("text", [
    "experiment: evolve\nN: -3\ninitial: {amplitudes: [1]}\n",
    "experiment: nonsense\n",
    "experiment: evolve\nN: 4\ninitial: {amplitudes: [1], random: {modes: 2}}\n",
    "experiment: [unclosed\n",
])
def test_config_errors(text, tmp_path):
    assert run(write_cfg(tmp_path, text), tmp_path / "o") == cli.EXIT_CONFIG


def test_missing_file(tmp_path):
    assert run(str(tmp_path / "nope.yaml"), tmp_path / "o") == cli.EXIT_CONFIG


@pytest.mark.parametrize("text", [
    "experiment: stationary\nN: 32\nt_end: 1\ninitial: {family: {name: pm, c: 1, p: 0.27, branch: 1}}\n",
    "experiment: validate\nN: 8\nepsilons: [0.3]\ninitial: {amplitudes: [1, 1]}\n",
    "experiment: szego\nN: 16\nt_end: 1\ninitial: {pole: {a: 1, b: 0, p: 1.5}}\n",
])
def test_domain_errors(text, tmp_path):
    assert run(write_cfg(tmp_path, text), tmp_path / "o") == cli.EXIT_DOMAIN


def test_numerical_failure(tmp_path):
    cfg = write_cfg(tmp_path, "experiment: evolve\nN: 4\nt_end: 1\ninitial: {amplitudes: [1e200, 1e200]}\n")
    assert run(cfg, tmp_path / "o") == cli.EXIT_NUMERIC


def test_report(tmp_path, capsys):
    assert run(str(CONFIGS / "evolve_zero.yaml"), tmp_path / "a", "--override", "checks.drift.Q=1e-12") == 0
    path = str(tmp_path / "a" / "summary.json")
    assert cli.main(["report", path, "--out", str(tmp_path / "r1.tsv")]) == 0
    assert cli.main(["report", path, "--out", str(tmp_path / "r2.tsv")]) == 0
    assert (tmp_path / "r1.tsv").read_bytes() == (tmp_path / "r2.tsv").read_bytes()
    lines = (tmp_path / "r1.tsv").read_text().splitlines()
    assert lines[0].split("\t") == cli.REPORT_COLUMNS
    assert lines[1].endswith("PASS")

    assert run(str(CONFIGS / "evolve_zero.yaml"), tmp_path / "b", "--override", "checks.drift.Q=-1") == 0
    capsys.readouterr()
    assert cli.main(["report", path, str(tmp_path / "b" / "summary.json")]) == cli.EXIT_FAILED
    assert "drift.Q" in capsys.readouterr().err


def test_report_unreadable(tmp_path):
    (tmp_path / "bad.json").write_text("{")
    assert cli.main(["report", str(tmp_path / "bad.json")]) == cli.EXIT_CONFIG


def test_sweep(tmp_path):
    out = tmp_path / "sweep"
    code = cli.main(["sweep", "--config", str(CONFIGS / "evolve_zero.yaml"), "--out", str(out),
                     "--vary", "N=4,6", "--vary", "t_end=0.5,1.0"])
    assert code == 0
    index = json.loads((out / "sweep.json").read_text())["runs"]
    assert len(index) == 4 and all(r["exit_code"] == 0 for r in index)
    assert summary(out / "run_003")["config"]["N"] == 6


def test_sweep_bad_vary(tmp_path):
    code = cli.main(["sweep", "--config", str(CONFIGS / "evolve_zero.yaml"), "--out", str(tmp_path), "--vary", "N"])
    assert code == cli.EXIT_CONFIG


def test_acceptance_command(tmp_path, capsys):
    assert cli.main(["acceptance", "--criterion", "1", "--out", str(tmp_path)]) == 0
    assert "[PASS] criterion 1" in capsys.readouterr().out
    data = json.loads((tmp_path / "acceptance.json").read_text())
    assert data["criteria"][0]["criterion"] == 1
    assert cli.main(["acceptance", "--criterion", "99"]) == cli.EXIT_CONFIG
