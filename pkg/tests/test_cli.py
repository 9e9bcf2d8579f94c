import json
import subprocess
import sys
from pathlib import Path

import pytest
import yaml

from nhbrackets.cli import main, spectrum

SCENARIOS = Path(__file__).resolve().parents[1] / "scenarios"


def run(*args):
    return subprocess.run([sys.executable, "-m", "nhbrackets.cli", *args],
                          capture_output=True, text=True)


def test_spectrum_exceptional_point():
    r = run("spectrum", "pt_dimer(1, 1)")
    assert r.returncode == 0
    vals = [complex(*map(float, line.split())) for line in r.stdout.splitlines()]
    assert len(vals) == 2 and max(abs(v) for v in vals) <= 1e-10


def test_spectrum_unbroken():
    ev = spectrum("pt_dimer(0.5, 1)")
    assert ev.real == pytest.approx([-0.75 ** 0.5, 0.75 ** 0.5], abs=1e-12)


def test_spectrum_bad_expr(capsys):
    assert main(["spectrum", "sigma_q"]) == 2
    assert "column 1" in capsys.readouterr().err


def test_verify_exit_codes(tmp_path):
    assert main(["verify", "--dims", "2", "4", "--n", "5", "--output",
                 str(tmp_path / "r.json")]) == 0
    assert json.loads((tmp_path / "r.json").read_text())["passed"] is True
    assert main(["verify", "--dims", "2", "--n", "5", "--tol", "1e-30",
                 "--output", str(tmp_path / "f.json")]) == 1
    report = json.loads((tmp_path / "f.json").read_text())
    failed = [i for i in report["identities"] if not i["passed"]]
    assert failed and all(0 < i["max_relative"] < 1e-12 for i in failed)


def test_verify_deterministic():
    a, b = run("verify", "--seed", "42"), run("verify", "--seed", "42")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout


def test_simulate_writes_output(tmp_path):
    raw = yaml.safe_load((SCENARIOS / "decay_trace.yaml").read_text())
    raw["output"] = {"path": "out.csv"}
    p = tmp_path / "s.yaml"
    p.write_text(yaml.safe_dump(raw))
    assert main(["simulate", str(p)]) == 0
    lines = (tmp_path / "out.csv").read_text().splitlines()
    assert lines[0] == "t,trace.re,trace.im,min_eig,herm_defect"
    assert len(lines) == 12
    assert main(["simulate", str(p), "--output", str(tmp_path / "o.json")]) == 0
    assert len(json.loads((tmp_path / "o.json").read_text())) == 11


def test_simulate_stdout(tmp_path, capsys):
    raw = yaml.safe_load((SCENARIOS / "decay_trace.yaml").read_text())
    del raw["output"]
    p = tmp_path / "s.yaml"
    p.write_text(yaml.safe_dump(raw))
    assert main(["simulate", str(p)]) == 0
    assert capsys.readouterr().out.startswith("t,trace.re")


def test_simulate_many_concurrently(tmp_path):
    paths = []
    for k in range(3):
        raw = yaml.safe_load((SCENARIOS / "pt_dimer_density.yaml").read_text())
        raw["output"] = {"path": f"o{k}.csv"}
        p = tmp_path / f"s{k}.yaml"
        p.write_text(yaml.safe_dump(raw))
        paths.append(str(p))
    assert main(["simulate", "--jobs", "3", *paths]) == 0
    outs = {(tmp_path / f"o{k}.csv").read_bytes() for k in range(3)}
    assert len(outs) == 1


@pytest.mark.parametrize("name", sorted(p.name for p in SCENARIOS.glob("*.yaml")))
def test_shipped_scenarios_run(name, tmp_path):
    assert main(["simulate", str(SCENARIOS / name), "--output", str(tmp_path / "x.csv")]) == 0


def test_simulate_errors(tmp_path, capsys):
    assert main(["simulate", str(tmp_path / "missing.yaml")]) == 2
    p = tmp_path / "bad.yaml"
    p.write_text("name: x\nhamiltonian_expr: sigma_z\npicture: schrodinger-density\n"
                 "dt: 0\nt_final: 1\ninitial_density_expr: proj(0, 2)\n")
    assert main(["simulate", str(p)]) == 2
    assert "dt" in capsys.readouterr().err


def test_compare_pictures(capsys):
    assert main(["compare-pictures", str(SCENARIOS / "pt_dimer_density.yaml"), "--t", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["gap"] > 1e-3
    assert main(["compare-pictures", str(SCENARIOS / "pt_dimer_density.yaml"), "--t", "0"]) == 0
    assert json.loads(capsys.readouterr().out)["gap"] == 0
