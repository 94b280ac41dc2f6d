import json
import os
import subprocess
import sys

import pytest

from vermabranch import cli


def run_cli(args, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        [sys.executable, "-m", "vermabranch.cli", *args],
        capture_output=True,
        text=True,
        env=full_env,
    )


DIAG_CFG = """
catalog = "diag-a1"
H = "from-catalog"
F_hw = ["-3/2", "-3/2"]
seed = 7

[depth]
max_degree = 3
"""


@pytest.fixture
def diag_config(tmp_path):
    p = tmp_path / "diag.toml"
    p.write_text(DIAG_CFG)
    return p


def test_run_diag_a1(diag_config, tmp_path):
    out_json = tmp_path / "out.json"
    out_csv = tmp_path / "out.csv"
    r = run_cli(["run", "-c", str(diag_config), "--json", str(out_json), "--csv", str(out_csv)])
    assert r.returncode == 0, r.stderr
    assert "oracle: match" in r.stdout
    doc = json.loads(out_json.read_text())
    assert doc["schema_version"] == 1
    assert doc["table"]["verdicts"]["completely_reducible"] == "certified"
    assert len(doc["table"]["summands"]) == 4
    hws = [s["hw"] for s in doc["table"]["summands"]]
    assert ["-3"] in hws and ["-6"] in hws
    lines = out_csv.read_text().strip().splitlines()
    assert lines[0].startswith("degree,level,hw")
    assert len(lines) == 5


def test_run_exit_0_4_summands_text(diag_config):
    r = run_cli(["run", "-c", str(diag_config), "--no-oracle"])
    assert r.returncode == 0
    assert "oracle: disabled" in r.stdout
    assert r.stdout.count("good=True irr=True") == 4


def test_json_config_accepted(tmp_path):
    cfg = {
        "catalog": "diag-a1",
        "F_hw": ["-3/2", "-3/2"],
        "depth": {"max_degree": 1},
    }
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg))
    r = run_cli(["run", "-c", str(p)])
    assert r.returncode == 0, r.stderr


def test_depth_override(diag_config):
    r = run_cli(["run", "-c", str(diag_config), "--depth", "1", "--no-oracle"])
    assert r.returncode == 0
    assert r.stdout.count("good=True") == 2


def test_exit_2_schema_violations(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text('catalog = "diag-a1"\nF_hw = ["-3/2", "-3/2"]\n[depth]\nmax_degree = -1\n')
    r = run_cli(["run", "-c", str(bad)])
    assert r.returncode == 2
    assert "depth.max_degree" in r.stderr

    bad.write_text('catalog = "no-such-entry"\nF_hw = ["0"]\n')
    r = run_cli(["run", "-c", str(bad)])
    assert r.returncode == 2

    bad.write_text('catalog = "diag-a1"\npair = { g = "A1" }\nF_hw = ["0", "0"]\n')
    r = run_cli(["run", "-c", str(bad)])
    assert r.returncode == 2

    bad.write_text('catalog = "diag-a1"\nF_hw = ["-3/2"]\n')
    r = run_cli(["run", "-c", str(bad)])
    assert r.returncode == 2


def test_exit_3_refinement_breaks_compatibility(tmp_path):
    cfg = tmp_path / "ref.toml"
    cfg.write_text(
        'catalog = "diag-a1"\nF_hw = ["-3/2", "-3/2"]\n'
        'levi_refinement = [["0", "1"]]\n[depth]\nmax_degree = 2\n'
    )
    r = run_cli(["run", "-c", str(cfg)])
    assert r.returncode == 3
    assert "u(H) cap g'" in r.stderr


def test_exit_4_oracle_mismatch(diag_config, monkeypatch, capsys):
    import argparse
    from fractions import Fraction

    def fake_crosscheck(table, oracle):
        return (Fraction(-8), {(Fraction(-2),): 2}, {(Fraction(-2),): 1})

    monkeypatch.setattr(cli, "oracle_crosscheck", fake_crosscheck)
    args = argparse.Namespace(
        config=str(diag_config), json=None, csv=None, depth=None, no_oracle=False
    )
    rc = cli._cmd_run(args)
    assert rc == 4
    err = capsys.readouterr().err
    assert "oracle mismatch at level -8" in err


def test_inline_pair_config(tmp_path):
    cfg = tmp_path / "inline.toml"
    cfg.write_text(
        'H = ["2"]\n'
        'F_hw = ["-3/2", "-3/2"]\n'
        "[depth]\nmax_degree = 1\n"
        "[pair]\n"
        'g = "A1xA1"\ng_prime = "A1"\nrestriction = [["1", "1"]]\n'
    )
    r = run_cli(["run", "-c", str(cfg)])
    assert r.returncode == 0, r.stderr


def test_catalog_listing():
    r = run_cli(["catalog"])
    assert r.returncode == 0
    assert "diag-a1" in r.stdout
    assert "weil-sp4" in r.stdout
    assert "multiplicity_free=False" in r.stdout.split("weil-sp4")[1].split("principal")[0]
    seg = r.stdout.split("principal-a1-in-a2")[1].split("diag-a2-borel")[0]
    assert "quasi_abelian=True" in seg and "commutator_vanishing=False" in seg


def test_al_test_cli():
    r = run_cli(["al-test", "--n", "2", "--trials", "50", "--seed", "7"])
    assert r.returncode == 0
    assert "s_4 vanishing=PASS" in r.stdout
    assert "s_3 nonzero witness: FOUND" in r.stdout
    r = run_cli(["al-test", "--n", "9"])
    assert r.returncode == 2


def test_json_determinism(diag_config, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    r1 = run_cli(["run", "-c", str(diag_config), "--json", str(a)])
    r2 = run_cli(["run", "-c", str(diag_config), "--json", str(b)])
    assert r1.returncode == r2.returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_level_cap_env_disables_oracle(diag_config):
    r = run_cli(["run", "-c", str(diag_config)], env={"BRANCH_LEVEL_CAP": "2"})
    assert r.returncode == 0
    assert "truncation too deep" in r.stdout
