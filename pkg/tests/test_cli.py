"""Command-line behavior: exit codes, artifacts, determinism, manifests."""
import json
import os
import subprocess
import sys

import pytest

from lcusim.cli import main

SMALL_CONFIG = """
[resolvent-certify]
sites = 2
omega_count = 9

[gsp-hubbard]
sites = 2
points = 4
"""


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "small.ini"
    path.write_text(SMALL_CONFIG, encoding="utf-8")
    return str(path)


def test_list_names_all_experiments(capsys):
    assert main(["list"]) == 0
    names = capsys.readouterr().out.split()
    assert names == ["gsp-hubbard", "gsp-xxz", "gse-hubbard", "ldos-hubbard",
                     "resolvent-certify"]


def test_describe_known_and_unknown(capsys):
    assert main(["describe", "gsp-xxz"]) == 0
    out = capsys.readouterr().out
    assert "gsp-xxz" in out and "methods" in out
    assert main(["describe", "nope"]) == 1


def test_validate_good_config(small_config, capsys):
    assert main(["validate", small_config]) == 0
    assert "ok: 2 experiment(s) valid" in capsys.readouterr().out


def test_validate_reports_errors(tmp_path, capsys):
    path = tmp_path / "bad.ini"
    path.write_text("[resolvent-certify]\nbroadening = 0\n", encoding="utf-8")
    assert main(["validate", str(path)]) == 1
    assert "resolvent precondition" in capsys.readouterr().err


def test_validate_warns_but_passes_on_large_model(tmp_path, capsys):
    path = tmp_path / "big.ini"
    path.write_text("[gsp-hubbard]\nsites = 12\n", encoding="utf-8")
    assert main(["validate", str(path)]) == 0
    assert "resource limit" in capsys.readouterr().out


def test_validate_missing_file_fails(capsys):
    assert main(["validate", "/no/such/config.ini"]) == 1


def test_run_refuses_oversized_model_without_override(tmp_path, capsys):
    path = tmp_path / "big.ini"
    path.write_text("[gsp-hubbard]\nsites = 8\n", encoding="utf-8")
    assert main(["run", str(path), "--out", str(tmp_path / "out")]) == 1
    assert "--override-size" in capsys.readouterr().err


def test_run_writes_artifacts_and_manifest_deterministically(small_config, tmp_path, capsys):
    out1, out2 = str(tmp_path / "a"), str(tmp_path / "b")
    assert main(["run", small_config, "--out", out1]) == 0
    assert main(["run", small_config, "--out", out2, "--threads", "2"]) == 0
    capsys.readouterr()
    names = ["resolvent-certify.csv", "gsp-hubbard.csv"]
    for name in names:
        first = open(os.path.join(out1, name), "rb").read()
        second = open(os.path.join(out2, name), "rb").read()
        assert first == second
    manifest = json.load(open(os.path.join(out1, "manifest.json")))
    assert set(manifest["files"]) == set(names)
    assert manifest["wall_clock_seconds"] >= 0.0
    assert len(manifest["experiments"]) == 2
    header = open(os.path.join(out1, "gsp-hubbard.csv")).readline().rstrip("\n")
    assert header == ("method,model,L,gridIndex,scheduleParam,t_H,infidelity_exactOp,"
                      "infidelity_lcu,energyError_exactOp,energyError_lcu,successWeight")
    first_row = open(os.path.join(out1, "gsp-hubbard.csv")).readlines()[1].split(",")
    assert first_row[2] == "2"  # integer column stays integral
    row_count = len(open(os.path.join(out1, "resolvent-certify.csv")).readlines())
    assert row_count == 1 + 9


def test_failed_run_leaves_no_manifest(small_config, tmp_path, capsys):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory", encoding="utf-8")
    target = str(blocker / "out")
    assert main(["run", small_config, "--out", target]) == 2
    assert "runtime error" in capsys.readouterr().err
    assert not os.path.exists(os.path.join(target, "manifest.json"))


def test_run_rejects_bad_thread_count(small_config, capsys):
    assert main(["run", small_config, "--threads", "0"]) == 1


def test_gse_run_emits_gap_table(tmp_path, capsys):
    path = tmp_path / "gse.ini"
    path.write_text("[gse-hubbard]\nsites = 2\npoints = 3\n", encoding="utf-8")
    out = str(tmp_path / "out")
    assert main(["run", str(path), "--out", out]) == 0
    capsys.readouterr()
    gaps = open(os.path.join(out, "gse-hubbard-gaps.csv")).read().splitlines()
    assert gaps[0] == "model,L,deltaS,gamma"
    assert gaps[1].startswith("hubbard,2,")


def test_console_script_entry_point(small_config):
    result = subprocess.run([sys.executable, "-m", "lcusim.cli", "list"],
                            capture_output=True, text=True)
    assert result.returncode == 0
    assert "ldos-hubbard" in result.stdout
