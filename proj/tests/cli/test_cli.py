import csv
import json
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("SDEC_CLI", "sdec")


def run(*args, check=True):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)
    if check and proc.returncode != 0:
        raise AssertionError(f"exit {proc.returncode}\n{proc.stdout}\n{proc.stderr}")
    return proc


@pytest.fixture
def obtuse(tmp_path):
    path = tmp_path / "obtuse.node"
    run("fixture", "obtuse_delaunay_square", "cells=8", "-o", path)
    return path


@pytest.fixture
def flipped(tmp_path):
    path = tmp_path / "flipped.node"
    run("fixture", "non_delaunay_square", "cells=8", "flips=2", "-o", path)
    return path


def read_csv(text):
    return list(csv.DictReader(text.splitlines()))


def test_check_qualifying_mesh(obtuse):
    proc = run("check", obtuse)
    assert proc.returncode == 0


def test_check_rejects_flipped_mesh(flipped):
    proc = run("check", flipped, check=False)
    assert proc.returncode == 1


def test_check_json(flipped):
    proc = run("check", flipped, "--json", check=False)
    rep = json.loads(proc.stdout)
    assert rep["pairs"]["violated"] == 2


def test_duals_negative_on_flipped_mesh(flipped):
    rows = read_csv(run("duals", flipped, "-p", "1").stdout)
    assert any(float(r["signed_volume"]) < 0 for r in rows)
    assert all(float(r["unsigned_volume"]) >= 0 for r in rows)


def test_hodge_modes_match_without_negative_pieces(tmp_path):
    path = tmp_path / "gentle.node"
    run("fixture", "perturbed_delaunay_square", "cells=4", "jitter=0.02", "-o", path)
    duals = read_csv(run("duals", path, "-p", "1").stdout)
    if any(int(r["num_negative_pieces"]) for r in duals):
        pytest.skip("mesh has obtuse angles")
    signed = run("hodge", path, "-p", "1").stdout
    assert signed == run("hodge", path, "-p", "1", "--unsigned").stdout


def test_hodge_output_file(obtuse, tmp_path):
    out = tmp_path / "star0.csv"
    run("hodge", obtuse, "-p", "0", "-o", out)
    rows = read_csv(out.read_text())
    assert rows and all(float(r["entry"]) > 0 for r in rows)


def test_report_schema(obtuse):
    rep = json.loads(run("report", obtuse, "--json").stdout)
    assert rep["schema_version"] == 1
    assert rep["qualifying"] is True


def test_usage_errors_exit_2(obtuse):
    assert run("duals", obtuse, check=False).returncode == 2
    assert run("frobnicate", check=False).returncode == 2
    assert run("fixture", "obtuse_delaunay_square", "cells", "-o", "x.node", check=False).returncode == 2


def test_missing_file_exits_3(tmp_path):
    assert run("check", tmp_path / "missing.node", check=False).returncode == 3


def test_poisson_writes_outputs(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"cells": 8, "seed": 2, "flips": 2}))
    out = tmp_path / "out"
    run("poisson", cfg, "-o", out)
    summary = json.loads((out / "summary.json").read_text())
    labels = [c["label"] for c in summary["columns"]]
    assert labels == ["signed/good", "unsigned/good", "signed/bad_boundary", "signed/non_delaunay"]
    assert (out / "signed_good_vertices.csv").exists()
    assert (out / "signed_non_delaunay_edges.csv").exists()
