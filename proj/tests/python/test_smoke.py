import math

import numpy as np
import pytest

import signed_dec as sd


def test_fixture_names():
    assert "obtuse_delaunay_square" in sd.fixture_names()


def test_single_triangle_duals():
    mesh = sd.Mesh(np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]), [[0, 1, 2]])
    signed, unsigned = sd.dual_volumes(mesh, 0)
    assert math.isclose(sum(signed), 0.5, rel_tol=1e-12)
    assert np.allclose(signed, unsigned)


def test_report_flags_non_delaunay():
    mesh = sd.fixture("non_delaunay_square", {"cells": 8, "flips": 2})
    rep = sd.report(mesh)
    assert rep["schema_version"] == 1
    assert not rep["pairwise_delaunay"]
    assert rep["pairs"]["violated"] == 2


def test_hodge_modes():
    acute = sd.Mesh(np.array([[0.0, 0.0], [1.0, 0.0], [0.4, 0.9]]), [[0, 1, 2]])
    assert np.allclose(sd.hodge_star(acute, 1), sd.hodge_star(acute, 1, unsigned=True))
    mesh = sd.fixture("obtuse_delaunay_square", {"cells": 6})
    signed = np.array(sd.hodge_star(mesh, 1))
    plain = np.array(sd.hodge_star(mesh, 1, unsigned=True))
    assert np.all(plain >= signed - 1e-15)
    assert np.any(plain > signed + 1e-12)


def test_simplices_align_with_hodge():
    mesh = sd.fixture("surface_pairwise_delaunay", {"cells": 4})
    assert len(sd.simplices(mesh, 1)) == len(sd.hodge_star(mesh, 1))


def test_figure1_columns():
    cols = sd.figure1(cells=8)
    assert [c["label"] for c in cols] == [
        "signed/good",
        "unsigned/good",
        "signed/bad_boundary",
        "signed/non_delaunay",
    ]
    good = cols[0]
    assert good["summary"]["u_error"] < 1e-8
    assert good["u"].shape[0] == good["points"].shape[0]


def test_errors_are_raised():
    with pytest.raises(sd.Error):
        sd.dual_volumes(sd.Mesh(np.zeros((3, 2)), [[0, 1, 2]]), 0)
    with pytest.raises(sd.Error):
        sd.fixture("no_such_fixture")
