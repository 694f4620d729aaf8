"""Signed circumcentric duals, the diagonal Hodge star and the mixed Poisson experiment."""

import json

from ._core import (  # noqa: F401
    Error,
    Mesh,
    dual_volumes,
    fixture,
    fixture_names,
    hodge_star,
    read_mesh,
    simplices,
)
from . import _core


def report(mesh):
    """Classification of a mesh as a dict (same schema as `sdec report`)."""
    return json.loads(_core.report_json(mesh))


def figure1(cells=16, jitter=0.25, seed=1, flips=8):
    """The four experiment columns; each summary is decoded into a dict."""
    cols = _core.figure1(cells, jitter, seed, flips)
    for c in cols:
        c["summary"] = json.loads(c["summary"])
    return cols
