import json
import tempfile
from pathlib import Path

import pytest
from pydantic import ValidationError

from .lib import WarpNpointArgs, warp_npoint

BUMPS = [
    {"bump": {"center": [0.0, 0.0], "radius": 1.0}},
    {"bump": {"center": [0.3, -0.2], "radius": 0.8}},
    {"bump": {"center": [-0.5, 0.4], "radius": 0.6}},
    {"bump": {"center": [0.1, 0.7], "radius": 0.9}},
]


def run(tmp: str, doc: dict, **kwargs):
    path = Path(tmp) / "warp.json"
    path.write_text(json.dumps(doc))
    return warp_npoint(WarpNpointArgs(config=path, **kwargs))


def test_vacuum_two_point_is_rigid():
    factors = [{"q": 1.5, "f": BUMPS[0]}, {"q": -2.0, "f": BUMPS[1]}]
    with tempfile.TemporaryDirectory() as tmp:
        result = run(tmp, {"factors": factors})
    assert result.status.is_passed()
    assert result.deformation_delta < 1e-12


def test_four_point_moves_and_matches_phase_expansion():
    factors = [{"q": 2.0, "f": f} for f in BUMPS]
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "out"
        result = run(tmp, {"factors": factors}, out=out)
        saved = json.loads((out / "warp_npoint.json").read_text())
    assert result.status.is_passed()
    assert result.deformation_delta > 1e-6
    assert saved["result"]["order"] == 4


def test_matrix_deformation():
    factors = [{"q": [[0.0, 0.9], [0.9, 0.0]], "f": BUMPS[0]}, {"q": 0.9, "f": BUMPS[1]}]
    with tempfile.TemporaryDirectory() as tmp:
        result = run(tmp, {"factors": factors, "state": {"vacuum": True}})
    assert result.status.is_passed()


def test_cutoff_cross_check():
    factors = [{"q": 0.9, "f": BUMPS[0]}, {"q": -0.4, "f": BUMPS[1]}]
    doc = {
        "factors": factors,
        "state": {"amplitudes": [{"occupation": [0, 0, 1, 0], "amplitude": 1.0}]},
        "cross_check": True,
        "cutoff": {"n_terms": 4, "depth": 3},
    }
    with tempfile.TemporaryDirectory() as tmp:
        result = run(tmp, doc)
    assert result.result.cross_check_delta is not None
    assert result.status.is_passed(), result.status.summary()


def test_cutoff_method_limited_to_two_factors():
    factors = [{"q": 0.9, "f": f} for f in BUMPS[:3]]
    with tempfile.TemporaryDirectory() as tmp:
        with pytest.raises(ValueError, match="n <= 2"):
            run(tmp, {"factors": factors}, method="cutoff")


def test_non_antisymmetric_matrix_rejected():
    factors = [{"q": [[1.0, 0.0], [0.0, 1.0]], "f": BUMPS[0]}]
    with tempfile.TemporaryDirectory() as tmp:
        with pytest.raises(ValueError, match="antisymmetric"):
            run(tmp, {"factors": factors})
        with pytest.raises(ValidationError):
            run(tmp, {"factors": []})
