import json
import tempfile
from pathlib import Path

import pytest

from warpkit.fockfield.npoint import TruncationError
from warpkit.fockfield.operators import load_operator

from .lib import QftNpointArgs, qft_npoint

BUMPS = [
    {"bump": {"center": [0.0, 0.0], "radius": 1.0}},
    {"bump": {"center": [0.3, -0.2], "radius": 0.8}},
    {"bump": {"center": [-0.5, 0.4], "radius": 0.6}},
    {"bump": {"center": [0.1, 0.7], "radius": 0.9}},
]


def run(tmp: str, doc: dict, **kwargs):
    path = Path(tmp) / "npoint.json"
    path.write_text(json.dumps(doc))
    return qft_npoint(QftNpointArgs(config=path, **kwargs))


def test_two_point_matches_mode_sum():
    with tempfile.TemporaryDirectory() as tmp:
        result = run(tmp, {"test_functions": BUMPS[:2], "translation": [0.5, 0.3]})
    assert result.status.is_passed()
    assert result.oracle is not None
    assert result.translated == pytest.approx(result.result.value, abs=1e-9)


def test_four_point_matches_wick_and_exports():
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "out"
        result = run(tmp, {"test_functions": BUMPS}, out=out)
        op = load_operator(out / "field_0.bin")
        assert op.matrix.shape == (50, 50)
    assert result.status.is_passed()
    assert result.result.exact


def test_one_particle_state_has_no_oracle():
    state = {"amplitudes": [{"occupation": [0, 0, 1, 0], "amplitude": [1.0, 0.0]}]}
    with tempfile.TemporaryDirectory() as tmp:
        result = run(tmp, {"test_functions": BUMPS[:2], "state": state})
    assert result.oracle is None
    assert result.status.is_passed()


def test_missing_headroom():
    state = {"amplitudes": [{"occupation": [2, 0, 0, 0]}]}
    with tempfile.TemporaryDirectory() as tmp:
        with pytest.raises(TruncationError, match="headroom"):
            run(tmp, {"test_functions": BUMPS[:2], "state": state})
        result = run(tmp, {"test_functions": BUMPS[:2], "state": state, "strict": False})
    assert not result.result.exact
    assert "not exact" in result.status.diagnostics[0]
