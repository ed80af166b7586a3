import json
import tempfile
from pathlib import Path

import numpy as np

from warpkit.microloc.grid import GridDistribution

from .lib import WfEstimateArgs, wf_estimate

BASE_POINTS = [[-0.5], [0.0], [0.5]]
JUMP = {"heaviside": {"index": 0, "at": 0.0}}


def run(tmp: str, doc: dict, **kwargs):
    path = Path(tmp) / "wf.json"
    path.write_text(json.dumps(doc))
    return wf_estimate(WfEstimateArgs(config=path, **kwargs))


def test_heaviside_from_expression():
    doc = {
        "grid": {"source": "expression", "expr": JUMP, "center": [0.0], "half_widths": 1.0, "resolution": 1024},
        "base_points": BASE_POINTS,
        "expect_singular_points": [[0.0]],
    }
    with tempfile.TemporaryDirectory() as tmp:
        result = run(tmp, doc)
    assert result.status.is_passed()
    assert result.singular_points == [[0.0]]


def test_point_mass_mismatch_fails():
    doc = {
        "grid": {
            "source": "point_masses",
            "locations": [[0.5]],
            "weights": [[1.0, 0.0]],
            "center": [0.0],
            "half_widths": 1.0,
            "resolution": 1024,
        },
        "base_points": BASE_POINTS,
        "expect_singular_points": [[0.0]],
    }
    with tempfile.TemporaryDirectory() as tmp:
        result = run(tmp, doc)
    assert not result.status.is_passed()
    assert result.singular_points == [[0.5]]


def test_file_grid_and_artifacts():
    u = GridDistribution.from_function(lambda x: np.exp(-4 * x[..., 0] ** 2), 0.0, 1.0, 1024)
    with tempfile.TemporaryDirectory() as tmp:
        u.save(Path(tmp) / "gauss.bin")
        out = Path(tmp) / "out"
        doc = {"grid": {"source": "file", "path": "gauss.bin"}, "base_points": BASE_POINTS}
        result = run(tmp, doc, out=out)
        assert (out / "wf_estimate.json").exists()
        assert (out / "wavefront.png").stat().st_size > 0
        assert GridDistribution.load(out / "grid.bin").resolution == 1024
    assert result.estimate.singular() == []
