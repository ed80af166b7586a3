import json
import tempfile
from pathlib import Path

import pytest
from pydantic import ValidationError

from warpkit.microloc.wavefront import WavefrontEntry, WavefrontEstimate

from .lib import MuscCheckArgs, musc_check

GOOD = {"points": [[0.0, 0.0], [1.0, 0.0]], "covectors": [[1.0, 1.0], [-1.0, -1.0]]}
BAD = {"points": [[0.0, 0.0], [1.0, 0.0]], "covectors": [[1.0, 1.0], [1.0, 0.0]]}


def run(tmp: str, doc: dict, **kwargs):
    path = Path(tmp) / "musc.json"
    path.write_text(json.dumps(doc))
    return musc_check(MuscCheckArgs(config=path, **kwargs))


def write_wavefront(tmp: str, direction: list[float]) -> None:
    wf = WavefrontEstimate(
        entries=[
            WavefrontEntry(base_point=[1.0, 1.0], direction=direction, n_fit=1.0, verdict="singular"),
            WavefrontEntry(base_point=[0.0, 1.5], direction=[0.0, 1.0], n_fit=6.0, verdict="regular"),
        ]
    )
    (Path(tmp) / "wf_estimate.json").write_text(json.dumps({"estimate": wf.model_dump(mode="json")}))


def test_instantiable_pair_passes():
    with tempfile.TemporaryDirectory() as tmp:
        result = run(tmp, {"configurations": [GOOD]}, tolerance=1e-9)
    assert result.report.verdict == "PASS"
    assert result.status.is_passed()


def test_counterexample_fails_unless_expected():
    with tempfile.TemporaryDirectory() as tmp:
        failed = run(tmp, {"configurations": [GOOD, BAD]})
        expected = run(tmp, {"configurations": [GOOD, BAD], "expect": "FAIL"})
    assert failed.report.counterexamples == [1]
    assert not failed.status.is_passed()
    assert expected.status.is_passed()


def test_wavefront_file_source():
    with tempfile.TemporaryDirectory() as tmp:
        write_wavefront(tmp, [0.8, 0.6])
        timelike = run(tmp, {"wavefront": "wf_estimate.json"})
        write_wavefront(tmp, [0.6, -0.8])
        out = Path(tmp) / "out"
        spacelike = run(tmp, {"wavefront": "wf_estimate.json"}, out=out)
        assert (out / "musc_check.json").exists()
    assert len(timelike.report.tuples) == 1
    assert timelike.report.verdict == "PASS"
    assert spacelike.report.verdict == "FAIL"


def test_needs_exactly_one_source():
    with tempfile.TemporaryDirectory() as tmp:
        with pytest.raises(ValidationError, match="exactly one"):
            run(tmp, {})
        with pytest.raises(ValidationError):
            run(tmp, {"configurations": [{"points": [[0.0, 0.0]], "covectors": [[0.0, 0.0]]}]})
