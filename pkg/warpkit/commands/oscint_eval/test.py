import json
import tempfile
from pathlib import Path

import pytest
from pydantic import ValidationError

from .lib import OscintEvalArgs, OscintEvalInput, oscint_eval

GAUSS = {"k": 1, "order": -10, "type": 1, "expr": {"gauss": {"over": "all"}}}
SHORT = {"n_terms": 4, "depth": 3}


def write_doc(tmp: str, doc: dict) -> Path:
    path = Path(tmp) / "input.json"
    path.write_text(json.dumps(doc))
    return path


def test_gaussian_matches_expected():
    with tempfile.TemporaryDirectory() as tmp:
        path = write_doc(tmp, {"symbol": GAUSS, "cutoff": SHORT, "expected": 5**-0.5})
        result = oscint_eval(OscintEvalArgs(config=path, tolerance=1e-6))
    assert result.status.is_passed()
    assert result.result.value == pytest.approx(5**-0.5, abs=1e-6)
    assert result.relative_error < 1e-6


def test_wrong_expectation_fails():
    with tempfile.TemporaryDirectory() as tmp:
        path = write_doc(tmp, {"symbol": GAUSS, "cutoff": SHORT, "expected": 0.5})
        result = oscint_eval(OscintEvalArgs(config=path))
    assert not result.status.is_passed()
    assert "differs from" in result.status.errors[0]


def test_regularized_method_writes_output():
    with tempfile.TemporaryDirectory() as tmp:
        path = write_doc(tmp, {"symbol": GAUSS})
        out = Path(tmp) / "out"
        result = oscint_eval(OscintEvalArgs(config=path, method="regularized", out=out))
        written = json.loads((out / "oscint_eval.json").read_text())
    assert result.result.method == "regularized"
    assert written["result"]["method"] == "regularized"
    assert written["result"]["value"][0] == pytest.approx(5**-0.5, abs=1e-6)


def test_paired_distribution():
    doc = {
        "extended": {"s": 1, "profile": {"const": 2}, "symbol": {"k": 1, "order": 0, "type": 0, "expr": {"gauss": {"over": "xi"}}}},
        "test_function": {"bump": {"center": [0.0], "radius": 0.5, "mass": 1.0}},
        "cutoff": SHORT,
        "expected": 2.0,
    }
    with tempfile.TemporaryDirectory() as tmp:
        result = oscint_eval(OscintEvalArgs(config=write_doc(tmp, doc), tolerance=1e-5))
    assert result.status.is_passed()


def test_fiberwise_distribution():
    doc = {
        "extended": {"s": 1, "profile": {"const": 2}, "symbol": {"k": 1, "order": 0, "type": 0, "expr": {"gauss": {"over": "xi"}}}},
        "test_function": {"bump": {"center": [0.0], "radius": 0.5, "mass": 1.0}},
        "order": "oscillate-then-pair",
        "fiberwise": True,
        "cutoff": SHORT,
        "expected": 2.0,
    }
    with tempfile.TemporaryDirectory() as tmp:
        result = oscint_eval(OscintEvalArgs(config=write_doc(tmp, doc), tolerance=1e-4))
    assert result.status.is_passed()
    assert not any("profile pairing" in note for note in result.result.diagnostics.notes)


def test_needs_exactly_one_target():
    with pytest.raises(ValidationError, match="exactly one"):
        OscintEvalInput.model_validate({})
    with pytest.raises(ValidationError, match="test_function"):
        OscintEvalInput.model_validate({"extended": {"s": 1}})
