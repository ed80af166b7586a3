import json
import tempfile
from pathlib import Path

import pytest
from pydantic import ValidationError

from .lib import SymbolCheckArgs, SymbolCheckInput, symbol_check

THETA_XI = {"prod": [{"var": ["theta", 0]}, {"var": ["xi", 0]}]}


def run(doc: dict, **kwargs):
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "symbol.json"
        path.write_text(json.dumps(doc))
        return symbol_check(SymbolCheckArgs(config=path, **kwargs))


def test_degree_two_passes():
    result = run({"symbol": {"k": 1, "order": 2, "type": 1, "expr": THETA_XI}})
    assert result.status.is_passed()
    assert result.report.passed


def test_underdeclared_order_fails():
    result = run({"symbol": {"k": 1, "order": 1, "type": 1, "expr": THETA_XI}})
    assert not result.status.is_passed()
    assert "alpha=[0] beta=[0]" in result.status.errors[0]


def test_class_override_and_seminorms():
    doc = {
        "symbol": {"k": 1, "order": 2, "type": 1, "expr": THETA_XI},
        "order": 3,
        "type": 0.5,
        "seminorms": [{"alpha": [0], "beta": [0]}],
    }
    result = run(doc)
    assert result.status.is_passed()
    assert (result.report.order, result.report.rho) == (3, 0.5)
    assert len(result.seminorms) == 1
    assert result.seminorms[0].value > 0


def test_unknown_keys_rejected():
    with pytest.raises(ValidationError):
        SymbolCheckInput.model_validate({"symbol": {"k": 1, "expr": 1}, "extra": True})
