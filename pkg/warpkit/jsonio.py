"""Artifact helpers shared by commands and experiments: JSON, CSV and complex64 binaries."""

import csv
import json
import math
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Annotated, Any

import numpy as np
from pydantic import BaseModel, BeforeValidator, PlainSerializer


def _to_complex(value: Any) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"Complex numbers are [re, im] pairs, got {value!r}")
        return complex(float(value[0]), float(value[1]))
    return complex(value)


def _from_complex(value: complex) -> list[float]:
    return [float(value.real), float(value.imag)]


JsonComplex = Annotated[
    complex,
    BeforeValidator(_to_complex),
    PlainSerializer(_from_complex, return_type=list[float]),
]


def finite(value: float) -> float | None:
    """Map non-finite floats to None so artifacts stay valid JSON."""
    return float(value) if math.isfinite(value) else None


def _default(obj: Any) -> Any:
    if isinstance(obj, BaseModel):
        return obj.model_dump(mode="json")
    if isinstance(obj, complex):
        return _from_complex(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def dumps(data: Any) -> str:
    if isinstance(data, BaseModel):
        data = data.model_dump(mode="json")
    return json.dumps(data, indent=2, sort_keys=True, default=_default, allow_nan=False)


def write_json(path: Path, data: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(data) + "\n")
    return path


def write_csv(path: Path, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write rows with a fixed column order; complex cells are written as a+bj."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
    return path


def _cell(value: Any) -> str:
    if isinstance(value, complex):
        return f"{value.real:.17g}{value.imag:+.17g}j"
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value)
    return str(value)


def write_complex64(path: Path, array: np.ndarray) -> Path:
    """Flat little-endian complex64 in C order; the shape belongs in a sidecar."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.ascontiguousarray(array, dtype="<c8").tofile(path)
    return path


def read_complex64(path: Path, shape: Sequence[int]) -> np.ndarray:
    data = np.fromfile(Path(path), dtype="<c8")
    expected = int(np.prod(shape))
    if data.size != expected:
        raise ValueError(f"{path} holds {data.size} values, sidecar declares shape {tuple(shape)}")
    return data.reshape(tuple(shape)).astype(complex)


def sidecar_path(path: Path) -> Path:
    """data.bin -> data.json"""
    return Path(path).with_suffix(".json")
