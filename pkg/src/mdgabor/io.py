"""JSON loading and dumping for systems and operators."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import SchemaError
from .signal import GaborSystem


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise SchemaError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def load_system(path, threshold: float = 0.0) -> GaborSystem:
    return GaborSystem.from_dict(_read_json(path), threshold)


def matrix_from_json(data) -> np.ndarray:
    """Dense complex matrix from rows of ``[re, im]`` pairs (plain reals also accepted)."""
    if isinstance(data, dict):
        data = data.get("matrix")
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise SchemaError("operator must be a nonempty list of rows")
    try:
        rows = [[complex(*v) if isinstance(v, list) else complex(float(v)) for v in r] for r in data]
        K = np.array(rows, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad operator entry: {exc}") from exc
    if K.ndim != 2:
        raise SchemaError("operator rows have different lengths")
    return K


def matrix_to_json(K: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(K)]


def load_matrix(path) -> np.ndarray:
    return matrix_from_json(_read_json(path))


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def dumps(obj) -> str:
    """JSON text; floats are written with their shortest round-trip repr."""
    return json.dumps(_plain(obj), indent=2, allow_nan=True)
