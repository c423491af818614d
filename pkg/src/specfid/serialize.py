"""Deterministic JSON and CSV emission, and matrix/state/channel parsing.

All floats are written with 17 significant digits so that equal inputs
produce byte-identical output and values round-trip through text.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, DomainError, NormalizationError
from .states import Channel, DensityMatrix


def fmt_float(x: float) -> str:
    """Render one float with 17 significant digits."""
    x = float(x)
    if x != x:
        return '"nan"'
    if x == float("inf"):
        return '"inf"'
    if x == float("-inf"):
        return '"-inf"'
    return f"{x:.17g}"


def dumps(obj: Any) -> str:
    """Serialize to a single JSON line with deterministic formatting.

    Dict keys keep insertion order; floats use 17 significant digits;
    non-finite floats become the strings "inf", "-inf", "nan".
    """
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist())
    raise DomainError(f"cannot serialize object of type {type(obj).__name__}")


def matrix_to_json(mat: np.ndarray) -> dict:
    """Row-major {"dim", "re", "im"} record for a square complex matrix."""
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {mat.shape}")
    return {
        "dim": int(mat.shape[0]),
        "re": mat.real.tolist(),
        "im": mat.imag.tolist(),
    }


def matrix_from_json(record: dict) -> np.ndarray:
    """Parse the {"dim", "re", "im"} matrix record."""
    try:
        dim = int(record["dim"])
        re = np.asarray(record["re"], dtype=float)
        im = np.asarray(record["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed matrix record: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise DimensionMismatch(
            f"matrix record claims dim {dim} but arrays have shapes "
            f"{re.shape} and {im.shape}"
        )
    mat = re + 1j * im
    if not np.all(np.isfinite(mat.view(float))):
        raise DomainError("matrix record has non-finite entries")
    return mat


def state_to_json(rho: DensityMatrix) -> dict:
    """Matrix record tagged as a density matrix."""
    record = matrix_to_json(rho.mat)
    record["type"] = "density"
    return record


def state_from_json(record: dict) -> DensityMatrix:
    """Parse and validate a density-matrix record."""
    kind = record.get("type", "density")
    if kind != "density":
        raise NormalizationError(f"expected a density record, got type {kind!r}")
    return DensityMatrix(matrix_from_json(record))


def channel_to_json(channel: Channel) -> dict:
    return {"kraus": [matrix_to_json(k) for k in channel.kraus]}


def channel_from_json(record: dict) -> Channel:
    kraus = record.get("kraus")
    if not isinstance(kraus, list) or not kraus:
        raise DomainError("channel record needs a non-empty 'kraus' list")
    return Channel(tuple(matrix_from_json(k) for k in kraus))


def fidelity_to_json(value: float, t: float | None, method: str) -> dict:
    return {"t": t, "value": value, "method": method}


def write_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Comma-separated text with a header row and 17-digit numbers."""

    def cell(v: Any) -> str:
        if isinstance(v, (float, np.floating)):
            s = fmt_float(float(v))
            return s.strip('"')
        return str(v)

    lines = [",".join(header)]
    lines.extend(",".join(cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"
