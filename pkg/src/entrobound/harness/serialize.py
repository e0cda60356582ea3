"""JSON encoding of complex vectors and matrices as ``[re, im]`` pairs."""

from __future__ import annotations

import numpy as np


class ScenarioFormatError(ValueError):
    """Structurally malformed scenario or config file."""


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def encode_vector(v) -> list[list[float]]:
    return [encode_complex(z) for z in np.asarray(v).reshape(-1)]


def encode_matrix(m) -> list[list[list[float]]]:
    return [encode_vector(row) for row in np.asarray(m)]


def _decode_entry(x, where: str) -> complex:
    if isinstance(x, bool):
        raise ScenarioFormatError(f"{where}: expected a number or [re, im], got {x!r}")
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(
        isinstance(c, (int, float)) and not isinstance(c, bool) for c in x
    ):
        return complex(x[0], x[1])
    raise ScenarioFormatError(f"{where}: expected a number or [re, im], got {x!r}")


def decode_vector(data, where: str) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise ScenarioFormatError(f"{where}: expected a non-empty list of entries")
    return np.array([_decode_entry(x, f"{where}[{i}]") for i, x in enumerate(data)], dtype=complex)


def decode_matrix(data, where: str) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise ScenarioFormatError(f"{where}: expected a non-empty list of rows")
    rows = [decode_vector(r, f"{where}[{i}]") for i, r in enumerate(data)]
    if len({r.shape[0] for r in rows}) != 1:
        raise ScenarioFormatError(f"{where}: rows have different lengths")
    return np.vstack(rows)
