"""
WeightGraph serialization.

Two formats:
- CSV: n rows of n comma-separated values, full float64 precision
- binary: little-endian int64 n, then n² little-endian float64 values in row-major order
"""

from __future__ import annotations
from pathlib import Path

import numpy as np

from heterocut.errors import DataFormatError
from heterocut.graph.weights import WeightGraph

_HEADER = np.dtype("<i8")
_VALUES = np.dtype("<f8")


def save_csv(W: WeightGraph, path: Path | str) -> None:
    """Write the weight matrix as CSV."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, W.w, fmt="%.17g", delimiter=",")


def load_csv(path: Path | str) -> WeightGraph:
    """Read a weight matrix written by `save_csv`."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Weight file not found: {path}")
    if path.stat().st_size == 0:
        return WeightGraph(np.zeros((0, 0)))
    try:
        w = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
        return WeightGraph(w)
    except ValueError as e:
        raise DataFormatError(f"{path}: not a valid weight matrix ({e})") from e


def save_binary(W: WeightGraph, path: Path | str) -> None:
    """Write the documented binary dump."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as f:
        f.write(np.array([W.n], dtype=_HEADER).tobytes())
        f.write(np.ascontiguousarray(W.w, dtype=_VALUES).tobytes())


def load_binary(path: Path | str) -> WeightGraph:
    """Read a binary dump written by `save_binary`."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Weight file not found: {path}")
    raw = path.read_bytes()
    if len(raw) < _HEADER.itemsize:
        raise DataFormatError(f"{path}: truncated header")

    n = int(np.frombuffer(raw[: _HEADER.itemsize], dtype=_HEADER)[0])
    expected = _HEADER.itemsize + n * n * _VALUES.itemsize
    if n < 0 or len(raw) != expected:
        raise DataFormatError(f"{path}: expected {expected} bytes for n={n}, got {len(raw)}")

    w = np.frombuffer(raw[_HEADER.itemsize :], dtype=_VALUES).reshape(n, n).astype(np.float64)
    try:
        return WeightGraph(w)
    except ValueError as e:
        raise DataFormatError(f"{path}: {e}") from e
