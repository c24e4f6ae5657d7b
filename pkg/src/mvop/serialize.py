"""JSON/CSV encoding helpers.

Complex numbers are written as two-element [re, im] arrays everywhere,
scalars included; matrices become nested row-major lists of those
pairs.
"""

from __future__ import annotations

import csv
import json

import numpy as np

__all__ = ["c_encode", "c_decode", "write_json", "write_csv"]


def c_encode(value):
    """Encode scalars/arrays with complex entries as [re, im] pairs."""
    arr = np.asarray(value)
    if arr.ndim == 0:
        z = complex(arr)
        return [z.real, z.imag]
    return [c_encode(row) for row in arr]


def c_decode(value) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.shape[-1] != 2:
        raise ValueError("expected trailing [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def write_json(path, payload) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
