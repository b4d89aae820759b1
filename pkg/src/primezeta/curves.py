"""Sampled real-valued curves on a delta grid, with CSV round-tripping."""

from __future__ import annotations

import csv
import io
import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


def delta_grid(lo: float, hi: float, step: float) -> np.ndarray:
    """Inclusive grid lo, lo+step, ..., hi computed by index (no drift)."""
    if not step > 0:
        raise DomainError(f"step must be positive, got {step}")
    if hi < lo:
        raise DomainError(f"empty grid: hi={hi} < lo={lo}")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return np.round(lo + step * np.arange(n), 12)


@dataclass(frozen=True, eq=False)
class Curve:
    deltas: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.deltas, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.float64)
        if d.shape != v.shape or d.ndim != 1:
            raise DomainError("deltas and values must be 1-D and the same length")
        if d.size > 1 and not np.all(np.diff(d) > 0):
            raise DomainError("deltas must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise DomainError("curve values must be finite")
        object.__setattr__(self, "deltas", d)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return int(self.deltas.size)

    def local_minima(self) -> np.ndarray:
        """Deltas of strict interior local minima."""
        v = self.values
        idx = np.flatnonzero((v[1:-1] < v[:-2]) & (v[1:-1] < v[2:])) + 1
        return self.deltas[idx]

    def local_maxima(self) -> np.ndarray:
        v = self.values
        idx = np.flatnonzero((v[1:-1] > v[:-2]) & (v[1:-1] > v[2:])) + 1
        return self.deltas[idx]

    def value_range(self) -> float:
        return float(self.values.max() - self.values.min())

    def to_csv(self, target, value_name: str = "value") -> None:
        """Write ``delta,<value_name>`` rows with 12 significant digits.

        ``target`` is a path, ``"-"`` for stdout, or a text stream.
        """
        write_columns(target, ["delta", value_name], [self.deltas, self.values])

    @classmethod
    def from_csv(cls, source) -> "Curve":
        if isinstance(source, str):
            with open(source, newline="") as fh:
                return cls.from_csv(fh)
        rows = list(csv.reader(source))
        data = np.array([[float(x) for x in r[:2]] for r in rows[1:] if r], dtype=np.float64)
        return cls(data[:, 0], data[:, 1])


def fmt12(x: float) -> str:
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return f"{x:.12g}"


def write_columns(target, header, columns) -> None:
    if isinstance(target, str) and target != "-":
        with open(target, "w", newline="") as fh:
            write_columns(fh, header, columns)
        return
    fh = sys.stdout if target == "-" else target
    fh.write(",".join(header) + "\n")
    for row in zip(*columns):
        fh.write(",".join(fmt12(float(x)) if not isinstance(x, (int, np.integer)) else str(int(x))
                          for x in row) + "\n")


def curve_csv_text(curve: Curve, value_name: str = "value") -> str:
    buf = io.StringIO()
    curve.to_csv(buf, value_name)
    return buf.getvalue()
