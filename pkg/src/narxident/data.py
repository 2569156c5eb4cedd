"""Sampled input/output records and CSV import/export."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class TimeSeriesData:
    """A single-input single-output record sampled at a fixed interval.

    Parameters
    ----------
    u, y : array_like
        Input and output samples, equal length.
    ts : float
        Sampling interval in seconds.
    label : str
        Free-text description.
    """

    u: np.ndarray
    y: np.ndarray
    ts: float
    label: str = ""

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        y = np.asarray(self.y, dtype=float)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "y", y)
        if u.ndim != 1 or y.ndim != 1 or len(u) != len(y) or len(u) < 1:
            raise ParameterError("u and y must be 1-D arrays of equal nonzero length")
        if not (self.ts > 0):
            raise ParameterError("sampling interval must be positive")
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(y))):
            raise ParameterError("samples must be finite")

    def __len__(self):
        return len(self.u)


def save_csv(path, data: TimeSeriesData, y_clean=None):
    """Write a record as ``k,u,y`` CSV (optional ``y_clean`` column)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = ["k", "u", "y"] + (["y_clean"] if y_clean is not None else [])
        writer.writerow(header)
        for k in range(len(data)):
            row = [k, repr(data.u[k]), repr(data.y[k])]
            if y_clean is not None:
                row.append(repr(float(y_clean[k])))
            writer.writerow(row)


def load_csv(path, ts=1.0, label=""):
    """Read a ``k,u,y`` CSV written by :func:`save_csv` (extra columns ignored)."""
    u, y = [], []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"u", "y"} <= set(reader.fieldnames):
            raise ParameterError(f"{path}: expected a CSV with 'u' and 'y' columns")
        for row in reader:
            u.append(float(row["u"]))
            y.append(float(row["y"]))
    return TimeSeriesData(np.array(u), np.array(y), ts=ts, label=label or str(path))
