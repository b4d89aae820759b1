"""Ingest Riemann zero ordinates and histogram their pairwise differences."""

from __future__ import annotations

import gzip
import io
import math
from dataclasses import dataclass

import numpy as np

from .curves import write_columns
from .errors import DomainError, EmptyTableError, MonotonicityError, ZeroParseError

#: Environment variable naming the default zero table for the CLI.
ZEROS_ENV = "PRIMEZETA_ZEROS"


@dataclass(frozen=True, eq=False)
class ZeroTable:
    """Ascending imaginary parts of nontrivial zeros (1-based ``ordinate``)."""

    ordinates: np.ndarray

    def __len__(self):
        return int(self.ordinates.size)

    def ordinate(self, index: int) -> float:
        """The ``index``-th ordinate, counting from 1."""
        if not 1 <= index <= len(self):
            raise DomainError(f"zero index {index} outside table of {len(self)} ordinates")
        return float(self.ordinates[index - 1])

    def head(self, n: int) -> "ZeroTable":
        return _table(self.ordinates[:n])


def _table(values):
    arr = np.asarray(values, dtype=np.float64)
    arr.setflags(write=False)
    return ZeroTable(arr)


def load_zeros(source) -> ZeroTable:
    """Parse a zero table: one decimal ordinate per line, blank lines ignored.

    ``source`` is a binary or text stream, or raw ``bytes``/``str`` content.
    """
    if isinstance(source, (bytes, bytearray)):
        source = io.BytesIO(source)
    elif isinstance(source, str):
        source = io.StringIO(source)
    values = []
    prev = -math.inf
    for line_no, raw in enumerate(source, start=1):
        text = raw.decode("ascii", errors="replace") if isinstance(raw, bytes) else raw
        text = text.strip()
        if not text:
            continue
        try:
            x = float(text)
        except ValueError:
            raise ZeroParseError(line_no, text) from None
        if not math.isfinite(x) or x <= 0:
            raise ZeroParseError(line_no, text)
        if x <= prev:
            raise MonotonicityError(line_no, prev, x)
        values.append(x)
        prev = x
    if not values:
        raise EmptyTableError("zero table is empty")
    return _table(values)


def read_zero_file(path: str, limit: int | None = None) -> ZeroTable:
    """Load a zero table from disk (``.gz`` handled transparently)."""
    opener = gzip.open if str(path).endswith(".gz") else open
    with opener(path, "rb") as fh:
        table = load_zeros(fh)
    return table.head(limit) if limit is not None else table


def _bin_count(lo, hi, width):
    r = (hi - lo) / width
    k = round(r)
    if abs(r - k) <= 1e-9 * max(1.0, r):
        return int(k)
    return int(math.ceil(r))


@dataclass(frozen=True, eq=False)
class DiffHistogram:
    lo: float
    hi: float
    bin_width: float
    counts: np.ndarray

    @property
    def n_bins(self) -> int:
        return int(self.counts.size)

    @property
    def bin_left(self) -> np.ndarray:
        return self.lo + self.bin_width * np.arange(self.n_bins)

    @property
    def centers(self) -> np.ndarray:
        return self.bin_left + 0.5 * self.bin_width

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def to_csv(self, target) -> None:
        write_columns(target, ["bin_left", "count"], [self.bin_left, self.counts])


def bin_indices(x, lo, width):
    """Half-open bin index of each x: bin k is [lo + k w, lo + (k+1) w)."""
    k = np.floor((x - lo) / width).astype(np.int64)
    k -= x < lo + k * width
    k += x >= lo + (k + 1) * width
    return k


def diff_histogram(zeros: ZeroTable, lo: float, hi: float, bin_width: float) -> DiffHistogram:
    """Histogram of gamma_j - gamma_k over all pairs j > k falling in [lo, hi).

    Pairs are enumerated by index offset d = j - k; since the table is sorted
    the offset-d differences only grow with d, so the sweep stops once every
    one of them reaches ``hi``. Cost is O(n * zeros-per-window).
    """
    if not (0 <= lo < hi) or not bin_width > 0:
        raise DomainError(f"need 0 <= lo < hi and bin_width > 0, got lo={lo}, hi={hi}, width={bin_width}")
    z = zeros.ordinates
    if z.size < 2:
        raise DomainError("need at least two zeros")
    nb = _bin_count(lo, hi, bin_width)
    counts = np.zeros(nb, dtype=np.int64)
    for d in range(1, z.size):
        diffs = z[d:] - z[:-d]
        if diffs.min() >= hi:
            break
        sel = diffs[(diffs >= lo) & (diffs < hi)]
        if sel.size:
            idx = np.clip(bin_indices(sel, lo, bin_width), 0, nb - 1)
            counts += np.bincount(idx, minlength=nb)
    return DiffHistogram(float(lo), float(hi), float(bin_width), counts)


def trough_score(hist: DiffHistogram, center: float, half_width: float, window: float) -> float:
    """Mean count within ``half_width`` of ``center`` over the mean in the flanks.

    Flanks are the bins whose centres lie farther than ``half_width`` but no
    farther than ``window`` from ``center``. Values below 1 mean a deficit.
    """
    if not (half_width > 0 and window > half_width):
        raise DomainError("need window > half_width > 0")
    if center - window < hist.lo or center + window > hist.hi:
        raise DomainError(f"window [{center - window}, {center + window}] leaves histogram range")
    dist = np.abs(hist.centers - center)
    inner = hist.counts[dist <= half_width]
    flank = hist.counts[(dist > half_width) & (dist <= window)]
    if inner.size == 0 or flank.size == 0:
        raise DomainError("window too narrow for the bin width")
    flank_mean = flank.mean()
    if flank_mean == 0:
        raise DomainError("flanking bins are empty")
    return float(inner.mean() / flank_mean)


def midpoints(values) -> np.ndarray:
    v = np.asarray(values, dtype=np.float64)
    return 0.5 * (v[1:] + v[:-1])
