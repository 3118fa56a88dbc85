"""Weighted networks as sentinel-encoded square matrices.

A network on ``n`` nodes is stored as an ``n x n`` symmetric matrix with a
zero diagonal. Edge weights live in ``[0, cap]``; a missing edge is stored as
the sentinel value ``cap + 1`` so that any filtration stopping at ``cap``
never sees it.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Optional

import numpy as np

from .errors import (
    DegenerateColumnError,
    DimensionMismatchError,
    InvalidInputError,
    ParseError,
    ThresholdOutOfRangeError,
)

CORRELATION_CAP = 2.0
_CORR_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class WeightedMatrix:
    """Immutable weighted adjacency matrix with sentinel-encoded non-edges."""

    entries: np.ndarray
    cap: float

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidInputError(f"matrix must be square, got shape {a.shape}")
        if not np.isfinite(self.cap) or self.cap <= 0:
            raise InvalidInputError(f"cap must be a positive real, got {self.cap}")
        if np.isnan(a).any():
            raise InvalidInputError("matrix contains NaN")
        if not np.array_equal(a, a.T):
            raise InvalidInputError("matrix is not symmetric")
        if np.any(np.diag(a) != 0):
            raise InvalidInputError("matrix diagonal must be zero")
        if np.any(a < 0):
            raise InvalidInputError("weights must be nonnegative")
        # anything above cap is a non-edge; normalise it to the sentinel
        a[a > self.cap] = self.cap + 1.0
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        object.__setattr__(self, "cap", float(self.cap))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def sentinel(self) -> float:
        return self.cap + 1.0

    def edges(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Finite undirected edges as ``(i, j, weight)`` arrays with ``i < j``."""
        iu, ju = np.triu_indices(self.n, k=1)
        w = self.entries[iu, ju]
        keep = w <= self.cap
        return iu[keep], ju[keep], w[keep]

    def n_edges(self) -> int:
        return int(self.edges()[2].size)

    def max_weight(self) -> Optional[float]:
        """Largest finite off-diagonal weight, or None if there are no edges."""
        w = self.edges()[2]
        return float(w.max()) if w.size else None

    def __eq__(self, other):
        if not isinstance(other, WeightedMatrix):
            return NotImplemented
        return self.cap == other.cap and np.array_equal(self.entries, other.entries)

    def __repr__(self):
        return f"WeightedMatrix(n={self.n}, cap={self.cap}, edges={self.n_edges()})"


@dataclass(frozen=True, eq=False)
class ReturnsMatrix:
    """``k x n`` returns: ``k`` time samples of ``n`` assets."""

    series: np.ndarray
    kind: Literal["arithmetic", "log"] = "arithmetic"
    labels: tuple = field(default=())

    def __post_init__(self):
        s = np.array(self.series, dtype=float)
        if s.ndim != 2:
            raise InvalidInputError("returns must be a 2-d array")
        if s.shape[0] < 1:
            raise InvalidInputError("returns matrix has no rows")
        if not np.all(np.isfinite(s)):
            raise InvalidInputError("returns contain non-finite values")
        s.setflags(write=False)
        object.__setattr__(self, "series", s)


def _check_prices(prices) -> np.ndarray:
    p = np.asarray(prices, dtype=float)
    if p.ndim == 1:
        p = p[:, None]
    if p.ndim != 2:
        raise InvalidInputError("prices must be a k x n array")
    bad = np.argwhere(~(p > 0))
    if bad.size:
        r, c = bad[0]
        raise InvalidInputError(f"nonpositive price {p[r, c]} at row {r}, column {c}")
    return p


def arithmetic_returns(prices) -> ReturnsMatrix:
    """Simple returns ``(S[t+1] - S[t]) / S[t]``; output has ``k - 1`` rows."""
    p = _check_prices(prices)
    if p.shape[0] < 2:
        raise InvalidInputError(f"need at least 2 price rows, got {p.shape[0]}")
    return ReturnsMatrix((p[1:] - p[:-1]) / p[:-1], kind="arithmetic")


def log_returns(prices) -> ReturnsMatrix:
    """Log returns ``ln(c[t] / c[t-1])``; output has ``k - 1`` rows."""
    p = _check_prices(prices)
    if p.shape[0] < 2:
        raise InvalidInputError(f"need at least 2 price rows, got {p.shape[0]}")
    return ReturnsMatrix(np.log(p[1:] / p[:-1]), kind="log")


def correlation_matrix(returns) -> np.ndarray:
    """Pearson correlation between the columns of ``returns``.

    Accepts a :class:`ReturnsMatrix` or any ``k x n`` array. The result is
    symmetrised, has an exact unit diagonal and is clamped to ``[-1, 1]``.
    """
    x = returns.series if isinstance(returns, ReturnsMatrix) else np.asarray(returns, float)
    if x.ndim != 2 or x.shape[0] < 2:
        raise InvalidInputError("correlation needs a window of at least 2 rows")
    xc = x - x.mean(axis=0)
    ss = np.einsum("ij,ij->j", xc, xc)
    scale = np.maximum(np.abs(x).max(axis=0), 1.0)
    for j in np.flatnonzero(ss <= (1e-14 * scale) ** 2 * x.shape[0]):
        raise DegenerateColumnError(int(j))
    norm = xc / np.sqrt(ss)
    c = norm.T @ norm
    c = 0.5 * (c + c.T)
    np.clip(c, -1.0, 1.0, out=c)
    np.fill_diagonal(c, 1.0)
    return c


def correlation_to_distance(corr, cap: float = CORRELATION_CAP) -> WeightedMatrix:
    """Map correlations to ``sqrt(2 (1 - C))`` distances in ``[0, 2]``."""
    c = np.asarray(corr, dtype=float)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise InvalidInputError("correlation matrix must be square")
    if np.any(c > 1 + _CORR_TOL) or np.any(c < -1 - _CORR_TOL) or np.isnan(c).any():
        raise InvalidInputError("correlation entries outside [-1, 1]")
    c = np.clip(c, -1.0, 1.0)
    d = np.sqrt(2.0 * (1.0 - c))
    d = 0.5 * (d + d.T)
    np.fill_diagonal(d, 0.0)
    return WeightedMatrix(d, cap)


def from_point_cloud(points, cap: Optional[float] = None) -> WeightedMatrix:
    """Euclidean distance matrix of a ``w x d`` point cloud."""
    x = np.asarray(points, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.shape[0] < 1:
        raise InvalidInputError("point cloud is empty")
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("point cloud contains non-finite coordinates")
    diff = x[:, None, :] - x[None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    np.fill_diagonal(d, 0.0)
    if cap is None:
        cap = float(d.max()) if d.max() > 0 else 1.0
    return WeightedMatrix(d, cap)


def apply_threshold(w: WeightedMatrix, s: float) -> WeightedMatrix:
    """Replace every edge with weight ``>= s`` by the sentinel (the diagonal is kept)."""
    if not (0 < s <= w.cap):
        raise ThresholdOutOfRangeError(f"threshold {s} outside (0, {w.cap}]")
    a = w.entries.copy()
    a[a >= s] = w.sentinel
    np.fill_diagonal(a, 0.0)
    return WeightedMatrix(a, w.cap)


def pruned_fraction(full: WeightedMatrix, pruned: WeightedMatrix) -> float:
    """Share of the finite edges of ``full`` that are absent from ``pruned``."""
    if full.n != pruned.n:
        raise DimensionMismatchError(f"{full.n} vs {pruned.n} nodes")
    iu, ju = np.triu_indices(full.n, k=1)
    before = full.entries[iu, ju] <= full.cap
    total = int(before.sum())
    if total == 0:
        return 0.0
    after = pruned.entries[iu, ju] <= pruned.cap
    return float(np.sum(before & ~after)) / total


# --- CSV I/O -----------------------------------------------------------------

def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def read_matrix_csv(path, cap: Optional[float] = None) -> WeightedMatrix:
    """Read an ``n x n`` matrix CSV, optionally preceded by one header row.

    Values above ``cap`` (including ``inf``) become the sentinel. Without an
    explicit ``cap`` the largest finite value in the file is used.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        rows = [r for r in csv.reader(fh) if any(cell.strip() for cell in r)]
    if not rows:
        raise ParseError(path, 1, 1, "empty matrix file")
    start = 0
    if not _is_number(rows[0][0].strip()):
        start = 1
    values = []
    for li, row in enumerate(rows[start:], start=start + 1):
        parsed = []
        for ci, cell in enumerate(row, start=1):
            try:
                parsed.append(float(cell))
            except ValueError:
                raise ParseError(path, li, ci, f"non-numeric value {cell!r}") from None
        values.append(parsed)
    n = len(values)
    for li, row in enumerate(values, start=start + 1):
        if len(row) != n:
            raise ParseError(path, li, len(row), f"expected {n} values, got {len(row)}")
    a = np.array(values, dtype=float)
    if cap is None:
        finite = a[np.isfinite(a)]
        cap = float(finite.max()) if finite.size and finite.max() > 0 else 1.0
    a[a > cap] = cap + 1.0
    return WeightedMatrix(a, cap)


def write_matrix_csv(w: WeightedMatrix, path) -> None:
    np.savetxt(Path(path), w.entries, delimiter=",", fmt="%.17g")


def read_price_csv(path) -> tuple[list[str], list[str], np.ndarray]:
    """Read ``date,NAME1,...`` price files. Returns ``(dates, names, prices)``."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(path, 1, 1, "empty price file") from None
        if len(header) < 2 or header[0].strip().lower() != "date":
            raise ParseError(path, 1, 1, "header must start with 'date'")
        names = [h.strip() for h in header[1:]]
        dates, rows = [], []
        for li, row in enumerate(reader, start=2):
            if not row or not any(c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise ParseError(path, li, len(row), f"expected {len(header)} fields")
            try:
                np.datetime64(row[0].strip(), "D")
            except ValueError:
                raise ParseError(path, li, 1, f"bad ISO-8601 date {row[0]!r}") from None
            vals = []
            for ci, cell in enumerate(row[1:], start=2):
                try:
                    vals.append(float(cell))
                except ValueError:
                    raise ParseError(path, li, ci, f"non-numeric price {cell!r}") from None
            dates.append(row[0].strip())
            rows.append(vals)
    if any(b <= a for a, b in zip(dates, dates[1:])):
        raise InvalidInputError(f"{path}: dates are not strictly ascending")
    return dates, names, np.array(rows, dtype=float).reshape(len(rows), len(names))
