"""p-Wasserstein distance between persistence diagrams.

Points are matched to each other or to their orthogonal projection on the
diagonal ``((b+d)/2, (b+d)/2)``; the ground metric is the Euclidean norm in
the plane and the distance is ``(min sum cost**p) ** (1/p)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import InvalidInputError
from .persistence import PersistenceDiagram

GROUND_METRIC = "euclidean"


class _Diagonal:
    def __repr__(self):
        return "DIAG"


DIAG = _Diagonal()


def _points(dg) -> np.ndarray:
    p = dg.pairs if isinstance(dg, PersistenceDiagram) else np.asarray(dg, dtype=float)
    p = np.asarray(p, dtype=float).reshape(-1, 2)
    if not np.all(np.isfinite(p)):
        raise InvalidInputError("diagram has a non-finite coordinate")
    return p


def _check(d1, d2, p):
    if isinstance(d1, PersistenceDiagram) and isinstance(d2, PersistenceDiagram):
        if d1.dim != d2.dim:
            raise InvalidInputError(f"dimension mismatch: {d1.dim} vs {d2.dim}")
    if p < 1:
        raise InvalidInputError(f"order p must be >= 1, got {p}")
    return _points(d1), _points(d2)


def _pair_costs(a, b, p):
    diff = a[:, None, :] - b[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff)) ** p


def _diag_costs(a, p):
    return (np.abs(a[:, 1] - a[:, 0]) / np.sqrt(2.0)) ** p


@dataclass(frozen=True)
class MatchingProblem:
    """The square augmented assignment problem between two diagrams.

    Rows are the left points followed by one diagonal copy per right point;
    columns are the right points followed by one diagonal copy per left point.
    """

    left: np.ndarray
    right: np.ndarray
    costs: np.ndarray


def augmented_costs(d1, d2, p: int = 2) -> MatchingProblem:
    a, b = _check(d1, d2, p)
    m, n = len(a), len(b)
    c = np.zeros((m + n, m + n))
    c[:m, :n] = _pair_costs(a, b, p)
    c[:m, n:] = np.inf
    c[m:, :n] = np.inf
    c[np.arange(m), n + np.arange(m)] = _diag_costs(a, p)
    c[m + np.arange(n), np.arange(n)] = _diag_costs(b, p)
    return MatchingProblem(a, b, c)


def _solve(a, b, p):
    """Optimal partial matching. Returns (index pairs, unmatched left, unmatched right)."""
    m, n = len(a), len(b)
    if m == 0 or n == 0:
        return [], list(range(m)), list(range(n))
    da, db = _diag_costs(a, p), _diag_costs(b, p)
    # each left point takes a right point or its own diagonal slot; a taken right
    # point no longer pays its diagonal cost, hence the subtraction
    c = np.full((m, n + m), np.inf)
    c[:, :n] = _pair_costs(a, b, p) - db[None, :]
    c[np.arange(m), n + np.arange(m)] = da
    rows, cols = linear_sum_assignment(c)
    matched = [(int(r), int(k)) for r, k in zip(rows, cols) if k < n]
    taken = {k for _, k in matched}
    un_left = [int(r) for r, k in zip(rows, cols) if k >= n]
    un_right = [k for k in range(n) if k not in taken]
    return matched, un_left, un_right


def _total(a, b, p, matched, un_left, un_right):
    total = 0.0
    if matched:
        i, j = np.array(matched).T
        diff = a[i] - b[j]
        total += float(np.sum(np.sqrt(np.einsum("ij,ij->i", diff, diff)) ** p))
    if un_left:
        total += float(np.sum(_diag_costs(a[un_left], p)))
    if un_right:
        total += float(np.sum(_diag_costs(b[un_right], p)))
    return total


def _canonical(a):
    return a[np.lexsort((a[:, 1], a[:, 0]))]


def _same_birth(a, b) -> bool:
    births = np.concatenate([a[:, 0], b[:, 0]])
    return births.size > 0 and bool(np.all(births == births[0]))


def _collinear_cost(a, b, p) -> float:
    """Optimal cost (before the 1/p root) when every point has the same birth.

    Points then lie on one vertical line and the ground cost is convex in the
    death difference, so some optimal matching pairs the sorted deaths without
    crossings. That leaves an edit-distance style DP over the two sorted
    sequences, each row of which is a running minimum.
    """
    da = np.sort(a[:, 1] - a[:, 0])
    db = np.sort(b[:, 1] - b[:, 0])
    cost_a = (da / np.sqrt(2.0)) ** p
    cost_b = (db / np.sqrt(2.0)) ** p
    # prefix[j]: cost of sending the j smallest right points to the diagonal
    prefix = np.concatenate([[0.0], np.cumsum(cost_b)])
    row = prefix.copy()
    pair = np.abs(da[:, None] - db[None, :]) ** p
    for i in range(da.size):
        step = np.empty_like(row)
        step[0] = row[0] + cost_a[i]
        np.minimum(row[1:] + cost_a[i], row[:-1] + pair[i], out=step[1:])
        row = prefix + np.minimum.accumulate(step - prefix)
    return max(float(row[-1]), 0.0)


def wasserstein(d1, d2, p: int = 2) -> float:
    """p-Wasserstein distance between two diagrams (or ``k x 2`` arrays)."""
    a, b = _check(d1, d2, p)
    if a.shape == b.shape and np.array_equal(_canonical(a), _canonical(b)):
        return 0.0
    if _same_birth(a, b):
        return _collinear_cost(a, b, p) ** (1.0 / p)
    matched, ul, ur = _solve(a, b, p)
    return _total(a, b, p, matched, ul, ur) ** (1.0 / p)


def matching(d1, d2, p: int = 2) -> list[tuple]:
    """Optimal matching as ``(left point or DIAG, right point or DIAG)`` tuples."""
    a, b = _check(d1, d2, p)
    matched, ul, ur = _solve(a, b, p)
    out = [(tuple(a[i]), tuple(b[j])) for i, j in matched]
    out += [(tuple(a[i]), DIAG) for i in ul]
    out += [(DIAG, tuple(b[j])) for j in ur]
    return out


def matching_cost(pairs, p: int = 2) -> float:
    """Cost ``(sum c**p)**(1/p)`` of a matching returned by :func:`matching`."""
    total = 0.0
    for u, v in pairs:
        if u is DIAG and v is DIAG:
            continue
        if u is DIAG or v is DIAG:
            q = np.asarray(v if u is DIAG else u)
            total += (abs(q[1] - q[0]) / np.sqrt(2.0)) ** p
        else:
            total += float(np.hypot(u[0] - v[0], u[1] - v[1])) ** p
    return total ** (1.0 / p)
