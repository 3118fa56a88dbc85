"""Closeness centrality and central-subnetwork extraction.

The central subnetwork of a weighted network keeps only the edges lighter
than a threshold ``s`` picked from the sorted weights incident to the node of
highest closeness centrality (``u_c``). The five threshold ranks are the
minimum, the three quartiles and the maximum of ``u_c``.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from scipy.sparse.csgraph import csgraph_from_dense, dijkstra, floyd_warshall

from .errors import InvalidInputError
from .graph import WeightedMatrix, apply_threshold

EPS = 1e-12

EdgeCost = Literal["distance", "strength"]


class ThresholdSpec(str, enum.Enum):
    MIN = "min"
    Q1 = "q1"
    Q2 = "q2"
    Q3 = "q3"
    MAX = "max"
    FULL = "full"

    @classmethod
    def parse(cls, value) -> "ThresholdSpec":
        if isinstance(value, cls):
            return value
        aliases = {"s0": "min", "s1": "q1", "s2": "q2", "median": "q2", "s3": "q3", "s4": "max"}
        v = str(value).strip().lower()
        return cls(aliases.get(v, v))


RANKS = (ThresholdSpec.MIN, ThresholdSpec.Q1, ThresholdSpec.Q2, ThresholdSpec.Q3, ThresholdSpec.MAX)


@dataclass(frozen=True)
class CentralityReport:
    scores: tuple
    central: int
    u_c: tuple
    thresholds: tuple  # (s0, s1, s2, s3, s4)

    def to_dict(self) -> dict:
        return {
            "scores": list(self.scores),
            "central": self.central,
            "u_c": list(self.u_c),
            "thresholds": {f"s{k}": v for k, v in enumerate(self.thresholds)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "CentralityReport":
        th = d["thresholds"]
        return cls(tuple(d["scores"]), int(d["central"]), tuple(d["u_c"]),
                   tuple(th[f"s{k}"] for k in range(5)))


def _cost_matrix(w: WeightedMatrix, cost: EdgeCost) -> np.ndarray:
    a = w.entries
    finite = a <= w.cap
    if cost == "distance":
        c = np.where(finite, a, np.inf)
    elif cost == "strength":
        # literal reciprocal; weights below EPS are lifted to EPS first
        c = np.where(finite, 1.0 / np.maximum(a, EPS), np.inf)
    else:
        raise InvalidInputError(f"unknown edge cost convention {cost!r}")
    np.fill_diagonal(c, np.inf)
    return c


def all_path_costs(w: WeightedMatrix, cost: EdgeCost = "distance") -> np.ndarray:
    """All-pairs shortest path costs; unreachable pairs are ``inf``."""
    g = csgraph_from_dense(_cost_matrix(w, cost), null_value=np.inf)
    # the networks are dense, where Floyd-Warshall beats repeated Dijkstra
    d = floyd_warshall(g, directed=False)
    np.fill_diagonal(d, 0.0)
    return d


def path_costs(w: WeightedMatrix, i: int, cost: EdgeCost = "distance") -> np.ndarray:
    """Single-source shortest path costs from node ``i``.

    ``cost="distance"`` uses the weight itself as the edge length;
    ``cost="strength"`` uses ``1 / weight`` (weights are then read as tie
    strengths).
    """
    if not 0 <= i < w.n:
        raise InvalidInputError(f"node {i} out of range for n={w.n}")
    g = csgraph_from_dense(_cost_matrix(w, cost), null_value=np.inf)
    d = dijkstra(g, directed=False, indices=i)
    d[i] = 0.0
    return d


def closeness(w: WeightedMatrix, cost: EdgeCost = "distance") -> np.ndarray:
    """Closeness ``1 / sum_j delta(i, j)`` over reachable ``j != i``.

    A node that reaches nothing scores 0.
    """
    if w.n < 2:
        raise InvalidInputError("closeness needs at least 2 nodes")
    d = all_path_costs(w, cost)
    reachable = np.isfinite(d)
    np.fill_diagonal(reachable, False)
    total = np.where(reachable, d, 0.0).sum(axis=1)
    scores = np.zeros(w.n)
    pos = total > 0
    scores[pos] = 1.0 / total[pos]
    # reaching others only through zero-cost edges: 1/0
    scores[~pos & reachable.any(axis=1)] = np.inf
    return scores


def select_central(scores) -> int:
    """Smallest index attaining the maximum score."""
    s = np.asarray(scores, dtype=float)
    if s.size == 0:
        raise InvalidInputError("no scores")
    return int(np.flatnonzero(s == s.max())[0])


def incident_weights(w: WeightedMatrix, node: int) -> np.ndarray:
    """Sorted finite weights of the edges at ``node`` (the series ``u_c``)."""
    row = np.delete(w.entries[node], node)
    return np.sort(row[row <= w.cap])


def quantile_threshold(u_c, rank) -> float:
    """Nearest-rank quantile of the sorted series ``u_c``.

    ``min``/``max`` are the end points; ``qk`` is the element at 1-based
    position ``ceil(k/4 * len(u_c))``, so the threshold is always one of the
    observed weights.
    """
    rank = ThresholdSpec.parse(rank)
    u = np.asarray(u_c, dtype=float)
    if u.size == 0:
        raise InvalidInputError("u_c is empty")
    if rank is ThresholdSpec.FULL:
        raise InvalidInputError("rank 'full' has no threshold")
    if rank is ThresholdSpec.MIN:
        return float(u[0])
    if rank is ThresholdSpec.MAX:
        return float(u[-1])
    k = {ThresholdSpec.Q1: 1, ThresholdSpec.Q2: 2, ThresholdSpec.Q3: 3}[rank]
    pos = max(1, math.ceil(k * u.size / 4))
    return float(u[pos - 1])


def centrality_report(w: WeightedMatrix, cost: EdgeCost = "distance",
                      central: Optional[int] = None) -> CentralityReport:
    if central is None:
        scores = closeness(w, cost)
        c = select_central(scores)
    else:
        scores, c = (), int(central)
    u = incident_weights(w, c)
    th = tuple(quantile_threshold(u, r) for r in RANKS) if u.size else (math.nan,) * 5
    return CentralityReport(tuple(float(x) for x in scores), c,
                            tuple(float(x) for x in u), th)


def central_subnetwork(w: WeightedMatrix, rank, cost: EdgeCost = "distance",
                       central: Optional[int] = None
                       ) -> tuple[WeightedMatrix, CentralityReport]:
    """Prune ``w`` at the ``rank`` threshold of its central node's incident weights.

    Returns the pruned matrix and the report used to build it. ``rank='full'``
    returns ``w`` unchanged. Pass ``central`` to skip the closeness step and
    use a given node instead.
    """
    rank = ThresholdSpec.parse(rank)
    if w.n < 2:
        raise InvalidInputError("central subnetwork needs at least 2 nodes")
    report = centrality_report(w, cost, central)
    if rank is ThresholdSpec.FULL:
        return w, report
    if not report.u_c:
        # central node is isolated: there is no incident weight to threshold on
        raise InvalidInputError(f"central node {report.central} has no incident edges")
    s = report.thresholds[RANKS.index(rank)]
    if s <= 0:
        # zero threshold: the >= rule prunes every edge
        a = np.full_like(w.entries, w.sentinel)
        np.fill_diagonal(a, 0.0)
        return WeightedMatrix(a, w.cap), report
    return apply_threshold(w, s), report
