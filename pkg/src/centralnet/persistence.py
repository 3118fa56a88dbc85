"""Persistence diagrams of the clique (Rips) filtration of a weighted graph.

Vertices enter at 0, an edge enters at its weight and a triangle at the
largest weight among its three edges. Edges heavier than the filtration's
max-scale (in particular sentinel entries) never enter. Classes still alive
at the max-scale are reported with death equal to the max-scale and flagged
as essential.

Dimension 0 is a union-find sweep over the sorted edges. Dimension 1 is the
standard left-to-right column reduction of the triangle boundary matrix
over GF(2).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import ConfigError, InvalidInputError
from .graph import WeightedMatrix

MaxScale = Union[None, float, str]


@dataclass(frozen=True)
class FiltrationConfig:
    """``max_scale`` is a number, ``"cap"`` (the matrix cap) or ``None``.

    ``None`` means the largest finite edge weight of the matrix being
    filtered, falling back to the matrix cap for edgeless graphs.
    """

    max_dim: int = 0
    max_scale: MaxScale = None

    def __post_init__(self):
        if self.max_dim not in (0, 1):
            raise ConfigError(f"max_dim must be 0 or 1, got {self.max_dim}")
        if isinstance(self.max_scale, str):
            if self.max_scale != "cap":
                raise ConfigError(f"unknown max_scale policy {self.max_scale!r}")
        elif self.max_scale is not None and not self.max_scale > 0:
            raise ConfigError(f"max_scale must be > 0, got {self.max_scale}")

    def resolve(self, w: WeightedMatrix) -> float:
        if self.max_scale is None:
            m = w.max_weight()
            return m if m is not None and m > 0 else w.cap
        if self.max_scale == "cap":
            return w.cap
        return float(self.max_scale)


@dataclass(frozen=True, eq=False)
class PersistenceDiagram:
    dim: int
    pairs: np.ndarray
    essential: np.ndarray = field(default=None)
    max_scale: Optional[float] = None

    def __post_init__(self):
        p = np.asarray(self.pairs, dtype=float).reshape(-1, 2)
        e = (np.zeros(len(p), dtype=bool) if self.essential is None
             else np.asarray(self.essential, dtype=bool).reshape(-1))
        if e.shape[0] != p.shape[0]:
            raise InvalidInputError("essential mask length differs from pair count")
        if np.any(p[:, 0] > p[:, 1]):
            raise InvalidInputError("diagram has a pair with birth > death")
        order = np.lexsort((p[:, 1], p[:, 0]))
        p, e = p[order], e[order]
        p.setflags(write=False)
        e.setflags(write=False)
        object.__setattr__(self, "pairs", p)
        object.__setattr__(self, "essential", e)

    def __len__(self):
        return self.pairs.shape[0]

    def __eq__(self, other):
        if not isinstance(other, PersistenceDiagram):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.pairs, other.pairs)

    def __repr__(self):
        return f"PersistenceDiagram(dim={self.dim}, n_pairs={len(self)})"

    def to_dict(self) -> dict:
        d = {"dim": self.dim, "pairs": self.pairs.tolist()}
        if self.essential.any():
            d["essential"] = np.flatnonzero(self.essential).tolist()
        if self.max_scale is not None:
            d["max_scale"] = self.max_scale
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "PersistenceDiagram":
        pairs = np.asarray(d["pairs"], dtype=float).reshape(-1, 2)
        ess = np.zeros(len(pairs), dtype=bool)
        ess[d.get("essential", [])] = True
        return cls(int(d["dim"]), pairs, ess, d.get("max_scale"))


def _sorted_edges(w: WeightedMatrix, max_scale: float):
    i, j, wt = w.edges()
    keep = wt <= max_scale
    i, j, wt = i[keep], j[keep], wt[keep]
    order = np.lexsort((j, i, wt))
    return i[order], j[order], wt[order]


def _h0_sweep(n, ei, ej, ew, max_scale):
    """Union-find over sorted edges. Returns (dim-0 pairs, essential mask, cycle-edge mask)."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    deaths = []
    creates_cycle = np.zeros(len(ew), dtype=bool)
    for k, (a, b, wt) in enumerate(zip(ei.tolist(), ej.tolist(), ew.tolist())):
        ra, rb = find(a), find(b)
        if ra == rb:
            creates_cycle[k] = True
            continue
        # elder rule: the component whose representative has the lower index survives
        if ra < rb:
            parent[rb] = ra
        else:
            parent[ra] = rb
        deaths.append(wt)
    n_alive = n - len(deaths)
    pairs = np.zeros((n, 2))
    pairs[: len(deaths), 1] = deaths
    pairs[len(deaths):, 1] = max_scale
    essential = np.zeros(n, dtype=bool)
    essential[len(deaths):] = True
    assert n_alive == int(essential.sum())
    return pairs, essential, creates_cycle


def h0_diagram(w: WeightedMatrix, cfg: Optional[FiltrationConfig] = None) -> PersistenceDiagram:
    """Dimension-0 diagram: one ``(0, d)`` pair per vertex."""
    cfg = cfg or FiltrationConfig()
    m = cfg.resolve(w)
    ei, ej, ew = _sorted_edges(w, m)
    pairs, ess, _ = _h0_sweep(w.n, ei, ej, ew, m)
    return PersistenceDiagram(0, pairs, ess, m)


def _triangles(n, ei, ej, ew):
    """Triangles of the graph as (value, edge ids) sorted in filtration order.

    Edge ids are positions in the sorted edge list, so the pivot of a column
    is simply its largest id.
    """
    eid = {}
    nbrs = [set() for _ in range(n)]
    for k, (a, b) in enumerate(zip(ei.tolist(), ej.tolist())):
        eid[(a, b)] = k
        nbrs[a].add(b)
        nbrs[b].add(a)
    tris = []
    for (a, b), kab in eid.items():
        for c in sorted(nbrs[a] & nbrs[b]):
            if c <= b:
                continue
            kac, kbc = eid[(a, c)], eid[(b, c)]
            top = max(kab, kac, kbc)
            tris.append((top, a, b, c, (kab, kac, kbc)))
    # the largest edge id fixes the value; ties between triangles go lexicographic
    tris.sort(key=lambda t: (ew[t[0]], t[0], t[1], t[2], t[3]))
    return tris


def _h1_pairs(n, ei, ej, ew, creates_cycle, max_scale):
    tris = _triangles(n, ei, ej, ew)
    pivot_of = {}  # edge id -> reduced column (set of edge ids)
    killed = {}    # edge id -> triangle value
    for top, _a, _b, _c, edges in tris:
        col = set(edges)
        while col:
            low = max(col)
            other = pivot_of.get(low)
            if other is None:
                break
            col ^= other
        if col:
            low = max(col)
            pivot_of[low] = col
            killed[low] = float(ew[top])
    births, deaths, ess = [], [], []
    for k in np.flatnonzero(creates_cycle).tolist():
        b = float(ew[k])
        if k in killed:
            d = killed[k]
            if d > b:
                births.append(b)
                deaths.append(d)
                ess.append(False)
        else:
            births.append(b)
            deaths.append(max_scale)
            ess.append(True)
    return np.column_stack([births, deaths]) if births else np.zeros((0, 2)), np.array(ess, bool)


def rips_diagrams(w: WeightedMatrix, cfg: Optional[FiltrationConfig] = None) -> list[PersistenceDiagram]:
    """Diagrams in dimensions ``0..cfg.max_dim`` (dimension-1 zero-length pairs dropped)."""
    cfg = cfg or FiltrationConfig(max_dim=1)
    m = cfg.resolve(w)
    ei, ej, ew = _sorted_edges(w, m)
    pairs0, ess0, creates_cycle = _h0_sweep(w.n, ei, ej, ew, m)
    out = [PersistenceDiagram(0, pairs0, ess0, m)]
    if cfg.max_dim >= 1:
        p1, e1 = _h1_pairs(w.n, ei, ej, ew, creates_cycle, m)
        out.append(PersistenceDiagram(1, p1, e1, m))
    return out


def betti_at(w: WeightedMatrix, a: float, dim: int,
             cfg: Optional[FiltrationConfig] = None) -> int:
    """Betti number of the clique complex at filtration value ``a``.

    Counts pairs with ``birth <= a < death``; essential classes count as
    alive at the max-scale itself.
    """
    cfg = cfg or FiltrationConfig(max_dim=max(dim, 0))
    if dim not in (0, 1):
        raise InvalidInputError(f"dimension {dim} not supported")
    if cfg.max_dim < dim:
        cfg = FiltrationConfig(max_dim=dim, max_scale=cfg.max_scale)
    m = cfg.resolve(w)
    if not 0 <= a <= m:
        raise InvalidInputError(f"a={a} outside [0, {m}]")
    dg = rips_diagrams(w, cfg)[dim]
    b, d = dg.pairs[:, 0], dg.pairs[:, 1]
    alive = (b <= a) & ((a < d) | dg.essential)
    return int(alive.sum())
