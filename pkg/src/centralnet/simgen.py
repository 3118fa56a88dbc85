"""Seeded generators for the three simulated dynamic networks.

Every generator draws ``n_nodes`` sample vectors per network, takes their
Pearson correlation and maps it to ``sqrt(2(1 - C))`` distances.

Randomness: numpy's PCG64 bit generator. The master seed is expanded with
``SeedSequence.spawn`` so network ``t`` always uses child stream ``t``;
generation order and parallelism do not change the output.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .errors import ConfigError
from .graph import correlation_matrix, correlation_to_distance

Experiment = Literal["hub", "covariance", "ar1"]

DEFAULTS = {
    "hub": dict(n_networks=100, n_nodes=51, sample_len=10),
    "covariance": dict(n_networks=150, n_nodes=60, sample_len=10),
    "ar1": dict(n_networks=200, n_nodes=200, sample_len=20),
}
AR1_BURN_IN = 50


@dataclass(frozen=True)
class SimSpec:
    experiment: Experiment
    n_networks: Optional[int] = None
    n_nodes: Optional[int] = None
    sample_len: Optional[int] = None
    seed: int = 0
    alpha: float = 1.0
    phi: float = 0.7

    def __post_init__(self):
        if self.experiment not in DEFAULTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        for k, v in DEFAULTS[self.experiment].items():
            if getattr(self, k) is None:
                object.__setattr__(self, k, v)
        if min(self.n_networks, self.n_nodes, self.sample_len) < 1:
            raise ConfigError("counts must be >= 1")
        if self.n_nodes < 2 or self.sample_len < 2:
            raise ConfigError("need at least 2 nodes and 2 samples per node")
        if not self.alpha > 0:
            raise ConfigError("alpha must be > 0")
        if not abs(self.phi) < 1:
            raise ConfigError("|phi| must be < 1")
        if self.experiment == "ar1" and self.sample_len % 2:
            raise ConfigError("ar1 sample_len must be even (normal half + AR half)")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")

    def streams(self) -> list[np.random.Generator]:
        children = np.random.SeedSequence(self.seed).spawn(self.n_networks)
        return [np.random.Generator(np.random.PCG64(s)) for s in children]


def _redraw_flat(rng, draw, x):
    """Redraw zero-variance columns of ``x``; returns the number of redraws."""
    count = 0
    while True:
        flat = np.flatnonzero(np.ptp(x, axis=0) == 0)
        if flat.size == 0:
            return count
        for j in flat:
            x[:, j] = draw(j)
            count += 1


def hub_samples(rng: np.random.Generator, n_nodes: int = 51, sample_len: int = 10):
    """``n_nodes - 1`` standard-normal vectors plus a last one equal to their sum."""
    x = rng.standard_normal((sample_len, n_nodes - 1))
    redraws = _redraw_flat(rng, lambda j: rng.standard_normal(sample_len), x)
    return np.column_stack([x, x.sum(axis=1)]), redraws


def dvine_correlation(rng: np.random.Generator, d: int, alpha: float = 1.0,
                      graded: bool = True) -> np.ndarray:
    """Random ``d x d`` correlation matrix from D-vine partial correlations.

    The partial correlation of the pair ``(i, i+k)`` given the nodes in
    between is drawn as ``2 * Beta(a_k, a_k) - 1`` and the draws are turned
    into plain correlations with the standard recursion.

    With ``graded=True`` (the default) the shape grows towards the low
    levels, ``a_k = alpha + (d - 1 - k) / 2``; ``alpha = 1`` is then uniform
    over correlation matrices and the result stays well conditioned for
    large ``d``. ``graded=False`` uses ``a_k = alpha`` at every level, which
    is numerically singular already for a few dozen nodes when ``alpha`` is
    small.
    """
    def shape(k):
        return alpha + (d - 1 - k) / 2 if graded else alpha

    r = np.eye(d)
    for i in range(d - 1):
        r[i, i + 1] = r[i + 1, i] = 2 * rng.beta(shape(1), shape(1)) - 1
    for k in range(2, d):
        a_k = shape(k)
        for i in range(d - k):
            j = i + k
            mid = slice(i + 1, j)
            r2 = r[mid, mid]
            r1, r3 = r[i, mid], r[j, mid]
            s1 = np.linalg.solve(r2, r1)
            s3 = np.linalg.solve(r2, r3)
            scale = np.sqrt(max((1 - r1 @ s1) * (1 - r3 @ s3), 0.0))
            pij = 2 * rng.beta(a_k, a_k) - 1
            r[i, j] = r[j, i] = r1 @ s3 + pij * scale
    return r


def covariance_samples(rng: np.random.Generator, n_nodes: int = 60,
                       sample_len: int = 10, alpha: float = 1.0):
    """``sample_len`` draws from ``N(0, R)`` with a D-vine correlation ``R``."""
    r = dvine_correlation(rng, n_nodes, alpha)
    # the vine construction is always PD; a failure here is a bug, not bad luck
    try:
        chol = np.linalg.cholesky(r)
    except np.linalg.LinAlgError as err:
        raise RuntimeError("vine correlation matrix is not positive definite") from err
    x = rng.standard_normal((sample_len, n_nodes)) @ chol.T
    redraws = 0
    while np.any(np.ptp(x, axis=0) == 0):
        x = rng.standard_normal((sample_len, n_nodes)) @ chol.T
        redraws += 1
    return x, redraws, r


def ar1_series(rng: np.random.Generator, length: int, n_chains: int = 1,
               phi: float = 0.7, burn_in: int = AR1_BURN_IN) -> np.ndarray:
    """``length x n_chains`` AR(1) values ``y_t = phi y_{t-1} + e_t`` after a burn-in from 0."""
    eps = rng.standard_normal((burn_in + length, n_chains))
    y = np.zeros(n_chains)
    out = np.empty((length, n_chains))
    for t in range(burn_in + length):
        y = phi * y + eps[t]
        if t >= burn_in:
            out[t - burn_in] = y
    return out


def ar1_samples(rng: np.random.Generator, n_nodes: int = 200,
                sample_len: int = 20, phi: float = 0.7):
    """Per node: ``sample_len/2`` standard normals then as many AR(1) values."""
    half = sample_len // 2
    normal = rng.standard_normal((half, n_nodes))
    return np.vstack([normal, ar1_series(rng, half, n_nodes, phi)]), 0


def _network(samples):
    return correlation_to_distance(correlation_matrix(samples))


def generate(spec: SimSpec):
    """Build the :class:`~centralnet.pipeline.DynamicNetwork` described by ``spec``."""
    from .pipeline import DynamicNetwork

    mats, redraws = [], 0
    for rng in spec.streams():
        if spec.experiment == "hub":
            x, r = hub_samples(rng, spec.n_nodes, spec.sample_len)
        elif spec.experiment == "covariance":
            x, r, _ = covariance_samples(rng, spec.n_nodes, spec.sample_len, spec.alpha)
        else:
            x, r = ar1_samples(rng, spec.n_nodes, spec.sample_len, spec.phi)
        redraws += r
        mats.append(_network(x))
    meta = {"experiment": spec.experiment, "seed": spec.seed, "redraws": redraws,
            "n_networks": spec.n_networks, "n_nodes": spec.n_nodes,
            "sample_len": spec.sample_len}
    if spec.experiment == "covariance":
        meta["alpha"] = spec.alpha
    if spec.experiment == "ar1":
        meta["phi"] = spec.phi
    return DynamicNetwork(tuple(range(spec.n_networks)), tuple(mats), metadata=meta)


def _gen(kind, spec, kw):
    spec = spec or SimSpec(kind, **kw)
    if spec.experiment != kind:
        raise ConfigError(f"expected a {kind!r} spec, got {spec.experiment!r}")
    return generate(spec)


def gen_hub(spec: Optional[SimSpec] = None, **kw):
    return _gen("hub", spec, kw)


def gen_covariance(spec: Optional[SimSpec] = None, **kw):
    return _gen("covariance", spec, kw)


def gen_ar1(spec: Optional[SimSpec] = None, **kw):
    return _gen("ar1", spec, kw)
