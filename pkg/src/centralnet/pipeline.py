"""End-to-end analysis of dynamic networks.

dynamic network -> (central subnetwork per step) -> persistence diagram per
step -> Wasserstein distance of each diagram to the reference diagram.
"""
from __future__ import annotations

import json
import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Literal, Optional, Sequence

import numpy as np

from . import __version__
from .centrality import EdgeCost, ThresholdSpec, central_subnetwork, centrality_report
from .errors import ConfigError, InvalidInputError
from .graph import (
    WeightedMatrix,
    arithmetic_returns,
    correlation_matrix,
    correlation_to_distance,
    from_point_cloud,
    log_returns,
    pruned_fraction,
    read_matrix_csv,
    read_price_csv,
    write_matrix_csv,
)
from .persistence import FiltrationConfig, PersistenceDiagram, rips_diagrams
from .stats import TAU_VARIANT, SeriesComparison, compare, median_time
from .wasserstein import GROUND_METRIC, wasserstein

Mode = Literal["matrix-dir", "price-corr", "logret-cloud"]
_MATRIX_FILE = re.compile(r"^t_(\d+)\.csv$")


@dataclass(frozen=True)
class DynamicNetwork:
    times: tuple
    matrices: tuple
    node_labels: Optional[tuple] = None
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "times", tuple(self.times))
        object.__setattr__(self, "matrices", tuple(self.matrices))
        if len(self.times) != len(self.matrices):
            raise InvalidInputError("times and matrices differ in length")
        if not self.matrices:
            raise InvalidInputError("dynamic network is empty")
        n, cap = self.matrices[0].n, self.matrices[0].cap
        for t, m in zip(self.times, self.matrices):
            if m.n != n or m.cap != cap:
                raise InvalidInputError(f"matrix at time {t} has n={m.n}, cap={m.cap}; "
                                        f"expected n={n}, cap={cap}")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise InvalidInputError("times must be strictly increasing")
        if self.node_labels is not None and len(self.node_labels) != n:
            raise InvalidInputError("node_labels length differs from node count")

    def __len__(self):
        return len(self.matrices)

    @property
    def n(self) -> int:
        return self.matrices[0].n

    def relabel(self, perm) -> "DynamicNetwork":
        """Permute node order: new node ``k`` is old node ``perm[k]``."""
        perm = np.asarray(perm)
        mats = tuple(WeightedMatrix(m.entries[np.ix_(perm, perm)], m.cap) for m in self.matrices)
        labels = None if self.node_labels is None else tuple(self.node_labels[i] for i in perm)
        return DynamicNetwork(self.times, mats, labels, dict(self.metadata))


@dataclass(frozen=True)
class PipelineConfig:
    threshold_rank: ThresholdSpec = ThresholdSpec.FULL
    reference_index: int = 0
    max_dim: int = 0
    p: int = 2
    cap: Optional[float] = None
    recompute_central_each_step: bool = True
    window: Optional[int] = None
    stride: int = 1
    mode: Mode = "matrix-dir"
    edge_cost: EdgeCost = "distance"
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "threshold_rank", ThresholdSpec.parse(self.threshold_rank))
        if self.max_dim not in (0, 1):
            raise ConfigError("max_dim must be 0 or 1")
        if self.p < 1:
            raise ConfigError("p must be >= 1")
        if self.cap is not None and not self.cap > 0:
            raise ConfigError("cap must be > 0")
        if self.stride < 1:
            raise ConfigError("stride must be >= 1")
        if self.window is not None and self.window < 2 and self.mode == "price-corr":
            raise ConfigError("price-corr window must be >= 2")
        if self.window is not None and self.window < 1:
            raise ConfigError("window must be >= 1")
        if self.mode not in ("matrix-dir", "price-corr", "logret-cloud"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    def filtration(self) -> FiltrationConfig:
        return FiltrationConfig(max_dim=self.max_dim, max_scale=self.cap)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["threshold_rank"] = self.threshold_rank.value
        return d


# --- ingestion ---------------------------------------------------------------

def read_network_dir(path, cap: Optional[float] = None) -> DynamicNetwork:
    path = Path(path)
    files = sorted(((int(m.group(1)), f) for f in path.iterdir()
                    if (m := _MATRIX_FILE.match(f.name))), key=lambda t: t[0])
    if not files:
        raise InvalidInputError(f"{path}: no t_<index>.csv matrix files")
    meta_file = path / "meta.json"
    meta = json.loads(meta_file.read_text()) if meta_file.exists() else {}
    if cap is None:
        cap = meta.get("cap")
    mats = [read_matrix_csv(f, cap) for _, f in files]
    if cap is None:
        # one common cap so every step shares a filtration range
        common = max(m.cap for m in mats)
        mats = [WeightedMatrix(np.where(m.entries > m.cap, common + 1, m.entries), common)
                for m in mats]
    labels = None
    lab = path / "labels.txt"
    if lab.exists():
        labels = tuple(line.strip() for line in lab.read_text().splitlines() if line.strip())
    return DynamicNetwork(tuple(t for t, _ in files), tuple(mats), labels, meta)


def write_network_dir(net: DynamicNetwork, path) -> Path:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    width = max(4, len(str(max(net.times))))
    for t, m in zip(net.times, net.matrices):
        write_matrix_csv(m, path / f"t_{t:0{width}d}.csv")
    if net.node_labels is not None:
        (path / "labels.txt").write_text("\n".join(net.node_labels) + "\n")
    if net.metadata:
        (path / "meta.json").write_text(json.dumps({**net.metadata, "cap": net.matrices[0].cap},
                                                   indent=2))
    return path


def _windows(k: int, window: int, stride: int):
    if window is None:
        raise ConfigError("this mode requires a window length")
    if k < window:
        raise InvalidInputError(f"{k} return rows are fewer than the window {window}")
    return range(window, k + 1, stride)


def networks_from_prices(prices, config: PipelineConfig, labels=None) -> DynamicNetwork:
    """Windowed networks from a ``k x n`` price array (price-corr / logret-cloud)."""
    if config.mode == "price-corr":
        r = arithmetic_returns(prices).series
        cap = config.cap or 2.0
        ends = _windows(r.shape[0], config.window, config.stride)
        mats = [correlation_to_distance(correlation_matrix(r[e - config.window:e]), cap)
                for e in ends]
    elif config.mode == "logret-cloud":
        r = log_returns(prices).series
        ends = _windows(r.shape[0], config.window, config.stride)
        clouds = [from_point_cloud(r[e - config.window:e]) for e in ends]
        cap = config.cap or max(c.cap for c in clouds)
        mats = [WeightedMatrix(c.entries, cap) for c in clouds]
        labels = None  # nodes are trading days within the window
    else:
        raise ConfigError(f"mode {config.mode!r} does not read prices")
    # time index = last return row of the window (0-based)
    return DynamicNetwork(tuple(e - 1 for e in ends), tuple(mats),
                          tuple(labels) if labels else None)


def ingest(path, config: PipelineConfig) -> DynamicNetwork:
    if config.mode == "matrix-dir":
        return read_network_dir(path, config.cap)
    dates, names, prices = read_price_csv(path)
    net = networks_from_prices(prices, config, names)
    meta = {"source": str(path), "dates": [dates[t + 1] for t in net.times]}
    return DynamicNetwork(net.times, net.matrices, net.node_labels, meta)


# --- analysis ----------------------------------------------------------------

@dataclass
class StepResult:
    diagram: PersistenceDiagram
    pruned_fraction: float = 0.0
    central: Optional[int] = None


def central_networks(net: DynamicNetwork, config: PipelineConfig):
    """Central-subnetwork pruning of every step. Returns ``(matrices, central nodes)``."""
    rank = config.threshold_rank
    if rank is ThresholdSpec.FULL:
        return list(net.matrices), [None] * len(net)
    fixed = None
    if not config.recompute_central_each_step:
        ref = net.matrices[_ref_position(net, config)]
        fixed = centrality_report(ref, config.edge_cost).central
    out, centrals = [], []
    for m in net.matrices:
        pruned, rep = central_subnetwork(m, rank, config.edge_cost, central=fixed)
        out.append(pruned)
        centrals.append(rep.central)
    return out, centrals


def _ref_position(net: DynamicNetwork, config: PipelineConfig) -> int:
    ri = config.reference_index
    if ri in net.times:
        return net.times.index(ri)
    if 0 <= ri < len(net):
        return ri
    raise ConfigError(f"reference index {ri} is not a time of the network")


def _diagrams(mats: Sequence[WeightedMatrix], config: PipelineConfig) -> list:
    cfg = config.filtration()
    dim = config.max_dim

    def one(m):
        return rips_diagrams(m, cfg)[dim]

    if config.workers == 1:
        return [one(m) for m in mats]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(one, mats))


def diagram_series(net: DynamicNetwork, config: PipelineConfig) -> list[PersistenceDiagram]:
    mats, _ = central_networks(net, config)
    return _diagrams(mats, config)


def wasserstein_series(diagrams: Sequence[PersistenceDiagram], config: PipelineConfig,
                       reference: Optional[int] = None) -> np.ndarray:
    """Distances of every diagram to the reference diagram (position ``reference``)."""
    if not diagrams:
        raise InvalidInputError("no diagrams")
    ref_pos = config.reference_index if reference is None else reference
    ref = diagrams[ref_pos]

    def one(d):
        return 0.0 if d is ref else wasserstein(d, ref, config.p)

    if config.workers == 1:
        return np.array([one(d) for d in diagrams])
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        return np.array(list(pool.map(one, diagrams)))


def analyze(net: DynamicNetwork, config: PipelineConfig):
    """Run one pipeline. Returns ``(series, diagrams, pruned fractions)``."""
    mats, _ = central_networks(net, config)
    dgms = _diagrams(mats, config)
    series = wasserstein_series(dgms, config, _ref_position(net, config))
    pf = [pruned_fraction(a, b) for a, b in zip(net.matrices, mats)]
    return series, dgms, pf


def _timed_series(mats, config, ref_pos, repeats):
    def run():
        return wasserstein_series(_diagrams(mats, config), config, ref_pos)

    return median_time(run, repeats)


def metadata(config: PipelineConfig) -> dict:
    return {"ground_metric": GROUND_METRIC, "p": config.p,
            "cap": config.cap if config.cap is not None else "max-weight-per-step",
            "tau_variant": TAU_VARIANT, "edge_cost": config.edge_cost,
            "version": __version__}


def run_comparison(net: DynamicNetwork, rank, config: Optional[PipelineConfig] = None,
                   repeats: int = 3) -> SeriesComparison:
    """Full-network series vs central-subnetwork series at ``rank``.

    Timings cover diagram construction plus Wasserstein distances (median of
    ``repeats`` runs). The pruning step itself is timed separately.
    """
    config = config or PipelineConfig()
    rank = ThresholdSpec.parse(rank)
    if rank is ThresholdSpec.FULL:
        raise ConfigError("run_comparison needs a pruning rank, not 'full'")
    full_cfg = PipelineConfig(**{**config.__dict__, "threshold_rank": ThresholdSpec.FULL})
    cen_cfg = PipelineConfig(**{**config.__dict__, "threshold_rank": rank})
    ref_pos = _ref_position(net, config)

    t0 = time.perf_counter()
    mats, _ = central_networks(net, cen_cfg)
    pruning = time.perf_counter() - t0

    x, t_full = _timed_series(list(net.matrices), full_cfg, ref_pos, repeats)
    xt, t_cen = _timed_series(mats, cen_cfg, ref_pos, repeats)
    pf = [pruned_fraction(a, b) for a, b in zip(net.matrices, mats)]
    cmp = compare(x, xt, {"full": t_full, "central": t_cen, "pruning": pruning}, pf,
                  threshold=rank.value)
    cmp.metadata = {**metadata(config), "config": cen_cfg.to_dict()}
    return cmp


def write_series_csv(series, times, path) -> None:
    with Path(path).open("w") as fh:
        fh.write("t,wasserstein\n")
        for t, v in zip(times, series):
            fh.write(f"{t},{v:.17g}\n")


def read_series_csv(path) -> tuple[list, np.ndarray]:
    lines = Path(path).read_text().strip().splitlines()
    if lines[0].strip() != "t,wasserstein":
        raise InvalidInputError(f"{path}: bad series header {lines[0]!r}")
    ts, vs = [], []
    for ln in lines[1:]:
        t, v = ln.split(",")
        ts.append(int(t))
        vs.append(float(v))
    return ts, np.array(vs)
