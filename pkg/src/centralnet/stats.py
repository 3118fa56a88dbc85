"""Agreement and timing statistics between full and central series."""
from __future__ import annotations

import csv
import io
import json
import statistics
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DegenerateColumnError, DimensionMismatchError, InvalidInputError

TAU_VARIANT = "tau-b"


def linreg(x, y) -> tuple[float, float, float]:
    """OLS fit of ``y = slope * x + intercept``. Returns ``(slope, intercept, r2)``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DimensionMismatchError(f"lengths differ: {x.shape} vs {y.shape}")
    if x.size < 3:
        raise InvalidInputError("linreg needs at least 3 samples")
    xc, yc = x - x.mean(), y - y.mean()
    sxx, syy = float(xc @ xc), float(yc @ yc)
    if sxx == 0:
        raise DegenerateColumnError("x", "regressor has zero variance")
    if syy == 0:
        raise DegenerateColumnError("y", "response has zero variance")
    slope = float(xc @ yc) / sxx
    intercept = float(y.mean() - slope * x.mean())
    resid = y - (slope * x + intercept)
    r2 = 1.0 - float(resid @ resid) / syy
    return slope, intercept, min(max(r2, 0.0), 1.0)


def adjusted_r2(r2: float, n: int) -> float:
    """``1 - (1 - r2)(n - 1)/(n - 2)`` for a single regressor."""
    if n < 3:
        raise InvalidInputError(f"adjusted R^2 needs n >= 3, got {n}")
    return 1.0 - (1.0 - r2) * (n - 1) / (n - 2)


def kendall_tau(x, y) -> float:
    """Kendall's tau-b (tie corrected)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DimensionMismatchError(f"lengths differ: {x.shape} vs {y.shape}")
    if x.size < 2:
        raise InvalidInputError("kendall_tau needs at least 2 samples")
    iu, ju = np.triu_indices(x.size, k=1)
    dx = np.sign(x[ju] - x[iu])
    dy = np.sign(y[ju] - y[iu])
    s = float(np.sum(dx * dy))
    n0 = iu.size
    tx, ty = float(np.sum(dx == 0)), float(np.sum(dy == 0))
    denom = np.sqrt((n0 - tx) * (n0 - ty))
    if denom == 0:
        return float("nan")
    return s / denom


@dataclass
class SeriesComparison:
    x: list
    x_tilde: list
    slope: float
    intercept: float
    r2: float
    r2_adj: float
    kendall_tau: float
    avg_pruned_pct: float
    time_ratio: float
    full_seconds: float = float("nan")
    central_seconds: float = float("nan")
    pruning_seconds: float = float("nan")
    degenerate_regressor: bool = False
    threshold: str = ""
    metadata: dict = field(default_factory=dict)

    @property
    def time_ratio_with_pruning(self) -> float:
        return (self.central_seconds + self.pruning_seconds) / self.full_seconds

    def to_dict(self) -> dict:
        d = asdict(self)
        d["time_ratio_with_pruning"] = self.time_ratio_with_pruning
        return d

    def to_json(self, **extra) -> str:
        d = self.to_dict()
        d.update(extra)
        return json.dumps(d, indent=2, default=float)

    CSV_COLUMNS = ("threshold", "time_ratio", "r2_adj", "avg_pruned_pct", "kendall_tau")

    def to_csv_row(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.CSV_COLUMNS)
        w.writerow([self.threshold, f"{self.time_ratio:.4g}", f"{self.r2_adj:.4f}",
                    f"{self.avg_pruned_pct:.2f}", f"{self.kendall_tau:.4f}"])
        return buf.getvalue()


def compare(x, x_tilde, timings: Optional[dict] = None,
            pruned_fractions: Sequence[float] = (), threshold: str = "") -> SeriesComparison:
    """Regress the full series ``x`` on the central series ``x_tilde``.

    ``timings`` holds ``full`` and ``central`` wall-clock seconds and may
    add ``pruning``. A constant ``x_tilde`` explains nothing: it yields
    ``r2 = 0`` and sets ``degenerate_regressor``.
    """
    x = np.asarray(x, dtype=float)
    xt = np.asarray(x_tilde, dtype=float)
    if x.shape != xt.shape:
        raise DimensionMismatchError(f"series lengths differ: {x.size} vs {xt.size}")
    degenerate = False
    try:
        slope, intercept, r2 = linreg(xt, x)
    except DegenerateColumnError as err:
        if err.column != "x":
            raise
        degenerate = True
        slope, intercept, r2 = 0.0, float(x.mean()), 0.0
    timings = timings or {}
    full = float(timings.get("full", float("nan")))
    central = float(timings.get("central", float("nan")))
    pf = np.asarray(pruned_fractions, dtype=float)
    return SeriesComparison(
        x=x.tolist(), x_tilde=xt.tolist(),
        slope=slope, intercept=intercept, r2=r2,
        r2_adj=adjusted_r2(r2, x.size),
        kendall_tau=kendall_tau(x, xt),
        avg_pruned_pct=float(100 * pf.mean()) if pf.size else 0.0,
        time_ratio=central / full if full > 0 else float("nan"),
        full_seconds=full, central_seconds=central,
        pruning_seconds=float(timings.get("pruning", 0.0)),
        degenerate_regressor=degenerate, threshold=threshold,
    )


def median_time(fn: Callable[[], object], repeats: int = 3):
    """Run ``fn`` ``repeats`` times; return ``(last result, median seconds)``."""
    times, result = [], None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return result, statistics.median(times)
