"""Write the bundled synthetic price files used by the end-to-end demos.

``data/crypto_like.csv``: 4 assets x 1275 daily closes (so 1274 log returns).
``data/djia_like.csv``: 30 assets x 760 daily closes from a one-factor model
whose factor loading jumps in the last quarter, mimicking a stress episode.

Neither file is real market data.
"""
import argparse
from pathlib import Path

import numpy as np


def _write(path, prices, names, start="2018-01-01"):
    dates = np.datetime64(start) + np.arange(prices.shape[0])
    with open(path, "w") as fh:
        fh.write(",".join(["date", *names]) + "\n")
        for d, row in zip(dates, prices):
            fh.write(",".join([str(d), *(f"{v:.6f}" for v in row)]) + "\n")


def crypto_like(rng, k=1275):
    vol = np.array([0.04, 0.05, 0.06, 0.045])
    corr = np.full((4, 4), 0.6) + 0.4 * np.eye(4)
    z = rng.standard_normal((k - 1, 4)) @ np.linalg.cholesky(corr).T
    # heavier tails via a random volatility multiplier
    r = z * vol * np.sqrt(rng.gamma(3.0, 1 / 3.0, (k - 1, 1)))
    start = np.array([8000.0, 300.0, 0.3, 60.0])
    return start * np.exp(np.vstack([np.zeros(4), np.cumsum(r, axis=0)]))


def djia_like(rng, k=760, n=30):
    factor = rng.standard_normal(k - 1) * 0.01
    beta = np.where(np.arange(k - 1)[:, None] < int(0.75 * k), 0.3, 1.2) * rng.uniform(0.7, 1.3, n)
    r = beta * factor[:, None] + rng.standard_normal((k - 1, n)) * 0.012
    return rng.uniform(20, 300, n) * np.exp(np.vstack([np.zeros(n), np.cumsum(r, axis=0)]))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "data"))
    ap.add_argument("--seed", type=int, default=20200101)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(args.seed)
    _write(out / "crypto_like.csv", crypto_like(rng), ["BTC", "ETH", "XRP", "LTC"])
    _write(out / "djia_like.csv", djia_like(rng), [f"S{j:02d}" for j in range(30)])
    print(f"wrote {out / 'crypto_like.csv'} and {out / 'djia_like.csv'}")


if __name__ == "__main__":
    main()
