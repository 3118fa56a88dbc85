"""End-to-end runs of the CLI on the bundled synthetic price files.

Writes series CSVs and comparison JSON under ``results/`` (created if
needed) and prints the comparison rows.
"""
import argparse
from pathlib import Path

from centralnet.cli import main as cli

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(ROOT / "results"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    data = ROOT / "data"

    # correlation networks over a sliding 60-day window
    djia = str(data / "djia_like.csv")
    for rank in ("q1", "q2", "q3"):
        code = cli(["compare", "--in", djia, "--mode", "price-corr", "--window", "60",
                    "--threshold-rank", rank, "--out", str(out / f"djia_{rank}.json"),
                    "--series-out", f"{out / 'djia_full.csv'},{out / f'djia_{rank}.csv'}",
                    "--repeats", "1"])
        if code:
            raise SystemExit(code)

    # 50-day point clouds of daily log returns
    crypto = str(data / "crypto_like.csv")
    code = cli(["analyze", "--in", crypto, "--mode", "logret-cloud", "--window", "50",
                "--out", str(out / "crypto_full.csv")])
    if code:
        raise SystemExit(code)
    print(f"series written to {out}")


if __name__ == "__main__":
    main()
