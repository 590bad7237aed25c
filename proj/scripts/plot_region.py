"""Plot feasible conjugate-pole regions from `posreal region-scan` CSV files.

    posreal region-scan --N 3 --out psi3.csv
    python scripts/plot_region.py psi3.csv psi4.csv psi5.csv -o regions.png
"""

import argparse
import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def load(path):
    xs, ys, ok, n = [], [], [], None
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            xs.append(float(row["x"]))
            ys.append(float(row["y"]))
            ok.append(row["feasible"].strip().lower() in ("1", "true"))
            n = int(row["N"])
    return np.array(xs), np.array(ys), np.array(ok), n


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("csv", nargs="+", help="region-scan outputs, smallest N first")
    ap.add_argument("-o", "--out", default="regions.png")
    args = ap.parse_args()

    fig, ax = plt.subplots(figsize=(6, 6))
    t = np.linspace(0, 2 * np.pi, 400)
    ax.plot(np.cos(t), np.sin(t), color="0.6", lw=0.8)
    # Larger N first so the nested smaller regions stay visible on top.
    for path in reversed(args.csv):
        x, y, ok, n = load(path)
        ax.scatter(x[ok], y[ok], s=2, label=f"N = {n}")
    ax.set_aspect("equal")
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    ax.set_xlabel("Re p")
    ax.set_ylabel("Im p")
    ax.legend(markerscale=5, loc="lower left")
    fig.savefig(args.out, dpi=150, bbox_inches="tight")


if __name__ == "__main__":
    main()
