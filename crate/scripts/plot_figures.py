"""Plot r_p(a) from the CSVs written by `monocurv figures`.

Usage: python scripts/plot_figures.py [data_dir]
Requires matplotlib.
"""
import csv
import sys
from pathlib import Path

import matplotlib.pyplot as plt

FIGURES = [("figure1.csv", "p = 1 + 1e-1"), ("figure2.csv", "p = 1 + 1e-6")]


def load(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [float(r["a"]) for r in rows], [float(r["r"]) for r in rows]


def main():
    data = Path(sys.argv[1] if len(sys.argv) > 1 else "data")
    for name, title in FIGURES:
        a, r = load(data / name)
        fig, ax = plt.subplots(figsize=(5, 3.5))
        ax.plot(a, r)
        ax.set_xlabel("a")
        ax.set_ylabel("r(a)")
        ax.set_title(title)
        fig.tight_layout()
        fig.savefig(data / name.replace(".csv", ".png"), dpi=150)


if __name__ == "__main__":
    main()
