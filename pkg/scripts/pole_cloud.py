"""Pole cloud of a Picard solution and where it accumulates.

Writes the points as CSV and prints a histogram of the distance from each
pole to the nearest fixed singularity {0, 1, infinity}.

    python scripts/pole_cloud.py --out pole_cloud.csv
"""

import argparse
import csv
from dataclasses import dataclass

import numpy as np

from p6tau.painleve import InitialData, poles


@dataclass(frozen=True)
class PoleCloudConfig:
    A: complex = 125.45 - 103.29j
    B: complex = 36.710 - 69.980j
    lo: int = -30
    hi: int = 70
    bins: tuple = (0.0, 0.01, 0.03, 0.1, 0.3, 1.0, np.inf)


def nearest_singularity(x):
    """Chordal-style distance to {0, 1, inf}: min(|x|, |x - 1|, 1/|x|)."""
    x = np.asarray(x)
    return np.minimum.reduce([np.abs(x), np.abs(x - 1), 1 / np.abs(x)])


def run(cfg):
    rng = range(cfg.lo, cfg.hi + 1)
    pl = poles(InitialData.from_tau_form(cfg.A, cfg.B), rng, rng)
    xs = np.array([x for _, x in pl.points])
    return pl, xs, nearest_singularity(xs)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", help="CSV path for the points")
    args = ap.parse_args()
    cfg = PoleCloudConfig()
    pl, xs, dist = run(cfg)
    print(f"points={len(pl)} filtered={pl.filtered} unresolved={pl.unresolved}")
    counts, edges = np.histogram(dist, bins=cfg.bins)
    for c, a, b in zip(counts, edges, edges[1:]):
        print(f"  [{a:5.2f}, {b:5.2f})  {c:6d}  {'#' * int(60 * c / max(counts.max(), 1))}")
    print(f"median distance {np.median(dist):.3f}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["m", "n", "re_x", "im_x"])
            for (idx, x) in pl.points:
                w.writerow([idx.m, idx.n, x.real, x.imag])


if __name__ == "__main__":
    main()
