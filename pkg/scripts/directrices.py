"""Two pairs of directrices (fixed n, fixed m) for a Picard solution."""

import argparse
from dataclasses import dataclass, field

import numpy as np

from p6tau.painleve import InitialData, poles


@dataclass(frozen=True)
class DirectrixConfig:
    A: complex = -195.45 + 103.29j
    B: complex = -6.710 + 79.98j
    fixed_n: tuple = (12, 13)
    fixed_m: tuple = (129, 130)
    span: range = field(default_factory=lambda: range(-30, 71))


def families(cfg):
    data = InitialData.from_tau_form(cfg.A, cfg.B)
    out = {}
    for n in cfg.fixed_n:
        out[f"n={n}"] = poles(data, cfg.span, range(n, n + 1))
    for m in cfg.fixed_m:
        out[f"m={m}"] = poles(data, range(m, m + 1), cfg.span)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--show", type=int, default=3, help="points printed per family")
    args = ap.parse_args()
    for label, pl in families(DirectrixConfig()).items():
        xs = np.array([x for _, x in pl.points])
        print(f"{label:6s} points={len(pl):3d} filtered={pl.filtered:3d} unresolved={pl.unresolved:3d}"
              f"  |x| in [{np.abs(xs).min():.3g}, {np.abs(xs).max():.3g}]")
        for idx, x in pl.points[: args.show]:
            print(f"    (m={idx.m}, n={idx.n})  x = {x.real:+.6f} {x.imag:+.6f}i")


if __name__ == "__main__":
    main()
