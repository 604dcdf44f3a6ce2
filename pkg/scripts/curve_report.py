"""Residual table for every cataloged curve on a tau grid, plus the Schwarzian checks."""

import argparse

import numpy as np

from p6tau import curves


def grid(n_re=5, n_im=5, im=(0.8, 2.0)):
    return [complex(a, b) for a in np.linspace(-0.4, 0.4, n_re) for b in np.linspace(*im, n_im)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=5, help="grid points per axis")
    args = ap.parse_args()
    taus = grid(args.n, args.n)
    print(f"{'curve':8s} {'genus':>5s} {'max residual':>13s} {'median':>10s}")
    for cid in curves.CurveId:
        res = np.array([curves.parameterize(cid, t).residual for t in taus])
        genus = curves.CATALOG[cid].genus
        print(f"{cid.value:8s} {'-' if genus is None else genus:>5} {res.max():13.2e} {np.median(res):10.2e}")
    print()
    for t in (1.2j, 0.3 + 1.5j, -0.4 + 0.8j):
        c = curves.schwarzian_checks(t)
        print(f"tau={t}:  x(tau) {c.x_residual:.2e}   tau(s) {c.heun_residual:.2e}")


if __name__ == "__main__":
    main()
