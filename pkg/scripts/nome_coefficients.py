"""Taylor coefficients of exp(pi i tau(x)) in w = (1 - x)/16.

Compares the exact series recursion with coefficients recovered numerically
from tau_of_x on a small circle, and reports how well the truncated series
tracks the nome as |1 - x| grows.
"""

import numpy as np

from p6tau import modular


def main(order=8):
    exact = modular.nome_series_coefficients(order)
    numeric = modular.nome_taylor_from_tau(min(order, 6))
    print(" k   exact        from tau(x)")
    for k, c in enumerate(exact):
        num = f"{numeric[k].real:.6f}" if k < len(numeric) else ""
        print(f"{k:2d}   {str(c):<12s} {num}")
    print("\n |1-x|   series(order 12) vs exp(pi i tau(x))")
    for r in (0.05, 0.2, 0.5, 0.8, 0.95):
        x = 1 - r * np.exp(0.3j)
        q = modular.nome(modular.tau_of_x(x))
        err = abs(modular.nome_series(x, order=12) - q) / abs(q)
        print(f" {r:4.2f}    {err:.2e}")


if __name__ == "__main__":
    main()
