"""Locate a pole of the second series and watch the Okamoto map remove it.

Near x* the Hitchin solution grows like c/(x - x*), while the backward
Okamoto image (a Picard-class solution) stays bounded.
"""

from p6tau import modular, painleve
from p6tau.painleve import InitialData


def main(A=0.1 + 0.6j, B=0.2, k=-1):
    data = InitialData.from_tau_form(A, B)
    tau_star = painleve.second_series_tau(data, k)
    x_star = painleve.second_pole_series(data, modular.x_of_tau(tau_star) + 0.01)
    print(f"tau* = {tau_star:.6f}   x* = {x_star:.8f}")
    print(f"|Btau_1(x*)| = {abs(painleve.tau_functions(data, x_star).btau1):.3e}")
    f = lambda s: painleve.hitchin_y_x(data, s)
    print("   eps      |y| eps      backward image")
    for eps in (1e-2, 1e-3, 1e-4, 1e-5):
        x = x_star + eps
        y, dy, _ = painleve.numerical_derivatives(f, x, "richardson", eps / 50)
        back = painleve.okamoto(y, dy, x, "backward")
        print(f"  {eps:.0e}   {abs(y) * eps:.6f}   {back:.8f}")
    print(f"Picard at x*: {painleve.picard_y(data, x_star):.8f}")


if __name__ == "__main__":
    main()
