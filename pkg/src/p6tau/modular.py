"""Modular quantities on the upper half-plane.

Nome, theta constants, the Dedekind eta function, the Weierstrass
quasi-period eta and invariants g2, g3 for the lattice with half-periods
(1, tau), the Klein invariant J, and the maps x <-> tau with
x = theta4^4 / theta3^4.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _qseries
from ._qseries import check_tau
from .errors import ConvergenceError, DomainError

PI = math.pi


@dataclass(frozen=True)
class ThetaConstants:
    v2: complex
    v3: complex
    v4: complex

    @property
    def jacobi_residual(self):
        return abs(self.v2**4 + self.v4**4 - self.v3**4)


@dataclass(frozen=True)
class ModularQuantities:
    eta_w: complex
    g2: complex
    g3: complex
    J: complex | None  # None when the discriminant underflows

    @property
    def discriminant(self):
        return self.g2**3 - 27 * self.g3**2


def nome(tau):
    """q = exp(pi i tau)."""
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError(f"tau={tau} is not in the upper half-plane")
    return cmath.exp(1j * PI * tau)


def theta_constants(tau):
    v2, v3, v4 = _qseries.theta_constant_series(tau)[0]
    return ThetaConstants(v2, v3, v4)


def theta_constants_dtau(tau, order=1):
    """Theta constants and their tau-derivatives, as ThetaConstants records."""
    return [ThetaConstants(*row) for row in _qseries.theta_constant_series(tau, order)]


def dedekind_eta(tau):
    """Dedekind eta by its product formula."""
    tau = check_tau(tau)
    q2 = cmath.exp(2j * PI * tau)
    prod = 1.0 + 0j
    k = 1
    term = q2
    while True:
        prod *= 1 - term
        if abs(term) < _qseries.REL_TOL:
            break
        k += 1
        term = term * q2
        if k > 64 * _qseries.max_terms():
            raise ConvergenceError(f"eta product did not converge at tau={tau}")
    return cmath.exp(1j * PI * tau / 12) * prod


def dedekind_eta_theta(tau):
    """Dedekind eta as -i exp(pi i tau/3) theta1(tau | 3 tau)."""
    tau = check_tau(tau)
    t1 = _qseries.theta_series(tau, 3 * tau)[0]
    return -1j * cmath.exp(1j * PI * tau / 3) * t1


def weierstrass_eta(tau):
    """eta(tau) = zeta(1 | tau) from its Lambert series."""
    s = _qseries.lambert_sums(tau, ["sq"])["sq"]
    return 2 * PI**2 * (1 / 24 - s)


def g2_g3_series(tau):
    s = _qseries.lambert_sums(tau, [3, 5])
    g2 = 20 * PI**4 * (1 / 240 + s[3])
    g3 = 7 / 3 * PI**6 * (1 / 504 - s[5])
    return g2, g3


def g2_g3_theta(tau):
    c = theta_constants(tau)
    a, b, d = c.v2**4, c.v3**4, c.v4**4
    g2 = PI**4 / 24 * (a * a + b * b + d * d)
    g3 = PI**6 / 432 * (a + b) * (b + d) * (d - a)
    return g2, g3


def klein_j(g2, g3, rel_floor=1e-300):
    disc = g2**3 - 27 * g3**2
    if abs(disc) <= rel_floor * max(abs(g2) ** 3, 1.0):
        return None
    return g2**3 / disc


def modular_quantities(tau):
    tau = check_tau(tau)
    eta_w = weierstrass_eta(tau)
    g2, g3 = g2_g3_series(tau)
    return ModularQuantities(eta_w, g2, g3, klein_j(g2, g3))


def eta_prime(tau, eta_w=None):
    """zeta(tau | tau) via the Legendre relation eta' = tau eta - pi i / 2."""
    if eta_w is None:
        eta_w = weierstrass_eta(tau)
    return tau * eta_w - 0.5j * PI


def eta_w_dtau(eta_w, g2):
    """d eta / d tau = (i/pi) (2 eta^2 - g2/6)."""
    return 1j / PI * (2 * eta_w**2 - g2 / 6)


def g2_dtau(eta_w, g2, g3):
    return 1j / PI * (8 * eta_w * g2 - 12 * g3)


def klein_j_dtau(J, g2, g3):
    """dJ/d tau = -36 i J g3 / (pi g2)."""
    return -36j * J * g3 / (PI * g2)


def x_of_tau(tau):
    c = theta_constants(tau)
    return (c.v4 / c.v3) ** 4


def dx_dtau(tau):
    """d x / d tau = pi i x (x - 1) theta3^4."""
    c = theta_constants(tau)
    x = (c.v4 / c.v3) ** 4
    return 1j * PI * x * (x - 1) * c.v3**4


def tau_of_x(x):
    """tau = i K(sqrt x) / K'(sqrt x) on the principal domain."""
    from .elliptic import elliptic_quad

    q = elliptic_quad(x)
    tau = 1j * q.K / q.Kp
    if not tau.imag > 0:
        raise DomainError(f"x={x} maps outside the upper half-plane")
    return tau


# -- nome series in w = (1 - x)/16 ------------------------------------------


def _series_mul(a, b, n):
    out = [0] * n
    for i, ai in enumerate(a[:n]):
        if ai:
            for j, bj in enumerate(b[: n - i]):
                out[i + j] += ai * bj
    return out


def nome_series_coefficients(n):
    """Exact coefficients c_1..c_n of q = sum c_k w^k, w = (1-x)/16.

    Obtained by reverting the integer q-expansion of 1 - x = theta2^4/theta3^4
    (rational arithmetic throughout).
    """
    m = n + 2
    # theta2 = 2 q^{1/4} sum_{k>=0} q^{k(k+1)};  theta2^4 = 16 q * P(q)
    p = [0] * m
    k = 0
    while k * (k + 1) < m:
        p[k * (k + 1)] = 1
        k += 1
    p4 = _series_mul(_series_mul(p, p, m), _series_mul(p, p, m), m)
    t3 = [0] * m
    k = 0
    while k * k < m:
        t3[k * k] += 1 if k == 0 else 2
        k += 1
    t3_4 = _series_mul(_series_mul(t3, t3, m), _series_mul(t3, t3, m), m)
    # w = (1-x)/16 = q * P4(q) / T3_4(q)  -> series f(q) = q * r(q)
    inv = [Fraction(0)] * m
    inv[0] = Fraction(1, t3_4[0])
    for i in range(1, m):
        s = sum(t3_4[j] * inv[i - j] for j in range(1, i + 1))
        inv[i] = -s / t3_4[0]
    r = _series_mul([Fraction(c) for c in p4], inv, m)
    # revert w = q r(q) by fixed-point iteration q = w / r(q)
    q = [Fraction(0)] * (n + 1)
    q[1] = Fraction(1)
    for _ in range(n):
        # compose r(q(w)) up to order n
        rq = [Fraction(0)] * (n + 1)
        power = [Fraction(0)] * (n + 1)
        power[0] = Fraction(1)
        for i in range(n + 1):
            if i:
                power = _series_mul(power, q, n + 1)
            if i < len(r) and r[i]:
                for j in range(n + 1):
                    rq[j] += r[i] * power[j]
        inv_rq = [Fraction(0)] * (n + 1)
        inv_rq[0] = 1 / rq[0]
        for i in range(1, n + 1):
            s = sum(rq[j] * inv_rq[i - j] for j in range(1, i + 1))
            inv_rq[i] = -s / rq[0]
        q = [Fraction(0)] + inv_rq[:n]
    return [q[i] for i in range(1, n + 1)]


def nome_series(x, order=5):
    """Truncated nome series exp(pi i tau(x)) in w = (1 - x)/16."""
    coeffs = nome_series_coefficients(order)
    w = (1 - complex(x)) / 16
    return sum(float(c) * w ** (i + 1) for i, c in enumerate(coeffs))


def nome_taylor_from_tau(order=5, radius=0.01, points=64):
    """Taylor coefficients of exp(pi i tau_of_x(x)) in w = (1-x)/16.

    Discrete Cauchy integral on |w| = radius; nodes are offset by half a step
    so none lies on the real axis.
    """
    j = np.arange(points)
    theta = 2 * PI * (j + 0.5) / points
    w = radius * np.exp(1j * theta)
    vals = np.array([cmath.exp(1j * PI * tau_of_x(1 - 16 * wk)) for wk in w])
    out = []
    for n in range(1, order + 1):
        out.append(complex(np.mean(vals * w ** (-n))))
    return out


# -- Dedekind eta^2 as a function of J -----------------------------------------


def _eta2_dJ(tau):
    """(eta_D^2, d eta_D^2/dJ, J, dJ/dtau) with analytic tau-derivatives."""
    mq = modular_quantities(tau)
    if mq.J is None:
        raise DomainError(f"J is undefined at tau={tau}")
    G = dedekind_eta(tau) ** 2
    G_tau = 2j / PI * mq.eta_w * G  # d Ln eta_D / d tau = i eta / pi
    J_tau = klein_j_dtau(mq.J, mq.g2, mq.g3)
    return G, G_tau / J_tau, mq.J, J_tau


def eta2_ode_residual(tau, h=1e-5):
    """Relative residual of J(J-1) G'' + (7J - 4)/6 G' + G/144 = 0, G = eta_D^2.

    First derivatives are analytic; the outer derivative of dG/dJ is a central
    difference in tau of step h, divided by dJ/dtau.
    """
    tau = check_tau(tau)
    G, G_J, J, J_tau = _eta2_dJ(tau)
    if abs(J) < 1e-6 or abs(J - 1) < 1e-6:
        raise DomainError(f"J={J} is at a singular point of the equation")
    G_Jp = _eta2_dJ(tau + h)[1]
    G_Jm = _eta2_dJ(tau - h)[1]
    G_JJ = (G_Jp - G_Jm) / (2 * h) / J_tau
    terms = (J * (J - 1) * G_JJ, (7 * J - 4) / 6 * G_J, G / 144)
    return abs(sum(terms)) / max(abs(t) for t in terms)
