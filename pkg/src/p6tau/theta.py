"""Jacobi theta functions theta_k(z|tau) with period 1 in z, and their calculus.

theta3(z|tau) = sum_k exp(pi i k^2 tau + 2 pi i k z); theta1 carries the
factor -i exp(pi i tau / 4).  ``dt1`` is d theta1 / dz.

The derivative systems close over the coefficients eta(tau) (the Weierstrass
quasi-period for half-periods (1, tau)) and the theta constants.
"""

import math
from dataclasses import dataclass

from . import _qseries
from .errors import DomainError, PoleError
from .modular import ThetaConstants, theta_constants, weierstrass_eta

PI = math.pi
POLE_GUARD = 1e-10


@dataclass(frozen=True)
class ThetaBundle:
    t1: complex
    t2: complex
    t3: complex
    t4: complex
    dt1: complex

    def __getitem__(self, k):
        """theta_k for k = 1..4."""
        return (None, self.t1, self.t2, self.t3, self.t4)[k]


@dataclass(frozen=True)
class IndexPairing:
    k: int
    nu: int
    mu: int


def theta_bundle(z, tau):
    return ThetaBundle(*_qseries.theta_series(z, tau))


def index_pairing(k):
    """(nu, mu) completing k to a permutation of (2, 3, 4)."""
    if k not in (2, 3, 4):
        raise DomainError(f"index pairing is defined for k in {{2,3,4}}, got {k}")
    nu = (8 * k - 28) // (3 * k - 10)
    mu = (10 * k - 28) // (3 * k - 8)
    return IndexPairing(k, nu, mu)


def _vk(consts, k):
    return (0.0, 0.0, consts.v2, consts.v3, consts.v4)[k]


def _guard(b):
    if abs(b.t1) < POLE_GUARD * abs(b.dt1):
        raise PoleError("theta1 vanishes: z is a lattice point", series="picard")


def _coefficients(consts, eta_w):
    return eta_w + PI**2 / 12 * (consts.v3**4 + consts.v4**4)


def dtheta_dz(bundle, consts, eta_w):
    """(d theta1, d theta2, d theta3, d theta4, d theta1') / dz."""
    b = bundle
    _guard(b)
    c = consts
    out = [b.dt1]
    for k in (2, 3, 4):
        p = index_pairing(k)
        out.append(b.dt1 / b.t1 * b[k] - PI * _vk(c, k) ** 2 * b[p.nu] * b[p.mu] / b.t1)
    h = _coefficients(c, eta_w)
    out.append(
        b.dt1**2 / b.t1
        - PI**2 * c.v3**2 * c.v4**2 * b.t2**2 / b.t1
        - 4 * h * b.t1
    )
    return tuple(out)


def dtheta_dtau(bundle, consts, eta_w):
    """(d theta1, .., d theta4, d theta1') / d tau."""
    b = bundle
    _guard(b)
    c = consts
    h = _coefficients(c, eta_w)
    r = b.dt1 / b.t1
    out = []
    # k = 1: all theta-constant-weighted terms carry vartheta_1 = 0 except one
    out.append(
        -1j / (4 * PI) * r**2 * b.t1
        + 1j * PI / 4 * c.v3**2 * c.v4**2 * b.t2**2 / b.t1
        + 1j / PI * h * b.t1
    )
    for k in (2, 3, 4):
        p = index_pairing(k)
        vk2 = _vk(c, k) ** 2
        tk = b[k]
        out.append(
            -1j / (4 * PI) * r**2 * tk
            + 0.5j * vk2 * b.dt1 * b[p.nu] * b[p.mu] / b.t1**2
            + 1j * PI / 4 * (
                c.v3**2 * c.v4**2 * b.t2**2
                - vk2 * _vk(c, p.mu) ** 2 * b[p.nu] ** 2
                - vk2 * _vk(c, p.nu) ** 2 * b[p.mu] ** 2
            ) * tk / b.t1**2
            + 1j / PI * h * tk
        )
    out.append(
        -1j / (4 * PI) * b.dt1**3 / b.t1**2
        + 3j / PI * (PI**2 / 4 * c.v3**2 * c.v4**2 * b.t2**2 / b.t1**2 + h) * b.dt1
        - PI**2 / 2 * 1j * c.v2**2 * c.v3**2 * c.v4**2 * b.t2 * b.t3 * b.t4 / b.t1**2
    )
    return tuple(out)


def theta_derivatives(z, tau):
    """Bundle plus both derivative systems at (z|tau)."""
    b = theta_bundle(z, tau)
    c = theta_constants(tau)
    e = weierstrass_eta(tau)
    return b, dtheta_dz(b, c, e), dtheta_dtau(b, c, e)


def theta_multiply(n, z, tau):
    """ThetaBundle at n*z from the multiplication recursion.

    The two lower levels (n-1)z, (n-2)z and z itself are evaluated directly;
    theta1' at n z comes from differentiating the recursion and substituting
    the z-derivative system.
    """
    if int(n) != n or n < 2:
        raise DomainError(f"multiplication needs an integer n >= 2, got {n}")
    n = int(n)
    z = complex(z)
    c = theta_constants(tau)
    eta_w = weierstrass_eta(tau)
    base = theta_bundle(z, tau)
    if abs(base.t1) < POLE_GUARD * max(abs(base.dt1), 1.0):
        # theta1(n * lattice) = 0; the other three follow from periodicity
        return theta_bundle(n * z, tau)
    d_base = dtheta_dz(base, c, eta_w)
    v2, v3, v4 = c.v2, c.v3, c.v4

    if n == 2:
        prod = base.t2 * base.t3 * base.t4
        dprod = (d_base[1] * base.t3 * base.t4 + base.t2 * d_base[2] * base.t4
                 + base.t2 * base.t3 * d_base[3])
        t1 = 2 * base.t1 * prod / (v2 * v3 * v4)
        dt1 = (base.dt1 * prod + base.t1 * dprod) / (v2 * v3 * v4)
        lo = ThetaBundle(0j, v2, v3, v4, PI * v2 * v3 * v4)
        d_lo = (lo.dt1, 0j, 0j, 0j, 0j)
        mid, d_mid = base, d_base
    else:
        mid = theta_bundle((n - 1) * z, tau)
        lo = theta_bundle((n - 2) * z, tau)
        d_mid = dtheta_dz(mid, c, eta_w)
        d_lo = dtheta_dz(lo, c, eta_w)
        t1 = dt1 = None

    def sq(b, k):
        return b[k] ** 2

    def dsq(b, db, k, scale):
        return 2 * b[k] * db[k - 1] * scale

    n1, n2 = n - 1, n - 2
    const2 = {1: v4**2, 2: v2**2, 3: v3**2, 4: v4**2}
    # numerator pairs (a, b, c, d, sign): theta_a^2(n1 z) theta_b^2(z) +/- theta_c^2(n1 z) theta_d^2(z)
    rules = {
        1: (3, 2, 2, 3, -1),
        2: (3, 3, 4, 4, -1),
        3: (2, 2, 4, 4, +1),
        4: (3, 3, 2, 2, -1),
    }
    vals = {}
    for k, (a, bb, cc, d, s) in rules.items():
        if k == 1 and n == 2:
            continue
        denom = const2[k] * lo[k]
        if abs(denom) < POLE_GUARD * max(abs(const2[k]), 1e-300):
            raise PoleError(f"recursion denominator vanishes at level {n2}", level=n2)
        num = sq(mid, a) * sq(base, bb) + s * sq(mid, cc) * sq(base, d)
        vals[k] = (num, denom)
        if k == 1:
            dnum = (dsq(mid, d_mid, a, n1) * sq(base, bb) + sq(mid, a) * dsq(base, d_base, bb, 1)
                    + s * (dsq(mid, d_mid, cc, n1) * sq(base, d) + sq(mid, cc) * dsq(base, d_base, d, 1)))
            ddenom = const2[1] * d_lo[0] * n2
            t1 = num / denom
            dt1 = (dnum * denom - num * ddenom) / denom**2 / n
    return ThetaBundle(
        t1,
        vals[2][0] / vals[2][1],
        vals[3][0] / vals[3][1],
        vals[4][0] / vals[4][1],
        dt1,
    )


def theta_constants_of(bundle):
    return ThetaConstants(bundle.t2, bundle.t3, bundle.t4)
