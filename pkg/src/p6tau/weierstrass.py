"""Weierstrass functions for the lattice with half-periods (1, tau).

All four functions are built from theta functions at z/2:

    sigma(z) = 2 / theta1'(0) * exp(eta z^2 / 2) * theta1(z/2)
    zeta(z)  = eta z + theta1'(z/2) / (2 theta1(z/2))
    wp(z)    = e1 + pi^2/4 * theta3^2 theta4^2 * theta2^2(z/2) / theta1^2(z/2)
    wp'(z)   = -pi^3/4 * (theta2 theta3 theta4)^2 * theta2 theta3 theta4(z/2) / theta1^3(z/2)
"""

import cmath
import math
from dataclasses import dataclass

from . import modular
from ._qseries import check_tau
from .errors import ConvergenceError, DomainError, PoleError
from .theta import POLE_GUARD, theta_bundle

PI = math.pi


@dataclass(frozen=True)
class WeierstrassBundle:
    sigma: complex
    zeta: complex
    wp: complex
    wpp: complex


@dataclass(frozen=True)
class CanonState:
    Z: complex
    WP: complex
    WPP: complex


@dataclass(frozen=True)
class CanonRHS:
    dZ: complex
    dWP: complex
    dWPP: complex


def e_roots(tau):
    """(e1, e2, e3) = (wp(1), wp(1 + tau), wp(tau))."""
    c = modular.theta_constants(tau)
    a, b, d = c.v2**4, c.v3**4, c.v4**4
    k = PI**2 / 12
    return k * (b + d), k * (a - d), -k * (a + b)


def weierstrass_bundle(z, tau):
    tau = check_tau(tau)
    z = complex(z)
    c = modular.theta_constants(tau)
    eta_w = modular.weierstrass_eta(tau)
    b = theta_bundle(z / 2, tau)
    if abs(b.t1) < POLE_GUARD * abs(b.dt1):
        raise PoleError(f"z={z} is a lattice point")
    s = c.v2 * c.v3 * c.v4
    sigma = 2 / (PI * s) * cmath.exp(eta_w * z * z / 2) * b.t1
    zeta = eta_w * z + b.dt1 / (2 * b.t1)
    e1 = PI**2 / 12 * (c.v3**4 + c.v4**4)
    ratio = b.t2 / b.t1
    wp = e1 + PI**2 / 4 * c.v3**2 * c.v4**2 * ratio**2
    wpp = -(PI**3) / 4 * s**2 * b.t2 * b.t3 * b.t4 / b.t1**3
    return WeierstrassBundle(sigma, zeta, wp, wpp)


def wp(z, tau):
    return weierstrass_bundle(z, tau).wp


def _wp_wpp(z, tau):
    b = weierstrass_bundle(z, tau)
    return b.wp, b.wpp


def wp_inverse(u, tau, seed=None, tol=1e-12, max_iter=60, steps=16):
    """A z with wp(z|tau) = u.

    Newton's method, reached by a homotopy in u from the value at the
    asymptotic seed 1/sqrt(u) (or from ``seed`` when given).  At a branch
    point e_i the matching half-period is returned.
    """
    tau = check_tau(tau)
    u = complex(u)
    e1, e2, e3 = e_roots(tau)
    scale = max(abs(e1), abs(e2), abs(e3), 1.0)
    for e, half in ((e1, 1.0), (e2, 1.0 + tau), (e3, tau)):
        if abs(u - e) <= 1e-12 * scale:
            return complex(half)
        if abs(u - e) <= 1e-7 * scale:
            raise DomainError(f"u={u} is within 1e-7 of the branch point {e}")

    if seed is None:
        z = 1 / cmath.sqrt(u) if abs(u) > 0 else 0.5 + 0.5 * tau
        # keep the seed inside the period cell
        if abs(z) > 0.5 * min(1.0, abs(tau)):
            z = z / abs(z) * 0.5 * min(1.0, abs(tau))
        start = wp(z, tau)
        path = [start + (u - start) * j / steps for j in range(1, steps + 1)]
    else:
        z = complex(seed)
        path = [u]

    for target in path:
        z = _newton(z, target, tau, tol, max_iter)
    return z


def _newton(z, u, tau, tol, max_iter):
    for _ in range(max_iter):
        w, dw = _wp_wpp(z, tau)
        if dw == 0:
            raise ConvergenceError("wp' vanished during inversion")
        step = (w - u) / dw
        z -= step
        if abs(step) <= tol * max(1.0, abs(z)):
            w, _ = _wp_wpp(z, tau)
            if abs(w - u) <= 1e-9 * max(1.0, abs(u)):
                return z
    raise ConvergenceError(f"wp inversion did not converge for u={u}, tau={tau}")


def reduce_mod_lattice(z, tau):
    """Representative of +-z + 2 Z + 2 tau Z in the cell centred at the origin."""
    z = complex(z)
    n = round(z.imag / (2 * tau.imag))
    z -= 2 * n * tau
    z -= 2 * round(z.real / 2)
    return z


def lemma3_flow(z, tau, bundle=None):
    """(d sigma, d zeta, d wp, d wp') / d tau at fixed z."""
    tau = check_tau(tau)
    z = complex(z)
    b = bundle if bundle is not None else weierstrass_bundle(z, tau)
    mq = modular.modular_quantities(tau)
    eta, g2 = mq.eta_w, mq.g2
    f = 1j / PI
    zt = b.zeta - z * eta
    dsigma = f * (b.wp - b.zeta**2 + 2 * eta * (z * b.zeta - 1) - g2 * z * z / 12) * b.sigma
    dzeta = f * (b.wpp + 2 * zt * b.wp + 2 * eta * b.zeta - g2 * z / 6)
    dwp = -f * (2 * zt * b.wpp + 4 * (b.wp - eta) * b.wp - 2 * g2 / 3)
    dwpp = -f * (6 * (b.wp - eta) * b.wpp + zt * (12 * b.wp**2 - g2))
    return dsigma, dzeta, dwp, dwpp


def reduced_flow(zeta_t, wp_, wpp, tau):
    """tau-flow of (zeta - z eta, wp, wp') with the explicit z removed."""
    mq = modular.modular_quantities(tau)
    eta, g2 = mq.eta_w, mq.g2
    f = 1j / PI
    d_zt = f * (wpp + 2 * zeta_t * wp + 2 * eta * zeta_t)
    dwp = -f * (2 * zeta_t * wpp + 4 * (wp - eta) * wp - 2 * g2 / 3)
    dwpp = -f * (6 * (wp - eta) * wpp + zeta_t * (12 * wp**2 - g2))
    return d_zt, dwp, dwpp


def canon_state(A, B, tau):
    """Exact integral Z = zeta(A tau + B) - A eta' - B eta, WP, WPP."""
    tau = check_tau(tau)
    u = A * tau + B
    b = weierstrass_bundle(u, tau)
    eta = modular.weierstrass_eta(tau)
    Z = b.zeta - A * modular.eta_prime(tau, eta) - B * eta
    return CanonState(Z, b.wp, b.wpp)


def canon_rhs(state, tau):
    mq = modular.modular_quantities(tau)
    eta, g2 = mq.eta_w, mq.g2
    f = 1j / PI
    Z, W, P = state.Z, state.WP, state.WPP
    dZ = f * (P + 2 * (W + eta) * Z)
    dWP = -f * (2 * Z * P + 4 * (W - eta) * W - 2 * g2 / 3)
    dWPP = -f * (6 * (W - eta) * P + (12 * W**2 - g2) * Z)
    return CanonRHS(dZ, dWP, dWPP)


def canon_invariant(state, tau):
    """WPP^2 - (4 WP^3 - g2 WP - g3)."""
    g2, g3 = modular.g2_g3_series(tau)
    return state.WPP**2 - (4 * state.WP**3 - g2 * state.WP - g3)


def rk4_step(state, tau, h):
    """One classical Runge-Kutta step of the canonical system."""

    def f(s, t):
        r = canon_rhs(s, t)
        return (r.dZ, r.dWP, r.dWPP)

    def add(s, k, c):
        return CanonState(s.Z + c * k[0], s.WP + c * k[1], s.WPP + c * k[2])

    k1 = f(state, tau)
    k2 = f(add(state, k1, h / 2), tau + h / 2)
    k3 = f(add(state, k2, h / 2), tau + h / 2)
    k4 = f(add(state, k3, h), tau + h)
    return CanonState(*(
        s + h / 6 * (a + 2 * b + 2 * c + d)
        for s, a, b, c, d in zip((state.Z, state.WP, state.WPP), k1, k2, k3, k4)
    ))


def hitchin_h(state):
    """H = WP + WPP / (2 Z)."""
    return state.WP + 0.5 * state.WPP / state.Z


def hitchin_h_rhs(H, state, tau):
    """(pi/i) dH/dtau as the rational expression in H, WP."""
    g2, g3 = modular.g2_g3_series(tau)
    eta = modular.weierstrass_eta(tau)
    return (4 * H**3 - g2 * H - g3) / (state.WP - H) + 2 * H**2 + 4 * eta * H + g2 / 6
