"""Complete elliptic integrals in the x-convention.

K = K(sqrt x), K' = K'(sqrt x), E, E' with x the parameter m = k^2 of the
integral definitions:

    K  = int_0^1 d l / sqrt((1 - l^2)(1 - x l^2))
    K' = K evaluated at parameter 1 - x

so that x = theta4^4/theta3^4 at tau = i K / K'.  Values come from the
arithmetic-geometric mean, which stays single-valued on the principal domain
C minus (-inf, 0] and [1, inf).
"""

import cmath
import math
import warnings
from dataclasses import dataclass

from .errors import BranchWarning, ConvergenceError, DomainError

PI = math.pi
EDGE = 1e-8


@dataclass(frozen=True)
class EllipticQuad:
    K: complex
    Kp: complex
    E: complex
    Ep: complex

    @property
    def legendre_residual(self):
        return abs(self.E * self.Kp + self.Ep * self.K - self.K * self.Kp - PI / 2)


def _agm_KE(m):
    """K(m), E(m) for complex parameter m not in [1, inf)."""
    a = 1.0 + 0j
    b = cmath.sqrt(1 - m)
    c2_sum = m  # sum 2^(n-1) c_n^2 starting with c_0^2 = m (weight 1/2 below)
    weight = 0.5
    total = weight * c2_sum
    prev = math.inf
    for _ in range(64):
        an = 0.5 * (a + b)
        bn = cmath.sqrt(a * b)
        # right choice of the square root keeps the principal branch
        if abs(an - bn) > abs(an + bn):
            bn = -bn
        cn = 0.5 * (a - b)
        weight *= 2
        total += weight * cn * cn
        a, b = an, bn
        diff = abs(a - b)
        if diff <= 4e-16 * abs(a) or (diff < 1e-12 * abs(a) and diff >= prev):
            break
        prev = diff
    else:
        raise ConvergenceError(f"AGM did not converge for m={m}")
    K = PI / (2 * a)
    return K, K * (1 - total)


def _check_x(x):
    x = complex(x)
    if abs(x) < EDGE or abs(1 - x) < EDGE:
        raise DomainError(f"x={x} is a fixed singularity (x in {{0, 1}})")
    if abs(x.imag) <= 1e-300 and (x.real < 0 or x.real > 1):
        warnings.warn(f"x={x} lies on a branch cut; using the AGM branch", BranchWarning)
    return x


def elliptic_quad(x):
    x = _check_x(x)
    K, E = _agm_KE(x)
    Kp, Ep = _agm_KE(1 - x)
    return EllipticQuad(K, Kp, E, Ep)


def elliptic_derivatives(x, quad=None):
    """(dK/dx, dK'/dx, dE/dx, dE'/dx)."""
    x = _check_x(x)
    q = quad if quad is not None else elliptic_quad(x)
    dK = 0.5 * (q.E / (x * (1 - x)) - q.K / x)
    dKp = 0.5 * (q.Ep / (x * (x - 1)) - q.Kp / (x - 1))
    dE = 0.5 * (q.E - q.K) / x
    dEp = 0.5 * (q.Ep - q.Kp) / (x - 1)
    return dK, dKp, dE, dEp


@dataclass(frozen=True)
class TransitionBasis:
    theta3sq: complex
    theta2sq: complex
    dot_theta2: complex
    eta_w: complex


def transition_basis(x, quad=None):
    """theta3^2, theta2^2, d theta2/d tau and eta(tau) from K', E' at x."""
    x = _check_x(x)
    q = quad if quad is not None else elliptic_quad(x)
    theta3sq = 2 / PI * q.Kp
    theta2sq = 2 / PI * cmath.sqrt(1 - x) * q.Kp
    theta2 = cmath.sqrt(theta2sq)
    dot_theta2 = 1j / PI * theta2 * q.Kp * q.Ep
    eta_w = q.Kp * q.Ep - (x + 1) / 3 * q.Kp**2
    return TransitionBasis(theta3sq, theta2sq, dot_theta2, eta_w)
