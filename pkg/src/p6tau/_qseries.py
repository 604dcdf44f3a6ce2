"""Truncated q-series shared by the theta and modular modules.

Truncation policy: a series is summed over every index whose term can exceed
``REL_TOL`` times the largest term, capped at ``max_terms`` indices on each
side of the peak.  The nome modulus is limited to ``MAX_NOME`` so the cap is
never approached for moderate ``z``.
"""

import cmath
import contextlib
import contextvars
import math

import numpy as np

from .errors import ConvergenceError, DomainError

REL_TOL = 1e-16
MAX_NOME = 0.9
DEFAULT_MAX_TERMS = 64

_max_terms = contextvars.ContextVar("p6tau_max_terms", default=DEFAULT_MAX_TERMS)

# exp(-_LOG_CUT) < REL_TOL / 100
_LOG_CUT = -math.log(REL_TOL) + 5.0


def max_terms():
    return _max_terms.get()


@contextlib.contextmanager
def truncation(max_terms):
    """Temporarily change the series cap (context-local, thread-safe)."""
    token = _max_terms.set(int(max_terms))
    try:
        yield
    finally:
        _max_terms.reset(token)


def check_tau(tau):
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError(f"tau={tau} is not in the upper half-plane")
    if math.exp(-math.pi * tau.imag) > MAX_NOME:
        raise ConvergenceError(
            f"|q| = {math.exp(-math.pi * tau.imag):.4f} exceeds {MAX_NOME} at tau={tau}"
        )
    return tau


def _index_range(tau, z):
    """Indices k (as reals k + shift) for which the term can matter."""
    a = math.pi * tau.imag
    b = math.pi * abs(complex(z).imag)
    # terms behave like exp(-a k^2 + 2 b |k|); keep those above exp(-_LOG_CUT)
    kmax = (b + math.sqrt(b * b + a * _LOG_CUT)) / a
    n = int(math.ceil(kmax)) + 2
    if n > max_terms():
        raise ConvergenceError(
            f"theta series needs {n} terms (cap {max_terms()}) at z={z}, tau={tau}"
        )
    return n


def theta_series(z, tau):
    """Return (theta1, theta2, theta3, theta4, d theta1/dz) at (z|tau)."""
    tau = check_tau(tau)
    z = complex(z)
    n = _index_range(tau, z)
    k = np.arange(-n, n + 1, dtype=float)
    sign = np.where(k % 2 == 0, 1.0, -1.0)

    h = k + 0.5
    e_half = np.exp(1j * np.pi * (h * h * tau + 2.0 * h * z))
    e_int = np.exp(1j * np.pi * (k * k * tau + 2.0 * k * z))

    t1 = -1j * np.sum(sign * e_half)
    t2 = np.sum(e_half)
    t3 = np.sum(e_int)
    t4 = np.sum(sign * e_int)
    dt1 = np.pi * np.sum(sign * (2.0 * k + 1.0) * e_half)
    _check_tail(e_half, e_int)
    return complex(t1), complex(t2), complex(t3), complex(t4), complex(dt1)


def _check_tail(*arrays):
    for terms in arrays:
        mags = np.abs(terms)
        peak = mags.max()
        if max(mags[0], mags[-1]) > REL_TOL * peak:
            raise ConvergenceError("theta series tail above tolerance")


def theta_constant_series(tau, order=0):
    """Theta constants (v2, v3, v4) and their first ``order`` tau-derivatives.

    Returns a list ``[(v2, v3, v4), (v2', v3', v4'), ...]`` of length
    ``order + 1``; derivatives are term-wise.
    """
    tau = check_tau(tau)
    n = _index_range(tau, 0.0)
    k = np.arange(-n, n + 1, dtype=float)
    sign = np.where(k % 2 == 0, 1.0, -1.0)
    h2 = (k + 0.5) ** 2
    k2 = k * k
    e_half = np.exp(1j * np.pi * h2 * tau)
    e_int = np.exp(1j * np.pi * k2 * tau)
    out = []
    for j in range(order + 1):
        f_half = (1j * np.pi * h2) ** j
        f_int = (1j * np.pi * k2) ** j
        out.append((
            complex(np.sum(f_half * e_half)),
            complex(np.sum(f_int * e_int)),
            complex(np.sum(sign * f_int * e_int)),
        ))
    return out


def lambert_sums(tau, powers):
    """Sums  sum_{k>=1} k^p q2^k / (1 - q2^k)  with q2 = exp(2 pi i tau).

    ``powers`` may contain the special key ``"sq"`` for
    sum_{k>=1} q2^k / (1 - q2^k)^2.
    """
    tau = check_tau(tau)
    q2 = cmath.exp(2j * math.pi * tau)
    aq = abs(q2)
    # q2^k * k^5 < REL_TOL  =>  k log|q2| + 5 log k < log REL_TOL
    n = 1
    while n * math.log(aq) + 5 * math.log(n) > math.log(REL_TOL) - 2:
        n += 1
        if n > 64 * max_terms():
            raise ConvergenceError(f"Lambert series did not converge at tau={tau}")
    k = np.arange(1, n + 1, dtype=float)
    qk = q2 ** k
    out = {}
    for p in powers:
        if p == "sq":
            out[p] = complex(np.sum(qk / (1 - qk) ** 2))
        else:
            out[p] = complex(np.sum(k**p * qk / (1 - qk)))
    return out
