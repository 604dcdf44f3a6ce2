"""Picard and Hitchin solutions of the sixth Painleve equation.

Constant conventions
--------------------
``InitialData(A, B)`` always holds the constants of the Weierstrass form

    wp(z|tau) = wp(u) + wp'(u) / (2 (zeta(u) - A eta' - B eta)),  u = A tau + B,

and the same u is the argument z = u of the Picard solution (alpha = ... = 0).
The other forms use rescaled constants, applied internally:

* tau-form (log-derivative in tau, Picard theta quotient, pole lattice):
  ``(A_t, B_t) = (A/2, B/2)``; theta functions are taken at A_t tau + B_t.
* x-form (log-derivative in x, tau-functions): ``(A_x, B_x) = (i A/2, B/2)``;
  theta functions at A_x K/K' + B_x, which equals A_t tau + B_t.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from . import modular
from .elliptic import elliptic_derivatives, elliptic_quad
from .errors import ConvergenceError, DomainError, PoleError
from .modular import theta_constants, weierstrass_eta
from .theta import POLE_GUARD, dtheta_dtau, dtheta_dz, theta_bundle
from .weierstrass import canon_state, weierstrass_bundle, wp_inverse

PI = math.pi


@dataclass(frozen=True)
class InitialData:
    A: complex
    B: complex

    def __post_init__(self):
        object.__setattr__(self, "A", complex(self.A))
        object.__setattr__(self, "B", complex(self.B))

    @property
    def both_real(self):
        return self.A.imag == 0 and self.B.imag == 0

    @classmethod
    def from_tau_form(cls, A, B):
        return cls(2 * complex(A), 2 * complex(B))

    @classmethod
    def from_x_form(cls, A, B):
        return cls(-2j * complex(A), 2 * complex(B))

    @property
    def tau_form(self):
        return self.A / 2, self.B / 2

    @property
    def x_form(self):
        return 0.5j * self.A, self.B / 2


@dataclass(frozen=True)
class P6Params:
    alpha: complex
    beta: complex
    gamma: complex
    delta: complex


HITCHIN = P6Params(1 / 8, 1 / 8, 1 / 8, 1 / 8)
PICARD = P6Params(0, 0, 0, 0)


@dataclass(frozen=True)
class PoleIndex:
    m: int
    n: int


@dataclass(frozen=True)
class SolutionSample:
    x: complex
    y: complex
    tau: complex
    z: complex


@dataclass(frozen=True)
class TauFunctionPair:
    btau1: complex
    btau2: complex


@dataclass
class PoleList:
    points: list  # (PoleIndex, x)
    taus: list = field(default_factory=list)  # (m - B_t)/(n + A_t), parallel to points
    filtered: int = 0  # index pairs failing Im((m - B)/(n + A)) > 0
    unresolved: int = 0  # pairs whose tau lies outside the series range

    def __len__(self):
        return len(self.points)

    def principal(self):
        """Points whose tau is the principal preimage tau_of_x(x); Btau_1 vanishes there."""
        return [p for p, t in zip(self.points, self.taus) if in_principal_domain(t)]


# -- the equation ------------------------------------------------------------


def p6_rhs(x, y, yx, params):
    """Right-hand side of y'' for the sixth Painleve equation."""
    a, b, g, d = params.alpha, params.beta, params.gamma, params.delta
    return (
        0.5 * (1 / y + 1 / (y - 1) + 1 / (y - x)) * yx**2
        - (1 / x + 1 / (x - 1) + 1 / (y - x)) * yx
        + y * (y - 1) * (y - x) / (x**2 * (x - 1) ** 2)
        * (a - b * x / y**2 + g * (x - 1) / (y - 1) ** 2 - (d - 0.5) * x * (x - 1) / (y - x) ** 2)
    )


def _p6_terms(x, y, yx, params):
    a, b, g, d = params.alpha, params.beta, params.gamma, params.delta
    pref = y * (y - 1) * (y - x) / (x**2 * (x - 1) ** 2)
    return [
        0.5 * (1 / y + 1 / (y - 1) + 1 / (y - x)) * yx**2,
        (1 / x + 1 / (x - 1) + 1 / (y - x)) * yx,
        pref * a,
        pref * b * x / y**2,
        pref * g * (x - 1) / (y - 1) ** 2,
        pref * (d - 0.5) * x * (x - 1) / (y - x) ** 2,
    ]


def richardson_derivatives(f, x, h):
    """(f, f', f'') by central differences with one Richardson step."""
    f0 = f(x)
    fp1, fm1 = f(x + h), f(x - h)
    fp2, fm2 = f(x + h / 2), f(x - h / 2)
    d1 = lambda a, b, s: (a - b) / (2 * s)
    d2 = lambda a, b, s: (a - 2 * f0 + b) / s**2
    first = (4 * d1(fp2, fm2, h / 2) - d1(fp1, fm1, h)) / 3
    second = (4 * d2(fp2, fm2, h / 2) - d2(fp1, fm1, h)) / 3
    return f0, first, second


def cauchy_derivatives(f, x, radius, points=24):
    """(f, f', f'') at x from a discrete Cauchy integral on |t - x| = radius.

    f must be analytic on the closed disc; the aliasing error decays like
    (radius / distance to the nearest singularity)^points.
    """
    j = np.arange(points)
    w = np.exp(2j * PI * (j + 0.5) / points)
    vals = np.array([f(complex(x + radius * wk)) for wk in w])
    c1 = np.mean(vals / w) / radius
    c2 = np.mean(vals / w**2) / radius**2
    return complex(np.mean(vals)), complex(c1), complex(2 * c2)


def numerical_derivatives(f, x, method="cauchy", step=None):
    """(f, f', f'') at x.

    ``cauchy``: contour average with radius ``step`` (default 2% of the
    distance to 0 and 1).  ``richardson``: central differences, step
    ``step`` (default 1e-4 |x(x-1)|), one Richardson extrapolation.
    """
    x = complex(x)
    if method == "cauchy":
        r = step if step is not None else 0.02 * min(abs(x), abs(1 - x), 1.0)
        return cauchy_derivatives(f, x, r)
    if method == "richardson":
        h = step if step is not None else 1e-4 * max(abs(x * (x - 1)), 1e-3)
        return richardson_derivatives(f, x, h)
    raise DomainError(f"unknown derivative method {method!r}")


def p6_residual(y_fn, x, params, method="cauchy", step=None, relative=True):
    """Residual y'' - RHS of the sixth Painleve equation along y_fn.

    With ``relative`` the modulus is divided by the largest term of the
    equation.
    """
    x = complex(x)
    y, yx, yxx = numerical_derivatives(y_fn, x, method, step)
    res = yxx - p6_rhs(x, y, yx, params)
    if not relative:
        return res
    scale = max([abs(yxx)] + [abs(t) for t in _p6_terms(x, y, yx, params)])
    return abs(res) / scale


# -- shared theta evaluations -------------------------------------------------


def _theta_at(w, tau):
    b = theta_bundle(w, tau)
    if abs(b.t1) < POLE_GUARD * abs(b.dt1):
        raise PoleError(f"theta1 vanishes at {w} (pole of the Picard series)", series="picard")
    return b


def _log_derivative_theta_ratio(w, dw, tau, c, eta_w, lam):
    """d/dtau of (theta1'(w) + lam theta1(w)) and of theta1(w), w = w(tau).

    ``dw`` is dw/dtau.  Returns (N, dN, t1, dt1_total).
    """
    b = _theta_at(w, tau)
    dz = dtheta_dz(b, c, eta_w)
    dt = dtheta_dtau(b, c, eta_w)
    N = b.dt1 + lam * b.t1
    dN = dt[4] + dw * dz[4] + lam * (dt[0] + dw * b.dt1)
    dT1 = dt[0] + dw * b.dt1
    return b, N, dN, dT1


# -- Hitchin solution: four forms ---------------------------------------------


def hitchin_wp(data, tau):
    """wp(z|tau) of the Hitchin solution by the Weierstrass form."""
    tau = complex(tau)
    s = canon_state(data.A, data.B, tau)
    if abs(s.Z) < 1e-13 * (abs(s.WP) + 1):
        raise PoleError("zeta(u) - A eta' - B eta vanishes (second pole series)", series="second")
    return s.WP + 0.5 * s.WPP / s.Z


def hitchin_wp_logderiv(data, tau):
    """wp(z|tau) as (pi/2i) d/dtau Ln[(zeta(u) - A eta' - B eta) / eta_D^2].

    The tau-derivative is analytic: zeta(u) - A eta' - B eta equals
    (theta1'/theta1)(v)/2 + pi i A/2 with v = (A tau + B)/2, differentiated by
    the theta calculus; d Ln eta_D / d tau = i eta / pi.
    """
    tau = complex(tau)
    A, B = data.A, data.B
    c = theta_constants(tau)
    eta_w = weierstrass_eta(tau)
    v = 0.5 * (A * tau + B)
    b, N, dN, dT1 = _log_derivative_theta_ratio(v, 0.5 * A, tau, c, eta_w, PI * 1j * A)
    # Z = N / (2 theta1)
    dlogZ = dN / N - dT1 / b.t1
    return PI / 2j * dlogZ - eta_w


def hitchin_y_tau(data, tau):
    """y(tau) by the compact theta form with arguments (A tau + B)/2."""
    tau = complex(tau)
    c = theta_constants(tau)
    v = 0.5 * (data.A * tau + data.B)
    b = _theta_at(v, tau)
    den = b.dt1 + PI * 1j * data.A * b.t1
    if abs(den) < 1e-13 * abs(b.dt1):
        raise PoleError("theta1' + pi i A theta1 vanishes (second pole series)", series="second")
    sqrt_x = (c.v4 / c.v3) ** 2
    return sqrt_x / b.t1**2 * (PI * c.v2**2 * b.t2 * b.t3 * b.t4 / den - b.t2**2)


def hitchin_y_tau_logderiv(data, tau):
    """y(tau) = (2i/pi) theta3^-4 d/dtau Ln[(theta1' + 2 pi i A_t theta1)/(theta2^2 theta1)]."""
    tau = complex(tau)
    At, Bt = data.tau_form
    consts, dconsts = modular.theta_constants_dtau(tau, 1)
    eta_w = weierstrass_eta(tau)
    w = At * tau + Bt
    b, N, dN, dT1 = _log_derivative_theta_ratio(w, At, tau, consts, eta_w, 2j * PI * At)
    if abs(N) < 1e-13 * abs(b.dt1):
        raise PoleError("second pole series", series="second")
    dlog = dN / N - 2 * dconsts.v2 / consts.v2 - dT1 / b.t1
    return 2j / PI / consts.v3**4 * dlog


def y_from_wp(wp_value, tau):
    """Painleve substitution y = 1/3 + x/3 - 4 wp / (pi^2 theta3^4)."""
    c = theta_constants(tau)
    x = (c.v4 / c.v3) ** 4
    return (1 + x) / 3 - 4 / PI**2 * wp_value / c.v3**4


def wp_from_y(y, tau):
    c = theta_constants(tau)
    x = (c.v4 / c.v3) ** 4
    return ((1 + x) / 3 - y) * PI**2 * c.v3**4 / 4


def _x_form_log_ratio(data, x, with_split=False):
    """Ingredients of 2x(1-x) d/dx Ln[(theta1' + 2 pi A_x theta1)/(sqrt(1-x) K' theta1)]."""
    x = complex(x)
    Ax, Bx = data.x_form
    q = elliptic_quad(x)
    dK, dKp, _, _ = elliptic_derivatives(x, q)
    tau = 1j * q.K / q.Kp
    if not tau.imag > 0:
        raise DomainError(f"x={x} maps outside the upper half-plane")
    dratio = (dK * q.Kp - q.K * dKp) / q.Kp**2  # d(K/K')/dx
    dtau = 1j * dratio
    c = theta_constants(tau)
    eta_w = weierstrass_eta(tau)
    v = Ax * q.K / q.Kp + Bx
    b = _theta_at(v, tau)
    dz = dtheta_dz(b, c, eta_w)
    dt = dtheta_dtau(b, c, eta_w)
    dv = Ax * dratio
    lam = 2 * PI * Ax
    N = b.dt1 + lam * b.t1
    dN = dz[4] * dv + dt[4] * dtau + lam * (b.dt1 * dv + dt[0] * dtau)
    dT1 = b.dt1 * dv + dt[0] * dtau
    return x, q, dKp, b, N, dN, dT1


def hitchin_y_x(data, x):
    """y(x) of the Hitchin solution with the x-derivative taken analytically."""
    x, q, dKp, b, N, dN, dT1 = _x_form_log_ratio(data, x)
    if abs(N) < 1e-13 * abs(b.dt1):
        raise PoleError("Btau_2 vanishes (second pole series)", series="second")
    dlog = dN / N - dT1 / b.t1 + 0.5 / (1 - x) - dKp / q.Kp
    return 2 * x * (1 - x) * dlog


def hitchin_y_x_split(data, x):
    """(E'/K', 2x(1-x) d/dx Ln{theta1'/theta1 + 2 pi A_x}): the two summands of y."""
    x, q, dKp, b, N, dN, dT1 = _x_form_log_ratio(data, x)
    dlog = dN / N - dT1 / b.t1
    return q.Ep / q.Kp, 2 * x * (1 - x) * dlog


def hitchin_log_ratio(data, x):
    """Ln of the tau-function ratio Btau_2 / (sqrt(1-x) K' Btau_1) (principal log)."""
    t = tau_functions(data, x)
    q = elliptic_quad(x)
    return cmath.log(t.btau2 / (cmath.sqrt(1 - complex(x)) * q.Kp * t.btau1))


def hitchin_z_argument(data, tau):
    """(pi/2i) d/dtau Ln{theta1'/theta1(A_t tau + B_t) + 2 pi i A_t} - eta."""
    tau = complex(tau)
    At, Bt = data.tau_form
    c = theta_constants(tau)
    eta_w = weierstrass_eta(tau)
    w = At * tau + Bt
    b, N, dN, dT1 = _log_derivative_theta_ratio(w, At, tau, c, eta_w, 2j * PI * At)
    return PI / 2j * (dN / N - dT1 / b.t1) - eta_w


def hitchin_z(data, tau, seed=None):
    """A z with wp(z|tau) equal to the Hitchin wp; branch by Newton homotopy."""
    return wp_inverse(hitchin_z_argument(data, tau), tau, seed=seed)


def hitchin_sample(data, tau):
    tau = complex(tau)
    return SolutionSample(
        x=modular.x_of_tau(tau), y=hitchin_y_tau(data, tau), tau=tau, z=hitchin_z(data, tau)
    )


def theta_form_rhs(z, tau):
    """4 pi eta_D^9 theta1(2z|tau) / theta1^4(z|tau)."""
    eta_d = modular.dedekind_eta(tau)
    return 4 * PI * eta_d**9 * theta_bundle(2 * z, tau).t1 / theta_bundle(z, tau).t1 ** 4


def wp_form_rhs(z, tau, params=HITCHIN):
    """-(4/pi^2) [alpha wp'(z) + beta wp'(z-1) + gamma wp'(z-tau) + delta wp'(z-1-tau)]."""
    terms = (
        params.alpha * weierstrass_bundle(z, tau).wpp,
        params.beta * weierstrass_bundle(z - 1, tau).wpp,
        params.gamma * weierstrass_bundle(z - tau, tau).wpp,
        params.delta * weierstrass_bundle(z - 1 - tau, tau).wpp,
    )
    return -4 / PI**2 * sum(terms)


def z_second_derivative(data, tau, h=1e-3):
    """z(tau) and d^2z/dtau^2 on a continued branch (five-point stencil)."""
    tau = complex(tau)
    z0 = hitchin_z(data, tau)
    zs = {}
    for k in (-2, -1, 1, 2):
        zs[k] = wp_inverse(hitchin_z_argument(data, tau + k * h), tau + k * h, seed=z0)
    zs[0] = z0
    d2 = (-zs[2] + 16 * zs[1] - 30 * zs[0] + 16 * zs[-1] - zs[-2]) / (12 * h * h)
    return z0, d2


# -- Picard solution ----------------------------------------------------------


def _picard_parts(data, x):
    x = complex(x)
    tau = modular.tau_of_x(x)
    c = theta_constants(tau)
    At, Bt = data.tau_form
    w = At * tau + Bt
    b = _theta_at(w, tau)
    sqrt_x = (c.v4 / c.v3) ** 2
    return x, tau, c, w, b, sqrt_x


def picard_y(data, x):
    """y = -sqrt(x) theta2^2(w) / theta1^2(w), w = A_t tau + B_t."""
    _, _, _, _, b, sqrt_x = _picard_parts(data, x)
    return -sqrt_x * b.t2**2 / b.t1**2


def picard_y_tau(data, tau):
    tau = complex(tau)
    c = theta_constants(tau)
    At, Bt = data.tau_form
    b = _theta_at(At * tau + Bt, tau)
    return -((c.v4 / c.v3) ** 2) * b.t2**2 / b.t1**2


def picard_dy_dx(data, x):
    """(y, dy/dx) of the Picard solution, analytically."""
    x, tau, c, w, b, sqrt_x = _picard_parts(data, x)
    At, _ = data.tau_form
    eta_w = weierstrass_eta(tau)
    dtau_dx = 1 / (1j * PI * x * (x - 1) * c.v3**4)
    dz = dtheta_dz(b, c, eta_w)
    dt = dtheta_dtau(b, c, eta_w)
    d_t2 = dz[1] * At + dt[1]
    d_t1 = dz[0] * At + dt[0]
    ratio = b.t2 / b.t1
    d_ratio = (d_t2 * b.t1 - b.t2 * d_t1) / b.t1**2  # per unit tau
    y = -sqrt_x * ratio**2
    dy = -0.5 * sqrt_x / x * ratio**2 - sqrt_x * 2 * ratio * d_ratio * dtau_dx
    return y, dy


def picard_u(data, X):
    """Picard's own variable: u(X) = sqrt(y_Pic(1/X)) (principal root)."""
    return cmath.sqrt(picard_y(data, 1 / complex(X)))


def picard_equation_residual(u_fn, x, method="cauchy"):
    """Relative residual of Picard's equation for u(x) (last term carrying 1/4)."""
    x = complex(x)
    u, du, d2u = numerical_derivatives(u_fn, x, method)
    terms = [
        d2u,
        -(du**2) * u * (2 * x * u * u - 1 - x) / ((1 - u * u) * (1 - x * u * u)),
        du * ((u * u - 1) / ((1 - x) * (1 - x * u * u)) + 1 / x),
        -0.25 * u * (1 - u * u) / (x * (1 - x) * (1 - x * u * u)),
    ]
    return abs(sum(terms)) / max(abs(t) for t in terms)


def picard_theta_quotients(data, tau):
    """((y - x)/(y - 1) of Picard, theta4^2/theta3^2 * theta3^2(w)/theta4^2(w))."""
    tau = complex(tau)
    c = theta_constants(tau)
    x = (c.v4 / c.v3) ** 4
    y = picard_y_tau(data, tau)
    At, Bt = data.tau_form
    b = theta_bundle(At * tau + Bt, tau)
    return (y - x) / (y - 1), (c.v4 / c.v3) ** 2 * b.t3**2 / b.t4**2


# -- Okamoto maps -------------------------------------------------------------


def _okamoto_parts(y, yx, x, direction):
    N = y * (y - 1) * (y - x)
    if direction == "forward":
        D = x * (x - 1) * yx - y * y + y
        sign = 1
    elif direction == "backward":
        D = x * (x - 1) * yx + 0.5 * y * y - x * y + 0.5 * x
        sign = -1
    else:
        raise DomainError(f"direction must be 'forward' or 'backward', got {direction!r}")
    return N, D, sign


def okamoto(y, y_x, x, direction="forward"):
    """Forward maps the Picard class to the Hitchin class; backward inverts."""
    N, D, sign = _okamoto_parts(y, y_x, x, direction)
    if D == 0 or abs(D) < 1e-300:
        raise PoleError("Okamoto denominator vanishes")
    return y + sign * N / D


def okamoto_dx(y, y_x, y_xx, x, direction="forward"):
    """d/dx of the Okamoto image given y, y', y'' at x."""
    N, D, sign = _okamoto_parts(y, y_x, x, direction)
    dN = ((y - 1) * (y - x) + y * (y - x) + y * (y - 1)) * y_x - y * (y - 1)
    if direction == "forward":
        dD = (2 * x - 1) * y_x + x * (x - 1) * y_xx - 2 * y * y_x + y_x
    else:
        dD = (2 * x - 1) * y_x + x * (x - 1) * y_xx + y * y_x - y - x * y_x + 0.5
    return y_x + sign * (dN * D - N * dD) / D**2


def picard_to_hitchin(data, x):
    """Okamoto image of the Picard solution (a Hitchin-class solution)."""
    y, yx = picard_dy_dx(data, x)
    return okamoto(y, yx, x, "forward")


# -- poles and tau-functions ---------------------------------------------------


def in_principal_domain(tau, margin=1e-9):
    """tau in the image of tau_of_x: |Re tau| < 1 and |tau -+ 1/2| > 1/2."""
    tau = complex(tau)
    return (tau.imag > 0 and abs(tau.real) < 1 - margin
            and abs(tau - 0.5) > 0.5 + margin and abs(tau + 0.5) > 0.5 + margin)


def pole_tau(data, m, n):
    At, Bt = data.tau_form
    return (m - Bt) / (n + At)


def poles(data, m_range, n_range):
    """Picard-series poles x_mn = x((m - B_t)/(n + A_t)) with Im > 0."""
    out = PoleList(points=[])
    for n in n_range:
        for m in m_range:
            if n + data.tau_form[0] == 0:
                out.filtered += 1
                continue
            t = pole_tau(data, m, n)
            if not t.imag > 0:
                out.filtered += 1
                continue
            try:
                x = modular.x_of_tau(t)
            except ConvergenceError:
                out.unresolved += 1
                continue
            out.points.append((PoleIndex(m, n), x))
            out.taus.append(t)
    return out


def tau_functions(data, x):
    """Btau_1 = theta1(v | iK/K'), Btau_2 = theta1'(v) + 2 pi A_x theta1(v)."""
    Ax, Bx = data.x_form
    q = elliptic_quad(x)
    tau = 1j * q.K / q.Kp
    b = theta_bundle(Ax * q.K / q.Kp + Bx, tau)
    return TauFunctionPair(b.t1, b.dt1 + 2 * PI * Ax * b.t1)


def mero_f(x, A, B):
    """(1/2pi) theta1'/theta1 (A K/K' - B | iK/K') with constants as given."""
    q = elliptic_quad(x)
    tau = 1j * q.K / q.Kp
    b = theta_bundle(A * q.K / q.Kp - B, tau)
    return b.dt1 / b.t1 / (2 * PI)


def second_pole_series(data, seed, tol=1e-12, max_iter=50, h=1e-6):
    """Root of Btau_2 / Btau_1 (the A-point condition) by Newton from ``seed``."""
    Ax, Bx = data.x_form
    # Btau_2 = 0  <=>  f(x; A_x, -B_x) = -A_x
    F = lambda x: mero_f(x, Ax, -Bx) + Ax
    x = complex(seed)
    for _ in range(max_iter):
        fx = F(x)
        dfx = (F(x + h) - F(x - h)) / (2 * h)
        if dfx == 0:
            raise ConvergenceError(f"flat Newton step at x={x}")
        step = fx / dfx
        x_new = x - step
        if x_new.real <= 0 and abs(x_new.imag) < 1e-12 or abs(x_new) < 1e-8 or abs(1 - x_new) < 1e-8:
            raise ConvergenceError(f"Newton left the principal domain at x={x_new}")
        x = x_new
        if abs(step) < tol * max(1.0, abs(x)):
            if abs(F(x)) < 1e-9 * (1 + abs(Ax)):
                return x
    raise ConvergenceError(f"second pole series: Newton did not converge from seed {seed}")


def second_series_tau(data, k, tol=1e-13, max_iter=60):
    """A tau with zeta(u) - A eta' - B eta = 0, seeded from cot(pi w) = -2i A_t + k shift.

    Far from the real axis theta1'/theta1(w) ~ pi cot(pi w), so the k-th seed
    is w = arccot(-2i A_t)/pi + k, tau = (w - B_t)/A_t; Newton refines it.
    """
    At, Bt = data.tau_form
    if At == 0:
        raise DomainError("the second series needs A != 0")

    def G(t):
        b = theta_bundle(At * t + Bt, t)
        return b.dt1 + 2j * PI * At * b.t1

    w0 = cmath.atan(1 / (-2j * At)) / PI + k
    t = (w0 - Bt) / At
    if not t.imag > 0:
        raise DomainError(f"seed {k} lies in the lower half-plane")
    for _ in range(max_iter):
        g = G(t)
        dg = (G(t + 1e-6) - G(t - 1e-6)) / 2e-6
        step = g / dg
        t -= step
        if not t.imag > 0:
            raise ConvergenceError("Newton left the upper half-plane")
        if abs(step) < tol * max(1.0, abs(t)):
            return t
    raise ConvergenceError(f"second series in tau: no convergence from seed {k}")


# -- one-parameter degenerations ----------------------------------------------


def degenerate_solutions(kind, alpha, x):
    """Closed-form one-parameter Hitchin-class solutions in E, K, E', K'."""
    q = elliptic_quad(x)
    x = complex(x)
    K, Kp, E, Ep = q.K, q.Kp, q.E, q.Ep
    a = complex(alpha)
    if kind == "alpha_family":
        num, den = a * Ep - E + K, a * Kp + K
    elif kind == "L2":
        num, den = x * (a * Kp + K), a * Ep - E + K
    elif kind == "L3":
        s = a * Kp + K
        num, den = x * (2 * s * (Ep - Kp) - PI), 2 * s * (Ep - x * Kp) - PI
    elif kind == "L4":
        s = a * Kp + K
        num, den = 2 * s * (Ep - x * Kp) - PI, 2 * s * (Ep - Kp) - PI
    else:
        raise DomainError(f"unknown degenerate family {kind!r}")
    if abs(den) < 1e-14 * (abs(num) + 1):
        raise PoleError(f"{kind} denominator vanishes at x={x}")
    return num / den


def degenerate_wp(kind, alpha, tau):
    """wp(z|tau) of the degenerate families in the tau-representation.

    ``alpha`` is the constant of the (x, y) closed forms; the tau-forms use
    i alpha in its place.
    """
    tau = complex(tau)
    consts, dconsts, ddconsts = modular.theta_constants_dtau(tau, 2)
    mq = modular.modular_quantities(tau)
    eta, g2 = mq.eta_w, mq.g2
    etap = modular.eta_prime(tau, eta)
    a = 1j * complex(alpha)
    if kind == "alpha_family":
        return 0.5 * PI * 1j / (tau + a) - eta
    if kind == "L2":
        t3, t4 = consts.v3**4, consts.v4**4
        num = PI**2 * (t3 + t4) * (etap + a * eta) + (tau + a) * (g2 - 0.5 * PI**4 * t3 * t4)
        den = PI**2 * (t3 + t4) * (tau + a) + 12 * (etap + a * eta)
        return num / den
    idx = {"L3": "v3", "L4": "v4"}.get(kind)
    if idx is None:
        raise DomainError(f"unknown degenerate family {kind!r}")
    return _theta_const_logderiv_wp(tau, a, getattr(consts, idx),
                                    getattr(dconsts, idx), getattr(ddconsts, idx), eta)


def _theta_const_logderiv_wp(tau, a, v, dv, ddv, eta):
    """(pi/2i) d/dtau Ln[(2(tau + a) v' + v) / (eta_D^2 v)]."""
    f = 2 * (tau + a) * dv + v
    df = 2 * dv + 2 * (tau + a) * ddv + dv
    dlog = df / f - dv / v - 2j * eta / PI
    return PI / 2j * dlog


def degenerate_wp_L2_logderiv(alpha, tau):
    """L2 family by the log-derivative form with theta2 (same alpha convention)."""
    tau = complex(tau)
    consts, dconsts, ddconsts = modular.theta_constants_dtau(tau, 2)
    eta = weierstrass_eta(tau)
    return _theta_const_logderiv_wp(tau, 1j * complex(alpha), consts.v2, dconsts.v2, ddconsts.v2, eta)


# -- integral identities ------------------------------------------------------


def _complex_quad(f, a, b):
    val, _ = integrate.quad(lambda t: f(a + (b - a) * t), 0.0, 1.0,
                            complex_func=True, epsabs=1e-13, epsrel=1e-12, limit=200)
    return val * (b - a)


def continuous_log_difference(fn, a, b, segments=64):
    """Ln fn(b) - Ln fn(a) continued along the segment [a, b]."""
    prev = fn(a)
    total = 0j
    for j in range(1, segments + 1):
        cur = fn(a + (b - a) * j / segments)
        step = cmath.log(cur / prev)
        if abs(step.imag) >= PI / 2:
            return continuous_log_difference(fn, a, b, segments * 4)
        total += step
        prev = cur
    return total


@dataclass(frozen=True)
class IdentityCheck:
    lhs: complex
    rhs: complex

    @property
    def residual(self):
        return abs(self.lhs - self.rhs)


def integral_identity_x(data, x0, x1):
    """int y dx/(x(x-1)) versus -2 [Ln Btau ratio] between x0 and x1."""
    x0, x1 = complex(x0), complex(x1)
    if x0 == x1:
        return IdentityCheck(0j, 0j)
    lhs = _complex_quad(lambda x: hitchin_y_x(data, x) / (x * (x - 1)), x0, x1)

    def ratio(x):
        t = tau_functions(data, x)
        return t.btau2 / (cmath.sqrt(1 - x) * elliptic_quad(x).Kp * t.btau1)

    rhs = -2 * continuous_log_difference(ratio, x0, x1)
    return IdentityCheck(lhs, rhs)


def integral_identity_tau(data, tau0, tau1):
    """(i/pi) int (WP - Z^2) dtau versus the theta/eta closed form."""
    tau0, tau1 = complex(tau0), complex(tau1)
    if tau0 == tau1:
        return IdentityCheck(0j, 0j)

    def integrand(t):
        s = canon_state(data.A, data.B, t)
        return s.WP - s.Z**2

    lhs = 1j / PI * _complex_quad(integrand, tau0, tau1)
    th = lambda t: theta_bundle(0.5 * (data.A * t + data.B), t).t1
    rhs = (
        continuous_log_difference(th, tau0, tau1)
        - continuous_log_difference(modular.dedekind_eta, tau0, tau1)
        + PI * 1j / 4 * data.A**2 * (tau1 - tau0)
    )
    return IdentityCheck(lhs, rhs)


def integral_identities(data, x0, x1):
    """Both identities; the second runs on the tau-segment between tau(x0), tau(x1)."""
    first = integral_identity_x(data, x0, x1)
    t0, t1 = modular.tau_of_x(x0), modular.tau_of_x(x1)
    return first, integral_identity_tau(data, t0, t1)
