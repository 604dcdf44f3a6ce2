"""Algebraic solutions and curves uniformized by theta quotients.

Each curve is an integer polynomial stored as ``{exponents: coefficient}``
in the variables listed in ``CurveSpec.variables``.  Parameterizations use
the canonical constants of :mod:`p6tau.painleve` with A = 0, so
``A tau + B = B`` and theta functions are taken at B/2.
"""

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import modular
from .errors import DomainError, PoleError
from .painleve import InitialData, hitchin_y_tau, picard_y_tau
from .theta import POLE_GUARD, theta_bundle

PI = math.pi


class CurveId(str, enum.Enum):
    PIC2 = "PIC2"
    HH = "HH"
    P15 = "P15"
    XU = "XU"
    CURVE1 = "CURVE1"
    X8 = "X8"
    X85 = "X85"


@dataclass(frozen=True)
class CurveSpec:
    variables: tuple
    terms: dict
    note: str = ""
    genus: int | None = None


CATALOG = {
    CurveId.PIC2: CurveSpec(
        ("x", "y"),
        {(0, 4): 1, (1, 2): -6, (1, 1): 4, (2, 1): 4, (2, 0): -3},
        "Picard solution at A tau + B = 1/3",
        0,
    ),
    CurveId.HH: CurveSpec(
        ("x", "y"),
        {(0, 4): 1, (1, 3): -2, (0, 3): -2, (2, 1): -2, (1, 1): -2,
         (1, 2): 6, (3, 0): 1, (2, 0): -1, (1, 0): 1},
        "Hitchin solution at A tau + B = 1/3",
        0,
    ),
    CurveId.P15: CurveSpec(
        ("x", "y"),
        {
            (0, 12): 1,
            (1, 10): -50,
            (2, 9): 140, (1, 9): 140,
            (3, 8): -160, (2, 8): -445, (1, 8): -160,
            (4, 7): 64, (3, 7): 560, (2, 7): 560, (1, 7): 64,
            (4, 6): -240, (3, 6): -780, (2, 6): -240,
            (4, 5): 360, (3, 5): 360,
            (4, 4): -105,
            (5, 3): -80, (4, 3): -80,
            (6, 2): 16, (5, 2): 94, (4, 2): 16,
            (6, 1): -20, (5, 1): -20,
            (6, 0): 5,
        },
        "Picard solution at A tau + B = 1/5",
        1,
    ),
    CurveId.XU: CurveSpec(
        ("x", "u"),
        {(4, 16): 1, (3, 12): -20, (3, 10): 32, (2, 10): 32,
         (3, 8): -16, (2, 8): -58, (1, 8): -16,
         (2, 6): 32, (1, 6): 32, (1, 4): -20, (0, 0): 1},
        "Picard's equation at A tau + B = 1/4; x is Picard's variable (inverse of the P6 x)",
        None,
    ),
    CurveId.CURVE1: CurveSpec(
        ("u", "v"),
        # u^2 * [4 (u^2 + u^-2) v - v^4 + 6 v^2 + 3]
        {(4, 1): 4, (0, 1): 4, (2, 4): -1, (2, 2): 6, (2, 0): 3},
        "x = u^4, y = -u^2 v applied to PIC2",
        3,
    ),
    CurveId.X8: CurveSpec(
        ("x", "y"),
        {(0, 2): 1, (8, 0): -1, (4, 0): -14, (0, 0): -1},
        "hyperelliptic curve birational to CURVE1",
        3,
    ),
    CurveId.X85: CurveSpec(
        ("x", "z"),
        # z^2 - (x^8 + 14 x^4 + 1)(x^5 - x)
        {(0, 2): 1, (13, 0): -1, (9, 0): -13, (5, 0): 13, (1, 0): 1},
        "hyperelliptic curve over the X8 uniformizer",
        None,
    ),
}


@dataclass(frozen=True)
class CurveSample:
    tau: complex
    coords: tuple
    residual: float


def _spec(curve):
    try:
        return CATALOG[CurveId(curve)]
    except ValueError as exc:
        raise DomainError(f"unknown curve {curve!r}") from exc


def monomials(curve, coords):
    spec = _spec(curve)
    if len(coords) != len(spec.variables):
        raise DomainError(
            f"{CurveId(curve).value} takes {len(spec.variables)} coordinates, got {len(coords)}"
        )
    vals = [complex(c) for c in coords]
    out = []
    for exps, coeff in spec.terms.items():
        m = complex(coeff)
        for v, e in zip(vals, exps):
            m *= v**e
        out.append(m)
    return out


def curve_value(curve, coords):
    return sum(monomials(curve, coords))


def curve_residual(curve, coords):
    """|P(coords)| / (1 + max |monomial|)."""
    terms = monomials(curve, coords)
    return abs(sum(terms)) / (1 + max(abs(t) for t in terms))


def catalog_table():
    """Machine-readable catalog: integer coefficients with exponent lists."""
    rows = []
    for cid, spec in CATALOG.items():
        rows.append({
            "name": cid.value,
            "variables": list(spec.variables),
            "terms": [{"exponents": list(e), "coefficient": int(c)}
                      for e, c in sorted(spec.terms.items(), reverse=True)],
            "genus": spec.genus,
            "note": spec.note,
        })
    return rows


# -- parameterizations ----------------------------------------------------------


def _bundle(z, tau):
    b = theta_bundle(z, tau)
    if abs(b.t1) < POLE_GUARD * abs(b.dt1):
        raise PoleError(f"theta1({z}|{tau}) vanishes")
    return b


def curve1_coords(tau):
    """u = theta4/theta3, v = theta2^2/theta1^2 at 1/6."""
    c = modular.theta_constants(tau)
    b = _bundle(1 / 6, tau)
    return c.v4 / c.v3, b.t2**2 / b.t1**2


def xuni(tau):
    """eta_D^3 theta2(1/3) / (theta1^2(1/6) theta3^2(1/6))."""
    b6 = _bundle(1 / 6, tau)
    b3 = theta_bundle(1 / 3, tau)
    return modular.dedekind_eta(tau) ** 3 * b3.t2 / (b6.t1**2 * b6.t3**2)


def x8_involution(coords):
    """Hyperelliptic involution (x, y) -> (x, -y) of X8."""
    X, Y = coords
    return X, -Y


def birational_curve1_x8(direction, coords):
    """The rational maps between CURVE1 (u, v) and X8 (x, y), as displayed.

    The two maps compose to the identity only up to ``x8_involution``:
    backward(x8_involution(forward(p))) == p.
    """
    a, b = (complex(c) for c in coords)
    if direction == "forward":
        u, v = a, b
        den1, den2 = 2 * (u * u + v), v * v * (v * v - 1)
        if den1 == 0 or den2 == 0 or v * v + 3 == 0:
            raise PoleError(f"forward map undefined at (u, v) = {coords}")
        X = u * (v * v - 1) / den1
        Y = (v * v + 3) ** 2 / den2 * (4 * u * u * v / (v * v + 3) + 1)
        return X, Y
    if direction == "backward":
        X, Y = a, b
        if X == 0:
            raise PoleError("backward map has a base point at x = 0")
        return (X**4 - Y - 1) / (4 * X), (X**4 - Y + 1) / (2 * X * X)
    raise DomainError(f"direction must be 'forward' or 'backward', got {direction!r}")


def x85_z(tau, base=1.5j, segments=64):
    """z on X85 over x = xuni(tau), continued from the principal root at ``base``.

    The path is the straight segment base -> tau, refined until successive
    roots differ by less than a quarter of their size.
    """
    tau = complex(tau)

    def rhs(t):
        x = xuni(t)
        return (x**8 + 14 * x**4 + 1) * (x**5 - x)

    for _ in range(6):
        z = cmath.sqrt(rhs(base))
        ok = True
        for j in range(1, segments + 1):
            w = cmath.sqrt(rhs(base + (tau - base) * j / segments))
            if abs(w + z) < abs(w - z):
                w = -w
            if abs(w - z) > 0.25 * max(abs(w), abs(z)):
                ok = False
                break
            z = w
        if ok:
            return z
        segments *= 4
    raise DomainError(f"could not continue the X85 root to tau={tau}")


def x85_z_along(path):
    """Continue z along an explicit sequence of tau values (first point principal)."""
    z = None
    out = []
    for t in path:
        x = xuni(t)
        w = cmath.sqrt((x**8 + 14 * x**4 + 1) * (x**5 - x))
        if z is not None and abs(w + z) < abs(w - z):
            w = -w
        out.append(w)
        z = w
    return out


def _picard_coords(B, tau):
    return modular.x_of_tau(tau), picard_y_tau(InitialData(0, B), tau)


def coords_for(curve, tau):
    tau = complex(tau)
    cid = CurveId(curve)
    if cid is CurveId.PIC2:
        return _picard_coords(1 / 3, tau)
    if cid is CurveId.HH:
        return modular.x_of_tau(tau), hitchin_y_tau(InitialData(0, 1 / 3), tau)
    if cid is CurveId.P15:
        return _picard_coords(1 / 5, tau)
    if cid is CurveId.XU:
        x, y = _picard_coords(1 / 4, tau)
        return 1 / x, cmath.sqrt(y)
    if cid is CurveId.CURVE1:
        return curve1_coords(tau)
    if cid is CurveId.X8:
        return birational_curve1_x8("forward", curve1_coords(tau))
    if cid is CurveId.X85:
        return xuni(tau), x85_z(tau)
    raise DomainError(f"no parameterization for {cid}")


def parameterize(curve, tau):
    coords = coords_for(curve, tau)
    return CurveSample(complex(tau), tuple(coords), curve_residual(curve, coords))


def hh_theta_quotient(tau):
    """The HH ordinate written with theta functions at 1/6 only."""
    c = modular.theta_constants(tau)
    b = _bundle(1 / 6, tau)
    return ((c.v4 / c.v3) ** 2 * (PI * c.v2**2 * b.t3 * b.t4 / (b.t2 * b.dt1) - 1)
            * b.t2**2 / b.t1**2)


def triple_point(n, m, N, tau):
    """(x, y) of the algebraic Hitchin solution with theta arguments (n tau + m)/N."""
    tau = complex(tau)
    c = modular.theta_constants(tau)
    b = _bundle((n * tau + m) / N, tau)
    den = b.dt1 + 2j * PI * n / N * b.t1
    if abs(den) < 1e-13 * abs(b.dt1):
        raise PoleError("second pole series", series="second")
    y = (c.v4 / c.v3) ** 2 * b.t2 / b.t1**2 * (PI * c.v2**2 * b.t3 * b.t4 / den - b.t2)
    return (c.v4 / c.v3) ** 4, y


def triple_y_of_x(n, m, N):
    """y as a function of x on the branch tau = tau_of_x(x)."""
    return lambda x: triple_point(n, m, N, modular.tau_of_x(x))[1]


# -- Schwarzian equations ---------------------------------------------------------


def _five_point(f, t, h):
    fm2, fm1, f0, fp1, fp2 = (f(t + k * h) for k in (-2, -1, 0, 1, 2))
    d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h)
    d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h)
    d3 = (-fm2 + 2 * fm1 - 2 * fp1 + fp2) / (2 * h**3)
    return d1, d2, d3


def stencil_derivatives(f, t, h):
    """(f', f'', f''') from five-point stencils at h and h/2, Richardson-combined."""
    coarse = _five_point(f, t, h)
    fine = _five_point(f, t, h / 2)
    return tuple((4 * b - a) / 3 for a, b in zip(coarse, fine))


def schwarzian_x_target(x):
    return -0.5 * (x * x - x + 1) / (x * x * (x - 1) ** 2)


def schwarzian_s_target(s):
    """{tau; s} for tau = i K(s)/K'(s) with s = sqrt(x)."""
    return (s * s + 1) ** 2 / (2 * s * s * (s * s - 1) ** 2)


@dataclass(frozen=True)
class SchwarzianCheck:
    x_residual: float
    heun_residual: float
    details: dict = field(default_factory=dict)


def schwarzian_checks(tau, h=None):
    """Scaled residuals of the third-order equation for x(tau) and of {tau; s}.

    Both x(tau) and s(tau) = theta4^2/theta3^2 are differentiated in tau by
    five-point stencils; {tau; s} follows by inversion.  Residuals are divided
    by the target with every term replaced by its modulus, which never vanishes.
    """
    tau = complex(tau)
    if not tau.imag > 0.1:
        raise DomainError(f"tau={tau} too close to the real axis for the stencil")
    ht = h if h is not None else 1e-2 * min(1.0, tau.imag)
    x = modular.x_of_tau(tau)
    d1, d2, d3 = stencil_derivatives(modular.x_of_tau, tau, ht)
    lhs = d3 / d1**3 - 1.5 * d2**2 / d1**4
    target = schwarzian_x_target(x)
    ax = abs(x)
    x_res = abs(lhs - target) / (0.5 * (ax * ax + ax + 1) / (ax * ax * abs(x - 1) ** 2))

    def s_of(t):
        c = modular.theta_constants(t)
        return (c.v4 / c.v3) ** 2

    s = s_of(tau)
    s1, s2, s3 = stencil_derivatives(s_of, tau, ht)
    # {tau; s} = -{s; tau} / s'^2, free of the branch of tau(s)
    sch = -(s3 / s1 - 1.5 * (s2 / s1) ** 2) / s1**2
    starget = schwarzian_s_target(s)
    a2 = abs(s) ** 2
    heun_res = abs(sch - starget) / ((a2 + 1) ** 2 / (2 * a2 * abs(s * s - 1) ** 2))
    return SchwarzianCheck(x_res, heun_res, {"x": x, "s": s, "schwarzian_s": sch})
