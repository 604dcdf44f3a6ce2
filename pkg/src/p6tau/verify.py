"""Identity suites driven by the ``verify`` subcommand.

Each suite yields ``Check`` records (name, measured value, threshold).
Random sample points come from ``numpy.random.default_rng(seed)``.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import curves, elliptic, modular, painleve, theta, weierstrass
from .errors import BranchWarning

PI = math.pi


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    threshold: float

    @property
    def passed(self):
        return bool(np.isfinite(self.value) and self.value < self.threshold)

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.name:<44s} {self.value:10.3e}  (< {self.threshold:.0e})"


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def _random_tau(rng, n, lo=0.8, hi=1.6):
    return rng.uniform(-0.5, 0.5, n) + 1j * rng.uniform(lo, hi, n)


def _random_x(rng, n):
    return rng.uniform(0.15, 0.85, n) + 1j * rng.uniform(-0.3, 0.3, n)


def _random_data(rng, n):
    A = rng.uniform(-0.4, 0.4, n) + 1j * rng.uniform(0.05, 0.3, n)
    B = rng.uniform(-0.3, 0.3, n) + 1j * rng.uniform(-0.1, 0.1, n)
    return [painleve.InitialData(a, b) for a, b in zip(A, B)]


def theta_suite(rng):
    taus = _random_tau(rng, 8)
    zs = rng.uniform(-0.4, 0.4, 8) + 1j * rng.uniform(-0.2, 0.2, 8)
    jac = max(modular.theta_constants(t).jacobi_residual for t in taus)
    yield Check("Jacobi identity", jac, 1e-12)

    h = 1e-5
    zerr = terr = 0.0
    for z, t in zip(zs, taus):
        b, dz, dt = theta.theta_derivatives(z, t)
        for k, name in enumerate(("t1", "t2", "t3", "t4", "dt1")):
            fz = (getattr(theta.theta_bundle(z + h, t), name) - getattr(theta.theta_bundle(z - h, t), name)) / (2 * h)
            ft = (getattr(theta.theta_bundle(z, t + h), name) - getattr(theta.theta_bundle(z, t - h), name)) / (2 * h)
            scale = max(abs(fz), abs(getattr(b, name)), 1.0)
            zerr = max(zerr, abs(dz[k] - fz) / scale)
            terr = max(terr, abs(dt[k] - ft) / max(abs(ft), abs(getattr(b, name)), 1.0))
    yield Check("derivative system in z vs differences", zerr, 1e-8)
    yield Check("derivative system in tau vs differences", terr, 1e-7)

    rec = 0.0
    for z, t in zip(zs[:4], taus[:4]):
        for n in range(2, 7):
            got = theta.theta_multiply(n, z, t)
            ref = theta.theta_bundle(n * z, t)
            for name in ("t1", "t2", "t3", "t4", "dt1"):
                rec = max(rec, abs(getattr(got, name) - getattr(ref, name)) / max(abs(getattr(ref, name)), 1.0))
    yield Check("multiplication recursion n=2..6", rec, 1e-9)

    g = max(max(_rel(a, b) for a, b in zip(modular.g2_g3_series(t), modular.g2_g3_theta(t))) for t in taus)
    yield Check("g2, g3 series vs theta constants", g, 1e-11)
    mq = modular.modular_quantities(1j)
    yield Check("g3(i) = 0", abs(mq.g3) / abs(mq.g2) ** 1.5, 1e-12)
    yield Check("J(i) = 1", abs(mq.J - 1), 1e-12)
    eta = max(_rel(modular.dedekind_eta_theta(t), modular.dedekind_eta(t)) for t in taus)
    yield Check("Dedekind eta: product vs theta1(tau|3tau)", eta, 1e-12)
    ode = max(modular.eta2_ode_residual(t) for t in (1.2j, 0.3 + 1.1j, 0.1 + 1.6j))
    yield Check("eta_D^2 Fuchsian equation in J", ode, 1e-6)


def elliptic_suite(rng):
    xs = list(_random_x(rng, 10)) + list(np.linspace(0.05, 0.95, 10))
    leg = max(elliptic.elliptic_quad(x).legendre_residual for x in xs)
    yield Check("Legendre relation EK'+E'K-KK'=pi/2", leg, 1e-12)
    h = 1e-6
    der = 0.0
    for x in xs[:6]:
        d = elliptic.elliptic_derivatives(x)
        qp, qm = elliptic.elliptic_quad(x + h), elliptic.elliptic_quad(x - h)
        fd = [(getattr(qp, n) - getattr(qm, n)) / (2 * h) for n in ("K", "Kp", "E", "Ep")]
        der = max(der, max(_rel(a, b) for a, b in zip(d, fd)))
    yield Check("derivative rules vs differences", der, 1e-8)
    rt = max(abs(modular.x_of_tau(modular.tau_of_x(x)) - x) for x in xs)
    yield Check("x(tau(x)) round trip", rt, 1e-12)
    target = [1, 8, 84, 992, 12514]
    got = modular.nome_taylor_from_tau(5)
    nome = max(abs(g - c) / c for g, c in zip(got, target))
    yield Check("nome coefficients from tau(x)", nome, 1e-5)
    tb = 0.0
    for x in xs[:5]:
        t = modular.tau_of_x(x)
        b = elliptic.transition_basis(x)
        c, dc = modular.theta_constants_dtau(t, 1)
        tb = max(tb, _rel(b.theta3sq, c.v3**2), _rel(b.theta2sq, c.v2**2),
                 _rel(b.eta_w, modular.weierstrass_eta(t)),
                 min(_rel(b.dot_theta2, dc.v2), _rel(-b.dot_theta2, dc.v2)))
    yield Check("transition basis theta3^2, theta2^2, eta", tb, 1e-10)


def weierstrass_suite(rng):
    taus = _random_tau(rng, 6)
    zs = rng.uniform(0.1, 0.6, 6) + 1j * rng.uniform(-0.2, 0.2, 6)
    cub = 0.0
    for z, t in zip(zs, taus):
        b = weierstrass.weierstrass_bundle(z, t)
        g2, g3 = modular.g2_g3_series(t)
        cub = max(cub, abs(b.wpp**2 - (4 * b.wp**3 - g2 * b.wp - g3)) / abs(b.wpp) ** 2)
    yield Check("wp'^2 = 4 wp^3 - g2 wp - g3", cub, 1e-9)
    yield Check("e1 + e2 + e3 = 0", max(abs(sum(weierstrass.e_roots(t))) for t in taus), 1e-10)
    h = 1e-5
    flow = 0.0
    for z, t in zip(zs, taus):
        rows = weierstrass.lemma3_flow(z, t)
        bp, bm = weierstrass.weierstrass_bundle(z, t + h), weierstrass.weierstrass_bundle(z, t - h)
        for r, n in zip(rows, ("sigma", "zeta", "wp", "wpp")):
            fd = (getattr(bp, n) - getattr(bm, n)) / (2 * h)
            flow = max(flow, abs(r - fd) / max(abs(fd), 1.0))
    yield Check("tau-flow of sigma, zeta, wp, wp'", flow, 1e-6)
    A, B, t0 = 0.3 + 0.2j, 0.1, 1.1j
    s = weierstrass.canon_state(A, B, t0)
    s1 = weierstrass.rk4_step(s, t0, 1e-3)
    ex = weierstrass.canon_state(A, B, t0 + 1e-3)
    rk = max(abs(s1.Z - ex.Z), abs(s1.WP - ex.WP))
    yield Check("canonical system: RK4 step vs exact integral", rk, 1e-8)
    H = lambda t: weierstrass.hitchin_h(weierstrass.canon_state(A, B, t))
    dH = (H(t0 + h) - H(t0 - h)) / (2 * h)
    hid = _rel(PI / 1j * dH, weierstrass.hitchin_h_rhs(H(t0), s, t0))
    yield Check("Hitchin H derivative identity", hid, 1e-6)
    inv = 0.0
    for z, t in zip(zs, taus):
        u = weierstrass.wp(z, t)
        inv = max(inv, _rel(weierstrass.wp(weierstrass.wp_inverse(u, t), t), u))
    yield Check("wp(wp^-1(u)) = u", inv, 1e-9)


def painleve_suite(rng):
    data = _random_data(rng, 4)
    xs = _random_x(rng, 4)
    forms = 0.0
    for d, x in zip(data, xs):
        t = modular.tau_of_x(x)
        ys = [
            painleve.hitchin_y_tau(d, t),
            painleve.hitchin_y_tau_logderiv(d, t),
            painleve.hitchin_y_x(d, x),
            painleve.y_from_wp(painleve.hitchin_wp(d, t), t),
        ]
        forms = max(forms, max(_rel(a, ys[0]) for a in ys[1:]))
    yield Check("solution forms agree pairwise", forms, 1e-8)
    hres = max(painleve.p6_residual(lambda x, d=d: painleve.hitchin_y_x(d, x), x, painleve.HITCHIN)
               for d, x in zip(data, xs))
    yield Check("P6 residual, Hitchin (1/8,1/8,1/8,1/8)", hres, 1e-6)
    pres = max(painleve.p6_residual(lambda x, d=d: painleve.picard_y(d, x), x, painleve.PICARD)
               for d, x in zip(data, xs))
    yield Check("P6 residual, Picard (0,0,0,0)", pres, 1e-6)
    ok = max(painleve.p6_residual(lambda x, d=d: painleve.picard_to_hitchin(d, x), x, painleve.HITCHIN)
             for d, x in zip(data[:2], xs[:2]))
    yield Check("Okamoto image of Picard is Hitchin-class", ok, 1e-5)
    deg = max(painleve.p6_residual(lambda x, k=k: painleve.degenerate_solutions(k, 0.7j, x), 0.35,
                                   painleve.HITCHIN) for k in ("alpha_family", "L2", "L3", "L4"))
    yield Check("one-parameter families", deg, 1e-6)
    d = painleve.InitialData(0.3 + 0.2j, 0.1)
    yield Check("integral identity in x", painleve.integral_identity_x(d, 0.40, 0.42).residual, 1e-6)
    yield Check("integral identity in tau", painleve.integral_identity_tau(d, 1.1j, 1.15j).residual, 1e-6)


def curves_suite(rng):
    taus = _random_tau(rng, 5, 0.8, 2.0)
    for cid in curves.CurveId:
        worst = max(curves.parameterize(cid, t).residual for t in taus)
        yield Check(f"curve {cid.value} max residual", worst, 1e-8)
    sch = [curves.schwarzian_checks(t) for t in (1.2j, 0.3 + 1.5j)]
    yield Check("Schwarzian equation for x(tau)", max(s.x_residual for s in sch), 1e-5)
    yield Check("Schwarzian {tau; s}", max(s.heun_residual for s in sch), 1e-5)
    prop = max(painleve.p6_residual(curves.triple_y_of_x(*nmN), 0.4 + 0.1j, painleve.HITCHIN)
               for nmN in ((0, 1, 3), (0, 1, 5), (1, 0, 4)))
    yield Check("algebraic Hitchin triples in P6", prop, 1e-5)


SUITES = {
    "theta": theta_suite,
    "elliptic": elliptic_suite,
    "weierstrass": weierstrass_suite,
    "painleve": painleve_suite,
    "curves": curves_suite,
}


def run_suite(name, seed=0):
    """Checks of one suite (or all of them for ``"all"``), in a fixed order."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BranchWarning)
        for n in names:
            rng = np.random.default_rng(seed)
            out.extend(SUITES[n](rng))
    return out
