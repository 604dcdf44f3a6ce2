import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from p6tau import modular, weierstrass
from p6tau.errors import DomainError

PI = math.pi

points = st.tuples(
    st.builds(complex, st.floats(0.1, 0.6), st.floats(-0.25, 0.25)),
    st.builds(complex, st.floats(-0.4, 0.4), st.floats(0.8, 1.6)),
)


def test_cubic_relation():
    z, tau = 0.4 + 0.2j, 1.1j
    b = weierstrass.weierstrass_bundle(z, tau)
    g2, g3 = modular.g2_g3_theta(tau)
    assert abs(b.wpp**2 - (4 * b.wp**3 - g2 * b.wp - g3)) < 1e-9 * abs(b.wpp) ** 2


def test_parity():
    a, b = weierstrass.weierstrass_bundle(0.33, 1.2j), weierstrass.weierstrass_bundle(-0.33, 1.2j)
    assert a.wp == pytest.approx(b.wp, rel=1e-13)
    assert a.zeta == pytest.approx(-b.zeta, rel=1e-13)
    assert a.wpp == pytest.approx(-b.wpp, rel=1e-13)


def test_roots_sum_to_zero():
    tau = 1.3j
    e = weierstrass.e_roots(tau)
    assert abs(sum(e)) < 1e-10
    assert e[0] == pytest.approx(weierstrass.wp(1.0, tau), rel=1e-12)


def test_laurent_start():
    z = 1e-3
    assert weierstrass.wp(z, 1.1j) == pytest.approx(1 / z**2, rel=1e-5)


def test_zeta_derivative_is_minus_wp():
    z, tau, h = 0.3 + 0.1j, 0.2 + 1.1j, 1e-5
    fd = (weierstrass.weierstrass_bundle(z + h, tau).zeta - weierstrass.weierstrass_bundle(z - h, tau).zeta) / (2 * h)
    assert fd == pytest.approx(-weierstrass.wp(z, tau), rel=1e-9)


def _lattice_equivalent(a, b, tau, tol=1e-8):
    for s in (1, -1):
        d = a - s * b
        n = round(d.imag / (2 * tau.imag))
        d -= 2 * n * tau
        if abs(d - 2 * round(d.real / 2)) < tol:
            return True
    return False


def test_inverse_round_trip():
    tau = 1.2j
    u = weierstrass.wp(0.3, tau)
    z = weierstrass.wp_inverse(u, tau)
    assert abs(weierstrass.wp(z, tau) - u) < 1e-9 * abs(u)
    assert _lattice_equivalent(z, 0.3, tau)


def test_inverse_large_u():
    z = weierstrass.wp_inverse(1e6, 1.1j)
    assert abs(abs(z) - 1e-3) < 1e-4


@pytest.mark.parametrize("k", [0, 1, 2])
def test_inverse_at_branch_points(k):
    tau = 0.1 + 1.2j
    half = (1.0, 1.0 + tau, tau)[k]
    z = weierstrass.wp_inverse(weierstrass.e_roots(tau)[k], tau)
    assert _lattice_equivalent(z, half, tau)


def test_inverse_near_branch_point_rejected():
    tau = 1.2j
    e1 = weierstrass.e_roots(tau)[0]
    with pytest.raises(DomainError):
        weierstrass.wp_inverse(e1 * (1 + 1e-9), tau)


@settings(max_examples=40)
@given(points)
def test_inverse_property(p):
    z, tau = p
    u = weierstrass.wp(z, tau)
    w = weierstrass.wp_inverse(u, tau)
    assert abs(weierstrass.wp(w, tau) - u) < 1e-8 * max(abs(u), 1)
    assert _lattice_equivalent(w, z, tau, 1e-6)


@settings(max_examples=30)
@given(points)
def test_tau_flow(p):
    z, tau = p
    h = 1e-4
    rows = weierstrass.lemma3_flow(z, tau)
    bp, bm = weierstrass.weierstrass_bundle(z, tau + h), weierstrass.weierstrass_bundle(z, tau - h)
    for r, name in zip(rows, ("sigma", "zeta", "wp", "wpp")):
        fd = (getattr(bp, name) - getattr(bm, name)) / (2 * h)
        assert abs(r - fd) < 1e-6 * max(abs(fd), 1)


def test_flow_composition():
    # d/dtau wp = -d/dz (d/dtau zeta) with z held fixed
    z, tau, h = 0.4 + 0.1j, 0.2 + 1.2j, 1e-5
    dzeta = lambda w: weierstrass.lemma3_flow(w, tau)[1]
    cross = -(dzeta(z + h) - dzeta(z - h)) / (2 * h)
    assert weierstrass.lemma3_flow(z, tau)[2] == pytest.approx(cross, rel=1e-6)


def test_rk4_against_exact_integral():
    A, B, t0, h = 0.3 + 0.2j, 0.1, 1.1j, 1e-3
    s1 = weierstrass.rk4_step(weierstrass.canon_state(A, B, t0), t0, h)
    ex = weierstrass.canon_state(A, B, t0 + h)
    assert abs(s1.Z - ex.Z) < 1e-8 and abs(s1.WP - ex.WP) < 1e-8


def test_canon_rhs_where_wpp_vanishes():
    # A = B = 1: u = 1 + tau is a half-period, so WPP = 0
    tau = 1.1j
    s = weierstrass.canon_state(1, 1, tau)
    assert abs(s.WPP) < 1e-10
    mq = modular.modular_quantities(tau)
    expected = -1j / PI * (4 * (s.WP - mq.eta_w) * s.WP - 2 / 3 * mq.g2)
    assert weierstrass.canon_rhs(s, tau).dWP == pytest.approx(expected, rel=1e-9)


def test_canon_invariant_preserved():
    A, B = 0.3 + 0.2j, 0.1
    for t in np.linspace(1.0, 1.3, 4) * 1j:
        assert abs(weierstrass.canon_invariant(weierstrass.canon_state(A, B, t), t)) < 1e-9


def test_hitchin_h_identity():
    A, B, t0, h = 0.3 + 0.2j, 0.1, 1.1j, 1e-5
    H = lambda t: weierstrass.hitchin_h(weierstrass.canon_state(A, B, t))
    dH = (H(t0 + h) - H(t0 - h)) / (2 * h)
    rhs = weierstrass.hitchin_h_rhs(H(t0), weierstrass.canon_state(A, B, t0), t0)
    assert PI / 1j * dH == pytest.approx(rhs, rel=1e-6)
