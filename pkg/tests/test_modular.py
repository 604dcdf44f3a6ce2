import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from p6tau import _qseries, modular
from p6tau.errors import ConvergenceError, DomainError

PI = math.pi

taus = st.builds(complex, st.floats(-0.5, 0.5), st.floats(0.6, 2.0))


@pytest.mark.parametrize("tau, expected", [(1j, math.exp(-PI)), (2j, math.exp(-2 * PI))])
def test_nome_on_imaginary_axis(tau, expected):
    assert modular.nome(tau) == pytest.approx(expected, rel=1e-15)
    assert modular.nome(1j) == pytest.approx(0.0432139, abs=1e-7)


def test_nome_modulus():
    assert abs(modular.nome(0.3 + 1.1j)) == pytest.approx(math.exp(-1.1 * PI), rel=1e-14)


@pytest.mark.parametrize("tau", [0.0, -1j, 0.5 - 0.0j])
def test_lower_half_plane_rejected(tau):
    with pytest.raises(DomainError):
        modular.nome(tau)
    with pytest.raises(DomainError):
        modular.theta_constants(tau)


def test_theta_constants_at_i():
    c = modular.theta_constants(1j)
    assert (c.v2 / c.v3) ** 4 == pytest.approx(0.5, abs=1e-14)
    assert (c.v4 / c.v3) ** 4 == pytest.approx(0.5, abs=1e-14)


def test_theta_constants_cusp_limit():
    c = modular.theta_constants(8j)
    assert abs(c.v3 - 1) < 1e-10 and abs(c.v4 - 1) < 1e-10 and abs(c.v2) < 1e-2


@given(taus)
def test_jacobi_identity(tau):
    assert modular.theta_constants(tau).jacobi_residual < 1e-12 * max(1, abs(modular.theta_constants(tau).v3) ** 4)


@pytest.mark.parametrize("tau", [1j, 0.4 + 0.9j, -0.3 + 1.7j])
def test_eta_two_paths(tau):
    a, b = modular.dedekind_eta(tau), modular.dedekind_eta_theta(tau)
    assert abs(a - b) < 1e-12 * abs(a)


def test_eta_at_i_real_positive():
    e = modular.dedekind_eta(1j)
    assert abs(e.imag) < 1e-15 and e.real > 0
    # Gamma(1/4) / (2 pi^(3/4))
    assert e.real == pytest.approx(math.gamma(0.25) / (2 * PI**0.75), rel=1e-14)


def test_eta_translation_phase():
    t = 0.2 + 1.1j
    ratio = modular.dedekind_eta(t + 1) / modular.dedekind_eta(t)
    assert ratio == pytest.approx(cmath.exp(1j * PI / 12), abs=1e-14)


def test_g3_and_j_at_i():
    mq = modular.modular_quantities(1j)
    assert abs(mq.g3) < 1e-12 * abs(mq.g2) ** 1.5
    assert mq.J == pytest.approx(1, abs=1e-12)


def test_j_zero_at_rho():
    mq = modular.modular_quantities(cmath.exp(2j * PI / 3))
    assert abs(mq.g2) < 1e-10 * abs(mq.g3) ** (2 / 3)
    assert abs(mq.J) < 1e-20


def test_vanishing_discriminant_reported():
    assert modular.klein_j(3.0, 1.0) is None


@given(taus)
def test_g2_g3_two_ways(tau):
    for a, b in zip(modular.g2_g3_series(tau), modular.g2_g3_theta(tau)):
        assert abs(a - b) <= 1e-11 * max(abs(b), 1)


def test_j_derivative_matches_difference():
    t, h = 0.1 + 1.2j, 1e-5
    mq = modular.modular_quantities(t)
    fd = (modular.modular_quantities(t + h).J - modular.modular_quantities(t - h).J) / (2 * h)
    assert modular.klein_j_dtau(mq.J, mq.g2, mq.g3) == pytest.approx(fd, rel=1e-8)


def test_eta_derivative_matches_difference():
    t, h = 0.3 + 0.9j, 1e-5
    mq = modular.modular_quantities(t)
    fd = (modular.weierstrass_eta(t + h) - modular.weierstrass_eta(t - h)) / (2 * h)
    assert modular.eta_w_dtau(mq.eta_w, mq.g2) == pytest.approx(fd, rel=1e-8)


def test_x_of_tau_special_points():
    assert modular.x_of_tau(1j) == pytest.approx(0.5, abs=1e-15)
    assert abs(modular.x_of_tau(10j) - 1) < 1e-12
    assert modular.tau_of_x(0.5) == pytest.approx(1j, abs=1e-15)


@pytest.mark.parametrize("x", [0.3, *np.linspace(0.05, 0.95, 7), 0.5 + 0.3j, 0.2 - 0.35j])
def test_round_trip_x(x):
    assert abs(modular.x_of_tau(modular.tau_of_x(x)) - x) < 1e-9


def test_round_trip_tau():
    t = 0.3 + 1.0j
    assert abs(modular.tau_of_x(modular.x_of_tau(t)) - t) < 1e-9


@pytest.mark.parametrize("x", [0, 1, 1 + 1e-9])
def test_fixed_singularities(x):
    with pytest.raises(DomainError):
        modular.tau_of_x(x)


def test_dx_dtau():
    t, h = -0.2 + 0.8j, 1e-5
    fd = (modular.x_of_tau(t + h) - modular.x_of_tau(t - h)) / (2 * h)
    assert modular.dx_dtau(t) == pytest.approx(fd, rel=1e-9)


def test_nome_series_coefficients():
    assert modular.nome_series_coefficients(5) == [1, 8, 84, 992, 12514]


def test_nome_series_near_one():
    x = 0.9 + 0.05j
    assert modular.nome_series(x, order=12) == pytest.approx(modular.nome(modular.tau_of_x(x)), rel=1e-10)


def test_truncation_cap():
    with _qseries.truncation(16), pytest.raises(ConvergenceError):
        modular.theta_constants(0.02j)


@settings(max_examples=25)
@given(st.builds(complex, st.floats(-0.4, 0.4), st.floats(0.95, 1.8)))
def test_eta_squared_ode(tau):
    J = modular.modular_quantities(tau).J
    if abs(J) < 0.05 or abs(J - 1) < 0.05:
        return
    assert modular.eta2_ode_residual(tau) < 1e-6
