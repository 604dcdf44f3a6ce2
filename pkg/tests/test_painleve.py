import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from p6tau import modular, painleve, weierstrass
from p6tau.errors import ConvergenceError, DomainError, PoleError
from p6tau.painleve import HITCHIN, PICARD, InitialData

PI = math.pi
DATA = InitialData(0.3 + 0.2j, 0.1)
# constants with a principal Picard pole at x00 = x(0.8 + 1.1i)
POLE_DATA = InitialData.from_tau_form(0.2 + 0.1j, -0.05 - 0.3j)
# constants with a principal second-series pole
SECOND_DATA = InitialData.from_tau_form(0.1 + 0.6j, 0.2)

data_st = st.builds(
    InitialData,
    st.builds(complex, st.floats(-0.45, 0.45), st.floats(-0.3, 0.3)),
    st.builds(complex, st.floats(-0.45, 0.45), st.floats(-0.2, 0.2)),
)
x_st = st.builds(complex, st.floats(0.1, 0.9), st.floats(-0.4, 0.4))


def test_constant_conventions():
    d = InitialData(0.4 - 0.2j, 0.3)
    assert d.tau_form == (0.2 - 0.1j, 0.15)
    assert InitialData.from_tau_form(*d.tau_form) == d
    assert InitialData.from_x_form(*d.x_form) == d


def test_both_real():
    assert InitialData(0.3, 0.2).both_real
    assert not DATA.both_real


@pytest.mark.parametrize("x", [0.4, 0.25 + 0.3j, 0.8 - 0.1j])
def test_hitchin_residual(x):
    assert painleve.p6_residual(lambda s: painleve.hitchin_y_x(DATA, s), x, HITCHIN) < 1e-6


def test_picard_residual():
    assert painleve.p6_residual(lambda s: painleve.picard_y(DATA, s), 0.4, PICARD) < 1e-6


def test_wrong_parameters_fail():
    assert painleve.p6_residual(lambda s: painleve.hitchin_y_x(DATA, s), 0.4, PICARD) > 1e-3


def test_richardson_option():
    r = painleve.p6_residual(lambda s: painleve.hitchin_y_x(DATA, s), 0.4, HITCHIN, method="richardson")
    assert r < 1e-4


@settings(max_examples=25, deadline=None)
@given(data_st, x_st)
def test_residual_property(d, x):
    try:
        r_h = painleve.p6_residual(lambda s: painleve.hitchin_y_x(d, s), x, HITCHIN)
        r_p = painleve.p6_residual(lambda s: painleve.picard_y(d, s), x, PICARD)
    except PoleError:
        return
    assert r_h < 1e-6 and r_p < 1e-6


@pytest.mark.parametrize("x", [0.5, 0.3 + 0.2j])
def test_forms_agree(x):
    t = modular.tau_of_x(x)
    ys = [
        painleve.hitchin_y_tau(DATA, t),
        painleve.hitchin_y_tau_logderiv(DATA, t),
        painleve.hitchin_y_x(DATA, x),
        painleve.y_from_wp(painleve.hitchin_wp(DATA, t), t),
        painleve.y_from_wp(painleve.hitchin_wp_logderiv(DATA, t), t),
    ]
    for y in ys[1:]:
        assert abs(y - ys[0]) < 1e-8 * abs(ys[0])


def test_wp_y_substitution_inverse():
    t = 0.2 + 1.3j
    assert painleve.wp_from_y(painleve.y_from_wp(0.7 - 0.1j, t), t) == pytest.approx(0.7 - 0.1j)


def test_corollary_split():
    e_over_k, logpart = painleve.hitchin_y_x_split(DATA, 0.35)
    assert e_over_k + logpart == pytest.approx(painleve.hitchin_y_x(DATA, 0.35), rel=1e-9)


def test_log_ratio_derivative():
    x, h = 0.35, 1e-5
    fd = (painleve.hitchin_log_ratio(DATA, x + h) - painleve.hitchin_log_ratio(DATA, x - h)) / (2 * h)
    assert 2 * x * (1 - x) * fd == pytest.approx(painleve.hitchin_y_x(DATA, x), rel=1e-7)


def test_wp_parity():
    flipped = InitialData(-DATA.A, -DATA.B)
    assert painleve.hitchin_wp(flipped, 1.1j) == pytest.approx(painleve.hitchin_wp(DATA, 1.1j), rel=1e-12)


def test_hitchin_z_round_trip():
    z = painleve.hitchin_z(DATA, 1.1j)
    assert abs(weierstrass.wp(z, 1.1j) - painleve.hitchin_wp(DATA, 1.1j)) < 1e-8


@pytest.mark.parametrize("tau", [1.1j, 0.2 + 1.3j])
def test_z_equations(tau):
    z, d2 = painleve.z_second_derivative(DATA, tau)
    assert abs(d2 - painleve.theta_form_rhs(z, tau)) < 1e-4 * abs(d2)
    assert abs(d2 - painleve.wp_form_rhs(z, tau)) < 1e-4 * abs(d2)


def test_picard_pole_is_first_order_for_hitchin():
    t0 = painleve.pole_tau(POLE_DATA, 0, 0)
    products = [abs(painleve.hitchin_y_tau(POLE_DATA, t0 + e)) * e for e in (1e-3, 1e-4, 1e-5)]
    assert products[-1] == pytest.approx(products[-2], rel=1e-3)
    with pytest.raises(PoleError) as err:
        painleve.hitchin_y_tau(POLE_DATA, t0)
    assert err.value.series == "picard"


def test_picard_pole_is_second_order_for_picard():
    t0 = painleve.pole_tau(POLE_DATA, 0, 0)
    slope = math.log(abs(painleve.picard_y_tau(POLE_DATA, t0 + 1e-5))
                     / abs(painleve.picard_y_tau(POLE_DATA, t0 + 1e-4))) / math.log(10)
    assert slope == pytest.approx(2, abs=1e-3)


def test_pic2_data():
    # A tau + B = 1/3 in the theta argument convention of this package
    d = InitialData(0, 1 / 3)
    x, y = modular.x_of_tau(1.2j), painleve.picard_y_tau(d, 1.2j)
    assert abs(y**4 - (6 * y - 4) * y * x + (4 * y - 3) * x**2) < 1e-9


def test_picard_equation_with_quarter():
    r = painleve.picard_equation_residual(lambda X: painleve.picard_u(DATA, X), 2.5 + 0.3j)
    assert r < 1e-6


def test_picard_analytic_derivative():
    x, h = 0.4 + 0.1j, 1e-5
    y, dy = painleve.picard_dy_dx(DATA, x)
    fd = (painleve.picard_y(DATA, x + h) - painleve.picard_y(DATA, x - h)) / (2 * h)
    assert dy == pytest.approx(fd, rel=1e-8)
    assert y == pytest.approx(painleve.picard_y(DATA, x), rel=1e-14)


def test_picard_theta_quotients():
    a, b = painleve.picard_theta_quotients(DATA, 1.2j)
    assert abs(a - b) < 1e-9 * abs(b)


def test_okamoto_image_is_hitchin_class():
    r = painleve.p6_residual(lambda s: painleve.picard_to_hitchin(DATA, s), 0.4, HITCHIN)
    assert r < 1e-5


def test_okamoto_image_matches_hitchin_solution():
    assert painleve.picard_to_hitchin(DATA, 0.4) == pytest.approx(painleve.hitchin_y_x(DATA, 0.4), rel=1e-9)


def test_okamoto_round_trip():
    x = 0.4
    y, dy = painleve.picard_dy_dx(DATA, x)
    _, dh, _ = painleve.numerical_derivatives(lambda s: painleve.picard_to_hitchin(DATA, s), x)
    back = painleve.okamoto(painleve.okamoto(y, dy, x), dh, x, "backward")
    assert abs(back - y) < 1e-8 * abs(y)


def test_okamoto_dx():
    x, h = 0.4, 1e-5
    y, y1, y2 = painleve.numerical_derivatives(lambda s: painleve.picard_y(DATA, s), x)
    fd = (painleve.picard_to_hitchin(DATA, x + h) - painleve.picard_to_hitchin(DATA, x - h)) / (2 * h)
    assert painleve.okamoto_dx(y, y1, y2, x) == pytest.approx(fd, rel=1e-7)


def test_okamoto_direction_checked():
    with pytest.raises(DomainError):
        painleve.okamoto(0.3, 0.1, 0.4, "sideways")


def test_okamoto_keeps_picard_poles():
    x0 = painleve.poles(POLE_DATA, range(0, 1), range(0, 1)).points[0][1]
    products = [abs(painleve.picard_to_hitchin(POLE_DATA, x0 + e)) * e for e in (1e-4, 1e-5)]
    assert products[1] == pytest.approx(products[0], rel=1e-3) and products[1] > 0.1


def test_poles_both_real_empty():
    pl = painleve.poles(InitialData.from_tau_form(1.0, 2.0), range(-5, 6), range(-5, 6))
    assert len(pl) == 0 and pl.filtered == 121


def test_pole_parity_mirror():
    # (m, n) -> (-m, -n) with (A, B) -> (-A, -B) gives the same tau
    d, e = POLE_DATA, InitialData(-POLE_DATA.A, -POLE_DATA.B)
    assert painleve.pole_tau(d, 2, 3) == pytest.approx(painleve.pole_tau(e, -2, -3))


def test_btau1_vanishes_at_principal_poles():
    pl = painleve.poles(POLE_DATA, range(-3, 4), range(-3, 4))
    principal = pl.principal()
    assert principal
    for _, x in principal:
        assert abs(painleve.tau_functions(POLE_DATA, x).btau1) < 1e-8


def test_btau_ratio_painleve_form():
    x, h = 0.35 + 0.05j, 1e-5

    def ln_ratio(s):
        t = painleve.tau_functions(DATA, s)
        return cmath.log(t.btau2 / (cmath.sqrt(1 - s) * painleve.elliptic_quad(s).Kp * t.btau1))

    fd = (ln_ratio(x + h) - ln_ratio(x - h)) / (2 * h)
    assert 2 * x * (1 - x) * fd == pytest.approx(painleve.hitchin_y_x(DATA, x), rel=1e-8)


def test_b_shift_normalization():
    x = 0.37 + 0.1j
    Ax, Bx = DATA.x_form
    t = painleve.tau_functions(DATA, x)
    assert t.btau2 / t.btau1 / (2 * PI) - Ax == pytest.approx(painleve.mero_f(x, Ax, -Bx), rel=1e-12)


def test_second_series_root():
    tau_star = painleve.second_series_tau(SECOND_DATA, -1)
    assert painleve.in_principal_domain(tau_star)
    x_star = modular.x_of_tau(tau_star)
    x_newton = painleve.second_pole_series(SECOND_DATA, x_star + 0.01)
    assert abs(x_newton - x_star) < 1e-9
    with pytest.raises(PoleError) as err:
        painleve.hitchin_wp(SECOND_DATA, tau_star)
    assert err.value.series == "second"
    # theta1 is not small there: this is not a Picard pole
    assert abs(painleve.tau_functions(SECOND_DATA, x_star).btau1) > 1e-3


def test_second_series_blow_up_and_annihilation():
    x_star = modular.x_of_tau(painleve.second_series_tau(SECOND_DATA, -1))
    f = lambda s: painleve.hitchin_y_x(SECOND_DATA, s)
    products, back = [], []
    for e in (1e-4, 1e-5):
        x = x_star + e
        y, dy, _ = painleve.numerical_derivatives(f, x, "richardson", e / 50)
        products.append(abs(y) * e)
        back.append(painleve.okamoto(y, dy, x, "backward"))
    assert products[1] == pytest.approx(products[0], rel=1e-2)
    # the backward image is the Picard solution, finite at x_star
    assert back[1] == pytest.approx(painleve.picard_y(SECOND_DATA, x_star), rel=1e-3)


def test_second_series_far_seed():
    with pytest.raises(ConvergenceError):
        painleve.second_pole_series(InitialData(0.3 + 0.2j, 0.1), 50 + 50j)


@pytest.mark.parametrize("kind", ["alpha_family", "L2", "L3", "L4"])
@pytest.mark.parametrize("alpha", [0.7, 0.7j])
def test_degenerate_residual(kind, alpha):
    y = lambda s: painleve.degenerate_solutions(kind, alpha, s)
    assert painleve.p6_residual(y, 0.35, HITCHIN) < 1e-6


def test_degenerate_symmetries():
    x, a = 0.4, 0.7j
    sol = lambda k: painleve.degenerate_solutions(k, a, x)
    assert sol("L2") * sol("alpha_family") == pytest.approx(x, rel=1e-13)
    assert sol("L3") * sol("L4") == pytest.approx(x, rel=1e-13)


@pytest.mark.parametrize("kind", ["alpha_family", "L2", "L3", "L4"])
def test_degenerate_wp_forms(kind):
    x, a = 0.3, 0.7j
    t = modular.tau_of_x(x)
    y = painleve.y_from_wp(painleve.degenerate_wp(kind, a, t), t)
    assert abs(y - painleve.degenerate_solutions(kind, a, x)) < 1e-7


def test_l2_logderiv_form():
    t = 0.1 + 1.2j
    assert painleve.degenerate_wp_L2_logderiv(0.4, t) == pytest.approx(painleve.degenerate_wp("L2", 0.4, t), rel=1e-9)


def test_unknown_family():
    with pytest.raises(DomainError):
        painleve.degenerate_solutions("L7", 0.1, 0.3)


def test_integral_identities_short_paths():
    first, second = painleve.integral_identities(DATA, 0.40, 0.42)
    assert first.residual < 1e-6 and second.residual < 1e-6
    assert painleve.integral_identity_tau(DATA, 1.1j, 1.15j).residual < 1e-6


def test_zero_length_path():
    assert painleve.integral_identity_x(DATA, 0.4, 0.4).lhs == 0
    assert painleve.integral_identity_tau(DATA, 1.1j, 1.1j).rhs == 0


def test_cauchy_derivatives_polynomial():
    f = lambda s: s**3 - 2 * s
    v, d1, d2 = painleve.cauchy_derivatives(f, 0.4, 0.01)
    assert np.allclose([v, d1, d2], [0.064 - 0.8, 3 * 0.16 - 2, 2.4], atol=1e-12)
