import pytest

from qtriterm import coefficients as co
from qtriterm.errors import DomainError, PoleError
from qtriterm.numeric import BasePoint, SeriesControl, relative_error
from qtriterm.qseries import qpoch_infinite
from qtriterm.symmetry import apply, generator

from conftest import admissible

D = SeriesControl(digits=15)
M30 = SeriesControl(digits=30)
M60 = SeriesControl(digits=60)


def pt(seed, ctrl):
    return admissible(seed).to(ctrl)


def test_y1_at_zero():
    p = pt(0, M30)
    a, b, c, _, q = p.as_tuple()
    qp = lambda v: qpoch_infinite(v, q, M30)
    expect = qp(q) * qp(c) / (qp(a) * qp(b))
    assert relative_error(co.y1(a, b, c, M30.num(0), q, M30), expect, M30) < M30.num("1e-28")


def test_y1_pole_at_a_one():
    p = pt(0, D)
    with pytest.raises(PoleError):
        co.y1(1.0, p.b, p.c, p.x, p.q, D)


def test_y2_domain_and_unit_power():
    p = pt(0, M30)
    a, b, c, x, q = p.as_tuple()
    with pytest.raises(DomainError):
        co.y2(a, b, c, M30.num(0), q, M30)
    # c = q: x**(1 - gamma) == 1, so y2 reduces to y1 with the same arguments
    assert relative_error(co.y2(a, b, q, x, q, M30), co.y1(a, b, q, x, q, M30), M30) < M30.num("1e-27")


@pytest.mark.parametrize("fn", [co.y1, co.y2])
def test_y_precision_doubling(fn):
    p30, p60 = pt(1, M30), pt(1, M60)
    lo = fn(*p30.as_tuple(), M30)
    hi = fn(*p60.as_tuple(), M60)
    assert abs(lo - M30.num(hi)) <= M30.num("1e-26") * abs(lo)
    assert relative_error(fn(*pt(1, D).as_tuple(), D), float(hi), D) < 1e-12


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_Y_zero_shift_and_unit_closed(seed):
    p = pt(seed, M30)
    assert co.Y((0, 0, 0, 0), p, M30) == 0
    err = relative_error(co.Y(co.UNIT, p, M30), co.Y_unit_closed(p, M30), M30)
    assert err < M30.num("1e-25")


def test_Y_unit_closed_vanishes_at_c_equal_q():
    p = pt(0, M30)
    assert co.Y_unit_closed(p.replace(c=p.q), M30) == 0


@pytest.mark.parametrize("shift", [(2, -1, 1, 3), (1, 0, -2, 1), (-1, 2, 2, 0)])
def test_Y_antisymmetry(shift):
    p = pt(2, M30)
    s = p.shifted(shift)
    inv = tuple(-v for v in shift)
    back = co.Y(inv, s, M30)
    assert relative_error(back, -co.Y(shift, p, M30), M30) < M30.num("1e-25")


@pytest.mark.parametrize("ctrl", [D, M30], ids=["double", "mp30"])
@pytest.mark.parametrize("seed", [0, 1])
def test_degenerate_coefficients(ctrl, seed):
    p = pt(seed, ctrl)
    tol = 1e-12 if ctrl.double else ctrl.num("1e-25")
    assert abs(co.Q_coeff((0, 0, 0, 0), p, ctrl)) < tol
    assert abs(co.R_coeff((0, 0, 0, 0), p, ctrl) - 1) < tol
    assert abs(co.Q_coeff(co.UNIT, p, ctrl) - 1) < tol
    assert abs(co.R_coeff(co.UNIT, p, ctrl)) < tol


def _q0011(p):
    a, b, c, x, q = p.as_tuple()
    return (1 - a) * (1 - b) * (c - a * b * x) / ((c - a) * (c - b))


@pytest.mark.parametrize("seed", [0, 3])
def test_Q_contiguous_closed_form(seed):
    p = pt(seed, M30)
    assert relative_error(co.Q_coeff((0, 0, 1, 1), p, M30), _q0011(p), M30) < M30.num("1e-25")


@pytest.mark.parametrize("seed", [0, 3])
def test_R_contiguous_value(seed):
    # x -> 0 turns every series into 1, so Q + R = 1 at this shift; since
    # R does not depend on x, that fixes R = 1 - (1-a)(1-b)c/((c-a)(c-b)).
    p = pt(seed, M30)
    a, b, c, x, q = p.as_tuple()
    expect = 1 - (1 - a) * (1 - b) * c / ((c - a) * (c - b))
    got = co.R_coeff((0, 0, 1, 1), p, M30)
    assert relative_error(got, expect, M30) < M30.num("1e-25")
    other = co.R_coeff((0, 0, 1, 1), p.replace(x=x / 3), M30)
    assert relative_error(got, other, M30) < M30.num("1e-25")
    assert relative_error(co.R_direct((0, 0, 1, 1), p, M30), expect, M30) < M30.num("1e-25")


@pytest.mark.parametrize("shift", [(0, 0, 0, 0), co.UNIT, (2, -1, 1, 3), (-3, 1, 2, -2)])
def test_relation_residual(shift):
    p = pt(0, M30)
    assert co.relation_residual(shift, p, M30) < M30.num("1e-25")


def test_evaluate_qr_consistent():
    p = pt(0, M30)
    res = co.evaluate_qr((2, -1, 1, 3), p, M30)
    assert res.Q == co.Q_coeff((2, -1, 1, 3), p, M30)
    assert res.R == co.R_coeff((2, -1, 1, 3), p, M30)
    assert res.residual < M30.num("1e-25")
    assert res.terms_used > 0


@pytest.mark.parametrize("shift", [(1, 2, 1, 0), (2, -1, 1, 3), (0, 1, -1, 2)])
def test_bridge_against_relation(shift):
    p = pt(1, M30)
    k, l, m, n = shift
    a, b, c, x, q = p.as_tuple()
    lhs = co.Q_coeff((k - 1, l - 1, m - 1, n), BasePoint(a * q, b * q, c * q, x, q), M30)
    rhs = co.bridge_factor(p, M30) * co.R_direct(shift, p, M30)
    assert relative_error(lhs, rhs, M30) < M30.num("1e-25")


@pytest.mark.parametrize("shift", [(0, 0, 1, 1), (2, -1, 1, 3), (1, 1, 0, -1)])
def test_lambda_identity(shift):
    p = pt(0, M30)
    s2, p2 = apply(generator("s2"), shift, p)
    lhs = co.Y(s2, p2, M30)
    rhs = -co.lambda_factor(shift, p, M30) * co.Y(shift, p, M30)
    assert relative_error(lhs, rhs, M30) < M30.num("1e-25")


def test_lambda_precision_doubling():
    lo = co.lambda_factor((2, -1, 1, 3), pt(0, M30), M30)
    hi = co.lambda_factor((2, -1, 1, 3), pt(0, M60), M60)
    assert abs(lo - M30.num(hi)) <= M30.num("1e-26") * abs(lo)


@pytest.mark.parametrize("shift", [(0, 0, 0, 0), (2, -1, 1, 3)])
def test_swap_identities(shift):
    e1, e2 = co.swap_residuals(shift, pt(0, M30), M30)
    assert e1 < M30.num("1e-25") and e2 < M30.num("1e-25")


def test_shift_vector():
    s = co.ShiftVector.of((1, 2, 3, 4))
    assert tuple(s) == (1, 2, 3, 4)
    assert co.ShiftVector.of(s) is s


def test_gamma_exponent():
    q = M30.num("0.3")
    assert abs(co.gamma_exponent(q**3, q, M30) - 3) < M30.num("1e-28")
    with pytest.raises(DomainError):
        co.gamma_exponent(M30.num(-1), q, M30)
