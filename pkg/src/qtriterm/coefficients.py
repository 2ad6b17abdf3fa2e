"""Coefficients Q, R of the three-term relation

    phi(aq^k, bq^l; cq^m; xq^n) = Q phi(aq, bq; cq; x) + R phi(a, b; c; x)

computed from the Wronskian-type combination Y of two independent
solutions y1, y2, with R obtained from Q through the bridge identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .numeric import BasePoint, SeriesControl
from .qseries import phi21_continued, qpoch_finite, qpoch_infinite
from .errors import DomainError

UNIT = (1, 1, 1, 0)


@dataclass(frozen=True)
class ShiftVector:
    k: int
    l: int
    m: int
    n: int

    def __iter__(self):
        return iter((self.k, self.l, self.m, self.n))

    @classmethod
    def of(cls, s) -> "ShiftVector":
        return s if isinstance(s, cls) else cls(*(int(v) for v in s))


@dataclass(frozen=True)
class CoeffResult:
    Q: object
    R: object
    residual: object
    terms_used: int


def gamma_exponent(c, q, ctrl: SeriesControl):
    """gamma with c = q**gamma."""
    if not c > 0:
        raise DomainError("c must be positive for a real exponent")
    return ctrl.log(c) / ctrl.log(q)


def _cached(fn):
    cached = lru_cache(maxsize=65536)(fn)

    def wrapper(a, b, c, x, q, ctrl):
        if ctrl.tracker is not None:
            return fn(a, b, c, x, q, ctrl)
        return cached(a, b, c, x, q, ctrl)

    wrapper.cache_clear = cached.cache_clear
    return wrapper


@_cached
def _y1(a, b, c, x, q, ctrl):
    qp = lambda v: qpoch_infinite(v, q, ctrl)
    den = ctrl.guard(qp(a), "(a)_inf") * ctrl.guard(qp(b), "(b)_inf")
    phi, terms = phi21_continued(a, b, c, x, q, ctrl)
    return qp(q) * qp(c) / den * phi, terms


@_cached
def _y2(a, b, c, x, q, ctrl):
    if not x > 0:
        raise DomainError("y2 needs x > 0")
    qp = lambda v: qpoch_infinite(v, q, ctrl)
    g = gamma_exponent(c, q, ctrl)
    aa, bb, cc = a * q / c, b * q / c, q * q / c
    den = ctrl.guard(qp(aa), "(aq/c)_inf") * ctrl.guard(qp(bb), "(bq/c)_inf")
    phi, terms = phi21_continued(aa, bb, cc, x, q, ctrl)
    return qp(q) * qp(cc) / den * ctrl.power(x, 1 - g) * phi, terms


def y1(a, b, c, x, q, ctrl: SeriesControl):
    return _y1(a, b, c, x, q, ctrl)[0]


def y2(a, b, c, x, q, ctrl: SeriesControl):
    return _y2(a, b, c, x, q, ctrl)[0]


def _Y(shift, p: BasePoint, ctrl):
    s = p.shifted(shift)
    u1, t1 = _y1(*s.as_tuple(), ctrl)
    u2, t2 = _y2(*s.as_tuple(), ctrl)
    v1, t3 = _y1(*p.as_tuple(), ctrl)
    v2, t4 = _y2(*p.as_tuple(), ctrl)
    return u1 * v2 - u2 * v1, t1 + t2 + t3 + t4


def Y(shift, p: BasePoint, ctrl: SeriesControl):
    """y1(shifted) y2(base) - y2(shifted) y1(base)."""
    return _Y(tuple(shift), p, ctrl)[0]


def _unit_factors(p: BasePoint, ctrl):
    a, b, c, x, q = p.as_tuple()
    qp = lambda v: qpoch_infinite(v, q, ctrl)
    num = {
        "(c)_inf": qp(c),
        "(q/c)_inf": qp(q / c),
        "(abxq/c)_inf": qp(a * b * x * q / c),
    }
    den = {
        "(a)_inf": qp(a),
        "(b)_inf": qp(b),
        "(aq/c)_inf": qp(a * q / c),
        "(bq/c)_inf": qp(b * q / c),
        "(x)_inf": qp(x),
    }
    return num, den


def Y_unit_closed(p: BasePoint, ctrl: SeriesControl):
    """Closed form of Y at the unit shift (1, 1, 1, 0)."""
    a, b, c, x, q = p.as_tuple()
    if not x > 0:
        raise DomainError("needs x > 0")
    num, den = _unit_factors(p, ctrl)
    top = qpoch_infinite(q, q, ctrl) ** 2 * ctrl.power(x, -gamma_exponent(c, q, ctrl))
    for v in num.values():
        top *= v
    bottom = 1
    for what, v in den.items():
        bottom *= ctrl.guard(v, what)
    return -top / bottom


def _Y_unit_denominator(p: BasePoint, ctrl):
    """Y_unit_closed, with its zeros treated as poles of Q."""
    num, _ = _unit_factors(p, ctrl)
    for what, v in num.items():
        ctrl.guard(v, what)
    return Y_unit_closed(p, ctrl)


def _Q(shift, p: BasePoint, ctrl):
    k, l, m, n = shift
    a, b, c, x, q = p.as_tuple()
    pre = qpoch_finite(c * q, m - 1, q, ctrl) / (
        ctrl.guard(qpoch_finite(a * q, k - 1, q, ctrl), "(aq)_{k-1}")
        * ctrl.guard(qpoch_finite(b * q, l - 1, q, ctrl), "(bq)_{l-1}")
    )
    y, terms = _Y(shift, p, ctrl)
    return pre * y / _Y_unit_denominator(p, ctrl), terms


def Q_coeff(shift, p: BasePoint, ctrl: SeriesControl):
    return _Q(tuple(shift), p, ctrl)[0]


def bridge_factor(p: BasePoint, ctrl: SeriesControl):
    """(1-aq)(1-bq) x (c-abxq) / ((1-c)(1-cq)): Q(shift-1 at qp) = factor * R."""
    a, b, c, x, q = p.as_tuple()
    one = ctrl.num(1)
    return (one - a * q) * (one - b * q) * x * (c - a * b * x * q) / (
        ctrl.guard(one - c, "1 - c") * ctrl.guard(one - c * q, "1 - cq")
    )


def _R(shift, p: BasePoint, ctrl):
    k, l, m, n = shift
    a, b, c, x, q = p.as_tuple()
    one = ctrl.num(1)
    den = (
        ctrl.guard(one - a * q, "1 - aq")
        * ctrl.guard(one - b * q, "1 - bq")
        * x
        * ctrl.guard(c - a * b * x * q, "c - abxq")
    )
    up = BasePoint(a * q, b * q, c * q, x, q)
    qv, terms = _Q((k - 1, l - 1, m - 1, n), up, ctrl)
    return (one - c) * (one - c * q) / den * qv, terms


def R_coeff(shift, p: BasePoint, ctrl: SeriesControl):
    return _R(tuple(shift), p, ctrl)[0]


def _three_series(shift, p: BasePoint, ctrl):
    a, b, c, x, q = p.as_tuple()
    fs, t1 = phi21_continued(*p.shifted(shift).as_tuple(), ctrl)
    fu, t2 = phi21_continued(a * q, b * q, c * q, x, q, ctrl)
    fb, t3 = phi21_continued(a, b, c, x, q, ctrl)
    return fs, fu, fb, t1 + t2 + t3


def relation_residual(shift, p: BasePoint, ctrl: SeriesControl, Q=None, R=None):
    """|phi_shift - Q phi_up - R phi_base| / max(|phi_shift|, |phi_up|, |phi_base|)."""
    shift = tuple(shift)
    if Q is None:
        Q = Q_coeff(shift, p, ctrl)
    if R is None:
        R = R_coeff(shift, p, ctrl)
    fs, fu, fb, _ = _three_series(shift, p, ctrl)
    return abs(fs - Q * fu - R * fb) / max(abs(fs), abs(fu), abs(fb))


def R_direct(shift, p: BasePoint, ctrl: SeriesControl, Q=None):
    """R recovered from the relation itself: (phi_shift - Q phi_up) / phi_base."""
    shift = tuple(shift)
    if Q is None:
        Q = Q_coeff(shift, p, ctrl)
    fs, fu, fb, _ = _three_series(shift, p, ctrl)
    return (fs - Q * fu) / ctrl.guard(fb, "phi_base")


def evaluate_qr(shift, p: BasePoint, ctrl: SeriesControl) -> CoeffResult:
    shift = tuple(shift)
    Q, t1 = _Q(shift, p, ctrl)
    R, t2 = _R(shift, p, ctrl)
    fs, fu, fb, t3 = _three_series(shift, p, ctrl)
    residual = abs(fs - Q * fu - R * fb) / max(abs(fs), abs(fu), abs(fb))
    return CoeffResult(Q, R, residual, t1 + t2 + t3)


def lambda_factor(shift, p: BasePoint, ctrl: SeriesControl):
    """lambda with Y(s2-image of (shift, p)) = -lambda Y(shift, p)."""
    k, l, m, n = shift
    a, b, c, x, q = p.as_tuple()
    qp = lambda v: qpoch_infinite(v, q, ctrl)
    g = gamma_exponent(c, q, ctrl)
    z = a * b * x / c
    xn = x * q**n
    top = (
        qp(a * q ** (k - m + 1) / c) * qp(b * q ** (l - m + 1) / c) * qp(xn)
        * qp(a) * qp(b) * qp(x)
    )
    bottom = 1
    for what, v in (
        ("(q^(1-k)/a)_inf", qp(q ** (1 - k) / a)),
        ("(q^(1-l)/b)_inf", qp(q ** (1 - l) / b)),
        ("(abxq^(k+l-m+n)/c)_inf", qp(z * q ** (k + l - m + n))),
        ("(c/a)_inf", qp(c / a)),
        ("(c/b)_inf", qp(c / b)),
        ("(abx/c)_inf", qp(z)),
    ):
        bottom *= ctrl.guard(v, what)
    return top / bottom * ctrl.power(xn, g + m - 1) * ctrl.power(z, g - 1)


def swap_residuals(shift, p: BasePoint, ctrl: SeriesControl):
    """Relative errors of the two y1 <-> y2 exchange identities under s2.

    The substituted point is (q^(1-k)/a, q^(1-l)/b; q^(2-m)/c; abx q^(k+l-m+n)/c)
    and both identities are checked against y1, y2 at the shifted point.
    """
    from .numeric import relative_error

    k, l, m, n = shift
    a, b, c, x, q = p.as_tuple()
    qp = lambda v: qpoch_infinite(v, q, ctrl)
    g = gamma_exponent(c, q, ctrl)
    xn = x * q**n
    zn = a * b * x * q ** (k + l - m + n) / c
    img = (q ** (1 - k) / a, q ** (1 - l) / b, q ** (2 - m) / c, zn, q)
    sh = p.shifted(shift).as_tuple()

    lhs1 = y1(*img, ctrl)
    rhs1 = (
        qp(a * q ** (k - m + 1) / c) * qp(b * q ** (l - m + 1) / c) * qp(xn)
        / (qp(img[0]) * qp(img[1]) * qp(zn))
        * ctrl.power(xn, g + m - 1) * y2(*sh, ctrl)
    )
    lhs2 = y2(*img, ctrl)
    rhs2 = (
        qp(a * q**k) * qp(b * q**l) * qp(xn)
        / (qp(c * q ** (m - k) / a) * qp(c * q ** (m - l) / b) * qp(zn))
        * ctrl.power(zn, g + m - 1) * y1(*sh, ctrl)
    )
    return relative_error(lhs1, rhs1, ctrl), relative_error(lhs2, rhs2, ctrl)
