"""q-shifted factorials and the basic hypergeometric series 2phi1."""

from __future__ import annotations

from . import kernels
from .errors import ConvergenceError, DomainError, PoleError
from .numeric import SeriesControl, relative_error


def _raise(status, what):
    if status == kernels.POLE:
        raise PoleError(f"{what}: denominator factor vanishes")
    if status == kernels.NOCONV:
        raise ConvergenceError(f"{what}: max_terms reached")


def qpoch_finite(a, i: int, q, ctrl: SeriesControl):
    """(a; q)_i for any integer i, negative indices via (a)_inf / (a q^i)_inf."""
    i = int(i)
    if ctrl.double:
        value, status = kernels.qpoch_fin(float(a), i, float(q), float(ctrl.margin))
        _raise(status, f"({a})_{i}")
        if ctrl.tracker is not None and i < 0:
            for j in range(1, -i + 1):
                ctrl.tracker.note(abs(1.0 - a * q ** (-j)), "negative-index factor")
        return value
    one = ctrl.num(1)
    prod = one
    term = a
    if i >= 0:
        for _ in range(i):
            prod *= one - term
            term *= q
        return prod
    for _ in range(-i):
        term /= q
        prod *= ctrl.guard(one - term, "negative-index factor")
    return one / prod


def qpoch_infinite(a, q, ctrl: SeriesControl):
    """(a; q)_inf, truncated once |a q^j| < tol for consecutive_small terms."""
    if not abs(q) < 1:
        raise DomainError("need |q| < 1")
    if ctrl.double:
        value, _, status = kernels.qpoch_inf(
            float(a), float(q), float(ctrl.eps), ctrl.max_terms, ctrl.consecutive_small
        )
        _raise(status, f"({a})_inf")
        return value
    one = ctrl.num(1)
    tol = ctrl.eps
    prod = one
    term = a
    small = 0
    for _ in range(ctrl.max_terms):
        prod *= one - term
        if abs(term) < tol:
            small += 1
            if small >= ctrl.consecutive_small:
                return prod
        else:
            small = 0
        term *= q
    raise ConvergenceError(f"({a})_inf: max_terms reached")


def _check_c(c, q, ctrl: SeriesControl):
    if not c > 0:
        return
    j = int(ctrl.ctx.floor(ctrl.log(c) / -ctrl.log(q) + ctrl.num("0.5")))
    if j >= 0:
        ctrl.guard(1 - c * q**j, "1 - c q^j")


def phi21_eval(a, b, c, x, q, ctrl: SeriesControl):
    """Sum the series for |x| < 1; returns ``(value, terms_used)``.

    Uses the standard (q)_i denominator unless ``ctrl.literal`` is set, in
    which case the bare (a)_i (b)_i / (c)_i x^i series is summed.
    """
    if not abs(q) < 1:
        raise DomainError("need |q| < 1")
    if not abs(x) < 1:
        raise DomainError(f"series needs |x| < 1, got {x}")
    if ctrl.double:
        c_ = float(c)
        if ctrl.tracker is not None and c_ > 0:
            j = kernels.c_pole_index(c_, float(q))
            if j >= 0:
                ctrl.tracker.note(abs(1.0 - c_ * float(q) ** j), "1 - c q^j")
        value, terms, status = kernels.phi21(
            float(a), float(b), c_, float(x), float(q), float(ctrl.eps),
            ctrl.max_terms, ctrl.consecutive_small, float(ctrl.margin), ctrl.literal,
        )
        _raise(status, "2phi1")
        return value, terms
    _check_c(c, q, ctrl)
    one = ctrl.num(1)
    tol = ctrl.eps
    total = one
    term = one
    qi = one
    small = 0
    for i in range(ctrl.max_terms):
        den = ctrl.guard(one - c * qi, "1 - c q^i")
        ratio = (one - a * qi) * (one - b * qi) * x / den
        if not ctrl.literal:
            ratio /= one - qi * q
        term *= ratio
        total += term
        if abs(term) <= tol * abs(total):
            small += 1
            if small >= ctrl.consecutive_small:
                return total, i + 2
        else:
            small = 0
        qi *= q
    raise ConvergenceError("2phi1: max_terms reached")


def phi21(a, b, c, x, q, ctrl: SeriesControl):
    return phi21_eval(a, b, c, x, q, ctrl)[0]


def phi21_continued(a, b, c, x, q, ctrl: SeriesControl):
    """2phi1 at any positive x off the poles x = q^-j.

    Below ``ctrl.continue_above`` this is the series.  Otherwise the series
    is summed at x q^j and x q^(j+1) and the q-difference equation

        (1 - X) u(X) = (1 + c/q - (a + b) X) u(qX) - (c/q - abX) u(q^2 X)

    is run backwards to X = x.  Returns ``(value, terms_used)``.
    """
    if x < ctrl.continue_above and abs(x) < 1:
        return phi21_eval(a, b, c, x, q, ctrl)
    if ctrl.literal:
        raise DomainError("continuation needs the standard series convention")
    if not x > 0:
        raise DomainError("continuation is defined on the positive axis only")
    j = 1
    while x * q**j >= ctrl.continue_above:
        j += 1
    f2, t2 = phi21_eval(a, b, c, x * q ** (j + 1), q, ctrl)
    f1, t1 = phi21_eval(a, b, c, x * q**j, q, ctrl)
    cq = c / q
    ab = a * b
    apb = a + b
    one = ctrl.num(1)
    for i in range(j - 1, -1, -1):
        X = x * q**i
        den = ctrl.guard(one - X, "1 - x q^i")
        f0 = ((one + cq - apb * X) * f1 - (cq - ab * X) * f2) / den
        f1, f2 = f0, f1
    return f1, t1 + t2


def heine_first_residual(a, b, c, x, q, ctrl: SeriesControl):
    """Relative residual of phi(a,b;c;x) = (a)(bx)/((c)(x)) phi(x, c/a; bx; a)."""
    lhs = phi21(a, b, c, x, q, ctrl)
    pre = (
        qpoch_infinite(a, q, ctrl) * qpoch_infinite(b * x, q, ctrl)
        / (qpoch_infinite(c, q, ctrl) * qpoch_infinite(x, q, ctrl))
    )
    rhs = pre * phi21(x, c / a, b * x, a, q, ctrl)
    return relative_error(lhs, rhs, ctrl)


def heine_third_residual(a, b, c, x, q, ctrl: SeriesControl):
    """Relative residual of phi(a,b;c;x) = (abx/c)/(x) phi(c/a, c/b; c; abx/c)."""
    z = a * b * x / c
    if not abs(z) < 1:
        raise DomainError("needs |abx/c| < 1")
    lhs = phi21(a, b, c, x, q, ctrl)
    rhs = qpoch_infinite(z, q, ctrl) / qpoch_infinite(x, q, ctrl) * phi21(c / a, c / b, c, z, q, ctrl)
    return relative_error(lhs, rhs, ctrl)
