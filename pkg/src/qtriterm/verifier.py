"""Numerical certification of the Q and R symmetries.

Each base formula states ``coef(s, p) = C(s, p) * coef(g(s, p))`` for a
generator ``g``.  Chaining these along the shortest word of every group
element certifies all 96 symmetries of Q (generators s0..s3) and of R
(the conjugates r0..r3 = tau s_i tau^-1).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from . import coefficients as co
from .errors import ConvergenceError, DomainError, PoleError, SearchExhausted
from .numeric import BasePoint, MarginTracker, SeriesControl, relative_error
from .qseries import qpoch_finite
from .symmetry import (
    Q_GENERATORS,
    R_GENERATORS,
    apply,
    enumerate_group,
    generator,
)

DEFAULT_SHIFTS = ((0, 0, 1, 1), (2, 1, 1, 0), (1, -1, 0, 2), (-2, 2, -1, 1))


# -- prefactors --------------------------------------------------------------

def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _qp(v, i, q, ctrl):
    return qpoch_finite(v, i, q, ctrl)


def _den(ctrl, *pairs):
    out = 1
    for what, v in pairs:
        out *= ctrl.guard(v, what)
    return out


def _pf_12(s, p, ctrl):
    k, l, m, n = s
    a, b, c, x, q = p.as_tuple()
    num = (
        _sign(m + 1) * _qp(c, m, q, ctrl) * _qp(c * q, m, q, ctrl)
        * _qp(a * q / c, k - m, q, ctrl) * _qp(b * q / c, l - m, q, ctrl)
        * _qp(x, n, q, ctrl) * x ** (-m)
    )
    den = q ** (m * (m - 1) // 2 + m * n) * c ** (m + n) * _den(
        ctrl,
        ("(aq)_k", _qp(a * q, k, q, ctrl)),
        ("(bq)_l", _qp(b * q, l, q, ctrl)),
        ("(abxq/c)_{k+l-m+n}", _qp(a * b * x * q / c, k + l - m + n, q, ctrl)),
    )
    return num / den


def _pf_13(s, p, ctrl):
    k, l, m, n = s
    a, b, c, x, q = p.as_tuple()
    one = ctrl.num(1)
    lead = (one - b) * (c - a * b * x) / _den(ctrl, ("c - a", c - a), ("c - b", c - b))
    return lead * _qp(c * q, m - 1, q, ctrl) * _qp(x * q, n - 1, q, ctrl) / _den(
        ctrl,
        ("(aq)_{k-1}", _qp(a * q, k - 1, q, ctrl)),
        ("(bxq)_{l+n-1}", _qp(b * x * q, l + n - 1, q, ctrl)),
    )


def _pf_14(s, p, ctrl):
    k, l, m, n = s
    a, b, c, x, q = p.as_tuple()
    one = ctrl.num(1)
    num = (
        _sign(m + 1) * (one - a) * (one - b)
        * _qp(c * q, m - 1, q, ctrl) * _qp(c / q**2, m + 1, q, ctrl)
        * _qp(a * q / c, k - m, q, ctrl) * _qp(b * q / c, l - m, q, ctrl)
        * _qp(x * q, n - 1, q, ctrl) * x ** (-m)
    )
    den = q ** (m * (m - 1) // 2 + (m - 1) * (n - 1)) * c ** (m + n - 1) * _den(
        ctrl,
        ("(a/q)_{k+1}", _qp(a / q, k + 1, q, ctrl)),
        ("(b/q)_{l+1}", _qp(b / q, l + 1, q, ctrl)),
        ("(abxq/c)_{k+l-m+n-1}", _qp(a * b * x * q / c, k + l - m + n - 1, q, ctrl)),
    )
    return num / den


def _pf_15(s, p, ctrl):
    return ctrl.num(1)


def _pf_r_outer(s, p, ctrl):
    # Shared multiplier of the two R formulas for r0 and r2.
    k, l, m, n = s
    a, b, c, x, q = p.as_tuple()
    num = (
        _sign(m) * _qp(c, m - 1, q, ctrl) * _qp(c * q, m - 1, q, ctrl)
        * _qp(a * q / c, k - m, q, ctrl) * _qp(b * q / c, l - m, q, ctrl)
        * _qp(x, n, q, ctrl) * x ** (1 - m)
    )
    den = q ** (m * (m - 1) // 2 + (m - 1) * (n - 1)) * c ** (m + n - 1) * _den(
        ctrl,
        ("(aq)_{k-1}", _qp(a * q, k - 1, q, ctrl)),
        ("(bq)_{l-1}", _qp(b * q, l - 1, q, ctrl)),
        ("(abxq/c)_{k+l-m+n-1}", _qp(a * b * x * q / c, k + l - m + n - 1, q, ctrl)),
    )
    return num / den


def _pf_18(s, p, ctrl):
    k, l, m, n = s
    a, b, c, x, q = p.as_tuple()
    return _qp(c, m, q, ctrl) * _qp(x, n, q, ctrl) / _den(
        ctrl,
        ("(aq)_{k-1}", _qp(a * q, k - 1, q, ctrl)),
        ("(bx)_{l+n}", _qp(b * x, l + n, q, ctrl)),
    )


@dataclass(frozen=True)
class PrefactorRule:
    formula: str
    generator: str
    coefficient: str  # "Q" or "R"
    evaluate: Callable


RULES: dict[str, PrefactorRule] = {
    "1.2": PrefactorRule("1.2", "s0", "Q", _pf_12),
    "1.3": PrefactorRule("1.3", "s1", "Q", _pf_13),
    "1.4": PrefactorRule("1.4", "s2", "Q", _pf_14),
    "1.5": PrefactorRule("1.5", "s3", "Q", _pf_15),
    "1.7": PrefactorRule("1.7", "r0", "R", _pf_r_outer),
    "1.8": PrefactorRule("1.8", "r1", "R", _pf_18),
    "1.9": PrefactorRule("1.9", "r2", "R", _pf_r_outer),
    "1.10": PrefactorRule("1.10", "r3", "R", _pf_15),
}
BY_GENERATOR = {r.generator: r for r in RULES.values()}
Q_FORMULAS = ("1.2", "1.3", "1.4", "1.5")
R_FORMULAS = ("1.7", "1.8", "1.9", "1.10")
BRIDGE = "1.6"


def prefactor_Q(gen: str, shift, p: BasePoint, ctrl: SeriesControl):
    rule = BY_GENERATOR[gen]
    if rule.coefficient != "Q":
        raise KeyError(f"{gen} is not a Q generator")
    return rule.evaluate(tuple(shift), p, ctrl)


def prefactor_R(gen: str, shift, p: BasePoint, ctrl: SeriesControl):
    rule = BY_GENERATOR[gen]
    if rule.coefficient != "R":
        raise KeyError(f"{gen} is not an R generator")
    return rule.evaluate(tuple(shift), p, ctrl)


def prefactor_R_derived(gen: str, shift, p: BasePoint, ctrl: SeriesControl):
    """R multiplier rebuilt from the Q multiplier and the bridge identity.

    With R(s, p) = Q(tau^-1 (s, p)) / B(p), the multiplier for the
    conjugate tau g tau^-1 is C_g(tau^-1 (s, p)) * B(p') / B(p), where p'
    is the parameter part of the image.
    """
    qgen = "s" + gen[1:]
    tau_inv = generator("tau").inverse()
    s1, p1 = apply(tau_inv, shift, p)
    _, p_img = apply(generator(gen), shift, p)
    return (
        prefactor_Q(qgen, s1, p1, ctrl)
        * co.bridge_factor(p_img, ctrl)
        / ctrl.guard(co.bridge_factor(p, ctrl), "bridge factor")
    )


def coefficient(which: str, shift, p: BasePoint, ctrl: SeriesControl):
    if which == "Q":
        return co.Q_coeff(shift, p, ctrl)
    if which == "R":
        return co.R_coeff(shift, p, ctrl)
    raise ValueError("which must be 'Q' or 'R'")


# -- identity checks ---------------------------------------------------------

def default_tol(ctrl: SeriesControl, chained: bool = False):
    """1e-9 (base formulas) or 1e-6 (chains) in double mode, 10**-(digits-20) otherwise."""
    if ctrl.double:
        return ctrl.num("1e-6" if chained else "1e-9")
    return ctrl.num(10) ** (20 - ctrl.digits)


def verify_base_symmetry(formula: str, shift, p: BasePoint, ctrl: SeriesControl):
    """Relative error between both sides of one base formula."""
    shift = tuple(shift)
    if formula == BRIDGE:
        k, l, m, n = shift
        a, b, c, x, q = p.as_tuple()
        lhs = co.Q_coeff((k - 1, l - 1, m - 1, n), BasePoint(a * q, b * q, c * q, x, q), ctrl)
        rhs = co.bridge_factor(p, ctrl) * co.R_direct(shift, p, ctrl)
        return relative_error(lhs, rhs, ctrl)
    rule = RULES[formula]
    lhs = coefficient(rule.coefficient, shift, p, ctrl)
    s1, p1 = apply(generator(rule.generator), shift, p)
    rhs = rule.evaluate(shift, p, ctrl) * coefficient(rule.coefficient, s1, p1, ctrl)
    return relative_error(lhs, rhs, ctrl)


def chain_prefactor(word: Sequence[str], shift, p: BasePoint, ctrl: SeriesControl):
    """Accumulated multiplier along ``word`` and the final image."""
    total = ctrl.num(1)
    s, cur = tuple(shift), p
    for g in word:
        total *= BY_GENERATOR[g].evaluate(s, cur, ctrl)
        s, cur = apply(generator(g), s, cur)
    return total, s, cur


def verify_chain(word: Sequence[str], shift, p: BasePoint, ctrl: SeriesControl, which: str = "Q"):
    """coef(shift, p) against the chained multiplier times coef at the word's image."""
    gens = Q_GENERATORS if which == "Q" else R_GENERATORS
    if any(g not in gens for g in word):
        raise ValueError(f"word {word} uses generators outside {gens}")
    lhs = coefficient(which, shift, p, ctrl)
    total, s, img = chain_prefactor(word, shift, p, ctrl)
    if not word:
        return relative_error(lhs, lhs, ctrl)
    rhs = total * coefficient(which, s, img, ctrl)
    return relative_error(lhs, rhs, ctrl)


# -- reports -----------------------------------------------------------------

@dataclass(frozen=True)
class IdentityRecord:
    element: str
    word: tuple[str, ...]
    formulas: tuple[str, ...]
    shift: tuple[int, int, int, int]
    error: object
    tol: object
    passed: bool


@dataclass
class VerificationReport:
    kind: str
    which: str
    digits: int
    point: BasePoint
    base_tol: object
    records: list[IdentityRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def max_error(self):
        return max((r.error for r in self.records), default=0)

    def to_json(self, ctrl: SeriesControl) -> dict:
        return {
            "v": 1,
            "kind": self.kind,
            "which": self.which,
            "precision": self.digits,
            "point": {k: ctrl.fmt(v) for k, v in zip("abcxq", self.point.as_tuple())},
            "base_tol": ctrl.fmt(self.base_tol),
            "count": len(self.records),
            "elements": len({r.element for r in self.records}),
            "passed": self.passed,
            "failures": sum(not r.passed for r in self.records),
            "max_error": ctrl.fmt(self.max_error),
            "records": [
                {
                    "element": r.element,
                    "word": list(r.word),
                    "formulas": list(r.formulas),
                    "shift": list(r.shift),
                    "error": ctrl.fmt(r.error),
                    "tol": ctrl.fmt(r.tol),
                    "pass": r.passed,
                }
                for r in self.records
            ],
        }


@lru_cache(maxsize=None)
def group_elements(which: str):
    return tuple(enumerate_group(list(Q_GENERATORS if which == "Q" else R_GENERATORS)))


def verify_all(p: BasePoint, which: str, ctrl: SeriesControl, shifts=DEFAULT_SHIFTS, base_tol=None):
    """Chain check for the shortest word of every group element at every shift.

    Records are ordered by canonical element serialization, then by shift.
    Each tolerance is ``base_tol * (1 + len(word))``.
    """
    base_tol = default_tol(ctrl, chained=True) if base_tol is None else ctrl.num(base_tol)
    report = VerificationReport("all", which, ctrl.digits, p, base_tol)
    for el in group_elements(which):
        formulas = tuple(BY_GENERATOR[g].formula for g in el.word)
        tol = base_tol * (1 + len(el.word))
        for s in shifts:
            err = verify_chain(el.word, s, p, ctrl, which)
            report.records.append(
                IdentityRecord(el.transform.serialize(), el.word, formulas, tuple(s), err, tol, bool(err < tol))
            )
    return report


def verify_base(p: BasePoint, which: str, ctrl: SeriesControl, shifts=DEFAULT_SHIFTS, base_tol=None):
    """The four base formulas of Q or R (or the bridge, ``which='bridge'``)."""
    base_tol = default_tol(ctrl) if base_tol is None else ctrl.num(base_tol)
    formulas = {"Q": Q_FORMULAS, "R": R_FORMULAS, "bridge": (BRIDGE,)}[which]
    report = VerificationReport("base" if which != "bridge" else "bridge", which, ctrl.digits, p, base_tol)
    for f in formulas:
        gen = RULES[f].generator if f != BRIDGE else "tau"
        el = generator(gen)
        for s in shifts:
            err = verify_base_symmetry(f, s, p, ctrl)
            report.records.append(
                IdentityRecord(el.serialize(), (gen,), (f,), tuple(s), err, base_tol, bool(err < base_tol))
            )
    return report


# -- admissible points -------------------------------------------------------

@dataclass(frozen=True)
class Constraints:
    margin: float = 1e-3
    shifts: tuple = DEFAULT_SHIFTS
    attempts: int = 200
    q_range: tuple[float, float] = (0.1, 0.5)
    param_range: tuple[float, float] = (0.2, 0.9)
    decimals: int = 3


@dataclass(frozen=True)
class AdmissiblePoint:
    point: BasePoint
    orbit_margin: float


def _gamma_margin(p: BasePoint, shifts) -> float:
    """Smallest distance of log_q(c') to an integer over both orbits."""
    logs = [math.log(float(v)) / math.log(float(p.q)) for v in (p.a, p.b, p.c, p.x)]
    worst = math.inf
    for which in ("Q", "R"):
        for el in group_elements(which):
            row = el.transform.mon.exponents[2]
            g = sum(e * v for e, v in zip(row, logs))
            worst = min(worst, abs(g - round(g)))
    return worst


def check_admissible(p: BasePoint, constraints: Constraints = Constraints()) -> AdmissiblePoint:
    """Raise PoleError/DomainError/ConvergenceError unless the orbit is admissible.

    The check runs every base formula, bridge and chain of both 96-element
    orbits in double precision with the pole margin raised to
    ``constraints.margin``; any guarded factor that comes closer to zero
    rejects the point.
    """
    tracker = MarginTracker()
    ctrl = SeriesControl(digits=15, pole_margin=constraints.margin, tracker=tracker)
    pd = p.to(ctrl).validate()
    gm = _gamma_margin(pd, constraints.shifts)
    if gm <= constraints.margin:
        raise PoleError(f"c-slot exponent within {gm:.2e} of an integer")
    shifts = constraints.shifts
    for which in ("Q", "R", "bridge"):
        verify_base(pd, which, ctrl, shifts)
    for which in ("Q", "R"):
        verify_all(pd, which, ctrl, shifts)
    return AdmissiblePoint(p, min(gm, tracker.min))


def candidates(seed: int, constraints: Constraints = Constraints()):
    """Deterministic stream of (a, b, c, x, q) decimal strings."""
    rng = random.Random(seed)
    lo, hi = constraints.param_range
    qlo, qhi = constraints.q_range
    d = constraints.decimals
    while True:
        q = round(rng.uniform(qlo, qhi), d)
        a, b, c, x = (round(rng.uniform(lo, hi), d) for _ in range(4))
        if a <= q or b <= q:
            continue
        yield tuple(f"{v:.{d}f}" for v in (a, b, c, x, q))


def find_admissible(seed: int, constraints: Constraints = Constraints(), ctrl: SeriesControl | None = None) -> AdmissiblePoint:
    """First candidate of the seeded stream whose orbits pass check_admissible."""
    ctrl = ctrl or SeriesControl()
    stream = candidates(seed, constraints)
    for _ in range(constraints.attempts):
        vals = next(stream)
        p = BasePoint.make(ctrl, *vals)
        try:
            return check_admissible(p, constraints)
        except (PoleError, DomainError, ConvergenceError):
            continue
    raise SearchExhausted(f"no admissible point in {constraints.attempts} attempts (seed {seed})")
