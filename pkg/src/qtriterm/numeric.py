"""Working-precision arithmetic, series controls and the base point type.

Values are either Python floats (double mode, 15-16 digits) or ``mpf``
numbers bound to a private :class:`mpmath.MPContext`.  Nothing here reads
or writes mpmath's global context.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath

from .errors import DomainError, PoleError

DEFAULT_DIGITS = 50
DOUBLE_DIGITS = 15


@lru_cache(maxsize=None)
def _mp_context(digits: int):
    ctx = mpmath.MPContext()
    ctx.dps = digits
    return ctx


class MarginTracker:
    """Records the smallest guarded magnitude seen during a computation."""

    def __init__(self):
        self.min = math.inf
        self.where = ""

    def note(self, value: float, what: str):
        if value < self.min:
            self.min = value
            self.where = what


@dataclass(frozen=True)
class SeriesControl:
    """Precision and truncation settings, passed explicitly to every routine.

    ``digits`` <= 16 selects double mode.  ``tol`` defaults to
    ``10**-digits`` and ``pole_margin`` to ``10**-(digits - 5)``.
    ``continue_above`` is the variable size beyond which ``2phi1`` values
    are reached by the backward q-difference recurrence instead of the
    power series (it only applies to the continued evaluators).
    """

    digits: int = DEFAULT_DIGITS
    tol: float | str | None = None
    max_terms: int = 200_000
    consecutive_small: int = 3
    pole_margin: float | str | None = None
    literal: bool = False
    continue_above: float = 0.75
    tracker: MarginTracker | None = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.digits < 15:
            raise ValueError("working precision must be at least 15 digits")
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")
        if self.consecutive_small < 2:
            raise ValueError("consecutive_small must be at least 2")
        if not 0 < self.continue_above <= 1:
            raise ValueError("continue_above must lie in (0, 1]")
        tol = self.num(self.tol) if self.tol is not None else self.num(10) ** (-self.digits)
        if not tol > 0:
            raise ValueError("tol must be positive")
        margin = (
            self.num(self.pole_margin)
            if self.pole_margin is not None
            else self.num(10) ** (5 - self.digits)
        )
        object.__setattr__(self, "_tol", tol)
        object.__setattr__(self, "_margin", margin)

    @property
    def double(self) -> bool:
        return self.digits <= 16

    @property
    def ctx(self):
        return mpmath.fp if self.double else _mp_context(self.digits)

    @property
    def eps(self):
        """Relative tolerance value in the working number type."""
        return self._tol

    @property
    def margin(self):
        return self._margin

    @property
    def zero_floor(self):
        """Magnitude below which a quantity counts as zero (10**-(digits-5))."""
        return self.num(10) ** (5 - self.digits)

    def num(self, v):
        if self.double:
            return float(v)
        return self.ctx.mpf(v)

    def with_(self, **changes) -> "SeriesControl":
        return dataclasses.replace(self, **changes)

    def guard(self, value, what: str = "factor"):
        """Raise PoleError if ``value`` vanishes within the pole margin."""
        mag = abs(value)
        if self.tracker is not None:
            self.tracker.note(float(mag), what)
        if not mag > self._margin:
            raise PoleError(f"{what} vanishes: |{what}| = {float(mag):.3e}")
        return value

    def log(self, v):
        return self.ctx.log(v)

    def power(self, base, exponent):
        if not base > 0:
            raise DomainError(f"real power of non-positive base {base}")
        return self.ctx.power(base, exponent)

    def fmt(self, v) -> str:
        """Decimal string carrying the full working precision."""
        if self.double:
            return repr(float(v))
        return self.ctx.nstr(v, self.digits, strip_zeros=False)


DOUBLE = SeriesControl(digits=DOUBLE_DIGITS)


@dataclass(frozen=True)
class BasePoint:
    a: object
    b: object
    c: object
    x: object
    q: object

    @classmethod
    def make(cls, ctrl: SeriesControl, a, b, c, x, q, check: bool = True) -> "BasePoint":
        p = cls(*(ctrl.num(v) for v in (a, b, c, x, q)))
        if check:
            p.validate()
        return p

    def validate(self):
        if not 0 < self.q < 1:
            raise DomainError("need 0 < q < 1")
        for name in ("a", "b", "c", "x"):
            if not getattr(self, name) > 0:
                raise DomainError(f"need {name} > 0")
        return self

    def replace(self, **changes) -> "BasePoint":
        return dataclasses.replace(self, **changes)

    def shifted(self, shift) -> "BasePoint":
        k, l, m, n = shift
        q = self.q
        return BasePoint(self.a * q**k, self.b * q**l, self.c * q**m, self.x * q**n, q)

    def as_tuple(self):
        return (self.a, self.b, self.c, self.x, self.q)

    def to(self, ctrl: SeriesControl) -> "BasePoint":
        """Same point in another number type (via decimal strings when widening)."""
        conv = []
        for v in self.as_tuple():
            conv.append(ctrl.num(v if isinstance(v, (float, int)) else str(v)))
        return BasePoint(*conv)


def relative_error(lhs, rhs, ctrl: SeriesControl):
    """|lhs - rhs| / max(|lhs|, |rhs|), defined as 0 when both sides vanish."""
    floor = ctrl.zero_floor
    scale = max(abs(lhs), abs(rhs))
    if scale < floor:
        return ctrl.num(0)
    return abs(lhs - rhs) / scale
