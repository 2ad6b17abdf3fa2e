"""Exact symmetry group acting on (shift, parameter) tuples.

A transform acts on the integer shift ``s = (k, l, m, n)`` and on the
positive parameters ``p = (a, b, c, x)``.  Writing ``P = log_q p``, every
mapping in the group is affine over the integers::

    s' = M s + v
    P' = E P + F s + d

so a transform is stored as one 9x9 integer matrix acting on
``(s, P, 1)``.  Composition is matrix multiplication, equality is exact
and the tuple of entries is the canonical key.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError, SizeError

DIM = 9
SLOTS = ("a", "b", "c", "x")
INDICES = ("k", "l", "m", "n")


@dataclass(frozen=True)
class IndexAffine:
    """(k, l, m, n) -> matrix @ (k, l, m, n) + offset."""

    matrix: tuple[tuple[int, ...], ...]
    offset: tuple[int, ...]

    def __call__(self, shift: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            sum(r * s for r, s in zip(row, shift)) + o
            for row, o in zip(self.matrix, self.offset)
        )


@dataclass(frozen=True)
class MonomialMap:
    """Output slot j is ``q**(const[j] + qcoef[j] . s) * prod_i p_i**exponents[j][i]``."""

    exponents: tuple[tuple[int, ...], ...]
    const: tuple[int, ...]
    qcoef: tuple[tuple[int, ...], ...]

    def __call__(self, shift, params, q):
        out = []
        for exps, d, f in zip(self.exponents, self.const, self.qcoef):
            value = q ** (d + sum(fi * si for fi, si in zip(f, shift)))
            for p, e in zip(params, exps):
                if e:
                    value = value * p**e
            out.append(value)
        return tuple(out)


@dataclass(frozen=True)
class Transform:
    matrix: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False, hash=False)

    @classmethod
    def from_array(cls, arr, name: str = "") -> "Transform":
        arr = np.asarray(arr)
        if arr.shape != (DIM, DIM):
            raise ValueError(f"expected a {DIM}x{DIM} matrix, got {arr.shape}")
        return cls(tuple(tuple(int(v) for v in row) for row in arr), name)

    @classmethod
    def from_map(cls, fn: Callable[..., Sequence[int]], name: str = "") -> "Transform":
        """Build from an integer-affine callable ``fn(k, l, m, n, A, B, C, X)``.

        ``A, B, C, X`` are the base-q logarithms of the parameters; ``fn``
        returns the eight image coordinates in the same order.
        """
        zero = np.array(fn(*([0] * 8)), dtype=np.int64)
        arr = np.zeros((DIM, DIM), dtype=np.int64)
        for j in range(8):
            unit = [0] * 8
            unit[j] = 1
            arr[:8, j] = np.array(fn(*unit), dtype=np.int64) - zero
        arr[:8, 8] = zero
        arr[8, 8] = 1
        t = cls.from_array(arr, name)
        t._check()
        return t

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(v for row in self.matrix[:8] for v in row)

    def serialize(self) -> str:
        return ",".join(str(v) for v in self.key)

    @property
    def idx(self) -> IndexAffine:
        a = self.array
        return IndexAffine(_tup2(a[:4, :4]), tuple(int(v) for v in a[:4, 8]))

    @property
    def mon(self) -> MonomialMap:
        a = self.array
        return MonomialMap(_tup2(a[4:8, 4:8]), tuple(int(v) for v in a[4:8, 8]), _tup2(a[4:8, :4]))

    def _check(self):
        a = self.array
        if a[:4, 4:8].any() or a[8, :8].any() or a[8, 8] != 1:
            raise ValueError("not a shift/monomial transform")
        for block in (a[:4, :4], a[4:8, 4:8]):
            if round(abs(np.linalg.det(block))) != 1:
                raise ValueError("block is not unimodular")

    def then(self, other: "Transform") -> "Transform":
        """Apply ``self`` first, then ``other``."""
        return compose(self, other)

    def inverse(self) -> "Transform":
        inv = np.rint(np.linalg.inv(self.array.astype(float))).astype(np.int64)
        if not (inv @ self.array == np.eye(DIM, dtype=np.int64)).all():
            raise ArithmeticError("integer inverse failed")
        return Transform.from_array(inv, self.name and f"{self.name}^-1")

    def is_identity(self) -> bool:
        return self == IDENTITY

    def __call__(self, shift, point):
        return apply(self, shift, point)

    def __repr__(self):
        return f"Transform({self.name or self.serialize()})"


def _tup2(block) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in row) for row in block)


IDENTITY = Transform.from_array(np.eye(DIM, dtype=np.int64), "id")


def compose(first: Transform, second: Transform) -> Transform:
    """The transform ``second o first`` (``first`` acts first)."""
    return Transform.from_array(second.array @ first.array)


def product(*ts: Transform) -> Transform:
    """Composition in written order: ``product(s1, s2)`` is ``s1 o s2``."""
    out = IDENTITY
    for t in reversed(ts):
        out = compose(out, t)
    return out


def power(t: Transform, e: int) -> Transform:
    out = IDENTITY
    for _ in range(e):
        out = compose(out, t)
    return out


def apply(t: Transform, shift, point):
    """Numeric image of ``(shift, point)``.

    ``point`` is any object with ``a, b, c, x, q`` attributes and a
    ``replace(a=..., ...)`` method (see :class:`qtriterm.numeric.BasePoint`).
    The q-exponents use the input shift.
    """
    shift = tuple(int(v) for v in shift)
    new_shift = t.idx(shift)
    params = (point.a, point.b, point.c, point.x)
    new_params = t.mon(shift, params, point.q)
    for name, v in zip(SLOTS, new_params):
        if not v > 0:
            raise DomainError(f"slot {name} leaves the positive domain: {v}")
    return new_shift, point.replace(**dict(zip(SLOTS, new_params)))


# -- generators ------------------------------------------------------------

def _sigma0(k, l, m, n, A, B, C, X):
    return (-k, -l, -m, -n, A + k, B + l, C + m, X + n)


def _sigma1(k, l, m, n, A, B, C, X):
    return (n, m - k, l + n, k, X, C - A, B + X, A)


def _sigma2(k, l, m, n, A, B, C, X):
    return (-k, -l, -m, k + l - m + n, 1 - A, 1 - B, 2 - C, A + B + X - C)


def _sigma3(k, l, m, n, A, B, C, X):
    return (l, k, m, n, B, A, C, X)


def _sigma4(k, l, m, n, A, B, C, X):
    return (-n, l, m - k - n, -k, 1 - X, B, 1 + C - A - X, 1 - A)


def _sigma5(k, l, m, n, A, B, C, X):
    return (k - m, l - m, -m, n, 1 + A - C, 1 + B - C, 2 - C, X)


def _sigma6(k, l, m, n, A, B, C, X):
    return (m - l, m - k, m, k + l - m + n, C - B, C - A, C, A + B + X - C)


def _tau(k, l, m, n, A, B, C, X):
    return (k + 1, l + 1, m + 1, n, A - 1, B - 1, C - 1, X)


# The displayed forms of s4..s6; they are checked against their defining
# words in check_relations().
_DISPLAYED = {
    "s0": _sigma0, "s1": _sigma1, "s2": _sigma2, "s3": _sigma3,
    "s4": _sigma4, "s5": _sigma5, "s6": _sigma6, "tau": _tau,
}

GENERATORS: dict[str, Transform] = {
    name: Transform.from_map(fn, name) for name, fn in _DISPLAYED.items()
}

# Words (written order, composition of maps) defining the derived elements.
DEFINING_WORDS = {
    "s4": ("s3", "s2", "s1", "s3", "s1", "s2", "s3"),
    "s5": ("s1", "s3", "s1", "s3", "s1", "s2"),
    "s6": ("s1", "s3", "s1", "s3", "s1", "s3"),
}

ALIASES = {
    "sigma0": "s0", "sigma1": "s1", "sigma2": "s2", "sigma3": "s3",
    "sigma4": "s4", "sigma5": "s5", "sigma6": "s6", "t": "tau",
    "σ0": "s0", "σ1": "s1", "σ2": "s2", "σ3": "s3",
    "σ4": "s4", "σ5": "s5", "σ6": "s6", "τ": "tau",
}

Q_GENERATORS = ("s0", "s1", "s2", "s3")
R_GENERATORS = ("r0", "r1", "r2", "r3")


def generator(name: str) -> Transform:
    name = ALIASES.get(name, name)
    if name in GENERATORS:
        return GENERATORS[name]
    if name in _CONJUGATES:
        return _CONJUGATES[name]
    raise KeyError(f"unknown generator {name!r}")


def word_transform(word: Iterable[str]) -> Transform:
    """Transform obtained by applying the generators of ``word`` left to right."""
    out = IDENTITY
    for name in word:
        out = compose(out, generator(name))
    return out


def conjugated_generators() -> list[Transform]:
    """tau s_i tau^-1 for i = 0..3, the maps under which R is symmetric."""
    return [_CONJUGATES[name] for name in R_GENERATORS]


def _conjugate(name: str) -> Transform:
    tau = GENERATORS["tau"]
    t = product(tau, GENERATORS[name], tau.inverse())
    return Transform(t.matrix, "r" + name[1:])


_CONJUGATES = {"r" + g[1:]: _conjugate(g) for g in Q_GENERATORS}


# -- closure ---------------------------------------------------------------

@dataclass(frozen=True)
class GroupElement:
    transform: Transform
    word: tuple[str, ...]

    @property
    def key(self):
        return self.transform.key


def enumerate_group(gens: Sequence[str | Transform], cap: int = 10_000) -> list[GroupElement]:
    """Breadth-first closure; each element keeps a shortest word.

    Generators may be given by name or as transforms (named by position
    as ``g0, g1, ...`` when unnamed).  Words are in application order.
    The result is sorted by canonical serialization.
    """
    if not gens:
        raise ValueError("need at least one generator")
    named = []
    for i, g in enumerate(gens):
        if isinstance(g, str):
            named.append((ALIASES.get(g, g), generator(g)))
        else:
            named.append((g.name or f"g{i}", g))
    seen = {IDENTITY.key: GroupElement(IDENTITY, ())}
    frontier = deque([seen[IDENTITY.key]])
    while frontier:
        el = frontier.popleft()
        for name, g in named:
            t = compose(el.transform, g)
            if t.key not in seen:
                new = GroupElement(t, el.word + (name,))
                seen[t.key] = new
                frontier.append(new)
                if len(seen) > cap:
                    raise SizeError(f"closure exceeded {cap} elements")
    return sorted(seen.values(), key=lambda e: e.key)


def element_order(t: Transform, cap: int = 1000) -> int:
    cur, n = t, 1
    while not cur.is_identity():
        cur = compose(cur, t)
        n += 1
        if n > cap:
            raise SizeError("element order exceeds cap")
    return n


def s4_order_multiset() -> dict[int, int]:
    """Element orders of the symmetric group on 4 letters, by brute force."""
    from itertools import permutations

    counts: dict[int, int] = {}
    for perm in permutations(range(4)):
        cur, n = perm, 1
        while cur != (0, 1, 2, 3):
            cur = tuple(perm[i] for i in cur)
            n += 1
        counts[n] = counts.get(n, 0) + 1
    return counts


def _rel(name: str, lhs: Transform, rhs: Transform = IDENTITY) -> tuple[str, bool]:
    return name, lhs == rhs


def check_relations() -> list[tuple[str, bool]]:
    """Exact checks of the relations used in the order-96 argument."""
    g = GENERATORS
    s = {k: g[k] for k in ("s0", "s1", "s2", "s3", "s4", "s5", "s6")}
    P = product
    out = [
        _rel("s4 = s3 s2 s1 s3 s1 s2 s3", P(*(g[w] for w in DEFINING_WORDS["s4"])), s["s4"]),
        _rel("s5 = s1 s3 s1 s3 s1 s2", P(*(g[w] for w in DEFINING_WORDS["s5"])), s["s5"]),
        _rel("s6 = s1 s3 s1 s3 s1 s3", P(*(g[w] for w in DEFINING_WORDS["s6"])), s["s6"]),
        _rel("s0^2 = id", P(s["s0"], s["s0"])),
    ]
    for i in (1, 2, 3):
        si = s[f"s{i}"]
        out.append(_rel(f"s0 s{i} = s{i} s0", P(s["s0"], si), P(si, s["s0"])))
    out += [
        _rel("s3^2 = id", P(s["s3"], s["s3"])),
        _rel("s4^2 = id", P(s["s4"], s["s4"])),
        _rel("s5^2 = id", P(s["s5"], s["s5"])),
        _rel("s3 s5 = s5 s3", P(s["s3"], s["s5"]), P(s["s5"], s["s3"])),
        _rel("(s3 s4)^3 = id", power(P(s["s3"], s["s4"]), 3)),
        _rel("(s4 s5)^3 = id", power(P(s["s4"], s["s5"]), 3)),
        _rel("s6^2 = id", P(s["s6"], s["s6"])),
    ]
    for i in (3, 4, 5):
        si = s[f"s{i}"]
        out.append(_rel(f"s6 s{i} = s{i} s6", P(s["s6"], si), P(si, s["s6"])))
    out += [
        _rel("s1 = s3 s4 s5 s4 s3 s6", P(s["s3"], s["s4"], s["s5"], s["s4"], s["s3"], s["s6"]), s["s1"]),
        _rel("s2 = s3 s5 s6", P(s["s3"], s["s5"], s["s6"]), s["s2"]),
    ]
    return out


def cayley_dot(elements: Sequence[GroupElement], gens: Sequence[str]) -> str:
    """DOT source for the Cayley graph (one edge colour per generator)."""
    palette = ("black", "red", "blue", "darkgreen", "orange", "purple", "brown", "gray")
    index = {e.key: i for i, e in enumerate(elements)}
    lines = ["digraph cayley {", "  node [shape=point];"]
    for i, e in enumerate(elements):
        label = " ".join(e.word) or "id"
        lines.append(f'  n{i} [label="{label}"];')
    for gi, name in enumerate(gens):
        g = generator(name)
        colour = palette[gi % len(palette)]
        for i, e in enumerate(elements):
            j = index[compose(e.transform, g).key]
            lines.append(f'  n{i} -> n{j} [color={colour}, label="{ALIASES.get(name, name)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
