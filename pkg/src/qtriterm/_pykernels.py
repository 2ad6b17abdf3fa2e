"""Pure-Python double-precision kernels (fallback for ``_ckernels``).

Status codes: 0 ok, 1 pole, 2 max_terms reached.
"""

import math

OK, POLE, NOCONV = 0, 1, 2


def qpoch_inf(a, q, tol, max_terms, consecutive):
    prod = 1.0
    term = a
    small = 0
    for j in range(max_terms):
        prod *= 1.0 - term
        if abs(term) < tol:
            small += 1
            if small >= consecutive:
                return prod, j + 1, OK
        else:
            small = 0
        term *= q
    return prod, max_terms, NOCONV


def qpoch_fin(a, i, q, margin):
    prod = 1.0
    if i >= 0:
        term = a
        for _ in range(i):
            prod *= 1.0 - term
            term *= q
        return prod, OK
    term = a
    for _ in range(-i):
        term /= q
        f = 1.0 - term
        if abs(f) <= margin:
            return 0.0, POLE
        prod *= f
    return 1.0 / prod, OK


def c_pole_index(c, q):
    """Index j >= 0 minimising |1 - c q^j|, or -1 when c <= 0."""
    if c <= 0.0:
        return -1
    j = math.floor(math.log(c) / -math.log(q) + 0.5)
    return j if j >= 0 else -1


def phi21(a, b, c, x, q, tol, max_terms, consecutive, margin, literal):
    j = c_pole_index(c, q)
    if j >= 0 and abs(1.0 - c * q**j) <= margin:
        return 0.0, 0, POLE
    total = 1.0
    term = 1.0
    qi = 1.0
    small = 0
    for i in range(max_terms):
        den = 1.0 - c * qi
        if abs(den) <= margin:
            return total, i, POLE
        ratio = (1.0 - a * qi) * (1.0 - b * qi) * x / den
        if not literal:
            ratio /= 1.0 - qi * q
        term *= ratio
        total += term
        if abs(term) <= tol * abs(total):
            small += 1
            if small >= consecutive:
                return total, i + 2, OK
        else:
            small = 0
        qi *= q
    return total, max_terms + 1, NOCONV
