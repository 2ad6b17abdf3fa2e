# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled double-precision kernels; same contract as ``_pykernels``."""

from libc.math cimport fabs, log, pow, lround

DEF OK = 0
DEF POLE = 1
DEF NOCONV = 2


def qpoch_inf(double a, double q, double tol, long max_terms, int consecutive):
    cdef double prod = 1.0, term = a
    cdef int small = 0
    cdef long j
    for j in range(max_terms):
        prod *= 1.0 - term
        if fabs(term) < tol:
            small += 1
            if small >= consecutive:
                return prod, j + 1, OK
        else:
            small = 0
        term *= q
    return prod, max_terms, NOCONV


def qpoch_fin(double a, long i, double q, double margin):
    cdef double prod = 1.0, term = a, f
    cdef long j
    if i >= 0:
        for j in range(i):
            prod *= 1.0 - term
            term *= q
        return prod, OK
    for j in range(-i):
        term /= q
        f = 1.0 - term
        if fabs(f) <= margin:
            return 0.0, POLE
        prod *= f
    return 1.0 / prod, OK


cpdef long c_pole_index(double c, double q):
    cdef long j
    if c <= 0.0:
        return -1
    j = lround(log(c) / -log(q))
    return j if j >= 0 else -1


def phi21(double a, double b, double c, double x, double q, double tol,
          long max_terms, int consecutive, double margin, bint literal):
    cdef long j = c_pole_index(c, q)
    cdef double total = 1.0, term = 1.0, qi = 1.0, den, ratio
    cdef int small = 0
    cdef long i
    if j >= 0 and fabs(1.0 - c * pow(q, <double>j)) <= margin:
        return 0.0, 0, POLE
    for i in range(max_terms):
        den = 1.0 - c * qi
        if fabs(den) <= margin:
            return total, i, POLE
        ratio = (1.0 - a * qi) * (1.0 - b * qi) * x / den
        if not literal:
            ratio /= 1.0 - qi * q
        term *= ratio
        total += term
        if fabs(term) <= tol * fabs(total):
            small += 1
            if small >= consecutive:
                return total, i + 2, OK
        else:
            small = 0
        qi *= q
    return total, max_terms + 1, NOCONV
