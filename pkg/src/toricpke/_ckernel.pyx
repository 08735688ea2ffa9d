# cython: language_level=3
"""Cython term-map kernel: sparse polynomial multiplication.

Same contract and packing scheme as toricpke._pykernel.mul_terms;
exponent tuples become packed ints (16 bits per variable) inside the
pair loop and coefficients stay raw big-int pairs until the final
Fraction construction.
"""

from fractions import Fraction

BACKEND = "cython"

DEF SHIFT = 16


def mul_terms(dict a, dict b):
    """Multiply two term maps, returning a new map with no zero entries."""
    cdef dict acc = {}
    cdef dict out = {}
    cdef tuple ea, exp
    cdef list packed_b, cur
    cdef Py_ssize_t i, j, nb, nvars
    if len(a) > len(b):
        a, b = b, a
    nvars = len(next(iter(a)))
    packed_b = []
    for eb, cb in b.items():
        key = 0
        for i in range(nvars):
            key |= (<object> (<tuple> eb)[i]) << (SHIFT * i)
        packed_b.append((key, cb.numerator, cb.denominator))
    nb = len(packed_b)
    mask = (1 << SHIFT) - 1
    for ea, ca in a.items():
        ka = 0
        for i in range(nvars):
            ka |= (<object> ea[i]) << (SHIFT * i)
        na = ca.numerator
        da = ca.denominator
        for j in range(nb):
            triple = <tuple> packed_b[j]
            k = ka + triple[0]
            n = na * triple[1]
            d = da * triple[2]
            cur = <list> acc.get(k)
            if cur is None:
                acc[k] = [n, d]
            elif cur[1] == d:
                cur[0] = cur[0] + n
            else:
                cur[0] = cur[0] * d + n * cur[1]
                cur[1] = cur[1] * d
    for k, nd in acc.items():
        n = (<list> nd)[0]
        if n:
            c = Fraction(n, (<list> nd)[1])
            if c:
                exp = tuple((k >> (SHIFT * i)) & mask for i in range(nvars))
                out[exp] = c
    return out
