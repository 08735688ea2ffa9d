"""Pure-Python term-map kernel for sparse polynomial multiplication.

Terms are dicts mapping exponent tuples to Fractions.  Inside the
product loop exponent tuples are packed into single integers (16 bits
per variable, no carries at desk-scale degrees) and coefficients are
accumulated as raw (numerator, denominator) pairs, so tuple building and
gcd normalisation happen once per output term instead of once per pair.
"""

from fractions import Fraction

BACKEND = "python"

_SHIFT = 16
_MASK = (1 << _SHIFT) - 1


def _encode(exp):
    key = 0
    for i, e in enumerate(exp):
        key |= e << (_SHIFT * i)
    return key


def _decode(key, nvars):
    return tuple((key >> (_SHIFT * i)) & _MASK for i in range(nvars))


def mul_terms(a, b):
    """Multiply two term maps, returning a new map with no zero entries."""
    if len(a) > len(b):
        a, b = b, a
    nvars = len(next(iter(a)))
    packed_b = [
        (_encode(e), c.numerator, c.denominator) for e, c in b.items()
    ]
    acc = {}
    get = acc.get
    for ea, ca in a.items():
        ka = _encode(ea)
        na = ca.numerator
        da = ca.denominator
        for kb, nb, db in packed_b:
            k = ka + kb
            n = na * nb
            d = da * db
            cur = get(k)
            if cur is None:
                acc[k] = [n, d]
            elif cur[1] == d:
                cur[0] += n
            else:
                cur[0] = cur[0] * d + n * cur[1]
                cur[1] *= d
    out = {}
    for k, (n, d) in acc.items():
        if n:
            c = Fraction(n, d)
            if c:
                out[_decode(k, nvars)] = c
    return out
