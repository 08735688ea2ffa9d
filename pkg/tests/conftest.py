"""Shared helpers: a naive expansion oracle and random polynomial builders.

The naive oracle multiplies term maps with plain dictionary loops and
Fraction arithmetic, fully independent of the packed-kernel code path, so
it can serve as a cross-check for every derived expansion in the tests.
"""

import random
from fractions import Fraction

from toricpke.algebra import MultiPoly


def naive_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Reference product computed without the multiplication kernel."""
    acc = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            exp = tuple(x + y for x, y in zip(ea, eb))
            acc[exp] = acc.get(exp, Fraction(0)) + ca * cb
    return MultiPoly(a.nvars, acc)


def naive_pow(a: MultiPoly, k: int) -> MultiPoly:
    out = MultiPoly.one(a.nvars)
    for _ in range(k):
        out = naive_mul(out, a)
    return out


COEFF_POOL = [
    Fraction(v)
    for v in (-3, -2, -1, 1, 2, 3)
] + [Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(2, 3)]


def random_poly(rng: random.Random, nvars: int, max_degree: int,
                max_terms: int = 5) -> MultiPoly:
    """Random sparse polynomial with small rational coefficients."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exp = [0] * nvars
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            exp[rng.randrange(nvars)] += 1
        terms[tuple(exp)] = rng.choice(COEFF_POOL)
    return MultiPoly(nvars, terms)


def random_nonzero_poly(rng: random.Random, nvars: int, max_degree: int,
                        max_terms: int = 5) -> MultiPoly:
    while True:
        p = random_poly(rng, nvars, max_degree, max_terms)
        if not p.is_zero():
            return p
