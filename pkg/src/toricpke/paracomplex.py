"""Split-complex (para-complex) scalars and polynomial maps.

A split-complex number is x + tau*y with tau^2 = 1.  The null basis
e = (1 - tau)/2, ebar = (1 + tau)/2 consists of annihilating idempotents;
in null coordinates (u, v) = (x - y, x + y) multiplication acts
componentwise and the squared modulus is the product u*v = x^2 - y^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from toricpke.algebra import MultiPoly, Scalar


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"expected rational, got {type(v).__name__}")


@dataclass(frozen=True)
class ParaComplex:
    """Exact split-complex scalar, stored in the (real, tau) basis."""

    x: Scalar
    y: Scalar

    def __post_init__(self):
        object.__setattr__(self, "x", _frac(self.x))
        object.__setattr__(self, "y", _frac(self.y))

    @classmethod
    def from_null(cls, u, v) -> "ParaComplex":
        u, v = _frac(u), _frac(v)
        return cls((u + v) / 2, (v - u) / 2)

    def to_null(self) -> tuple:
        """(u, v) with self = u*e + v*ebar."""
        return (self.x - self.y, self.x + self.y)

    def conj(self) -> "ParaComplex":
        return ParaComplex(self.x, -self.y)

    def __add__(self, other):
        return ParaComplex(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return ParaComplex(self.x - other.x, self.y - other.y)

    def __neg__(self):
        return ParaComplex(-self.x, -self.y)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ParaComplex(self.x * other, self.y * other)
        return pc_mul(self, other)

    __rmul__ = __mul__


TAU = ParaComplex(0, 1)
E = ParaComplex(Fraction(1, 2), Fraction(-1, 2))
EBAR = ParaComplex(Fraction(1, 2), Fraction(1, 2))


def pc_mul(a: ParaComplex, b: ParaComplex) -> ParaComplex:
    """(x_a + tau y_a)(x_b + tau y_b) with tau^2 = 1."""
    return ParaComplex(a.x * b.x + a.y * b.y, a.x * b.y + a.y * b.x)


def modulus_sq(z: ParaComplex) -> Scalar:
    """z*conj(z) = x^2 - y^2 = u*v; may vanish or be negative."""
    return z.x * z.x - z.y * z.y


@dataclass(frozen=True)
class ParaMap:
    """Polynomial map into the split-complex numbers, in null form.

    Both parts are polynomials in the 2n variables
    (xi_1..xi_n, eta_1..eta_n); the map is e_part*e + ebar_part*ebar.
    """

    nvars: int
    e_part: MultiPoly
    ebar_part: MultiPoly

    def __post_init__(self):
        if self.e_part.nvars != 2 * self.nvars or self.ebar_part.nvars != 2 * self.nvars:
            raise ValueError("parts must be polynomials in 2*nvars variables")


def _depends_on(p: MultiPoly, indices) -> bool:
    idx = set(indices)
    return any(any(e[i] for i in idx) for e in p.terms)


def is_paraholomorphic(f: ParaMap) -> bool:
    """True iff the e-part is eta-free and the ebar-part is xi-free."""
    n = f.nvars
    xi = range(n)
    eta = range(n, 2 * n)
    return not _depends_on(f.e_part, eta) and not _depends_on(f.ebar_part, xi)


def compose(outer: ParaMap, inner: ParaMap) -> ParaMap:
    """Composition outer(inner) for maps D^n -> D, outer one-dimensional.

    The inner map feeds its e-part into outer's xi slot and its ebar-part
    into outer's eta slot, componentwise in the null basis.
    """
    if outer.nvars != 1:
        raise ValueError("outer map must have one para-complex input")
    e = outer.e_part.substitute([inner.e_part, inner.ebar_part])
    ebar = outer.ebar_part.substitute([inner.e_part, inner.ebar_part])
    return ParaMap(inner.nvars, e, ebar)
