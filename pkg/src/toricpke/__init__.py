"""Exact verification and classification of toric para-Kahler-Einstein
Monge-Ampere solutions, with numeric Einstein cross-checks.

The hot polynomial-multiplication kernel is compiled (Cython) when the
extension built; toricpke.KERNEL_BACKEND reports which one is active.
"""

from toricpke._kernel import BACKEND as KERNEL_BACKEND
from toricpke.algebra import (
    BinomialProfile,
    MultiPoly,
    NoExactRootError,
    NotBinomialPowerError,
    NotDivisibleError,
    PolyMatrix,
    Scalar,
    binomial_profile,
    determinant,
    determinant_cofactor,
    exact_divide,
    nth_root,
)
from toricpke.geometry import ToricPotential, space_form_potential

__all__ = [
    "KERNEL_BACKEND",
    "BinomialProfile",
    "MultiPoly",
    "NoExactRootError",
    "NotBinomialPowerError",
    "NotDivisibleError",
    "PolyMatrix",
    "Scalar",
    "ToricPotential",
    "binomial_profile",
    "determinant",
    "determinant_cofactor",
    "exact_divide",
    "nth_root",
    "space_form_potential",
]

__version__ = "0.1.0"
