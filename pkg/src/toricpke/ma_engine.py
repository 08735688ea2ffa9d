"""Monge-Ampere operators, exact verifiers and classification drivers.

The flat-type operator is det[(d^2 D0/dx_i dx_j)x_i + (d D0/dx_j)d_ij];
the log-type operator divides the analogous determinant built from
Q*Q_ab - Q_a*Q_b by Q^(n-1).  A polynomial P with P(0) = +-1 is a
solution of the normalized equation when the log-type left side equals
+-P^n exactly.

Classification in one and two variables proceeds exactly: axis
restrictions are matched against binomial powers, admissible exponents
are found by attempting Taylor continuation off the x2 = 0 axis, and
every produced candidate is re-verified symbolically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from toricpke.algebra import (
    BinomialProfile,
    MultiPoly,
    NoExactRootError,
    NotBinomialPowerError,
    NotDivisibleError,
    PolyMatrix,
    Scalar,
    adjugate,
    binomial_power,
    binomial_profile,
    determinant,
    determinant_cofactor,
    exact_divide,
)
from toricpke.geometry import toric_hessian_matrix


class ProfileMismatchError(ArithmeticError):
    """An axis restriction fails the binomial-power or companion check."""


@dataclass(frozen=True)
class MAResult:
    is_solution: bool
    sign: Optional[int]  # +1 or -1 when is_solution
    witness: MultiPoly  # the computed left-hand side


@dataclass(frozen=True)
class AxisProfile:
    axis: int
    epsilon: int
    r: Scalar
    k: int


@dataclass(frozen=True)
class CauchyData:
    """Axis data P(x1,0), dP/dx2(x1,0) plus the sign/shape parameters."""

    P0: MultiPoly
    P1: MultiPoly
    epsilon: int
    sigma: int
    r: Scalar
    k: int


@dataclass(frozen=True)
class ExponentRatio:
    """The positive rational s/q with gcd(s, q) = 1."""

    s: int
    q: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.s, self.q)


@dataclass(frozen=True)
class FlatClassification:
    is_solution: bool
    coeffs: Optional[tuple]  # linear coefficients k_i when accepted
    coeff_product: Optional[Scalar]


def ma_lhs_flat(d0: MultiPoly) -> MultiPoly:
    """Exact determinant of the flat-type Monge-Ampere matrix."""
    return determinant(toric_hessian_matrix(d0))


def classify_flat(d0: MultiPoly) -> FlatClassification:
    """Accept exactly the affine d0 whose linear coefficients multiply to +-1."""
    n = d0.nvars
    lhs = ma_lhs_flat(d0)
    if lhs != 1 and lhs != -1:
        return FlatClassification(False, None, None)
    # accepted solutions are affine with coefficient product +-1
    assert d0.degree() <= 1, "flat solution with determinant +-1 must be affine"
    coeffs = tuple(
        d0.coefficient(tuple(1 if j == i else 0 for j in range(n)))
        for i in range(n)
    )
    product = math.prod(coeffs, start=Fraction(1))
    assert product in (1, -1)
    return FlatClassification(True, coeffs, product)


def log_ma_matrix(q: MultiPoly) -> PolyMatrix:
    """Matrix (Q Q_ab - Q_a Q_b)x_a + Q Q_a delta_ab."""
    n = q.nvars
    grad = [q.partial_derivative(i) for i in range(n)]
    rows = []
    for a in range(n):
        xa = MultiPoly.variable(n, a)
        row = []
        for b in range(n):
            hess = grad[a].partial_derivative(b)
            entry = (q * hess - grad[a] * grad[b]) * xa
            if a == b:
                entry = entry + q * grad[a]
            row.append(entry)
        rows.append(row)
    return PolyMatrix(rows)


def ma_lhs_log(q: MultiPoly, method: str = "auto") -> MultiPoly:
    """The log-type left side det[...]/Q^(n-1), exact.

    method "direct" computes the full determinant and divides by
    Q^(n-1); "rank1" expands the determinant of Q*A - c*q^T with the
    matrix determinant lemma (A the flat-type matrix of Q), avoiding the
    large determinant.  Both routes agree exactly; "auto" picks by size.
    """
    if q.constant_term() not in (1, -1):
        raise ValueError("log-type candidate needs constant term +-1")
    n = q.nvars
    if method == "auto":
        method = "direct" if n <= 2 else "rank1"
    if method == "direct":
        det = determinant(log_ma_matrix(q))
        return exact_divide(det, q ** (n - 1))
    if method != "rank1":
        raise ValueError(f"unknown method {method!r}")
    a = toric_hessian_matrix(q)
    # entries of A have low degree; cofactor expansion avoids the term
    # swell of fraction-free intermediates here
    det_a = determinant_cofactor(a)
    adj_a = adjugate(a)
    grad = [q.partial_derivative(i) for i in range(n)]
    correction = MultiPoly.zero(n)
    for alpha in range(n):
        col = MultiPoly.variable(n, alpha) * grad[alpha]
        for beta in range(n):
            correction = correction + grad[beta] * adj_a[beta, alpha] * col
    return q * det_a - correction


def verify_ma_star(p: MultiPoly, method: str = "auto") -> MAResult:
    """Exact check that the log-type left side equals +-P^n."""
    n = p.nvars
    try:
        lhs = ma_lhs_log(p, method)
    except NotDivisibleError:
        return MAResult(False, None, MultiPoly.zero(n))
    rhs = p**n
    if lhs == rhs:
        return MAResult(True, 1, lhs)
    if lhs == -rhs:
        return MAResult(True, -1, lhs)
    return MAResult(False, None, lhs)


def exponent_scan(q: MultiPoly) -> Optional[ExponentRatio]:
    """Find the exponent ratio 4*lambda/c = s/q from the log-type left side.

    When the left side equals +-Q^e for a rational e >= 0 the ratio is
    n + 1 - e; the candidate exponent is read off the degrees and the
    power identity lhs^b = +-Q^a is checked exactly.  Returns None when
    the left side is not a rational power of Q or the ratio is not
    positive.
    """
    if q.constant_term() != 1:
        raise ValueError("exponent scan expects constant term 1")
    n = q.nvars
    lhs = ma_lhs_log(q)
    if lhs.is_zero():
        return None
    dq = q.degree()
    dl = lhs.degree()
    if dq <= 0:
        return None
    if dl == 0:
        if lhs not in (1, -1):
            return None
        e = Fraction(0)
    else:
        e = Fraction(int(dl), int(dq))
    a, b = e.numerator, e.denominator
    power = q**a
    if lhs**b != power and lhs**b != -power:
        return None
    ratio = Fraction(n + 1) - e
    if ratio <= 0:
        return None
    return ExponentRatio(ratio.numerator, ratio.denominator)


def reduce_power(q: MultiPoly, ratio: ExponentRatio) -> MultiPoly:
    """Reduce Q = R(x/q)^q to the candidate P = R(x/s)^s.

    Raises NoExactRootError when Q is not an exact q-th power after the
    coordinate rescaling.
    """
    from toricpke.algebra import nth_root

    if q.constant_term() != 1:
        raise ValueError("reduce_power expects constant term 1")
    n = q.nvars
    r = nth_root(q.scale_vars([Fraction(ratio.q)] * n), ratio.q)
    return r.scale_vars([Fraction(1, ratio.s)] * n) ** ratio.s


def axis_profile_check(p: MultiPoly, axis: int) -> AxisProfile:
    """Certify the axis restriction eps*(1 + t/r)^k and its companion.

    For n >= 2 the restriction of prod_{j != axis} dP/dx_j to the axis
    must equal +-eps^(n-2)*(r/k)*(1 + t/r)^(k(n-2)+2) exactly.
    """
    n = p.nvars
    if not 0 <= axis < n:
        raise IndexError("axis out of range")
    pt = p.restrict_to_axis(axis)
    try:
        prof = binomial_profile(pt)
    except NotBinomialPowerError as exc:
        raise ProfileMismatchError(str(exc)) from exc
    if n >= 2:
        qt = MultiPoly.one(1)
        for j in range(n):
            if j != axis:
                qt = qt * p.partial_derivative(j).restrict_to_axis(axis)
        eps, r, k = prof
        expected = (
            Fraction(eps) ** (n - 2)
            * (r / k)
            * (MultiPoly.one(1) + MultiPoly.variable(1, 0) * (1 / r)) ** (k * (n - 2) + 2)
        )
        if qt != expected and qt != -expected:
            raise ProfileMismatchError(
                f"companion restriction on axis {axis} does not match"
            )
    return AxisProfile(axis, prof.epsilon, prof.r, prof.k)


def cauchy_data(epsilon: int, sigma: int, r, k: int) -> CauchyData:
    """Axis data P0 = eps*(1+x1/r)^k, P1 = sigma*(r/k)*(1+x1/r)^2."""
    if epsilon not in (1, -1) or sigma not in (1, -1):
        raise ValueError("epsilon and sigma must be +-1")
    r = Fraction(r)
    if r == 0:
        raise ValueError("r must be nonzero")
    if k < 1:
        raise ValueError("k must be a positive integer")
    p0 = binomial_power(1, 0, epsilon, r, k)
    p1 = sigma * (r / k) * (MultiPoly.one(1) + MultiPoly.variable(1, 0) * (1 / r)) ** 2
    return CauchyData(p0, p1, epsilon, sigma, r, k)


def _lift_univariate(p: MultiPoly, x2_power: int) -> MultiPoly:
    """Embed a univariate polynomial in x1 as a 2-variable one times x2^h."""
    return MultiPoly(2, {(e[0], x2_power): c for e, c in p.terms.items()})


def _x2_coefficient(p: MultiPoly, h: int) -> MultiPoly:
    """Coefficient of x2^h as a univariate polynomial in x1."""
    return MultiPoly(1, {(e[0],): c for e, c in p.terms.items() if e[1] == h})


def _n2_residual(p: MultiPoly, eq_sign: int) -> MultiPoly:
    """det M - eq_sign*P^3 for the two-variable log-type equation."""
    m = log_ma_matrix(p)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return det - eq_sign * p**3


def _continue_with_sign(
    cd: CauchyData, degree_bound: int, eq_sign: int
) -> Optional[MultiPoly]:
    coeffs = [cd.P0, cd.P1]
    degree_cap = 3 * degree_bound + 6
    p0_lifted = _lift_univariate(cd.P0, 0)
    for h in range(1, degree_bound):
        base = sum(
            (_lift_univariate(c, j) for j, c in enumerate(coeffs)),
            MultiPoly.zero(2),
        )
        t = _x2_coefficient(_n2_residual(base, eq_sign), h)
        # the Z-linear coefficient at order h only involves the x2-free
        # part of the expansion, so the probe can use P0 alone; the
        # probe's own residual at Z=0 vanishes identically
        probe = p0_lifted + _lift_univariate(MultiPoly.one(1), h + 1)
        c = _x2_coefficient(_n2_residual(probe, eq_sign), h)
        if c.is_zero():
            if not t.is_zero():
                return None
            nxt = MultiPoly.zero(1)
        else:
            try:
                nxt = exact_divide(-t, c)
            except NotDivisibleError:
                return None
        if nxt.degree() != float("-inf") and nxt.degree() > degree_cap:
            return None
        coeffs.append(nxt)
    candidate = sum(
        (_lift_univariate(c, j) for j, c in enumerate(coeffs)),
        MultiPoly.zero(2),
    )
    if not _n2_residual(candidate, eq_sign).is_zero():
        return None
    return candidate


def taylor_continue_n2(cd: CauchyData, degree_bound: int = 6) -> Optional[MultiPoly]:
    """Reconstruct the two-variable solution from its Cauchy data.

    The solution is written as sum_h P_h(x1)*x2^h and the residual of
    the equation is forced to vanish order by order in x2; each order
    determines P_{h+1} by one exact polynomial division.  Returns None
    (inconsistent) when a division fails or the final residual is
    nonzero, i.e. when no polynomial solution matches the data.
    """
    if degree_bound < max(2, cd.k):
        raise ValueError("degree_bound must be at least max(2, k)")
    for eq_sign in (1, -1):
        result = _continue_with_sign(cd, degree_bound, eq_sign)
        if result is not None:
            return result
    return None


DEFAULT_SCAN_GRID = (
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(-2),
    Fraction(3),
    Fraction(-3),
)


def feasible_k_scan_n2(k_max: int, r_grid=DEFAULT_SCAN_GRID) -> set:
    """Exponents k whose Cauchy data admits a consistent continuation.

    Every sign branch and every grid value of r is attempted; a k is
    feasible when at least one branch continues to a verified polynomial
    solution.
    """
    if k_max < 1:
        raise ValueError("k_max must be positive")
    feasible = set()
    for k in range(1, k_max + 1):
        bound = max(6, k + 2)
        found = False
        for r in r_grid:
            for epsilon in (1, -1):
                for sigma in (1, -1):
                    cd = cauchy_data(epsilon, sigma, r, k)
                    p = taylor_continue_n2(cd, bound)
                    if p is not None and verify_ma_star(p).is_solution:
                        found = True
                        break
                if found:
                    break
            if found:
                break
        if found:
            feasible.add(k)
    return feasible


def classify_n1(k_max: int, r_grid) -> list:
    """All univariate solutions eps*(1 + x/r)^k over the given grid."""
    if k_max < 1:
        raise ValueError("k_max must be positive")
    found = []
    for k in range(1, k_max + 1):
        for r in r_grid:
            r = Fraction(r)
            if r == 0:
                continue
            for epsilon in (1, -1):
                p = binomial_power(1, 0, epsilon, r, k)
                if verify_ma_star(p).is_solution and p not in found:
                    found.append(p)
    return sorted(found, key=_poly_sort_key)


def _poly_sort_key(p: MultiPoly):
    return (p.degree(), sorted(p.terms.items()))


def search_n2(r_grid, degree_bound: int = 6, k_max: int = 6) -> list:
    """Two-variable solutions reachable from the Cauchy families.

    Composes the feasibility scan, Taylor continuation and exact
    re-verification over the grid; results are deduplicated up to the
    sign normalizations of the catalog module.
    """
    from toricpke.catalog import canonicalize

    ks = sorted(feasible_k_scan_n2(k_max))
    reps = {}
    for r in r_grid:
        r = Fraction(r)
        if r == 0:
            continue
        for k in ks:
            for epsilon in (1, -1):
                for sigma in (1, -1):
                    cd = cauchy_data(epsilon, sigma, r, k)
                    p = taylor_continue_n2(cd, degree_bound)
                    if p is None or not verify_ma_star(p).is_solution:
                        continue
                    rep = canonicalize(p)
                    reps.setdefault(rep, rep)
    return sorted(reps, key=_poly_sort_key)
