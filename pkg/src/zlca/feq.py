"""Exact polynomial solutions of the grade-action functional equation.

For a pair of grades with affine grade-0 actions, scale*(d + w*x + shift) on
the left grade, the right grade and their sum, a structure polynomial
p(d, x) must satisfy the consistency equation obtained from the Jacobi
identity against the grade-0 generator:

    (-x - y + wl*x + sl) p(d, x+y)
        = p(d+x, y) (d + wo*x + so) - (d + y + wr*x + sr) p(d, y)

Solving is exact linear algebra: the coefficients of the unknown polynomial
(all monomials d^a x^b up to a degree bound, or one homogeneous slice) are
unknowns, both sides are expanded over monomials in d, x, y, and the
resulting homogeneous rational system is eliminated fraction-free.  The
homogeneous top-degree variant drops the shifts:

    ((wl - 1) x - y) p(d, x+y) = p(d+x, y) (d + wo*x) - (d + y + wr*x) p(d, y)

which is the top-degree component of the full equation and pins down the
leading homogeneous part of any solution.

Solution spaces are returned echelonized: basis polynomials have canonical
leading coefficient 1 and the reduced row echelon certificate over the
monomial coordinates is kept for membership tests and reproducible hashing.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import linalg
from .poly import (DEL, LAM, D, X, Y, MINUS_INFINITY, Mono, ParamPoly,
                   mono_sort_key)

MAX_FULL_DEGREE = 12
MAX_TOP_DEGREE = 6


class DegreeGuardError(ValueError):
    """Requested degree exceeds the system-size guard."""


class FactorCheckError(ArithmeticError):
    """The factored quotient fails the shifted equation (must not occur)."""


@dataclass(frozen=True)
class SpectralTriple:
    """The six affine-action constants entering the functional equation."""

    weight_left: Fraction
    shift_left: Fraction
    weight_right: Fraction
    shift_right: Fraction
    weight_out: Fraction
    shift_out: Fraction

    def __post_init__(self):
        for name in ("weight_left", "shift_left", "weight_right",
                     "shift_right", "weight_out", "shift_out"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))


def feq_residual(p: ParamPoly, t: SpectralTriple) -> ParamPoly:
    """Left side minus right side of the functional equation at p."""
    p_sum = p.substitute(LAM, X + Y)
    p_shift = p.substitute(LAM, Y).substitute(DEL, D + X)
    p_mu = p.substitute(LAM, Y)
    return ((-X - Y + t.weight_left * X + t.shift_left) * p_sum
            - p_shift * (D + t.weight_out * X + t.shift_out)
            + (D + Y + t.weight_right * X + t.shift_right) * p_mu)


def top_residual(p: ParamPoly, weight_left: Fraction, weight_right: Fraction,
                 weight_out: Fraction) -> ParamPoly:
    """Residual of the homogeneous top-degree equation at p."""
    p_sum = p.substitute(LAM, X + Y)
    p_shift = p.substitute(LAM, Y).substitute(DEL, D + X)
    p_mu = p.substitute(LAM, Y)
    return (((Fraction(weight_left) - 1) * X - Y) * p_sum
            - p_shift * (D + Fraction(weight_out) * X)
            + (D + Y + Fraction(weight_right) * X) * p_mu)


@dataclass(frozen=True)
class SolutionBasis:
    """An echelonized basis of a polynomial solution space.

    ``monomials`` fixes the coordinate system (canonical decreasing order);
    ``echelon`` is the reduced row echelon form of the solution vectors, so
    each basis polynomial has canonical leading coefficient 1 and the whole
    object is byte-reproducible.
    """

    monomials: tuple[Mono, ...]
    echelon: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.echelon)

    @property
    def basis(self) -> tuple[ParamPoly, ...]:
        return tuple(ParamPoly(dict(zip(self.monomials, row)))
                     for row in self.echelon)

    def contains(self, poly: ParamPoly) -> bool:
        """Exact membership of an instantiated polynomial in the span."""
        if poly.params():
            raise ValueError("membership requires an instantiated polynomial")
        index = {m: i for i, m in enumerate(self.monomials)}
        vec = [Fraction(0)] * len(self.monomials)
        for mono, coef in poly.terms():
            if mono not in index:
                return False
            vec[index[mono]] = coef
        for row, p in zip(self.echelon, self.pivots):
            factor = vec[p]
            if factor:
                vec = [v - factor * r for v, r in zip(vec, row)]
        return not any(vec)

    def echelon_hash(self) -> str:
        payload = ";".join(
            ",".join(str(v) for v in row) for row in self.echelon)
        monos = "|".join("*".join(f"{v}^{e}" for v, e in m) or "1"
                         for m in self.monomials)
        return hashlib.sha256(f"{monos};;{payload}".encode()).hexdigest()


def _solve(monomials: Sequence[Mono],
           residual_of: Callable[[ParamPoly], ParamPoly]) -> SolutionBasis:
    columns = [residual_of(ParamPoly({m: Fraction(1)})) for m in monomials]
    equations = sorted({mono for col in columns for mono, _ in col.terms()},
                       key=mono_sort_key)
    matrix = [[col.coefficient(eq) for col in columns] for eq in equations]
    kernel = linalg.nullspace(matrix, len(monomials))
    if not kernel:
        return SolutionBasis(tuple(monomials), (), ())
    echelon, pivots = linalg.rref(kernel)
    return SolutionBasis(tuple(monomials), echelon, pivots)


def _monomials_up_to(degree: int) -> list[Mono]:
    monos: list[Mono] = []
    for a in range(degree + 1):
        for b in range(degree + 1 - a):
            mono = tuple(p for p in ((DEL, a), (LAM, b)) if p[1])
            monos.append(mono)
    return sorted(monos, key=mono_sort_key)


def solve_feq(triple: SpectralTriple, max_degree: int) -> SolutionBasis:
    """All polynomial solutions of total degree <= max_degree, exactly."""
    if max_degree > MAX_FULL_DEGREE:
        raise DegreeGuardError(f"degree bound {max_degree} exceeds "
                               f"{MAX_FULL_DEGREE}")
    return _solve(_monomials_up_to(max_degree),
                  lambda p: feq_residual(p, triple))


def solve_feq_top(weight_left: Fraction, weight_right: Fraction,
                  weight_out: Fraction, degree: int) -> SolutionBasis:
    """Homogeneous degree-``degree`` solutions of the top-degree equation."""
    if degree > MAX_TOP_DEGREE:
        raise DegreeGuardError(f"homogeneous degree {degree} exceeds "
                               f"{MAX_TOP_DEGREE}")
    monos = [m for m in _monomials_up_to(degree)
             if sum(e for _, e in m) == degree]
    return _solve(monos, lambda p: top_residual(p, weight_left, weight_right,
                                                weight_out))


def factor_check(sol: ParamPoly, triple: SpectralTriple) -> ParamPoly:
    """Divide a weight_out = 0 solution by (d + shift_out) and re-verify.

    The quotient must solve the functional equation with weight_out replaced
    by 1 and all shifts unchanged; violation of either step is surfaced (a
    NotDivisibleError from the division, or FactorCheckError from the
    re-verification) since it would falsify the factorization property.
    """
    if triple.weight_out != 0:
        raise ValueError("factor check applies to weight_out = 0 triples")
    if sol.formal_degree() is MINUS_INFINITY or sol.formal_degree() < 1:
        raise ValueError("factor check needs a solution of degree >= 1")
    quotient = sol.exact_divide(D + triple.shift_out)
    shifted = SpectralTriple(triple.weight_left, triple.shift_left,
                             triple.weight_right, triple.shift_right,
                             Fraction(1), triple.shift_out)
    residual = feq_residual(quotient, shifted)
    if residual:
        raise FactorCheckError(f"quotient {quotient} fails the shifted "
                               f"equation with residual {residual}")
    return quotient


# -- reproduction of the two homogeneous solution tables -----------------------

@dataclass(frozen=True)
class TableCase:
    """One homogeneous case: weights, degree, and the printed solution.

    ``expected`` is the canonical string of the unique solution up to scalar,
    or None for off-table weight choices whose solution space must be empty.
    The out-weight always honors  wl + wr = wo + degree + 1.
    """

    label: str
    weight_left: Fraction
    weight_right: Fraction
    degree: int
    expected: Optional[str]

    @property
    def weight_out(self) -> Fraction:
        return (Fraction(self.weight_left) + Fraction(self.weight_right)
                - self.degree - 1)


def nonzero_out_cases() -> tuple[TableCase, ...]:
    """The eight cases with weight_out != 0, plus off-table probes."""
    f = Fraction
    return (
        TableCase("generic/deg0", f(3), f(0), 0, "1"),
        TableCase("generic/deg1", f(2), f(2), 1, "d + 2*x"),
        TableCase("generic/deg2", f(3), f(1), 2, "d^2 + 3/2*d*x + 1/2*x^2"),
        TableCase("generic/deg3", f(5, 3), f(5, 3), 3,
                  "d^3 + 3/2*d^2*x - 3/2*d*x^2 - x^3"),
        TableCase("weight1/deg0", f(1), f(3), 0, "1"),
        TableCase("weight1/deg1", f(1), f(2), 1, "x"),
        TableCase("weight1/deg2", f(1), f(5), 2, "d*x - 3*x^2"),
        TableCase("weight1/deg3", f(1), f(1), 3, "d^2*x + 3*d*x^2 + 2*x^3"),
        TableCase("off-table/deg2", f(3), f(2), 2, None),
        TableCase("off-table/deg3", f(2), f(3), 3, None),
        TableCase("off-table/weight1-deg3", f(1), f(2), 3, None),
        TableCase("off-table/deg4", f(3), f(3), 4, None),
    )


def zero_out_cases() -> tuple[TableCase, ...]:
    """The six cases with weight_out = 0, plus off-table probes."""
    f = Fraction
    return (
        TableCase("zero-out/deg0", f(3), f(-2), 0, "1"),
        TableCase("zero-out/deg1", f(3), f(-1), 1, "d"),
        TableCase("zero-out/deg2", f(3), f(0), 2, "d^2 + 1/2*d*x"),
        TableCase("zero-out/weight1-deg2", f(1), f(2), 2, "d*x"),
        TableCase("zero-out/weight1-deg3", f(1), f(3), 3, "d^2*x - d*x^2"),
        TableCase("zero-out/weight3-deg3", f(3), f(1), 3,
                  "d^3 + 3/2*d^2*x + 1/2*d*x^2"),
        TableCase("zero-out/off-table-deg3", f(2), f(2), 3, None),
        TableCase("zero-out/off-table-deg4", f(5, 2), f(5, 2), 4, None),
    )


@dataclass(frozen=True)
class TableCaseResult:
    label: str
    weight_left: Fraction
    weight_right: Fraction
    weight_out: Fraction
    degree: int
    expected: Optional[str]
    dimension: int
    basis: tuple[str, ...]
    passed: bool


@dataclass(frozen=True)
class TableReport:
    cases: tuple[TableCaseResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(case.passed for case in self.cases)


def _run_case(case: TableCase) -> TableCaseResult:
    from .grammar import parse

    solutions = solve_feq_top(case.weight_left, case.weight_right,
                              case.weight_out, case.degree)
    basis = tuple(str(p) for p in solutions.basis)
    if case.expected is None:
        passed = solutions.dimension == 0
    else:
        passed = (solutions.dimension == 1
                  and solutions.basis[0] == parse(case.expected).monic())
    return TableCaseResult(case.label, case.weight_left, case.weight_right,
                           case.weight_out, case.degree, case.expected,
                           solutions.dimension, basis, passed)


def reproduce_table_nonzero_out() -> TableReport:
    return TableReport(tuple(_run_case(c) for c in nonzero_out_cases()))


def reproduce_table_zero_out() -> TableReport:
    return TableReport(tuple(_run_case(c) for c in zero_out_cases()))


def reproduce_tables() -> TableReport:
    return TableReport(reproduce_table_nonzero_out().cases
                       + reproduce_table_zero_out().cases)
