"""Novikov algebras, Lie structures and Gel'fand-Dorfman algebras.

Both structures share one finite basis of named (graded) elements and a
binary table mapping ``(u, v)`` to a finite combination of basis elements
with coefficients in Q[params] (no formal variables).  Table presence is
explicit: a stored key is a decidable product (possibly zero, stored as an
empty combination), a missing key is undecidable at this truncation.  The
family constructors store exactly the pairs whose target grade lies in the
window, matching the window semantics of the conformal side so the
quadratic-algebra correspondence round-trips on the nose.

The correspondence with quadratic Lie conformal algebras:

    [a_x b] = d (b o a) + [b, a] + x (a o b + b o a)

``quadratic_from_gd`` expands the right side into a structure table (after
verifying the Novikov, Lie and compatibility laws) and ``gd_from_quadratic``
inverts it, reading the product off the d-coefficients and the bracket off
the constant terms while checking the x-coefficients for consistency.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .conformal import ConformalAlgebra, GeneratorId
from .poly import DEL, LAM, D, X, Mono, ParamPoly, as_poly, param

Combination = dict[GeneratorId, ParamPoly]
TableInput = Mapping[tuple[GeneratorId, GeneratorId],
                     Mapping[GeneratorId, ParamPoly]]


class NotGDError(ValueError):
    """The input fails the Novikov, Lie or compatibility laws."""


class NotQuadraticError(ValueError):
    """A structure polynomial is not affine in d and x."""

    def __init__(self, pair: tuple[GeneratorId, GeneratorId], poly: ParamPoly):
        super().__init__(f"bracket ({pair[0].name}, {pair[1].name}) is not "
                         f"affine: {poly}")
        self.pair = pair
        self.poly = poly


class InconsistentStarError(ValueError):
    """An x-coefficient disagrees with the symmetrized product."""

    def __init__(self, pair: tuple[GeneratorId, GeneratorId]):
        super().__init__(f"x-coefficient of ({pair[0].name}, {pair[1].name}) "
                         f"does not match the symmetrized product")
        self.pair = pair


class _FiniteTable:
    """Finite basis plus an explicit-presence binary structure table."""

    def __init__(self, basis: Iterable[GeneratorId], table: TableInput):
        self.basis = tuple(sorted(basis))
        names = [g.name for g in self.basis]
        if len(set(names)) != len(names):
            raise ValueError("basis names must be unique")
        known = set(self.basis)
        params: set[str] = set()
        clean: dict[tuple[GeneratorId, GeneratorId], Combination] = {}
        for (u, v), combo in dict(table).items():
            if u not in known or v not in known:
                raise ValueError(f"table pair ({u.name}, {v.name}) uses an "
                                 f"undeclared element")
            entry: Combination = {}
            for w, coef in dict(combo).items():
                coef = as_poly(coef)
                if w not in known:
                    raise ValueError(f"target {w.name} is undeclared")
                if not coef.is_formal_constant():
                    raise ValueError("structure constants must be free of d, x, y")
                if coef:
                    params |= coef.params()
                    entry[w] = coef
            clean[(u, v)] = entry
        self._table = clean
        self.params = frozenset(params)

    def entry(self, u: GeneratorId, v: GeneratorId) -> Optional[Combination]:
        """The product/bracket of two basis elements; None when undecidable."""
        got = self._table.get((u, v))
        return dict(got) if got is not None else None

    def pairs(self):
        return sorted(self._table)

    def __eq__(self, other: object) -> bool:
        return (type(self) is type(other)
                and self.basis == other.basis
                and self._table == other._table)


class NovikovAlgebra(_FiniteTable):
    """A bilinear product intended to satisfy the Novikov laws."""

    def product(self, u: GeneratorId, v: GeneratorId) -> Optional[Combination]:
        return self.entry(u, v)


class LieStructure(_FiniteTable):
    """A bilinear bracket intended to satisfy antisymmetry and Jacobi."""

    def bracket(self, u: GeneratorId, v: GeneratorId) -> Optional[Combination]:
        return self.entry(u, v)


@dataclass(frozen=True)
class GDAlgebra:
    """A Novikov product and a Lie bracket on one shared basis."""

    nov: NovikovAlgebra
    lie: LieStructure

    def __post_init__(self):
        if self.nov.basis != self.lie.basis:
            raise ValueError("product and bracket must share one basis")

    @property
    def basis(self) -> tuple[GeneratorId, ...]:
        return self.nov.basis


# -- combination arithmetic ---------------------------------------------------

def _add(a: Optional[Combination], b: Optional[Combination],
         sign: int = 1) -> Optional[Combination]:
    if a is None or b is None:
        return None
    out = dict(a)
    for g, coef in b.items():
        out[g] = out.get(g, ParamPoly.zero()) + sign * coef
    return {g: c for g, c in out.items() if c}


def _extend_left(table: _FiniteTable, a: GeneratorId,
                 combo: Optional[Combination]) -> Optional[Combination]:
    """a against a combination: sum coef * table(a, t)."""
    if combo is None:
        return None
    acc: Combination = {}
    for t, coef in combo.items():
        got = table.entry(a, t)
        if got is None:
            return None
        for w, k in got.items():
            acc[w] = acc.get(w, ParamPoly.zero()) + coef * k
    return {g: c for g, c in acc.items() if c}


def _extend_right(table: _FiniteTable, combo: Optional[Combination],
                  c: GeneratorId) -> Optional[Combination]:
    """A combination against c: sum coef * table(t, c)."""
    if combo is None:
        return None
    acc: Combination = {}
    for t, coef in combo.items():
        got = table.entry(t, c)
        if got is None:
            return None
        for w, k in got.items():
            acc[w] = acc.get(w, ParamPoly.zero()) + coef * k
    return {g: c_ for g, c_ in acc.items() if c_}


# -- law checks ----------------------------------------------------------------

@dataclass(frozen=True)
class LawViolation:
    law: str
    elements: tuple[GeneratorId, ...]
    residual: tuple[tuple[GeneratorId, ParamPoly], ...]


@dataclass(frozen=True)
class LawReport:
    checked: int
    skipped: int
    violations: tuple[LawViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _scan(laws) -> LawReport:
    checked = skipped = 0
    violations: list[LawViolation] = []
    for elements, law, residual_fn in laws:
        residual = residual_fn()
        if residual is None:
            skipped += 1
            continue
        checked += 1
        if residual:
            violations.append(LawViolation(
                law, elements, tuple(sorted(residual.items()))))
    return LawReport(checked, skipped, tuple(violations))


def check_novikov(nov: NovikovAlgebra) -> LawReport:
    """Left-symmetry and right-commutativity over all decidable triples.

        (a o b) o c - a o (b o c) = (b o a) o c - b o (a o c)
        (a o b) o c = (a o c) o b
    """
    def left_symmetry(a, b, c):
        return _add(
            _add(_extend_right(nov, nov.product(a, b), c),
                 _extend_left(nov, a, nov.product(b, c)), -1),
            _add(_extend_right(nov, nov.product(b, a), c),
                 _extend_left(nov, b, nov.product(a, c)), -1),
            -1)

    def right_commutativity(a, b, c):
        return _add(_extend_right(nov, nov.product(a, b), c),
                    _extend_right(nov, nov.product(a, c), b), -1)

    laws = []
    for a in nov.basis:
        for b in nov.basis:
            for c in nov.basis:
                laws.append(((a, b, c), "left-symmetry",
                             lambda a=a, b=b, c=c: left_symmetry(a, b, c)))
                laws.append(((a, b, c), "right-commutativity",
                             lambda a=a, b=b, c=c: right_commutativity(a, b, c)))
    return _scan(laws)


def check_lie(lie: LieStructure) -> LawReport:
    """Antisymmetry on pairs and the Jacobi identity on triples."""
    def antisymmetry(a, b):
        return _add(lie.bracket(a, b), lie.bracket(b, a))

    def jacobi(a, b, c):
        return _add(_add(_extend_right(lie, lie.bracket(a, b), c),
                         _extend_right(lie, lie.bracket(b, c), a)),
                    _extend_right(lie, lie.bracket(c, a), b))

    laws = []
    for a in lie.basis:
        for b in lie.basis:
            laws.append(((a, b), "antisymmetry",
                         lambda a=a, b=b: antisymmetry(a, b)))
    for a in lie.basis:
        for b in lie.basis:
            for c in lie.basis:
                laws.append(((a, b, c), "jacobi",
                             lambda a=a, b=b, c=c: jacobi(a, b, c)))
    return _scan(laws)


def check_gd(g: GDAlgebra) -> LawReport:
    """The five-term compatibility between the product and the bracket:

        [a o b, c] - [a o c, b] + [a, b] o c - [a, c] o b - a o [b, c] = 0
    """
    nov, lie = g.nov, g.lie

    def compatibility(a, b, c):
        total = _add(_extend_right(lie, nov.product(a, b), c),
                     _extend_right(lie, nov.product(a, c), b), -1)
        total = _add(total, _extend_right(nov, lie.bracket(a, b), c))
        total = _add(total, _extend_right(nov, lie.bracket(a, c), b), -1)
        return _add(total, _extend_left(nov, a, lie.bracket(b, c)), -1)

    laws = [((a, b, c), "compatibility",
             lambda a=a, b=b, c=c: compatibility(a, b, c))
            for a in g.basis for b in g.basis for c in g.basis]
    return _scan(laws)


# -- truncated families ---------------------------------------------------------

def _graded_basis(grades: Iterable[int]) -> dict[int, GeneratorId]:
    return {i: GeneratorId(i, f"L{i}") for i in sorted(set(grades))}


def make_a1(top: int) -> NovikovAlgebra:
    """Truncation of the Novikov algebra L_i o L_j = (j+1) L_{i+j}, i, j >= -1."""
    gens = _graded_basis(range(-1, top + 1))
    table = {}
    for i in gens:
        for j in gens:
            if i + j in gens:
                table[(gens[i], gens[j])] = {gens[i + j]: as_poly(j + 1)}
    return NovikovAlgebra(gens.values(), table)


def make_a2(b, window: Iterable[int]) -> NovikovAlgebra:
    """Truncation of L_i o L_j = (j + b) L_{i+j} on integer grades."""
    b = param(b) if isinstance(b, str) else as_poly(b)
    gens = _graded_basis(window)
    table = {}
    for i in gens:
        for j in gens:
            if i + j in gens:
                table[(gens[i], gens[j])] = {gens[i + j]: j + b}
    return NovikovAlgebra(gens.values(), table)


def make_a3(b, window: Iterable[int], depth: int) -> NovikovAlgebra:
    """Truncation of the two-index family on grades x {0..depth}:

        L_(i,m) o L_(j,n) = (j + b) L_(i+j, m+n) + n L_(i+j, m+n-1)
    """
    b = param(b) if isinstance(b, str) else as_poly(b)
    grades = sorted(set(window))
    basis = {(i, m): GeneratorId(i, f"L{i}_{m}")
             for i in grades for m in range(depth + 1)}
    table = {}
    for (i, m), u in basis.items():
        for (j, n), v in basis.items():
            if i + j not in grades:
                continue
            combo: Combination = {}
            ok = True
            first = j + b
            if first:
                if (i + j, m + n) not in basis:
                    ok = False
                else:
                    combo[basis[(i + j, m + n)]] = first
            if ok and n:
                combo[basis[(i + j, m + n - 1)]] = as_poly(n)
            if ok:
                table[(u, v)] = combo
    return NovikovAlgebra(basis.values(), table)


def s_bracket(basis: Iterable[GeneratorId], s) -> LieStructure:
    """The bracket [L_i, L_j] = s (i - j) L_{i+j} on a one-per-grade basis."""
    s = param(s) if isinstance(s, str) else as_poly(s)
    elements = tuple(basis)
    gens = {g.grade: g for g in elements}
    if len(gens) != len(elements):
        raise ValueError("s_bracket requires one basis element per grade")
    table = {}
    for i in gens:
        for j in gens:
            if i + j in gens:
                table[(gens[i], gens[j])] = {gens[i + j]: s * (i - j)}
    return LieStructure(gens.values(), table)


def gd_a1(s, top: int) -> GDAlgebra:
    nov = make_a1(top)
    return GDAlgebra(nov, s_bracket(nov.basis, s))


def gd_a2(b, s, window: Iterable[int]) -> GDAlgebra:
    nov = make_a2(b, window)
    return GDAlgebra(nov, s_bracket(nov.basis, s))


# -- the quadratic correspondence ------------------------------------------------

def quadratic_from_gd(g: GDAlgebra) -> ConformalAlgebra:
    """The quadratic Lie conformal algebra of a Gel'fand-Dorfman algebra.

    The laws are enforced first (NotGDError on any decidable violation); the
    expansion then guarantees a Lie conformal algebra, which the test suite
    re-verifies rather than assumes.
    """
    for report, what in ((check_novikov(g.nov), "Novikov laws"),
                         (check_lie(g.lie), "Lie laws"),
                         (check_gd(g), "compatibility")):
        if report.violations:
            first = report.violations[0]
            names = ", ".join(e.name for e in first.elements)
            raise NotGDError(f"{what} fail ({first.law}) on ({names})")
    window = frozenset(b.grade for b in g.basis)
    table = {}
    for u in g.basis:
        for v in g.basis:
            if u.grade + v.grade not in window:
                continue
            vu = g.nov.product(v, u)
            uv = g.nov.product(u, v)
            bracket = g.lie.bracket(v, u)
            if vu is None or uv is None or bracket is None:
                raise ValueError(
                    f"pair ({u.name}, {v.name}) lands in the window but the "
                    f"product or bracket is undecidable")
            entry: Combination = {}
            for w in set(vu) | set(uv) | set(bracket):
                alpha = vu.get(w, ParamPoly.zero())
                beta = uv.get(w, ParamPoly.zero()) + alpha
                gamma = bracket.get(w, ParamPoly.zero())
                poly = alpha * D + beta * X + gamma
                if poly:
                    entry[w] = poly
            table[(u, v)] = entry
    return ConformalAlgebra(g.basis, table, window)


def gd_from_quadratic(alg: ConformalAlgebra) -> GDAlgebra:
    """Recover the Gel'fand-Dorfman algebra of a quadratic conformal algebra.

    Every structure polynomial must be affine, u*d + v*x + w with scalar
    coefficients per target; the d-coefficients give the (transposed) product,
    the constant terms the (transposed) bracket, and the x-coefficients are
    checked against the symmetrized product (InconsistentStarError).
    """
    d_mono: Mono = ((DEL, 1),)
    x_mono: Mono = ((LAM, 1),)
    alphas: dict[tuple[GeneratorId, GeneratorId], Combination] = {}
    betas: dict[tuple[GeneratorId, GeneratorId], Combination] = {}
    gammas: dict[tuple[GeneratorId, GeneratorId], Combination] = {}
    for u in alg.generators:
        for v in alg.generators:
            if u.grade + v.grade not in alg.window:
                continue
            alpha: Combination = {}
            beta: Combination = {}
            gamma: Combination = {}
            for w, poly in sorted(alg.structure(u, v).items()):
                parts = poly.formal_coefficients()
                if set(parts) - {(), d_mono, x_mono}:
                    raise NotQuadraticError((u, v), poly)
                if parts.get(d_mono):
                    alpha[w] = parts[d_mono]
                if parts.get(x_mono):
                    beta[w] = parts[x_mono]
                if parts.get(()):
                    gamma[w] = parts[()]
            alphas[(u, v)] = alpha
            betas[(u, v)] = beta
            gammas[(u, v)] = gamma
    circ = {}
    lie = {}
    for (u, v), alpha in alphas.items():
        # [u_x v] = d (v o u) + ...: the pair's d-part defines (v o u).
        circ[(v, u)] = alpha
        lie[(v, u)] = gammas[(u, v)]
        expected = _add(alpha, alphas[(v, u)])
        if _add(betas[(u, v)], expected, -1):
            raise InconsistentStarError((u, v))
    return GDAlgebra(NovikovAlgebra(alg.generators, circ),
                     LieStructure(alg.generators, lie))
