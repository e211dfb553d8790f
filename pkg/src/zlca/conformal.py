"""Z-graded Lie conformal algebras with finitely many free generators.

An algebra is a finite window of integer grades, a list of generators (each a
free rank-one direct summand at its grade), and a structure table sending a
pair of generators ``(u, v)`` to a finite sum ``sum_w p^w_{u,v}(d, x) w`` over
generators of grade ``u.grade + v.grade``.  Brackets of arbitrary elements
follow by sesquilinearity:

    [f(d)u_x g(d)v] = f(-x) g(d+x) [u_x v]

Window semantics: a pair whose target grade lies *outside* the window is
undecidable (the infinite families are truncated, so absence of the grade
carries no information), while an absent table entry whose target grade is
*inside* the window is the zero bracket.  Axiom checks skip and count
undecidable pairs and triples rather than failing them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .poly import DEL, LAM, MU, Mono, ParamPoly, Scalar, as_poly

TableEntry = Mapping["GeneratorId", ParamPoly]
Table = Mapping[tuple["GeneratorId", "GeneratorId"], TableEntry]


class OutOfWindowError(LookupError):
    """A needed bracket's target grade is missing from the window."""

    def __init__(self, left: "GeneratorId", right: "GeneratorId"):
        super().__init__(f"bracket ({left.name}, {right.name}) lands at grade "
                         f"{left.grade + right.grade}, outside the window")
        self.left = left
        self.right = right


class OutOfWindowTripleError(LookupError):
    """A Jacobi triple cannot be decided at this truncation."""

    def __init__(self, triple: tuple["GeneratorId", ...]):
        names = ", ".join(g.name for g in triple)
        super().__init__(f"triple ({names}) is undecidable in this window")
        self.triple = triple


class NotAffineError(ValueError):
    """The grade-0 action on some grade is not of the form c*(d + a*x + b)."""

    def __init__(self, grade: int, poly: ParamPoly):
        super().__init__(f"action on grade {grade} is not affine: {poly}")
        self.grade = grade
        self.poly = poly


class ZeroActionError(ValueError):
    """The grade-0 generator acts by zero on some grade (ideal obstruction)."""

    def __init__(self, grade: int):
        super().__init__(f"grade-0 generator acts by zero on grade {grade}")
        self.grade = grade


@dataclass(frozen=True, order=True)
class GeneratorId:
    """A free generator: its grade and a name unique within the algebra."""

    grade: int
    name: str

    def __str__(self) -> str:
        return self.name


def _validate_coeffs(coeffs: Mapping[GeneratorId, ParamPoly],
                     allowed: tuple[str, ...], what: str
                     ) -> dict[GeneratorId, ParamPoly]:
    out: dict[GeneratorId, ParamPoly] = {}
    for gen, poly in coeffs.items():
        poly = as_poly(poly)
        bad = [v for v in poly.variables()
               if v in (DEL, LAM, MU) and v not in allowed]
        if bad:
            raise ValueError(f"{what} coefficient on {gen.name} uses {bad}")
        if poly:
            out[gen] = poly
    return out


@dataclass(frozen=True)
class Element:
    """A finite sum  sum_u f_u(d) u  with polynomial coefficients in d."""

    coeffs: Mapping[GeneratorId, ParamPoly]

    def __init__(self, coeffs: Mapping[GeneratorId, ParamPoly]):
        object.__setattr__(self, "coeffs",
                           _validate_coeffs(coeffs, (DEL,), "element"))

    @classmethod
    def generator(cls, gen: GeneratorId) -> "Element":
        return cls({gen: as_poly(1)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Element) and dict(self.coeffs) == dict(other.coeffs)


@dataclass(frozen=True)
class LambdaElement:
    """A bracket value: coefficients are polynomials in d and x."""

    coeffs: Mapping[GeneratorId, ParamPoly]

    def __init__(self, coeffs: Mapping[GeneratorId, ParamPoly]):
        object.__setattr__(self, "coeffs",
                           _validate_coeffs(coeffs, (DEL, LAM), "bracket"))

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, gen: GeneratorId) -> ParamPoly:
        return self.coeffs.get(gen, ParamPoly.zero())

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, LambdaElement)
                and dict(self.coeffs) == dict(other.coeffs))


class ConformalAlgebra:
    """Immutable structure-table model of a Z-graded Lie conformal algebra."""

    def __init__(self, generators: Iterable[GeneratorId], table: Table,
                 window: Iterable[int], params: Iterable[str] = ()):
        gens = tuple(sorted(generators))
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        win = frozenset(window)
        for g in gens:
            if g.grade not in win:
                raise ValueError(f"generator {g.name} has grade {g.grade} "
                                 f"outside the window")
        known = set(gens)
        clean: dict[tuple[GeneratorId, GeneratorId], dict[GeneratorId, ParamPoly]] = {}
        param_set = set(params)
        for (u, v), entry in dict(table).items():
            if u not in known or v not in known:
                raise ValueError(f"table entry ({u.name}, {v.name}) uses an "
                                 f"undeclared generator")
            cleaned: dict[GeneratorId, ParamPoly] = {}
            for w, poly in dict(entry).items():
                poly = as_poly(poly)
                if poly.is_zero():
                    continue
                if w not in known:
                    raise ValueError(f"bracket target {w.name} is undeclared")
                if w.grade != u.grade + v.grade:
                    raise ValueError(
                        f"bracket ({u.name}, {v.name}) targets {w.name} of "
                        f"grade {w.grade}, expected {u.grade + v.grade}")
                if MU in poly.variables():
                    raise ValueError("structure polynomials may not use y")
                param_set |= poly.params()
                cleaned[w] = poly
            if cleaned:
                clean[(u, v)] = cleaned
        self.generators = gens
        self.window = win
        self.params = frozenset(param_set)
        self._table = clean
        self._by_grade: dict[int, tuple[GeneratorId, ...]] = {}
        for g in gens:
            self._by_grade.setdefault(g.grade, ())
            self._by_grade[g.grade] += (g,)

    # -- lookup -------------------------------------------------------------

    def generators_of_grade(self, grade: int) -> tuple[GeneratorId, ...]:
        return self._by_grade.get(grade, ())

    def one_generator_per_grade(self) -> bool:
        return all(len(self._by_grade.get(i, ())) == 1 for i in self.window)

    def single_generator(self, grade: int) -> GeneratorId:
        gens = self.generators_of_grade(grade)
        if len(gens) != 1:
            raise ValueError(f"grade {grade} has {len(gens)} generators, "
                             f"expected exactly one")
        return gens[0]

    def structure(self, left: GeneratorId, right: GeneratorId
                  ) -> dict[GeneratorId, ParamPoly]:
        """Table entry for a generator pair; {} means the zero bracket."""
        if left.grade + right.grade not in self.window:
            raise OutOfWindowError(left, right)
        return dict(self._table.get((left, right), {}))

    def table_items(self) -> Iterator[tuple[GeneratorId, GeneratorId,
                                            GeneratorId, ParamPoly]]:
        """All nonzero table entries, canonically ordered."""
        for (u, v) in sorted(self._table):
            entry = self._table[(u, v)]
            for w in sorted(entry):
                yield u, v, w, entry[w]

    def instantiate(self, bindings: Mapping[str, Scalar]) -> "ConformalAlgebra":
        """Bind parameters to rationals throughout the structure table."""
        table = {pair: {w: poly.instantiate(bindings)
                        for w, poly in entry.items()}
                 for pair, entry in self._table.items()}
        remaining = self.params - set(bindings)
        return ConformalAlgebra(self.generators, table, self.window, remaining)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, ConformalAlgebra)
                and self.generators == other.generators
                and self.window == other.window
                and self._table == other._table)


# -- bracket evaluation ------------------------------------------------------

def bracket(alg: ConformalAlgebra, a: Element, b: Element) -> LambdaElement:
    """Bilinear extension of the structure table by sesquilinearity."""
    acc: dict[GeneratorId, ParamPoly] = {}
    minus_x = -ParamPoly.variable(LAM)
    shift = ParamPoly.variable(DEL) + ParamPoly.variable(LAM)
    for u, f in a.coeffs.items():
        f_left = f.substitute(DEL, minus_x)
        for v, g in b.coeffs.items():
            g_right = g.substitute(DEL, shift)
            scale = f_left * g_right
            for w, poly in alg.structure(u, v).items():
                acc[w] = acc.get(w, ParamPoly.zero()) + scale * poly
    return LambdaElement(acc)


# -- axiom checks -------------------------------------------------------------

@dataclass(frozen=True)
class SkewViolation:
    left: GeneratorId
    right: GeneratorId
    target: GeneratorId
    residual: ParamPoly


@dataclass(frozen=True)
class SkewReport:
    checked: int
    skipped: int
    violations: tuple[SkewViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_skew(alg: ConformalAlgebra) -> SkewReport:
    """Skew-symmetry in coefficients: p_{u,v}(d, x) + p_{v,u}(d, -d-x) = 0."""
    flip = -(ParamPoly.variable(DEL) + ParamPoly.variable(LAM))
    checked = skipped = 0
    violations: list[SkewViolation] = []
    gens = alg.generators
    for i, u in enumerate(gens):
        for v in gens[i:]:
            if u.grade + v.grade not in alg.window:
                skipped += 1
                continue
            checked += 1
            forward = alg.structure(u, v)
            backward = alg.structure(v, u)
            for w in sorted(set(forward) | set(backward)):
                residual = (forward.get(w, ParamPoly.zero())
                            + backward.get(w, ParamPoly.zero())
                            .substitute(LAM, flip))
                if residual:
                    violations.append(SkewViolation(u, v, w, residual))
    return SkewReport(checked, skipped, tuple(violations))


def jacobi_residual(alg: ConformalAlgebra, u: GeneratorId, v: GeneratorId,
                    w: GeneratorId) -> dict[GeneratorId, ParamPoly]:
    """Defect of the Jacobi identity on one generator triple.

    Expanding [u_x [v_y w]] - [[u_x v]_{x+y} c] - [v_y [u_x w]] over the
    structure table gives, per target generator r,

        sum_t p^t_{v,w}(d+x, y) p^r_{u,t}(d, x)
      - sum_t p^t_{u,v}(-x-y, x) p^r_{t,w}(d, x+y)
      - sum_t p^t_{u,w}(d+y, x) p^r_{v,t}(d, y)

    An all-zero map means the identity holds on this triple.  Raises
    OutOfWindowTripleError when an inner bracket's grade is missing, or when
    some inner bracket is nonzero and the total grade is missing.
    """
    d_ = ParamPoly.variable(DEL)
    x_ = ParamPoly.variable(LAM)
    y_ = ParamPoly.variable(MU)
    acc: dict[GeneratorId, ParamPoly] = {}

    def accumulate(first: GeneratorId, second: GeneratorId, inner_sub,
                   outer_pair, outer_sub, sign: int) -> None:
        try:
            inner = alg.structure(first, second)
        except OutOfWindowError:
            raise OutOfWindowTripleError((u, v, w)) from None
        for t, inner_poly in inner.items():
            try:
                outer = alg.structure(*outer_pair(t))
            except OutOfWindowError:
                raise OutOfWindowTripleError((u, v, w)) from None
            left = inner_sub(inner_poly)
            for r, outer_poly in outer.items():
                contrib = sign * left * outer_sub(outer_poly)
                acc[r] = acc.get(r, ParamPoly.zero()) + contrib

    # [u_x [v_y w]]: inner polynomial evaluated at (d+x, y).
    accumulate(v, w,
               lambda p: p.substitute(LAM, y_).substitute(DEL, d_ + x_),
               lambda t: (u, t), lambda p: p, +1)
    # [[u_x v]_{x+y} w]: inner coefficient at (-x-y, x), outer at (d, x+y).
    accumulate(u, v,
               lambda p: p.substitute(DEL, -x_ - y_),
               lambda t: (t, w), lambda p: p.substitute(LAM, x_ + y_), -1)
    # [v_y [u_x w]]: inner polynomial at (d+y, x), outer at (d, y).
    accumulate(u, w,
               lambda p: p.substitute(DEL, d_ + y_),
               lambda t: (v, t), lambda p: p.substitute(LAM, y_), -1)
    return {r: poly for r, poly in acc.items() if poly}


@dataclass(frozen=True)
class JacobiViolation:
    triple: tuple[GeneratorId, GeneratorId, GeneratorId]
    target: GeneratorId
    residual: ParamPoly


@dataclass(frozen=True)
class JacobiReport:
    checked: int
    skipped: int
    violations: tuple[JacobiViolation, ...]
    skew_ok: bool

    @property
    def ok(self) -> bool:
        return not self.violations


def check_jacobi(alg: ConformalAlgebra) -> JacobiReport:
    """Jacobi identity over all decidable triples.

    When skew-symmetry holds, ordered triples u <= v <= w suffice; a broken
    skew check forfeits that reduction, so all ordered triples are scanned
    instead (the algebra is then never certified on the cheap path).
    """
    skew_ok = check_skew(alg).ok
    gens = alg.generators
    if skew_ok:
        triples: Iterable[tuple[GeneratorId, GeneratorId, GeneratorId]] = (
            (gens[i], gens[j], gens[k])
            for i in range(len(gens))
            for j in range(i, len(gens))
            for k in range(j, len(gens)))
    else:
        triples = ((a, b, c) for a in gens for b in gens for c in gens)
    checked = skipped = 0
    violations: list[JacobiViolation] = []
    for (a, b, c) in triples:
        try:
            residual = jacobi_residual(alg, a, b, c)
        except OutOfWindowTripleError:
            skipped += 1
            continue
        checked += 1
        for target in sorted(residual):
            violations.append(JacobiViolation((a, b, c), target,
                                              residual[target]))
    return JacobiReport(checked, skipped, tuple(violations), skew_ok)


# -- structure diagnostics -----------------------------------------------------

@dataclass(frozen=True)
class SpectralLine:
    """The grade-0 action on one grade: p = scale * (d + weight*x + shift)."""

    scale: ParamPoly
    weight: Fraction
    shift: Fraction


@dataclass(frozen=True)
class SpectralData:
    lines: Mapping[int, SpectralLine]
    uniform_scale: bool
    bindings: Mapping[str, Fraction]


def spectral_data(alg: ConformalAlgebra,
                  bindings: Mapping[str, Scalar] = ()) -> SpectralData:
    """Read (scale, weight, shift) off the grade-0 action on every grade.

    Requires exactly one generator per grade.  Raises ZeroActionError when the
    action on some grade vanishes (that grade spans a proper ideal), and
    NotAffineError when the action is not scale*(d + weight*x + shift) with
    rational weight and shift after binding.
    """
    if not alg.one_generator_per_grade():
        raise ValueError("spectral data requires exactly one generator per grade")
    bindings = dict(bindings)
    zero = alg.single_generator(0)
    d_mono: Mono = ((DEL, 1),)
    x_mono: Mono = ((LAM, 1),)
    lines: dict[int, SpectralLine] = {}
    for grade in sorted(alg.window):
        gen = alg.single_generator(grade)
        entry = alg.structure(zero, gen)
        poly = entry.get(gen, ParamPoly.zero()).instantiate(bindings)
        if poly.is_zero():
            raise ZeroActionError(grade)
        parts = poly.formal_coefficients()
        if set(parts) - {(), d_mono, x_mono}:
            raise NotAffineError(grade, poly)
        scale = parts.get(d_mono, ParamPoly.zero())
        if scale.is_zero():
            raise NotAffineError(grade, poly)
        try:
            weight = parts.get(x_mono, ParamPoly.zero()).exact_divide(scale)
            shift = parts.get((), ParamPoly.zero()).exact_divide(scale)
            lines[grade] = SpectralLine(scale, weight.as_fraction(),
                                        shift.as_fraction())
        except (ArithmeticError, ValueError):
            raise NotAffineError(grade, poly) from None
    scales = {line.scale for line in lines.values()}
    return SpectralData(lines, len(scales) <= 1,
                        {k: Fraction(v) for k, v in bindings.items()})


@dataclass(frozen=True)
class DegreeRelationViolation:
    left_grade: int
    right_grade: int
    relation: str
    detail: str


def degree_relation_check(alg: ConformalAlgebra, spectral: SpectralData
                          ) -> list[DegreeRelationViolation]:
    """Check the weight/shift bookkeeping of nonzero structure polynomials.

    For every pair of grades (i, j) with a nonzero bracket landing in the
    window, the weights must satisfy
        weight_i + weight_j = weight_{i+j} + deg p_{i,j} + 1
    and the shifts must be additive: shift_i + shift_j = shift_{i+j}.
    """
    if not alg.one_generator_per_grade():
        raise ValueError("degree relations require exactly one generator per grade")
    bindings = spectral.bindings
    violations: list[DegreeRelationViolation] = []
    grades = sorted(alg.window)
    for i in grades:
        for j in grades:
            if i + j not in alg.window:
                continue
            u = alg.single_generator(i)
            v = alg.single_generator(j)
            target = alg.single_generator(i + j)
            poly = alg.structure(u, v).get(target, ParamPoly.zero())
            poly = poly.instantiate(bindings)
            if poly.is_zero():
                continue
            deg = poly.formal_degree()
            li, lj, lt = spectral.lines[i], spectral.lines[j], spectral.lines[i + j]
            if li.weight + lj.weight != lt.weight + deg + 1:
                violations.append(DegreeRelationViolation(
                    i, j, "weight",
                    f"{li.weight} + {lj.weight} != {lt.weight} + {deg} + 1"))
            if li.shift + lj.shift != lt.shift:
                violations.append(DegreeRelationViolation(
                    i, j, "shift",
                    f"{li.shift} + {lj.shift} != {lt.shift}"))
    return violations


@dataclass(frozen=True)
class SupportClassification:
    """Positive grades k with nonzero p_{k,-k}, split by its degree."""

    degree0: frozenset[int]
    degree1: frozenset[int]
    degree2: frozenset[int]
    unclassified: frozenset[int]


def classify_support(alg: ConformalAlgebra,
                     bindings: Mapping[str, Scalar] = ()) -> SupportClassification:
    """Classify each positive grade k by the degree of p_{k,-k}.

    A grade whose opposite is missing from the window, or whose pairing
    polynomial has degree above 2, lands in ``unclassified``.
    """
    if not alg.one_generator_per_grade():
        raise ValueError("support classification requires one generator per grade")
    alg.single_generator(0)
    bindings = dict(bindings)
    buckets: dict[int, set[int]] = {0: set(), 1: set(), 2: set()}
    unclassified: set[int] = set()
    for k in sorted(g for g in alg.window if g > 0):
        if -k not in alg.window:
            unclassified.add(k)
            continue
        u = alg.single_generator(k)
        v = alg.single_generator(-k)
        poly = alg.structure(u, v).get(alg.single_generator(0),
                                       ParamPoly.zero()).instantiate(bindings)
        if poly.is_zero():
            continue
        deg = poly.formal_degree()
        if deg in buckets:
            buckets[deg].add(k)
        else:
            unclassified.add(k)
    return SupportClassification(frozenset(buckets[0]), frozenset(buckets[1]),
                                 frozenset(buckets[2]), frozenset(unclassified))
