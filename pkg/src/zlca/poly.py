"""Exact sparse polynomial arithmetic over Q in formal variables and parameters.

A polynomial lives in Q[d, x, y, s, t, ...] where `d`, `x`, `y` are the three
*formal* variables of the lambda-bracket calculus (the module operator and the
two bracket parameters) and every other lowercase identifier is a free
*parameter* (weight zero).  The representation is a dict mapping monomials to
``fractions.Fraction`` coefficients with no zero entries stored, so two
polynomials are equal exactly when their dicts are equal: the dict *is* the
canonical normal form.

A monomial is a tuple of ``(variable, exponent)`` pairs, sorted by the
canonical variable precedence

    d > x > y > parameters alphabetically

with no zero exponents.  The canonical monomial order is graded lexicographic:
first by *formal* degree (parameters do not count), then lexicographically by
exponents along the precedence above.  The same order drives printing, leading
terms, and exact division.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

DEL = "d"  # the module operator acting on generators
LAM = "x"  # the bracket parameter
MU = "y"   # the auxiliary bracket parameter (nested brackets)
FORMAL_VARS = (DEL, LAM, MU)

#: Formal degree of the zero polynomial.
MINUS_INFINITY = float("-inf")

Mono = tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction]
Coefficient = Union[int, Fraction, "ParamPoly"]

ONE_MONO: Mono = ()

_FORMAL_RANK = {DEL: (0, ""), LAM: (1, ""), MU: (2, "")}
# Sentinel ranking above every real variable; makes a monomial that is a
# proper "prefix" of another sort after it (the longer one has the larger
# exponent at the first extra variable).
_END = ((3, "\x7f"), 0)


class SubstituteParamError(ValueError):
    """Raised when substitute() targets a parameter instead of d, x or y."""


class ZeroPolynomialError(ValueError):
    """Raised when an operation needs a nonzero polynomial."""


class NotDivisibleError(ArithmeticError):
    """Raised by exact_divide when no exact quotient exists."""

    def __init__(self, dividend: "ParamPoly", divisor: "ParamPoly",
                 remainder: "ParamPoly"):
        super().__init__(f"({dividend}) is not divisible by ({divisor}); "
                         f"remainder {remainder}")
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder


def _var_rank(var: str) -> tuple[int, str]:
    return _FORMAL_RANK.get(var, (3, var))


def mono_formal_degree(mono: Mono) -> int:
    return sum(e for v, e in mono if v in _FORMAL_RANK)


def mono_total_degree(mono: Mono) -> int:
    return sum(e for _, e in mono)


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    exps: dict[str, int] = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda it: _var_rank(it[0])))


def mono_divides(a: Mono, b: Mono) -> bool:
    """True when monomial a divides monomial b."""
    be = dict(b)
    return all(be.get(v, 0) >= e for v, e in a)


def mono_div(b: Mono, a: Mono) -> Mono:
    """The quotient monomial b / a; caller guarantees divisibility."""
    exps = dict(b)
    for v, e in a:
        exps[v] -= e
    return tuple(sorted(((v, e) for v, e in exps.items() if e),
                        key=lambda it: _var_rank(it[0])))


def mono_sort_key(mono: Mono):
    """Sort key putting the canonically largest monomial first.

    ``sorted(monos, key=mono_sort_key)`` lists monomials in decreasing
    canonical (graded lexicographic) order.
    """
    return (-mono_formal_degree(mono),
            tuple((_var_rank(v), -e) for v, e in mono) + (_END,))


def _mono_str(mono: Mono) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)


class ParamPoly:
    """Immutable multivariate polynomial over Q in normal form."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Mono, Scalar] = ()):
        cleaned: dict[Mono, Fraction] = {}
        for mono, coef in dict(terms).items():
            c = Fraction(coef)
            if c:
                cleaned[mono] = c
        object.__setattr__(self, "_terms", cleaned)

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls) -> "ParamPoly":
        return _ZERO

    @classmethod
    def const(cls, value: Scalar) -> "ParamPoly":
        return cls({ONE_MONO: Fraction(value)})

    @classmethod
    def variable(cls, name: str) -> "ParamPoly":
        if name in _FORMAL_RANK:
            return cls({((name, 1),): Fraction(1)})
        if not name or not (name[0].isalpha() and name[0].islower()) \
                or not all(ch.islower() or ch.isdigit() or ch == "_"
                           for ch in name):
            raise ValueError(f"invalid variable name {name!r}")
        return cls({((name, 1),): Fraction(1)})

    def _wrap(self, terms: dict[Mono, Fraction]) -> "ParamPoly":
        poly = ParamPoly.__new__(ParamPoly)
        object.__setattr__(poly, "_terms", {m: c for m, c in terms.items() if c})
        return poly

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        """True when the polynomial involves no variable at all."""
        return not self._terms or self._terms.keys() == {ONE_MONO}

    def is_formal_constant(self) -> bool:
        """True when no formal variable (d, x, y) occurs."""
        return all(mono_formal_degree(m) == 0 for m in self._terms)

    def as_fraction(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        return self._terms[ONE_MONO]

    def variables(self) -> frozenset[str]:
        return frozenset(v for m in self._terms for v, _ in m)

    def params(self) -> frozenset[str]:
        return frozenset(v for v in self.variables() if v not in _FORMAL_RANK)

    def terms(self) -> Iterator[tuple[Mono, Fraction]]:
        """Terms in decreasing canonical order."""
        for mono in sorted(self._terms, key=mono_sort_key):
            yield mono, self._terms[mono]

    def coefficient(self, mono: Mono) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ParamPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == ParamPoly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(value: Coefficient) -> "ParamPoly":
        if isinstance(value, ParamPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return ParamPoly.const(value)
        raise TypeError(f"cannot treat {value!r} as a polynomial")

    def __add__(self, other: Coefficient) -> "ParamPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for mono, coef in other._terms.items():
            out[mono] = out.get(mono, Fraction(0)) + coef
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return self._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Coefficient) -> "ParamPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Coefficient) -> "ParamPoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other: Coefficient) -> "ParamPoly":
        other = self._coerce(other)
        if not self._terms or not other._terms:
            return _ZERO
        out: dict[Mono, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = mono_mul(m1, m2)
                out[mono] = out.get(mono, Fraction(0)) + c1 * c2
        return self._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ParamPoly":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = ParamPoly.const(1)
        for _ in range(exponent):
            result = result * self
        return result

    # -- structure ---------------------------------------------------------

    def formal_degree(self) -> Union[int, float]:
        """Max total degree in d, x, y; MINUS_INFINITY for the zero poly."""
        if not self._terms:
            return MINUS_INFINITY
        return max(mono_formal_degree(m) for m in self._terms)

    def leading_homogeneous(self) -> "ParamPoly":
        """The sum of terms of maximal formal degree."""
        if not self._terms:
            raise ZeroPolynomialError("zero polynomial has no leading part")
        top = self.formal_degree()
        return self._wrap({m: c for m, c in self._terms.items()
                           if mono_formal_degree(m) == top})

    def leading_monomial(self) -> Mono:
        if not self._terms:
            raise ZeroPolynomialError("zero polynomial has no leading monomial")
        return min(self._terms, key=mono_sort_key)

    def leading_coefficient(self) -> Fraction:
        return self._terms[self.leading_monomial()]

    def monic(self) -> "ParamPoly":
        """Rescale so the canonical leading coefficient is 1."""
        if not self._terms:
            return self
        lc = self.leading_coefficient()
        return self._wrap({m: c / lc for m, c in self._terms.items()})

    def degree_in(self, var: str) -> int:
        """Max exponent of one variable; -1 on the zero polynomial."""
        if not self._terms:
            return -1
        return max((dict(m).get(var, 0) for m in self._terms), default=0)

    def coefficients_in(self, var: str) -> dict[int, "ParamPoly"]:
        """Split as a polynomial in one variable: exponent -> coefficient."""
        buckets: dict[int, dict[Mono, Fraction]] = {}
        for mono, coef in self._terms.items():
            exps = dict(mono)
            e = exps.pop(var, 0)
            rest = tuple(sorted(exps.items(), key=lambda it: _var_rank(it[0])))
            buckets.setdefault(e, {})[rest] = coef
        return {e: self._wrap(terms) for e, terms in buckets.items()}

    def formal_coefficients(self) -> dict[Mono, "ParamPoly"]:
        """Group terms by their formal-variable part.

        Returns a map from pure {d,x,y} monomials to coefficients in the
        parameters alone.
        """
        buckets: dict[Mono, dict[Mono, Fraction]] = {}
        for mono, coef in self._terms.items():
            formal = tuple((v, e) for v, e in mono if v in _FORMAL_RANK)
            rest = tuple((v, e) for v, e in mono if v not in _FORMAL_RANK)
            buckets.setdefault(formal, {})[rest] = coef
        return {f: self._wrap(terms) for f, terms in buckets.items()}

    # -- substitution ------------------------------------------------------

    def substitute(self, var: str, replacement: "ParamPoly") -> "ParamPoly":
        """Replace every occurrence of a formal variable, renormalizing.

        Only d, x, y may be substituted; parameters are bound through
        instantiate() instead.
        """
        if var not in _FORMAL_RANK:
            raise SubstituteParamError(
                f"cannot substitute parameter {var!r}; use instantiate()")
        replacement = self._coerce(replacement)
        out = _ZERO
        powers: dict[int, ParamPoly] = {0: ParamPoly.const(1)}
        for mono, coef in self._terms.items():
            exps = dict(mono)
            e = exps.pop(var, 0)
            if e not in powers:
                powers[e] = replacement ** e
            rest = tuple(sorted(exps.items(), key=lambda it: _var_rank(it[0])))
            out = out + self._wrap({rest: coef}) * powers[e]
        return out

    def instantiate(self, bindings: Mapping[str, Scalar]) -> "ParamPoly":
        """Bind parameters to rational values; unbound parameters remain."""
        for name in bindings:
            if name in _FORMAL_RANK:
                raise SubstituteParamError(
                    f"{name!r} is a formal variable, not a parameter")
        if not bindings:
            return self
        out: dict[Mono, Fraction] = {}
        for mono, coef in self._terms.items():
            value = coef
            kept: list[tuple[str, int]] = []
            for v, e in mono:
                if v in bindings:
                    value *= Fraction(bindings[v]) ** e
                else:
                    kept.append((v, e))
            rest = tuple(kept)
            out[rest] = out.get(rest, Fraction(0)) + value
        return self._wrap(out)

    # -- division ----------------------------------------------------------

    def exact_divide(self, divisor: "ParamPoly") -> "ParamPoly":
        """Exact quotient self / divisor under the canonical monomial order.

        Raises NotDivisibleError (carrying the division remainder) when no
        exact quotient exists; raises ZeroPolynomialError on a zero divisor.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroPolynomialError("division by the zero polynomial")
        quotient: dict[Mono, Fraction] = {}
        remainder: dict[Mono, Fraction] = {}
        lead_mono = divisor.leading_monomial()
        lead_coef = divisor.leading_coefficient()
        rest = self
        while rest._terms:
            mono = rest.leading_monomial()
            coef = rest._terms[mono]
            if mono_divides(lead_mono, mono):
                t_mono = mono_div(mono, lead_mono)
                t_coef = coef / lead_coef
                quotient[t_mono] = quotient.get(t_mono, Fraction(0)) + t_coef
                rest = rest - self._wrap({t_mono: t_coef}) * divisor
            else:
                remainder[mono] = coef
                rest = rest - self._wrap({mono: coef})
        if remainder:
            raise NotDivisibleError(self, divisor, self._wrap(remainder))
        return self._wrap(quotient)

    def divides(self, other: "ParamPoly") -> bool:
        try:
            other.exact_divide(self)
            return True
        except NotDivisibleError:
            return False

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks: list[str] = []
        for mono, coef in self.terms():
            mag = abs(coef)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = _mono_str(mono)
            else:
                body = f"{mag}*{_mono_str(mono)}"
            if not chunks:
                chunks.append(f"-{body}" if coef < 0 else body)
            else:
                chunks.append(f"- {body}" if coef < 0 else f"+ {body}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"ParamPoly({self})"


_ZERO = ParamPoly()

#: The three formal variables as polynomials, for building tables in code.
D = ParamPoly.variable(DEL)
X = ParamPoly.variable(LAM)
Y = ParamPoly.variable(MU)


def param(name: str) -> ParamPoly:
    """The named parameter as a polynomial."""
    if name in _FORMAL_RANK:
        raise ValueError(f"{name!r} is a formal variable, not a parameter")
    return ParamPoly.variable(name)


def const(value: Scalar) -> ParamPoly:
    return ParamPoly.const(value)


def as_poly(value: Coefficient) -> ParamPoly:
    return ParamPoly._coerce(value)


def poly_sum(items: Iterable[Coefficient]) -> ParamPoly:
    total = _ZERO
    for item in items:
        total = total + as_poly(item)
    return total
