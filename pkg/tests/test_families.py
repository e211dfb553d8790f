"""Family constructors: formulas, axioms, and the SCL2 oracle equivalence."""

from fractions import Fraction

import pytest

from zlca import families
from zlca.conformal import (check_jacobi, check_skew, classify_support,
                            spectral_data)
from zlca.families import NotALieAlgebraError
from zlca.poly import D, X, ParamPoly, const, param

S = param("s")
B = param("b")

SL2 = {
    ("h", "e"): {"e": 2}, ("e", "h"): {"e": -2},
    ("h", "f"): {"f": -2}, ("f", "h"): {"f": 2},
    ("e", "f"): {"h": 1}, ("f", "e"): {"h": -1},
}


def entry(alg, i, j):
    u = alg.single_generator(i)
    v = alg.single_generator(j)
    return alg.structure(u, v).get(alg.single_generator(i + j),
                                   ParamPoly.zero())


# -- Vir and Cur -----------------------------------------------------------------

def test_vir_axioms_and_spectral():
    vir = families.make_vir()
    assert check_skew(vir).ok
    assert check_jacobi(vir).ok
    line = spectral_data(vir).lines[0]
    assert (line.scale, line.weight, line.shift) == (const(1), 2, 0)
    support = classify_support(vir)
    assert not (support.degree0 | support.degree1 | support.degree2)


def test_current_sl2():
    alg = families.make_current(["e", "f", "h"], SL2)
    assert check_skew(alg).ok
    assert check_jacobi(alg).ok


def test_current_abelian_zero_table():
    alg = families.make_current(["a", "b"], {})
    assert list(alg.table_items()) == []
    assert check_jacobi(alg).ok


def test_current_rejects_non_lie_constants():
    with pytest.raises(NotALieAlgebraError):
        families.make_current(["p", "q"], {("p", "q"): {"p": 1},
                                           ("q", "p"): {"p": 1}})


# -- V(s) -------------------------------------------------------------------------

def test_v_at_s0_is_uniform():
    alg = families.make_v(0, range(-3, 4))
    for i in range(-3, 4):
        for j in range(-3, 4):
            if i + j in alg.window:
                assert entry(alg, i, j) == D + 2 * X


def test_v_symbolic_axioms():
    alg = families.make_v("s", range(-4, 5))
    assert check_skew(alg).ok
    assert check_jacobi(alg).ok


def test_v_spectral():
    alg = families.make_v("s", range(-3, 4))
    data = spectral_data(alg, {"s": 1})
    for j in range(-3, 4):
        assert data.lines[j].weight == 2
        assert data.lines[j].shift == -j
    assert data.uniform_scale


# -- CL1 and CL2 --------------------------------------------------------------------

def test_cl1_formula_and_truncation():
    alg = families.make_cl1("s", 5)
    assert entry(alg, 2, 1) == 3 * D + 5 * X - S
    bottom = alg.single_generator(-1)
    import zlca.conformal as conformal
    with pytest.raises(conformal.OutOfWindowError):
        alg.structure(bottom, bottom)
    assert check_skew(alg).ok
    assert check_jacobi(alg).ok


def test_cl2_formula():
    alg = families.make_cl2(Fraction(1, 2), 0, range(-2, 3))
    assert entry(alg, 0, 0) == Fraction(1, 2) * (D + 2 * X)
    sym = families.make_cl2("b", "s", range(-2, 3))
    assert entry(sym, 1, -1) == (1 + B) * D + 2 * B * X + 2 * S


def test_cl2_spectral():
    alg = families.make_cl2("b", "s", range(-3, 4))
    data = spectral_data(alg, {"b": 1, "s": 1})
    for j in range(-3, 4):
        assert data.lines[j].scale == const(1)
        assert data.lines[j].weight == j + 2
        assert data.lines[j].shift == -j


# -- SCL2: oracle construction ----------------------------------------------------------

def test_scl2_bracket_examples_b1():
    alg = families.make_scl2(Fraction(1), "s", range(-6, 7))
    m = alg.single_generator(-2)
    assert m.name == "M"
    zero = alg.single_generator(0)
    one = alg.single_generator(1)
    assert alg.structure(zero, m)[m] == D + X + 2 * S
    assert (alg.structure(one, m)[alg.single_generator(-1)]
            == (D + X + 2 * S) * (2 * D + X + 3 * S))
    minus3 = alg.single_generator(-3)
    assert alg.structure(one, minus3)[m] == const(2)


def test_scl2_literal_entries():
    alg = families.make_scl2_literal(Fraction(1), "s", range(-6, 7))
    m = alg.single_generator(-2)
    zero = alg.single_generator(0)
    assert alg.structure(zero, m)[m] == D + X + 2 * S
    low = alg.single_generator(-4)
    assert (alg.structure(m, m)[low]
            == -(-X + 2 * S) * (D + X + 2 * S) * (D + 2 * X))


def test_scl2_literal_half():
    alg = families.make_scl2_literal(Fraction(1, 2), "s", range(-6, 7))
    m = alg.single_generator(-1)
    one = alg.single_generator(1)
    minus2 = alg.single_generator(-2)
    assert alg.structure(one, minus2)[m] == const(Fraction(3, 2))


@pytest.mark.parametrize("b", [Fraction(1, 2), Fraction(1), Fraction(3, 2),
                               Fraction(-1)])
def test_scl2_oracle_equals_literal(b):
    oracle = families.make_scl2(b, "s", range(-6, 7))
    literal = families.make_scl2_literal(b, "s", range(-6, 7))
    assert oracle == literal


def test_scl2_window_validation():
    with pytest.raises(ValueError):
        families.make_scl2(Fraction(1), "s", range(-3, 3))  # misses -4
    with pytest.raises(ValueError):
        families.make_scl2(Fraction(1, 3), "s", range(-6, 7))  # 2b not integral
    with pytest.raises(ValueError):
        families.make_scl2(Fraction(0), "s", range(-6, 7))


# -- family-wide invariants ---------------------------------------------------------------

def all_families():
    return [
        ("Vir", families.make_vir()),
        ("V", families.make_v("s", range(-4, 5))),
        ("CL1", families.make_cl1("s", 4)),
        ("CL2", families.make_cl2("b", "s", range(-4, 5))),
        ("SCL2", families.make_scl2(Fraction(1), "s", range(-4, 5))),
    ]


@pytest.mark.parametrize("name,alg", all_families())
def test_family_axioms(name, alg):
    assert check_skew(alg).ok
    assert check_jacobi(alg).ok


@pytest.mark.parametrize("name,alg", all_families())
def test_family_grade0_action_nowhere_zero(name, alg):
    zero = alg.single_generator(0)
    for grade in sorted(alg.window):
        gen = alg.single_generator(grade)
        assert alg.structure(zero, gen).get(gen), (name, grade)


@pytest.mark.parametrize("name,alg,bindings", [
    ("Vir", families.make_vir(), {}),
    ("V", families.make_v("s", range(-3, 4)), {"s": Fraction(2)}),
    ("CL1", families.make_cl1("s", 4), {"s": Fraction(1, 2)}),
    ("CL2", families.make_cl2("b", "s", range(-3, 4)),
     {"b": Fraction(1, 3), "s": Fraction(1)}),
    ("SCL2", families.make_scl2(Fraction(1), "s", range(-4, 5)),
     {"s": Fraction(1)}),
])
def test_family_uniform_scale(name, alg, bindings):
    assert spectral_data(alg, bindings).uniform_scale


def test_scl2_support_matches_pairing_bound():
    # exactly one positive grade pairs with degree 0 or 2 against its opposite
    for b in (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(-1)):
        alg = families.make_scl2(b, "s", range(-6, 7))
        support = classify_support(alg, {"s": 1})
        special = support.degree0 | support.degree2
        assert special == {abs(int(2 * b))}


def test_make_family_dispatch():
    spec = families.FamilySpec(kind="V", s=Fraction(0), window=(-2, 2))
    alg = families.make_family(spec)
    assert entry(alg, 0, 0) == D + 2 * X
    with pytest.raises(ValueError):
        families.make_family(families.FamilySpec(kind="SCL2", b="b",
                                                 window=(-6, 6)))
    with pytest.raises(ValueError):
        families.make_family(families.FamilySpec(kind="nope"))
