"""Novikov / Gel'fand-Dorfman structures and the quadratic correspondence."""

import random
from fractions import Fraction

import pytest

from zlca import families, gd
from zlca.conformal import GeneratorId, check_jacobi, check_skew
from zlca.poly import D, X, ParamPoly, const, param

S = param("s")
B = param("b")


def gen_of(structure, name):
    return next(g for g in structure.basis if g.name == name)


# -- constructors ------------------------------------------------------------------

def test_a1_entries():
    nov = gd.make_a1(3)
    two, one, three = (gen_of(nov, n) for n in ("L2", "L1", "L3"))
    assert nov.product(two, one) == {three: const(2)}
    minus = gen_of(nov, "L-1")
    assert nov.product(two, minus) == {gen_of(nov, "L1"): const(0)} or \
        nov.product(two, minus) == {}


def test_a2_entries():
    nov = gd.make_a2("b", range(-2, 3))
    one = gen_of(nov, "L1")
    minus = gen_of(nov, "L-1")
    zero = gen_of(nov, "L0")
    assert nov.product(one, minus) == {zero: B - 1}


def test_a3_entries():
    nov = gd.make_a3("b", range(-1, 2), 2)
    u = gen_of(nov, "L0_1")
    v = gen_of(nov, "L1_1")
    assert nov.product(u, v) == {gen_of(nov, "L1_2"): 1 + B,
                                 gen_of(nov, "L1_1"): const(1)}
    # depth truncation: product needing index 3 is undecidable
    w = gen_of(nov, "L0_2")
    assert nov.product(w, v) is None


# -- law checks --------------------------------------------------------------------

def test_a1_novikov_clean():
    assert gd.check_novikov(gd.make_a1(4)).ok


def test_a2_novikov_clean_symbolic():
    assert gd.check_novikov(gd.make_a2("b", range(-3, 4))).ok


def test_a3_novikov_clean_symbolic():
    assert gd.check_novikov(gd.make_a3("b", range(-1, 2), 3)).ok


def test_novikov_violation_localized():
    nov = gd.make_a1(2)
    zero = gen_of(nov, "L0")
    one = gen_of(nov, "L1")
    table = {pair: nov.entry(*pair) for pair in nov.pairs()}
    table[(zero, zero)] = {zero: const(2)}
    broken = gd.NovikovAlgebra(nov.basis, table)
    report = gd.check_novikov(broken)
    assert not report.ok
    assert any(v.law == "right-commutativity"
               and v.elements == (zero, zero, one) for v in report.violations)


def test_s_bracket_lie_clean():
    nov = gd.make_a2("b", range(-3, 4))
    assert gd.check_lie(gd.s_bracket(nov.basis, "s")).ok


def test_zero_bracket_lie_clean():
    nov = gd.make_a1(3)
    lie = gd.s_bracket(nov.basis, 0)
    assert gd.check_lie(lie).ok


def test_lie_antisymmetry_violation():
    a = GeneratorId(0, "a")
    b = GeneratorId(0, "b")
    good = {(a, b): {a: const(1)}, (b, a): {a: const(-1)},
            (a, a): {}, (b, b): {}}
    assert gd.check_lie(gd.LieStructure([a, b], good)).ok
    bad = dict(good)
    bad[(b, a)] = {a: const(1)}
    report = gd.check_lie(gd.LieStructure([a, b], bad))
    assert any(v.law == "antisymmetry" for v in report.violations)


def test_gd_compatibility_families():
    assert gd.check_gd(gd.gd_a1("s", 4)).ok
    assert gd.check_gd(gd.gd_a2("b", "s", range(-3, 4))).ok


def test_gd_group_algebra_novikov():
    grades = range(-2, 3)
    gens = {i: GeneratorId(i, f"L{i}") for i in grades}
    table = {(gens[i], gens[j]): {gens[i + j]: const(1)}
             for i in grades for j in grades if i + j in gens}
    nov = gd.NovikovAlgebra(gens.values(), table)
    assert gd.check_novikov(nov).ok
    assert gd.check_gd(gd.GDAlgebra(nov, gd.s_bracket(nov.basis, "s"))).ok


# -- the correspondence -----------------------------------------------------------------

def test_quadratic_from_gd_is_cl1():
    assert gd.quadratic_from_gd(gd.gd_a1("s", 4)) == families.make_cl1("s", 4)


def test_quadratic_from_gd_is_cl2_with_negated_s():
    produced = gd.quadratic_from_gd(gd.gd_a2("b", "s", range(-3, 4)))
    assert produced == families.make_cl2("b", -S, range(-3, 4))


def test_quadratic_from_gd_reverified_axioms():
    alg = gd.quadratic_from_gd(gd.gd_a2("b", "s", range(-3, 4)))
    assert check_skew(alg).ok
    assert check_jacobi(alg).ok


def test_zero_gd_gives_zero_brackets():
    a = GeneratorId(0, "a")
    empty = {(a, a): {}}
    g = gd.GDAlgebra(gd.NovikovAlgebra([a], empty), gd.LieStructure([a], empty))
    alg = gd.quadratic_from_gd(g)
    assert list(alg.table_items()) == []


def test_quadratic_from_gd_rejects_broken_input():
    nov = gd.make_a1(2)
    zero = gen_of(nov, "L0")
    table = {pair: nov.entry(*pair) for pair in nov.pairs()}
    table[(zero, zero)] = {zero: const(2)}
    broken = gd.GDAlgebra(gd.NovikovAlgebra(nov.basis, table),
                          gd.s_bracket(nov.basis, "s"))
    with pytest.raises(gd.NotGDError):
        gd.quadratic_from_gd(broken)


def test_gd_from_quadratic_inverts_cl1():
    recovered = gd.gd_from_quadratic(families.make_cl1("s", 4))
    expected = gd.gd_a1("s", 4)
    assert recovered.nov == expected.nov
    assert recovered.lie == expected.lie


def test_gd_from_quadratic_on_vir():
    vir = families.make_vir()
    g = gd.gd_from_quadratic(vir)
    L = vir.generators[0]
    assert g.nov.product(L, L) == {L: const(1)}
    assert g.lie.bracket(L, L) == {}


def test_gd_from_quadratic_rejects_scl2():
    alg = families.make_scl2(Fraction(1), "s", range(-6, 7))
    with pytest.raises(gd.NotQuadraticError) as info:
        gd.gd_from_quadratic(alg)
    assert info.value.poly.formal_degree() >= 2


def test_gd_from_quadratic_star_consistency():
    L = GeneratorId(0, "L")
    from zlca.conformal import ConformalAlgebra
    alg = ConformalAlgebra([L], {(L, L): {L: D + 3 * X}}, {0})
    with pytest.raises(gd.InconsistentStarError):
        gd.gd_from_quadratic(alg)


def test_round_trip_both_ways():
    g = gd.gd_a2("b", "s", range(-2, 3))
    again = gd.gd_from_quadratic(gd.quadratic_from_gd(g))
    assert again.nov == g.nov and again.lie == g.lie

    alg = families.make_cl2(Fraction(1, 2), Fraction(3), range(-2, 3))
    assert gd.quadratic_from_gd(gd.gd_from_quadratic(alg)) == alg


def test_round_trip_on_current_algebra():
    alg = families.make_current(
        ["e", "f", "h"],
        {("h", "e"): {"e": 2}, ("e", "h"): {"e": -2},
         ("h", "f"): {"f": -2}, ("f", "h"): {"f": 2},
         ("e", "f"): {"h": 1}, ("f", "e"): {"h": -1}})
    assert gd.quadratic_from_gd(gd.gd_from_quadratic(alg)) == alg


# -- perturbation rejection ---------------------------------------------------------------

def test_random_a2_perturbations_always_caught():
    rng = random.Random(20240817)
    base = gd.make_a2(Fraction(1, 3), range(-3, 4))
    lie = gd.s_bracket(base.basis, Fraction(2))
    interior = [pair for pair in base.pairs()
                if abs(pair[0].grade + pair[1].grade) <= 2]
    for trial in range(20):
        pair = interior[rng.randrange(len(interior))]
        delta = Fraction(rng.choice([1, -1, 2, -2, 3]),
                         rng.choice([1, 2, 3]))
        table = {p: base.entry(*p) for p in base.pairs()}
        target = GeneratorId(pair[0].grade + pair[1].grade,
                             f"L{pair[0].grade + pair[1].grade}")
        entry = dict(table[pair])
        entry[target] = entry.get(target, ParamPoly.zero()) + delta
        table[pair] = entry
        broken = gd.NovikovAlgebra(base.basis, table)
        caught = (not gd.check_novikov(broken).ok
                  or not gd.check_gd(gd.GDAlgebra(broken, lie)).ok)
        assert caught, f"perturbation {trial} on {pair} accepted silently"
