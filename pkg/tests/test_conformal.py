"""Conformal core: brackets, axiom checks, spectral diagnostics."""

import itertools
import random
from fractions import Fraction

import pytest

from zlca import families
from zlca.conformal import (ConformalAlgebra, Element, GeneratorId,
                            NotAffineError, OutOfWindowError,
                            OutOfWindowTripleError, ZeroActionError, bracket,
                            check_jacobi, check_skew, classify_support,
                            degree_relation_check, jacobi_residual,
                            spectral_data)
from zlca.poly import D, X, const

L = GeneratorId(0, "L")
VIR = ConformalAlgebra([L], {(L, L): {L: D + 2 * X}}, {0})


def lam(alg, a, b):
    return bracket(alg, a, b)


# -- bracket and sesquilinearity ---------------------------------------------

def test_vir_bracket():
    value = lam(VIR, Element.generator(L), Element.generator(L))
    assert value.coefficient(L) == D + 2 * X


def test_vir_bracket_left_derivative():
    value = lam(VIR, Element({L: D}), Element.generator(L))
    assert value.coefficient(L) == -X * (D + 2 * X)


def test_vir_bracket_right_derivative():
    value = lam(VIR, Element.generator(L), Element({L: D}))
    assert value.coefficient(L) == (D + X) * (D + 2 * X)


def test_bracket_sesquilinear_on_random_elements():
    rng = random.Random(7)
    alg = families.make_v("s", range(-2, 3))
    gens = alg.generators

    def random_element():
        coeffs = {}
        for g in rng.sample(gens, 2):
            coeffs[g] = (const(rng.randint(-3, 3))
                         + rng.randint(-2, 2) * D
                         + rng.randint(0, 2) * D ** 2)
        return Element(coeffs)

    for _ in range(10):
        a, b = random_element(), random_element()
        try:
            base = lam(alg, a, b)
            left = lam(alg, Element({g: D * f for g, f in a.coeffs.items()}), b)
            right = lam(alg, a, Element({g: D * f for g, f in b.coeffs.items()}))
        except OutOfWindowError:
            continue
        for g in base.coeffs:
            assert left.coefficient(g) == -X * base.coefficient(g)
            assert right.coefficient(g) == (D + X) * base.coefficient(g)


def test_bracket_out_of_window():
    alg = families.make_v(0, range(-1, 2))
    top = alg.single_generator(1)
    with pytest.raises(OutOfWindowError):
        lam(alg, Element.generator(top), Element.generator(top))


def test_element_coefficient_validation():
    with pytest.raises(ValueError):
        Element({L: D + X})  # bracket variable in a module coefficient
    from zlca.conformal import LambdaElement
    from zlca.poly import Y
    with pytest.raises(ValueError):
        LambdaElement({L: D + Y})
    assert Element({L: const(0)}).is_zero()


# -- skew-symmetry -------------------------------------------------------------

def test_vir_skew_clean():
    report = check_skew(VIR)
    assert report.ok and report.checked == 1 and report.skipped == 0


def test_cl1_skew_clean_symbolically():
    assert check_skew(families.make_cl1("s", 5)).ok


def test_skew_violation_residual():
    bad = ConformalAlgebra([L], {(L, L): {L: D + 3 * X}}, {0})
    report = check_skew(bad)
    assert len(report.violations) == 1
    assert report.violations[0].residual == -D


# -- Jacobi ----------------------------------------------------------------------

def test_vir_jacobi():
    assert jacobi_residual(VIR, L, L, L) == {}
    report = check_jacobi(VIR)
    assert report.ok and report.checked == 1 and report.skipped == 0


def test_v_family_jacobi_symbolic():
    alg = families.make_v("s", range(-3, 4))
    gens = {g.grade: g for g in alg.generators}
    for triple in [(0, 1, -1), (1, 1, -2), (-3, 1, 2), (2, -2, 0)]:
        res = jacobi_residual(alg, *(gens[i] for i in triple))
        assert res == {}


def test_cl2_jacobi_symbolic_window():
    alg = families.make_cl2("b", "s", range(-4, 5))
    report = check_jacobi(alg)
    assert report.ok and report.skew_ok


def perturbed_v0():
    alg = families.make_v(0, range(-3, 4))
    table = {}
    for u, v, w, poly in alg.table_items():
        table.setdefault((u, v), {})[w] = poly
    one = alg.single_generator(1)
    two = alg.single_generator(2)
    table[(one, one)][two] = table[(one, one)][two] + X ** 2
    return ConformalAlgebra(alg.generators, table, alg.window)


def test_perturbed_v0_jacobi_residual_nonzero():
    alg = perturbed_v0()
    gens = {g.grade: g for g in alg.generators}
    res = jacobi_residual(alg, gens[-1], gens[1], gens[1])
    assert res != {}


def test_perturbed_v0_check_jacobi_reports():
    report = check_jacobi(perturbed_v0())
    assert not report.skew_ok  # the perturbation also breaks skew
    assert len(report.violations) >= 1


def test_jacobi_residual_vanishing_is_permutation_invariant():
    alg = families.make_cl2(Fraction(1, 3), Fraction(2), range(-3, 4))
    gens = {g.grade: g for g in alg.generators}
    for triple in [(0, 1, -1), (1, 1, 1), (-2, 1, 0)]:
        vanishing = {jacobi_residual(alg, *(gens[i] for i in perm)) == {}
                     for perm in itertools.permutations(triple)}
        assert vanishing == {True}


def test_jacobi_triple_out_of_window():
    alg = families.make_cl1("s", 4)
    gens = {g.grade: g for g in alg.generators}
    with pytest.raises(OutOfWindowTripleError):
        jacobi_residual(alg, gens[-1], gens[-1], gens[2])
    report = check_jacobi(alg)
    assert report.ok and report.skipped > 0


# -- spectral data ----------------------------------------------------------------

def test_vir_spectral():
    data = spectral_data(VIR)
    line = data.lines[0]
    assert (line.scale, line.weight, line.shift) == (const(1), 2, 0)
    assert data.uniform_scale


def test_cl1_spectral_at_s1():
    alg = families.make_cl1("s", 4)
    data = spectral_data(alg, {"s": 1})
    for j in range(-1, 5):
        line = data.lines[j]
        assert line.scale == const(1)
        assert line.weight == j + 2
        assert line.shift == j
    assert data.uniform_scale


def test_cl2_spectral_at_b1_s0():
    alg = families.make_cl2("b", "s", range(-3, 4))
    data = spectral_data(alg, {"b": 1, "s": 0})
    for j in range(-3, 4):
        assert data.lines[j].weight == j + 2
        assert data.lines[j].shift == 0
        assert data.lines[j].scale == const(1)


def test_spectral_requires_one_generator_per_grade():
    alg = families.make_current(
        ["e", "f", "h"],
        {("h", "e"): {"e": 2}, ("e", "h"): {"e": -2},
         ("h", "f"): {"f": -2}, ("f", "h"): {"f": 2},
         ("e", "f"): {"h": 1}, ("f", "e"): {"h": -1}})
    with pytest.raises(ValueError):
        spectral_data(alg)


def test_spectral_zero_action():
    one = GeneratorId(1, "A")
    alg = ConformalAlgebra([L, one], {(L, L): {L: D + 2 * X}}, {0, 1})
    with pytest.raises(ZeroActionError):
        spectral_data(alg)


def test_spectral_not_affine():
    one = GeneratorId(1, "A")
    table = {(L, L): {L: D + 2 * X},
             (L, one): {one: D + X ** 2}}
    alg = ConformalAlgebra([L, one], table, {0, 1})
    with pytest.raises(NotAffineError):
        spectral_data(alg)


# -- degree relations ---------------------------------------------------------------

def test_cl1_degree_relations():
    alg = families.make_cl1("s", 4)
    data = spectral_data(alg, {"s": 1})
    assert degree_relation_check(alg, data) == []


def test_scl2_degree_relations_and_pair_values():
    alg = families.make_scl2(Fraction(1), "s", range(-6, 7))
    data = spectral_data(alg, {"s": 1})
    assert data.lines[-2].weight == 1
    assert data.lines[-2].shift == 2
    assert degree_relation_check(alg, data) == []
    # constant pairing at the special target grade
    one = alg.single_generator(1)
    minus3 = alg.single_generator(-3)
    entry = alg.structure(one, minus3)
    assert entry[alg.single_generator(-2)] == const(2)


def test_degree_relation_violation_hand_built():
    a1 = GeneratorId(1, "A")
    a2 = GeneratorId(2, "B")
    table = {
        (L, L): {L: D + 2 * X},
        (L, a1): {a1: D + 3 * X},
        (L, a2): {a2: D + 5 * X},  # weight 5 breaks the (1,1) bookkeeping
        (a1, a1): {a2: D + 2 * X},
    }
    alg = ConformalAlgebra([L, a1, a2], table, {0, 1, 2})
    data = spectral_data(alg)
    violations = degree_relation_check(alg, data)
    assert any(v.left_grade == 1 and v.right_grade == 1 and
               v.relation == "weight" for v in violations)


# -- support classification ------------------------------------------------------------

def test_v1_support_all_degree1():
    alg = families.make_v(1, range(-5, 6))
    support = classify_support(alg)
    assert support.degree1 == frozenset({1, 2, 3, 4, 5})
    assert support.degree0 == support.degree2 == frozenset()


def test_scl2_support_has_one_degree2():
    alg = families.make_scl2(Fraction(1), "s", range(-6, 7))
    support = classify_support(alg, {"s": 1})
    assert support.degree2 == frozenset({2})
    assert support.degree1 == frozenset({1, 3, 4, 5, 6})
    assert support.degree0 == frozenset()


def test_vir_support_empty():
    support = classify_support(VIR)
    assert not (support.degree0 | support.degree1 | support.degree2
                | support.unclassified)


def test_cl1_support_unclassified_pairs():
    alg = families.make_cl1("s", 6)
    support = classify_support(alg, {"s": 1})
    assert support.degree1 == frozenset({1})
    assert support.unclassified == frozenset({2, 3, 4, 5, 6})
