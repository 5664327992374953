import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from glrep.multiplets import L2_I, L2_II, L4, MultipletId, evaluate
from glrep.realization import ModuleParams
from glrep.repbuild import (
    ATYP_A, ATYP_B, ATYP_C, ATYP_D, ATYP_ZERO, IRREDUCIBLE, KAC, SURVIVORS, TYPICAL,
    CommutantTooLarge, WrongLocus, atypical_q, branching, build_module, casimir, casimir_formula,
    classify, combine_copies, commutant, expected_dimension, indecomposability_check,
    invariant_closure, relation_check,
)

H = mpq(1, 2)
rationals = st.builds(lambda a, b: mpq(a, b), st.integers(-9, 9), st.integers(1, 7))
spins = st.tuples(st.integers(0, 3), st.integers(0, 3))


def P(a, b, q, p=1):
    return ModuleParams(a, b, mpq(q), mpq(p))


@pytest.mark.parametrize("pt,variant", [
    (P(1, 1, mpq(3, 7)), TYPICAL), (P(2, 1, H), ATYP_A), (P(1, 1, 0), ATYP_ZERO),
    (P(1, 2, H), ATYP_B), (P(1, 0, mpq(3, 2)), ATYP_C), (P(1, 0, mpq(-3, 2)), ATYP_D),
    (P(1, 1, 5), TYPICAL),
])
def test_classify(pt, variant):
    assert classify(pt) == variant


@given(spins, rationals)
def test_classification_is_exclusive(sp, q):
    a, b = mpq(sp[0], 2), mpq(sp[1], 2)
    hits = [q == a - b and a != b, q == 0 and a == b, q == b - a and a != b,
            q == a + b + 1, q == -a - b - 1]
    assert sum(hits) <= 1
    v = classify(ModuleParams(sp[0], sp[1], q, 0))
    assert (v == TYPICAL) == (sum(hits) == 0)


def _copy(which, pt, m1, m2):
    mult = L2_I if which == "I" else L2_II
    return evaluate(mult, pt, m1, m2)


def test_combine_copies_examples():
    pt = P(0, 2, 1)
    assert not combine_copies("sym1", pt, -2, -2)
    pt = P(2, 0, 1)
    assert combine_copies("asym1", pt, -1, -2) == _copy("II", pt, -1, -2)
    pt = P(2, 1, 1)
    m1, m2 = -1, mpq(-3, 2)
    assert combine_copies("sym2", pt, m1, m2) == 2 * _copy("I", pt, m1, m2) + mpq(3, 2) * _copy("II", pt, m1, m2)


def test_combine_copies_fallbacks():
    pt = P(0, 2, 1)  # J1 = 0
    m1, m2 = -2, -2
    assert combine_copies("sym2", pt, m1, m2) == _copy("I", pt, m1, m2)
    assert not combine_copies("asym2", pt, m1, m2)
    assert combine_copies("sym3", pt, m1, m2) == _copy("I", pt, m1, m2)
    assert not combine_copies("asym3", pt, m1, m2)
    assert not combine_copies("sym4", pt, m1, m2)
    assert combine_copies("asym4", pt, m1, m2) == _copy("I", pt, m1, m2)
    pt = P(2, 0, 1)  # J2 = 0
    m1, m2 = -1, -2
    assert not combine_copies("sym3", pt, m1, m2)
    assert combine_copies("sym4", pt, m1, m2) == _copy("II", pt, m1, m2)
    assert not combine_copies("asym4", pt, m1, m2)


@pytest.mark.parametrize("pt,dim", [
    (P(0, 0, mpq(3, 7), mpq(2, 5)), 16), (P(2, 1, H), 28), (P(1, 1, 0), 14), (P(0, 0, 0), 1),
    (P(1, 2, H), 68), (P(1, 0, mpq(3, 2)), 20), (P(1, 0, mpq(-3, 2)), 12),
])
def test_build_module_dimensions(pt, dim):
    rep = build_module(pt)
    assert rep.dim == dim == expected_dimension(pt, classify(pt))


def test_kac_needs_atypical_point():
    with pytest.raises(WrongLocus):
        build_module(P(1, 1, mpq(3, 7)), KAC)


def test_casimir_typical():
    rep = build_module(P(1, 1, mpq(3, 7), mpq(2, 5)))
    c = casimir(rep)
    assert c.matrix_scalar == mpq(-48, 35) == c.formula_value
    assert c.vanishing_claim is None


def test_casimir_atypical_does_not_vanish():
    c = casimir(build_module(P(2, 1, H)))
    assert c.matrix_scalar == mpq(3, 2) == c.formula_value
    assert c.vanishing_claim is False
    assert casimir(build_module(P(0, 0, 0))).matrix_scalar == 0


def test_branching_typical():
    rep = build_module(P(1, 1, mpq(3, 7), mpq(2, 5)))
    slots = branching(rep, include_degenerate=True)
    assert sum(s.multiplicity for s in slots) == 16
    double = [s for s in slots if s.multiplicity == 2]
    assert [(s.j1, s.j2, s.p) for s in double] == [(H, H, mpq(2, 5) - 2)]
    assert sum(s.multiplicity * s.dim for s in slots) == 64
    rep0 = build_module(P(0, 0, mpq(3, 7), mpq(2, 5)))
    assert [s.dim for s in branching(rep0)] == [1, 4, 3, 3, 4, 1]


def test_branching_atyp_d():
    rep = build_module(P(1, 0, mpq(-3, 2)))
    got = [(s.j1, s.j2, s.p, s.dim) for s in branching(rep)]
    assert got == [(H, 0, 1, 2), (1, H, 0, 6), (mpq(3, 2), 0, -1, 4)]


def test_closure_examples():
    rep = build_module(P(1, 1, mpq(3, 7), mpq(2, 5)))
    full = invariant_closure(rep, list(range(rep.dim)))
    assert full.dim == rep.dim and full.complement_exists
    hw = invariant_closure(rep, [rep.highest_weight_index()])
    assert hw.dim == rep.dim


def test_kac_structure():
    rep = build_module(P(2, 1, H), KAC)
    assert rep.dim == 96
    sub = invariant_closure(rep, [rep.highest_weight_index()])
    assert sub.dim == 28 and sub.closed and sub.complement_exists is False
    assert invariant_closure(rep).dim == 96  # generated by its lowest weight vector
    rep_check = indecomposability_check(rep)
    assert rep_check.verdict == "Indecomposable" and rep_check.dim == 28
    assert rep_check.commutant_dim == 1


def test_commutant_bound():
    rep = build_module(P(0, 0, mpq(3, 7)))
    assert len(commutant(rep)) == 1
    # a direct sum of two copies has a larger commutant; fake it by lowering the bound
    with pytest.raises(CommutantTooLarge):
        commutant(rep, bound=0)


@pytest.mark.parametrize("pt,kind", [(P(1, 1, mpq(3, 7), mpq(2, 5)), IRREDUCIBLE), (P(2, 1, H), KAC),
                                     (P(1, 0, mpq(3, 2)), IRREDUCIBLE)])
def test_matrix_relations(pt, kind):
    assert relation_check(build_module(pt, kind)) == []


@given(spins, st.sampled_from([ATYP_A, ATYP_ZERO, ATYP_B, ATYP_C, ATYP_D]))
def test_atypical_irreducibles(sp, variant):
    base = ModuleParams(sp[0], sp[1], 0, mpq(1, 3))
    pt = base.with_q(atypical_q(base, variant))
    if classify(pt) != variant:
        return
    rep = build_module(pt)  # NotClosed if a survivor list were wrong
    assert rep.dim == expected_dimension(pt, variant)
    assert indecomposability_check(rep).verdict == IRREDUCIBLE
    assert casimir(rep).agrees


@given(spins, st.sampled_from([ATYP_A, ATYP_B, ATYP_C, ATYP_D]))
def test_kac_contains_irreducible(sp, variant):
    base = ModuleParams(sp[0], sp[1], 0, 0)
    pt = base.with_q(atypical_q(base, variant))
    if classify(pt) != variant or sp[0] + sp[1] > 3:
        return
    kac = build_module(pt, KAC)
    sub = invariant_closure(kac, [kac.highest_weight_index()])
    assert sub.dim == expected_dimension(pt, variant)
    assert sub.complement_exists is False


@given(spins)
def test_typical_closure_from_both_ends(sp):
    if sp[0] + sp[1] > 4:
        return
    rep = build_module(ModuleParams(sp[0], sp[1], mpq(3, 7), mpq(2, 5)))
    assert invariant_closure(rep, [rep.highest_weight_index()], complement=False).dim == rep.dim
    assert invariant_closure(rep, [rep.lowest_weight_index()], complement=False).dim == rep.dim


def test_sym_asym_selection():
    # odd generators never leave the survivor span; checked through closure
    for variant, pt in ((ATYP_A, P(2, 1, H)), (ATYP_B, P(1, 2, H)), (ATYP_C, P(1, 1, 2)), (ATYP_D, P(2, 1, mpq(-5, 2)))):
        rep = build_module(pt)
        assert [m for m in rep.requested if m.tag not in (None,)] == [SURVIVORS[variant][6]]
        for g in ("E23", "E32"):
            assert rep.matrix(g).ncols == rep.dim


def test_casimir_formula_values():
    assert casimir_formula(P(0, 0, 0, 5)) == 0
    assert casimir_formula(P(2, 1, H, 1)) == mpq(3, 2)


def test_manifest_shape():
    rep = build_module(P(1, 0, mpq(-3, 2)))
    m = rep.manifest()
    assert m["dim"] == 12 and m["classification"] == ATYP_D
    assert m["casimir"] == {"matrix_scalar": "9/2", "formula_value": "9/2", "agrees": True,
                            "vanishes_on_atypical": False}
    assert len(m["basis"]) == 12 and m["basis"][0]["name"] == "L0"
