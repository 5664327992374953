import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from glrep.fock import FockState, FockVector, create, create_monomial
from glrep.multiplets import (
    ALL_MULTIPLETS, L0, L1_MM, L1_MP, L1_PM, L1_PP, L2_0M, L2_I, L2_II, L2_P0, L3_MM, L4,
    InvalidMultiplet, MultipletId, OddActionComputer, OutOfRange, build_state, build_table,
    dimension, exists, m_range, odd_action, verify_multiplet,
)
from glrep.realization import GeneratorAction, ModuleParams

H = mpq(1, 2)
Q = mpq(3, 7)
PP = mpq(2, 5)


def params(a, b, q=Q, p=PP):
    return ModuleParams(a, b, q, p)


def word(ferm, n12=0, n34=0):
    return create_monomial([create(f) for f in ferm], FockState(n12, n34, 0))


spins = st.tuples(st.integers(0, 3), st.integers(0, 3))


def test_level0_top_is_vacuum():
    P = params(1, 3)
    assert build_state(MultipletId.of(L0, P.j1, P.j2), P) == word([])


def test_level4_top():
    P = params(2, 1)
    sid = MultipletId.of(L4, P.j1 - 4, P.j2 - 4)
    assert build_state(sid, P) == word(["f23", "f13", "f24", "f14"])


def test_level1_mm_at_half_half():
    P = params(1, 1)
    expected = (
        word(["f14"])
        + H * word(["f24"], n12=1)
        - H * word(["f13"], n34=1)
        - mpq(1, 3) * word(["f23"], n12=1, n34=1)
    )
    assert build_state(MultipletId.of(L1_MM, -1, -1), P) == expected


def test_errors():
    P = params(2, 1)
    with pytest.raises(InvalidMultiplet):
        build_state(MultipletId.of(L2_0M, -2, -3), P)  # needs J2 >= 1
    with pytest.raises(OutOfRange):
        build_state(MultipletId.of(L0, 5, 0), P)


def test_copy_ranges_have_printed_dimension():
    for a in range(1, 4):
        for b in range(1, 4):
            P = params(a, b)
            for m in (L2_I, L2_II):
                assert dimension(m, P) == (a + 1) * (b + 1)
            m1s, m2s = m_range(L2_I, P)
            assert m2s[0] == P.j2 - 2 and m2s[-1] == -(P.j2 + 2)


@pytest.mark.parametrize("a,b,dim,count", [(0, 0, 16, 6), (1, 1, 64, 14), (2, 1, 96, 15)])
def test_table_dimensions(a, b, dim, count):
    t = build_table(params(a, b))
    assert t.total_dimension == dim
    assert len(t.multiplets()) == count


def test_level1_dimensions_as_printed():
    a, b = 3, 2
    P = params(a, b)
    assert [dimension(m, P) for m in (L1_MM, L1_PM, L1_PP, L1_MP)] == [
        a * b, (a + 2) * b, (a + 2) * (b + 2), a * (b + 2)]


def test_one_half_table_lacks_zero_minus_one():
    t = build_table(params(2, 1))
    assert L2_0M not in t.multiplets()
    assert L2_I in t.multiplets() and L2_II in t.multiplets()


@given(spins)
def test_table_is_independent_and_complete(sp):
    P = params(*sp)
    t = build_table(P)  # raises DependentStates otherwise
    assert t.total_dimension == 16 * (sp[0] + 1) * (sp[1] + 1)


@given(spins, st.sampled_from(ALL_MULTIPLETS))
def test_every_multiplet_verifies(sp, mult):
    P = params(*sp)
    if not exists(mult, P):
        return
    assert verify_multiplet(mult, P).ok


def test_vanishing_copy_reported():
    # copy I is formally defined at J2 = 0 but vanishes identically
    from glrep.multiplets import evaluate
    P = params(2, 0)
    assert not evaluate(L2_I, P, P.j1 - 2, P.j2 - 2)
    r = verify_multiplet(L2_I, P)
    assert not r.ok and not exists(L2_I, P)


def test_h1_eigenvalue_example():
    P = params(1, 1)
    sid = MultipletId.of(L1_PM, 0, -1)
    v = build_state(sid, P)
    assert GeneratorAction(P).apply("H1", v) == 2 * v


@pytest.mark.parametrize("mult", [L1_MP, L2_P0])
def test_printed_formulas_break_the_ladder(mult):
    assert not verify_multiplet(mult, params(2, 1), literal=True).ok
    assert verify_multiplet(mult, params(2, 1)).ok


def test_odd_action_examples():
    P = params(2, 1)
    comp = OddActionComputer(P)
    for sid in comp.table.ids(L0):
        assert comp.expand("E23", sid).terms == []
    for sid in comp.table.ids(L4):
        assert comp.expand("E32", sid).terms == []
    sid = comp.table.ids(L3_MM)[0]
    exp = comp.expand("E32", sid)
    assert exp.terms == [(sid.retagged(L4).shifted(-H), P.q - P.j1 + P.j2)]
    assert exp.paper_match is True


def test_action_expansion_json():
    P = params(1, 1)
    exp = odd_action("E32", MultipletId.of(L0, H, H), P)
    d = exp.to_json()
    assert set(d) >= {"generator", "source", "terms", "paper_match"}
    assert d["generator"] == "E32" and d["paper_match"] is True
    assert all(set(t) == {"target", "coeff"} for t in d["terms"])


def test_known_sign_discrepancy_is_flagged():
    P = params(1, 1)
    exp = odd_action("E23", MultipletId.of(L1_MP, -1, 0), P)
    assert exp.paper_match is False
    (d,) = exp.discrepancies
    assert d["computed"] == "2" and d["printed"] == "-2"


@given(spins)
def test_odd_actions_shift_level(sp):
    P = params(*sp)
    comp = OddActionComputer(P)
    for sid in comp.table.ids():
        for g, dx in (("E23", -1), ("E32", 1)):
            for t, _ in comp.expand(g, sid).terms:  # NotInSpan would propagate
                assert t.level == sid.level + dx


def _level0_bottom_coeffs(a, b, q):
    P = params(a, b, q)
    sid = MultipletId.of(L0, -P.j1, -P.j2)
    exp = odd_action("E32", sid, P).as_dict()
    return {m: exp.get(sid.retagged(m).shifted(-H), 0) for m in (L1_MM, L1_PM, L1_PP, L1_MP)}


@pytest.mark.parametrize("a,b", [(2, 1), (3, 1), (3, 3)])
def test_atypicality_zeroes(a, b):
    J1, J2 = mpq(a, 2), mpq(b, 2)
    loci = {L1_MM: J2 - J1, L1_PM: J1 + J2 + 1, L1_PP: J1 - J2, L1_MP: -J1 - J2 - 1}
    for target, q in loci.items():
        c = _level0_bottom_coeffs(a, b, q)
        zero = [m for m, x in c.items() if not x]
        if J1 == J2 and q == 0:
            assert set(zero) == {L1_MM, L1_PP}
        else:
            assert zero == [target]
