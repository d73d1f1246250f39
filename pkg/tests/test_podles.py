from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistlab.podles import (
    R2,
    SeriesCochain,
    associator,
    associator_scan,
    bullet_podles,
    killing_field_h,
    podles_ring,
    q_squared,
    relation_polynomial,
    sl2,
    sl2_relation_failures,
    truncation_failures,
    verify_podles_relations,
)
from twistlab.scalar import I, Scalar

RING = podles_ring()
XP, XM, X3 = RING.gens()
C1, C2 = Scalar.param("c1"), Scalar.param("c2")
GENERIC = SeriesCochain()
PODLES = SeriesCochain.podles()
ACT = sl2()


@st.composite
def polys(draw, max_terms=3, max_deg=3):
    raw = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = [0, 0, 0]
        for _ in range(draw(st.integers(0, max_deg))):
            e[draw(st.integers(0, 2))] += 1
        raw[tuple(e)] = raw.get(tuple(e), 0) + draw(st.integers(-3, 3))
    return RING.from_dict(raw)


def test_action_tables():
    assert ACT.apply("x", XP) == RING.zero()
    assert ACT.apply("x", XM) == X3.scale(-2 * I)
    assert ACT.apply("x", X3) == XP.scale(I)
    assert ACT.apply("y", XP) == X3.scale(2 * I)
    assert ACT.apply("y", X3) == XM.scale(-I)
    assert ACT.tables["h"] == (XP.scale(-2), XM.scale(2), RING.zero())


def test_h_is_twice_i_xi3():
    assert ACT.tables["h"] == killing_field_h()


def test_sl2_relations_on_low_degree_monomials():
    assert sl2_relation_failures(5) == {name: [] for name in sl2_relation_failures(5)}


def test_opposite_sign_convention_fails():
    # h x+ = -2 x+, so [h, x] = +2x cannot hold
    hx = ACT.act(("x", "h"), XM) - ACT.act(("h", "x"), XM)
    assert hx == ACT.apply("x", XM).scale(-2)
    assert hx != ACT.apply("x", XM).scale(2)


@given(polys(), polys())
def test_action_is_by_derivations(p, q):
    for g in "xyh":
        assert ACT.apply(g, p * q) == ACT.apply(g, p) * q + p * ACT.apply(g, q)


def test_relation_is_invariant():
    rel = relation_polynomial()
    assert all(not ACT.apply(g, rel) for g in "hxy")


def test_truncation():
    assert truncation_failures(4) == []
    assert ACT.power("x", 2, XM) == XP.scale(2)
    assert not ACT.power("x", 3, XM)


def test_proof_level_products():
    b = lambda p, q: bullet_podles(GENERIC, p, q)
    assert b(X3, X3) == X3 * X3 + (XP * XM).scale(C1)
    assert b(XP, XM) == XP * XM
    assert b(XM, XP) == XM * XP + (X3 * X3).scale(4 * C1) + (XP * XM).scale(4 * C2)
    assert b(X3, XP) == (XP * X3).scale(1 - 2 * C1)


def test_products_in_terms_of_radius():
    b = lambda p, q: bullet_podles(GENERIC, p, q)
    assert b(X3, X3) == (X3 * X3).scale(1 - C1) + RING.const(C1 * R2)


def test_podles_relations_hold_with_c2_equal_c1_squared():
    checks = verify_podles_relations()
    assert len(checks) == 4
    assert all(c.holds for c in checks), [str(c.residual) for c in checks]
    assert q_squared() == 1 - 2 * C1


def test_third_identity_fails_for_generic_c2():
    *first, third = verify_podles_relations(GENERIC)
    assert all(c.holds for c in first)
    assert not third.holds
    assert "c2" in {p for c in third.residual.coefficients() for p in c.params()}


@given(polys())
def test_unit(p):
    one = RING.one()
    assert bullet_podles(PODLES, p, one) == p == bullet_podles(PODLES, one, p)


def test_witness_at_degree_three():
    w = associator_scan(None, 3)
    assert w == {
        "triple": ["x3", "x3", "xp"],
        "residual": "(2*c1^2 - 4*c1^3)*xp*x3^2 + (-2*c1^2*r2 + 4*c1^3*r2)*xp",
        "parameters_involved": ["c1", "r2"],
    }
    assert associator(PODLES, X3, X3, XP)


def test_scan_is_deterministic_and_validates_bound():
    assert associator_scan(None, 4) == associator_scan(None, 3)
    with pytest.raises(ValueError):
        associator_scan(None, 2)


def test_trivial_cochain_is_associative():
    assert associator_scan(SeriesCochain(trivial=True), 4) is None


def test_associator_vanishes_on_some_triples():
    assert not associator(PODLES, XM, XP, XM)
    assert not associator(PODLES, XP, XP, XP)


def test_series_coefficients():
    assert PODLES.coefficient(0) == 1
    assert PODLES.coefficient(2) == C1 * C1
    assert PODLES.coefficient(3) == Scalar.param("c3")
    assert SeriesCochain(trivial=True).coefficient(1) == 0
