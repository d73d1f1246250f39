from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistlab.calculus import sphere_calculus
from twistlab.forms import FormTensor
from twistlab.riemann import (
    LEFT3,
    RIGHT3,
    Connection,
    Geometry,
    TwistContext,
    left_tree,
    right_tree,
)
from twistlab.suites import geometries

CTX = TwistContext.octonion_family(3)
C7 = sphere_calculus(3)
RING = C7.ring
X = RING.gens()
w = C7.coframe


def basis(*legs, coeff=1):
    return FormTensor.basis(RING, *legs, coeff=coeff)


# -- bracketings and associator ------------------------------------------------

def test_trees():
    assert left_tree(3) == LEFT3 and right_tree(3) == RIGHT3
    assert left_tree(1) == 0 == right_tree(1)
    assert left_tree(4) == (((0, 1), 2), 3)


def test_contexts_are_consistent():
    assert CTX.consistency() and TwistContext.trivial(3).consistency()
    assert TwistContext.trivial(3).is_trivial() and not CTX.is_trivial()


def test_associator_is_ratio_of_bracketings():
    for degs in itertools.product(range(8), repeat=3):
        ratio = CTX.tree_factor(RIGHT3, degs) / CTX.tree_factor(LEFT3, degs)
        assert CTX.phi_minus[degs] == ratio


def test_associator_examples():
    t = basis((1,), (2,), (4,))
    assert CTX.apply_associator(t, (1, 1, 1)) == -t
    assert CTX.apply_associator(basis((1,), (2,), (3,)), (1, 1, 1)) == basis((1,), (2,), (3,))


@given(st.lists(st.integers(1, 7), min_size=3, max_size=3), st.integers(0, 7))
def test_associator_inverse(legs, a):
    t = basis(*((i,) for i in legs), coeff=X[a])
    there = CTX.apply_associator(t, (1, 1, 1))
    assert CTX.apply_associator(there, (1, 1, 1), inverse=True) == t


@pytest.mark.parametrize("v,f,wd", list(itertools.product(range(8), repeat=3)))
def test_coefficient_move_matches_balanced_relation(v, f, wd):
    # v (x) f w = F(v,f) dF(v,f,w) / F(f,w) . (v f) (x) w
    expect = CTX.f[v, f] * CTX.phi_minus[v, f, wd] / CTX.f[f, wd]
    assert CTX.move_factor((0, 1), [v, f ^ wd], f, 1) == expect


# -- twisted products ----------------------------------------------------------

def test_wedge_F_examples():
    assert CTX.wedge_F(w(1), w(2)) == basis((1, 2))  # F(1, 2) = 1
    assert CTX.wedge_F(w(2), w(1)) == basis((1, 2))  # F(2, 1) = -1 and the swap sign
    assert not CTX.wedge_F(w(3), w(3))


def _dx_wedge(calc, ctx, a, b):
    return ctx.wedge_F(calc.dx_on_coframe(a), calc.dx_on_coframe(b))


@pytest.mark.parametrize("i,j", list(itertools.combinations(range(1, 8), 2)))
def test_twisted_coordinate_differentials_commute(i, j):
    assert _dx_wedge(C7, CTX, i, j) == _dx_wedge(C7, CTX, j, i)


def test_classical_coordinate_differentials_anticommute():
    triv = TwistContext.trivial(3)
    assert _dx_wedge(C7, triv, 1, 2) == -_dx_wedge(C7, triv, 2, 1)


def test_sigma_F_examples():
    assert CTX.sigma_F(basis((1,), (2,))) == basis((2,), (1,)).scale(-1)
    assert CTX.sigma_F(basis((3,), (3,))) == basis((3,), (3,))
    t = basis((1,), (2,), coeff=X[4])
    assert CTX.sigma_F(CTX.sigma_F(t)) == t


def test_twist_tensor_examples():
    g = FormTensor(RING)
    for i in C7.indices:
        g.add_term(((i,), (i,)), RING.one())
    assert CTX.twist_tensor(g) == g.scale(-1)
    assert CTX.twist_tensor(w(5)) == w(5)
    t = basis((1,), (2,), (4,), coeff=X[3])
    assert CTX.untwist_tensor(CTX.twist_tensor(t)) == t


def test_twisted_sphere_action():
    t = CTX.act_left(X[1], w(2))
    assert t == basis((2,), coeff=X[1]).scale(CTX.f[1, 2])
    with pytest.raises(ValueError):
        CTX.act_left(X[1], basis((1,), (2,), (3,)))


# -- classical geometry ----------------------------------------------------------

S3 = sphere_calculus(2)


def test_zero_connection():
    geo = Geometry(S3, connection=Connection.zero(S3))
    for i in S3.indices:
        assert geo.torsion(S3.coframe(i)) == S3.exterior_d(S3.coframe(i))
        assert not geo.curvature(i)


def test_zero_metric_is_cotorsion_free():
    geo = Geometry(S3, metric={})
    assert not geo.metric_tensor()
    assert not geo.cotorsion()


def test_lift_examples():
    cl, tw = geometries(2)
    zeta = basis_s3((1, 2))
    half = S3.ring.const(Fraction(1, 2))
    expect = FormTensor(S3.ring)
    expect.add_term(((1,), (2,)), half)
    expect.add_term(((2,), (1,)), -half)
    assert cl.lift(zeta) == expect
    assert cl.wedge_after_lift(zeta) == zeta
    assert tw.wedge_after_lift(zeta) == zeta
    with pytest.raises(ValueError):
        cl.lift(S3.coframe(1))


def basis_s3(*legs, coeff=1):
    return FormTensor.basis(S3.ring, *legs, coeff=coeff)


@pytest.mark.parametrize("twisted", [False, True])
def test_s3_einstein(twisted):
    geo = geometries(2)[twisted]
    assert geo.ricci() == geo.metric_tensor().scale(-1)
    assert geo.ricci_scalar() == S3.ring.const(-3)
    assert not geo.nabla_metric()
    assert all(not geo.torsion(S3.coframe(i)) for i in S3.indices)


def test_s1_flat():
    calc = sphere_calculus(1)
    geo = Geometry(calc)
    assert not geo.curvature(1) and not geo.ricci()


def test_pairing():
    cl, tw = geometries(2)
    assert cl.pairing(basis_s3((1,), (1,))) == S3.ring.one()
    assert not cl.pairing(basis_s3((1,), (2,)))
    assert tw.pairing(basis_s3((1,), (1,))) == -S3.ring.one()
    with pytest.raises(ValueError):
        cl.pairing(basis_s3((1, 2), (1,)))


# -- naturality on random data ---------------------------------------------------

@st.composite
def one_forms(draw, calc=C7):
    t = FormTensor(calc.ring)
    for _ in range(draw(st.integers(1, 2))):
        a, b = draw(st.integers(0, calc.m - 1)), draw(st.integers(0, calc.m - 1))
        i = draw(st.sampled_from(calc.indices))
        t.add_term(((i,),), calc.x(a) * calc.x(b).scale(draw(st.integers(-2, 2))))
    return t


@settings(max_examples=25)
@given(one_forms())
def test_nabla_naturality(v):
    cl, tw = geometries(3)
    assert tw.nabla(v) == tw.ctx.twist_tensor(cl.nabla(v))


@settings(max_examples=25)
@given(one_forms())
def test_torsion_naturality(v):
    cl, tw = geometries(3)
    assert tw.torsion(v) == tw.ctx.twist_tensor(cl.torsion(v))


@settings(max_examples=20)
@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 7))
def test_sigma_naturality(i, j, a):
    t = basis((i,), (j,), coeff=X[a])
    classical = FormTensor(RING, {((j,), (i,)): t.coefficient((i,), (j,))})
    assert CTX.sigma_F(CTX.twist_tensor(t)) == CTX.twist_tensor(classical)


@settings(max_examples=15)
@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 7))
def test_nabla_tensor_naturality(i, j, a):
    cl, tw = geometries(3)
    t = basis((i,), (j,), coeff=X[a])
    lhs = tw.nabla_tensor(CTX.twist_tensor(t))
    assert lhs == CTX.twist_tensor(cl.nabla_tensor(t), RIGHT3)


# -- S^7 results -----------------------------------------------------------------

@pytest.mark.parametrize("twisted", [False, True])
def test_s7_einstein(twisted):
    geo = geometries(3)[twisted]
    assert geo.ricci() == geo.metric_tensor().scale(-3)
    assert geo.ricci_scalar() == RING.const(-21)


def test_s7_curvature_closed_form():
    cl, tw = geometries(3)
    for i in C7.indices:
        assert cl.curvature(i) == cl.curvature_closed_form(i)
        assert tw.curvature(i) == CTX.twist_tensor(cl.curvature(i))


@pytest.mark.parametrize("twisted", [False, True])
def test_s7_metric_compatibility(twisted):
    geo = geometries(3)[twisted]
    assert not geo.nabla_metric()
    assert not geo.cotorsion()
    assert not geo.metric_symmetry()
