from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from twistlab.forms import FormTensor, leg_degree, wedge
from twistlab.graded import sphere_ring

RING = sphere_ring(2)
X = RING.gens()


@st.composite
def one_forms(draw):
    t = FormTensor(RING)
    for _ in range(draw(st.integers(0, 3))):
        i = draw(st.integers(1, 3))
        t.add_term(((i,),), X[draw(st.integers(0, 3))].scale(draw(st.integers(-2, 2))))
    return t


def test_leg_degree_is_xor():
    assert leg_degree((1, 2)) == 3
    assert leg_degree((1, 2, 3)) == 0
    assert leg_degree(()) == 0


def test_cancellation_drops_terms():
    t = FormTensor.basis(RING, (1,), coeff=X[2])
    assert not (t - t)
    assert (t - t).terms == {}


def test_homogeneous_terms_split_coefficients():
    t = FormTensor.basis(RING, (1,), coeff=X[0] + X[3])
    parts = sorted((legs, e) for legs, e, _ in t.homogeneous_terms())
    assert parts == [(((1,),), 0), (((1,),), 3)]
    assert set(t.components()) == {1, 2}


@given(one_forms(), one_forms())
def test_wedge_graded_commutative(a, b):
    assert wedge(a, b) == -wedge(b, a)


@given(one_forms())
def test_wedge_square_zero(a):
    assert not wedge(a, a)


@given(one_forms(), one_forms())
def test_lmul_distributes(a, b):
    assert (a + b).lmul(X[1]) == a.lmul(X[1]) + b.lmul(X[1])
