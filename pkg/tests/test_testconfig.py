from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zloc import _linalg as la
from zloc.errors import NonPositiveHeight, SchemaError
from zloc.polytope import segment, volume
from zloc.testconfig import (X0, XINF, central_fibre, product_tc, tc_from_json, translate_tc,
                             trivial_tc, twist)

import suite


def test_p1_total_space():
    tc = product_tc(segment(), (1,), 2)
    assert set(tc.total.vertices) == {(-1, 0), (1, 0), (-1, 1), (1, 3)}
    assert {fr.vertex for fr in tc.frames_on(X0)} == {(-1, 1), (1, 3)}


def test_trivial_is_unit_box():
    tc = trivial_tc(segment())
    assert set(tc.total.vertices) == {(-1, 0), (1, 0), (-1, 1), (1, 1)}


def test_height_must_be_positive():
    with pytest.raises(NonPositiveHeight) as exc:
        product_tc(segment(), (1,), 1)
    assert exc.value.vertex == (-1,)


def test_twist():
    tc = trivial_tc(segment())
    assert set(twist(tc, 1).total.vertices) == {(-1, 0), (1, 0), (-1, 2), (1, 2)}
    assert twist(tc, 0) is tc
    for name, t in suite.suite_tcs():
        assert len(twist(t, 2).total.vertices) == len(t.total.vertices)


@pytest.mark.parametrize("name, tc", suite.suite_tcs())
def test_structure(name, tc):
    zeta = tc.zeta
    for fr in tc.frames:
        h = la.dot(fr.vertex, zeta)
        vert = la.dot(fr.edges[fr.vertical], zeta)
        if tc.roles[fr.vertex] == XINF:
            assert h == 0 and vert == -1
        else:
            assert h == -tc.height(fr.vertex[:tc.dim]) and vert == 1
    assert len(tc.frames_on(X0)) == len(tc.frames_on(XINF)) == len(tc.base.vertices)


@pytest.mark.parametrize("name, tc", suite.suite_tcs())
def test_total_volume(name, tc):
    from zloc.polytope import moment
    assert volume(tc.total) == moment(tc.base, tc.xi, 1) + tc.height_offset * volume(tc.base)


def test_central_fibre_p1():
    cf = central_fibre(product_tc(segment(), (1,), 2))
    assert cf.polytope == segment()
    assert cf.hamiltonian((-1,)) == -1 and cf.hamiltonian((1,)) == -3
    assert [cf.weights(fr) for fr in segment().frames] == [(-1,), (1,)]


def test_central_fibre_trivial():
    cf = central_fibre(trivial_tc(suite.f1()))
    assert all(w == 0 for fr in cf.polytope.frames for w in cf.weights(fr))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 3), st.integers(-3, 3), st.integers(1, 4))
def test_twist_commutes_with_translate(m, a, b):
    tc = product_tc(suite.f1(), (1, -1), 2)
    v = (Fraction(a, b), Fraction(b, 3))
    lhs = twist(translate_tc(tc, v), m)
    rhs = translate_tc(twist(tc, m), v)
    assert lhs.total == rhs.total and lhs.height_offset == rhs.height_offset


def test_json():
    tc = product_tc(suite.f1(), (0, 1), 1)
    back = tc_from_json(tc.to_json())
    assert back.total == tc.total
    with pytest.raises(SchemaError):
        tc_from_json({"base": tc.base.to_json(), "c": 1})
