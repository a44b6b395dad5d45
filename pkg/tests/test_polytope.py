from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from zloc.errors import EmptyPolytope, NotDelzant, PolytopeError, SchemaError, Unbounded
from zloc.polytope import (barycenter, boundary_moment, box, build_polytope, change_basis,
                           contragredient, facet_moment, hirzebruch, moment, polytope_from_json,
                           segment, simplex, translate, vertex_frames, volume)
from zloc import _linalg as la

import suite

x, y = sp.symbols("x y")

# sympy iterated-integral descriptions of the planar test polygons
REGIONS = {
    "F1": (hirzebruch, [(x, 0, 2 - y), (y, 0, 1)]),
    "P2": (lambda: simplex(2), [(y, 0, 1 - x), (x, 0, 1)]),
    "P1xP1": (suite.p1xp1, [(x, -1, 1), (y, -1, 1)]),
}


def sympy_moment(name, xi, m):
    _, limits = REGIONS[name]
    val = sp.integrate((xi[0] * x + xi[1] * y) ** m, *limits)
    return Fraction(int(sp.numer(val)), int(sp.denom(val)))


def test_segment_frames():
    P = segment()
    assert P.vertices == ((-1,), (1,))
    assert [fr.edges for fr in vertex_frames(P)] == [((1,),), ((-1,),)]


def test_simplex_frames():
    P = simplex(2)
    fr = next(f for f in P.frames if f.vertex == (1, 0))
    assert set(fr.edges) == {(-1, 0), (-1, 1)}


def test_square_frame_at_origin():
    P = box((0, 1), (0, 1))
    assert len(P.vertices) == 4
    fr = next(f for f in P.frames if f.vertex == (0, 0))
    assert set(fr.edges) == {(1, 0), (0, 1)}


def test_non_delzant_triangle():
    with pytest.raises(NotDelzant) as exc:
        build_polytope([((1, 0), 0), ((0, 1), 0), ((-1, -2), 2)])
    assert exc.value.vertex == (0, 1)
    assert abs(exc.value.determinant) == 2


def test_unbounded_and_empty():
    with pytest.raises(Unbounded):
        build_polytope([((1, 0), 0), ((0, 1), 0)])
    with pytest.raises(EmptyPolytope):
        build_polytope([((1,), -2), ((-1,), 1)])
    with pytest.raises(PolytopeError):
        build_polytope([((2,), 1), ((-1,), 1)])


def test_every_frame_unimodular():
    for make in suite.BASES.values():
        for fr in make().frames:
            assert abs(la.det(fr.edges)) == 1


def test_moment_examples():
    assert moment(segment(), (1,), 1) == 0
    assert moment(segment(), (1,), 2) == Fraction(2, 3)
    assert moment(box((0, 1), (0, 1)), (1, 0), 1) == Fraction(1, 2)


def test_boundary_and_volume_examples():
    assert boundary_moment(segment(), (5,), 0) == 2
    assert boundary_moment(box((0, 1), (0, 1)), (1, 3), 0) == 4
    F = hirzebruch()
    assert boundary_moment(F, (0, 1), 1) == 2
    assert boundary_moment(F, (0, 1), 0) == 5  # lattice lengths 2 + 1 + 1 + 1
    assert volume(segment()) == 2
    assert volume(simplex(2)) == Fraction(1, 2)
    assert volume(F) == Fraction(3, 2)
    assert barycenter(F) == (Fraction(7, 9), Fraction(4, 9))


def test_diagonal_facet_is_lattice_normalised():
    # hypotenuse of the unit simplex: one primitive segment
    P = simplex(2)
    i = next(i for i, f in enumerate(P.facets) if f.normal == (-1, -1))
    assert facet_moment(P, i, (1, 1), 0) == 1


def test_translate_examples():
    assert translate(segment(), (1,)).vertices == ((0,), (2,))
    sq = translate(box((0, 1), (0, 1)), (3, 5))
    assert set(sq.vertices) == {(3, 5), (4, 5), (3, 6), (4, 6)}
    assert moment(sq, (1, 2), 0) == 1


@pytest.mark.parametrize("name", sorted(REGIONS))
@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_moment_against_sympy(name, m):
    make, _ = REGIONS[name]
    xi = (3, -2)
    assert moment(make(), xi, m) == sympy_moment(name, xi, m)


small = st.integers(-5, 5)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(suite.BASES)), st.integers(0, 3), st.integers(-4, 4),
       st.data())
def test_moment_homogeneous(name, m, t, data):
    P = suite.BASES[name]()
    xi = tuple(data.draw(small) for _ in range(P.dim))
    assert moment(P, [t * c for c in xi], m) == t ** m * moment(P, xi, m)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["P1xP1", "F1", "P2"]), st.integers(0, 10**6), st.integers(0, 3))
def test_moment_lattice_invariance(name, seed, m):
    rng = suite.rng(seed)
    P = suite.BASES[name]()
    M = suite.random_unimodular(rng, 2)
    xi = (rng.randint(-4, 4), rng.randint(-4, 4))
    Q = change_basis(P, M)
    assert moment(Q, contragredient(M, xi), m) == moment(P, xi, m)
    assert boundary_moment(Q, contragredient(M, xi), m) == boundary_moment(P, xi, m)


@pytest.mark.parametrize("name", sorted(suite.BASES))
def test_triangulation_independence(name):
    P = suite.BASES[name]()
    for m in range(4):
        xi = tuple(range(2, 2 + P.dim))
        assert moment(P, xi, m, pull="first") == moment(P, xi, m, pull="last")
        assert boundary_moment(P, xi, m, pull="first") == boundary_moment(P, xi, m, pull="last")


def test_three_dimensional_volume():
    assert volume(simplex(3, 2)) == Fraction(8, 6)
    assert volume(box((0, 1), (0, 2), (0, 3))) == 6


def test_json_roundtrip():
    F = hirzebruch()
    assert polytope_from_json(F.to_json()) == F
    with pytest.raises(SchemaError) as exc:
        polytope_from_json({"dim": 2})
    assert exc.value.key == "facets"
