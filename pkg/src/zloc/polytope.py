"""Delzant polytopes: validation, vertex frames and exact polytope integrals.

A polytope is given by facets ``<normal, x> + offset >= 0`` with primitive
inward integer normals. Vertices are derived from the facets. Interior and
boundary moments are computed by pulling triangulations and the closed form
for integrating a power of a linear form over a simplex; they serve as the
Duistermaat-Heckman side of every localisation check.
"""

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import _linalg as la
from .errors import EmptyPolytope, NotDelzant, PolytopeError, SchemaError, Unbounded
from .exact import as_rational, format_rational, parse_rational


@dataclass(frozen=True)
class Facet:
    normal: tuple
    offset: Fraction

    def value(self, x):
        return la.dot(self.normal, x) + self.offset


@dataclass(frozen=True)
class VertexFrame:
    """Vertex plus its primitive inward edges.

    ``edges[j]`` is the edge leaving facet ``facets[j]``. ``vertical`` marks the
    edge transverse to the fibres when the frame belongs to a test
    configuration total space.
    """

    vertex: tuple
    edges: tuple
    facets: tuple
    vertical: int | None = None


@dataclass(frozen=True, eq=False)
class DelzantPolytope:
    dim: int
    facets: tuple
    vertices: tuple
    tight: tuple  # tight[i]: facet indices through vertices[i], sorted
    frames: tuple = field(repr=False)

    def __eq__(self, other):
        if not isinstance(other, DelzantPolytope):
            return NotImplemented
        return self.dim == other.dim and set(self.facets) == set(other.facets)

    def __hash__(self):
        return hash((self.dim, frozenset(self.facets)))

    def contains(self, x):
        return all(f.value(x) >= 0 for f in self.facets)

    def face_vertices(self, facet_set):
        s = set(facet_set)
        return [i for i, t in enumerate(self.tight) if s.issubset(t)]

    def to_json(self):
        return {
            "dim": self.dim,
            "facets": [
                {"normal": list(f.normal), "offset": format_rational(f.offset)}
                for f in self.facets
            ],
        }

    @classmethod
    def from_json(cls, obj):
        return polytope_from_json(obj)


def _check_normal(normal, dim):
    if len(normal) != dim:
        raise PolytopeError(f"normal {normal} has length {len(normal)}, expected {dim}")
    for c in normal:
        if isinstance(c, bool) or not isinstance(c, int):
            if isinstance(c, Fraction) and c.denominator == 1:
                continue
            raise PolytopeError(f"normal {normal} is not an integer vector")
    g = 0
    for c in normal:
        g = math.gcd(g, int(c))
    if g != 1:
        raise PolytopeError(f"normal {tuple(normal)} is not primitive")


def build_polytope(facets, dim=None):
    """Validate a facet presentation and return the Delzant polytope.

    ``facets`` is an iterable of ``(normal, offset)`` pairs or Facet objects.
    Raises Empty/Unbounded/NotDelzant as appropriate.
    """
    fs = []
    for f in facets:
        if isinstance(f, Facet):
            normal, offset = f.normal, f.offset
        else:
            normal, offset = f
        fs.append((tuple(normal), as_rational(offset)))
    if not fs:
        raise EmptyPolytope("no facets")
    if dim is None:
        dim = len(fs[0][0])
    for normal, _ in fs:
        _check_normal(normal, dim)
    facets = tuple(Facet(tuple(int(c) for c in n), o) for n, o in fs)
    if len(set(facets)) != len(facets):
        raise PolytopeError("duplicate facet")

    normals = [f.normal for f in facets]
    if la.rank([[Fraction(c) for c in n] for n in normals]) < dim:
        raise Unbounded("facet normals do not span; the polyhedron contains a line")

    found = {}
    for subset in itertools.combinations(range(len(facets)), dim):
        rows = [normals[i] for i in subset]
        x = la.solve(rows, [-facets[i].offset for i in subset])
        if x is None:
            continue
        x = tuple(x)
        if x in found:
            continue
        if all(f.value(x) >= 0 for f in facets):
            found[x] = tuple(i for i, f in enumerate(facets) if f.value(x) == 0)
    if not found:
        raise EmptyPolytope("facet inequalities have no common vertex")

    vertices = sorted(found)
    for v in vertices:
        t = found[v]
        if len(t) != dim:
            continue
        for d in la.transpose(la.inverse([normals[i] for i in t])):
            if not any(la.dot(normals[k], d) < 0 for k in range(len(facets)) if k not in t):
                raise Unbounded(f"unbounded edge {tuple(d)} at vertex {v}")
    if la.affine_rank(vertices) < dim:
        raise EmptyPolytope("polytope has empty interior")
    tight = tuple(found[v] for v in vertices)

    for i, f in enumerate(facets):
        if sum(1 for t in tight if i in t) < dim:
            raise PolytopeError(f"facet {i} {f.normal} does not support a facet of P")

    frames = []
    for v, t in zip(vertices, tight):
        if len(t) != dim:
            raise NotDelzant(v, 0, f"vertex {tuple(str(c) for c in v)} is not simple "
                                   f"({len(t)} facets meet there)")
        inv = la.inverse([normals[i] for i in t])
        dirs = la.transpose(inv)  # dirs[j] leaves facet t[j]
        edges = []
        for d in dirs:
            edges.append(la.primitive(d))
        dt = la.det(edges)
        if abs(dt) != 1:
            raise NotDelzant(v, dt)
        frames.append(VertexFrame(vertex=v, edges=tuple(edges), facets=t))

    return DelzantPolytope(dim=dim, facets=facets, vertices=tuple(vertices),
                           tight=tight, frames=tuple(frames))


def vertex_frames(P):
    return list(P.frames)


def translate(P, v):
    v = [as_rational(c) for c in v]
    return build_polytope([(f.normal, f.offset - la.dot(f.normal, v)) for f in P.facets], P.dim)


def change_basis(P, M):
    """Image of P under the unimodular lattice map x -> M x."""
    if abs(la.det(M)) != 1:
        raise ValueError("change of basis must be unimodular")
    inv = la.inverse(M)
    # <u, x> = <M^{-T} u, M x>
    new = []
    for f in P.facets:
        u = la.matvec(la.transpose(inv), f.normal)
        new.append((tuple(int(c) for c in u), f.offset))
    return build_polytope(new, P.dim)


def contragredient(M, xi):
    """Parameter vector paired with x as xi was, after x -> M x."""
    return tuple(la.matvec(la.transpose(la.inverse(M)), [as_rational(c) for c in xi]))


# -- triangulation ---------------------------------------------------------

def triangulate(P, pull="first", facet_set=()):
    """Pulling triangulation of the face cut out by ``facet_set``.

    Returns a list of simplices, each a tuple of vertex indices. ``pull``
    chooses the apex at every level: the first or the last vertex index.
    """
    cache = {}

    def rec(S):
        if S in cache:
            return cache[S]
        verts = P.face_vertices(S)
        if len(S) == P.dim:
            out = [(verts[0],)]
        else:
            apex = verts[0] if pull == "first" else verts[-1]
            out = []
            for i in range(len(P.facets)):
                if i in S or i in P.tight[apex]:
                    continue
                sub = frozenset(S | {i})
                if not P.face_vertices(sub):
                    continue
                for simplex in rec(sub):
                    out.append((apex,) + simplex)
        cache[S] = out
        return out

    return rec(frozenset(facet_set))


def _complete_homogeneous(values, m):
    # h_m(values) via the product of 1/(1 - a t)
    h = [Fraction(0)] * (m + 1)
    h[0] = Fraction(1)
    for a in values:
        for k in range(1, m + 1):
            h[k] += a * h[k - 1]
    return h[m]


def _simplex_power_integral(values, volume, m):
    """Integral of l^m over a d-simplex with vertex values ``values`` of l."""
    d = len(values) - 1
    return volume * Fraction(math.factorial(m) * math.factorial(d),
                             math.factorial(m + d)) * _complete_homogeneous(values, m)


def _simplex_volume(points):
    d = len(points) - 1
    rows = [[a - b for a, b in zip(p, points[0])] for p in points[1:]]
    return abs(la.det(rows)) / math.factorial(d)


def moment(P, xi, m, pull="first"):
    """Exact integral over P of <x, xi>^m against Lebesgue measure."""
    xi = [as_rational(c) for c in xi]
    total = Fraction(0)
    for simplex in triangulate(P, pull):
        pts = [P.vertices[i] for i in simplex]
        vals = [la.dot(p, xi) for p in pts]
        total += _simplex_power_integral(vals, _simplex_volume(pts), m)
    return total


def volume(P, pull="first"):
    return sum((_simplex_volume([P.vertices[i] for i in s]) for s in triangulate(P, pull)),
               Fraction(0))


def facet_moment(P, facet_index, xi, m, pull="first"):
    """Integral over one facet with the lattice-normalised measure.

    Dropping a coordinate j with u_j != 0 projects the facet lattice onto a
    sublattice of index |u_j|, so the lattice measure is the projected
    Lebesgue measure divided by |u_j|.
    """
    xi = [as_rational(c) for c in xi]
    u = P.facets[facet_index].normal
    j = next(k for k, c in enumerate(u) if c != 0)
    total = Fraction(0)
    for simplex in triangulate(P, pull, facet_set=(facet_index,)):
        pts = [P.vertices[i] for i in simplex]
        proj = [tuple(c for k, c in enumerate(p) if k != j) for p in pts]
        vol = _simplex_volume(proj) / abs(u[j])
        vals = [la.dot(p, xi) for p in pts]
        total += _simplex_power_integral(vals, vol, m)
    return total


def boundary_moment(P, xi, m, pull="first"):
    """Integral over the boundary of <x, xi>^m, lattice-normalised per facet."""
    return sum((facet_moment(P, i, xi, m, pull) for i in range(len(P.facets))),
               Fraction(0))


def barycenter(P):
    vol = volume(P)
    n = P.dim
    return tuple(moment(P, [int(i == j) for i in range(n)], 1) / vol for j in range(n))


# -- serialisation -----------------------------------------------------------

def polytope_from_json(obj):
    if not isinstance(obj, dict):
        raise SchemaError("polytope", "polytope must be an object")
    if "facets" not in obj:
        raise SchemaError("facets")
    facets = obj["facets"]
    if not isinstance(facets, list) or not facets:
        raise SchemaError("facets", "facets must be a nonempty list")
    parsed = []
    for i, f in enumerate(facets):
        if not isinstance(f, dict) or "normal" not in f:
            raise SchemaError("normal", f"facet {i} lacks 'normal'")
        if "offset" not in f:
            raise SchemaError("offset", f"facet {i} lacks 'offset'")
        normal = f["normal"]
        if not isinstance(normal, list) or not all(
                isinstance(c, int) and not isinstance(c, bool) for c in normal):
            raise SchemaError("normal", f"facet {i} normal must be a list of integers")
        parsed.append((tuple(normal), parse_rational(f["offset"], field=f"facets[{i}].offset")))
    dim = obj.get("dim", len(parsed[0][0]))
    if not isinstance(dim, int) or dim < 1:
        raise SchemaError("dim", "dim must be a positive integer")
    return build_polytope(parsed, dim)


# -- standard examples -----------------------------------------------------

def segment(a=-1, b=1):
    return build_polytope([((1,), -as_rational(a)), ((-1,), as_rational(b))])


def box(*sides):
    """Product of segments; ``box((-1, 1), (-1, 1))`` is the P1 x P1 polytope."""
    n = len(sides)
    fs = []
    for i, (a, b) in enumerate(sides):
        e = [0] * n
        e[i] = 1
        fs.append((tuple(e), -as_rational(a)))
        fs.append((tuple(-c for c in e), as_rational(b)))
    return build_polytope(fs, n)


def simplex(n, scale=1):
    fs = [(tuple(int(i == j) for i in range(n)), 0) for j in range(n)]
    fs.append((tuple([-1] * n), as_rational(scale)))
    return build_polytope(fs, n)


def hirzebruch(a=1, width=2, height=1):
    """Polytope of the Hirzebruch surface F_a: (0,0),(w,0),(w-a h,h),(0,h)."""
    return build_polytope([
        ((1, 0), 0),
        ((0, 1), 0),
        ((0, -1), as_rational(height)),
        ((-1, -a), as_rational(width)),
    ])
