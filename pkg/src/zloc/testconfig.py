"""Product test configurations of toric manifolds.

For a polytope P, an integral direction xi and an offset c with
``f(x) = <xi, x> + c > 0`` on P, the total space is the toric (n+1)-fold with
polytope ``Q = {(x, s) : x in P, 0 <= s <= f(x)}``. The top facet ``s = f(x)``
is the central fibre X_0, the bottom facet ``s = 0`` is the fibre at infinity,
and the test-configuration circle is ``zeta = -e_{n+1}``.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import _linalg as la
from .errors import NonPositiveHeight, NotDelzant, SchemaError
from .exact import as_rational, format_rational, parse_rational
from .polytope import DelzantPolytope, build_polytope, polytope_from_json, translate

X0 = "X0"
XINF = "Xinf"


@dataclass(frozen=True, eq=False)
class ToricTestConfiguration:
    base: DelzantPolytope
    xi: tuple
    c: Fraction
    twist: int
    total: DelzantPolytope = field(repr=False)
    frames: tuple = field(repr=False)  # frames of Q with the vertical edge marked
    roles: dict = field(repr=False)

    @property
    def dim(self):
        return self.base.dim

    @property
    def height_offset(self):
        return self.c + self.twist

    @property
    def zeta(self):
        return tuple([0] * self.dim + [-1])

    def height(self, x):
        return la.dot(self.xi, x) + self.height_offset

    def frames_on(self, role):
        return [fr for fr in self.frames if self.roles[fr.vertex] == role]

    def to_json(self):
        return {"base": self.base.to_json(), "xi": list(self.xi),
                "c": format_rational(self.c), "twist": self.twist}


def product_tc(P, xi, c, twist=0):
    xi = tuple(int(x) for x in xi)
    if len(xi) != P.dim:
        raise SchemaError("xi", f"xi has length {len(xi)}, expected {P.dim}")
    c = as_rational(c)
    if twist < 0:
        raise ValueError("twist must be nonnegative")
    height = c + twist
    for v in P.vertices:
        hv = la.dot(xi, v) + height
        if hv <= 0:
            raise NonPositiveHeight(v, hv)
    n = P.dim
    facets = [(tuple(f.normal) + (0,), f.offset) for f in P.facets]
    facets.append((tuple([0] * n + [1]), Fraction(0)))
    facets.append((xi + (-1,), height))
    try:
        Q = build_polytope(facets, n + 1)
    except NotDelzant as exc:  # pragma: no cover - integral shears keep Q smooth
        raise AssertionError(f"total space unexpectedly singular: {exc}") from exc

    frames, roles = [], {}
    for fr in Q.frames:
        x, s = fr.vertex[:n], fr.vertex[n]
        if s == 0:
            roles[fr.vertex] = XINF
        elif s == la.dot(xi, x) + height:
            roles[fr.vertex] = X0
        else:  # pragma: no cover
            raise AssertionError(f"vertex {fr.vertex} lies on neither end fibre")
        vertical = [j for j, e in enumerate(fr.edges) if not any(e[:n])]
        assert len(vertical) == 1
        frames.append(replace(fr, vertical=vertical[0]))
    return ToricTestConfiguration(base=P, xi=xi, c=c, twist=twist, total=Q,
                                  frames=tuple(frames), roles=roles)


def trivial_tc(P):
    return product_tc(P, [0] * P.dim, 1)


def twist(tc, m):
    if m < 0:
        raise ValueError("twist must be nonnegative")
    if m == 0:
        return tc
    return product_tc(tc.base, tc.xi, tc.c, tc.twist + m)


def translate_tc(tc, v):
    """Same test configuration with the base moved by v (Q moves by (v, 0))."""
    v = [as_rational(x) for x in v]
    return product_tc(translate(tc.base, v), tc.xi, tc.c - la.dot(tc.xi, v), tc.twist)


@dataclass(frozen=True)
class CentralFibre:
    """Central fibre with its induced circle action.

    ``hamiltonian(v) = <direction, v> + lift_constant`` and the weights at a
    vertex are ``<e_k, direction>`` for the base edges e_k.
    """

    polytope: DelzantPolytope
    direction: tuple
    lift_constant: Fraction

    def hamiltonian(self, v):
        return la.dot(self.direction, v) + self.lift_constant

    def weights(self, frame):
        return tuple(la.dot(e, self.direction) for e in frame.edges)


def central_fibre(tc):
    """Identify X_0 with the base through the top facet.

    Top vertices (v, f(v)) project to the vertices of P, and the top facet's
    horizontal edges (e_k, <xi, e_k>) project to P's edges, so zeta acts on
    X_0 as -xi with hamiltonian -f.
    """
    n = tc.dim
    zeta = tc.zeta
    top = tc.frames_on(X0)
    proj = sorted(fr.vertex[:n] for fr in top)
    if proj != sorted(tc.base.vertices):  # pragma: no cover
        raise AssertionError("top facet does not project onto the base polytope")
    direction = tuple(-x for x in tc.xi)
    for fr in top:
        h = la.dot(fr.vertex, zeta)
        assert h == -tc.height(fr.vertex[:n])
    return CentralFibre(polytope=tc.base, direction=direction, lift_constant=-tc.height_offset)


def tc_from_json(obj):
    if not isinstance(obj, dict):
        raise SchemaError("test_configuration", "test configuration must be an object")
    for key in ("base", "xi", "c"):
        if key not in obj:
            raise SchemaError(key)
    base = polytope_from_json(obj["base"])
    xi = obj["xi"]
    if not isinstance(xi, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in xi):
        raise SchemaError("xi", "xi must be a list of integers")
    c = parse_rational(obj["c"], field="c")
    tw = obj.get("twist", 0)
    if not isinstance(tw, int) or tw < 0:
        raise SchemaError("twist", "twist must be a nonnegative integer")
    return product_tc(base, xi, c, tw)
