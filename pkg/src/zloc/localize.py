"""Atiyah-Bott localisation on toric data.

Equivariant integrands are polynomials in three symbols:

* ``A`` the Kaehler class with hamiltonian lift, restricting to ``-h`` at a
  fixed point,
* ``C`` the first Chern class with its Laplacian lift, restricting to the sum
  of the tangent weights,
* ``R`` the pulled-back Chern class of the base P^1 of a test configuration,
  restricting to the weight of the vertical edge.

The equivariant Euler class at a vertex is ``prod(-w_k)`` and the sum is
prefixed by ``(-1)^d``; the remaining ``(2 pi)^d`` is carried symbolically in
``LocalizedValue``.
"""

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg as la
from .errors import LengthMismatch, MissingFibreData, NonGenericParameter
from .exact import GaussianRational, as_rational, binomial


@dataclass(frozen=True)
class LocalizedValue:
    """``value * (2 pi)^two_pi_power``, exactly."""

    value: GaussianRational
    two_pi_power: int

    def __post_init__(self):
        object.__setattr__(self, "value", GaussianRational.coerce(self.value))

    @property
    def rational(self):
        """Real part as a Fraction; raises if the value is not real."""
        if not self.value.is_real:
            raise ValueError(f"{self.value} is not real")
        return self.value.re

    def _same_power(self, other):
        if self.value == 0:
            return other.two_pi_power
        if other.value == 0:
            return self.two_pi_power
        if self.two_pi_power != other.two_pi_power:
            raise ValueError(
                f"cannot add (2pi)^{self.two_pi_power} and (2pi)^{other.two_pi_power} terms")
        return self.two_pi_power

    def __add__(self, other):
        if not isinstance(other, LocalizedValue):
            return NotImplemented
        return LocalizedValue(self.value + other.value, self._same_power(other))

    def __sub__(self, other):
        if not isinstance(other, LocalizedValue):
            return NotImplemented
        return LocalizedValue(self.value - other.value, self._same_power(other))

    def __neg__(self):
        return LocalizedValue(-self.value, self.two_pi_power)

    def __mul__(self, other):
        if isinstance(other, LocalizedValue):
            return LocalizedValue(self.value * other.value,
                                  self.two_pi_power + other.two_pi_power)
        try:
            s = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return LocalizedValue(self.value * s, self.two_pi_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LocalizedValue):
            return LocalizedValue(self.value / other.value,
                                  self.two_pi_power - other.two_pi_power)
        return LocalizedValue(self.value / GaussianRational.coerce(other), self.two_pi_power)

    def __eq__(self, other):
        if not isinstance(other, LocalizedValue):
            return NotImplemented
        if self.value == 0 and other.value == 0:
            return True
        return self.value == other.value and self.two_pi_power == other.two_pi_power

    def __hash__(self):
        return hash((self.value, self.two_pi_power if self.value else 0))

    def __str__(self):
        v = self.value
        text = str(v) if v.is_real or v.re == 0 else f"({v})"
        return f"{text} · (2π)^{self.two_pi_power}"


class Integrand:
    """Polynomial in the equivariant symbols A, C, R over Q(i).

    ``dim`` is the complex dimension of the space the integrand lives on.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim, terms=None):
        self.dim = dim
        clean = {}
        for exps, coeff in (terms or {}).items():
            coeff = GaussianRational.coerce(coeff)
            if coeff:
                clean[tuple(exps)] = coeff
        self.terms = clean

    @classmethod
    def monomial(cls, dim, a=0, c=0, r=0, coeff=1):
        return cls(dim, {(a, c, r): coeff})

    @property
    def max_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    @property
    def is_pure_degree(self):
        return bool(self.terms) and all(sum(e) == self.dim for e in self.terms)

    def uses_r(self):
        return any(e[2] for e in self.terms)

    def degree_part(self, d):
        return Integrand(self.dim, {e: c for e, c in self.terms.items() if sum(e) == d})

    def _coerce(self, other):
        if isinstance(other, Integrand):
            if other.dim != self.dim:
                raise LengthMismatch(f"integrand dims differ: {self.dim} vs {other.dim}")
            return other
        return Integrand(self.dim, {(0, 0, 0): GaussianRational.coerce(other)})

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            terms[e] = terms.get(e, GaussianRational(0)) + c
        return Integrand(self.dim, terms)

    __radd__ = __add__

    def __neg__(self):
        return Integrand(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                terms[e] = terms.get(e, GaussianRational(0)) + c1 * c2
        return Integrand(self.dim, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Integrand(self.dim, {(0, 0, 0): 1})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Integrand):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __repr__(self):
        parts = [f"({c})*A^{a}C^{b}R^{r}" for (a, b, r), c in sorted(self.terms.items())]
        return f"Integrand(dim={self.dim}: {' + '.join(parts) or '0'})"


def A(dim):
    return Integrand.monomial(dim, a=1)


def C(dim):
    return Integrand.monomial(dim, c=1)


def R(dim):
    return Integrand.monomial(dim, r=1)


@dataclass(frozen=True)
class FixedPointDatum:
    vertex: tuple
    hamiltonian: Fraction
    weights: tuple
    crel_correction: Fraction | None = None


def fixed_point_data(frames, xi, lift_shift=0):
    """Per-vertex hamiltonian ``<v, xi> + lift_shift`` and weights ``<e_k, xi>``."""
    xi = [as_rational(c) for c in xi]
    shift = as_rational(lift_shift)
    out = []
    for fr in frames:
        if len(xi) != len(fr.vertex):
            raise LengthMismatch(f"parameter has length {len(xi)}, vertices {len(fr.vertex)}")
        weights = []
        for e in fr.edges:
            w = la.dot(e, xi)
            if w == 0:
                raise NonGenericParameter(fr.vertex, e)
            weights.append(w)
        crel = weights[fr.vertical] if fr.vertical is not None else None
        out.append(FixedPointDatum(vertex=fr.vertex,
                                   hamiltonian=la.dot(fr.vertex, xi) + shift,
                                   weights=tuple(weights), crel_correction=crel))
    return out


def restrict_integrand(fp, integrand):
    """Restriction of ``integrand`` to the fixed point, and the Euler factor."""
    a_val = -fp.hamiltonian
    c_val = sum(fp.weights, Fraction(0))
    r_val = fp.crel_correction
    if integrand.uses_r() and r_val is None:
        raise MissingFibreData(f"integrand uses R but vertex {fp.vertex} has no fibre data")
    num = GaussianRational(0)
    for (a, c, r), coeff in integrand.terms.items():
        term = a_val ** a * c_val ** c
        if r:
            term *= r_val ** r
        num = num + coeff * term
    euler = Fraction(1)
    for w in fp.weights:
        euler *= -w
    return num, euler


def localize_sum(frames, xi, integrand, lift_shift=0):
    """Atiyah-Bott sum; ``xi`` must pair nonzero with every edge."""
    frames = list(frames)
    d = integrand.dim
    for fr in frames:
        if len(fr.edges) != d:
            raise LengthMismatch(f"integrand dim {d} but frame has {len(fr.edges)} edges")
    total = GaussianRational(0)
    for fp in fixed_point_data(frames, xi, lift_shift):
        num, euler = restrict_integrand(fp, integrand)
        total = total + num / euler
    if d % 2:
        total = -total
    return LocalizedValue(total, d)


def is_generic(frames, xi):
    xi = [as_rational(c) for c in xi]
    return all(la.dot(e, xi) != 0 for fr in frames for e in fr.edges)


def generic_parameter(frames, seed=0):
    """Deterministic integer vector pairing nonzero with every edge."""
    frames = list(frames)
    n = len(frames[0].vertex)
    rng = random.Random(seed)
    bound = 3
    while True:
        for _ in range(64):
            xi = tuple(rng.randint(-bound, bound) for _ in range(n))
            if any(xi) and is_generic(frames, xi):
                return xi
        bound *= 2


def equivariant_integral(frames, xi, integrand, lift_shift=0, seed=0):
    """Equivariant integral at any parameter, generic or not.

    The integral is a polynomial in the parameter of degree at most
    ``max_degree - dim``; for a non-generic ``xi`` it is recovered exactly by
    Lagrange interpolation along ``xi + t*eta`` for generic ``eta``.
    """
    frames = list(frames)
    xi = [as_rational(c) for c in xi]
    d = integrand.dim
    deg = integrand.max_degree - d
    if deg < 0:
        return LocalizedValue(GaussianRational(0), d)
    if is_generic(frames, xi):
        return localize_sum(frames, xi, integrand, lift_shift)
    eta = generic_parameter(frames, seed)
    nodes = []
    t = 1
    while len(nodes) < deg + 1:
        p = [x + t * e for x, e in zip(xi, eta)]
        if is_generic(frames, p):
            nodes.append((Fraction(t), localize_sum(frames, p, integrand, lift_shift).value))
        t += 1
    total = GaussianRational(0)
    for i, (ti, vi) in enumerate(nodes):
        basis = Fraction(1)
        for j, (tj, _) in enumerate(nodes):
            if j != i:
                basis *= (0 - tj) / (ti - tj)
        total = total + vi * basis
    return LocalizedValue(total, d)


def dh_bridge_value(n, m, moment_value):
    """Right-hand side of the Duistermaat-Heckman identity for A^(n+m)."""
    return LocalizedValue((-1) ** m * binomial(n + m, m) * math.factorial(n) * moment_value, n)
