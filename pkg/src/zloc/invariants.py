"""Futaki, Donaldson-Futaki, test-configuration charges and their
Z-critical counterparts, all as exact localisation sums.

Phases are never taken: wherever an invariant involves Im(exp(-i phi) x),
the code computes Im(conj(Z(X, alpha)) x), which is |Z| times it and has the
same sign and zero set.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import _linalg as la
from .charge import charge_value
from .errors import LengthMismatch, ZeroCentralCharge, ZeroVolume
from .exact import GaussianRational, format_rational, imag_of_product, parse_rational, sign
from .localize import (A, C, R, Integrand, LocalizedValue, equivariant_integral,
                       generic_parameter, localize_sum)
from .polytope import VertexFrame, barycenter
from .testconfig import X0, XINF, central_fibre


def _pure(frames, integrand, seed):
    xi = generic_parameter(frames, seed)
    return localize_sum(frames, xi, integrand)


def intersection_numbers(P, seed=0):
    """``[∫ alpha^l c1^(n-l) for l in 0..n]`` as rationals at (2 pi)^n."""
    n = P.dim
    return [_pure(P.frames, A(n) ** l * C(n) ** (n - l), seed).rational for l in range(n + 1)]


def futaki(P, xi, seed=0):
    """-(1/n) [(omega - h)^n] . [Ric + Lap h] with the barycentred hamiltonian."""
    n = P.dim
    if not any(xi):
        raise ValueError("futaki needs a nonzero direction")
    shift = -la.dot(barycenter(P), xi)
    val = equivariant_integral(P.frames, xi, A(n) ** n * C(n), lift_shift=shift, seed=seed)
    return val * Fraction(-1, n)


def _mu(P, seed=0):
    nums = intersection_numbers(P, seed)
    n = P.dim
    if nums[n] == 0:
        raise ZeroVolume("alpha^n vanishes")
    return nums[n - 1] / nums[n]


def relative_c1(dim):
    """c1(X) - pi^* c1(P^1) on a test-configuration total space."""
    return C(dim) - R(dim)


def donaldson_futaki(tc, seed=0):
    n = tc.dim
    mu = _mu(tc.base, seed)
    d = n + 1
    integrand = Fraction(n, n + 1) * mu * A(d) ** d - relative_c1(d) * A(d) ** n
    return _pure(tc.frames, integrand, seed)


def mu_table(P, Z, seed=0):
    """mu_{k,l} = (alpha^l c1^k Theta) / alpha^n."""
    n = P.dim
    if Z.dim != n:
        raise LengthMismatch(f"polytope dim {n} but charge dim {Z.dim}")
    nums = intersection_numbers(P, seed)
    if nums[n] == 0:
        raise ZeroVolume("alpha^n vanishes")
    zero = GaussianRational(0)
    table = []
    for k in range(n + 1):
        row = []
        for l in range(n + 1):
            p = n - k - l
            row.append(Z.theta[p] * (nums[l] / nums[n]) if p >= 0 else zero)
        table.append(tuple(row))
    return tuple(table)


def _df_kl_integrand(Z, k, l):
    n = Z.dim
    d = n + 1
    return Z.theta[n - k - l] * A(d) ** (l + 1) * relative_c1(d) ** (n - l)


def z_tc(tc, Z, seed=0):
    """Z(X, A) = sum a_kl/(l+1) DF_{k,l,Theta}."""
    n = tc.dim
    if Z.dim != n:
        raise LengthMismatch(f"test configuration dim {n} but charge dim {Z.dim}")
    integrand = Integrand(n + 1)
    for (k, l), a in Z.nonzero_entries().items():
        integrand = integrand + (a / (l + 1)) * _df_kl_integrand(Z, k, l)
    value = _pure(tc.frames, integrand, seed)
    return LocalizedValue(value.value, n + 1)


def df_hat_table(tc, Z, seed=0):
    """DF-hat_{k,l} for every coefficient that can contribute."""
    n = tc.dim
    d = n + 1
    mu = mu_table(tc.base, Z, seed)
    out = {}
    for (k, l) in Z.nonzero_entries():
        integrand = (_df_kl_integrand(Z, k, l)
                     - Fraction(l + 1, n + 1) * mu[k][l] * A(d) ** d)
        val = _pure(tc.frames, integrand, seed)
        out[(k, l)] = LocalizedValue(val.value, d)
    return out


def z_hat(tc, Z, seed=0):
    """Z(X, A) - A^(n+1) Z(X, alpha) / ((n+1) alpha^n), via the DF-hat expansion."""
    table = df_hat_table(tc, Z, seed)
    total = LocalizedValue(GaussianRational(0), tc.dim + 1)
    for (k, l), v in table.items():
        total = total + v * (Z.akl[k][l] / (l + 1))
    return total


def z_hat_direct(tc, Z, seed=0):
    """Same quantity straight from its definition, without the (k, l) split."""
    n = tc.dim
    d = n + 1
    ztc = z_tc(tc, Z, seed)
    top = _pure(tc.frames, A(d) ** d, seed).rational
    vol = intersection_numbers(tc.base, seed)[n]
    zx = charge_value(Z, tc.base, seed)
    return ztc - LocalizedValue(zx.value * (top / ((n + 1) * vol)), d)


def _verdict(s):
    return {1: "positive", 0: "zero", -1: "negative"}[sign(s)]


def stability_indicator(tc, Z, seed=0):
    """Exact sigma = Im(conj Z(X, alpha) * Z-hat(X, A)), at (2 pi)^(2n+1)."""
    z = charge_value(Z, tc.base, seed)
    if not z.value:
        raise ZeroCentralCharge("Z(X, alpha) = 0: the phase is undefined")
    zh = z_hat(tc, Z, seed)
    sigma = imag_of_product(z.value, zh.value)
    return sigma, _verdict(sigma)


def fz_hat(P, xi, Z, lift_shift=0, seed=0):
    """Normalised Z-critical Futaki invariant, times |Z(X, alpha)|.

    Returns ``(tau, breakdown)`` where ``breakdown[(k, l)]`` is the
    equivariant pairing at ``xi`` of
    ``theta A^(l+1) C^(n-l) - (l+1)/(n+1) mu_kl A^(n+1)`` and
    ``tau = -sum Im(conj(Z) a_kl breakdown[(k, l)]) / (l + 1)``
    at bookkeeping power (2 pi)^(2n).
    """
    n = P.dim
    if Z.dim != n:
        raise LengthMismatch(f"polytope dim {n} but charge dim {Z.dim}")
    if not any(xi):
        raise ValueError("fz_hat needs a nonzero direction")
    z = charge_value(Z, P, seed)
    if not z.value:
        raise ZeroCentralCharge("Z(X, alpha) = 0: the phase is undefined")
    mu = mu_table(P, Z, seed)
    breakdown = {}
    tau = Fraction(0)
    for (k, l), a in Z.nonzero_entries().items():
        integrand = (Z.theta[n - k - l] * A(n) ** (l + 1) * C(n) ** (n - l)
                     - Fraction(l + 1, n + 1) * mu[k][l] * A(n) ** (n + 1))
        e = equivariant_integral(P.frames, xi, integrand, lift_shift=lift_shift, seed=seed)
        breakdown[(k, l)] = e
        tau -= imag_of_product(z.value, a * e.value) / (l + 1)
    return tau, breakdown


def theorem_residual(tc, Z, seed=0):
    """sigma(X, A) + tau(X_0, V_0): zero when the central-fibre identity holds."""
    sigma, _ = stability_indicator(tc, Z, seed)
    cf = central_fibre(tc)
    tau, _ = fz_hat(cf.polytope, cf.direction, Z, lift_shift=cf.lift_constant, seed=seed)
    return sigma + tau


def df_futaki_ratio(tc, seed=0):
    """DF / (pi F(X_0)(V_0)) as an exact rational, or None when F vanishes.

    DF carries (2 pi)^(n+1) and F carries (2 pi)^n, so the ratio is
    2 DF_rat / F_rat.
    """
    df = donaldson_futaki(tc, seed).rational
    cf = central_fibre(tc)
    f = futaki(cf.polytope, cf.direction, seed).rational
    if f == 0:
        return None
    return 2 * df / f


# -- fibre at infinity -------------------------------------------------------

def _bottom_facet_data(tc, lift_shift):
    n = tc.dim
    zeta = tc.zeta
    frames, hams, consts, eulers = [], [], [], []
    for fr in tc.frames_on(XINF):
        horiz = [e for j, e in enumerate(fr.edges) if j != fr.vertical]
        vert = fr.edges[fr.vertical]
        hams.append(la.dot(fr.vertex, zeta) + lift_shift)
        consts.append(sum(la.dot(e, zeta) for e in horiz))
        eulers.append(-la.dot(vert, zeta))
        frames.append(VertexFrame(vertex=fr.vertex[:n], edges=tuple(e[:n] for e in horiz),
                                  facets=fr.facets))
    # zeta fixes the bottom facet pointwise, so all restrictions are constant on it
    assert len(set(hams)) == 1 and len(set(consts)) == 1 and len(set(eulers)) == 1
    return frames, hams[0], consts[0], eulers[0]


def bottom_hamiltonian(tc):
    """Values of the zeta-hamiltonian on the fibre at infinity (all zero)."""
    return [la.dot(fr.vertex, tc.zeta) for fr in tc.frames_on(XINF)]


def vertical_pairings(tc):
    """zeta-weights of the vertical edge, split by end fibre."""
    out = {X0: set(), XINF: set()}
    for fr in tc.frames:
        out[tc.roles[fr.vertex]].add(la.dot(fr.edges[fr.vertical], tc.zeta))
    return out


def fibre_at_infinity(tc, Z, k, l, lift_shift=0, hatted=True, seed=0):
    """Contribution of the fixed component X_inf to DF(-hat)_{k,l}.

    Under zeta the bottom facet is fixed pointwise: A restricts to
    ``alpha - h_inf`` and C - R to c1 plus the (vanishing) horizontal weight
    sum, and the normal Euler class is ``-w_vertical``. The top-degree part of
    the restricted integrand is integrated over the bottom facet.
    """
    n = tc.dim
    frames, h_inf, c_const, euler = _bottom_facet_data(tc, lift_shift)
    a_res = A(n) - h_inf
    c_res = C(n) + c_const
    integrand = Z.theta[n - k - l] * a_res ** (l + 1) * c_res ** (n - l)
    if hatted:
        mu = mu_table(tc.base, Z, seed)
        integrand = integrand - Fraction(l + 1, n + 1) * mu[k][l] * a_res ** (n + 1)
    top = integrand.degree_part(n)
    if not top.terms:
        return LocalizedValue(GaussianRational(0), n)
    val = _pure(frames, top, seed)
    return LocalizedValue(val.value / euler, n)


# -- reports -------------------------------------------------------------------

@dataclass
class InvariantReport:
    """One computed quantity.

    For linear invariants ``value == sum(weights[kl] * breakdown[kl])``; for
    fz the breakdown holds the complex pairings and
    ``value == -Im(conj(Z) * sum(weights[kl] * breakdown[kl]))``.
    """

    name: str
    value: LocalizedValue
    breakdown: dict = field(default_factory=dict)
    weights: dict = field(default_factory=dict)
    verdict: str | None = None
    digest: str = ""

    def to_json(self):
        return {
            "name": self.name,
            "digest": self.digest,
            "rational": _scalar_json(self.value.value),
            "two_pi_power": self.value.two_pi_power,
            "breakdown": {f"{k},{l}": {"rational": _scalar_json(v.value),
                                        "two_pi_power": v.two_pi_power}
                          for (k, l), v in sorted(self.breakdown.items())},
            "weights": {f"{k},{l}": _scalar_json(w) for (k, l), w in sorted(self.weights.items())},
            "verdict": self.verdict,
        }

    @classmethod
    def from_json(cls, obj):
        def key(s):
            k, l = s.split(",")
            return int(k), int(l)
        return cls(
            name=obj["name"],
            digest=obj.get("digest", ""),
            value=LocalizedValue(_scalar_from_json(obj["rational"]), obj["two_pi_power"]),
            breakdown={key(s): LocalizedValue(_scalar_from_json(v["rational"]), v["two_pi_power"])
                       for s, v in obj.get("breakdown", {}).items()},
            weights={key(s): _scalar_from_json(v) for s, v in obj.get("weights", {}).items()},
            verdict=obj.get("verdict"),
        )


def _scalar_json(g):
    g = GaussianRational.coerce(g)
    if g.is_real:
        return format_rational(g.re)
    return g.to_json()


def _scalar_from_json(obj):
    if isinstance(obj, dict):
        return GaussianRational.from_json(obj)
    return GaussianRational(parse_rational(obj))
