"""Central charges built from a stability vector, a Chern polynomial and an
auxiliary class that is a polynomial in c1.

The coefficient table ``akl[k][l]`` multiplies ``alpha^l c1^k Theta``; only
entries that can reach top degree (``k + l <= n`` with ``theta[n-k-l] != 0``)
are kept, all others are stored as zero.
"""

import math
from dataclasses import dataclass, field

from .errors import LengthMismatch, NormalisationViolation, SchemaError
from .exact import GaussianRational, I
from .localize import A, C, Integrand, LocalizedValue, equivariant_integral, generic_parameter


@dataclass(frozen=True)
class CentralCharge:
    dim: int
    rho: tuple
    chern: tuple
    theta: tuple
    akl: tuple = field(repr=False)
    warnings: tuple = ()

    @property
    def is_real(self):
        return all(a.is_real for row in self.akl for a in row)

    def nonzero_entries(self):
        return {(k, l): a for k, row in enumerate(self.akl) for l, a in enumerate(row) if a}

    def __add__(self, other):
        """Sum of charges with the same Chern polynomial and auxiliary class.

        Only the stability vectors add; the result is the charge whose
        value is the sum of the two values.
        """
        if (self.dim, self.chern, self.theta) != (other.dim, other.chern, other.theta):
            raise ValueError("charges must share dim, chern and theta to be added")
        return make_charge(self.dim, [a + b for a, b in zip(self.rho, other.rho)],
                           self.chern, self.theta)

    def to_json(self):
        return {
            "dim": self.dim,
            "rho": [x.to_json() for x in self.rho],
            "chern": [x.to_json() for x in self.chern],
            "theta": [x.to_json() for x in self.theta],
        }


def _gaussians(values, name, n):
    vals = tuple(GaussianRational.coerce(v) for v in values)
    if len(vals) != n + 1:
        raise LengthMismatch(f"{name} has length {len(vals)}, expected {n + 1}")
    return vals


def make_charge(dim, rho, chern, theta=None):
    n = dim
    if n < 1:
        raise LengthMismatch("dimension must be at least 1")
    rho = _gaussians(rho, "rho", n)
    chern = _gaussians(chern, "chern", n)
    theta = _gaussians(theta if theta is not None else [1] + [0] * n, "theta", n)
    if chern[0] != 1 or chern[1] != 1:
        raise NormalisationViolation(
            f"Chern polynomial needs a_0 = a_1 = 1, got a_0 = {chern[0]}, a_1 = {chern[1]}")
    if theta[0] != 1:
        raise NormalisationViolation(f"auxiliary class needs theta_0 = 1, got {theta[0]}")
    warnings = []
    if rho[n].im <= 0:
        warnings.append(f"Im(rho_{n}) = {rho[n].im} is not positive")
    akl = coefficient_table_from(n, rho, chern, theta)
    return CentralCharge(dim=n, rho=rho, chern=chern, theta=theta, akl=akl,
                         warnings=tuple(warnings))


def coefficient_table_from(n, rho, chern, theta):
    zero = GaussianRational(0)
    table = []
    for k in range(n + 1):
        row = []
        for l in range(n + 1):
            p = n - k - l
            row.append(rho[l] * chern[k] if p >= 0 and theta[p] else zero)
        table.append(tuple(row))
    return tuple(table)


def coefficient_table(Z):
    return Z.akl


def charge_integrand(Z):
    """sum a_kl theta_{n-k-l} A^l C^(n-l): the top-degree form of Z(X, alpha)."""
    n = Z.dim
    out = Integrand(n)
    for (k, l), a in Z.nonzero_entries().items():
        out = out + a * Z.theta[n - k - l] * (A(n) ** l) * (C(n) ** (n - l))
    return out


def charge_value(Z, P, xi_or_seed=0):
    """Z(X, alpha) on the toric manifold of P, as rational * (2 pi)^n."""
    if P.dim != Z.dim:
        raise LengthMismatch(f"polytope dim {P.dim} but charge dim {Z.dim}")
    if isinstance(xi_or_seed, int):
        xi = generic_parameter(P.frames, xi_or_seed)
    else:
        xi = xi_or_seed
    value = equivariant_integral(P.frames, xi, charge_integrand(Z))
    return LocalizedValue(value.value, Z.dim)


def preset_kstability(n):
    rho = [0] * (n + 1)
    rho[n - 1] = 1
    chern = [1, 1] + [0] * (n - 1)
    return make_charge(n, rho, chern)


def preset_dhym(n):
    """Top-degree part of -exp(-i alpha) exp(-i c1).

    With theta = 1 only k + l = n matters, and there the series coefficient
    -(-i)^n / (k! l!) factors as rho_l * a_k with rho_l = -(-i)^n / l! and
    a_k = 1 / k!.
    """
    phase = -((-I) ** n)
    rho = [phase / math.factorial(l) for l in range(n + 1)]
    chern = [GaussianRational(1) / math.factorial(k) for k in range(n + 1)]
    return make_charge(n, rho, chern)


PRESETS = {"kstability": preset_kstability, "dhym": preset_dhym}


def charge_from_json(obj, dim=None):
    if isinstance(obj, str):
        if obj not in PRESETS:
            raise SchemaError("charge", f"unknown charge preset {obj!r}")
        if dim is None:
            raise SchemaError("dim", "a preset charge needs the dimension")
        return PRESETS[obj](dim)
    if not isinstance(obj, dict):
        raise SchemaError("charge", "charge must be an object or a preset name")
    if "preset" in obj:
        return charge_from_json(obj["preset"], obj.get("dim", dim))
    for key in ("rho", "chern"):
        if key not in obj:
            raise SchemaError(key)
    n = obj.get("dim", dim)
    if n is None:
        n = len(obj["rho"]) - 1
    rho = [GaussianRational.from_json(x, field="rho") for x in obj["rho"]]
    chern = [GaussianRational.from_json(x, field="chern") for x in obj["chern"]]
    theta = None
    if "theta" in obj:
        theta = [GaussianRational.from_json(x, field="theta") for x in obj["theta"]]
    return make_charge(n, rho, chern, theta)
