"""Exact equivariant-localisation calculator for toric central-charge invariants."""

from .charge import (CentralCharge, charge_value, make_charge, preset_dhym,
                     preset_kstability)
from .errors import DomainError, ZlocError
from .exact import GaussianRational, Rational
from .invariants import (InvariantReport, donaldson_futaki, futaki, fz_hat, mu_table,
                         stability_indicator, theorem_residual, z_hat, z_tc)
from .localize import LocalizedValue, equivariant_integral, localize_sum
from .polytope import DelzantPolytope, build_polytope, box, hirzebruch, segment, simplex
from .testconfig import central_fibre, product_tc, trivial_tc, twist

__all__ = [
    "CentralCharge", "DelzantPolytope", "DomainError", "GaussianRational",
    "InvariantReport", "LocalizedValue", "Rational", "ZlocError", "box",
    "build_polytope", "central_fibre", "charge_value", "donaldson_futaki",
    "equivariant_integral", "futaki", "fz_hat", "hirzebruch", "localize_sum",
    "make_charge", "mu_table", "preset_dhym", "preset_kstability", "product_tc",
    "segment", "simplex", "stability_indicator", "theorem_residual", "trivial_tc",
    "twist", "z_hat", "z_tc",
]
