from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from zloc.charge import (charge_from_json, charge_integrand, charge_value, coefficient_table,
                         make_charge, preset_dhym, preset_kstability)
from zloc.errors import LengthMismatch, NormalisationViolation, SchemaError
from zloc.exact import GaussianRational, I
from zloc.localize import A, C, LocalizedValue, localize_sum

import suite

rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))
gaussians = st.builds(GaussianRational, rationals, rationals)


def nonzero(Z):
    return Z.nonzero_entries()


def to_gauss(expr):
    re, im = sp.Rational(sp.re(expr)), sp.Rational(sp.im(expr))
    return GaussianRational(Fraction(re.p, re.q), Fraction(im.p, im.q))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_kstability_table(n):
    assert nonzero(preset_kstability(n)) == {(1, n - 1): 1}


def test_dhym_small():
    assert nonzero(preset_dhym(1)) == {(0, 1): I, (1, 0): I}
    h = GaussianRational(1, 0) / 2
    assert nonzero(preset_dhym(2)) == {(0, 2): h, (1, 1): 1, (2, 0): h}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dhym_against_series(n):
    a, c = sp.symbols("a c")
    series = sp.expand(-sp.series(sp.exp(-sp.I * a), a, 0, n + 1).removeO()
                       * sp.series(sp.exp(-sp.I * c), c, 0, n + 1).removeO())
    poly = sp.Poly(series, a, c)
    table = coefficient_table(preset_dhym(n))
    for k in range(n + 1):
        l = n - k
        assert table[k][l] == to_gauss(poly.coeff_monomial(a ** l * c ** k))


def test_theta_variant_table():
    # f = c1 only (higher chern zero) with Theta = 1 + c1, rho_1 = 1
    Z = make_charge(2, [0, 1, 0], [1, 1, 0], [1, 1, 0])
    assert nonzero(Z) == {(0, 1): 1, (1, 1): 1}


def test_zero_rho():
    Z = make_charge(2, [0, 0, 0], [1, 1, 0])
    assert nonzero(Z) == {}
    assert charge_value(Z, suite.f1()).value == 0


def test_normalisation_and_lengths():
    with pytest.raises(NormalisationViolation):
        make_charge(1, [0, 1], [1, 2])
    with pytest.raises(NormalisationViolation):
        make_charge(1, [0, 1], [1, 1], [2, 0])
    with pytest.raises(LengthMismatch):
        make_charge(2, [0, 1], [1, 1, 0])


def test_imaginary_top_warning():
    assert preset_kstability(2).warnings
    assert not make_charge(1, [0, I], [1, 1]).warnings


def test_values_on_p1():
    P = suite.p1()
    assert charge_value(preset_kstability(1), P) == LocalizedValue(2, 1)
    assert charge_value(preset_dhym(1), P) == LocalizedValue(4 * I, 1)


@pytest.mark.parametrize("name", sorted(suite.BASES))
def test_kstability_is_c_times_a_power(name):
    P = suite.BASES[name]()
    n = P.dim
    xi = (5, 2)[:n]
    assert charge_value(preset_kstability(n), P) == localize_sum(P.frames, xi, C(n) * A(n) ** (n - 1))


@settings(max_examples=25, deadline=None)
@given(st.lists(gaussians, min_size=3, max_size=3), st.lists(gaussians, min_size=3, max_size=3),
       gaussians, gaussians)
def test_linear_in_rho(r1, r2, f2, t1):
    chern, theta = [1, 1, f2], [1, t1, 0]
    Z1, Z2 = make_charge(2, r1, chern, theta), make_charge(2, r2, chern, theta)
    P = suite.f1()
    assert charge_value(Z1 + Z2, P) == charge_value(Z1, P) + charge_value(Z2, P)


@settings(max_examples=25, deadline=None)
@given(st.lists(gaussians, min_size=3, max_size=3), gaussians, gaussians, gaussians)
def test_reconstruction(rho, f2, t1, t2):
    """sum a_kl theta_(n-k-l) alpha^l c1^k is the top part of sum rho_l alpha^l f(c1) Theta."""
    n = 2
    Z = make_charge(n, rho, [1, 1, f2], [1, t1, t2])
    full = 0
    f = 1 + C(n) + f2 * C(n) ** 2
    theta = 1 + t1 * C(n) + t2 * C(n) ** 2
    for l, r in enumerate(rho):
        full = r * A(n) ** l * f * theta + full
    assert charge_integrand(Z) == full.degree_part(n)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 1000), st.integers(1001, 2000))
def test_parameter_independence(s1, s2):
    Z = make_charge(2, [1, GaussianRational(2, 1), I], [1, 1, 3], [1, 2, 0])
    P = suite.f1()
    assert charge_value(Z, P, s1) == charge_value(Z, P, s2)


def test_from_json():
    assert charge_from_json("dhym", 2).akl == preset_dhym(2).akl
    Z = charge_from_json({"rho": ["1", {"re": "0", "im": "0"}], "chern": ["1", "1"]})
    assert Z.akl == preset_kstability(1).akl
    with pytest.raises(SchemaError):
        charge_from_json("nope", 2)
