"""Shared polytopes, test configurations and charges for the test modules."""

import random
from fractions import Fraction

from zloc import _linalg as la
from zloc.charge import make_charge, preset_dhym, preset_kstability
from zloc.polytope import box, hirzebruch, segment, simplex
from zloc.testconfig import product_tc


def p1():
    return segment(-1, 1)


def p1xp1():
    return box((-1, 1), (-1, 1))


def f1():
    return hirzebruch()


def p2():
    return simplex(2)


BASES = {"P1": p1, "P1xP1": p1xp1, "F1": f1, "P2": p2}

# (base, xi, c)
TC_SPECS = [
    ("P1", (1,), 2), ("P1", (-1,), 2), ("P1", (1,), 3), ("P1", (-1,), 3),
    ("P1xP1", (1, 0), 2), ("P1xP1", (1, 1), 3),
    ("F1", (0, 1), 1), ("F1", (1, 0), 1), ("F1", (1, -1), 2),
    ("P2", (1, 2), 1),
]


def suite_tcs():
    return [(f"{b} xi={xi} c={c}", product_tc(BASES[b](), xi, c)) for b, xi, c in TC_SPECS]


def theta_variant(n):
    """dHYM stability vector with the auxiliary class 1 + c1."""
    d = preset_dhym(n)
    return make_charge(n, d.rho, d.chern, [1, 1] + [0] * (n - 1))


def charges(n):
    return {"K": preset_kstability(n), "dHYM": preset_dhym(n), "theta": theta_variant(n)}


def random_unimodular(rng, n, steps=6):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([-2, -1, 1, 2])
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
        if rng.random() < 0.3:
            m[i], m[j] = m[j], [-a for a in m[i]]
    assert abs(la.det(m)) == 1
    return m


def random_translation(rng, n):
    return tuple(Fraction(rng.randint(-7, 7), rng.randint(1, 5)) for _ in range(n))


def rng(seed=0):
    return random.Random(seed)
