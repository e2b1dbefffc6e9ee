"""Seeded random builders shared across the test modules."""

import random

from nagaolab.amalgam import Letter
from nagaolab.gl2 import Gen, Mat2, identity
from nagaolab.ring import Poly


def rand_poly(rng, mod, max_deg, nonzero=False):
    while True:
        deg = rng.randint(0, max_deg)
        if mod is None:
            cs = [rng.randint(-4, 4) for _ in range(deg + 1)]
        else:
            cs = [rng.randrange(mod) for _ in range(deg + 1)]
        p = Poly(cs, mod)
        if not (nonzero and p.is_zero):
            return p


def rand_unit(rng, mod):
    return rng.choice([1, -1]) if mod is None else rng.randrange(1, mod)


def rand_const_gen(rng, mod):
    kind = rng.choice(["E12", "E21", "W", "D"])
    if kind == "W":
        return Gen("W", None, mod)
    if kind == "D":
        return Gen("D", rand_unit(rng, mod), mod)
    value = rng.randint(-3, 3) if mod is None else rng.randrange(mod)
    return Gen(kind, Poly.constant(value, mod), mod)


def rand_sl2_const(rng, mod):
    """Random constant determinant-1 matrix, as a short generator product."""
    m = identity(mod)
    for _ in range(rng.randint(1, 3)):
        m = m * rand_const_gen(rng, mod).matrix()
    return m


def rand_b_letter(rng, mod, max_deg):
    """Random upper-triangular determinant-1 letter (factor 2)."""
    u = rand_unit(rng, mod)
    uinv = u if mod is None else pow(u, -1, mod)
    f = rand_poly(rng, mod, max_deg)
    return Letter(
        2, Mat2(Poly.constant(u, mod), f, Poly.zero(mod), Poly.constant(uinv, mod))
    )


def rand_letter(rng, mod, max_deg):
    if rng.random() < 0.5:
        return Letter(1, rand_sl2_const(rng, mod))
    return rand_b_letter(rng, mod, max_deg)


def rand_word(rng, mod, length, max_deg):
    return [rand_letter(rng, mod, max_deg) for _ in range(length)]


def rand_fp_gen(rng, p, max_deg):
    kind = rng.choice(["E12", "E21", "D"])
    if kind == "D":
        return Gen("D", rng.randrange(1, p), p)
    return Gen(kind, rand_poly(rng, p, max_deg), p)


def rand_fp_matrix(rng, p, n_gens, max_deg):
    """Random SL2(F_p[t]) element as a product of elementary generators."""
    m = identity(p)
    for _ in range(rng.randint(0, n_gens)):
        m = m * rand_fp_gen(rng, p, max_deg).matrix()
    return m


def evaluate_word(letters, mod):
    m = identity(mod)
    for letter in letters:
        m = m * letter.mat
    return m
