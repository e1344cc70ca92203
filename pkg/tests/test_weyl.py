import cmath
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest

from weylnet import errors
from weylnet.registry import load_registry
from weylnet.symplectic import ZERO
from weylnet.weyl import (
    IDENTITY,
    CrossedProduct,
    Staged,
    WeylElement,
    cocycle_check,
    cocycle_defect,
    max_coeff_distance,
    parse_element,
    weyl_add,
    weyl_mul,
    weyl_scale,
    weyl_star,
    weyl_word,
)


@lru_cache(maxsize=1)
def sp():
    return load_registry()


GENS = ["T", "T0", "T3", "aL", "aC", "aR", "n1", "q0", "q3", "c0", "c1", "c2"]


def rand_vector(rng, n_terms=3):
    space = sp()
    v = ZERO
    for name in rng.choice(GENS, size=n_terms, replace=False):
        coeff = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4)))
        v = v + space.generator(name).scale(coeff)
    return v


def test_identity_and_inverse():
    space = sp()
    v = space.generator("T") + space.generator("aC")
    W = weyl_word(v)
    Winv = weyl_word(-v)
    assert max_coeff_distance(weyl_mul(space, W, Winv), IDENTITY) < 1e-12


def test_exchange_relation():
    space = sp()
    rng = np.random.default_rng(3)
    for _ in range(25):
        v, w = rand_vector(rng), rand_vector(rng)
        lhs = weyl_mul(space, weyl_word(v), weyl_word(w))
        rhs = weyl_scale(
            weyl_mul(space, weyl_word(w), weyl_word(v)),
            cmath.exp(-1j * space.sigma(v, w)),
        )
        assert max_coeff_distance(lhs, rhs) < 1e-12


def test_associativity_brute_force():
    space = sp()
    rng = np.random.default_rng(4)
    for _ in range(25):
        u, v, w = (rand_vector(rng) for _ in range(3))
        A, B, C = weyl_word(u), weyl_word(v), weyl_word(w)
        lhs = weyl_mul(space, weyl_mul(space, A, B), C)
        rhs = weyl_mul(space, A, weyl_mul(space, B, C))
        assert max_coeff_distance(lhs, rhs) < 1e-12
        # oracle: expand the phases by hand
        total = cmath.exp(
            -0.5j * (space.sigma(u, v) + space.sigma(u + v, w))
        )
        key, coeff = lhs.terms()[0]
        assert key == u + v + w
        assert abs(coeff - total) < 1e-12


def test_star_involution_and_antihomomorphism():
    space = sp()
    rng = np.random.default_rng(5)
    u, v = rand_vector(rng), rand_vector(rng)
    A = weyl_add(weyl_word(u, 2.0 + 1.0j), weyl_word(v, -0.5j))
    assert weyl_star(weyl_star(A)) == A
    assert weyl_star(IDENTITY) == IDENTITY
    B = weyl_word(v, 0.3 - 0.7j)
    lhs = weyl_star(weyl_mul(space, A, B))
    rhs = weyl_mul(space, weyl_star(B), weyl_star(A))
    assert max_coeff_distance(lhs, rhs) < 1e-12


def test_normalize_drops_tiny_and_no_false_cancellation():
    v = sp().generator("q0")
    w = sp().generator("c0")
    A = WeylElement([(v, 1e-16)])
    assert A.is_zero()
    B = weyl_add(weyl_word(v), weyl_scale(weyl_word(w), -1.0))
    assert len(B.terms()) == 2


def test_charge_additivity_under_mul():
    space = sp()
    A = weyl_add(weyl_word(space.generator("T")), weyl_word(space.generator("q0")))
    B = weyl_word(space.generator("c1"))
    prod = weyl_mul(space, A, B)
    charges = sorted(
        (space.charges(k).c, space.charges(k).q) for k, _ in prod.terms()
    )
    assert charges == [(Fraction(1), Fraction(1)), (Fraction(2), Fraction(1))]


def test_cocycle_identity():
    space = sp()
    rng = np.random.default_rng(6)
    for _ in range(50):
        r, s, t = (rand_vector(rng) for _ in range(3))
        assert cocycle_check(space, r, s, t)
    assert cocycle_defect(space, rand_vector(rng), rand_vector(rng), ZERO) == 0


# --- staged crossed product --------------------------------------------------


def test_staged_vs_global_product():
    space = sp()
    cp = CrossedProduct(space, space.generator("T"))
    rng = np.random.default_rng(11)
    for _ in range(40):
        # observable parts in Vb: zero c and q charges
        h1 = sp().generator("aC").scale(Fraction(int(rng.integers(-2, 3)), 2))
        h2 = sp().generator("aR").scale(Fraction(int(rng.integers(-2, 3)), 2)) + sp().generator("n1").scale(
            Fraction(int(rng.integers(-1, 2)))
        )
        x = Staged(1.0 + 0j, h1, Fraction(int(rng.integers(-2, 3))), Fraction(int(rng.integers(-2, 3))))
        y = Staged(0.5 - 0.5j, h2, Fraction(int(rng.integers(-2, 3))), Fraction(int(rng.integers(-2, 3))))
        staged = cp.embed(cp.product(x, y))
        direct = weyl_mul(space, cp.embed(x), cp.embed(y))
        assert max_coeff_distance(staged, direct) < 1e-10


def test_staged_inverse():
    space = sp()
    cp = CrossedProduct(space, space.generator("T"))
    x = Staged(2.0j, space.generator("aL"), Fraction(3), Fraction(-2))
    prod = cp.product(x, cp.inverse(x))
    assert prod.h.is_zero() and prod.c == 0 and prod.n == 0
    assert abs(prod.zeta - 1.0) < 1e-12
    prod2 = cp.product(cp.inverse(x), x)
    assert abs(prod2.zeta - 1.0) < 1e-12


def test_staged_adjoint_action_phase():
    # conjugating a charge-plane word by another gives the sigma_L phase
    space = sp()
    cp = CrossedProduct(space, space.generator("T"))
    s = Staged(1.0, ZERO, Fraction(1), Fraction(2))
    m = Staged(1.0, ZERO, Fraction(0), Fraction(3))
    out = cp.conjugate(s, m)
    # sigma_L((1,2),(0,3)) = 1*3 - 0*2 = 3
    assert abs(out.zeta - cmath.exp(-3j)) < 1e-12
    assert out.c == 0 and out.n == 3


# --- element literals ---------------------------------------------------------


def test_parse_single_word():
    space = sp()
    A = parse_element(space, "2.0+0.0i * W[T + 3/2 q0]")
    (v, a), = A.terms()
    assert abs(a - 2.0) < 1e-15
    assert v == space.generator("T") + space.generator("q0").scale(Fraction(3, 2))


def test_parse_sums_signs_and_identity():
    space = sp()
    A = parse_element(space, "W[0] - 0.5i * W[c1] + W[aC - q3]")
    assert len(A.terms()) == 3
    coeffs = {v: a for v, a in A.terms()}
    assert coeffs[ZERO] == 1.0
    assert coeffs[space.generator("c1")] == -0.5j
    assert coeffs[space.generator("aC") - space.generator("q3")] == 1.0


def test_parse_leading_minus():
    space = sp()
    A = parse_element(space, "-W[q0]")
    (v, a), = A.terms()
    assert a == -1.0


def test_parse_errors():
    space = sp()
    for bad in ("", "W[nope]", "W[q0", "2.0 ** W[q0]", "W[q0] * W[q0]", "xyz"):
        with pytest.raises((errors.ElementParseError, errors.UnknownGenerator)):
            parse_element(space, bad)
