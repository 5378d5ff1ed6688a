"""Permutations: cycles, parity, power maps, interpolation round trips."""

import math
import random

import pytest

from permpoly import (Permutation, compose_in_order, decompose,
                      inversion_perm, negation_perm, parse_cycles, poly_perm,
                      shift_perm, to_polynomial)

rng = random.Random(0xC1C1E)

PRIMES_TO_31 = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31)
PRIMES_TO_199 = (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
                 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
                 191, 193, 197, 199)


def _random_perm(n):
    imgs = list(range(n))
    rng.shuffle(imgs)
    return Permutation(imgs)


def test_constructor_rejects_non_bijections():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
    with pytest.raises(ValueError):
        Permutation((0, 1, 3))


def test_compose_convention():
    """compose(f, g) applies g first: (f.compose(g))(x) = f(g(x))."""
    f = _random_perm(9)
    g = _random_perm(9)
    h = f.compose(g)
    for x in range(9):
        assert h(x) == f(g(x))


def test_compose_in_order_applies_leftmost_first():
    f = _random_perm(8)
    g = _random_perm(8)
    h = _random_perm(8)
    combined = compose_in_order([f, g, h])
    for x in range(8):
        assert combined(x) == h(g(f(x)))


def test_inverse_and_order():
    for _ in range(20):
        f = _random_perm(11)
        assert f.compose(f.inverse()).is_identity()
        k = f.element_order()
        assert f.power(k).is_identity()
        assert all(not f.power(j).is_identity() for j in range(1, k))


@pytest.mark.parametrize("p", PRIMES_TO_31)
def test_interpolation_round_trip(p):
    """to_polynomial then pointwise evaluation reproduces the permutation."""
    for _ in range(100):
        perm = _random_perm(p)
        poly = to_polynomial(perm, p)
        assert poly.to_permutation() == perm
        assert poly.degree <= p - 2 or perm.is_identity() is False


def test_interpolation_degree_bound():
    # degree < p always; x**(p-1) never appears for a permutation
    for p in (5, 11, 13):
        for _ in range(30):
            poly = to_polynomial(_random_perm(p), p)
            assert poly.degree < p - 1


def test_sign_is_a_homomorphism():
    for n in (5, 8, 13):
        for _ in range(60):
            f = _random_perm(n)
            g = _random_perm(n)
            assert f.compose(g).sign() == f.sign() * g.sign()


def test_sign_matches_transposition_count():
    p = Permutation((1, 0, 2, 3, 4))
    assert p.sign() == -1
    q = parse_cycles("(0 1)(2 3)", 5)
    assert q.sign() == 1
    assert Permutation.identity(6).sign() == 1


@pytest.mark.parametrize("p", PRIMES_TO_199)
def test_inversion_fixed_points_and_transpositions(p):
    """x -> x**(p-2) fixes exactly {0, 1, p-1} and pairs the rest."""
    delta = inversion_perm(p)
    assert delta.fixed_points() == (0, 1, p - 1)
    cycles = decompose(delta).cycles
    assert all(len(c) == 2 for c in cycles)
    assert len(cycles) == (p - 3) // 2
    assert delta.compose(delta).is_identity()


def test_inversion_parity_by_residue_class():
    """The inversion is odd exactly when p = 1 mod 4."""
    for p in PRIMES_TO_199:
        expected = -1 if p % 4 == 1 else 1
        assert inversion_perm(p).sign() == expected


def test_inversion_at_three_is_identity():
    assert inversion_perm(3).is_identity()


def test_poly_perm_rejects_non_coprime_exponent():
    with pytest.raises(ValueError):
        poly_perm(7, 2, 0)  # gcd(2, 6) = 2: x**2 is not injective
    with pytest.raises(ValueError):
        poly_perm(13, 3, 1)


@pytest.mark.parametrize("p", [3, 7, 11, 19, 23, 31])
def test_power_maps_even_for_three_mod_four(p):
    """Every x**d + c is an even permutation when p = 3 mod 4."""
    for d in range(1, p - 1):
        if math.gcd(d, p - 1) != 1:
            continue
        for c in range(p):
            assert poly_perm(p, d, c).sign() == 1


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_shift_conjugation_moves_the_constant(p):
    """Pre-composing with a shift of c - i turns x**d + i into x**d + c."""
    for d in range(1, p - 1):
        if math.gcd(d, p - 1) != 1:
            continue
        for i in range(p):
            for c in range(p):
                lhs = shift_perm(p, c - i).compose(poly_perm(p, d, i))
                assert lhs == poly_perm(p, d, c)


def test_shift_perm_is_a_p_cycle():
    for p in (5, 13):
        sigma = shift_perm(p)
        assert sigma.element_order() == p
        assert len(decompose(sigma).cycles) == 1


def test_negation_perm_parity():
    # negation is a product of (p-1)/2 transpositions
    for p in (5, 7, 13, 17):
        neg = negation_perm(p)
        expected = -1 if ((p - 1) // 2) % 2 == 1 else 1
        assert neg.sign() == expected
        assert neg.compose(neg).is_identity()


def test_cycle_text_is_canonical():
    perm = parse_cycles("(3 4)(0 2)", 6)
    assert decompose(perm).text == "(0 2)(3 4)"
    assert decompose(Permutation.identity(5)).text == "()"
    # round trip through text
    for _ in range(25):
        f = _random_perm(10)
        assert parse_cycles(decompose(f).text, 10) == f


def test_parse_cycles_rejects_garbage():
    with pytest.raises(ValueError):
        parse_cycles("(0 1)(1 2)", 5)  # 1 appears twice
    with pytest.raises(ValueError):
        parse_cycles("(0 9)", 5)  # out of range
