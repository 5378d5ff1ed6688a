"""Shift/invert words, nested forms, and certified rank searches."""

import itertools
import random

import pytest

from permpoly import (INVERT, CarlitzForm, Permutation, ShiftInvertWord,
                      carlitz_rank, decompose, double_transposition_word,
                      iter_form_layers, parse_cycles, shift_perm,
                      weak_carlitz_rank, word_to_form)

rng = random.Random(0xCA2111)

PRIMES_TO_199 = (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
                 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
                 191, 193, 197, 199)


def _random_word(p, length):
    tokens = []
    for _ in range(length):
        if rng.random() < 0.4:
            tokens.append(INVERT)
        else:
            tokens.append(rng.randrange(1, p))
    return ShiftInvertWord(p, tuple(tokens))


def _random_perm(n):
    imgs = list(range(n))
    rng.shuffle(imgs)
    return Permutation(imgs)


# --- words ---------------------------------------------------------------


def test_word_token_validation():
    with pytest.raises(ValueError):
        ShiftInvertWord(7, (0, 7))  # shift out of range
    with pytest.raises(ValueError):
        ShiftInvertWord(8, (0, 1))  # not a prime


def test_double_transposition_word_shape():
    word = double_transposition_word(7)
    assert len(word) == 12
    assert word.inversions == 6
    with pytest.raises(ValueError):
        double_transposition_word(3)


@pytest.mark.parametrize("p", PRIMES_TO_199)
def test_double_transposition_word_evaluates_correctly(p):
    """One fixed 12-token recipe lands on (0 1)(2 3) at every prime >= 5."""
    perm = double_transposition_word(p).evaluate()
    assert decompose(perm).text == "(0 1)(2 3)"


def test_word_evaluation_order():
    # (3, 0) means: add 3 first, then invert
    word = ShiftInvertWord(5, (3, 0))
    perm = word.evaluate()
    for x in range(5):
        assert perm(x) == pow((x + 3) % 5, 3, 5)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_word_to_form_matches_word_evaluation(p):
    """Collapsing a word into a nested form preserves the permutation."""
    for _ in range(100):
        word = _random_word(p, rng.randrange(1, 9))
        form = word_to_form(word)
        assert form.prime == p
        assert form.evaluate() == word.evaluate()


def test_word_normalize_preserves_value():
    for _ in range(50):
        word = _random_word(11, rng.randrange(2, 10))
        squashed = word.normalize()
        assert squashed.evaluate() == word.evaluate()
        assert squashed.inversions <= word.inversions


# --- forms ---------------------------------------------------------------


def test_form_validation():
    with pytest.raises(ValueError):
        CarlitzForm(7, 0, (1,))  # zero lead
    with pytest.raises(ValueError):
        CarlitzForm(7, 1, ())  # no affine constant
    form = CarlitzForm(7, 9, (8, 7))
    assert form.lead == 2 and form.shifts == (1, 0)


def test_form_inversion_count_and_coefficients():
    form = CarlitzForm(11, 3, (1, 4, 0))
    assert form.inversions == 2
    assert form.coefficients() == (3, 1, 4, 0)


def test_affine_form_evaluation():
    form = CarlitzForm(13, 4, (9,))
    for x in range(13):
        assert form(x) == (4 * x + 9) % 13


# --- rank searches -------------------------------------------------------


def _bruteforce_ranks(p, weak):
    """Minimal inversion counts by direct enumeration, pure-python eval."""
    leads = (1,) if weak else tuple(range(1, p))
    found = {}
    for n in range(0, 5):
        for lead in leads:
            for shifts in itertools.product(range(p), repeat=n + 1):
                y = [(lead * x + shifts[0]) % p for x in range(p)]
                for c in shifts[1:]:
                    y = [(pow(v, p - 2, p) + c) % p for v in y]
                img = tuple(y)
                if len(set(img)) == p and img not in found:
                    found[img] = n
        if len(found) == 120:
            break
    return found


def test_all_of_s5_against_brute_force():
    """Both rank searches agree with naive enumeration on every element."""
    strong = _bruteforce_ranks(5, weak=False)
    weak = _bruteforce_ranks(5, weak=True)
    assert len(strong) == len(weak) == 120
    for imgs in itertools.permutations(range(5)):
        perm = Permutation(imgs)
        r = carlitz_rank(perm)
        w = weak_carlitz_rank(perm)
        assert r.rank == strong[imgs]
        assert w.rank == weak[imgs]
        assert r.rank <= w.rank
        assert r.certified_exact and w.certified_exact
        assert r.witness.evaluate() == perm
        assert w.witness.evaluate() == perm and w.witness.lead == 1


def test_rank_never_exceeds_weak_rank_at_seven():
    for _ in range(200):
        perm = _random_perm(7)
        r = carlitz_rank(perm)
        w = weak_carlitz_rank(perm)
        if r.rank is not None and w.rank is not None:
            assert r.rank <= w.rank


def test_rank_is_shift_conjugation_invariant():
    """Conjugating by powers of the shift map preserves the rank."""
    for p in (7, 11):
        sigma = shift_perm(p)
        for _ in range(10):
            perm = _random_perm(p)
            base = carlitz_rank(perm, max_rank=4)
            for k in (1, 3):
                conj = sigma.power(k).compose(perm).compose(sigma.power(p - k))
                assert carlitz_rank(conj, max_rank=4).rank == base.rank


def test_known_ranks_of_the_double_transposition():
    expected = {5: (1, 2), 7: (3, 4), 11: (6, 6), 13: (6, 6)}
    for p, (strong, weak) in expected.items():
        perm = parse_cycles("(0 1)(2 3)", p)
        assert carlitz_rank(perm).rank == strong
        assert weak_carlitz_rank(perm).rank == weak


def test_unreachable_within_bound_reports_none():
    perm = parse_cycles("(0 1)(2 3)", 17)
    res = carlitz_rank(perm, max_rank=5)
    assert res.rank is None
    assert res.certified_exact
    assert res.searched_to == 5
    assert res.witness is None


def test_rank_zero_is_affine():
    res = carlitz_rank(Permutation([(3 * x + 2) % 11 for x in range(11)]))
    assert res.rank == 0
    assert res.witness.inversions == 0


def test_witness_minimality():
    for _ in range(20):
        perm = _random_perm(7)
        res = carlitz_rank(perm)
        if res.rank is not None:
            assert res.witness.inversions == res.rank


# --- layered enumeration -------------------------------------------------


def test_layer_zero_is_the_affine_maps():
    layers = list(iter_form_layers(5, 0))
    assert len(layers) == 1
    perms = {tuple(row) for row in layers[0].rows}
    affine = {tuple((a * x + b) % 5 for x in range(5))
              for a in range(1, 5) for b in range(5)}
    assert perms == affine


def test_layered_search_covers_s5():
    """The cumulative layers exhaust all 120 permutations of five points."""
    seen = set()
    for layer in iter_form_layers(5, 4):
        seen.update(map(tuple, layer.rows))
    assert len(seen) == 120
    # with the lead restricted to 1 it takes all five layers
    seen_weak = set()
    sizes = []
    for layer in iter_form_layers(5, 4, leads=(1,)):
        seen_weak.update(map(tuple, layer.rows))
        sizes.append(len(seen_weak))
    assert sizes == [5, 30, 80, 115, 120]


def test_layer_find_and_coefficients_agree():
    for layer in iter_form_layers(7, 2):
        for _ in range(5):
            i = rng.randrange(len(layer))
            coeffs = layer.coefficients(i)
            form = CarlitzForm(7, coeffs[0], coeffs[1:])
            assert tuple(form.evaluate().images) == tuple(layer.rows[i])
            assert layer.find(layer.rows[i]) == i


def test_enumeration_refuses_large_primes():
    with pytest.raises(ValueError):
        list(iter_form_layers(23, 2))


def test_budget_guard_trips():
    with pytest.raises(ValueError):
        carlitz_rank(_random_perm(17), max_rank=6, row_budget=1000)
