"""Carlitz rank: expressing permutations of F_p through shifts and inversions.

Every permutation of F_p is a composition of translations x -> x + c and
the inversion x -> x**(p-2).  Collapsing such a composition gives a nested
form ((...(a*x + s_0)**(p-2) + s_1)...)**(p-2) + s_n; the Carlitz rank of a
permutation is the least number n of inversions in any representation of it.

This module provides words over the shift/invert alphabet, the nested forms
they collapse to, and an exact rank search (breadth-first layers plus a
meet-in-the-middle probe for the deeper ranks).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .ffield import as_modulus
from .perm import Permutation, _inversion_images

INVERT = 0
"""Word token standing for x -> x**(p-2); any other token is a shift amount."""


@dataclass(frozen=True)
class ShiftInvertWord:
    """A word over the alphabet {invert} union {shift by k : 1 <= k <= p-1}.

    ``tokens`` are applied leftmost first: the word (3, 0) means "add 3,
    then invert".  Token 0 is the inversion; a nonzero token is the shift
    amount, so the do-nothing shift by 0 is simply never written.
    """

    prime: int
    tokens: tuple[int, ...]

    def __post_init__(self):
        p = as_modulus(self.prime).p
        object.__setattr__(self, "prime", p)
        toks = tuple(int(t) for t in self.tokens)
        for t in toks:
            if not 0 <= t <= p - 1:
                raise ValueError(
                    f"token {t} out of range: want 0 (invert) or a shift in "
                    f"[1, {p - 1}]")
        object.__setattr__(self, "tokens", toks)

    @property
    def inversions(self) -> int:
        return self.tokens.count(INVERT)

    def __len__(self) -> int:
        return len(self.tokens)

    def evaluate(self) -> Permutation:
        """The permutation obtained by applying the tokens leftmost first."""
        p = self.prime
        inv = _inversion_images(p)
        arr = list(range(p))
        for t in self.tokens:
            if t == INVERT:
                arr = [inv[v] for v in arr]
            else:
                arr = [(v + t) % p for v in arr]
        return Permutation(arr)

    def normalize(self) -> "ShiftInvertWord":
        """Merge adjacent shifts, drop zero shifts, cancel double inversions.

        Cancellation cascades: when two inversions annihilate, the shifts
        they separated merge (and possibly vanish), which can expose a fresh
        double inversion.  A stack handles all of that in one pass, and the
        stack always alternates shift / invert as an invariant.
        """
        p = self.prime
        stack: list[int] = []
        for t in self.tokens:
            if t == INVERT:
                if stack and stack[-1] == INVERT:
                    stack.pop()
                else:
                    stack.append(INVERT)
            elif stack and stack[-1] != INVERT:
                merged = (stack.pop() + t) % p
                if merged:
                    stack.append(merged)
            else:
                stack.append(t)
        return ShiftInvertWord(p, tuple(stack))

    def __mul__(self, other):
        """Concatenation: self's tokens run first, then other's."""
        if not isinstance(other, ShiftInvertWord):
            return NotImplemented
        if other.prime != self.prime:
            raise ValueError("words over different primes")
        return ShiftInvertWord(self.prime, self.tokens + other.tokens)


def double_transposition_word(p: int) -> ShiftInvertWord:
    """A fixed 12-token word evaluating to the double transposition (0 1)(2 3).

    Works uniformly for every prime p >= 5; the only prime-dependent tokens
    are the two shifts by p - 1 (that is, by -1).
    """
    q = as_modulus(p).p
    if q < 5:
        raise ValueError("the target (0 1)(2 3) needs at least 4 points, so p >= 5")
    tokens = (INVERT, q - 1, INVERT, 1, INVERT, 1,
              INVERT, 1, INVERT, q - 1, INVERT, 3)
    return ShiftInvertWord(q, tokens)


@dataclass(frozen=True)
class CarlitzForm:
    """The nested form ((...(lead*x + s_0)**(p-2) + s_1)...)**(p-2) + s_n.

    ``shifts`` has length n + 1 where n is the number of inversions; the
    zero-inversion form is just the affine map lead*x + shifts[0].
    """

    prime: int
    lead: int
    shifts: tuple[int, ...]

    def __post_init__(self):
        p = as_modulus(self.prime).p
        object.__setattr__(self, "prime", p)
        lead = int(self.lead) % p
        if lead == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "lead", lead)
        sh = tuple(int(s) % p for s in self.shifts)
        if not sh:
            raise ValueError("need at least one shift (the affine constant)")
        object.__setattr__(self, "shifts", sh)

    @property
    def inversions(self) -> int:
        return len(self.shifts) - 1

    def __call__(self, x: int) -> int:
        p = self.prime
        v = (self.lead * x + self.shifts[0]) % p
        for s in self.shifts[1:]:
            v = (pow(v, p - 2, p) + s) % p
        return v

    def evaluate(self) -> Permutation:
        return Permutation(self(x) for x in range(self.prime))

    def coefficients(self) -> tuple[int, ...]:
        """Flat (lead, s_0, ..., s_n) tuple, handy for serialization."""
        return (self.lead, *self.shifts)


def word_to_form(word: ShiftInvertWord) -> CarlitzForm:
    """Collapse a shift/invert word into its nested form.

    The word is normalized first, so the form's inversion count is the
    word's reduced inversion count.  A leading shift becomes s_0; each
    inversion contributes the shift following it (or 0 at the word's end).
    """
    norm = word.normalize()
    p = norm.prime
    toks = norm.tokens
    i = 0
    s0 = 0
    if toks and toks[0] != INVERT:
        s0 = toks[0]
        i = 1
    shifts = [s0]
    while i < len(toks):
        # normalized words alternate, so toks[i] is an inversion here
        if i + 1 < len(toks) and toks[i + 1] != INVERT:
            shifts.append(toks[i + 1])
            i += 2
        else:
            shifts.append(0)
            i += 1
    return CarlitzForm(p, 1, tuple(shifts))


class FormLayer:
    """All permutations representable with exactly ``index`` inversions.

    ``rows`` is a (count, p) uint8 array of image tables, unique within the
    layer; ``coefficients(i)`` reconstructs a witness (lead, s_0, ..., s_k)
    for row i by walking parent links back to the affine layer.
    """

    __slots__ = ("index", "rows", "affine_coeffs", "parents", "shifts", "prev")

    def __init__(self, index, rows, affine_coeffs, parents, shifts, prev):
        self.index = index
        self.rows = rows
        self.affine_coeffs = affine_coeffs
        self.parents = parents
        self.shifts = shifts
        self.prev = prev

    def __len__(self) -> int:
        return len(self.rows)

    def coefficients(self, i: int) -> tuple[int, ...]:
        tail: list[int] = []
        layer, j = self, int(i)
        while layer.index > 0:
            tail.append(int(layer.shifts[j]))
            j = int(layer.parents[j])
            layer = layer.prev
        lead, s0 = layer.affine_coeffs[j]
        return (int(lead), int(s0), *reversed(tail))

    def find(self, images: np.ndarray) -> int | None:
        """Row index of an image table in this layer, or None."""
        hits = np.flatnonzero((self.rows == images).all(axis=1))
        return int(hits[0]) if hits.size else None


_PRIME_LIMIT = 19
DEFAULT_ROW_BUDGET = 8_000_000


def _void_view(rows: np.ndarray) -> np.ndarray:
    # uint8 rows compare bytewise = lexicographically, so a void view is a
    # sound key for unique/sort/searchsorted
    assert rows.dtype == np.uint8
    return np.ascontiguousarray(rows).view(
        np.dtype((np.void, rows.shape[1]))).ravel()


def iter_form_layers(p: int, max_layers: int,
                     leads: Sequence[int] | None = None,
                     row_budget: int = DEFAULT_ROW_BUDGET) -> Iterator[FormLayer]:
    """Yield layers 0..max_layers of nested-form permutations.

    Layer 0 holds the affine maps lead*x + s_0 (all nonzero leads unless a
    subset is given); layer k+1 applies inversion-then-shift to layer k.
    Layers are deduplicated internally but deliberately not against earlier
    layers, so layer k is the full set of exactly-k-inversion permutations.
    """
    q = as_modulus(p).p
    if q > _PRIME_LIMIT:
        raise ValueError(
            f"form-layer enumeration supports p <= {_PRIME_LIMIT}, got {q}")
    if leads is None:
        lead_list = list(range(1, q))
    else:
        lead_list = sorted({int(a) % q for a in leads})
        if not lead_list or lead_list[0] == 0:
            raise ValueError("leads must be nonzero residues")
    x = np.arange(q, dtype=np.int64)
    rows0 = np.concatenate([
        (a * x[None, :] + np.arange(q, dtype=np.int64)[:, None]) % q
        for a in lead_list
    ]).astype(np.uint8)
    affine = [(a, s) for a in lead_list for s in range(q)]
    layer = FormLayer(0, rows0, affine, None, None, None)
    yield layer
    inv_table = np.array(_inversion_images(q), dtype=np.uint8)
    for k in range(1, max_layers + 1):
        m = len(layer.rows)
        if m * q > row_budget:
            raise ValueError(
                f"layer {k} needs up to {m * q} rows, over the row budget of "
                f"{row_budget}; pass a larger row_budget to go deeper")
        inverted = inv_table[layer.rows]
        cand = np.empty((q * m, q), dtype=np.uint8)
        for c in range(q):
            cand[c * m:(c + 1) * m] = (inverted + c) % q
        parents = np.tile(np.arange(m, dtype=np.int64), q)
        shifts = np.repeat(np.arange(q, dtype=np.int64), m)
        _, idx = np.unique(_void_view(cand), return_index=True)
        idx.sort()
        layer = FormLayer(k, cand[idx], None, parents[idx], shifts[idx], layer)
        yield layer


@dataclass(frozen=True)
class RankResult:
    """Outcome of a rank search.

    ``rank`` is None when the permutation was not reached within the search
    bound; ``witness`` is a minimal-inversion form evaluating to the input;
    ``certified_exact`` records that the search was exhaustive, so the rank
    (or the "exceeds bound" verdict) is exact rather than an upper bound.
    """

    rank: int | None
    witness: CarlitzForm | None
    certified_exact: bool
    searched_to: int


def _rank_search(perm: Permutation, max_rank: int,
                 leads: Sequence[int] | None,
                 row_budget: int) -> RankResult:
    q = as_modulus(perm.degree).p  # degree must itself be an odd prime
    if max_rank < 0:
        raise ValueError("max_rank must be nonnegative")
    if max_rank > 6 and q > 7:
        raise ValueError(
            f"rank search beyond 6 inversions is only supported for p <= 7 "
            f"(got p = {q}, max_rank = {max_rank})")
    target = np.array(perm.images, dtype=np.uint8)
    # breadth-first through the shallow layers; meet-in-the-middle for the
    # rest (the inversion is an involution, so peeling shift-then-invert off
    # the target must land in the frontmost exhaustive layer)
    front = (max_rank + 1) // 2 if max_rank >= 5 else max_rank
    front_layer = None
    for layer in iter_form_layers(q, front, leads=leads, row_budget=row_budget):
        hit = layer.find(target)
        if hit is not None:
            coeffs = layer.coefficients(hit)
            witness = CarlitzForm(q, coeffs[0], tuple(coeffs[1:]))
            return RankResult(layer.index, witness, True, max_rank)
        front_layer = layer
    if front == max_rank:
        return RankResult(None, None, True, max_rank)

    front_void = _void_view(front_layer.rows)
    order = np.argsort(front_void)
    sorted_void = front_void[order]
    inv_table = np.array(_inversion_images(q), dtype=np.uint8)
    batch = target[None, :]
    for r in range(front + 1, max_rank + 1):
        m = len(batch)
        nxt = np.empty((q * m, q), dtype=np.uint8)
        for c in range(q):
            nxt[c * m:(c + 1) * m] = inv_table[(batch + (q - c)) % q]
        batch = nxt
        probes = _void_view(batch)
        pos = np.searchsorted(sorted_void, probes)
        pos_safe = np.minimum(pos, len(sorted_void) - 1)
        hits = np.flatnonzero((pos < len(sorted_void))
                              & (sorted_void[pos_safe] == probes))
        if hits.size:
            j = int(hits[0])
            head = front_layer.coefficients(int(order[pos[j]]))
            digits = []
            jj = j
            for _ in range(r - front):
                digits.append(jj % q)
                jj //= q
            # digits run last-peeled-first; the form wants s_{front+1}..s_r
            coeffs = head + tuple(reversed(digits))
            witness = CarlitzForm(q, coeffs[0], tuple(coeffs[1:]))
            return RankResult(r, witness, True, max_rank)
    return RankResult(None, None, True, max_rank)


def carlitz_rank(perm: Permutation, max_rank: int = 6,
                 row_budget: int = DEFAULT_ROW_BUDGET) -> RankResult:
    """Exact Carlitz rank of a permutation, searched up to ``max_rank``.

    All nonzero leading coefficients are allowed, which is the standard
    definition.  The search is exhaustive, so the result is certified: a
    numeric rank is the true minimum, and a None rank means the true rank
    exceeds ``max_rank``.
    """
    return _rank_search(perm, max_rank, None, row_budget)


def weak_carlitz_rank(perm: Permutation, max_rank: int = 6,
                      lead_set: Sequence[int] = (1,),
                      row_budget: int = DEFAULT_ROW_BUDGET) -> RankResult:
    """Rank with the leading coefficient restricted to ``lead_set``.

    The default {1} counts representations built purely from shifts and
    inversions; {1, p-1} also allows a leading negation.
    """
    return _rank_search(perm, max_rank, lead_set, row_budget)
