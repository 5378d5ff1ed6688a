"""Permutation-group machinery: stabilizer chains, orders, membership.

The central object is a deterministic incremental Schreier-Sims chain.  It
is built from explicit generators, processes every Schreier generator (no
randomization), and verifies itself level by level, so the group order it
reports is exact — suitable for certifying statements like "these two maps
generate the full symmetric group".
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ffield import as_modulus
from .perm import (Permutation, inversion_perm, negation_perm, poly_perm,
                   shift_perm)


def _mul(f: tuple, g: tuple) -> tuple:
    """(f compose g)(x) = f(g(x)) on raw image tuples."""
    return tuple(f[x] for x in g)


def _inv(f: tuple) -> tuple:
    out = [0] * len(f)
    for x, y in enumerate(f):
        out[y] = x
    return tuple(out)


class _Level:
    """One level of the chain: a base point, its orbit with transversal,
    and the generators known to fix all earlier base points."""

    __slots__ = ("point", "degree", "gens", "transversal")

    def __init__(self, point: int, degree: int):
        self.point = point
        self.degree = degree
        self.gens: list[tuple] = []
        self.transversal: dict[int, tuple] = {point: tuple(range(degree))}

    def rebuild_orbit(self, gens) -> None:
        """Recompute the orbit/transversal from scratch over ``gens``.

        ``gens`` must be the full generating set of this level's group,
        i.e. the union over this and all deeper levels -- deeper
        generators fix this level's point but can still grow its orbit.
        """
        self.transversal = {self.point: tuple(range(self.degree))}
        frontier = [self.point]
        while frontier:
            nxt = []
            for b in frontier:
                rep = self.transversal[b]
                for g in gens:
                    image = g[b]
                    if image not in self.transversal:
                        # rep sends point -> b, so g o rep sends point -> image
                        self.transversal[image] = _mul(g, rep)
                        nxt.append(image)
            frontier = nxt


class StabilizerChain:
    """Incremental deterministic Schreier-Sims structure.

    Level i stabilizes base[:i]; level i's generators all fix the first i
    base points.  The subgroup G_i is generated by the union of generators
    at levels >= i.  After ``extend`` the chain re-verifies itself from the
    bottom up, diving back down whenever a Schreier generator fails to sift.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self.levels: list[_Level] = []

    # -- plumbing ---------------------------------------------------------

    def _first_moved(self, g: tuple) -> int | None:
        for x, y in enumerate(g):
            if y != x:
                return x
        return None

    def _sift(self, g: tuple, start: int = 0):
        """Strip g through levels from ``start``; return (residue, level).

        A residue of the identity means membership; otherwise ``level`` is
        the depth at which sifting got stuck (possibly past the last level).
        """
        h = g
        i = start
        while i < len(self.levels):
            lvl = self.levels[i]
            image = h[lvl.point]
            if image == lvl.point:
                i += 1
                continue
            rep = lvl.transversal.get(image)
            if rep is None:
                return h, i
            h = _mul(_inv(rep), h)
            i += 1
        return h, i

    def _add_generator(self, g: tuple, level: int) -> None:
        """Record g at ``level``, appending new levels if needed."""
        while len(self.levels) <= level:
            # pick the smallest point moved by g that is fixed by the
            # existing base prefix; g fixes base[:level] by construction
            point = self._first_moved(g)
            self.levels.append(_Level(point, self.degree))
        lvl = self.levels[level]
        lvl.gens.append(g)
        lvl.rebuild_orbit(self._level_group_gens(level))

    def _level_group_gens(self, i: int) -> list[tuple]:
        out = []
        for lvl in self.levels[i:]:
            out.extend(lvl.gens)
        return out

    def _verify_level(self, i: int):
        """Check every Schreier generator of level i sifts to the identity
        below; return a failing (residue, stuck_level) or None."""
        lvl = self.levels[i]
        gens = self._level_group_gens(i)
        # a generator added below may have grown this orbit since the last
        # rebuild; refresh so every g[b] lands inside the transversal
        lvl.rebuild_orbit(gens)
        items = sorted(lvl.transversal.items())
        for b, rep in items:
            for g in gens:
                image_rep = lvl.transversal[g[b]]
                schreier = _mul(_inv(image_rep), _mul(g, rep))
                residue, stuck = self._sift(schreier, i + 1)
                if any(y != x for x, y in enumerate(residue)):
                    return residue, stuck
        return None

    def _complete(self) -> None:
        """Bottom-up verification loop: fix the deepest failure and re-check."""
        i = len(self.levels) - 1
        while i >= 0:
            failure = self._verify_level(i)
            if failure is None:
                i -= 1
                continue
            residue, stuck = failure
            self._add_generator(residue, stuck)
            i = stuck  # dive to the level that just changed, re-verify upward

    # -- public API -------------------------------------------------------

    def extend(self, perm: Permutation) -> None:
        if perm.degree != self.degree:
            raise ValueError(
                f"degree mismatch: chain has {self.degree}, got {perm.degree}")
        residue, stuck = self._sift(perm.images)
        if all(y == x for x, y in enumerate(residue)):
            return
        self._add_generator(residue, stuck)
        self._complete()

    def order(self) -> int:
        """Exact group order (arbitrary-precision)."""
        n = 1
        for lvl in self.levels:
            n *= len(lvl.transversal)
        return n

    def contains(self, perm: Permutation) -> bool:
        if perm.degree != self.degree:
            return False
        residue, _ = self._sift(perm.images)
        return all(y == x for x, y in enumerate(residue))

    def base(self) -> tuple[int, ...]:
        return tuple(lvl.point for lvl in self.levels)


def build_chain(perms, degree: int | None = None) -> StabilizerChain:
    """Stabilizer chain for the group generated by ``perms``."""
    seq = list(perms)
    if degree is None:
        if not seq:
            raise ValueError("need generators or an explicit degree")
        degree = seq[0].degree
    chain = StabilizerChain(degree)
    for g in seq:
        chain.extend(g)
    return chain


def group_order(perms, degree: int | None = None) -> int:
    return build_chain(perms, degree).order()


def contains(perms, candidate: Permutation) -> bool:
    """Does the group generated by ``perms`` contain ``candidate``?"""
    return build_chain(perms, candidate.degree).contains(candidate)


@dataclass(frozen=True)
class GenerationVerdict:
    """Outcome of checking what the shift and inversion maps generate.

    ``verdict`` is "Symmetric" or "Alternating" (decided purely by comparing
    the exact order against p! and p!/2; "Neither" would flag a computation
    bug).  ``witness_odd`` is an odd generator certifying the group is not
    inside the alternating group; it is present exactly when the verdict is
    Symmetric.  ``expected`` records the side of the mod-4 dichotomy the
    prime falls on, and ``matches_expected`` compares the two.
    """

    prime: int
    adjoin_negation: bool
    order: int
    verdict: str
    witness_odd: Permutation | None
    expected: str
    matches_expected: bool


def verify_generation(p: int, adjoin_negation: bool = False) -> GenerationVerdict:
    """Compute the group generated by x -> x+1 and x -> x**(p-2) over F_p.

    Without extra generators the result depends on p mod 4: the full
    symmetric group when p = 1 (mod 4), the alternating group when
    p = 3 (mod 4).  Adjoining x -> -x always yields the symmetric group.
    """
    q = as_modulus(p).p
    gens = [shift_perm(q), inversion_perm(q)]
    if adjoin_negation:
        gens.append(negation_perm(q))
    order = group_order(gens, q)
    full = math.factorial(q)
    if order == full:
        verdict = "Symmetric"
    elif 2 * order == full:
        verdict = "Alternating"
    else:
        verdict = "Neither"
    witness = None
    if verdict == "Symmetric":
        witness = next(g for g in gens if g.sign() == -1)
    expected = "Symmetric" if (adjoin_negation or q % 4 == 1) else "Alternating"
    return GenerationVerdict(
        prime=q,
        adjoin_negation=adjoin_negation,
        order=order,
        verdict=verdict,
        witness_odd=witness,
        expected=expected,
        matches_expected=verdict == expected,
    )


def count_distinct_power_perms(p: int) -> int:
    """Number of distinct permutations x -> x**d + c over valid (d, c).

    Enumerates every exponent d in [1, p-2] coprime to p-1 and every shift
    c, deduplicating the resulting image tables; the count works out to
    p * phi(p-1), which the tests check against an independent totient.
    """
    q = as_modulus(p).p
    seen = set()
    for d in range(1, q - 1):
        if math.gcd(d, q - 1) != 1:
            continue
        for c in range(q):
            seen.add(poly_perm(q, d, c).images)
    return len(seen)


def coset_count(p: int) -> int:
    """Number of translation classes among the power permutations x -> x**d.

    Two maps land in the same class when they differ by a shift, so each
    map is normalized by subtracting its value at 0 before deduplication;
    the count works out to phi(p-1).
    """
    q = as_modulus(p).p
    seen = set()
    for d in range(1, q - 1):
        if math.gcd(d, q - 1) != 1:
            continue
        images = poly_perm(q, d, 0).images
        base = images[0]
        seen.add(tuple((y - base) % q for y in images))
    return len(seen)
