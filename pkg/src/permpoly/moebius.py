"""Fractional-linear maps attached to nested inversion forms.

A nested form agrees with a Moebius transformation (ax+b)/(cx+d) everywhere
except at the handful of points where some intermediate value hits 0 before
an inversion — the pole set.  This module computes the matrix for a form,
its pole set, the agreement count, and the complexity measures (linearity,
degree, weight) that yield lower bounds on the Carlitz rank.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .carlitz import CarlitzForm, iter_form_layers
from .ffield import as_modulus, inv_mod
from .perm import Permutation, to_polynomial


class ProjMatrix:
    """An invertible 2x2 matrix over F_p taken modulo nonzero scalars.

    Entries are canonicalized so the first nonzero entry in row-major order
    is 1, making equality of projective classes plain tuple equality.
    """

    __slots__ = ("prime", "a", "b", "c", "d")

    def __init__(self, prime: int, a: int, b: int, c: int, d: int):
        q = as_modulus(prime).p
        a, b, c, d = a % q, b % q, c % q, d % q
        if (a * d - b * c) % q == 0:
            raise ValueError("matrix is singular mod p")
        for first in (a, b, c, d):
            if first:
                scale = inv_mod(first, q)
                break
        self.prime = q
        self.a = a * scale % q
        self.b = b * scale % q
        self.c = c * scale % q
        self.d = d * scale % q

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other):
        if not isinstance(other, ProjMatrix):
            return NotImplemented
        if other.prime != self.prime:
            raise ValueError("matrices over different primes")
        q = self.prime
        return ProjMatrix(
            q,
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "ProjMatrix":
        # adjugate works projectively: no determinant division needed
        return ProjMatrix(self.prime, self.d, -self.b, -self.c, self.a)

    def apply(self, x: int) -> int | None:
        """(ax+b)/(cx+d) mod p, or None when the denominator vanishes."""
        q = self.prime
        x %= q
        den = (self.c * x + self.d) % q
        if den == 0:
            return None
        return (self.a * x + self.b) * inv_mod(den, q) % q

    def images(self) -> list[int | None]:
        return [self.apply(x) for x in range(self.prime)]

    def __eq__(self, other):
        return (isinstance(other, ProjMatrix) and other.prime == self.prime
                and other.entries() == self.entries())

    def __hash__(self):
        return hash((self.prime, self.entries()))

    def __repr__(self):
        return (f"ProjMatrix({self.prime}, [[{self.a}, {self.b}], "
                f"[{self.c}, {self.d}]])")


def moebius_apply(mat: ProjMatrix, x: int) -> int | None:
    """Value of the fractional-linear map at x, or None at its pole."""
    return mat.apply(x)


def _partial_matrices(form: CarlitzForm) -> list[ProjMatrix]:
    """Matrices M_0 .. M_n: M_m covers the form truncated after shift m.

    One more inversion layer with shift s multiplies on the left by
    [[s, 1], [1, 0]]: inverting swaps the rows, adding s mixes them.
    """
    q = form.prime
    mats = [ProjMatrix(q, form.lead, form.shifts[0], 0, 1)]
    for s in form.shifts[1:]:
        mats.append(ProjMatrix(q, s, 1, 1, 0) * mats[-1])
    return mats


def form_to_matrix(form: CarlitzForm) -> ProjMatrix:
    """The fractional-linear map a form agrees with away from its poles."""
    return _partial_matrices(form)[-1]


@dataclass(frozen=True)
class PoleSet:
    """Points where an intermediate map of a nested form is undefined.

    ``poles`` keeps first-encounter order with duplicates collapsed;
    ``form_index`` is the form's inversion count n, and len(poles) <= n.
    """

    prime: int
    poles: tuple[int, ...]
    form_index: int

    def __contains__(self, x: int) -> bool:
        return x % self.prime in self.poles

    def __len__(self) -> int:
        return len(self.poles)


def pole_set(form: CarlitzForm) -> PoleSet:
    """Poles of a form: preimages of the inversion-time zeros.

    The m-th inversion is undefined where the previous intermediate map
    takes the value 0, i.e. at x = -b/a for the partial matrix [[a, b],
    [c, d]] before that inversion; a = 0 means the value 0 is never taken
    and the layer contributes no pole.
    """
    q = form.prime
    seen: list[int] = []
    for mat in _partial_matrices(form)[:-1]:
        if mat.a == 0:
            continue
        rho = (-mat.b) * inv_mod(mat.a, q) % q
        if rho not in seen:
            seen.append(rho)
    return PoleSet(q, tuple(seen), form.inversions)


def agreement_count(form: CarlitzForm) -> int:
    """Number of points where the form and its fractional-linear map agree.

    Points where the map is undefined never count; the count is always at
    least p - n for a form with n inversions, since the two maps coincide
    off the pole set.
    """
    mat = form_to_matrix(form)
    return sum(1 for x in range(form.prime) if form(x) == mat.apply(x))


def a_linear_count(perm: Permutation, a: int) -> int:
    """How many points satisfy f(c) = a*c."""
    p = perm.degree
    a %= p
    return sum(1 for c in range(p) if perm.images[c] == a * c % p)


def linearity(perm: Permutation) -> tuple[int, int]:
    """Max over nonzero slopes a of #{c : f(c) = a*c}, with a best slope.

    Returns (count, slope); ties go to the smallest slope.  The count is
    at least 1: the p - 1 lines through the origin cover every nonzero
    point once, and there are only p - 1 nonzero values f can take there.
    """
    p = perm.degree
    best, best_a = -1, 0
    for a in range(1, p):
        n = a_linear_count(perm, a)
        if n > best:
            best, best_a = n, a
    return best, best_a


@dataclass(frozen=True)
class MeasureReport:
    """Complexity measures of a permutation and the rank bounds they imply.

    The three lower bounds on the Carlitz rank are p - linearity,
    p - degree - 1, and ceil(p / (weight - 2)) + 1; the last degenerates
    for weight <= 2 and is reported as None there.
    """

    prime: int
    linearity: int
    best_slope: int
    degree: int
    weight: int
    rank_lower_bounds: tuple[int, int, int | None]


def measures(perm: Permutation) -> MeasureReport:
    """Linearity, interpolation degree and weight, and rank lower bounds."""
    q = as_modulus(perm.degree).p
    lin, slope = linearity(perm)
    poly = to_polynomial(perm, q)
    deg, weight = poly.degree, poly.weight
    if weight > 2:
        weight_bound = -(-q // (weight - 2)) + 1
    else:
        weight_bound = None
    return MeasureReport(
        prime=q,
        linearity=lin,
        best_slope=slope,
        degree=deg,
        weight=weight,
        rank_lower_bounds=(q - lin, q - deg - 1, weight_bound),
    )


@dataclass(frozen=True)
class AlphaLinearCheck:
    """Exhaustive verdict for the nearly-linear rigidity statement.

    ``holds`` is True when every form with lead alpha and at most 4
    inversions whose permutation agrees with alpha*x on at least p - 4
    points agrees with alpha*x everywhere OUTSIDE the form's pole set.
    Equivalently: such a form's matrix shadow is exactly alpha*x, so its
    deviation from the line is confined to the <= 4 points where an
    intermediate inversion met zero.  The deviation cannot be squeezed
    out entirely: e.g. with alpha = 1 the three-inversion form with
    coefficients (1, s, s, s, 0), s**2 = -1 mod p, is a transposition,
    which matches x on p - 2 points yet is not x.  A flagged form whose
    mismatch escapes its pole set would disprove the statement; its
    coefficients are reported as ``counterexample``.
    """

    prime: int
    alpha: int
    holds: bool
    counterexample: tuple[int, ...] | None
    forms_checked: int
    flagged_rows: int


def check_alpha_linear_uniqueness(p: int, alpha: int,
                                  n_parts: int = 1) -> AlphaLinearCheck:
    """Scan every lead-alpha form with <= 4 inversions for near-linearity.

    For p >= 13, any such form with at least p - 4 alpha-linear points
    has at least four of them away from its (at most four) poles, which
    pins its matrix shadow to the line x -> alpha*x; the form then equals
    the line except at poles.  This check verifies that conclusion
    exhaustively, flagging every near-linear form and testing its
    off-pole agreement.  ``n_parts`` splits each layer's row block into
    contiguous chunks (useful for threading); the verdict is independent
    of the partitioning.
    """
    q = as_modulus(p).p
    if q < 13:
        raise ValueError(f"the uniqueness statement needs p >= 13, got {q}")
    alpha %= q
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    if n_parts < 1:
        raise ValueError("n_parts must be at least 1")
    line = (alpha * np.arange(q, dtype=np.int64) % q).astype(np.uint8)
    threshold = q - 4
    checked = 0
    flagged = 0
    counterexample = None
    for layer in iter_form_layers(q, 4, leads=[alpha]):
        rows = layer.rows
        checked += len(rows)
        bounds = np.linspace(0, len(rows), n_parts + 1, dtype=np.int64)
        for lo, hi in zip(bounds[:-1], bounds[1:]):
            chunk = rows[lo:hi]
            if not len(chunk):
                continue
            counts = (chunk == line).sum(axis=1)
            for j in np.flatnonzero(counts >= threshold):
                flagged += 1
                if counterexample is not None:
                    continue
                coeffs = layer.coefficients(int(lo + j))
                form = CarlitzForm(q, coeffs[0], coeffs[1:])
                off_pole = np.ones(q, dtype=bool)
                for rho in pole_set(form).poles:
                    off_pole[rho] = False
                if (chunk[j] != line)[off_pole].any():
                    counterexample = coeffs
    return AlphaLinearCheck(
        prime=q,
        alpha=alpha,
        holds=counterexample is None,
        counterexample=counterexample,
        forms_checked=checked,
        flagged_rows=flagged,
    )
