"""Generalized Fibonacci sequences mod p and the cycle structure they drive.

The sequence F_0 = 0, F_1 = 1, F_{n+1} = alpha*F_n + F_{n-1} controls the
iterates of the permutation x -> x**(p-2) + alpha: the first index n with
F_n = 0 is both the multiplicative order of the ratio of the roots of
x**2 - alpha*x - 1 and the point where the n-th iterate collapses to a
single explicit cycle of Fibonacci ratios.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ffield import (QuadExtElement, as_modulus, inv_mod, legendre,
                     mult_order, quad_order, sqrt_mod)
from .perm import CycleDecomposition, Permutation, decompose, poly_perm


class FibSequence:
    """Lazily extended values of F_0, F_1, F_2, ... for a fixed alpha mod p."""

    def __init__(self, alpha: int, p) -> None:
        self.modulus = as_modulus(p)
        self.alpha = alpha % self.modulus.p
        self._vals = [0, 1]

    @property
    def prime(self) -> int:
        return self.modulus.p

    @property
    def ramified(self) -> bool:
        """True when alpha**2 + 4 = 0, i.e. the ratio roots coincide."""
        return (self.alpha * self.alpha + 4) % self.prime == 0

    def value(self, n: int) -> int:
        if n < 0:
            raise ValueError("index must be nonnegative")
        p, a = self.prime, self.alpha
        vals = self._vals
        while len(vals) <= n:
            vals.append((a * vals[-1] + vals[-2]) % p)
        return vals[n]

    def values(self, count: int) -> tuple[int, ...]:
        """The first ``count`` values F_0 .. F_{count-1}."""
        if count > 0:
            self.value(count - 1)
        return tuple(self._vals[:count])


def fib_eval(n: int, alpha: int, p) -> int:
    """F_n(alpha) mod p by the linear recurrence."""
    return FibSequence(alpha, p).value(n)


def fib_matrix_power(n: int, alpha: int, p) -> tuple[tuple[int, int], tuple[int, int]]:
    """[[alpha,1],[1,0]]**n mod p by fast exponentiation.

    Entries equal [[F_{n+1}, F_n], [F_n, F_{n-1}]], which makes this an
    independent cross-check of the recurrence.
    """
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    q = as_modulus(p).p
    a = alpha % q

    def mul(m1, m2):
        (a11, a12), (a21, a22) = m1
        (b11, b12), (b21, b22) = m2
        return ((a11 * b11 + a12 * b21) % q, (a11 * b12 + a12 * b22) % q), \
               ((a21 * b11 + a22 * b21) % q, (a21 * b12 + a22 * b22) % q)

    result = ((1, 0), (0, 1))
    base = ((a, 1), (1, 0))
    e = n
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def min_zero_index(alpha: int, p, bound: int | None = None) -> int | None:
    """Least n >= 1 with F_n(alpha) = 0 mod p, scanning up to ``bound``.

    The default bound p**2 - 1 always suffices: the index divides p**2 - 1
    in the unramified case and equals p in the ramified one.
    """
    q = as_modulus(p).p
    if bound is None:
        bound = q * q - 1
    if bound < 1:
        raise ValueError("bound must be at least 1")
    a = alpha % q
    prev, cur = 0, 1  # F_0, F_1
    for n in range(1, bound + 1):
        if cur == 0:
            return n
        prev, cur = cur, (a * cur + prev) % q
    return None


def ratio_order(alpha: int, p) -> int:
    """Multiplicative order of the ratio of the two roots of x**2 - alpha*x - 1.

    The roots z = (alpha +/- sqrt(alpha**2+4))/2 live in F_p when the
    discriminant is a square and in F_{p^2} otherwise; either way the order
    of z_plus/z_minus equals the least n with F_n(alpha) = 0.  The sign
    choice only inverts the ratio, so the order is well defined.
    """
    q = as_modulus(p).p
    a = alpha % q
    disc = (a * a + 4) % q
    if disc == 0:
        raise ValueError(
            f"alpha = {a} is ramified mod {q} (alpha**2 + 4 = 0): "
            "the root ratio degenerates")
    if legendre(disc, q) == 1:
        s = sqrt_mod(disc, q)
        half = inv_mod(2, q)
        z_plus = (a + s) * half % q
        z_minus = (a - s) * half % q
        ratio = z_plus * inv_mod(z_minus, q) % q
        return mult_order(ratio, q)
    half = inv_mod(2, q)
    z_plus = QuadExtElement(a * half % q, half, disc, q)
    z_minus = QuadExtElement(a * half % q, (q - half) % q, disc, q)
    return quad_order(z_plus * z_minus.inv())


def _ratio_cycle_entries(alpha: int, p: int, n: int) -> list[int]:
    """Entries (0, rho_{n-1}, ..., rho_2) with rho_i = -F_{i-1}/F_i.

    rho_i is the point sent to 0 by the (i-1)-th iterate; together they are
    the orbit of 0 listed backwards, which is why they spell out the cycle.
    """
    seq = FibSequence(alpha, p)
    q = seq.prime
    entries = [0]
    for i in range(n - 1, 1, -1):
        f_prev, f_i = seq.value(i - 1), seq.value(i)
        entries.append((-f_prev) * pow(f_i, q - 2, q) % q)
    return entries


@dataclass(frozen=True)
class FibCycleReport:
    """What the n-th iterate of x -> x**(p-2) + alpha looks like.

    ``n_zero`` is the first vanishing index of the Fibonacci sequence;
    ``cycle`` is the explicit ratio cycle (0 -F_{n-2}/F_{n-1} ... -F_1/F_2)
    predicted for the n-th iterate, and ``cycle_matches`` records whether
    brute-force composition agrees.  ``hypothesis_unmet`` flags n >= p,
    where the prediction carries no guarantee (the comparison outcome is
    still reported).  ``consecutive_equal`` records F_{n+1} = F_{n-1}, the
    identity that makes the iterate fix everything off the cycle.
    """

    prime: int
    alpha: int
    ramified: bool
    n_zero: int | None
    divides_p2_minus_1: bool
    hypothesis_unmet: bool
    consecutive_equal: bool | None
    cycle: CycleDecomposition | None
    cycle_matches: bool | None


def iterate_check(alpha: int, p, bound: int | None = None) -> FibCycleReport:
    """Compare the n_zero-th iterate of x -> x**(p-2) + alpha with its
    predicted Fibonacci-ratio cycle."""
    q = as_modulus(p).p
    a = alpha % q
    if a == 0:
        raise ValueError("alpha must be nonzero")
    seq = FibSequence(a, q)
    n = min_zero_index(a, q, bound)
    if n is None:
        return FibCycleReport(q, a, seq.ramified, None, False, True,
                              None, None, None)
    consecutive = seq.value(n + 1) == seq.value(n - 1)
    entries = _ratio_cycle_entries(a, q, n)
    cycle = None
    matches = None
    if len(entries) <= q and len(set(entries)) == len(entries):
        images = list(range(q))
        for idx, x in enumerate(entries):
            images[x] = entries[(idx + 1) % len(entries)]
        predicted = Permutation(images)
        cycle = decompose(predicted)
        f = poly_perm(q, q - 2, a)
        matches = f.power(n) == predicted
    return FibCycleReport(
        prime=q,
        alpha=a,
        ramified=seq.ramified,
        n_zero=n,
        divides_p2_minus_1=(q * q - 1) % n == 0,
        hypothesis_unmet=n >= q,
        consecutive_equal=consecutive,
        cycle=cycle,
        cycle_matches=matches,
    )


def fixed_point_converse(alpha: int, p, n: int) -> bool:
    """Truth of: (the n-th iterate fixes >= n+4 points) implies F_n = 0.

    Only meaningful — and only accepted — when 2n + 4 <= p.
    """
    q = as_modulus(p).p
    if 2 * n + 4 > q:
        raise ValueError(f"need 2n + 4 <= p, got n = {n}, p = {q}")
    a = alpha % q
    if a == 0:
        raise ValueError("alpha must be nonzero")
    iterate = poly_perm(q, q - 2, a).power(n)
    many_fixed = len(iterate.fixed_points()) >= n + 4
    return (not many_fixed) or fib_eval(n, a, q) == 0
