"""Exact arithmetic in F_p and its quadratic extension F_{p^2}.

Residues are plain Python ints kept reduced to [0, p).  The quadratic
extension is realised as pairs u + v*sqrt(D) for a fixed quadratic
non-residue D, which is all the structure needed to compute multiplicative
orders of elements of F_{p^2}.
"""

from __future__ import annotations

from functools import lru_cache


def is_odd_prime(n: int) -> bool:
    """Deterministic trial-division primality check, adequate for n < 2**31."""
    if n < 3 or n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeModulus:
    """An odd prime modulus in [3, 2**31), validated once at construction."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if isinstance(p, bool) or not isinstance(p, int):
            raise TypeError(f"modulus must be an int, got {type(p).__name__}")
        if not 3 <= p < 2**31:
            raise ValueError(f"modulus must satisfy 3 <= p < 2**31, got {p}")
        if not is_odd_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        self.p = p

    def __repr__(self):
        return f"PrimeModulus({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeModulus) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeModulus", self.p))

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value, self)

    def nonresidue(self) -> int:
        """Smallest quadratic non-residue, found by scanning 2, 3, 4, ..."""
        return _first_nonresidue(self.p)


@lru_cache(maxsize=None)
def modulus(p: int) -> PrimeModulus:
    return PrimeModulus(p)


def as_modulus(p) -> PrimeModulus:
    """Coerce an int to a shared PrimeModulus (instances pass through)."""
    if isinstance(p, PrimeModulus):
        return p
    return modulus(p)


def legendre(a: int, p) -> int:
    """Legendre symbol: 1 for nonzero squares mod p, -1 for non-squares, 0 for 0."""
    q = as_modulus(p).p
    r = pow(a % q, (q - 1) // 2, q)
    return -1 if r == q - 1 else r


@lru_cache(maxsize=None)
def _first_nonresidue(p: int) -> int:
    for d in range(2, p):
        if legendre(d, p) == -1:
            return d
    raise ValueError(f"no quadratic non-residue modulo {p}")


def sqrt_mod(a: int, p) -> int:
    """The smaller square root of a quadratic residue a modulo p.

    Uses the (p+1)/4 shortcut for p = 3 mod 4 and Tonelli-Shanks otherwise;
    raises ValueError when a is not a square.
    """
    m = as_modulus(p)
    q = m.p
    a %= q
    if a == 0:
        return 0
    if legendre(a, m) != 1:
        raise ValueError(f"{a} is not a quadratic residue modulo {q}")
    if q % 4 == 3:
        r = pow(a, (q + 1) // 4, q)
        return min(r, q - r)
    s, e = q - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    c = pow(m.nonresidue(), s, q)
    r = pow(a, (s + 1) // 2, q)
    t = pow(a, s, q)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % q
            i += 1
        b = pow(c, 1 << (e - i - 1), q)
        r = r * b % q
        c = b * b % q
        t = t * c % q
        e = i
    return min(r, q - r)


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
    return old_r, old_s


def inv_mod(a: int, p) -> int:
    """Inverse of a modulo p via the extended Euclidean algorithm.

    Deliberately independent of the Fermat route pow(a, p-2, p) so the two
    code paths can be cross-checked against each other.
    """
    q = as_modulus(p).p
    a %= q
    if a == 0:
        raise ValueError(f"0 is not invertible modulo {q}")
    _, x = _xgcd(a, q)
    return x % q


class FieldElement:
    """A residue in [0, p), closed under the field operations.

    Mixed arithmetic with plain ints is allowed; operands carrying a
    different modulus are rejected with a ValueError.
    """

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, mod) -> None:
        m = as_modulus(mod)
        self.value = int(value) % m.p
        self.modulus = m

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.modulus.p != self.modulus.p:
                raise ValueError(
                    f"modulus mismatch: {self.modulus.p} vs {other.modulus.p}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return FieldElement(other, self.modulus)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.value + o.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.value - o.value, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(o.value - self.value, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.value * o.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.modulus)

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inv() ** (-e)
        return FieldElement(pow(self.value, e, self.modulus.p), self.modulus)

    def inv(self) -> "FieldElement":
        return FieldElement(inv_mod(self.value, self.modulus), self.modulus)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return other.modulus.p == self.modulus.p and other.value == self.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.modulus.p
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __int__(self):
        return self.value

    __index__ = __int__

    def __repr__(self):
        return f"{self.value} (mod {self.modulus.p})"


class QuadExtElement:
    """u + v*sqrt(D) with D a quadratic non-residue: an element of F_{p^2}."""

    __slots__ = ("u", "v", "disc", "modulus")

    def __init__(self, u: int, v: int, disc: int, mod) -> None:
        m = as_modulus(mod)
        d = disc % m.p
        if legendre(d, m) != -1:
            raise ValueError(
                f"discriminant {d} is a square modulo {m.p}; need a non-residue")
        self.u = int(u) % m.p
        self.v = int(v) % m.p
        self.disc = d
        self.modulus = m

    @classmethod
    def one(cls, disc: int, mod) -> "QuadExtElement":
        return cls(1, 0, disc, mod)

    def _check(self, other):
        if not isinstance(other, QuadExtElement):
            raise TypeError("expected a QuadExtElement")
        if other.modulus.p != self.modulus.p or other.disc != self.disc:
            raise ValueError("operands live in different quadratic extensions")

    def __mul__(self, other):
        self._check(other)
        p = self.modulus.p
        u = (self.u * other.u + self.disc * self.v * other.v) % p
        v = (self.u * other.v + self.v * other.u) % p
        return QuadExtElement(u, v, self.disc, self.modulus)

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inv() ** (-e)
        result = QuadExtElement.one(self.disc, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def norm(self) -> int:
        p = self.modulus.p
        return (self.u * self.u - self.disc * self.v * self.v) % p

    def inv(self) -> "QuadExtElement":
        n = self.norm()
        if n == 0:
            raise ValueError("0 is not invertible")
        ni = inv_mod(n, self.modulus)
        p = self.modulus.p
        return QuadExtElement(self.u * ni % p, -self.v * ni % p,
                              self.disc, self.modulus)

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def is_one(self) -> bool:
        return self.u == 1 and self.v == 0

    def __eq__(self, other):
        return (isinstance(other, QuadExtElement)
                and other.modulus.p == self.modulus.p and other.disc == self.disc
                and other.u == self.u and other.v == self.v)

    def __hash__(self):
        return hash((self.u, self.v, self.disc, self.modulus.p))

    def __repr__(self):
        return f"{self.u} + {self.v}*sqrt({self.disc}) (mod {self.modulus.p})"


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def _order_from(annihilator: int, power_is_one) -> int:
    # assumes x^annihilator = 1; strips prime factors while the power stays 1
    o = annihilator
    for q in _prime_factors(annihilator):
        while o % q == 0 and power_is_one(o // q):
            o //= q
    return o


def quad_order(x: QuadExtElement) -> int:
    """Multiplicative order of x in F_{p^2}^*; always divides p^2 - 1."""
    if x.is_zero():
        raise ValueError("0 has no multiplicative order")
    p = x.modulus.p
    return _order_from(p * p - 1, lambda k: (x ** k).is_one())


def mult_order(a: int, p) -> int:
    """Multiplicative order of a nonzero residue modulo p; divides p - 1."""
    q = as_modulus(p).p
    a %= q
    if a == 0:
        raise ValueError("0 has no multiplicative order")
    return _order_from(q - 1, lambda k: pow(a, k, q) == 1)
