"""Permutations of {0, ..., p-1} and the polynomial maps that induce them.

A permutation is stored as its image tuple: ``images[x]`` is where x goes.
Composition follows the functional convention throughout the package:
``(f * g)(x) = f(g(x))``, i.e. the right factor acts first.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

from .ffield import as_modulus


class Permutation:
    """An immutable permutation of {0, ..., n-1} given by its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images) -> None:
        imgs = tuple(int(x) for x in images)
        n = len(imgs)
        seen = [False] * n
        for y in imgs:
            if not 0 <= y < n or seen[y]:
                raise ValueError(f"not a permutation of 0..{n - 1}: {imgs}")
            seen[y] = True
        self.images = imgs

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __getitem__(self, x: int) -> int:
        return self.images[x]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        if other.degree != self.degree:
            raise ValueError(
                f"degree mismatch: {self.degree} vs {other.degree}")
        mine = self.images
        return Permutation(tuple(mine[y] for y in other.images))

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.compose(other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(inv)

    def power(self, e: int) -> "Permutation":
        if e < 0:
            return self.inverse().power(-e)
        result = Permutation.identity(self.degree)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        return self.power(e)

    def is_identity(self) -> bool:
        return all(y == x for x, y in enumerate(self.images))

    def cycle_decomposition(self) -> "CycleDecomposition":
        return decompose(self)

    def sign(self) -> int:
        """+1 for even permutations, -1 for odd ones."""
        n = self.degree
        seen = [False] * n
        cycles = 0
        for start in range(n):
            if seen[start]:
                continue
            cycles += 1
            x = start
            while not seen[x]:
                seen[x] = True
                x = self.images[x]
        return -1 if (n - cycles) % 2 else 1

    def element_order(self) -> int:
        return math.lcm(*(len(c) for c in decompose(self).cycles))

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(x for x, y in enumerate(self.images) if y == x)

    def __eq__(self, other):
        return isinstance(other, Permutation) and other.images == self.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({self.images})"

    def __str__(self):
        return decompose(self).text


@dataclass(frozen=True)
class CycleDecomposition:
    """Nontrivial cycles of a permutation plus its fixed points.

    ``cycles`` lists each cycle as a tuple rotated so its smallest element
    comes first, ordered by that smallest element; ``text`` is the usual
    one-line cycle notation with fixed points omitted ("()" for the identity).
    """

    cycles: tuple[tuple[int, ...], ...]
    fixed: tuple[int, ...]
    text: str


def decompose(perm: Permutation) -> CycleDecomposition:
    n = perm.degree
    seen = [False] * n
    cycles = []
    fixed = []
    for start in range(n):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm.images[x]
        if len(cyc) == 1:
            fixed.append(start)
        else:
            cycles.append(tuple(cyc))
    text = "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)
    return CycleDecomposition(tuple(cycles), tuple(fixed), text or "()")


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Build a permutation of {0, ..., n-1} from cycle notation like "(0 2)(1 3 4)".

    Whitespace or commas separate entries inside a cycle; points not
    mentioned are fixed.  "()" therefore parses to the identity.
    """
    stripped = text.strip()
    body = _CYCLE_RE.sub("", stripped)
    if body.strip():
        raise ValueError(f"malformed cycle notation: {text!r}")
    images = list(range(n))
    touched = set()
    for m in _CYCLE_RE.finditer(stripped):
        entries = [e for e in re.split(r"[\s,]+", m.group(1).strip()) if e]
        cyc = [int(e) for e in entries]
        for x in cyc:
            if not 0 <= x < n:
                raise ValueError(f"cycle entry {x} out of range 0..{n - 1}")
            if x in touched:
                raise ValueError(f"point {x} appears twice in {text!r}")
            touched.add(x)
        for i, x in enumerate(cyc):
            images[x] = cyc[(i + 1) % len(cyc)]
    return Permutation(images)


@dataclass(frozen=True)
class PowerShiftMap:
    """A power-plus-shift map x -> x**exponent + shift over F_p."""

    prime: int
    exponent: int
    shift: int

    def __post_init__(self):
        p = as_modulus(self.prime).p
        if not 1 <= self.exponent <= p - 2:
            raise ValueError(
                f"exponent must lie in [1, {p - 2}], got {self.exponent}")
        if math.gcd(self.exponent, p - 1) != 1:
            raise ValueError(
                f"x**{self.exponent} is not a bijection of F_{p}: "
                f"gcd({self.exponent}, {p - 1}) != 1")
        object.__setattr__(self, "shift", self.shift % p)

    def __call__(self, x: int) -> int:
        p = self.prime
        return (pow(x % p, self.exponent, p) + self.shift) % p


def poly_perm(p: int, exponent: int, shift: int) -> Permutation:
    """The permutation of F_p induced by x -> x**exponent + shift."""
    rep = PowerShiftMap(as_modulus(p).p, exponent, shift)
    return Permutation(rep(x) for x in range(rep.prime))


def shift_perm(p: int, amount: int = 1) -> Permutation:
    """Translation x -> x + amount; amount=1 is the full p-cycle."""
    q = as_modulus(p).p
    a = amount % q
    return Permutation((x + a) % q for x in range(q))


@lru_cache(maxsize=None)
def _inversion_images(p: int) -> tuple[int, ...]:
    return tuple(pow(x, p - 2, p) for x in range(p))


def inversion_perm(p: int) -> Permutation:
    """The inversion map x -> x**(p-2), which sends 0 to 0 and x to 1/x."""
    return Permutation(_inversion_images(as_modulus(p).p))


def negation_perm(p: int) -> Permutation:
    """The negation map x -> -x."""
    q = as_modulus(p).p
    return Permutation((-x) % q for x in range(q))


def compose_in_order(perms) -> Permutation:
    """Apply a sequence of permutations leftmost-first.

    compose_in_order([f, g, h]) sends x to h(g(f(x))) — handy when a
    construction is written down as "do f, then g, then h".
    """
    seq = list(perms)
    if not seq:
        raise ValueError("need at least one permutation")
    result = seq[0]
    for nxt in seq[1:]:
        result = nxt * result
    return result


@dataclass(frozen=True)
class FieldPolynomial:
    """A polynomial over F_p, coefficients constant-term first.

    Trailing zero coefficients are trimmed at construction, so ``degree``
    is honest; ``weight`` counts the nonzero coefficients.
    """

    prime: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        p = as_modulus(self.prime).p
        coeffs = [int(c) % p for c in self.coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [0]
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def weight(self) -> int:
        return sum(1 for c in self.coefficients if c)

    def __call__(self, x: int) -> int:
        p = self.prime
        acc = 0
        for c in reversed(self.coefficients):
            acc = (acc * x + c) % p
        return acc

    def to_permutation(self) -> Permutation:
        return Permutation(self(x) for x in range(self.prime))


def to_polynomial(perm: Permutation, p: int) -> FieldPolynomial:
    """The unique degree < p polynomial interpolating the permutation.

    Uses the finite-field interpolation formula directly: the coefficient
    of x^k for 0 < k < p is -sum_a f(a) * a^(p-1-k) (with 0^0 = 1), and
    the constant term is f(0).
    """
    q = as_modulus(p).p
    if perm.degree != q:
        raise ValueError(f"permutation degree {perm.degree} != prime {q}")
    imgs = perm.images
    coeffs = [0] * q
    coeffs[0] = imgs[0]
    # pw[a] holds a^(p-1-k) for the current k, updated multiplicatively as k
    # descends from p-1 to 1; pw[0] starts at 1 (0^0 = 1 matters at k = p-1)
    # and collapses to 0 on the first update.
    pw = [1] * q
    for k in range(q - 1, 0, -1):
        coeffs[k] = (-sum(imgs[a] * pw[a] for a in range(q))) % q
        for a in range(q):
            pw[a] = pw[a] * a % q
    return FieldPolynomial(q, tuple(coeffs))
