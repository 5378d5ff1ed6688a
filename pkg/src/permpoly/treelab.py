"""Inverse-tree experiments: orbit statistics over shift/invert trees.

A depth-d tree path (i_1, ..., i_d) with entries in [1, p-1] names the
permutation built by applying a shift by i_1, then alternately the
inversion x -> x**(p-2) and a shift by i_k ("first type"); the "second
type" applies one more inversion at the end.  The experiments ask, per
leaf, whether 2 lands in the same cycle as 1, exhaustively over all
(p-1)**d paths or over seeded random samples, and summarize the success
counts with a one-sample proportion test.
"""

from __future__ import annotations

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.stats import binom, norm

from .ffield import as_modulus
from .perm import Permutation, _inversion_images

DEFAULT_LEAF_BUDGET = 10_000_000

LEAF_CONVENTION = "first=shift(i1)[invert shift(ik)]*;second=first-then-invert"
"""Recorded in every output row: which permutation a path denotes."""

RNG_ID = "numpy-pcg64"
"""Identifier of the sampling generator, recorded alongside the seed."""

PERM_TYPES = ("first", "second", "both")

# final-level expansions are processed in parent chunks of about this many
# table entries to bound peak memory
_CHUNK_ENTRIES = 4_000_000


def _table_dtype(p: int):
    return np.uint8 if p < 256 else np.uint16


@lru_cache(maxsize=None)
def _tables(p: int):
    """(inversion images, step tables): step[i-1][v] = invert v then add i.

    Cached read-only so every caller shares one copy.
    """
    dt = _table_dtype(p)
    inv = np.array(_inversion_images(p), dtype=dt)
    steps = np.empty((p - 1, p), dtype=dt)
    for i in range(1, p):
        steps[i - 1] = (inv.astype(np.int64) + i) % p
    inv.flags.writeable = False
    steps.flags.writeable = False
    return inv, steps


@dataclass(frozen=True)
class TreePath:
    """A path (i_1, ..., i_d), each entry in [1, p-1]; depth 0 is the root."""

    prime: int
    indices: tuple[int, ...]

    def __post_init__(self):
        p = as_modulus(self.prime).p
        object.__setattr__(self, "prime", p)
        idx = tuple(int(i) for i in self.indices)
        for i in idx:
            if not 1 <= i <= p - 1:
                raise ValueError(f"path entry {i} out of range [1, {p - 1}]")
        object.__setattr__(self, "indices", idx)

    @property
    def depth(self) -> int:
        return len(self.indices)


def _check_type(perm_type: str) -> str:
    if perm_type not in PERM_TYPES:
        raise ValueError(
            f"perm_type must be one of {PERM_TYPES}, got {perm_type!r}")
    return perm_type


def leaf_perm(path: TreePath, perm_type: str = "first") -> Permutation:
    """The permutation a tree path denotes (pure-Python reference version)."""
    if _check_type(perm_type) == "both":
        raise ValueError('"both" is a statistic over the two types, '
                         "not a permutation; ask for first or second")
    p = path.prime
    inv = _inversion_images(p)
    images = list(range(p))
    for k, i in enumerate(path.indices):
        if k == 0:
            images = [(v + i) % p for v in images]
        else:
            images = [(inv[v] + i) % p for v in images]
    if perm_type == "second":
        images = [inv[v] for v in images]
    return Permutation(images)


def same_cycle(perm: Permutation, a: int, b: int) -> bool:
    """Whether b lies in the forward orbit of a (equivalently, same cycle)."""
    if a == b:
        raise ValueError("a and b must differ")
    n = perm.degree
    if not (0 <= a < n and 0 <= b < n):
        raise ValueError(f"points must lie in [0, {n - 1}]")
    x = perm.images[a]
    while x != a:
        if x == b:
            return True
        x = perm.images[x]
    return False


def _orbit_bits(tables: np.ndarray, start: int = 1, target: int = 2) -> np.ndarray:
    """Per row: does ``target`` appear in the orbit of ``start``?

    Walks all rows in lockstep, at most p steps, early-exiting once every
    walker has either found the target or returned to the start.
    """
    n, p = tables.shape
    rows = np.arange(n)
    y = np.full(n, start, dtype=tables.dtype)
    found = np.zeros(n, dtype=bool)
    for _ in range(p):
        y = tables[rows, y]
        found |= y == target
        if (found | (y == start)).all():
            break
    return found


def _expand_level(level: np.ndarray, steps: np.ndarray) -> np.ndarray:
    """All children of the given rows, parent-major (lexicographic) order."""
    kids = steps[:, level]  # (p-1, m, p)
    return kids.transpose(1, 0, 2).reshape(-1, level.shape[1])


def _first_second_bits(leaves: np.ndarray, inv: np.ndarray):
    first = _orbit_bits(leaves)
    second = _orbit_bits(inv[leaves])
    return first, second


def _part_bits(p: int, depth: int, lo: int, hi: int):
    """Bits for all paths whose first index lies in [lo+1, hi]."""
    inv, steps = _tables(p)
    x = np.arange(p, dtype=np.int64)
    level = ((x[None, :] + np.arange(lo + 1, hi + 1)[:, None]) % p).astype(
        steps.dtype)
    if depth == 0:
        raise AssertionError("depth 0 is handled by the caller")
    for _ in range(depth - 2):
        level = _expand_level(level, steps)
    if depth == 1:
        return _first_second_bits(level, inv)
    # expand the last level in parent chunks to bound memory
    step = max(1, _CHUNK_ENTRIES // ((p - 1) * p))
    firsts, seconds = [], []
    for start in range(0, len(level), step):
        leaves = _expand_level(level[start:start + step], steps)
        f, s = _first_second_bits(leaves, inv)
        firsts.append(f)
        seconds.append(s)
    return np.concatenate(firsts), np.concatenate(seconds)


def _split_first_coords(p: int, n_parts: int):
    """Contiguous, order-preserving split of the p-1 first coordinates."""
    bounds = np.linspace(0, p - 1, n_parts + 1, dtype=np.int64)
    return [(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:])
            if hi > lo]


def exhaustive_bit_pair(p: int, depth: int,
                        budget: int = DEFAULT_LEAF_BUDGET,
                        n_parts: int = 1,
                        use_threads: bool = False):
    """(first-type bits, second-type bits) over all paths in lexicographic
    order.

    ``n_parts`` splits the work by first coordinate; results are identical
    for every split and threading choice, since parts concatenate in order.
    """
    q = as_modulus(p).p
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if n_parts < 1:
        raise ValueError("n_parts must be at least 1")
    n_leaves = (q - 1) ** depth
    if n_leaves > budget:
        raise ValueError(
            f"exhaustive run over (p-1)**depth = {n_leaves} leaves exceeds "
            f"the budget of {budget}; pass budget={n_leaves} to allow it")
    inv, _ = _tables(q)
    if depth == 0:
        identity = np.arange(q, dtype=inv.dtype)[None, :]
        return _first_second_bits(identity, inv)
    parts = _split_first_coords(q, min(n_parts, q - 1))
    if use_threads and len(parts) > 1:
        with ThreadPoolExecutor(max_workers=len(parts)) as pool:
            results = list(pool.map(
                lambda part: _part_bits(q, depth, *part), parts))
    else:
        results = [_part_bits(q, depth, lo, hi) for lo, hi in parts]
    first = np.concatenate([r[0] for r in results])
    second = np.concatenate([r[1] for r in results])
    return first, second


def exhaustive_bits(p: int, depth: int, perm_type: str = "first",
                    budget: int = DEFAULT_LEAF_BUDGET,
                    n_parts: int = 1,
                    use_threads: bool = False) -> np.ndarray:
    """Success bits (uint8) per path, lexicographic order.

    Bit = 1 when 2 shares a cycle with 1 under the path's permutation of
    the requested type ("both" = both types succeed).
    """
    _check_type(perm_type)
    first, second = exhaustive_bit_pair(p, depth, budget, n_parts, use_threads)
    if perm_type == "first":
        bits = first
    elif perm_type == "second":
        bits = second
    else:
        bits = first & second
    return bits.astype(np.uint8)


@dataclass(frozen=True)
class ExperimentRecord:
    """Success counts for one (prime, depth, type) cell of an experiment."""

    prime: int
    depth: int
    perm_type: str
    n_observations: int
    n_success: int
    mode: str
    seed: int | None = None

    def __post_init__(self):
        if not 0 <= self.n_success <= self.n_observations:
            raise ValueError("need 0 <= n_success <= n_observations")

    @property
    def proportion(self) -> float:
        return self.n_success / self.n_observations


def tree_records(p, depth, mode, seed, first, second):
    """Bundle first/second bit streams into the three ExperimentRecords."""
    both = first & second
    return {
        kind: ExperimentRecord(
            prime=p, depth=depth, perm_type=kind,
            n_observations=int(len(bits)), n_success=int(bits.sum()),
            mode=mode, seed=seed)
        for kind, bits in (("first", first), ("second", second),
                           ("both", both))
    }


def exhaustive_experiment(p: int, depth: int,
                          budget: int = DEFAULT_LEAF_BUDGET,
                          n_parts: int = 1,
                          use_threads: bool = False) -> dict[str, ExperimentRecord]:
    """ExperimentRecords for first/second/both over the full tree level."""
    q = as_modulus(p).p
    first, second = exhaustive_bit_pair(q, depth, budget, n_parts, use_threads)
    return tree_records(q, depth, "exhaustive", None, first, second)


def sample_path_bits(p: int, depth: int, n_samples: int, seed: int):
    """(first bits, second bits) for seeded uniform random paths.

    The path matrix is drawn in one rng.integers call, so the bit streams
    are a pure function of (p, depth, n_samples, seed).
    """
    q = as_modulus(p).p
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    inv, steps = _tables(q)
    rng = np.random.default_rng(seed)
    paths = rng.integers(1, q, size=(n_samples, depth))
    x = np.arange(q, dtype=np.int64)
    if depth == 0:
        leaves = np.broadcast_to(x, (n_samples, q)).astype(steps.dtype)
    else:
        leaves = ((x[None, :] + paths[:, 0][:, None]) % q).astype(steps.dtype)
        for k in range(1, depth):
            leaves = steps[paths[:, k] - 1][
                np.arange(n_samples)[:, None], leaves]
    return _first_second_bits(leaves, inv)


def sample_paths(p: int, depth: int, n_samples: int,
                 seed: int) -> dict[str, ExperimentRecord]:
    """ExperimentRecords for first/second/both over seeded random paths."""
    q = as_modulus(p).p
    first, second = sample_path_bits(q, depth, n_samples, seed)
    return tree_records(q, depth, "sampled", seed, first, second)


@dataclass(frozen=True)
class TestResult:
    """One-sample proportion test output.

    ``statistic`` is the z-score for the default test and the observed
    proportion for the exact binomial variant.
    """

    statistic: float
    p_two_sided: float
    p_less: float
    p_greater: float


def proportion_test(n_success: int, n_observations: int,
                    null_p: float = 0.5, exact: bool = False) -> TestResult:
    """Test the success proportion against ``null_p``.

    The default is the z-test with the null standard error; ``exact``
    switches to the binomial tail probabilities.  Two-sided p-value is
    twice the smaller tail, clipped to 1.
    """
    if n_observations < 1:
        raise ValueError("n_observations must be at least 1")
    if not 0 <= n_success <= n_observations:
        raise ValueError("need 0 <= n_success <= n_observations")
    if not 0 < null_p < 1:
        raise ValueError("null_p must lie strictly between 0 and 1")
    if exact:
        p_less = float(binom.cdf(n_success, n_observations, null_p))
        p_greater = float(binom.sf(n_success - 1, n_observations, null_p))
        statistic = n_success / n_observations
    else:
        se = (null_p * (1 - null_p) / n_observations) ** 0.5
        statistic = (n_success / n_observations - null_p) / se
        p_less = float(norm.cdf(statistic))
        p_greater = float(norm.sf(statistic))
    return TestResult(
        statistic=float(statistic),
        p_two_sided=min(1.0, 2 * min(p_less, p_greater)),
        p_less=p_less,
        p_greater=p_greater,
    )


def runs_test(bits: Sequence[int] | np.ndarray) -> TestResult:
    """Wald-Wolfowitz runs test on an ordered bit string.

    Where :func:`proportion_test` asks *how many* ones a string has, this
    asks how they are *arranged*: the statistic is the z-score of the
    number of runs (maximal constant blocks) against what a random
    shuffle of the same ones and zeros would produce.  A strongly
    negative statistic means the string clusters into long constant
    blocks; a strongly positive one means it alternates more than chance
    allows.  Leaf-bit strings in path order are where this matters:
    strings whose paths end in a shift over-alternate with growing
    depth, while strings whose paths end in an inversion clump.

    Uses the normal approximation without continuity correction, so
    p-values for tiny strings are indicative only.  Raises
    ``ValueError`` for strings that are all zeros or all ones, where the
    run count carries no information.
    """
    arr = np.asarray(bits)
    n = arr.size
    n_ones = int(np.count_nonzero(arr))
    n_zeros = n - n_ones
    if n_ones == 0 or n_zeros == 0:
        raise ValueError("runs test needs both a zero and a one in the string")
    arr = arr != 0
    n_runs = 1 + int(np.count_nonzero(arr[1:] != arr[:-1]))
    two_n1n0 = 2.0 * n_ones * n_zeros
    mean = two_n1n0 / n + 1
    variance = two_n1n0 * (two_n1n0 - n) / (n * n * (n - 1))
    statistic = (n_runs - mean) / variance ** 0.5
    p_less = float(norm.cdf(statistic))
    p_greater = float(norm.sf(statistic))
    return TestResult(
        statistic=float(statistic),
        p_two_sided=min(1.0, 2 * min(p_less, p_greater)),
        p_less=p_less,
        p_greater=p_greater,
    )


CSV_HEADER = "prime,depth,type,mode,n,ones,p_two,p_less,p_greater,convention,rng"


def csv_row(record: ExperimentRecord, result: TestResult) -> str:
    """One CSV line pairing a record with its proportion test."""
    rng = "none" if record.seed is None else f"{RNG_ID}:seed={record.seed}"
    fields = (record.prime, record.depth, record.perm_type, record.mode,
              record.n_observations, record.n_success,
              repr(result.p_two_sided), repr(result.p_less),
              repr(result.p_greater), LEAF_CONVENTION, rng)
    return ",".join(str(f) for f in fields)
