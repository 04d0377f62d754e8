"""Moment calculus for symmetric laws built from pair-partition weights.

All laws here are symmetric, so odd moments and odd free cumulants vanish
identically and sequences carry even orders only: ``values[k]`` is the
moment (or cumulant) of order 2(k+1).

The central transform pair runs over non-crossing set partitions with all
blocks of even size: moments are sums over such partitions of products of
cumulants, and cumulants are recovered by recursive subtraction.  Everything
is exact when inputs are rational.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from . import pairings
from .exceptions import DualPathMismatchError, SizeLimitError
from .pairings import DEFAULT_MAX_N, HARD_MAX_N
from .weights import (
    Constant1,
    Number,
    SingletonCountPower,
    WeightSpec,
    is_exact,
)


@dataclass(frozen=True)
class MomentSequence:
    """Even moments m_2, m_4, ..., m_{2N} of a symmetric law."""

    values: tuple[Number, ...]

    @property
    def order(self) -> int:
        """Largest half-order N."""
        return len(self.values)

    def moment(self, k: int) -> Number:
        """Moment of any order k <= 2N; odd orders are structurally zero."""
        if k == 0:
            return 1
        if k % 2 == 1:
            return 0
        if k > 2 * self.order:
            raise ValueError(f"moment of order {k} not stored (max {2 * self.order})")
        return self.values[k // 2 - 1]

    def truncate(self, n: int) -> "MomentSequence":
        if n > self.order:
            raise ValueError(f"cannot extend to N={n} (have {self.order})")
        return MomentSequence(self.values[:n])


@dataclass(frozen=True)
class CumulantSequence:
    """Even free cumulants r_2, r_4, ..., r_{2N} of a symmetric law."""

    values: tuple[Number, ...]

    @property
    def order(self) -> int:
        return len(self.values)

    def cumulant(self, k: int) -> Number:
        if k % 2 == 1:
            return 0
        if k == 0 or k > 2 * self.order:
            raise ValueError(f"cumulant of order {k} not stored (max {2 * self.order})")
        return self.values[k // 2 - 1]

    def truncate(self, n: int) -> "CumulantSequence":
        if n > self.order:
            raise ValueError(f"cannot extend to N={n} (have {self.order})")
        return CumulantSequence(self.values[:n])


@dataclass(frozen=True)
class GramMatrix:
    """A symmetric matrix of inner products, exact-arithmetic friendly."""

    entries: tuple[tuple[Number, ...], ...]

    def __post_init__(self):
        k = len(self.entries)
        for row in self.entries:
            if len(row) != k:
                raise ValueError("Gram matrix must be square")
        for i in range(k):
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"Gram matrix not symmetric at ({i},{j})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]]) -> "GramMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Number:
        i, j = ij
        return self.entries[i][j]


@dataclass(frozen=True)
class SetPartition:
    """A set partition of {1..k}; blocks sorted internally and by minimum."""

    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, blocks) -> "SetPartition":
        canon = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        return cls(canon)

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    def is_noncrossing(self) -> bool:
        """No two blocks interleave: never a < b < c < d alternating blocks."""
        for first, second in itertools.combinations(self.blocks, 2):
            # crossing-free iff every element of `second` falls in the same
            # gap of `first` (before it, after it, or between two members)
            gaps = {bisect_left(first, x) for x in second}
            if len(gaps) > 1:
                return False
        return True

    def all_blocks_even(self) -> bool:
        return all(len(b) % 2 == 0 for b in self.blocks)


def enumerate_nc_even(k: int) -> Iterator[SetPartition]:
    """All non-crossing partitions of {1..k} with every block of even size.

    For k = 2, 4, 6, 8 there are 1, 3, 12, 55 of them (the ternary-tree
    numbers binom(3m, m) / (2m + 1) at m = k/2).
    """
    if k % 2 != 0 or k < 0:
        raise ValueError(f"ground-set size must be even and >= 0, got {k}")
    if k > 2 * HARD_MAX_N:
        raise SizeLimitError(
            f"even non-crossing enumeration capped at {2 * HARD_MAX_N} points, got {k}"
        )
    for blocks in _iter_nc_even(tuple(range(1, k + 1))):
        yield SetPartition(blocks)


def _iter_nc_even(points: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    if not points:
        yield ()
        return
    rest = points[1:]
    m = len(rest)

    # Companions of points[0], as rest-indices i_1 < ... < i_t.  Every gap
    # between consecutive companions (and before the first) must have even
    # length so it can be partitioned into even blocks on its own, hence the
    # step-2 ranges; an odd companion count makes the block itself even, and
    # the tail gap must be even too.
    def choose(base: int, chosen: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        for i in range(base, m, 2):
            picked = chosen + (i,)
            if len(picked) % 2 == 1 and (m - 1 - i) % 2 == 0:
                yield picked
            yield from choose(i + 1, picked)

    for idxs in choose(0, ()):
        block = (points[0],) + tuple(rest[i] for i in idxs)
        segments = []
        prev = -1
        for i in idxs:
            segments.append(rest[prev + 1:i])
            prev = i
        segments.append(rest[prev + 1:])
        for combo in _segment_products(tuple(segments)):
            yield tuple(sorted((block,) + combo, key=lambda b: b[0]))


def _segment_products(segments) -> Iterator[tuple[tuple[int, ...], ...]]:
    if not segments:
        yield ()
        return
    for head in _iter_nc_even(segments[0]):
        for tail in _segment_products(segments[1:]):
            yield head + tail


@lru_cache(maxsize=None)
def _nc_even_type_counts(k: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    # How many even non-crossing partitions of {1..k} exist per multiset of
    # block sizes; enough to evaluate any product over blocks of r_{|B|}.
    counts: dict[tuple[int, ...], int] = {}
    for part in enumerate_nc_even(k):
        key = tuple(sorted(len(b) for b in part.blocks))
        counts[key] = counts.get(key, 0) + 1
    return tuple(sorted(counts.items()))


def moments_from_cumulants(r: CumulantSequence) -> MomentSequence:
    """m_{2n} = sum over even non-crossing partitions of prod_B r_{|B|}."""
    values = []
    for n in range(1, r.order + 1):
        total = 0
        for sizes, count in _nc_even_type_counts(2 * n):
            prod = count
            for s in sizes:
                prod = prod * r.cumulant(s)
            total = total + prod
        values.append(total)
    return MomentSequence(tuple(values))


def cumulants_from_moments(m: MomentSequence) -> CumulantSequence:
    """Invert the free moment-cumulant relation by recursive subtraction.

    r_{2n} is m_{2n} minus the contribution of every even non-crossing
    partition with more than one block; those involve cumulants of strictly
    lower order only.
    """
    r: list[Number] = []
    for n in range(1, m.order + 1):
        rest = 0
        lower = CumulantSequence(tuple(r))  # multi-block partitions only need orders < 2n
        for sizes, count in _nc_even_type_counts(2 * n):
            if len(sizes) == 1:
                continue
            prod = count
            for s in sizes:
                prod = prod * lower.cumulant(s)
            rest = rest + prod
        r.append(m.moment(2 * n) - rest)
    return CumulantSequence(tuple(r))


def free_convolve(a: MomentSequence, b: MomentSequence, n: int | None = None) -> MomentSequence:
    """Moments of the free additive convolution: cumulants add entrywise."""
    if n is None:
        n = min(a.order, b.order)
    if a.order < n or b.order < n:
        raise ValueError(f"both inputs must be defined to order 2N={2 * n}")
    ra = cumulants_from_moments(a.truncate(n))
    rb = cumulants_from_moments(b.truncate(n))
    summed = CumulantSequence(tuple(x + y for x, y in zip(ra.values, rb.values)))
    return moments_from_cumulants(summed)


def dilate(m: MomentSequence, lam: float) -> MomentSequence:
    """Moments of the pushforward under x -> lam * x:  m_{2n} -> lam^{2n} m_{2n}."""
    if lam <= 0:
        raise ValueError("dilation factor must be positive")
    return dilate_sq(m, lam * lam)


def dilate_sq(m: MomentSequence, lam_sq: Number) -> MomentSequence:
    """Same as :func:`dilate` with the squared factor given directly.

    Only lam**2 ever enters even moments, so passing it as an exact rational
    keeps the whole pipeline exact (e.g. dilation by sqrt(b)).
    """
    return MomentSequence(
        tuple(lam_sq ** n * v for n, v in enumerate(m.values, start=1))
    )


def semicircle_moments(n: int) -> MomentSequence:
    """Even moments of the standard semicircle law: the Catalan numbers."""
    return MomentSequence(tuple(pairings.count_nc_pairings(k) for k in range(1, n + 1)))


def gaussian_moments(n: int) -> MomentSequence:
    """Even moments of the standard normal law: (2k-1)!!."""
    return MomentSequence(tuple(pairings.pairing_count(k) for k in range(1, n + 1)))


def moments_of_weight(
    spec: WeightSpec, n: int, *, max_n: int = DEFAULT_MAX_N
) -> MomentSequence:
    """m_{2k} = sum over all pair partitions of the weight, for k = 1..n.

    Weights depend on partitions only through (cr, h, cc), so the sum runs
    over the cached exact joint distribution rather than the raw stream.
    """
    values = []
    for k in range(1, n + 1):
        dist = pairings.statistic_distribution(k, max_n=max_n)
        total = 0
        for (cr, h, cc), count in sorted(dist.counts.items()):
            total = total + count * spec.weight_of(k, cr, h, cc)
        values.append(total)
    return MomentSequence(tuple(values))


def cumulants_from_connected(
    spec: WeightSpec, n: int, *, max_n: int = DEFAULT_MAX_N
) -> CumulantSequence:
    """r_{2k} = sum of the weight over pair partitions with connected crossing graph."""
    values = []
    for k in range(1, n + 1):
        dist = pairings.statistic_distribution(k, max_n=max_n)
        total = 0
        for (cr, h, cc), count in sorted(dist.counts.items()):
            if cc == 1:
                total = total + count * spec.weight_of(k, cr, h, cc)
        values.append(total)
    return CumulantSequence(tuple(values))


def markov_limit_moments(n: int, *, max_n: int = DEFAULT_MAX_N) -> MomentSequence:
    """Even moments of the scaled Markov-matrix limit law: sum over V of 2^h(V).

    Equals the free additive convolution of the semicircle and normal laws;
    the first three values are 2, 9, 56.
    """
    return moments_of_weight(SingletonCountPower(2), n, max_n=max_n)


def mixed_moment(
    spec: WeightSpec, gram: GramMatrix, *, max_n: int = DEFAULT_MAX_N
) -> Number:
    """Joint moment of a weight against a Gram matrix of inner products.

    Zero for odd size; otherwise the weighted sum over pair partitions of the
    products of paired inner products.  Entries are indexed 0-based.
    """
    k = gram.size
    if k % 2 == 1:
        return 0
    if k == 0:
        return 1
    n = k // 2
    total = 0
    for blocks, cr, h, cc in pairings.iter_statistics(n, with_blocks=True, max_n=max_n):
        term = spec.weight_of(n, cr, h, cc)
        for i, j in blocks:
            term = term * gram[i - 1, j - 1]
        total = total + term
    return total


def semicircle_mix_moments(
    spec: WeightSpec,
    b: Number,
    n: int,
    *,
    max_n: int = DEFAULT_MAX_N,
    tol: float = 1e-9,
) -> MomentSequence:
    """Moments of sqrt(b) * X + sqrt(1-b) * S with S a free semicircle.

    Two independent paths are always computed and compared: the direct sum
    of b**H(V) times the weight over all pair partitions, and the free
    convolution of the sqrt(b)-dilated law of X with the sqrt(1-b)-dilated
    semicircle.  The caller is expected to pass a strongly multiplicative
    weight (see :func:`pairmoments.weights.check_strong_multiplicativity`);
    the dual-path agreement is exactly the statement being exercised.

    Raises :class:`DualPathMismatchError` if the paths disagree (exact
    comparison when b and the weight parameters are rational).
    """
    if not 0 <= b <= 1:
        raise ValueError(f"mixing parameter b must lie in [0, 1], got {b}")
    direct = []
    for k in range(1, n + 1):
        dist = pairings.statistic_distribution(k, max_n=max_n)
        total = 0
        for (cr, h, cc), count in sorted(dist.counts.items()):
            total = total + count * b ** (k - h) * spec.weight_of(k, cr, h, cc)
        direct.append(total)
    path_a = MomentSequence(tuple(direct))

    base = moments_of_weight(spec, n, max_n=max_n)
    one = Fraction(1) if is_exact(b) else 1.0
    path_b = free_convolve(
        dilate_sq(base, b),
        dilate_sq(semicircle_moments(n), one - b),
        n,
    )
    for va, vb in zip(path_a.values, path_b.values):
        if is_exact(va) and is_exact(vb):
            ok = va == vb
        else:
            ok = abs(va - vb) <= tol
        if not ok:
            raise DualPathMismatchError(
                f"mixture moment paths disagree: {va} vs {vb}",
                path_a=path_a,
                path_b=path_b,
            )
    return path_a


@dataclass(frozen=True)
class SemigroupReport:
    """Two-sided comparison of the mixing-parameter semigroup identity."""

    passed: bool
    b: Number
    c: Number
    lhs: MomentSequence
    rhs: MomentSequence
    max_abs_diff: float

    def __bool__(self) -> bool:
        return self.passed


def check_mix_semigroup(
    b: Number, c: Number, n: int, *, max_n: int = DEFAULT_MAX_N, tol: float = 1e-9
) -> SemigroupReport:
    """Check that mixing by b then by c equals mixing once by b*c.

    lhs: moments of the (b*c)-mixture of the normal law with the semicircle.
    rhs: sqrt(c)-dilation of the b-mixture, freely convolved with the
    sqrt(1-c)-dilated semicircle.
    """
    for name, val in (("b", b), ("c", c)):
        if not 0 <= val <= 1:
            raise ValueError(f"{name} must lie in [0, 1], got {val}")
    lhs = semicircle_mix_moments(Constant1(), b * c, n, max_n=max_n)
    rho_b = semicircle_mix_moments(Constant1(), b, n, max_n=max_n)
    one = Fraction(1) if is_exact(c) else 1.0
    rhs = free_convolve(
        dilate_sq(rho_b, c),
        dilate_sq(semicircle_moments(n), one - c),
        n,
    )
    diffs = [abs(x - y) for x, y in zip(lhs.values, rhs.values)]
    exact = all(is_exact(x) and is_exact(y) for x, y in zip(lhs.values, rhs.values))
    if exact:
        passed = all(x == y for x, y in zip(lhs.values, rhs.values))
    else:
        passed = all(d <= tol for d in diffs)
    return SemigroupReport(passed, b, c, lhs, rhs, float(max(diffs, default=0)))


def hankel_psd(m: MomentSequence, tol: float = 1e-10) -> tuple[bool, float]:
    """Positivity evidence for a candidate moment sequence.

    Builds the (N+1) x (N+1) Hankel matrix [m_{i+j}] with m_0 = 1 and odd
    entries 0, and reports whether its minimum eigenvalue clears
    ``-tol * (1 + max |entry|)``.  Passing this test is a necessary
    condition for being the moment sequence of some symmetric probability
    measure, not a sufficient one.
    """
    from .jacobi import jacobi_eigenvalues

    size = m.order + 1
    rows = [[float(m.moment(i + j)) for j in range(size)] for i in range(size)]
    eigs = jacobi_eigenvalues(rows)
    min_eig = float(min(eigs))
    scale = 1.0 + max(abs(rows[i][j]) for i in range(size) for j in range(size))
    return min_eig >= -tol * scale, min_eig
