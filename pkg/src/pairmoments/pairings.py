"""Pair partitions of {1..2n} and their chord-diagram statistics.

A pair partition (perfect matching, chord diagram) splits the ground set
{1, ..., 2n} into n blocks of size two.  Three statistics drive everything
downstream:

* ``cr``  -- number of crossing block pairs (i1 < i2 < j1 < j2),
* ``h``   -- number of singleton blocks (blocks crossing no other block),
* ``cc``  -- number of connected components of the crossing graph, whose
             vertices are blocks and whose edges are crossing pairs.

Counts are exact Python integers throughout; (2n-1)!! grows fast enough
that anything narrower would overflow almost immediately.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from types import MappingProxyType
from typing import Iterator, Mapping

from .exceptions import SizeLimitError

#: Largest half-size enumerated without an explicit override (2n = 16 points,
#: 2,027,025 partitions).  Callers may pass ``max_n`` to go beyond; the CLI
#: allows at most ``HARD_MAX_N``.
DEFAULT_MAX_N = 8

#: Absolute ceiling accepted by the command-line tools (2n = 18).
HARD_MAX_N = 9


def _check_cap(n: int, max_n: int) -> None:
    if n < 1:
        raise ValueError(f"half-size n must be >= 1, got {n}")
    if n > max_n:
        raise SizeLimitError(
            f"half-size n={n} exceeds the enumeration cap {max_n} "
            f"(2n = {2 * max_n} points); pass a larger max_n to override"
        )


@dataclass(frozen=True)
class PairPartition:
    """A canonical pair partition of {1..2n}.

    ``blocks`` holds pairs ``(lo, hi)`` with ``lo < hi``, sorted by ``lo``.
    Instances are immutable and hashable; equality is block-wise.
    """

    n: int
    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n != len(self.blocks):
            raise ValueError(f"n={self.n} but {len(self.blocks)} blocks given")
        seen = 0
        prev_lo = 0
        for lo, hi in self.blocks:
            if not lo < hi:
                raise ValueError(f"block ({lo},{hi}) is not ordered lo < hi")
            if lo <= prev_lo:
                raise ValueError("blocks must be sorted ascending by lo")
            prev_lo = lo
            for k in (lo, hi):
                if not 1 <= k <= 2 * self.n:
                    raise ValueError(f"index {k} outside 1..{2 * self.n}")
                bit = 1 << k
                if seen & bit:
                    raise ValueError(f"index {k} occurs twice")
                seen |= bit

    @classmethod
    def from_pairs(cls, pairs) -> "PairPartition":
        """Build from any iterable of 2-element pairs, canonicalizing order."""
        blocks = tuple(sorted((min(a, b), max(a, b)) for a, b in pairs))
        return cls(len(blocks), blocks)

    def points(self) -> range:
        return range(1, 2 * self.n + 1)

    def __str__(self) -> str:
        inner = ",".join(f"({a},{b})" for a, b in self.blocks)
        return "{" + inner + "}"


def _fast_partition(n: int, blocks: tuple[tuple[int, int], ...]) -> PairPartition:
    # Internal constructor for enumeration output that is canonical by
    # construction; skips __post_init__ validation.
    obj = object.__new__(PairPartition)
    object.__setattr__(obj, "n", n)
    object.__setattr__(obj, "blocks", blocks)
    return obj


@dataclass(frozen=True)
class ChordStatistics:
    """The (cr, h, cc) statistics of one pair partition, plus H = n - h."""

    cr: int
    h: int
    cc: int
    big_h: int


@dataclass(frozen=True)
class StatisticDistribution:
    """Exact joint counts of (cr, h, cc) over all of P2(2n)."""

    n: int
    counts: Mapping[tuple[int, int, int], int]

    def total(self) -> int:
        return sum(self.counts.values())

    def marginal(self, statistic: str) -> dict[int, int]:
        """Aggregate counts by one statistic: cr, h, cc, H or n-cc."""
        out: dict[int, int] = {}
        for (cr, h, cc), count in self.counts.items():
            key = {
                "cr": cr,
                "h": h,
                "cc": cc,
                "H": self.n - h,
                "n-cc": self.n - cc,
            }[statistic]
            out[key] = out.get(key, 0) + count
        return out


def pairing_count(n: int) -> int:
    """(2n-1)!! = number of pair partitions of {1..2n}; p(0) = 1."""
    out = 1
    for k in range(1, n + 1):
        out *= 2 * k - 1
    return out


def count_nc_pairings(n: int) -> int:
    """Number of non-crossing pair partitions of {1..2n} (Catalan number)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return comb(2 * n, n) // (n + 1)


def enumerate_pairings(n: int, *, max_n: int = DEFAULT_MAX_N) -> Iterator[PairPartition]:
    """Yield all (2n-1)!! pair partitions of {1..2n} in canonical order.

    The order is deterministic: the smallest unpaired index is repeatedly
    matched with each larger free index, ascending.  Blocks therefore come
    out sorted by their low endpoint.
    """
    _check_cap(n, max_n)
    for blocks in _iter_blocks(tuple(range(1, 2 * n + 1))):
        yield _fast_partition(n, blocks)


def _iter_blocks(free: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    if not free:
        yield ()
        return
    lo = free[0]
    for i in range(1, len(free)):
        head = (lo, free[i])
        rest = free[1:i] + free[i + 1:]
        for tail in _iter_blocks(rest):
            yield (head,) + tail


def crossings(partition: PairPartition) -> int:
    """Number of crossing block pairs: i1 < i2 < j1 < j2."""
    total = 0
    blocks = partition.blocks
    for (a, b), (x, y) in itertools.combinations(blocks, 2):
        # blocks are sorted by lo, so a < x always
        if x < b < y:
            total += 1
    return total


def _crossing_adjacency(blocks: tuple[tuple[int, int], ...]) -> list[set[int]]:
    m = len(blocks)
    adj: list[set[int]] = [set() for _ in range(m)]
    for i, j in itertools.combinations(range(m), 2):
        _, b = blocks[i]
        x, y = blocks[j]
        if x < b < y:
            adj[i].add(j)
            adj[j].add(i)
    return adj


def singleton_blocks(partition: PairPartition) -> tuple[list[tuple[int, int]], int]:
    """Blocks that cross no other block, and their count h."""
    adj = _crossing_adjacency(partition.blocks)
    singles = [blk for blk, nbrs in zip(partition.blocks, adj) if not nbrs]
    return singles, len(singles)


def connected_components(
    partition: PairPartition,
) -> tuple[int, tuple[tuple[tuple[int, int], ...], ...]]:
    """Components of the crossing graph, as (count, blocks grouped by component).

    Components are ordered by their smallest block, blocks within a component
    by low endpoint.
    """
    blocks = partition.blocks
    adj = _crossing_adjacency(blocks)
    seen: set[int] = set()
    comps: list[tuple[tuple[int, int], ...]] = []
    for start in range(len(blocks)):
        if start in seen:
            continue
        stack = [start]
        members: list[int] = []
        seen.add(start)
        while stack:
            v = stack.pop()
            members.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(tuple(blocks[i] for i in sorted(members)))
    return len(comps), tuple(comps)


def statistics(partition: PairPartition) -> ChordStatistics:
    """All chord statistics of one partition in a single pass."""
    adj = _crossing_adjacency(partition.blocks)
    cr = sum(len(nbrs) for nbrs in adj) // 2
    h = sum(1 for nbrs in adj if not nbrs)
    seen: set[int] = set()
    cc = 0
    for start in range(len(adj)):
        if start in seen:
            continue
        cc += 1
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return ChordStatistics(cr=cr, h=h, cc=cc, big_h=partition.n - h)


def component_support_partition(partition: PairPartition) -> tuple[tuple[int, ...], ...]:
    """Collapse each crossing-graph component to its point support.

    The result is a set partition of {1..2n} (blocks sorted internally and by
    minimum); it is always non-crossing with all blocks of even size.
    """
    _, comps = connected_components(partition)
    supports = []
    for comp in comps:
        pts: list[int] = []
        for lo, hi in comp:
            pts.append(lo)
            pts.append(hi)
        supports.append(tuple(sorted(pts)))
    supports.sort(key=lambda blk: blk[0])
    return tuple(supports)


def rotate(partition: PairPartition) -> PairPartition:
    """Cyclic rotation of the ground set: k -> 1 + (k mod 2n)."""
    m = 2 * partition.n
    pairs = [(1 + (a % m), 1 + (b % m)) for a, b in partition.blocks]
    return PairPartition.from_pairs(pairs)


def riordan_connected(nmax: int) -> list[int]:
    """Connected-pairing counts c_2, c_4, ..., c_{2*nmax}.

    Computed by Riordan's recurrence in its index-corrected form
    ``c_{2(n+1)} = n * sum_{i=1..n} c_{2i} * c_{2(n+1-i)}`` with c_2 = 1,
    which reproduces 1, 1, 4, 27, 248, 2830, ... and matches brute-force
    counts of pairings whose crossing graph is connected.
    """
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    c = [0, 1]  # c[k] = c_{2k}
    for n in range(1, nmax):
        c.append(n * sum(c[i] * c[n + 1 - i] for i in range(1, n + 1)))
    return c[1:]


def total_singletons(n: int, *, max_n: int = DEFAULT_MAX_N) -> int:
    """T_{2n} = sum of h(V) over all V in P2(2n).

    Uses the closed form ``T_{2n} = n * sum_{k=0..n-1} p_{2k} * p_{2(n-1-k)}``
    and, whenever n is within the enumeration cap, cross-checks it against
    the exhaustive sum of singleton counts.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    p = [pairing_count(k) for k in range(n)]
    closed = n * sum(p[k] * p[n - 1 - k] for k in range(n))
    if n <= max_n:
        dist = statistic_distribution(n, max_n=max_n)
        brute = sum(h * count for (_, h, _), count in dist.counts.items())
        if brute != closed:
            raise AssertionError(
                f"singleton total mismatch at n={n}: closed form {closed}, "
                f"enumeration {brute}"
            )
    return closed


# ---------------------------------------------------------------------------
# Bulk enumeration with incremental statistics.
#
# The recursive walk below maintains cr / h / cc while blocks are added and
# removed, so the per-partition cost is O(n) instead of O(n^2).  Correctness
# is pinned by exhaustive comparison against the definitional single-partition
# functions above (see the test suite).
# ---------------------------------------------------------------------------


def iter_statistics(
    n: int,
    *,
    with_blocks: bool = False,
    max_n: int = DEFAULT_MAX_N,
    first_partner: int | None = None,
) -> Iterator:
    """Yield (cr, h, cc) triples, or (blocks, cr, h, cc) tuples, over P2(2n).

    Enumeration order matches :func:`enumerate_pairings`.  When
    ``first_partner`` is given, only partitions whose block containing 1 is
    (1, first_partner) are visited; this is the range-partitioning hook used
    for parallel folds.
    """
    _check_cap(n, max_n)
    m = 2 * n
    partner = [0] * (m + 2)
    his: list[int] = []            # hi endpoint of each block, creation order
    deg: list[int] = []            # crossing degree of each block
    parent = list(range(n))
    size = [1] * n

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    # state counters mutated in place: [cr, zero_degree_blocks, merges]
    state = [0, 0, 0]
    blocks: list[tuple[int, int]] = []

    def walk(scan_from: int) -> Iterator:
        i = scan_from
        while i <= m and partner[i]:
            i += 1
        if i > m:
            cr, zero, merges = state
            if with_blocks:
                yield tuple(blocks), cr, zero, n - merges
            else:
                yield cr, zero, n - merges
            return
        bid = len(his)
        start = i + 1
        for j in range(start, m + 1):
            if partner[j]:
                continue
            if bid == 0 and first_partner is not None and j != first_partner:
                continue
            # blocks already placed all have lo < i; (lo,hi) crosses (i,j)
            # exactly when i < hi < j
            crossed = [b for b in range(bid) if i < his[b] < j]
            cnt = len(crossed)
            partner[i], partner[j] = j, i
            his.append(j)
            deg.append(cnt)
            state[0] += cnt
            if cnt == 0:
                state[1] += 1
            merged: list[tuple[int, int]] = []
            for b in crossed:
                deg[b] += 1
                if deg[b] == 1:
                    state[1] -= 1
                ra, rb = find(bid), find(b)
                if ra != rb:
                    if size[ra] < size[rb]:
                        ra, rb = rb, ra
                    parent[rb] = ra
                    size[ra] += size[rb]
                    merged.append((rb, ra))
                    state[2] += 1
            if with_blocks:
                blocks.append((i, j))
            yield from walk(i + 1)
            # undo, in reverse order of application
            if with_blocks:
                blocks.pop()
            for rb, ra in reversed(merged):
                parent[rb] = rb
                size[ra] -= size[rb]
                state[2] -= 1
            for b in crossed:
                if deg[b] == 1:
                    state[1] += 1
                deg[b] -= 1
            if cnt == 0:
                state[1] -= 1
            state[0] -= cnt
            deg.pop()
            his.pop()
            partner[i] = partner[j] = 0

    yield from walk(1)


def _branch_counts(args: tuple[int, int]) -> dict[tuple[int, int, int], int]:
    # Joint (cr, h, cc) tally over the branch pairing 1 with a fixed partner.
    # Module-level so it can cross a process boundary.
    n, j = args
    counts: dict[tuple[int, int, int], int] = {}
    for key in iter_statistics(n, max_n=n, first_partner=j):
        counts[key] = counts.get(key, 0) + 1
    return counts


@lru_cache(maxsize=None)
def _statistic_distribution_cached(n: int) -> StatisticDistribution:
    counts: dict[tuple[int, int, int], int] = {}
    for key in iter_statistics(n, max_n=n):
        counts[key] = counts.get(key, 0) + 1
    return StatisticDistribution(n, MappingProxyType(counts))


def statistic_distribution(
    n: int,
    *,
    max_n: int = DEFAULT_MAX_N,
    workers: int = 1,
) -> StatisticDistribution:
    """Exact joint (cr, h, cc) counts over P2(2n).

    With ``workers > 1`` the 2n-1 top-level branches (indexed by the partner
    of point 1) are tallied in separate processes and merged in fixed branch
    order, so the result is identical for any worker count.
    """
    _check_cap(n, max_n)
    if workers > 1 and n >= 4:
        from concurrent.futures import ProcessPoolExecutor

        branches = [(n, j) for j in range(2, 2 * n + 1)]
        merged: dict[tuple[int, int, int], int] = {}
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_branch_counts, branches):
                for key, count in part.items():
                    merged[key] = merged.get(key, 0) + count
        return StatisticDistribution(n, MappingProxyType(merged))
    return _statistic_distribution_cached(n)
