"""Independent brute-force reference implementations used as test oracles.

Everything here is written from the definitions, with no shared code paths
with the package: pairings via itertools-style recursion on element lists,
crossings by quadruple inspection, components by DFS over an explicit
adjacency dict, set partitions by direct recursive construction.
"""

import itertools
from fractions import Fraction


def all_pairings(points):
    pts = list(points)
    if not pts:
        yield []
        return
    first = pts[0]
    for i in range(1, len(pts)):
        rest = pts[1:i] + pts[i + 1:]
        for tail in all_pairings(rest):
            yield [(first, pts[i])] + tail


def blocks_cross(p, q):
    a, b = p
    x, y = q
    return a < x < b < y or x < a < y < b


def crossing_count(blocks):
    return sum(
        1 for p, q in itertools.combinations(blocks, 2) if blocks_cross(p, q)
    )


def chord_stats(blocks):
    """(cr, h, cc) from the definitions."""
    m = len(blocks)
    adj = {i: set() for i in range(m)}
    for i, j in itertools.combinations(range(m), 2):
        if blocks_cross(blocks[i], blocks[j]):
            adj[i].add(j)
            adj[j].add(i)
    h = sum(1 for i in range(m) if not adj[i])
    seen = set()
    cc = 0
    for i in range(m):
        if i in seen:
            continue
        cc += 1
        stack = [i]
        seen.add(i)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return crossing_count(blocks), h, cc


def all_set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for tail in all_set_partitions(rest):
        yield [[first]] + [list(b) for b in tail]
        for i in range(len(tail)):
            out = [list(b) for b in tail]
            out[i] = [first] + out[i]
            yield out


def partition_noncrossing(blocks):
    for b1, b2 in itertools.combinations(blocks, 2):
        for a, b in itertools.combinations(sorted(b1), 2):
            for x, y in itertools.combinations(sorted(b2), 2):
                if a < x < b < y or x < a < y < b:
                    return False
    return True


def even_nc_set_partitions(k):
    """All even non-crossing set partitions of {1..k}, by filtering."""
    for p in all_set_partitions(range(1, k + 1)):
        if all(len(b) % 2 == 0 for b in p) and partition_noncrossing(p):
            yield [tuple(sorted(b)) for b in p]


def weighted_sum(n, weight_of_stats):
    """sum over P2(2n) of a weight given as a function of (cr, h, cc)."""
    total = Fraction(0)
    for blocks in all_pairings(range(1, 2 * n + 1)):
        cr, h, cc = chord_stats(blocks)
        total += weight_of_stats(cr, h, cc)
    return total
