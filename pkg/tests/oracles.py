"""Independent reference implementations used to check the fast paths.

Everything here is written for obviousness, not speed: direct double sums
for transforms, explicit loops for counts, and a dichotomy-materializing
shattering decider.  None of it shares code with the library internals it
checks.
"""

from __future__ import annotations

import cmath
from itertools import combinations, product

import numpy as np

from ffsalem import FieldContext, PointSet


def direct_dft(S: PointSet) -> dict:
    """S^(m) = q^(-d) sum_x chi(-m.x) S(x) by the definition, all m."""
    ctx = S.context
    p, d, order = ctx.p, ctx.d, ctx.order
    pts = list(S)
    out = {}
    for m in product(range(p), repeat=d):
        total = 0j
        for x in pts:
            dot = sum(mi * xi for mi, xi in zip(m, x)) % p
            total += cmath.exp(-2j * cmath.pi * dot / p)
        out[m] = total / order
    return out


def brute_edge_count(E: PointSet, S: PointSet) -> int:
    p = E.context.p
    pts = list(E)
    count = 0
    for x in pts:
        for y in pts:
            if tuple((a - b) % p for a, b in zip(x, y)) in S:
                count += 1
    return count


def brute_convolution(E: PointSet, S: PointSet) -> dict:
    """E*S(x) = |{y in E : x - y in S}| for every x of the group."""
    ctx = E.context
    p = ctx.p
    out = {}
    for x in product(range(p), repeat=ctx.d):
        out[x] = sum(
            1 for y in E if tuple((a - b) % p for a, b in zip(x, y)) in S
        )
    return out


def brute_triple_count(E: PointSet, S: PointSet) -> int:
    """|{(x1, x2, y) in E^3 : x1 - y in S and x2 - y in S}|."""
    p = E.context.p
    pts = list(E)
    count = 0
    for x1 in pts:
        for x2 in pts:
            for y in pts:
                d1 = tuple((a - b) % p for a, b in zip(x1, y))
                d2 = tuple((a - b) % p for a, b in zip(x2, y))
                if d1 in S and d2 in S:
                    count += 1
    return count


def brute_bilinear(f: dict, g: dict, S: PointSet) -> float:
    p = S.context.p
    total = 0.0
    for x, fx in f.items():
        if not fx:
            continue
        for y, gy in g.items():
            if not gy:
                continue
            if tuple((a - b) % p for a, b in zip(x, y)) in S:
                total += fx * gy
    return total


def brute_distance_set(E: PointSet) -> set:
    p = E.context.p
    pts = list(E)
    return {
        sum((a - b) % p * ((a - b) % p) for a, b in zip(x, y)) % p
        for x in pts
        for y in pts
    }


def naive_shatterable(S: PointSet, k: int, E: PointSet, W: PointSet) -> bool:
    """Materialize every dichotomy by scanning W; True iff some k-tuple of E
    realizes all 2^k of them.

    A point-vs-center membership matrix makes the scan tolerable at p <= 7
    without borrowing anything from the search's region machinery.
    """
    ctx = S.context
    p = ctx.p
    e_pts = list(E)
    w_pts = list(W)
    if len(e_pts) < k:
        return False
    if k == 0:
        return len(w_pts) > 0
    hits = np.zeros((len(e_pts), len(w_pts)), dtype=np.int64)
    for i, x in enumerate(e_pts):
        for j, y in enumerate(w_pts):
            if tuple((a - b) % p for a, b in zip(x, y)) in S:
                hits[i, j] = 1
    want = 1 << k
    weights = 1 << np.arange(k)
    for tup in combinations(range(len(e_pts)), k):
        patterns = (hits[list(tup)] * weights[:, None]).sum(axis=0)
        if len(np.unique(patterns)) == want:
            return True
    return False
