"""Shattering searches for translate classes h_y(x) = [x - y in S].

A k-tuple (x^1, ..., x^k) of points of E is shattered when every subset
I of {1..k} has a witness y in W with x^i - y in S exactly for i in I.
Searches precompute neighborhoods N(x) = (x - S) ^ W as bitsets and prune a
partial tuple as soon as any witness region over the chosen prefix empties;
this keeps even full-plane k = 4 enumerations at desk scale.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .analysis import build_cube, intersection_profile, prune
from .errors import BudgetExceeded, DimensionMismatch, EmptySet, NotSymmetric
from .field import FieldContext
from .pointset import PointSet

DEFAULT_BUDGET = 10**9
VC_KMAX_GUARD = 5


@dataclass(frozen=True)
class ShatterProblem:
    """S is the shape, E holds the shattered points, W the witness centers."""

    S: PointSet
    E: PointSet
    W: PointSet
    k: int

    def __post_init__(self):
        ctx = self.S.context
        if self.E.context != ctx or self.W.context != ctx:
            raise ValueError("S, E, W must share one context")
        if self.k < 0:
            raise ValueError("k must be >= 0")

    @classmethod
    def over(cls, S: PointSet, k: int, E: PointSet | None = None, W: PointSet | None = None):
        """Convenience: E defaults to the full group, W defaults to E."""
        E = E if E is not None else PointSet.full(S.context)
        W = W if W is not None else E
        return cls(S, E, W, k)

    @property
    def context(self) -> FieldContext:
        return self.S.context


@dataclass(frozen=True)
class ShatterWitness:
    """points x^1..x^k plus a witness y_I for every I, keyed by bitmask
    (bit i-1 set exactly when i in I)."""

    points: list
    witnesses: dict

    @property
    def k(self) -> int:
        return len(self.points)

    def restricted(self, k: int) -> "ShatterWitness":
        """Witness for the first k points, inheriting the matching y's."""
        if not 0 <= k <= self.k:
            raise ValueError("cannot restrict to more points than present")
        keep = (1 << k) - 1
        return ShatterWitness(
            points=self.points[:k],
            witnesses={m: y for m, y in self.witnesses.items() if m & ~keep == 0},
        )

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "points": [list(pt) for pt in self.points],
            "witnesses": {str(m): list(y) for m, y in sorted(self.witnesses.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "ShatterWitness":
        return cls(
            points=[tuple(pt) for pt in data["points"]],
            witnesses={int(m): tuple(y) for m, y in data["witnesses"].items()},
        )


class SearchStatus(Enum):
    FOUND = "found"
    EXHAUSTED_NO = "exhausted_no"  # complete enumeration, nothing shatterable
    BUDGET_EXHAUSTED = "budget_exhausted"
    NOT_FOUND = "not_found"  # a non-exhaustive pipeline came up empty


@dataclass
class SearchStats:
    tuples_examined: int = 0
    elapsed: float = 0.0


@dataclass
class SearchOutcome:
    status: SearchStatus
    witness: ShatterWitness | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND


# -- verification -----------------------------------------------------------------


def verify_witness(problem: ShatterProblem, witness: ShatterWitness) -> bool:
    """True iff x^i - y_I in S exactly when i in I, for every i and I.

    Shape mismatches (wrong point count, missing or extra subsets, wrong
    coordinate width) raise DimensionMismatch; a witness that is merely
    wrong returns False.
    """
    k = problem.k
    if len(witness.points) != k:
        raise DimensionMismatch(f"witness has {len(witness.points)} points, problem wants {k}")
    if sorted(witness.witnesses.keys()) != list(range(1 << k)):
        raise DimensionMismatch("witness must map every subset bitmask in [0, 2^k)")
    ctx = problem.context
    for pt in witness.points:
        if len(pt) != ctx.d:
            raise DimensionMismatch("witness points must have d coordinates")
    for y in witness.witnesses.values():
        if len(y) != ctx.d:
            raise DimensionMismatch("witness centers must have d coordinates")
    S = problem.S
    p = ctx.p
    for mask, y in witness.witnesses.items():
        for i, x in enumerate(witness.points):
            diff = tuple((a - b) % p for a, b in zip(x, y))
            if (diff in S) != bool(mask >> i & 1):
                return False
    return True


# -- bitset plumbing ----------------------------------------------------------------


def _bits_from_bool(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def _neighborhood_bits(problem: ShatterProblem) -> tuple:
    """(E indices ascending, {index: bitset of N(x) = (x - S) ^ W}, W bitset)."""
    ctx = problem.context
    w_bits = _bits_from_bool(problem.W.membership)
    s_coords = ctx.coords[problem.S.indices()]
    e_idx = [int(i) for i in problem.E.indices()]
    neigh = {}
    w_mem = problem.W.membership
    for i in e_idx:
        x = ctx.coords[i]
        mask = np.zeros(ctx.order, dtype=bool)
        if len(s_coords):
            mask[ctx.indices_of(x - s_coords)] = True
        neigh[i] = _bits_from_bool(mask & w_mem)
    return e_idx, neigh, w_bits


def _least_point(ctx: FieldContext, bits: int) -> tuple:
    return ctx.point_at((bits & -bits).bit_length() - 1)


def _witness_from_regions(ctx: FieldContext, chosen: list, regions: list) -> ShatterWitness:
    return ShatterWitness(
        points=[ctx.point_at(i) for i in chosen],
        witnesses={m: _least_point(ctx, r) for m, r in enumerate(regions)},
    )


def _regions_extend(regions: list, nb: int, j: int) -> list | None:
    """Split every region by the new neighborhood; None when any part empties."""
    if not regions[-1] & nb:  # the all-in region dies most often; test it first
        return None
    new = [0] * (len(regions) * 2)
    top = 1 << j
    for m, r in enumerate(regions):
        rn = r & nb
        rm = r & ~nb
        if not rn or not rm:
            return None
        new[m] = rm
        new[m | top] = rn
    return new


# -- search strategies ----------------------------------------------------------------


@dataclass(frozen=True)
class Exhaustive:
    """Lexicographic enumeration of k-subsets of E with region pruning."""

    budget: int = DEFAULT_BUDGET


@dataclass(frozen=True)
class RandomSearch:
    """Uniformly sampled k-subsets of E; reproducible for a fixed seed."""

    seed: int
    budget: int = 10_000


def shatter_search(problem: ShatterProblem, strategy=Exhaustive()) -> SearchOutcome:
    """Search for a shattered k-tuple.

    Exhaustive: Found returns the first tuple in lexicographic index order
    (with the least witness in every region); ExhaustedNo certifies that a
    complete enumeration found nothing; BudgetExhausted reports an aborted
    run.  Every Found outcome is re-verified before being returned.
    """
    if isinstance(strategy, Exhaustive):
        outcome = _search_exhaustive(problem, strategy.budget)
    elif isinstance(strategy, RandomSearch):
        outcome = _search_random(problem, strategy.seed, strategy.budget)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if outcome.found and not verify_witness(problem, outcome.witness):
        raise AssertionError("internal error: search result failed re-verification")
    return outcome


def _search_exhaustive(problem: ShatterProblem, budget: int) -> SearchOutcome:
    start = time.perf_counter()
    stats = SearchStats()
    k = problem.k
    ctx = problem.context
    if problem.W.size == 0:
        return SearchOutcome(
            SearchStatus.EXHAUSTED_NO, None, SearchStats(0, time.perf_counter() - start)
        )
    e_idx, neigh, w_bits = _neighborhood_bits(problem)
    if k == 0:
        witness = ShatterWitness(points=[], witnesses={0: _least_point(ctx, w_bits)})
        return SearchOutcome(
            SearchStatus.FOUND, witness, SearchStats(1, time.perf_counter() - start)
        )

    chosen: list = []
    out_of_budget = False

    def extend(regions: list, start_pos: int) -> ShatterWitness | None:
        nonlocal out_of_budget
        j = len(chosen)
        for pos in range(start_pos, len(e_idx)):
            if stats.tuples_examined >= budget:
                out_of_budget = True
                return None
            stats.tuples_examined += 1
            new = _regions_extend(regions, neigh[e_idx[pos]], j)
            if new is None:
                continue
            chosen.append(e_idx[pos])
            if len(chosen) == k:
                return _witness_from_regions(ctx, chosen, new)
            got = extend(new, pos + 1)
            if got is not None or out_of_budget:
                return got
            chosen.pop()
        return None

    witness = extend([w_bits], 0)
    stats.elapsed = time.perf_counter() - start
    if witness is not None:
        return SearchOutcome(SearchStatus.FOUND, witness, stats)
    if out_of_budget:
        return SearchOutcome(SearchStatus.BUDGET_EXHAUSTED, None, stats)
    return SearchOutcome(SearchStatus.EXHAUSTED_NO, None, stats)


def _search_random(problem: ShatterProblem, seed: int, budget: int) -> SearchOutcome:
    start = time.perf_counter()
    stats = SearchStats()
    k = problem.k
    ctx = problem.context
    if problem.W.size == 0:
        return SearchOutcome(SearchStatus.EXHAUSTED_NO, None, stats)
    e_idx, neigh, w_bits = _neighborhood_bits(problem)
    if k == 0:
        witness = ShatterWitness(points=[], witnesses={0: _least_point(ctx, w_bits)})
        return SearchOutcome(SearchStatus.FOUND, witness, SearchStats(1, 0.0))
    if len(e_idx) < k:
        return SearchOutcome(
            SearchStatus.EXHAUSTED_NO, None, SearchStats(0, time.perf_counter() - start)
        )
    rng = np.random.Generator(np.random.Philox(seed))
    for _ in range(budget):
        stats.tuples_examined += 1
        picks = sorted(int(e_idx[i]) for i in rng.choice(len(e_idx), size=k, replace=False))
        regions = [w_bits]
        ok = True
        for j, i in enumerate(picks):
            regions = _regions_extend(regions, neigh[i], j)
            if regions is None:
                ok = False
                break
        if ok:
            stats.elapsed = time.perf_counter() - start
            return SearchOutcome(
                SearchStatus.FOUND, _witness_from_regions(ctx, picks, regions), stats
            )
    stats.elapsed = time.perf_counter() - start
    return SearchOutcome(SearchStatus.BUDGET_EXHAUSTED, None, stats)


def witness_for_points(problem: ShatterProblem, points: Sequence[Sequence[int]]) -> SearchOutcome:
    """Check one supplied x-tuple: only the 2^k witness regions are searched.

    This is the intended route past the full-enumeration desk-scale cap:
    the caller proposes tuples, the search prices each at 2^k set operations.
    """
    ctx = problem.context
    if len(points) != problem.k:
        raise DimensionMismatch(f"expected {problem.k} points, got {len(points)}")
    start = time.perf_counter()
    w_bits = _bits_from_bool(problem.W.membership)
    s_coords = ctx.coords[problem.S.indices()]
    regions = [w_bits]
    for j, pt in enumerate(points):
        x = np.asarray(ctx.reduce(pt), dtype=np.int64)
        mask = np.zeros(ctx.order, dtype=bool)
        if len(s_coords):
            mask[ctx.indices_of(x - s_coords)] = True
        nb = _bits_from_bool(mask & problem.W.membership)
        regions = _regions_extend(regions, nb, j)
        if regions is None:
            return SearchOutcome(
                SearchStatus.NOT_FOUND, None, SearchStats(1, time.perf_counter() - start)
            )
    witness = ShatterWitness(
        points=[ctx.reduce(pt) for pt in points],
        witnesses={m: _least_point(ctx, r) for m, r in enumerate(regions)},
    )
    outcome = SearchOutcome(
        SearchStatus.FOUND, witness, SearchStats(1, time.perf_counter() - start)
    )
    if not verify_witness(problem, witness):
        raise AssertionError("internal error: region witness failed re-verification")
    return outcome


# -- VC-dimension bounds -----------------------------------------------------------------


@dataclass(frozen=True)
class VCBounds:
    lower: int  # largest k with a verified shattered tuple
    exact: int | None  # set when k = lower + 1 was exhaustively refuted

    def to_json(self) -> dict:
        return {"lower": self.lower, "exact": self.exact}


def vc_bounds(
    S: PointSet,
    E: PointSet | None = None,
    W: PointSet | None = None,
    k_max: int = 4,
    budget: int = DEFAULT_BUDGET,
) -> VCBounds:
    """Exhaustively certify shattering for k = 1..k_max.

    k_max is capped at 5: beyond that a full enumeration stops being a desk
    computation.  BudgetExceeded signals that certification, not mathematics,
    gave out."""
    if k_max > VC_KMAX_GUARD:
        raise BudgetExceeded(f"k_max = {k_max} exceeds the exhaustive guard {VC_KMAX_GUARD}")
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    E = E if E is not None else PointSet.full(S.context)
    W = W if W is not None else E
    if W.size == 0:
        raise EmptySet("vc bounds need a nonempty witness domain")
    lower = 0
    for k in range(1, k_max + 1):
        outcome = shatter_search(ShatterProblem(S, E, W, k), Exhaustive(budget))
        if outcome.status is SearchStatus.FOUND:
            lower = k
            continue
        if outcome.status is SearchStatus.EXHAUSTED_NO:
            return VCBounds(lower=lower, exact=lower)
        raise BudgetExceeded(f"exhaustive certification at k = {k} ran out of budget")
    return VCBounds(lower=lower, exact=None)


# -- constructive 3-shattering -------------------------------------------------------------


def _phantom_filter(S: PointSet):
    """Differences w that would wire the relabeled cube wrongly.

    After relabeling, the pair (u, w) must additionally avoid u - w - v,
    w - u - v, u + w + v landing in S; as constraints on w those are the
    translates S + (u - v), S + (u + v), S - (u + v)."""

    def filt(u: tuple, v: tuple) -> PointSet:
        p = S.context.p
        t_minus = tuple((a - b) % p for a, b in zip(u, v))
        t_plus = tuple((a + b) % p for a, b in zip(u, v))
        t_neg = tuple((-a - b) % p for a, b in zip(u, v))
        mem = (
            S.translate(t_minus).membership
            | S.translate(t_plus).membership
            | S.translate(t_neg).membership
        )
        return PointSet(S.context, mem)

    return filt


def construct_shatter3(S: PointSet, E: PointSet) -> SearchOutcome:
    """Pigeonhole construction of a 3-shattered tuple with witnesses in E.

    Pipeline: prune E to E_M with M = 7 + 2 * (max nonzero intersection of S
    with its translates), build a cube-minus-vertex graph there, relabel its
    vertices as x^1, x^2, x^3 with the four upper witnesses, then greedily
    scan E for y^1, y^2, y^3 and y^empty.  Deterministic; the result is
    re-verified before it is returned.  NOT_FOUND is a legitimate outcome at
    desk scale, not an error.
    """
    start = time.perf_counter()
    if not S.is_symmetric():
        raise NotSymmetric("constructive shattering requires S = -S")
    if S.size == 0:
        raise EmptySet("constructive shattering needs a nonempty S")
    ctx = S.context
    p = ctx.p

    def fail():
        return SearchOutcome(
            SearchStatus.NOT_FOUND, None, SearchStats(0, time.perf_counter() - start)
        )

    max_size = intersection_profile(S).max_size
    m_threshold = 7 + 2 * max_size
    e_m = prune(E, S, m_threshold)
    if e_m.size < 4:
        return fail()
    cube = build_cube(e_m, S, extra_excluded=_phantom_filter(S))
    if cube is None:
        return fail()

    r = cube.rhombus

    def add(a, b):
        return tuple((c1 + c2) % p for c1, c2 in zip(a, b))

    def sub(a, b):
        return tuple((c1 - c2) % p for c1, c2 in zip(a, b))

    # relabel the seven cube vertices: three shattered points and the four
    # upper witnesses come straight off the graph
    xs = [r.x2, add(r.x1, cube.v), r.x3]
    witnesses = {
        0b111: r.x1,
        0b011: add(r.x2, cube.v),
        0b101: r.x4,
        0b110: add(r.x3, cube.v),
    }
    seven = set(cube.points())

    for mask in (0b001, 0b010, 0b100, 0b000):
        found = None
        for i in E.indices():
            y = ctx.point_at(int(i))
            if mask != 0 and y in seven:
                continue
            if all((sub(xs[j], y) in S) == bool(mask >> j & 1) for j in range(3)):
                found = y
                break
        if found is None:
            return fail()
        witnesses[mask] = found

    witness = ShatterWitness(points=xs, witnesses=witnesses)
    problem = ShatterProblem(S, E, E, 3)
    if not verify_witness(problem, witness):
        return fail()
    return SearchOutcome(
        SearchStatus.FOUND, witness, SearchStats(1, time.perf_counter() - start)
    )
