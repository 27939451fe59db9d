"""Exact intersection and incidence combinatorics for dense point sets.

Counts here are integers computed with integer arithmetic (shift-and-add
convolutions); Fourier identities are carried alongside as cross-checks,
never as the source of truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptySet, NotSymmetric
from .field import FieldContext
from .pointset import PointSet, fourier_spectrum


def _roll_shift(point: Sequence[int]) -> tuple:
    # grid axes run (x_d, ..., x_1); np.roll shift order must match
    return tuple(int(c) for c in reversed(point))


def _shift_accumulate(grid: np.ndarray, points: np.ndarray, ctx: FieldContext) -> np.ndarray:
    """sum over s in points of grid translated by s (out[x] = sum grid[x - s])."""
    out = np.zeros(ctx.grid_shape, dtype=grid.dtype)
    for row in points:
        out += np.roll(grid, shift=_roll_shift(row), axis=tuple(range(ctx.d)))
    return out


@dataclass(frozen=True)
class ConvolutionTable:
    """values[index(x)] = E*S(x) = |{y in E : x - y in S}| for every x."""

    context: FieldContext
    values: np.ndarray

    def at(self, point: Sequence[int]) -> int:
        return int(self.values[self.context.index_of(point)])


def convolve(E: PointSet, S: PointSet) -> ConvolutionTable:
    ctx = E.context
    if ctx != S.context:
        raise ValueError("point sets live over different contexts")
    grid = E.grid().astype(np.int64)
    out = _shift_accumulate(grid, S.context.coords[S.indices()], ctx)
    return ConvolutionTable(ctx, out.reshape(ctx.order))


def distance_set(E: PointSet) -> set:
    """{|x - y| = sum (x_i - y_i)^2 mod p : x, y in E}."""
    if E.size == 0:
        raise EmptySet("distance set of the empty set")
    ctx = E.context
    pts = ctx.coords[E.indices()]
    out: set = set()
    for row in pts:
        diffs = (pts - row) % ctx.p
        out.update(np.unique((diffs**2).sum(axis=1) % ctx.p).tolist())
    return out


# -- edge counts ---------------------------------------------------------------


@dataclass(frozen=True)
class EdgeCountReport:
    nu: int
    main_term: float
    error: float
    normalized_error: float
    K: float
    fourier_side: float  # q^(2d) sum |E^|^2 S^, real part; cross-check only

    def to_json(self) -> dict:
        return {
            "nu": self.nu,
            "main_term": self.main_term,
            "error": self.error,
            "normalized_error": self.normalized_error,
            "K": self.K,
        }


def edge_count(E: PointSet, S: PointSet, gamma: float = 0.0) -> EdgeCountReport:
    """nu_S(E) = |{(x, y) in E x E : x - y in S}|, with main-term comparison.

    K = |S| / q^(d-1) is measured from S; the normalization divides the error
    by q^((d-1)/2) (log q)^gamma |E|.
    """
    if E.size == 0:
        raise EmptySet("edge count over an empty set E")
    ctx = E.context
    conv = convolve(E, S)
    nu = int(conv.values[E.membership].sum())
    q = ctx.p
    K = S.size / q ** (ctx.d - 1)
    main = K * E.size**2 / q
    err = nu - main
    log_factor = math.log(q) ** gamma if gamma != 0 else 1.0
    normalized = abs(err) / (q ** ((ctx.d - 1) / 2) * log_factor * E.size)
    e_hat = fourier_spectrum(E).values
    s_hat = fourier_spectrum(S).values
    fourier = float((q ** (2 * ctx.d) * (np.abs(e_hat) ** 2 * s_hat).sum()).real)
    return EdgeCountReport(nu, main, float(err), float(normalized), K, fourier)


def triple_count(E: PointSet, S: PointSet) -> int:
    """sum over x in E of (E*S(x))^2."""
    if E.size == 0:
        raise EmptySet("triple count over an empty set E")
    conv = convolve(E, S)
    vals = conv.values[E.membership]
    return int((vals.astype(object) ** 2).sum())


# -- weighted bilinear form ------------------------------------------------------


class WeightTable:
    """A nonnegative real weight on the group, dense like a PointSet."""

    __slots__ = ("context", "values")

    def __init__(self, context: FieldContext, values: np.ndarray):
        values = np.asarray(values, dtype=np.float64)
        if values.shape != (context.order,):
            raise ValueError(f"weight table must have shape ({context.order},)")
        if (values < 0).any():
            raise ValueError("weights must be nonnegative")
        values = values.copy()
        values.setflags(write=False)
        self.context = context
        self.values = values

    @classmethod
    def from_pointset(cls, S: PointSet) -> "WeightTable":
        return cls(S.context, S.membership.astype(np.float64))

    def l1(self) -> float:
        return float(self.values.sum())

    def l2(self) -> float:
        return float(math.sqrt((self.values**2).sum()))


@dataclass(frozen=True)
class BilinearReport:
    value: float
    main_term: float
    error: float
    error_bound: float  # q^((d-1)/2) (log q)^gamma ||f||_2 ||g||_2
    K: float

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "main_term": self.main_term,
            "error": self.error,
            "error_bound": self.error_bound,
            "K": self.K,
        }


def bilinear_form(f: WeightTable, g: WeightTable, S: PointSet, gamma: float = 0.0) -> BilinearReport:
    """sum_{x,y} f(x) g(y) S(x - y), against the main term (K/q) ||f||_1 ||g||_1."""
    ctx = f.context
    if ctx != g.context or ctx != S.context:
        raise ValueError("arguments live over different contexts")
    q = ctx.p
    conv = _shift_accumulate(
        g.values.reshape(ctx.grid_shape), ctx.coords[S.indices()], ctx
    ).reshape(ctx.order)
    value = float((f.values * conv).sum())
    K = S.size / q ** (ctx.d - 1)
    main = K / q * f.l1() * g.l1()
    log_factor = math.log(q) ** gamma if gamma != 0 else 1.0
    bound = q ** ((ctx.d - 1) / 2) * log_factor * f.l2() * g.l2()
    return BilinearReport(value, main, value - main, bound, K)


# -- intersection profiles --------------------------------------------------------


@dataclass(frozen=True)
class IntersectionProfile:
    """|S intersect (S - v)| for every nonzero shift v, computed exactly."""

    histogram: dict
    max_size: int
    argmax: tuple  # least-index shift attaining max_size
    at_zero: int

    def to_json(self) -> dict:
        return {
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "max": self.max_size,
            "argmax": list(self.argmax),
            "at_zero": self.at_zero,
        }


def intersection_profile(S: PointSet) -> IntersectionProfile:
    if S.size == 0:
        raise EmptySet("intersection profile of the empty set")
    ctx = S.context
    grid = S.grid().astype(np.int64)
    # ac[v] = sum_y S(y) S(y + v): translate S by -y for each member y
    ac = np.zeros(ctx.grid_shape, dtype=np.int64)
    for row in ctx.coords[S.indices()]:
        ac += np.roll(grid, shift=_roll_shift(-row % ctx.p), axis=tuple(range(ctx.d)))
    flat = ac.reshape(ctx.order)
    nontrivial = flat[1:]
    sizes, counts = np.unique(nontrivial, return_counts=True)
    max_size = int(nontrivial.max())
    argmax_index = 1 + int(np.argmax(nontrivial == max_size))
    return IntersectionProfile(
        histogram={int(s): int(c) for s, c in zip(sizes, counts)},
        max_size=max_size,
        argmax=ctx.point_at(argmax_index),
        at_zero=int(flat[0]),
    )


def prune(E: PointSet, S: PointSet, M: int) -> PointSet:
    """E_M = {x in E : E*S(x) > M} (strict)."""
    conv = convolve(E, S)
    return PointSet(E.context, E.membership & (conv.values > M))


# -- rhombus and cube witnesses -----------------------------------------------------


@dataclass(frozen=True)
class RhombusWitness:
    """Four distinct points with x1 - x2 = x3 - x4 = u in S and
    x1 - x3 = x2 - x4 = w in S, no pairwise difference equal to +-v."""

    x1: tuple
    x2: tuple
    x3: tuple
    x4: tuple
    u: tuple
    w: tuple

    def points(self) -> list[tuple]:
        return [self.x1, self.x2, self.x3, self.x4]

    def verify(self, E: PointSet, S: PointSet, v: tuple) -> bool:
        p = E.context.p

        def sub(a, b):
            return tuple((c1 - c2) % p for c1, c2 in zip(a, b))

        pts = self.points()
        if len(set(pts)) != 4:
            return False
        if any(pt not in E for pt in pts):
            return False
        if sub(self.x1, self.x2) != self.u or sub(self.x3, self.x4) != self.u:
            return False
        if sub(self.x1, self.x3) != self.w or sub(self.x2, self.x4) != self.w:
            return False
        if self.u not in S or self.w not in S:
            return False
        neg_v = tuple(-c % p for c in v)
        for i in range(4):
            for j in range(4):
                if i != j and sub(pts[i], pts[j]) in (tuple(v), neg_v):
                    return False
        return True


def find_rhombus(
    E: PointSet,
    S: PointSet,
    v: Sequence[int],
    extra_excluded=None,
) -> RhombusWitness | None:
    """Two-stage pigeonhole: pick u in S \\ {0, +-v} maximizing |E ^ (E - u)|
    (ties to the least index), then scan E_u for the first pair with
    difference in S minus {0, +-u, +-v, +-u+-v}; None when the scan exhausts.

    extra_excluded removes further difference candidates: either a PointSet,
    or a callable (u, v) -> PointSet evaluated once u is fixed.  Callers
    assembling larger graphs use it to rule out accidental adjacencies.
    """
    ctx = E.context
    if ctx != S.context:
        raise ValueError("point sets live over different contexts")
    if not S.is_symmetric():
        raise NotSymmetric("rhombus search requires S = -S")
    v = ctx.reduce(v)
    if all(c == 0 for c in v):
        raise ValueError("v must be nonzero")

    p = ctx.p
    zero = (0,) * ctx.d
    neg_v = tuple(-c % p for c in v)
    e_grid = E.grid()
    axes = tuple(range(ctx.d))

    best_u, best_count, best_mask = None, -1, None
    for ui in S.indices():
        u = ctx.point_at(int(ui))
        if u in (zero, tuple(v), neg_v):
            continue
        # y in E and y + u in E
        mask = e_grid & np.roll(e_grid, shift=_roll_shift(tuple(-c % p for c in u)), axis=axes)
        count = int(mask.sum())
        if count > best_count:
            best_u, best_count, best_mask = u, count, mask
    if best_u is None or best_count == 0:
        return None
    u = best_u
    e_u = np.flatnonzero(best_mask.reshape(ctx.order))

    neg_u = tuple(-c % p for c in u)
    excluded = {
        zero,
        u,
        neg_u,
        tuple(v),
        neg_v,
        tuple((a + b) % p for a, b in zip(u, v)),
        tuple((a - b) % p for a, b in zip(u, v)),
        tuple((b - a) % p for a, b in zip(u, v)),
        tuple((-a - b) % p for a, b in zip(u, v)),
    }
    allowed = S.membership.copy()
    for pt in excluded:
        allowed[ctx.index_of(pt)] = False
    if extra_excluded is not None:
        exc = extra_excluded(u, tuple(v)) if callable(extra_excluded) else extra_excluded
        allowed &= ~exc.membership

    coords_eu = ctx.coords[e_u]
    for bi, b_row in zip(e_u, coords_eu):
        # all differences a - b for a in E_u at once; least valid a wins
        diff_idx = ctx.indices_of(coords_eu - b_row)
        ok = allowed[diff_idx]
        ok &= e_u != bi
        hits = np.flatnonzero(ok)
        if hits.size:
            ai = int(e_u[hits[0]])
            a = ctx.point_at(ai)
            b = ctx.point_at(int(bi))
            x1 = tuple((c1 + c2) % p for c1, c2 in zip(a, u))
            x3 = tuple((c1 + c2) % p for c1, c2 in zip(b, u))
            w = tuple((c1 - c2) % p for c1, c2 in zip(a, b))
            witness = RhombusWitness(x1, a, x3, b, u, w)
            if not witness.verify(E, S, tuple(v)):
                raise AssertionError("internal error: rhombus failed re-verification")
            return witness
    return None


@dataclass(frozen=True)
class CubeWitness:
    """Seven vertices of a combinatorial cube with side differences u, w, v
    all in S: a rhombus plus its v-translate, minus the vertex x4 + v.

    The nine surviving edges (all with difference in S) are the four rhombus
    edges, the three v-edges x_i -- x_i + v for i in {1, 2, 3}, and the two
    translated rhombus edges (x1+v, x2+v) and (x1+v, x3+v).
    """

    p: int
    rhombus: RhombusWitness
    v: tuple

    def _add_v(self, pt: tuple) -> tuple:
        return tuple((a + b) % self.p for a, b in zip(pt, self.v))

    def points(self) -> list[tuple]:
        r = self.rhombus
        return [
            r.x1,
            r.x2,
            r.x3,
            r.x4,
            self._add_v(r.x1),
            self._add_v(r.x2),
            self._add_v(r.x3),
        ]

    def edges(self) -> list[tuple]:
        r = self.rhombus
        x1v, x2v, x3v = (self._add_v(pt) for pt in (r.x1, r.x2, r.x3))
        return [
            (r.x1, r.x2),
            (r.x3, r.x4),
            (r.x1, r.x3),
            (r.x2, r.x4),
            (r.x1, x1v),
            (r.x2, x2v),
            (r.x3, x3v),
            (x1v, x2v),
            (x1v, x3v),
        ]

    def verify(self, E: PointSet, S: PointSet) -> bool:
        pts = self.points()
        if len(set(pts)) != 7:
            return False
        if any(pt not in E for pt in pts):
            return False
        if self.v not in S:
            return False
        for a, b in self.edges():
            if tuple((c1 - c2) % self.p for c1, c2 in zip(a, b)) not in S:
                return False
        return True


def build_cube(
    E: PointSet,
    S: PointSet,
    extra_excluded=None,
) -> CubeWitness | None:
    """Pigeonhole a shift v in S maximizing |E ^ (E - v)|, then look for a
    rhombus avoiding +-v inside that slice; None if either stage fails.
    extra_excluded is forwarded to the rhombus pair scan."""
    ctx = E.context
    if ctx != S.context:
        raise ValueError("point sets live over different contexts")
    if not S.is_symmetric():
        raise NotSymmetric("cube construction requires S = -S")
    p = ctx.p
    zero = (0,) * ctx.d
    e_grid = E.grid()
    axes = tuple(range(ctx.d))

    best_v, best_count, best_mask = None, -1, None
    for vi in S.indices():
        v = ctx.point_at(int(vi))
        if v == zero:
            continue
        mask = e_grid & np.roll(e_grid, shift=_roll_shift(tuple(-c % p for c in v)), axis=axes)
        count = int(mask.sum())
        if count > best_count:
            best_v, best_count, best_mask = v, count, mask
    if best_v is None or best_count == 0:
        return None
    e_v = PointSet(ctx, best_mask.reshape(ctx.order))
    rhombus = find_rhombus(e_v, S, best_v, extra_excluded=extra_excluded)
    if rhombus is None:
        return None
    witness = CubeWitness(p, rhombus, best_v)
    if not witness.verify(E, S):
        raise AssertionError("internal error: cube failed re-verification")
    return witness
