"""Explicit curve families and quadratic-curve reduction over F_p (d = 2).

A Quadratic is f(x, y) = a x^2 + b xy + c y^2 + d x + e y + f_const.  Every
valid one reduces by an explicit affine change of variables either to the
parabola y = x^2 (degenerate quadratic part) or to a diagonal form
alpha x^2 + beta y^2 + gamma = 0; the transform is returned so the zero-set
bijection can be checked point for point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import BadDegree, DegenerateConic
from .field import FieldContext
from .pointset import PointSet


@dataclass(frozen=True)
class Quadratic:
    """A degree-two polynomial in x, y that genuinely involves both variables."""

    context: FieldContext
    a: int  # x^2
    b: int  # xy
    c: int  # y^2
    d: int  # x
    e: int  # y
    f: int  # 1

    def __post_init__(self):
        p = self.context.p
        if self.context.d != 2:
            raise ValueError("quadratic curves live in d = 2")
        for name in ("a", "b", "c", "d", "e", "f"):
            object.__setattr__(self, name, getattr(self, name) % p)
        if self.a == self.b == self.c == 0:
            raise ValueError("not degree two: no quadratic term")
        involves_x = self.a or self.b or self.d
        involves_y = self.c or self.b or self.e
        if not involves_x or not involves_y:
            raise ValueError("polynomial must involve both x and y")

    def evaluate(self, x: int, y: int) -> int:
        p = self.context.p
        return (
            self.a * x * x + self.b * x * y + self.c * y * y + self.d * x + self.e * y + self.f
        ) % p

    @cached_property
    def det2(self) -> int:
        """det of the quadratic-part matrix [[a, b/2], [b/2, c]] mod p."""
        p = self.context.p
        inv4 = pow(4, p - 2, p)
        return (self.a * self.c - self.b * self.b * inv4) % p

    @cached_property
    def det3(self) -> int:
        """det of the bordered matrix [[a, b/2, d/2], [b/2, c, e/2], [d/2, e/2, f]] mod p."""
        p = self.context.p
        inv2 = pow(2, p - 2, p)
        m = [
            [self.a, self.b * inv2 % p, self.d * inv2 % p],
            [self.b * inv2 % p, self.c, self.e * inv2 % p],
            [self.d * inv2 % p, self.e * inv2 % p, self.f],
        ]
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        ) % p

    def zero_set(self) -> PointSet:
        ctx = self.context
        co = ctx.coords  # column 0 = x, column 1 = y
        x, y = co[:, 0], co[:, 1]
        vals = (self.a * x * x + self.b * x * y + self.c * y * y + self.d * x + self.e * y + self.f) % ctx.p
        return PointSet(ctx, vals == 0)


@dataclass(frozen=True)
class Classification:
    smooth: bool  # bordered determinant nonzero
    degenerate_quadratic_part: bool  # det2 == 0
    det2: int
    det3: int


def classify_quadratic(q: Quadratic) -> Classification:
    return Classification(
        smooth=q.det3 != 0,
        degenerate_quadratic_part=q.det2 == 0,
        det2=q.det2,
        det3=q.det3,
    )


@dataclass(frozen=True)
class CanonicalForm:
    """Affine normal form of a quadratic, with the map that realizes it.

    kind is "parabola" (canonical zero set y = x^2) or "diagonal" (canonical
    equation diag[0] x^2 + diag[1] y^2 + diag[2] = 0).  The map sends original
    coordinates v to canonical coordinates U v + shift (all mod p), and takes
    the original zero set bijectively onto the canonical one.
    """

    context: FieldContext
    kind: str
    diag: tuple | None
    matrix: tuple
    shift: tuple

    def transform_point(self, point: Sequence[int]) -> tuple:
        p = self.context.p
        x, y = point
        (m00, m01), (m10, m11) = self.matrix
        return ((m00 * x + m01 * y + self.shift[0]) % p, (m10 * x + m11 * y + self.shift[1]) % p)

    def canonical_zero_set(self) -> PointSet:
        ctx = self.context
        p = ctx.p
        if self.kind == "parabola":
            return PointSet.from_points(ctx, ((t, t * t % p) for t in range(p)))
        alpha, beta, gamma = self.diag
        co = ctx.coords
        vals = (alpha * co[:, 0] ** 2 + beta * co[:, 1] ** 2 + gamma) % p
        return PointSet(ctx, vals == 0)


def _diagonalizing_map(q: Quadratic) -> tuple:
    """L with L-substitution diagonalizing the quadratic part; returns (L, alpha, beta).

    Substituting u' = L u turns u^t M u into alpha u'_1^2 + beta u'_2^2.
    Only valid when det2 != 0.
    """
    p = q.context.p
    inv = q.context.inv
    if q.a != 0:
        L = ((1, q.b * inv(2 * q.a) % p), (0, 1))
        return L, q.a, q.det2 * inv(q.a) % p
    if q.c != 0:
        L = ((q.b * inv(2 * q.c) % p, 1), (1, 0))
        return L, q.c, q.det2 * inv(q.c) % p
    # a = c = 0, b != 0: b*x*y = b*((x+y)/2)^2 - b*((x-y)/2)^2
    i2 = inv(2)
    L = ((i2, i2), (i2, (p - i2) % p))
    return L, q.b, (p - q.b) % p


def reduce_quadratic(q: Quadratic) -> CanonicalForm:
    """Reduce to the parabola (det2 = 0) or a diagonal form (det2 != 0).

    Raises DegenerateConic when det2 = 0 but the zero set is a union of
    parallel lines (equivalently det3 = 0), which no affine map can carry
    onto a parabola.
    """
    ctx = q.context
    p = ctx.p
    inv = ctx.inv

    if q.det2 != 0:
        # translate the center away: w0 = -1/2 M^(-1) (d, e)^t, then diagonalize
        i2 = inv(2)
        idet = inv(q.det2)
        # M^(-1) = det2^(-1) * [[c, -b/2], [-b/2, a]]
        mi = (
            (q.c * idet % p, (p - q.b * i2 % p) * idet % p),
            ((p - q.b * i2 % p) * idet % p, q.a * idet % p),
        )
        w0 = (
            (p - i2) * (mi[0][0] * q.d + mi[0][1] * q.e) % p,
            (p - i2) * (mi[1][0] * q.d + mi[1][1] * q.e) % p,
        )
        gamma = q.evaluate(*w0)
        L, alpha, beta = _diagonalizing_map(q)
        shift = (
            (p - (L[0][0] * w0[0] + L[0][1] * w0[1])) % p,
            (p - (L[1][0] * w0[0] + L[1][1] * w0[1])) % p,
        )
        return CanonicalForm(ctx, "diagonal", (alpha, beta, gamma), L, shift)

    if q.det3 == 0:
        raise DegenerateConic(
            "degenerate quadratic part with singular bordered matrix: "
            "the zero set is a union of parallel lines, not a parabola"
        )

    # det2 = 0, det3 != 0: change basis so the quadratic part is a2 * x''^2,
    # then normalize the graph y'' = A2 x''^2 + B2 x'' + C2 onto y = x^2.
    if q.a != 0:
        winv = ((1, q.b * inv(2 * q.a) % p), (0, 1))  # W^(-1) for W = [[1, -b/2a], [0, 1]]
        a2 = q.a
        d2, e2 = q.d, ((p - q.b * inv(2 * q.a) % p) * q.d + q.e) % p
    else:
        # a = 0 forces b = 0 (det2 = 0), so c != 0; swap the variables
        winv = ((0, 1), (1, 0))
        a2 = q.c
        d2, e2 = q.e, q.d
    # in v'' coordinates: a2 x''^2 + d2 x'' + e2 y'' + f = 0 with e2 != 0
    ie = inv(e2)
    A2 = (p - a2) * ie % p
    B2 = (p - d2) * ie % p
    C2 = (p - q.f) * ie % p
    i2 = inv(2)
    U2 = ((A2, 0), (0, A2))
    w2 = (B2 * i2 % p, (B2 * B2 * inv(4) - A2 * C2) % p)
    U = (
        tuple((U2[r][0] * winv[0][c_] + U2[r][1] * winv[1][c_]) % p for c_ in range(2))
        for r in range(2)
    )
    U = tuple(tuple(row) for row in U)
    return CanonicalForm(ctx, "parabola", None, U, w2)


# Where does e2 come from when a = 0?  With W the swap, (d2, e2) = W^t (d, e)
# = (e, d); e2 = d must be nonzero because det3 = -a2 * e2^2 / 4 up to a
# nonzero congruence factor, and det3 != 0 was checked above.


# -- curve families -----------------------------------------------------------


@dataclass(frozen=True)
class CurveHandle:
    family: str
    parameters: dict
    points: PointSet

    @property
    def context(self) -> FieldContext:
        return self.points.context


def sphere(ctx: FieldContext, t: int) -> CurveHandle:
    """{x : x_1^2 + ... + x_d^2 = t}; the circle when d = 2."""
    t %= ctx.p
    vals = (ctx.coords**2).sum(axis=1) % ctx.p
    return CurveHandle("sphere", {"t": t}, PointSet(ctx, vals == t))


def paraboloid(ctx: FieldContext) -> CurveHandle:
    """{(x, x_1^2 + ... + x_(d-1)^2)}; the parabola graph when d = 2."""
    if ctx.d < 2:
        raise ValueError("paraboloid needs d >= 2")
    co = ctx.coords
    vals = (co[:, :-1] ** 2).sum(axis=1) % ctx.p
    return CurveHandle("paraboloid", {}, PointSet(ctx, vals == co[:, -1]))


def conic(q: Quadratic) -> CurveHandle:
    """Zero set of a smooth quadratic; degenerate reductions are rejected."""
    if q.det3 == 0:
        raise DegenerateConic("conic reduces to a degenerate zero set (det3 = 0 mod p)")
    params = {"a": q.a, "b": q.b, "c": q.c, "d": q.d, "e": q.e, "f": q.f}
    return CurveHandle("conic", params, q.zero_set())


def poly_graph(ctx: FieldContext, coefficients: Sequence[int]) -> CurveHandle:
    """Graph {(x, g(x))} of a polynomial with 2 <= deg g and p not dividing deg g."""
    if ctx.d != 2:
        raise ValueError("polynomial graphs live in d = 2")
    p = ctx.p
    coeffs = [c % p for c in coefficients]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    deg = len(coeffs) - 1
    if deg < 2:
        raise BadDegree(f"graph Salem certification needs degree >= 2, got {deg}")
    if deg % p == 0:
        raise BadDegree(f"degree {deg} divisible by p = {p}: Weil bound unavailable")
    x = np.arange(p, dtype=np.int64)
    vals = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        vals = (vals * x + c) % p
    mem = np.zeros(ctx.order, dtype=bool)
    mem[x + p * vals] = True
    return CurveHandle("polygraph", {"coefficients": tuple(coeffs)}, PointSet(ctx, mem))


def symmetrized_parabola(ctx: FieldContext) -> CurveHandle:
    """{(t, t^2)} union {(t, -t^2)}; 2p - 1 points."""
    if ctx.d != 2:
        raise ValueError("the symmetrized parabola lives in d = 2")
    p = ctx.p
    x = np.arange(p, dtype=np.int64)
    mem = np.zeros(ctx.order, dtype=bool)
    mem[x + p * (x * x % p)] = True
    mem[x + p * ((p - x * x % p) % p)] = True
    return CurveHandle("sym-parabola", {}, PointSet(ctx, mem))


def make_curve(ctx: FieldContext, descriptor: str) -> CurveHandle:
    """Build a curve from a text descriptor.

    Accepted forms: "circle:t", "paraboloid", "conic:a,b,c,d,e,f",
    "polygraph:c0,c1,...,cn" (constant term first), "sym-parabola".
    """
    name, _, arg = descriptor.partition(":")
    name = name.strip().lower()
    try:
        if name == "circle":
            return sphere(ctx, int(arg))
        if name == "paraboloid":
            return paraboloid(ctx)
        if name == "conic":
            vals = [int(v) for v in arg.split(",")]
            if len(vals) != 6:
                raise ValueError("conic needs 6 coefficients a,b,c,d,e,f")
            return conic(Quadratic(ctx, *vals))
        if name == "polygraph":
            return poly_graph(ctx, [int(v) for v in arg.split(",")])
        if name == "sym-parabola":
            return symmetrized_parabola(ctx)
    except ValueError as exc:
        if "invalid literal" in str(exc):
            raise ValueError(f"bad curve descriptor {descriptor!r}: {exc}") from None
        raise
    raise ValueError(f"unknown curve family {name!r}")
