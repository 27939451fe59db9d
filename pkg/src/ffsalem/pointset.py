"""Dense point sets in Z_p^d, their Fourier spectra, and Salem certification.

A PointSet is an immutable bit table over the whole group, indexed by
index(x) = x_1 + x_2*p + ... + x_d*p^(d-1).  Spectra are computed with the
axis-factored transform (one length-p DFT per axis); tests pin it against
the direct double sum.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property
from typing import IO, Iterable, Iterator, Sequence

import numpy as np

from .errors import EmptySet, PointSetParseError, SingularMatrix
from .field import FieldContext


class PointSet:
    """An immutable subset of Z_p^d backed by a dense boolean table."""

    __slots__ = ("context", "membership", "size", "__weakref__")

    def __init__(self, context: FieldContext, membership: np.ndarray):
        membership = np.asarray(membership, dtype=bool)
        if membership.shape != (context.order,):
            raise ValueError(
                f"membership table must have shape ({context.order},), got {membership.shape}"
            )
        membership = membership.copy()
        membership.setflags(write=False)
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "membership", membership)
        object.__setattr__(self, "size", int(membership.sum()))

    def __setattr__(self, name, value):
        raise AttributeError("PointSet is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def empty(cls, context: FieldContext) -> "PointSet":
        return cls(context, np.zeros(context.order, dtype=bool))

    @classmethod
    def full(cls, context: FieldContext) -> "PointSet":
        return cls(context, np.ones(context.order, dtype=bool))

    @classmethod
    def from_points(cls, context: FieldContext, points: Iterable[Sequence[int]]) -> "PointSet":
        mem = np.zeros(context.order, dtype=bool)
        for pt in points:
            mem[context.index_of(pt)] = True
        return cls(context, mem)

    @classmethod
    def from_indices(cls, context: FieldContext, indices: Iterable[int]) -> "PointSet":
        mem = np.zeros(context.order, dtype=bool)
        mem[np.fromiter(indices, dtype=np.int64, count=-1)] = True
        return cls(context, mem)

    # -- basics ---------------------------------------------------------------

    def __len__(self) -> int:
        return self.size

    def __contains__(self, point) -> bool:
        return bool(self.membership[self.context.index_of(point)])

    def __iter__(self) -> Iterator[tuple]:
        for i in self.indices():
            yield self.context.point_at(int(i))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PointSet)
            and self.context == other.context
            and bool(np.array_equal(self.membership, other.membership))
        )

    def __hash__(self):
        return hash((self.context, self.membership.tobytes()))

    def __repr__(self):
        return f"PointSet(p={self.context.p}, d={self.context.d}, size={self.size})"

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.membership)

    def points(self) -> list[tuple]:
        return list(self)

    def grid(self) -> np.ndarray:
        """Membership reshaped to (p,)*d; axis -1 is coordinate x_1."""
        return self.membership.reshape(self.context.grid_shape)

    # -- set algebra ------------------------------------------------------------

    def _permute(self, new_indices: np.ndarray) -> "PointSet":
        mem = np.zeros(self.context.order, dtype=bool)
        mem[new_indices] = self.membership
        return PointSet(self.context, mem)

    def negate(self) -> "PointSet":
        ctx = self.context
        return self._permute(ctx.indices_of(-ctx.coords))

    def translate(self, v: Sequence[int]) -> "PointSet":
        ctx = self.context
        v = ctx.reduce(v)
        return self._permute(ctx.indices_of(ctx.coords + np.asarray(v, dtype=np.int64)))

    def linear_image(self, matrix: Sequence[Sequence[int]]) -> "PointSet":
        """The set {T x : x in S} for an invertible d x d matrix T mod p."""
        ctx = self.context
        T = np.asarray(matrix, dtype=np.int64) % ctx.p
        if T.shape != (ctx.d, ctx.d):
            raise ValueError(f"matrix must be {ctx.d} x {ctx.d}")
        if det_mod(T, ctx.p) == 0:
            raise SingularMatrix("linear image requires an invertible matrix mod p")
        return self._permute(ctx.indices_of(ctx.coords @ T.T))

    def union(self, other: "PointSet") -> "PointSet":
        self._check_same_context(other)
        return PointSet(self.context, self.membership | other.membership)

    def intersect(self, other: "PointSet") -> "PointSet":
        self._check_same_context(other)
        return PointSet(self.context, self.membership & other.membership)

    def difference(self, other: "PointSet") -> "PointSet":
        self._check_same_context(other)
        return PointSet(self.context, self.membership & ~other.membership)

    def is_symmetric(self) -> bool:
        """True iff S = -S."""
        return self == self.negate()

    def _check_same_context(self, other: "PointSet") -> None:
        if self.context != other.context:
            raise ValueError("point sets live over different contexts")


def det_mod(matrix: np.ndarray, p: int) -> int:
    """Determinant mod p by Gaussian elimination over F_p."""
    m = [[int(v) % p for v in row] for row in matrix]
    n = len(m)
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det % p
        det = det * m[col][col] % p
        inv = pow(m[col][col], p - 2, p)
        for r in range(col + 1, n):
            f = m[r][col] * inv % p
            if f:
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[col])]
    return det % p


# -- Fourier spectrum ---------------------------------------------------------


class SpectrumTable:
    """All Fourier coefficients S^(m) = p^(-d) sum_x chi(-m.x) S(x)."""

    __slots__ = ("context", "values", "__weakref__")

    def __init__(self, context: FieldContext, values: np.ndarray):
        if values.shape != (context.order,):
            raise ValueError("spectrum table has wrong shape")
        values = values.copy()
        values.setflags(write=False)
        self.context = context
        self.values = values

    def value_at(self, m: Sequence[int]) -> complex:
        return complex(self.values[self.context.index_of(m)])

    def magnitudes(self) -> np.ndarray:
        return np.abs(self.values)

    @property
    def max_nontrivial(self) -> float:
        """max over m != 0 of |S^(m)|."""
        return float(np.abs(self.values[1:]).max()) if self.context.order > 1 else 0.0


def fourier_spectrum(S: PointSet) -> SpectrumTable:
    """Spectrum via d axis-factored length-p transforms.

    The grid layout puts coordinate x_1 on the last axis, so the flattened
    transform output is indexed by index(m) in the same little-endian order.
    """
    ctx = S.context
    values = np.fft.fftn(S.grid().astype(np.float64)) / ctx.order
    return SpectrumTable(ctx, values.reshape(ctx.order))


# -- Salem certification --------------------------------------------------------


@dataclass(frozen=True)
class SalemParams:
    """Target inequality |S^(m)| <= constant * q^(-d) * (log q)^gamma * |S|^(1/2)."""

    gamma: float = 0.0
    constant: float = 2.0

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")
        if self.constant <= 0:
            raise ValueError("constant must be > 0")


@dataclass(frozen=True)
class SalemReport:
    max_nontrivial: float
    bound: float
    ratio: float
    passed: bool
    params: SalemParams
    set_size: int

    def to_json(self) -> dict:
        return {
            "max_nontrivial": self.max_nontrivial,
            "bound": self.bound,
            "ratio": self.ratio,
            "pass": self.passed,
            "gamma": self.params.gamma,
            "constant": self.params.constant,
            "set_size": self.set_size,
        }


def salem_bound(ctx: FieldContext, size: int, params: SalemParams) -> float:
    # (log q)^0 == 1 even though log 3 < 1; natural log throughout
    log_factor = math.log(ctx.p) ** params.gamma if params.gamma != 0 else 1.0
    return params.constant * ctx.p ** (-ctx.d) * log_factor * math.sqrt(size)


def salem_report(S: PointSet, params: SalemParams | None = None) -> SalemReport:
    """Check the Salem inequality for every nonzero frequency of S."""
    if S.size == 0:
        raise EmptySet("salem certification needs a nonempty set")
    params = params or SalemParams()
    spec = fourier_spectrum(S)
    bound = salem_bound(S.context, S.size, params)
    worst = spec.max_nontrivial
    return SalemReport(
        max_nontrivial=worst,
        bound=bound,
        ratio=worst / bound,
        passed=worst <= bound,
        params=params,
        set_size=S.size,
    )


# -- text interchange format ----------------------------------------------------
#
# First line: "p d".  Each following non-comment line: d integers, one point.
# '#' starts a comment; blank lines are ignored; duplicate points are errors.


def load_points(stream: IO[str] | str | os.PathLike) -> PointSet:
    if isinstance(stream, (str, os.PathLike)):
        with open(stream, "r", encoding="utf-8") as fh:
            return load_points(fh)
    lines = stream.read().splitlines()
    header_at = None
    ctx = None
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        parts = text.split()
        if header_at is None:
            if len(parts) != 2:
                raise PointSetParseError(f"line {lineno}: header must be 'p d'")
            try:
                p, d = int(parts[0]), int(parts[1])
            except ValueError:
                raise PointSetParseError(f"line {lineno}: header must be two integers") from None
            try:
                ctx = FieldContext(p, d)
            except ValueError as exc:
                raise PointSetParseError(f"line {lineno}: {exc}") from None
            header_at = lineno
            mem = np.zeros(ctx.order, dtype=bool)
            continue
        if len(parts) != ctx.d:
            raise PointSetParseError(
                f"line {lineno}: expected {ctx.d} coordinates, got {len(parts)}"
            )
        try:
            pt = tuple(int(v) for v in parts)
        except ValueError:
            raise PointSetParseError(f"line {lineno}: coordinates must be integers") from None
        if any(not 0 <= c < ctx.p for c in pt):
            raise PointSetParseError(f"line {lineno}: coordinates must lie in [0, {ctx.p})")
        i = ctx.index_of(pt)
        if mem[i]:
            raise PointSetParseError(f"line {lineno}: duplicate point {pt}")
        mem[i] = True
    if header_at is None:
        raise PointSetParseError("line 1: missing 'p d' header")
    return PointSet(ctx, mem)


def dump_points(S: PointSet, stream: IO[str]) -> None:
    ctx = S.context
    stream.write(f"{ctx.p} {ctx.d}\n")
    for pt in S:
        stream.write(" ".join(str(c) for c in pt) + "\n")
