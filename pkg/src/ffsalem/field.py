"""Prime-field contexts and the classical complete character sums.

Everything downstream works in the additive group Z_p^d with the fixed
character chi(x) = exp(2*pi*i*x/p).  Sums are evaluated by direct summation
in complex doubles; the only cleverness is a cached root-of-unity table.
"""

from __future__ import annotations

import cmath
import math
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import ConstantPolynomial, DegreeDivisibleByP, ZeroParameter

# Dense tables (membership, spectra) are kept for the whole group, so the
# group order is capped; larger parameters are rejected up front.
MAX_ORDER = 1 << 22


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class FieldContext:
    """The ambient group Z_p^d for an odd prime p.

    Provides point <-> index conversion (little-endian: index(x) = x_1 +
    x_2*p + ... + x_d*p^(d-1)), modular helpers, and the cached character
    table shared by every sum below.
    """

    def __init__(self, p: int, d: int = 2):
        if not isinstance(p, int) or not isinstance(d, int):
            raise ValueError("p and d must be integers")
        if p < 3 or not is_prime(p):
            raise ValueError(f"p must be an odd prime >= 3, got {p}")
        if d < 1:
            raise ValueError(f"d must be >= 1, got {d}")
        if p**d > MAX_ORDER:
            raise ValueError(f"p^d = {p**d} exceeds the dense-table cap {MAX_ORDER}")
        self.p = p
        self.d = d
        self.order = p**d
        self.grid_shape = (p,) * d

    def __repr__(self):
        return f"FieldContext(p={self.p}, d={self.d})"

    def __eq__(self, other):
        return isinstance(other, FieldContext) and (self.p, self.d) == (other.p, other.d)

    def __hash__(self):
        return hash((self.p, self.d))

    # -- indexing ----------------------------------------------------------

    @cached_property
    def _powers(self) -> np.ndarray:
        return self.p ** np.arange(self.d, dtype=np.int64)

    @cached_property
    def coords(self) -> np.ndarray:
        """(order, d) array; row i is the point with index i."""
        idx = np.arange(self.order, dtype=np.int64)
        out = np.empty((self.order, self.d), dtype=np.int64)
        for axis in range(self.d):
            out[:, axis] = (idx // self._powers[axis]) % self.p
        out.setflags(write=False)
        return out

    def index_of(self, point: Sequence[int]) -> int:
        if len(point) != self.d:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.d}")
        return int(sum((c % self.p) * self.p**i for i, c in enumerate(point)))

    def indices_of(self, coords: np.ndarray) -> np.ndarray:
        return (np.asarray(coords, dtype=np.int64) % self.p) @ self._powers

    def point_at(self, index: int) -> tuple:
        return tuple(int(v) for v in self.coords[index])

    def reduce(self, point: Sequence[int]) -> tuple:
        if len(point) != self.d:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.d}")
        return tuple(int(c) % self.p for c in point)

    # -- modular arithmetic ------------------------------------------------

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse mod p")
        return pow(a, self.p - 2, self.p)

    @cached_property
    def inverse_table(self) -> np.ndarray:
        """inverse_table[j] = j^(-1) mod p for j >= 1 (entry 0 unused)."""
        t = np.zeros(self.p, dtype=np.int64)
        t[1:] = [pow(j, self.p - 2, self.p) for j in range(1, self.p)]
        t.setflags(write=False)
        return t

    # -- character ---------------------------------------------------------

    @cached_property
    def roots(self) -> np.ndarray:
        """roots[a] = exp(2*pi*i*a/p)."""
        r = np.exp(2j * np.pi * np.arange(self.p) / self.p)
        r.setflags(write=False)
        return r

    def chi(self, a: int) -> complex:
        return complex(self.roots[a % self.p])

    @cached_property
    def epsilon_q(self) -> complex:
        """Normalized quadratic Gauss sum g(1) / (eta(1) * sqrt(p))."""
        return gauss_sum(self, 1) / (legendre(self, 1) * math.sqrt(self.p))


class CharacterEvaluator:
    """The fixed additive character chi(x) = exp(2*pi*i*x/p) and its pairings."""

    def __init__(self, context: FieldContext):
        self.context = context

    def __call__(self, value: int) -> complex:
        return self.context.chi(value)

    def pair(self, m: Sequence[int], x: Sequence[int]) -> complex:
        """chi(m . x) for points m, x of the ambient group."""
        ctx = self.context
        if len(m) != ctx.d or len(x) != ctx.d:
            raise ValueError("points must have d coordinates")
        dot = sum(int(a) * int(b) for a, b in zip(m, x)) % ctx.p
        return ctx.chi(dot)


# -- complete character sums ------------------------------------------------


def legendre(ctx: FieldContext, k: int) -> int:
    """Legendre symbol (k|p) in {-1, 0, 1}."""
    k %= ctx.p
    if k == 0:
        return 0
    return 1 if pow(k, (ctx.p - 1) // 2, ctx.p) == 1 else -1


def gauss_sum(ctx: FieldContext, k: int) -> complex:
    """Quadratic Gauss sum sum_x chi(k*x^2); equals p when k = 0 mod p."""
    p = ctx.p
    x = np.arange(p, dtype=np.int64)
    return complex(ctx.roots[(k % p) * x * x % p].sum())


def kloosterman(ctx: FieldContext, a: int, b: int) -> complex:
    """Kloosterman sum sum_{j != 0} chi(a*j + b*j^(-1)); requires a, b != 0 mod p.

    The value is real (the terms pair off under j -> b*a^(-1)*j^(-1)); the
    complex result is returned so callers can assert that themselves.
    """
    p = ctx.p
    a %= p
    b %= p
    if a == 0 or b == 0:
        raise ZeroParameter("kloosterman sum requires a, b nonzero mod p")
    j = np.arange(1, p, dtype=np.int64)
    vals = (a * j + b * ctx.inverse_table[j]) % p
    return complex(ctx.roots[vals].sum())


def weil_poly_sum(ctx: FieldContext, coefficients: Sequence[int]) -> complex:
    """sum_x chi(f(x)) for f given by coefficients (constant term first).

    Requires deg f >= 1 with p not dividing deg f, the hypothesis under which
    the Weil bound |sum| <= (deg f - 1) * sqrt(p) applies.
    """
    p = ctx.p
    coeffs = [c % p for c in coefficients]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    deg = len(coeffs) - 1
    if deg < 1:
        raise ConstantPolynomial("polynomial is constant mod p")
    if deg % p == 0:
        raise DegreeDivisibleByP(f"degree {deg} is divisible by p = {p}")
    x = np.arange(p, dtype=np.int64)
    vals = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):  # Horner, entirely mod p
        vals = (vals * x + c) % p
    return complex(ctx.roots[vals].sum())
