"""Random subsets of the plane: sampling, spectral-gap checks, symmetrization.

A uniform size-k subset of F_p^d is almost surely close to Salem: its largest
nontrivial character sum Phi = q^d max_{m != 0} |S^(m)| stays below
2 sqrt(2 (1+eps) m log n) with m = min(k, n-k), n = q^d.  This module samples
such sets reproducibly, prices that bound on exact spectra, and aggregates
Monte Carlo sweeps over seeds.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analysis import intersection_profile
from .errors import DegenerateSize, SizeOutOfRange
from .field import FieldContext
from .pointset import PointSet, fourier_spectrum

GENERATOR_NAME = "philox"  # counter-based, safe to split across trials

QUANTILE_LEVELS = (0.0, 0.25, 0.5, 0.75, 1.0)


def trial_seed(master: int, index: int) -> int:
    """Derived seed for one trial; replay = sample_subset(ctx, size, this)."""
    return int(np.random.SeedSequence([master, index]).generate_state(1, np.uint64)[0])


def sample_subset(ctx: FieldContext, size: int, seed: int) -> PointSet:
    """Uniform size-`size` subset of the group, without replacement.

    Partial Fisher-Yates over the index range: only the first `size`
    positions are shuffled, which is exactly uniform and costs O(size)
    draws.  Deterministic for a fixed seed.
    """
    if not 0 <= size <= ctx.order:
        raise SizeOutOfRange(f"size must lie in [0, {ctx.order}], got {size}")
    if size == 0:
        return PointSet.empty(ctx)
    rng = np.random.Generator(np.random.Philox(seed))
    idx = np.arange(ctx.order, dtype=np.int64)
    jumps = rng.integers(0, ctx.order - np.arange(size), dtype=np.int64)
    for i in range(size):
        j = i + int(jumps[i])
        idx[i], idx[j] = idx[j], idx[i]
    return PointSet.from_indices(ctx, idx[:size])


@dataclass(frozen=True)
class HayesReport:
    """Spectral-gap check for one sampled set."""

    n: int
    k: int
    m_param: int
    phi: float
    epsilon: float
    bound: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "m_param": self.m_param,
            "phi": self.phi,
            "epsilon": self.epsilon,
            "bound": self.bound,
            "pass": self.passed,
        }


def hayes_check(S: PointSet, epsilon: float) -> HayesReport:
    """Phi(S) against 2 sqrt(2 (1+eps) m log n) on the exact spectrum.

    The empty set and the full group make m = 0 and the bound vacuous, so
    both raise DegenerateSize.
    """
    ctx = S.context
    n = ctx.order
    k = S.size
    if k == 0 or k == n:
        raise DegenerateSize(f"need 0 < |S| < {n} for a meaningful bound, got {k}")
    m_param = min(k, n - k)
    phi = n * fourier_spectrum(S).max_nontrivial
    bound = 2.0 * math.sqrt(2.0 * (1.0 + epsilon) * m_param * math.log(n))
    return HayesReport(
        n=n, k=k, m_param=m_param, phi=float(phi), epsilon=epsilon,
        bound=bound, passed=bool(phi < bound),
    )


@dataclass
class TrialSummary:
    """Aggregate of a seeded Monte Carlo sweep.

    Raw per-trial data (phi values, intersection maxima Omega, derived
    seeds) ride along so any single trial can be replayed."""

    p: int
    d: int
    size: int
    trials: int
    skipped: int
    seed: int
    epsilon: float
    beta: float
    pass_fraction: float
    omega_exceed_fraction: float
    max_intersection_quantiles: dict
    phi_values: list = field(default_factory=list)
    omega_values: list = field(default_factory=list)
    trial_seeds: list = field(default_factory=list)
    generator: str = GENERATOR_NAME

    def to_json(self) -> dict:
        return {
            "generator": self.generator,
            "p": self.p,
            "d": self.d,
            "size": self.size,
            "trials": self.trials,
            "skipped": self.skipped,
            "seed": self.seed,
            "epsilon": self.epsilon,
            "beta": self.beta,
            "pass_fraction": self.pass_fraction,
            "omega_exceed_fraction": self.omega_exceed_fraction,
            "max_intersection_quantiles": dict(self.max_intersection_quantiles),
            "phi_values": list(self.phi_values),
            "omega_values": list(self.omega_values),
            "trial_seeds": list(self.trial_seeds),
        }


def _one_trial(ctx: FieldContext, size: int, tseed: int, epsilon: float):
    S = sample_subset(ctx, size, tseed)
    report = hayes_check(S, epsilon)
    omega = intersection_profile(S).max_size
    return report.phi, report.passed, omega


def monte_carlo(
    ctx: FieldContext,
    size: int,
    trials: int,
    seed: int,
    epsilon: float = 0.5,
    beta: float = 0.45,
    workers: int = 1,
) -> TrialSummary:
    """Sweep `trials` independent samples, one derived seed per trial.

    Degenerate sizes (0 or the whole group) are counted as skipped rather
    than failed.  Omega = max_{x != 0} |S cap (S - x)| is compared against
    p^beta per trial; aggregation is order-insensitive, so workers > 1 runs
    trials on a thread pool without changing the summary.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    seeds = [trial_seed(seed, i) for i in range(trials)]
    degenerate = size == 0 or size == ctx.order
    results: list = []
    if not degenerate:
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(
                    pool.map(lambda ts: _one_trial(ctx, size, ts, epsilon), seeds)
                )
        else:
            results = [_one_trial(ctx, size, ts, epsilon) for ts in seeds]
    phis = [r[0] for r in results]
    omegas = [r[2] for r in results]
    effective = len(results)
    passes = sum(1 for r in results if r[1])
    threshold = ctx.p**beta
    exceed = sum(1 for w in omegas if w > threshold)
    quantiles = {}
    if omegas:
        qs = np.quantile(np.asarray(omegas, dtype=np.float64), QUANTILE_LEVELS)
        quantiles = {f"{lvl:.2f}": float(v) for lvl, v in zip(QUANTILE_LEVELS, qs)}
    return TrialSummary(
        p=ctx.p,
        d=ctx.d,
        size=size,
        trials=trials,
        skipped=trials - effective,
        seed=seed,
        epsilon=epsilon,
        beta=beta,
        pass_fraction=passes / effective if effective else 0.0,
        omega_exceed_fraction=exceed / effective if effective else 0.0,
        max_intersection_quantiles=quantiles,
        phi_values=phis,
        omega_values=omegas,
        trial_seeds=seeds,
    )


@dataclass(frozen=True)
class SymmetrizeReport:
    """T = S cup (-S) plus the exact overlap bookkeeping."""

    T: PointSet
    overlap: int
    size_identity: bool

    def to_json(self) -> dict:
        return {
            "size": self.T.size,
            "overlap": self.overlap,
            "size_identity": self.size_identity,
        }


def symmetrize(S: PointSet) -> SymmetrizeReport:
    """S cup (-S), with overlap |S cap (-S)| and the size identity check."""
    neg = S.negate()
    T = S.union(neg)
    overlap = S.intersect(neg).size
    report = SymmetrizeReport(
        T=T, overlap=overlap, size_identity=T.size == 2 * S.size - overlap
    )
    assert T.is_symmetric() and report.size_identity
    return report
