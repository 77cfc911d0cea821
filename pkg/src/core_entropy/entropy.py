"""Core entropy and biaccessibility dimension from an external angle."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .angles import OrbitStructure, orbit_structure, to_angle
from .errors import DomainError
from .spectral import DEFAULT_TOL, growth_rate
from .symbolic import dimension_from_count, real_tree_survivors
from .transition import build_pair_matrix

LOG2 = math.log(2.0)
MAX_GRAPH_DEPTH = 20
CONVENTION = "convention"
THREADS_ENV = "CORE_ENTROPY_THREADS"


@dataclass(frozen=True)
class EntropyReport:
    theta: Fraction
    lam: float
    entropy: float
    dimension: float
    orbit: OrbitStructure
    matrix_dim: int
    method: str
    iterations: int = 0
    residual: float = 0.0


def _report(theta: Fraction, lam: float, orbit, matrix_dim, method, iterations, residual):
    dim = math.log(lam) / LOG2
    return EntropyReport(theta, lam, dim * LOG2, dim, orbit, matrix_dim,
                         method, iterations, residual)


@lru_cache(maxsize=1 << 16)
def _core_entropy(theta: Fraction, tol: float, certify: bool) -> EntropyReport:
    if theta == 0:
        # main cardioid root: degenerate pair construction, B = 0
        return _report(theta, 1.0, OrbitStructure(0, 1), 0, CONVENTION, 0, 0.0)
    M = build_pair_matrix(theta)
    g = growth_rate(M, tol=tol, certify=certify)
    return _report(theta, g.lam, orbit_structure(theta), M.dim, g.method,
                   g.iterations, g.residual)


def core_entropy(theta, tol: float = DEFAULT_TOL, certify: bool = True) -> EntropyReport:
    """Core entropy h = log(lambda) of the pair transition matrix of theta.

    >>> round(core_entropy(Fraction(1, 6)).lam, 6)
    1.52138
    """
    return _core_entropy(to_angle(theta), float(tol), bool(certify))


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise DomainError(f"{THREADS_ENV} must be a positive integer") from None
        if n < 1:
            raise DomainError(f"{THREADS_ENV} must be a positive integer")
        return n
    return os.cpu_count() or 1


def _sample(theta: Fraction) -> EntropyReport:
    # Collatz-Wielandt bracket is already rigorous to tol; skip char-poly here
    return core_entropy(theta, certify=False)


def sample_angles(lo, hi, depth: int) -> list[Fraction]:
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise DomainError("need lo < hi")
    if depth < 0 or depth > MAX_GRAPH_DEPTH:
        raise DomainError(f"depth must be in 0..{MAX_GRAPH_DEPTH}")
    scale = 1 << depth
    first = math.ceil(lo * scale)
    last = math.floor(hi * scale)
    angles = {Fraction(k, scale) for k in range(first, last + 1)}
    angles.update((lo, hi))
    return sorted(angles)


def graph_samples(lo, hi, depth: int, workers: int | None = None) -> list[EntropyReport]:
    """One report per dyadic k/2^depth in [lo, hi] plus both endpoints.

    Angles are reduced mod 1 for the computation but rows keep the sampled
    value, so a window ending at 1 is allowed.
    """
    angles = sample_angles(lo, hi, depth)
    for a in angles:
        if a < 0 or a > 1:
            raise DomainError("graph window must lie in [0, 1]")
    workers = worker_count() if workers is None else workers
    reduced = [a % 1 for a in angles]
    if workers > 1 and len(reduced) >= 256:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_sample, reduced, chunksize=64))
    else:
        reports = [_sample(a) for a in reduced]
    return [r if a == r.theta else _with_theta(r, a) for a, r in zip(angles, reports)]


def _with_theta(r: EntropyReport, theta: Fraction) -> EntropyReport:
    return EntropyReport(theta, r.lam, r.entropy, r.dimension, r.orbit,
                         r.matrix_dim, r.method, r.iterations, r.residual)


def dimension_estimate_real(theta, depth: int) -> float:
    """Box-counting dimension of the real tree angles, log2(S_depth)/depth."""
    return dimension_from_count(real_tree_survivors(theta, depth), depth)
