"""Kneading determinant of real-admissible angles.

D(t) = sum_n s_n t^n with s_0 = +1 and s_n = (-1)^(number of ONE symbols
among the first n kneading entries).  Its smallest root in (0, 1) sits at
t = 1/lambda.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from .angles import orbit_structure, to_angle
from .errors import DomainError
from .symbolic import ONE, is_real_angle, kneading_sequence

T_MAX = 0.95
GRID = 4096
DEFAULT_TERMS = 200


@dataclass(frozen=True)
class KneadingSigns:
    source: Fraction
    signs: tuple[int, ...]

    def __len__(self):
        return len(self.signs)


@dataclass(frozen=True)
class KneadingRoot:
    """Smallest root t* of the truncated determinant and lambda = 1/t*.

    ``root`` is None when there is no sign change in (0, T_MAX]; lambda is
    then reported as 1.  ``supported`` is False outside the real slice,
    where the value is computed but carries no guarantee.
    """

    theta: Fraction
    lam: float
    root: float | None
    terms: int
    supported: bool


def _check_theta(theta: Fraction):
    if theta == 0:
        raise DomainError("kneading determinant undefined for theta = 0")
    if theta > Fraction(1, 2):
        raise DomainError("theta must satisfy 0 < theta <= 1/2")


def kneading_signs(theta, N: int) -> KneadingSigns:
    """Cumulative-parity signs s_0..s_N (STAR resolved as in ``resolved``)."""
    theta = to_angle(theta)
    _check_theta(theta)
    if N < 0:
        raise ValueError("N must be >= 0")
    nu = kneading_sequence(theta).resolved()
    signs, s = [1], 1
    for sym in nu.symbols(N):
        if sym == ONE:
            s = -s
        signs.append(s)
    return KneadingSigns(theta, tuple(signs))


def determinant(signs: KneadingSigns, t):
    """Truncated D_N(t) by Horner; accepts scalars or arrays."""
    return np.polyval(np.array(signs.signs[::-1], dtype=float), t)


def min_terms(theta) -> int:
    orb = orbit_structure(to_angle(theta))
    return 4 * (orb.preperiod + orb.period)


def _tail_bound(t, N: int):
    # |sum_{n > N} s_n t^n| <= t^(N+1) / (1 - t)
    return t ** (N + 1) / (1.0 - t)


def kneading_lambda(theta, N: int | None = None, tol: float = 1e-15) -> KneadingRoot:
    """Smallest root of the degree-N truncation of D(t) in (0, T_MAX].

    A sign change only counts once |D_N| exceeds the truncation tail at
    both ends of its bracket, so the full series changes sign there too;
    otherwise DomainError asks for a longer truncation.  N defaults to
    max(200, min_terms(theta)).
    """
    theta = to_angle(theta)
    _check_theta(theta)
    if N is None:
        N = max(DEFAULT_TERMS, min_terms(theta))
    if N < min_terms(theta):
        raise DomainError(
            f"truncation N={N} too short to certify; need N >= {min_terms(theta)}")
    ks = kneading_signs(theta, N)
    supported = is_real_angle(theta)
    coeffs = np.array(ks.signs[::-1], dtype=float)
    ts = np.linspace(0.0, T_MAX, GRID + 1)
    vals = np.polyval(coeffs, ts)
    zero = np.flatnonzero(vals[1:] == 0)
    change = np.flatnonzero(np.sign(vals[1:-1]) * np.sign(vals[2:]) < 0)
    candidates = []
    if zero.size:
        candidates.append(float(ts[zero[0] + 1]))
    if change.size:
        i = change[0] + 1
        a, b = ts[i], ts[i + 1]
        if min(abs(vals[i]) - _tail_bound(a, N), abs(vals[i + 1]) - _tail_bound(b, N)) <= 0:
            raise DomainError(
                f"truncation N={N} too short to certify the sign change near t={a:.6f}")
        f = lambda t: float(np.polyval(coeffs, t))  # noqa: E731
        candidates.append(brentq(f, a, b, xtol=tol, rtol=1e-15, maxiter=500))
    if not candidates:
        return KneadingRoot(theta, 1.0, None, N, supported)
    t = min(candidates)
    return KneadingRoot(theta, 1.0 / t, t, N, supported)
