"""Itineraries of angles under doubling and unimodal kneading theory.

Symbols are the characters ``"1"`` (ONE), ``"0"`` (ZERO) and ``"*"`` (STAR).
With respect to an angle theta, ONE marks the open half-circle between
theta/2 and (theta+1)/2 that contains theta; STAR marks the two boundary
angles themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .angles import double_angle, orbit_structure, to_angle, to_binary
from .errors import DomainError

ONE, ZERO, STAR = "1", "0", "*"


def symbol(phi: Fraction, theta: Fraction) -> str:
    if theta == 0:
        return STAR if phi in (0, Fraction(1, 2)) else ZERO
    lo, hi = theta / 2, (theta + 1) / 2
    if phi == lo or phi == hi:
        return STAR
    return ONE if lo < phi < hi else ZERO


def itinerary(phi, theta, n: int) -> str:
    """First ``n`` symbols of the orbit of ``phi`` with respect to ``theta``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    phi, theta = to_angle(phi), to_angle(theta)
    out = []
    for _ in range(n):
        out.append(symbol(phi, theta))
        phi = double_angle(phi)
    return "".join(out)


@dataclass(frozen=True)
class KneadingSequence:
    """Eventually periodic symbol sequence ``pre (per)^infinity``."""

    preperiodic_part: str
    periodic_part: str

    def __str__(self):
        return f"{self.preperiodic_part}|({self.periodic_part})"

    @property
    def is_star_periodic(self) -> bool:
        return STAR in self.periodic_part

    def symbols(self, n: int) -> str:
        pre, per = self.preperiodic_part, self.periodic_part
        if n <= len(pre):
            return pre[:n]
        rest = n - len(pre)
        return pre + (per * (-(-rest // len(per))))[:rest]

    def resolved(self) -> KneadingSequence:
        """STAR-free version of a star-periodic sequence.

        The STAR is replaced so that the period carries an even number of
        ONE symbols; the sign sequence of the kneading determinant is then
        periodic with the same period and the determinant has the form
        P(t)/(1 - t^p).
        """
        if not self.is_star_periodic:
            return self
        body = self.periodic_part.replace(STAR, "")
        fill = ONE if body.count(ONE) % 2 else ZERO
        return KneadingSequence(self.preperiodic_part,
                                self.periodic_part.replace(STAR, fill))


def kneading_sequence(theta) -> KneadingSequence:
    """Itinerary of theta with respect to itself, folded by its orbit shape."""
    theta = to_angle(theta)
    if theta == 0:
        raise DomainError("kneading sequence undefined for theta = 0")
    orb = orbit_structure(theta)
    word = itinerary(theta, theta, orb.preperiod + orb.period)
    return KneadingSequence(word[: orb.preperiod], word[orb.preperiod:])


def digit_change_sequence(theta, n: int) -> str:
    """ONE wherever consecutive binary digits of theta differ.

    Agrees with the kneading sequence for angles of real parameters.
    """
    digits = to_binary(to_angle(theta)).digits(n + 1)
    return "".join(ONE if digits[i] != digits[i + 1] else ZERO
                   for i in range(n))


def unimodal_compare(a: str, b: str) -> int:
    """Compare STAR-free words in the parity-twisted order.

    Returns 1 if ``a`` is larger, -1 if smaller, 0 if equal on the common
    length.  The critical value of x^2 + c is the extreme point of the
    dynamical interval, so admissible kneading sequences are maxima.
    """
    parity = 0
    for x, y in zip(a, b):
        if x != y:
            bigger = ONE if parity == 0 else ZERO
            return 1 if x == bigger else -1
        if x == ONE:
            parity ^= 1
    return 0


def _shift_maximal(nu: KneadingSequence) -> bool:
    k, p = len(nu.preperiodic_part), len(nu.periodic_part)
    span = k + 2 * p
    word = nu.symbols(span + k + p)
    head = word[:span]
    for shift in range(1, k + p + 1):
        if unimodal_compare(head, word[shift:shift + span]) < 0:
            return False
    return True


def is_real_admissible(nu: KneadingSequence) -> bool:
    """True iff the sequence dominates all of its shifts.

    A STAR-periodic sequence is admissible when both of its resolutions
    are; the parameters on either side of a real center realize them.  The
    even resolution alone is not enough: (111*) resolves to 1^infinity.
    """
    if not nu.is_star_periodic:
        return _shift_maximal(nu)
    return all(_shift_maximal(KneadingSequence(
        nu.preperiodic_part, nu.periodic_part.replace(STAR, fill))) for fill in (ONE, ZERO))


def is_real_angle(theta) -> bool:
    """Kneading of theta is real-admissible (theta taken mod mirror)."""
    theta = to_angle(theta)
    if theta == 0:
        return True
    return is_real_admissible(kneading_sequence(theta))


def _require_real(theta: Fraction):
    if theta > Fraction(1, 2):
        raise DomainError("theta must satisfy theta <= 1/2")
    if not is_real_angle(theta):
        raise DomainError(f"{theta} is not the angle of a real parameter")


def real_tree_survivors(theta, depth: int, chunk: int = 1 << 18) -> int:
    """Count depth-``depth`` dyadic intervals whose midpoint phi keeps
    ``||2^n phi|| <= ||theta||`` for ``0 <= n < depth``.

    At n = depth the midpoint lands on 1/2, which carries no information,
    so that step is not tested.
    """
    theta = to_angle(theta)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    _require_real(theta)
    if depth > 40:
        raise DomainError("depth > 40 exceeds the enumeration budget")
    # ||theta|| = a/b with theta <= 1/2
    a, b = theta.numerator, theta.denominator
    mod = 1 << (depth + 1)
    total = 0
    n_intervals = 1 << depth
    for start in range(0, n_intervals, chunk):
        i = np.arange(start, min(start + chunk, n_intervals), dtype=np.int64)
        x = 2 * i + 1
        alive = np.ones(x.shape, dtype=bool)
        for _ in range(depth):
            dist = np.minimum(x, mod - x)
            # dist/mod <= a/b, exactly, in integers
            alive &= dist.astype(object if b * mod > 2**62 else np.int64) * b <= a * mod
            x = (2 * x) % mod
        total += int(np.count_nonzero(alive))
    return total


def dimension_from_count(count: int, depth: int) -> float:
    return math.log2(count) / depth if count > 0 else 0.0
