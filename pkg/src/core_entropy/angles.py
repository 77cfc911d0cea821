"""Exact rational angles on the circle R/Z.

Angles are plain :class:`fractions.Fraction` values in ``[0, 1)``; Fraction
keeps them reduced, hashable and exact, which is all we need.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import AngleSyntaxError, DomainError

Angle = Fraction

_FRACTION_RE = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")
_INT_RE = re.compile(r"^\s*(\d+)\s*$")
_BINARY_RE = re.compile(r"^\s*0b\.([01]*)(?:\(([01]+)\))?\s*$")


def to_angle(value) -> Fraction:
    """Coerce an int, Fraction or angle string to a reduced angle in [0, 1)."""
    if isinstance(value, str):
        return parse_angle(value)
    if isinstance(value, float):
        raise TypeError("floating-point angles are not supported")
    return Fraction(value) % 1


def parse_angle(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or ``"0b.BITS(BITS)"`` into a reduced angle.

    >>> parse_angle("3/15")
    Fraction(1, 5)
    >>> parse_angle("0b.(0011)")
    Fraction(1, 5)
    """
    m = _FRACTION_RE.match(text)
    if m:
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise AngleSyntaxError(f"zero denominator in angle {text!r}")
        return Fraction(num, den) % 1
    m = _INT_RE.match(text)
    if m:
        return Fraction(int(m.group(1))) % 1
    m = _BINARY_RE.match(text)
    if m:
        pre, per = m.group(1), m.group(2) or ""
        if not pre and not per:
            raise AngleSyntaxError(f"empty binary literal {text!r}")
        return _bits_value(pre, per) % 1
    raise AngleSyntaxError(f"cannot parse angle {text!r}")


def format_angle(a: Fraction) -> str:
    return f"{a.numerator}/{a.denominator}"


def double_angle(a: Fraction) -> Fraction:
    return (2 * a) % 1


def _bits_value(pre: str, per: str) -> Fraction:
    value = Fraction(int(pre, 2) if pre else 0, 2 ** len(pre))
    if per:
        value += Fraction(int(per, 2), (2 ** len(per) - 1) * 2 ** len(pre))
    return value


@dataclass(frozen=True)
class OrbitStructure:
    preperiod: int
    period: int


def _two_adic(n: int) -> tuple[int, int]:
    k = 0
    while n % 2 == 0:
        n //= 2
        k += 1
    return k, n


def multiplicative_order_of_two(m: int) -> int:
    """Order of 2 modulo the odd number ``m`` (1 when m == 1)."""
    if m % 2 == 0:
        raise ValueError("modulus must be odd")
    if m == 1:
        return 1
    p, r = 1, 2 % m
    while r != 1:
        r = (2 * r) % m
        p += 1
    return p


def orbit_structure(a: Fraction) -> OrbitStructure:
    """Preperiod and period of ``a`` under doubling, read off the denominator."""
    k, odd = _two_adic(a.denominator)
    return OrbitStructure(k, multiplicative_order_of_two(odd))


def orbit(a: Fraction, length: int) -> list[Fraction]:
    out = []
    for _ in range(length):
        out.append(a)
        a = double_angle(a)
    return out


@dataclass(frozen=True)
class BinaryAngle:
    """Eventually periodic binary expansion ``0.pre(per)``.

    ``periodic_bits`` is empty exactly for dyadic angles, whose expansion
    terminates.  The all-ones period is never produced.
    """

    preperiodic_bits: str
    periodic_bits: str

    def __str__(self):
        if self.periodic_bits:
            return f"0b.{self.preperiodic_bits}({self.periodic_bits})"
        return f"0b.{self.preperiodic_bits or '0'}"

    def to_angle(self) -> Fraction:
        return _bits_value(self.preperiodic_bits, self.periodic_bits) % 1

    def digits(self, n: int) -> str:
        """First ``n`` binary digits (trailing zeros for dyadic angles)."""
        pre, per = self.preperiodic_bits, self.periodic_bits or "0"
        if n <= len(pre):
            return pre[:n]
        rest = n - len(pre)
        reps = -(-rest // len(per))
        return pre + (per * reps)[:rest]


def _bits_of(a: Fraction, count: int) -> str:
    bits = []
    for _ in range(count):
        a = 2 * a
        if a >= 1:
            bits.append("1")
            a -= 1
        else:
            bits.append("0")
    return "".join(bits)


def to_binary(a: Fraction) -> BinaryAngle:
    """Exact binary expansion; preperiod and period lengths match the orbit."""
    a = to_angle(a)
    orb = orbit_structure(a)
    if a.denominator == 1 << orb.preperiod:
        # dyadic: terminating expansion, drop trailing zeros
        return BinaryAngle(_bits_of(a, orb.preperiod).rstrip("0"), "")
    bits = _bits_of(a, orb.preperiod + orb.period)
    return BinaryAngle(bits[: orb.preperiod], bits[orb.preperiod:])


def _check_words(w_minus: str, w_plus: str):
    for w in (w_minus, w_plus):
        if not w or set(w) - {"0", "1"}:
            raise AngleSyntaxError(f"not a bit word: {w!r}")
    if len(w_minus) != len(w_plus):
        raise DomainError("tuning words must have equal length")
    if len(w_minus) < 2:
        raise DomainError("tuning words must have length >= 2")
    if w_minus == w_plus:
        raise DomainError("tuning words must be distinct")


def tune_angle(w_minus: str, w_plus: str, a) -> Fraction:
    """Douady substitution: replace each binary digit 0 of ``a`` by
    ``w_minus`` and each 1 by ``w_plus``.

    Dyadic angles use their terminating expansion (trailing zeros).

    >>> tune_angle("01", "10", Fraction(1, 2))
    Fraction(7, 12)
    """
    _check_words(w_minus, w_plus)
    b = to_binary(to_angle(a))
    sub = {"0": w_minus, "1": w_plus}
    pre = "".join(sub[d] for d in b.preperiodic_bits)
    per = "".join(sub[d] for d in (b.periodic_bits or "0"))
    return _bits_value(pre, per) % 1
