"""Exact integer polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import sympy


def _trim(coeffs) -> tuple[int, ...]:
    c = [int(x) for x in coeffs]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c) if c else (0,)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients stored in ascending degree."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def from_descending(cls, coeffs):
        return cls(list(coeffs)[::-1])

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1):
        return cls([0] * degree + [coeff])

    @classmethod
    def x(cls):
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return -1 if self.is_zero else len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def descending(self) -> list[int]:
        return list(self.coeffs[::-1])

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Fraction) -> int:
        """Exact sign of P(x) at a rational point."""
        x = Fraction(x)
        num, den = x.numerator, x.denominator
        # den^deg * P(num/den) as an integer
        acc = 0
        for i, c in enumerate(reversed(self.coeffs)):
            acc = acc * num + c * den ** i
        return (acc > 0) - (acc < 0)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int):
        """Multiply by x^k."""
        return IntPolynomial([0] * k + list(self.coeffs))

    def derivative(self):
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:] or [0])

    def reciprocal(self):
        return IntPolynomial(self.coeffs[::-1])

    def normalized(self):
        """Global sign chosen so the leading coefficient is positive."""
        return -self if self.leading < 0 else self

    def to_sympy(self, var=None):
        var = var if var is not None else sympy.Symbol("x")
        return sympy.Poly(self.descending(), var, domain="ZZ")

    @classmethod
    def from_sympy(cls, poly: sympy.Poly):
        return cls.from_descending([int(c) for c in poly.all_coeffs()])

    @cached_property
    def squarefree_part(self):
        if self.degree <= 1:
            return self
        return IntPolynomial.from_sympy(self.to_sympy().sqf_part())

    def squarefree_factors(self) -> list[tuple[IntPolynomial, int]]:
        """Yun decomposition: list of (squarefree factor, multiplicity)."""
        _, factors = self.to_sympy().sqf_list()
        return [(IntPolynomial.from_sympy(f), m) for f, m in factors]

    def divide_exact(self, other) -> IntPolynomial:
        q, r = sympy.div(self.to_sympy(), _coerce(other).to_sympy())
        if not r.is_zero:
            raise ValueError("division is not exact")
        return IntPolynomial.from_sympy(q)

    def __str__(self):
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xk = "x" if k == 1 else f"x^{k}"
                body = xk if mag == 1 else f"{mag}{xk}"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _coerce(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial([p])
    raise TypeError(f"cannot coerce {type(p).__name__} to IntPolynomial")


X = IntPolynomial.x()
