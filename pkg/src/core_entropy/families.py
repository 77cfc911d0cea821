"""Closed-form characteristic polynomials of parameter sequences.

Each family maps its parameters (q and/or n) to an integer polynomial whose
largest real root is the growth factor lambda of the corresponding center
or Misiurewicz point.  Families indexed by n converge geometrically to the
largest root lambda0 of a fixed leading factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import ConvergenceError, DomainError
from .polynomial import IntPolynomial, X
from .spectral import largest_real_root, largest_real_root_exact

FIT_TOL = 1e-15
DRIFT_MAX = 0.05

ONE = IntPolynomial([1])
TWO = IntPolynomial([2])
X14 = X ** 3 - X ** 2 - 2
X16 = X ** 3 - X - 2
X315 = X ** 4 - 2 * X - 1


def _principal(q):
    return X ** q - X ** (q - 1) - 2


@dataclass(frozen=True)
class _Family:
    build: Callable[..., IntPolynomial]
    params: tuple[str, ...]
    n_valid: Callable[[int, int | None], bool] | None = None
    lead: Callable[[int | None], IntPolynomial] | None = None
    step: int = 1


def _from(lo, step=1):
    return lambda n, q=None: n >= lo and (n - lo) % step == 0


CATALOG: dict[str, _Family] = {
    "principal_beta": _Family(lambda q: _principal(q), ("q",)),
    "principal_center": _Family(lambda q: X ** (q + 1) - 2 * X - 1, ("q",)),
    "principal_alpha": _Family(lambda q: X ** q - 2, ("q",)),
    "vein_center": _Family(
        lambda q, n: X ** (n + 1) - X ** n - 2 * X ** (n + 1 - q) + X + 1, ("q", "n"),
        lambda n, q: n >= q + 1, _principal),
    "vein_alpha": _Family(
        lambda q, n: X ** (n + 1) - X ** n - 2 * X ** (n + 1 - q) + 2, ("q", "n"),
        lambda n, q: n >= q, _principal),
    "real_center": _Family(lambda n: X ** n - 2 * X ** (n - 1) + 1, ("n",),
                           _from(3), lambda q: X - 2),
    "real_alpha": _Family(lambda n: X ** (n + 1) - X ** n - 2 * X ** (n - 1) + 2, ("n",),
                          _from(2), lambda q: X - 2),
    "stefan_odd": _Family(lambda n: X ** n - 2 * X ** (n - 2) - 1, ("n",),
                          _from(3, 2), lambda q: X ** 2 - 2, 2),
    "stefan_even": _Family(lambda n: X ** n - 2 * X ** (n - 2) + 1, ("n",),
                           _from(4, 2), lambda q: X ** 2 - 2, 2),
    "x14_center": _Family(lambda n: X ** (n - 2) * X14 + (X + 1), ("n",),
                          _from(4), lambda q: X14),
    "x14_alpha": _Family(lambda n: X ** (n - 2) * X14 + 2, ("n",),
                         _from(3), lambda q: X14),
    "x14_beta": _Family(lambda n: X ** (n - 2) * X14 + 2 * (X - 1), ("n",),
                        _from(4), lambda q: X14),
    "x16_center": _Family(lambda n: X ** (n - 1) * X16 + (X ** 2 + 1), ("n",),
                          _from(5, 2), lambda q: X16, 2),
    "x16_alpha": _Family(lambda n: X ** (n - 1) * X16 + 2, ("n",),
                         _from(3, 2), lambda q: X16, 2),
    "x16_beta": _Family(lambda n: X ** (n - 1) * X16 - 2, ("n",),
                        _from(2, 2), lambda q: X16, 2),
    "x315_center": _Family(lambda n: X ** n * X315 + (X ** 4 + 1), ("n",),
                           _from(7, 4), lambda q: X315, 4),
    "x315_alpha": _Family(lambda n: X ** n * X315 + 2, ("n",),
                          _from(3, 4), lambda q: X315, 4),
    "x315_beta": _Family(lambda n: X ** n * X315 - 2 * (X ** 3 + X ** 2 + 1), ("n",),
                         _from(4, 4), lambda q: X315, 4),
    "x315_sublimb": _Family(lambda n: X ** n * (X - 1) * X315 - 2 * (X ** 2 + 1), ("n",),
                            _from(2, 4), lambda q: X315, 4),
}


@dataclass(frozen=True)
class FamilySpec:
    name: str
    q: int | None = None
    n: int | None = None

    def __post_init__(self):
        fam = _family(self.name)
        for p in ("q", "n"):
            given = getattr(self, p) is not None
            if given and p not in fam.params:
                raise DomainError(f"{self.name} takes no parameter {p}")
            if not given and p in fam.params:
                raise DomainError(f"{self.name} requires parameter {p}")
        if self.q is not None and self.q < 2:
            raise DomainError("q must be >= 2")
        if self.n is not None and not fam.n_valid(self.n, self.q):
            raise DomainError(f"n={self.n} out of range for {self.name}")

    def __str__(self):
        args = ", ".join(f"{p}={getattr(self, p)}" for p in ("q", "n")
                         if getattr(self, p) is not None)
        return f"{self.name}({args})"


def _family(name: str) -> _Family:
    try:
        return CATALOG[name]
    except KeyError:
        raise DomainError(f"unknown family {name!r}") from None


def family_polynomial(spec: FamilySpec) -> IntPolynomial:
    fam = _family(spec.name)
    return fam.build(*(getattr(spec, p) for p in fam.params))


def family_growth(spec: FamilySpec, tol: float = FIT_TOL) -> float:
    """Largest real root of the family polynomial in [1, 2]."""
    return largest_real_root(family_polynomial(spec), 1.0, 2.0, tol=tol)


def leading_root(name: str, q: int | None = None) -> float:
    """lambda0: largest root of the family's leading factor."""
    fam = _family(name)
    if fam.lead is None:
        raise DomainError(f"{name} is not a sequence in n")
    if "q" in fam.params and q is None:
        raise DomainError(f"{name} requires parameter q")
    return largest_real_root(fam.lead(q), 1.0, 2.0, tol=FIT_TOL)


@dataclass(frozen=True)
class AsymptoticsFit:
    lambda0: float
    K: float
    drift: float
    sign: int
    ns: tuple[int, ...]


def fit_asymptotics(name: str, n_range, q: int | None = None,
                    max_drift: float = DRIFT_MAX) -> AsymptoticsFit:
    """Fit lambda_n ~ lambda0 -/+ K lambda0^-n over the valid n in ``n_range``.

    K is the mean of |lambda0 - lambda_n| lambda0^n; drift is the relative
    spread of those per-n estimates between the ends of the range.
    """
    fam = _family(name)
    lam0 = leading_root(name, q)
    ns = [n for n in n_range if fam.n_valid(n, q)]
    if len(ns) < 5:
        raise DomainError(f"need at least 5 valid n for {name}, got {len(ns)}")
    # |lambda_n - lambda0| shrinks like lambda0^-n, so resolve the roots
    # well below that in exact arithmetic
    tol = Fraction(1, 10 ** 12) / Fraction(lam0) ** max(ns)
    root0 = largest_real_root_exact(fam.lead(q), 1, 2, tol)
    ks, signs = [], set()
    for n in ns:
        spec = FamilySpec(name, q=q, n=n) if "q" in fam.params else FamilySpec(name, n=n)
        diff = largest_real_root_exact(family_polynomial(spec), 1, 2, tol) - root0
        signs.add((diff > 0) - (diff < 0))
        ks.append(float(abs(diff) * root0 ** n))
    if len(signs) != 1 or 0 in signs:
        raise ConvergenceError(f"sign of lambda_n - lambda0 not constant for {name}")
    K = math.fsum(ks) / len(ks)
    drift = abs(ks[-1] - ks[0]) / K
    if drift > max_drift:
        raise ConvergenceError(f"non-geometric behavior for {name}: drift {drift:.3g}")
    return AsymptoticsFit(lam0, K, drift, signs.pop(), tuple(ns))
