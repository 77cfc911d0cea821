"""Root clouds of the polynomial families M0, M1 and M2.

M0: coefficients in {-1, 0, 1} with nonzero constant term.
M1: coefficients in {-1, 1}; these are the compositions g_{+-}(...g_{+-}(0))
    of g_{lambda,+-}(x) = +-lambda x - 1, up to sign.
M2: the compositions that follow a real periodic kneading sequence.

Every family is closed under global sign, so polynomials are normalized to
a positive leading coefficient.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import ConvergenceError, DomainError
from .polynomial import IntPolynomial
from .spectral import largest_real_root
from .symbolic import ONE, STAR, KneadingSequence, is_real_admissible, unimodal_compare

SETS = ("M0", "M1", "M2")
DEFAULT_CAPS = {"M0": 10, "M1": 16, "M2": 12}
EXTENDED_CAPS = {"M0": 14, "M1": 24, "M2": 24}
ROOT_TOL = 1e-10
MAX_DEGREE = 64
ABERTH_ITERS = 100
CLUSTER = 1e-4


@dataclass(frozen=True)
class Member:
    poly_id: str
    poly: IntPolynomial
    word: str | None = None  # kneading star-word for M2


def poly_id(p: IntPolynomial) -> str:
    """Descending coefficient signs, e.g. ``+0-`` for x^2 - 1."""
    return "".join({1: "+", 0: "0", -1: "-"}[c] for c in p.descending())


def _normalize_set(name: str) -> str:
    tag = name.upper()
    if tag not in SETS:
        raise DomainError(f"unknown set {name!r}; expected one of {', '.join(SETS)}")
    return tag


def _check_bound(tag: str, bound: int, extended: bool):
    cap = (EXTENDED_CAPS if extended else DEFAULT_CAPS)[tag]
    if bound < 1:
        raise DomainError("bound must be >= 1")
    if bound > cap:
        raise DomainError(f"bound {bound} exceeds the {tag} budget cap {cap}")


def kneading_polynomial(word: str) -> IntPolynomial:
    """x_n(lambda) for the star-word ``word*`` of period n = len(word) + 1.

    x_1 = -1 and x_{j+1} = s_j lambda x_j - 1 with s_j = -1 on ONE.
    """
    x = IntPolynomial([-1])
    lam = IntPolynomial([0, 1])
    for sym in word:
        x = (-1 if sym == ONE else 1) * lam * x - 1
    return x


def admissible_words(period: int) -> Iterator[str]:
    """Star-words w (length period-1) with (w*) real-admissible, in
    lexicographic order."""
    if period < 2:
        return

    def extend(prefix: str):
        n = len(prefix)
        # prune: a shift that already beats the prefix can never recover
        for k in range(1, n):
            if unimodal_compare(prefix[k:], prefix[:n - k]) > 0:
                return
        if n == period - 1:
            if is_real_admissible(KneadingSequence("", prefix + STAR)):
                yield prefix
            return
        for sym in "01":
            yield from extend(prefix + sym)

    yield from extend(ONE)


def enumerate_polynomials(set_name: str, bound: int, extended: bool = False) -> Iterator[Member]:
    """Stream the family ordered by (degree, descending coefficients)."""
    tag = _normalize_set(set_name)
    _check_bound(tag, bound, extended)
    if tag == "M0":
        for d in range(1, bound + 1):
            for mid in itertools.product((-1, 0, 1), repeat=d - 1):
                for c0 in (-1, 1):
                    p = IntPolynomial.from_descending((1,) + mid + (c0,))
                    yield Member(poly_id(p), p)
    elif tag == "M1":
        for d in range(1, bound + 1):
            for rest in itertools.product((-1, 1), repeat=d):
                p = IntPolynomial.from_descending((1,) + rest)
                yield Member(poly_id(p), p)
    else:
        for period in range(2, bound + 1):
            members = []
            for w in admissible_words(period):
                p = kneading_polynomial(w).normalized()
                members.append(Member(poly_id(p), p, w + STAR))
            members.sort(key=lambda m: m.poly.descending())
            yield from members


# --- roots ---------------------------------------------------------------

def _aberth(coeffs: np.ndarray, iters: int = ABERTH_ITERS):
    """Simultaneous Aberth-Ehrlich iteration on a batch of monic-ish
    polynomials of equal degree.  ``coeffs`` has shape (batch, d+1),
    descending.  Returns roots (batch, d) and a convergence mask."""
    batch, d1 = coeffs.shape
    d = d1 - 1
    a = coeffs.astype(np.complex128)
    da = a[:, :-1] * np.arange(d, 0, -1)
    # start on a circle of the Fujiwara radius, rotated off the axes
    ratio = np.abs(a[:, 1:] / a[:, :1]) ** (1.0 / np.arange(1, d1))
    radius = 2 * ratio.max(axis=1, keepdims=True)
    z = radius * np.exp(2j * np.pi * (np.arange(d) + 0.25) / d + 0.4j)
    done = np.zeros(batch, dtype=bool)
    eye = np.eye(d, dtype=bool)
    active = np.arange(batch)
    for _ in range(iters):
        za, aa, daa = z[active], a[active], da[active]
        p = np.zeros_like(za)
        for k in range(d1):
            p = p * za + aa[:, k:k + 1]
        dp = np.zeros_like(za)
        for k in range(d):
            dp = dp * za + daa[:, k:k + 1]
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            w = p / dp
            diff = za[:, :, None] - za[:, None, :]
            diff[:, eye] = np.inf
            s = (1.0 / diff).sum(axis=2)
            step = w / (1.0 - w * s)
        step[~np.isfinite(step)] = 0
        za = za - step
        z[active] = za
        small = (np.abs(step) <= 1e-14 * np.maximum(1.0, np.abs(za))).all(axis=1)
        done[active[small]] = True
        active = active[~small]
        if active.size == 0:
            break
    return z, done


def _residuals(p: IntPolynomial, roots: np.ndarray) -> np.ndarray:
    """|P(r)| / sum |a_k| |r|^k in extended precision."""
    z = roots.astype(np.clongdouble)
    acc = np.zeros_like(z)
    scale = np.zeros(z.shape, dtype=np.longdouble)
    az = np.abs(z)
    for c in p.descending():
        acc = acc * z + c
        scale = scale * az + abs(c)
    return np.abs(acc) / scale


def _polish(p: IntPolynomial, roots: np.ndarray, steps: int = 3) -> np.ndarray:
    """Newton steps in extended precision."""
    z = roots.astype(np.clongdouble)
    coeffs = p.descending()
    for _ in range(steps):
        f = np.zeros_like(z)
        df = np.zeros_like(z)
        for c in coeffs:
            df = df * z + f
            f = f * z + c
        ok = df != 0
        z[ok] = z[ok] - f[ok] / df[ok]
    return z.astype(np.complex128)


def _clustered(roots: np.ndarray) -> bool:
    if len(roots) < 2:
        return False
    diff = np.abs(roots[:, None] - roots[None, :])
    np.fill_diagonal(diff, np.inf)
    return bool(diff.min() < CLUSTER)


def _roots_by_factor(p: IntPolynomial) -> np.ndarray:
    out = []
    for f, mult in p.squarefree_factors():
        if f.degree < 1:
            continue
        r = np.roots(np.array(f.descending(), dtype=float)) if f.degree > 1 else \
            np.array([-f.coeffs[0] / f.coeffs[1]], dtype=complex)
        r = _polish(f, np.asarray(r, dtype=complex))
        out.extend(np.repeat(r, mult))
    return np.array(out, dtype=complex)


def _snap_real(roots: np.ndarray) -> np.ndarray:
    roots = roots.copy()
    tiny = np.abs(roots.imag) <= 1e-14 * np.maximum(1.0, np.abs(roots.real))
    roots[tiny] = roots[tiny].real
    return roots


def _certify(p: IntPolynomial, roots: np.ndarray, tol: float) -> np.ndarray:
    if _clustered(roots):
        roots = _roots_by_factor(p)
    else:
        roots = _polish(p, roots)
    if len(roots) != p.degree:
        raise ConvergenceError(f"found {len(roots)} roots for degree {p.degree}")
    roots = _snap_real(roots)
    res = _residuals(p, roots)
    if np.any(res > tol):
        # companion spectrum as a second opinion
        alt = _polish(p, np.roots(np.array(p.descending(), dtype=float)).astype(complex))
        if _clustered(alt):
            alt = _roots_by_factor(p)
        alt = _snap_real(alt)
        if np.all(_residuals(p, alt) <= tol):
            return alt
        raise ConvergenceError(f"roots of {p} not certified to {tol}")
    return roots


def complex_roots(p: IntPolynomial, tol: float = ROOT_TOL) -> list[complex]:
    """All complex roots with multiplicity, sorted by (re, im).

    >>> [round(abs(r), 6) for r in complex_roots(IntPolynomial.from_descending([1, 0, 1]))]
    [1.0, 1.0]
    """
    if p.degree < 1:
        return []
    if p.degree > MAX_DEGREE:
        raise DomainError(f"degree {p.degree} exceeds {MAX_DEGREE}")
    z, ok = _aberth(np.array([p.descending()], dtype=float))
    roots = _certify(p, z[0] if ok[0] else np.roots(np.array(p.descending(), dtype=float)).astype(complex), tol)
    return sorted((complex(r) for r in roots), key=lambda r: (r.real, r.imag))


def _batch_roots(members: list[Member], tol: float) -> list[np.ndarray]:
    """Roots for a batch of equal-degree polynomials."""
    coeffs = np.array([m.poly.descending() for m in members], dtype=float)
    z, ok = _aberth(coeffs)
    out = []
    for i, m in enumerate(members):
        start = z[i] if ok[i] else np.roots(coeffs[i]).astype(complex)
        r = _certify(m.poly, start, tol)
        out.append(r[np.lexsort((r.imag, r.real))])
    return out


@dataclass(frozen=True)
class CloudPoint:
    re: float
    im: float
    degree: int
    poly_id: str
    set: str


@dataclass
class RootCloud:
    tag: str
    bound: int
    points: list[CloudPoint]
    members: list[Member]

    def roots_of_degree(self, d: int) -> np.ndarray:
        return np.array([complex(p.re, p.im) for p in self.points if p.degree == d])


def root_cloud(set_name: str, bound: int, tol: float = ROOT_TOL,
               extended: bool = False, batch: int = 4096) -> RootCloud:
    tag = _normalize_set(set_name)
    members = [m for m in enumerate_polynomials(tag, bound, extended) if m.poly.degree >= 1]
    points = []
    i = 0
    while i < len(members):
        d = members[i].poly.degree
        j = i
        while j < len(members) and members[j].poly.degree == d and j - i < batch:
            j += 1
        for m, roots in zip(members[i:j], _batch_roots(members[i:j], tol)):
            points.extend(CloudPoint(float(r.real), float(r.imag), d, m.poly_id, tag)
                          for r in roots)
        i = j
    return RootCloud(tag, bound, points, members)


def m2_growth(member: Member) -> float:
    """Largest real root in [1, 2] of an M2 polynomial (1 if there is none)."""
    p = member.poly
    if p.degree < 1:
        return 1.0
    try:
        return largest_real_root(p, 1.0, 2.0)
    except DomainError:
        return 1.0
