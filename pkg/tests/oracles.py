"""Independent reference implementations used to check the package.

Nothing here imports the package; every routine is written directly from
the defining property (brute-force orbits, long division, direct
iteration of x^2 + c, dense linear algebra).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import sympy

HALF = Fraction(1, 2)


def doubling_orbit_shape(a: Fraction) -> tuple[int, int]:
    """(preperiod, period) by iterating and remembering first visits."""
    seen = {}
    x, i = a % 1, 0
    while x not in seen:
        seen[x] = i
        x = (2 * x) % 1
        i += 1
    return seen[x], i - seen[x]


def long_division_bits(a: Fraction) -> tuple[str, str]:
    """Binary expansion by long division; dyadics lose their zero tail."""
    seen, bits = {}, []
    r = a % 1
    while r not in seen:
        seen[r] = len(bits)
        r *= 2
        bits.append("1" if r >= 1 else "0")
        r %= 1
    start = seen[r]
    pre, per = "".join(bits[:start]), "".join(bits[start:])
    if per == "0":
        return pre.rstrip("0"), ""
    return pre, per


def bits_by_series(pre: str, per: str, terms: int = 400) -> Fraction:
    """Partial sums of the binary series plus the exact periodic tail."""
    total = sum(Fraction(int(b), 2 ** (i + 1)) for i, b in enumerate(pre))
    if per:
        block = sum(Fraction(int(b), 2 ** (i + 1)) for i, b in enumerate(per))
        scale = Fraction(1, 2 ** len(pre))
        ratio = Fraction(1, 2 ** len(per))
        total += scale * block / (1 - ratio)
    return total


def circle_norm(x: Fraction) -> Fraction:
    x %= 1
    return min(x, 1 - x)


def is_real_by_orbit(theta: Fraction) -> bool:
    """theta <= 1/2 is a real angle iff no iterate enters (theta, 1 - theta)."""
    theta %= 1
    if theta > HALF:
        theta = 1 - theta
    x = theta
    for _ in range(theta.denominator + 2):
        if theta < x < 1 - theta:
            return False
        x = (2 * x) % 1
    return True


def symbol_of(phi: Fraction, theta: Fraction) -> str:
    # ONE on the open half circle (theta/2, theta/2 + 1/2); STAR on its ends
    d = (phi - theta / 2) % 1
    if d == 0 or d == HALF:
        return "*"
    return "1" if d < HALF else "0"


def kneading_word(theta: Fraction, n: int) -> str:
    out, x = [], theta
    for _ in range(n):
        out.append(symbol_of(x, theta))
        x = (2 * x) % 1
    return "".join(out)


def survivors_brute(theta: Fraction, depth: int) -> int:
    """Midpoints of depth-level dyadic intervals with ||2^n phi|| <= ||theta||
    for 0 <= n < depth."""
    bound = circle_norm(theta)
    count = 0
    for i in range(2 ** depth):
        phi = Fraction(2 * i + 1, 2 ** (depth + 1))
        ok = True
        for _ in range(depth):
            if circle_norm(phi) > bound:
                ok = False
                break
            phi = (2 * phi) % 1
        count += ok
    return count


# --- real quadratic maps -------------------------------------------------

def _crit_orbit(c: float, n: int) -> float:
    x = 0.0
    for _ in range(n):
        x = x * x + c
    return x


def real_centers(n: int, grid: int = 400_000) -> list[float]:
    """Real c in [-2, 0) whose critical point has exact period n."""
    cs = np.linspace(-2.0, -1e-9, grid)
    vals = np.zeros_like(cs)
    for _ in range(n):
        vals = vals * vals + cs
    out = []
    for i in np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0):
        a, b = cs[i], cs[i + 1]
        fa = _crit_orbit(a, n)
        for _ in range(200):
            m = 0.5 * (a + b)
            fm = _crit_orbit(m, n)
            if (fm < 0) == (fa < 0):
                a, fa = m, fm
            else:
                b = m
        c = 0.5 * (a + b)
        if all(abs(_crit_orbit(c, m)) > 1e-6 for m in range(1, n)):
            out.append(c)
    return out


def real_center_word(c: float, n: int) -> str:
    """Kneading symbols 1..n-1 of the critical orbit; ONE on the side of c."""
    x, word = c, []
    for _ in range(n - 1):
        word.append("1" if x < 0 else "0")
        x = x * x + c
    return "".join(word)


# --- matrices ------------------------------------------------------------

def pair_matrix_direct(theta: Fraction) -> np.ndarray:
    """The pair matrix written straight from its rule.  Column
    {j,k} maps to {j+1,k+1} unless the two angles are strictly separated
    by the diameter through theta/2, in which case it maps to
    {1,j+1} + {1,k+1}."""
    post = []
    x = theta
    while x not in post:
        post.append(x)
        x = (2 * x) % 1
    first = post.index(x)
    size = len(post)

    def succ(j):  # 0-based
        return j + 1 if j + 1 < size else first

    pairs = [(j, k) for j in range(size) for k in range(j + 1, size)]
    where = {p: i for i, p in enumerate(pairs)}
    A = np.zeros((len(pairs), len(pairs)), dtype=np.int64)

    def add(col, a, b):
        if a != b:
            A[where[(min(a, b), max(a, b))], col] += 1

    for col, (j, k) in enumerate(pairs):
        sj, sk = symbol_of(post[j], theta), symbol_of(post[k], theta)
        if "*" not in (sj, sk) and sj != sk:
            add(col, 0, succ(j))
            add(col, 0, succ(k))
        else:
            add(col, succ(j), succ(k))
    return A


def spectral_radius_dense(A) -> float:
    A = np.asarray(A, dtype=float)
    if A.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(A))))


def charpoly_desc(A) -> list[int]:
    """Integer characteristic polynomial det(xI - A), descending."""
    M = sympy.Matrix(np.asarray(A, dtype=np.int64).tolist())
    return [int(c) for c in M.charpoly().all_coeffs()]


# --- kneading determinant ------------------------------------------------

def kneading_root_closed_form(signs_pre: list[int], signs_per: list[int],
                              antiperiodic: bool) -> float | None:
    """Smallest root in (0, 1) of D(t) = A(t) + t^k B(t)/(1 -+ t^p).

    ``signs_pre`` holds s_0..s_{k-1}, ``signs_per`` holds s_k..s_{k+p-1};
    the tail repeats with sign -1 per block when ``antiperiodic``.
    The numerator A(t)(1 -+ t^p) + t^k B(t) is solved with numpy.roots.
    """
    k, p = len(signs_pre), len(signs_per)
    num = np.zeros(k + p + 1)
    num[:k] += signs_pre
    den_sign = 1 if antiperiodic else -1  # 1 + t^p or 1 - t^p
    num[p:p + k] += den_sign * np.array(signs_pre, dtype=float)
    num[k:k + p] += signs_per
    roots = np.roots(num[::-1])
    real = [r.real for r in roots if abs(r.imag) < 1e-9 and 1e-9 < r.real < 1 - 1e-9]
    # discard roots that cancel against the denominator (t^p = -+1 has none in (0,1))
    return min(real) if real else None


def kneading_signs_direct(word: str, n: int) -> list[int]:
    out, s = [1], 1
    for sym in word[:n]:
        if sym == "1":
            s = -s
        out.append(s)
    return out
