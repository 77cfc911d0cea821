"""Spectral radius of sparse nonnegative integer matrices.

The spectral radius is the maximum over strongly connected components.
Each irreducible block is handled by power iteration on its cyclic
average, so imprimitive blocks converge geometrically as well, and the
answer is bracketed by Collatz-Wielandt bounds.  Small blocks are then
certified against their exact characteristic polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from .errors import ConvergenceError, DomainError
from .polynomial import IntPolynomial

DEFAULT_TOL = 1e-10
ROOT_TOL = 1e-12
MAX_ITER = 100_000
CHARPOLY_MAX_DIM = 64

RATIO_ITERATION = "ratio-iteration"
ROOT_BOUND = "root-bound"
CHAR_POLY = "char-poly"


@dataclass(frozen=True)
class GrowthResult:
    lam: float
    method: str
    iterations: int
    residual: float

    @property
    def entropy(self) -> float:
        return math.log(self.lam) if self.lam > 0 else float("-inf")


@dataclass(frozen=True)
class SparseInt:
    """COO triplets of a square nonnegative integer matrix (row = target)."""

    n: int
    rows: np.ndarray
    cols: np.ndarray
    vals: np.ndarray

    def dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=np.int64)
        np.add.at(out, (self.rows, self.cols), self.vals)
        return out

    def submatrix(self, vertices: np.ndarray) -> SparseInt:
        index = -np.ones(self.n, dtype=np.int64)
        index[vertices] = np.arange(len(vertices))
        keep = (index[self.rows] >= 0) & (index[self.cols] >= 0)
        return SparseInt(len(vertices), index[self.rows[keep]],
                         index[self.cols[keep]], self.vals[keep])

    def matvec(self, v: np.ndarray) -> np.ndarray:
        return np.bincount(self.rows, weights=self.vals * v[self.cols],
                           minlength=self.n)


def as_sparse(M) -> SparseInt:
    if isinstance(M, SparseInt):
        return M
    if hasattr(M, "sparse"):
        return M.sparse()
    a = np.asarray(M)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("matrix must be square")
    if not np.issubdtype(a.dtype, np.integer):
        if not np.all(a == np.round(a)):
            raise DomainError("matrix entries must be integers")
        a = a.astype(np.int64)
    if np.any(a < 0):
        raise DomainError("matrix entries must be nonnegative")
    r, c = np.nonzero(a)
    return SparseInt(a.shape[0], r.astype(np.int64), c.astype(np.int64),
                     a[r, c].astype(np.float64))


def char_poly(M) -> IntPolynomial:
    """Exact det(xI - M) over the integers."""
    S = as_sparse(M)
    if S.n > CHARPOLY_MAX_DIM:
        raise DomainError(f"dimension {S.n} exceeds {CHARPOLY_MAX_DIM} for char_poly")
    if S.n == 0:
        return IntPolynomial([1])
    dense = S.dense().tolist()
    dm = DomainMatrix([[ZZ(int(x)) for x in row] for row in dense], (S.n, S.n), ZZ)
    return IntPolynomial.from_descending([int(c) for c in dm.charpoly()])


# --- isolated real roots -------------------------------------------------

def _bisect(P: IntPolynomial, lo: Fraction, hi: Fraction, s_lo: int, tol: float) -> Fraction:
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = P.sign_at(mid)
        if s == 0:
            return mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def _bracket_near(P: IntPolynomial, r: float, lo: Fraction, hi: Fraction):
    if lo <= Fraction(r) <= hi and P.sign_at(Fraction(r)) == 0:
        return Fraction(r), Fraction(r), 0
    delta = 1e-12 * max(1.0, abs(r))
    while delta < 1e-2:
        a = max(lo, Fraction(r - delta))
        b = min(hi, Fraction(r + delta))
        sa, sb = P.sign_at(a), P.sign_at(b)
        if sa == 0:
            return a, a, 0
        if sb == 0:
            return b, b, 0
        if sa != sb:
            return a, b, sa
        delta *= 16
    return None


def largest_real_root(P: IntPolynomial, lo: float, hi: float, tol: float = ROOT_TOL) -> float:
    """Largest real root of ``P`` in ``[lo, hi]``, certified by an exact sign
    change and refined by exact bisection.

    >>> largest_real_root(IntPolynomial.from_descending([1, 0, -1, -2]), 1, 2)
    1.5213797068045676
    """
    return float(largest_real_root_exact(P, lo, hi, tol))


def largest_real_root_exact(P: IntPolynomial, lo, hi, tol=ROOT_TOL) -> Fraction:
    """As :func:`largest_real_root`, returning the dyadic midpoint of the
    final bracket; ``tol`` may be far below double precision."""
    lo_q, hi_q = Fraction(lo), Fraction(hi)
    if lo_q > hi_q:
        raise DomainError("empty bracket")
    Q = P.squarefree_part
    if Q.degree < 1:
        raise DomainError(f"no root of {P} in [{lo}, {hi}]")
    candidates = []
    roots = np.roots(np.array(Q.descending(), dtype=float))
    scale = max(1.0, abs(hi), abs(lo))
    for r in roots:
        if abs(r.imag) <= 1e-6 * scale and lo - 1e-9 <= r.real <= hi + 1e-9:
            candidates.append(float(r.real))
    found = None
    for r in sorted(candidates, reverse=True):
        br = _bracket_near(Q, r, lo_q, hi_q)
        if br is not None:
            found = br
            break
    if found is None:
        found = _scan_down(Q, lo_q, hi_q)
    a, b, sa = found
    root = a if a == b else _bisect(Q, a, b, sa, tol)
    # nothing larger hiding between the root and hi (exact Sturm count)
    if b < hi_q and Q.to_sympy().count_roots(b, hi_q) > 0:
        a, b, sa = _scan_down(Q, b, hi_q)
        root = a if a == b else _bisect(Q, a, b, sa, tol)
    return root


def _scan_down(Q: IntPolynomial, lo: Fraction, hi: Fraction, steps: int = 2048):
    """First sign change of Q scanning from hi towards lo on a uniform grid."""
    prev_x, prev_s = hi, Q.sign_at(hi)
    if prev_s == 0:
        return hi, hi, 0
    for i in range(1, steps + 1):
        x = hi - (hi - lo) * Fraction(i, steps)
        s = Q.sign_at(x)
        if s == 0:
            return x, x, 0
        if s != prev_s:
            return x, prev_x, s
        prev_x, prev_s = x, s
    raise DomainError("no sign change and no certified root in bracket")


# --- power iteration ------------------------------------------------------

def _cycle_index(block: SparseInt) -> int:
    """gcd of cycle lengths of an irreducible digraph (edge col -> row)."""
    n = block.n
    if n == 1:
        return 1
    adj = [[] for _ in range(n)]
    for r, c in zip(block.rows.tolist(), block.cols.tolist()):
        adj[c].append(r)
    level = [-1] * n
    level[0] = 0
    queue = [0]
    for u in queue:
        for v in adj[u]:
            if level[v] < 0:
                level[v] = level[u] + 1
                queue.append(v)
    g = 0
    for u in range(n):
        for v in adj[u]:
            g = math.gcd(g, level[u] + 1 - level[v])
    return abs(g) or 1


def _is_cycle(block: SparseInt) -> bool:
    if len(block.vals) != block.n or not np.all(block.vals == 1):
        return False
    return (len(np.unique(block.rows)) == block.n
            and len(np.unique(block.cols)) == block.n)


@dataclass(frozen=True)
class BlockGrowth:
    lam: float
    lo: float
    hi: float
    iterations: int
    index: int


def block_growth(block: SparseInt, tol: float = DEFAULT_TOL,
                 max_iter: int = MAX_ITER) -> BlockGrowth:
    """Perron root of an irreducible block.

    Iterates v -> Mv from the all-ones vector; the eigenvector estimate is
    the cyclic average of ``index`` consecutive iterates, and the min/max of
    (Mx)_i / x_i bracket the root.
    """
    n = block.n
    if n == 1:
        w = float(block.vals.sum()) if len(block.vals) else 0.0
        return BlockGrowth(w, w, w, 0, 1)
    if _is_cycle(block):
        return BlockGrowth(1.0, 1.0, 1.0, 0, n)
    p = _cycle_index(block)
    v = np.ones(n) / n
    lam = 1.0
    lo, hi = 0.0, math.inf
    check_every = max(p, 8)
    it = 0
    log_sums = []
    while it < max_iter:
        for _ in range(check_every):
            w = block.matvec(v)
            s = w.sum()
            log_sums.append(math.log(s))
            v = w / s
            it += 1
        window = log_sums[-p:]
        lam = math.exp(sum(window) / p)
        # cyclic average is an eigenvector estimate for every index p
        x = np.zeros(n)
        u = v.copy()
        for j in range(p):
            x += u / lam ** j
            u = block.matvec(u)
        x /= x.sum()
        mx = block.matvec(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = mx / x
        if np.all(x > 0):
            lo, hi = float(ratios.min()), float(ratios.max())
            if hi - lo <= tol:
                return BlockGrowth((lo + hi) / 2, lo, hi, it, p)
        if len(log_sums) > 4 * check_every:
            del log_sums[: -2 * check_every]
    raise ConvergenceError(
        f"power iteration did not converge in {max_iter} steps",
        bracket=(lo, hi) if math.isfinite(hi) else None,
    )


@dataclass(frozen=True)
class Component:
    vertices: np.ndarray
    lam: float
    index: int
    lo: float
    hi: float
    iterations: int

    @property
    def primitive(self) -> bool:
        return self.index == 1


def _labels(S: SparseInt) -> tuple[int, np.ndarray]:
    graph = coo_matrix((np.ones(len(S.rows)), (S.cols, S.rows)), shape=(S.n, S.n)).tocsr()
    return connected_components(graph, directed=True, connection="strong")


def components(M) -> list[np.ndarray]:
    """Vertex sets of the strongly connected components."""
    ncomp, labels = _labels(as_sparse(M))
    order = np.argsort(labels, kind="stable")
    bounds = np.searchsorted(labels[order], np.arange(ncomp + 1))
    return [order[bounds[i]:bounds[i + 1]] for i in range(ncomp)]


def dominant_block(M, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> Component:
    """Strongly connected component realizing the spectral radius."""
    S = as_sparse(M)
    if S.n == 0:
        raise DomainError("empty matrix")
    ncomp, labels = _labels(S)
    sizes = np.bincount(labels, minlength=ncomp)
    # edges inside a component, grouped by component
    inner = labels[S.rows] == labels[S.cols]
    rows, cols, vals = S.rows[inner], S.cols[inner], S.vals[inner]
    lab = labels[rows]
    eorder = np.argsort(lab, kind="stable")
    rows, cols, vals, lab = rows[eorder], cols[eorder], vals[eorder], lab[eorder]
    ebounds = np.searchsorted(lab, np.arange(ncomp + 1))
    vorder = np.argsort(labels, kind="stable")
    vbounds = np.searchsorted(labels[vorder], np.arange(ncomp + 1))
    # max internal column sum bounds each block's root from above
    colsum = np.bincount(cols, weights=vals, minlength=S.n)
    bound = np.zeros(ncomp)
    np.maximum.at(bound, labels, colsum)

    local = np.empty(S.n, dtype=np.int64)
    best = None
    for c in np.argsort(-bound, kind="stable"):
        if best is not None and bound[c] <= best.lo:
            break
        verts = vorder[vbounds[c]:vbounds[c + 1]]
        if sizes[c] == 1:
            w = float(bound[c])
            cand = Component(verts, w, 1, w, w, 0)
        else:
            local[verts] = np.arange(len(verts))
            e = slice(ebounds[c], ebounds[c + 1])
            block = SparseInt(len(verts), local[rows[e]], local[cols[e]], vals[e])
            g = block_growth(block, tol, max_iter)
            cand = Component(verts, g.lam, g.index, g.lo, g.hi, g.iterations)
        if best is None or cand.lam > best.lam:
            best = cand
    return best


def growth_rate(M, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER,
                certify: bool = True) -> GrowthResult:
    """Spectral radius of a nonnegative integer matrix.

    >>> round(growth_rate([[0, 0, 2], [1, 0, 0], [0, 1, 1]]).lam, 6)
    1.695621
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    S = as_sparse(M)
    comp = dominant_block(S, tol, max_iter)
    lam, method = comp.lam, RATIO_ITERATION
    residual = comp.hi - comp.lo
    n_block = len(comp.vertices)
    trivial = comp.iterations == 0
    if certify and not trivial and n_block <= CHARPOLY_MAX_DIM:
        P = char_poly(S.submatrix(comp.vertices))
        width = max(comp.hi - comp.lo, tol) * 4
        lo = max(0.0, comp.lo - width)
        hi = comp.hi + width
        try:
            exact = largest_real_root(P, lo, hi, tol=min(ROOT_TOL, tol))
        except DomainError:
            exact = None
        if exact is not None:
            residual = abs(exact - lam)
            lam, method = exact, CHAR_POLY
    if not trivial and comp.index > 1 and method == RATIO_ITERATION:
        method = ROOT_BOUND if comp.hi - comp.lo > tol else RATIO_ITERATION
    return GrowthResult(lam, method, comp.iterations, residual)
