"""Transition matrix on unordered pairs of postcritical angles.

Postcritical angles are a_j = 2^(j-1) theta for j = 1..k+p.  A pair {j, k}
whose angles lie on the same side of the diameter {theta/2, (theta+1)/2}
maps to {j+1, k+1}; a separated pair splits into {1, j+1} + {1, k+1}.
Degenerate images {i, i} are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .angles import orbit, orbit_structure, to_angle
from .errors import DomainError
from .spectral import SparseInt, dominant_block
from .symbolic import ONE, STAR, ZERO, symbol


def postcritical_angles(theta) -> list[Fraction]:
    theta = to_angle(theta)
    if theta == 0:
        raise DomainError("theta = 0 has no postcritical pairs")
    orb = orbit_structure(theta)
    return orbit(theta, orb.preperiod + orb.period)


def is_separated(phi, psi, theta) -> bool:
    """Strictly opposite sides of the diameter; a boundary point is never separated."""
    phi, psi, theta = to_angle(phi), to_angle(psi), to_angle(theta)
    s, t = symbol(phi, theta), symbol(psi, theta)
    return STAR not in (s, t) and s != t


@dataclass(frozen=True)
class PairBasis:
    theta: Fraction
    preperiod: int
    period: int
    postcritical: tuple[Fraction, ...]

    @property
    def size(self) -> int:
        m = len(self.postcritical)
        return m * (m - 1) // 2

    @property
    def pairs(self) -> list[tuple[int, int]]:
        """Unordered index pairs (j, k), 1-based, j < k, in lexicographic order."""
        m = len(self.postcritical)
        return [(j, k) for j in range(1, m + 1) for k in range(j + 1, m + 1)]

    def succ(self, j: int) -> int:
        m = len(self.postcritical)
        return self.preperiod + 1 if j == m else j + 1

    def index(self, j, k):
        """Position of pair {j, k} in ``pairs`` (vectorized over arrays)."""
        m = len(self.postcritical)
        j, k = np.minimum(j, k), np.maximum(j, k)
        return (j - 1) * (2 * m - j) // 2 + (k - j - 1)


class PairMatrix:
    """Sparse column-stored pair transition matrix.

    Entry (target, source) counts how often the arc of ``source`` covers
    the arc of ``target``.
    """

    def __init__(self, basis: PairBasis, rows, cols, vals):
        self.basis = basis
        self._sparse = SparseInt(basis.size, rows, cols, vals)

    @property
    def theta(self) -> Fraction:
        return self.basis.theta

    @property
    def dim(self) -> int:
        return self.basis.size

    def sparse(self) -> SparseInt:
        return self._sparse

    def dense(self) -> np.ndarray:
        return self._sparse.dense()

    def column_sums(self) -> np.ndarray:
        s = self._sparse
        return np.bincount(s.cols, weights=s.vals, minlength=s.n).astype(np.int64)

    @property
    def columns(self) -> list[list[tuple[tuple[int, int], int]]]:
        """Per source pair, the list of (target pair, multiplicity)."""
        pairs = self.basis.pairs
        out = [[] for _ in range(self.dim)]
        s = self._sparse
        for r, c, v in zip(s.rows.tolist(), s.cols.tolist(), s.vals.tolist()):
            out[c].append((pairs[r], int(v)))
        for col in out:
            col.sort()
        return out


def _sides(points, theta) -> np.ndarray:
    code = {ONE: 1, ZERO: -1, STAR: 0}
    return np.array([code[symbol(a, theta)] for a in points], dtype=np.int8)


def build_pair_matrix(theta) -> PairMatrix:
    theta = to_angle(theta)
    pts = postcritical_angles(theta)
    orb = orbit_structure(theta)
    basis = PairBasis(theta, orb.preperiod, orb.period, tuple(pts))
    m = len(pts)
    J, K = np.triu_indices(m, k=1)
    J, K = J + 1, K + 1
    src = basis.index(J, K)
    succ = np.arange(2, m + 2)
    succ[-1] = orb.preperiod + 1
    sJ, sK = succ[J - 1], succ[K - 1]
    side = _sides(pts, theta)
    sep = (side[J - 1] * side[K - 1]) < 0

    rows, cols = [], []
    # unseparated: {j, k} -> {succ j, succ k}
    keep = ~sep & (sJ != sK)
    rows.append(basis.index(sJ[keep], sK[keep]))
    cols.append(src[keep])
    # separated: {1, succ j} + {1, succ k}
    for s in (sJ, sK):
        keep = sep & (s != 1)
        rows.append(basis.index(np.ones(keep.sum(), dtype=np.int64), s[keep]))
        cols.append(src[keep])
    rows = np.concatenate(rows).astype(np.int64)
    cols = np.concatenate(cols).astype(np.int64)
    # merge duplicate targets into multiplicities
    key = rows * basis.size + cols
    key, counts = np.unique(key, return_counts=True)
    return PairMatrix(basis, key // basis.size, key % basis.size,
                      counts.astype(np.float64))


@dataclass(frozen=True)
class DominantComponent:
    pairs: tuple[tuple[int, int], ...]
    primitive: bool
    index: int
    lam: float


def dominant_component(M: PairMatrix, tol: float = 1e-10) -> DominantComponent:
    if M.dim == 0:
        raise DomainError("empty pair matrix")
    comp = dominant_block(M.sparse(), tol)
    pairs = M.basis.pairs
    return DominantComponent(tuple(pairs[i] for i in sorted(comp.vertices.tolist())),
                             comp.index == 1, comp.index, comp.lam)
