"""Linear constituent codes given by parity-check matrices, and interleaving.

A code is defined by a full-row-rank parity-check matrix H over GF(q^m); the
generator matrix is derived on demand as the canonical right-kernel basis.
The minimum sum-rank distance oracle enumerates the full message space and is
intended for test-scale codes only (guarded by a codeword budget).
"""

from __future__ import annotations

import numpy as np

from .gf import FieldTower
from .linalg import Matrix, rank, right_kernel, matrix_from_dict, matrix_to_dict
from .sumrank import LengthPartition, sum_rank_weight

__all__ = [
    "LinearCode",
    "InterleavedCode",
    "syndrome",
    "encode",
    "generator_from_parity",
    "min_sum_rank_distance",
    "random_code",
    "BudgetExceeded",
]


class BudgetExceeded(RuntimeError):
    """The brute-force enumeration would exceed the configured budget."""


def syndrome(H: Matrix, Y: Matrix) -> Matrix:
    """S = H @ Y^T; zero exactly when the rows of Y are codewords."""
    if Y.cols != H.cols:
        raise ValueError(f"received word has {Y.cols} columns, code length is {H.cols}")
    return H @ Y.T


def encode(G: Matrix, M: Matrix) -> Matrix:
    """Map message rows through the generator matrix."""
    if G is None:
        raise ValueError("no generator matrix available")
    if M.cols != G.rows:
        raise ValueError(f"messages have {M.cols} symbols, code dimension is {G.rows}")
    return M @ G


def generator_from_parity(H: Matrix) -> Matrix:
    """Canonical generator matrix: reduced basis of the right kernel of H."""
    return right_kernel(H)


class LinearCode:
    """A linear sum-rank-metric code over a field tower."""

    def __init__(
        self,
        tower: FieldTower,
        partition: LengthPartition,
        H: Matrix,
        G: Matrix | None = None,
        d: int | None = None,
    ):
        if H.field != tower.ext_field:
            raise ValueError("H is not over the tower's extension field")
        if H.cols != partition.n:
            raise ValueError(f"H has {H.cols} columns, partition length is {partition.n}")
        if rank(H) != H.rows:
            raise ValueError("parity-check matrix must have full row rank")
        self.tower = tower
        self.partition = partition
        self.H = H
        self.n = H.cols
        self.k = H.cols - H.rows
        self.d = d
        if G is not None:
            if G.shape != (self.k, self.n) or rank(G) != self.k:
                raise ValueError("G must be a full-rank k x n matrix")
            if not (G @ H.T).is_zero:
                raise ValueError("G is not orthogonal to H")
        self._G = G

    @property
    def generator(self) -> Matrix:
        if self._G is None:
            self._G = generator_from_parity(self.H)
        return self._G

    def syndrome(self, Y: Matrix) -> Matrix:
        return syndrome(self.H, Y)

    def contains_rows(self, M: Matrix) -> bool:
        return syndrome(self.H, M).is_zero

    def interleave(self, s: int) -> "InterleavedCode":
        return InterleavedCode(self, s)

    def to_dict(self) -> dict:
        d = {
            "field": self.tower.to_dict(),
            "partition": self.partition.to_dict(),
            "k": self.k,
            "H": matrix_to_dict(self.H, self.tower),
        }
        if self._G is not None:
            d["G"] = matrix_to_dict(self._G, self.tower)
        if self.d is not None:
            d["d"] = self.d
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "LinearCode":
        tower = FieldTower.from_dict(d["field"])
        partition = LengthPartition.from_dict(d["partition"])
        H = matrix_from_dict(d["H"], tower)
        G = matrix_from_dict(d["G"], tower) if "G" in d else None
        code = cls(tower, partition, H, G=G, d=d.get("d"))
        if "k" in d and int(d["k"]) != code.k:
            raise ValueError(f"declared dimension {d['k']} does not match H (k = {code.k})")
        return code

    def __repr__(self):
        return f"LinearCode(n={self.n}, k={self.k}, blocks={self.partition.parts}, {self.tower!r})"


class InterleavedCode:
    """Vertical stack of s codewords of one constituent code."""

    def __init__(self, constituent: LinearCode, s: int):
        if s < 1:
            raise ValueError("interleaving order must be >= 1")
        self.constituent = constituent
        self.s = s

    @property
    def tower(self) -> FieldTower:
        return self.constituent.tower

    @property
    def partition(self) -> LengthPartition:
        return self.constituent.partition

    def contains(self, C: Matrix) -> bool:
        if C.shape != (self.s, self.constituent.n):
            return False
        return self.constituent.contains_rows(C)

    def encode(self, M: Matrix) -> Matrix:
        if M.rows != self.s:
            raise ValueError(f"expected {self.s} message rows, got {M.rows}")
        return encode(self.constituent.generator, M)

    def __repr__(self):
        return f"InterleavedCode(s={self.s}, {self.constituent!r})"


def min_sum_rank_distance(code: LinearCode, budget: int = 10**6) -> int:
    """Exact minimum distance by enumerating all nonzero codewords."""
    if code.k < 1:
        raise ValueError("minimum distance needs k >= 1")
    order = code.tower.order
    count = order**code.k
    if count > budget:
        raise BudgetExceeded(f"{count} codewords exceed the budget of {budget}")
    G = code.generator
    tower, part = code.tower, code.partition
    best = None
    chunk = 4096
    for start in range(1, count, chunk):
        idx = np.arange(start, min(start + chunk, count), dtype=np.int64)
        msgs = np.zeros((idx.size, code.k), dtype=np.int64)
        w = idx.copy()
        for j in range(code.k):
            msgs[:, j] = w % order
            w //= order
        cws = tower.ext_field.matmul(msgs, G.array)
        for row in cws:
            wt = sum_rank_weight(tower, Matrix(tower.ext_field, row[None, :], _checked=True), part)
            if best is None or wt < best:
                best = wt
                if best == 1:
                    return 1
    return best


def random_code(
    tower: FieldTower,
    partition: LengthPartition,
    k: int,
    seed=None,
    rng: np.random.Generator | None = None,
) -> LinearCode:
    """Uniformly random code: redraw H until it has full row rank."""
    n = partition.n
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k = {k}, n = {n}")
    if rng is None:
        rng = np.random.default_rng(seed)
    while True:
        H = Matrix.random(tower.ext_field, n - k, n, rng)
        if rank(H) == n - k:
            return LinearCode(tower, partition, H)
