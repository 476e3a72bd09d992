"""Decoding in the skew metric via a diagonal isometry to the sum-rank metric.

The skew metric is isometric to the sum-rank metric through right
multiplication by an invertible diagonal matrix D: the skew weight of X is
the sum-rank weight of X @ D.  D itself is an input here (its construction
depends on code parameters this module does not validate; that is the
caller's responsibility), so skew-side decoding is transform, decode,
transform back.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .code import InterleavedCode
from .decoder import DecodingReport, decode
from .gf import FieldTower
from .linalg import Matrix
from .sumrank import LengthPartition, sum_rank_weight

__all__ = ["SkewIsometry", "SkewCodeDescriptor", "skew_weight", "skew_code_from_sumrank", "skew_decode"]


@dataclass(frozen=True)
class SkewIsometry:
    """Invertible diagonal transform between the skew and sum-rank metrics."""

    tower: FieldTower
    partition: LengthPartition
    diagonal: tuple[int, ...]

    def __post_init__(self):
        if len(self.diagonal) != self.partition.n:
            raise ValueError(f"diagonal has {len(self.diagonal)} entries, expected {self.partition.n}")
        if any(not 0 < d < self.tower.order for d in self.diagonal):
            raise ValueError("diagonal entries must be nonzero field elements")

    @property
    def D(self) -> Matrix:
        return Matrix(self.tower.ext_field, np.diag(np.asarray(self.diagonal, dtype=np.int64)), _checked=True)

    @property
    def D_inv(self) -> Matrix:
        inv = [self.tower.inv(d) for d in self.diagonal]
        return Matrix(self.tower.ext_field, np.diag(np.asarray(inv, dtype=np.int64)), _checked=True)

    def apply(self, M: Matrix) -> Matrix:
        """M @ D as a column scaling."""
        f = self.tower.ext_field
        if M.field != f:
            raise ValueError("matrix is not over the isometry's field")
        diag = np.asarray(self.diagonal, dtype=np.int64)
        return Matrix(f, f.mul(M.array, diag[None, :]), _checked=True)

    def apply_inv(self, M: Matrix) -> Matrix:
        f = self.tower.ext_field
        if M.field != f:
            raise ValueError("matrix is not over the isometry's field")
        diag = np.asarray([self.tower.inv(d) for d in self.diagonal], dtype=np.int64)
        return Matrix(f, f.mul(M.array, diag[None, :]), _checked=True)

    @classmethod
    def random(cls, tower: FieldTower, partition: LengthPartition, rng: np.random.Generator) -> "SkewIsometry":
        diag = tuple(int(x) for x in rng.integers(1, tower.order, size=partition.n))
        return cls(tower, partition, diag)

    @classmethod
    def identity(cls, tower: FieldTower, partition: LengthPartition) -> "SkewIsometry":
        return cls(tower, partition, (1,) * partition.n)

    def to_dict(self) -> dict:
        return {"D_diag": list(self.diagonal)}

    @classmethod
    def from_dict(cls, d: dict, tower: FieldTower, partition: LengthPartition) -> "SkewIsometry":
        return cls(tower, partition, tuple(int(x) for x in d["D_diag"]))


def skew_weight(tower: FieldTower, iso: SkewIsometry, X: Matrix) -> int:
    """Skew weight computed through the defining isometry identity."""
    return sum_rank_weight(tower, iso.apply(X), iso.partition)


@dataclass(frozen=True)
class SkewCodeDescriptor:
    """Skew-side view of an interleaved sum-rank-metric code.

    Codewords are C @ D^{-1} for sum-rank codewords C, so the skew-side
    parity-check matrix is H @ D and the minimum skew distance equals the
    sum-rank minimum distance of the source code.
    """

    H_skew: Matrix
    s: int
    k: int
    d: int | None

    def contains(self, M: Matrix) -> bool:
        if M.shape != (self.s, self.H_skew.cols):
            return False
        return (self.H_skew @ M.T).is_zero


def skew_code_from_sumrank(icode: InterleavedCode, iso: SkewIsometry) -> SkewCodeDescriptor:
    code = icode.constituent
    if iso.partition != code.partition or iso.tower != code.tower:
        raise ValueError("isometry does not match the code's tower/partition")
    return SkewCodeDescriptor(
        H_skew=code.H @ iso.D,
        s=icode.s,
        k=code.k,
        d=code.d,
    )


def skew_decode(icode: InterleavedCode, iso: SkewIsometry, Y: Matrix) -> DecodingReport:
    """Decode a skew-side received matrix: transform, decode, transform back.

    Equals decode(icode, Y @ D) with C_hat and E_hat mapped back through
    D^{-1}; the support-side fields (A, B, weights) stay on the sum-rank
    side where they are defined.
    """
    report = decode(icode, iso.apply(Y))
    return DecodingReport(
        C_hat=iso.apply_inv(report.C_hat),
        E_hat=iso.apply_inv(report.E_hat),
        A_hat=report.A_hat,
        B_hat=report.B_hat,
        t_hat=report.t_hat,
        per_block_t=report.per_block_t,
        residual_ok=report.residual_ok,
        weight_ok=report.weight_ok,
    )
