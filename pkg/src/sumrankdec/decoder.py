"""Support-recovery decoding of high-order interleaved sum-rank-metric codes.

The decoder needs no structural knowledge of the constituent code.  It
recovers the error support from the syndrome matrix alone and then solves a
linear system for the error values (column-erasure decoding):

1. S = H @ Y^T collapses the received matrix to syndromes.
2. Row-reduce S with a tracked transform P; the rows of P @ H aligned with
   the zero rows of the reduced S annihilate the error.
3. Per block, the right kernel of the expanded annihilator equals the GF(q)
   row space of the error block, yielding a block-diagonal support basis B.
4. Solve (H @ B^T) A^T = S, giving E = A @ B and C = Y - E.

Recovery is guaranteed when the error weight t is at most d - 2, the
interleaving order satisfies s >= t, and the error matrix has full
GF(q^m)-rank t.  Outside those hypotheses the decoder raises a typed failure
or returns verified codewords; it never silently returns a non-codeword.

The total weight t is inferred as the rank of S (exact under the full-rank
condition), so callers never supply it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .code import InterleavedCode, syndrome
from .gf import FieldTower
from .linalg import (
    Matrix,
    block_diag,
    matrix_to_dict,
    ref_with_transform,
    right_kernel,
    solve_unique,
)
from .sumrank import LengthPartition, sum_rank_weight

__all__ = [
    "SupportRecovery",
    "DecodingReport",
    "compute_hsub",
    "recover_block_supports",
    "erasure_decode",
    "decode",
    "DecodingFailure",
    "SupportSpaceEmpty",
    "SupportMismatch",
    "ResidualCheckFailed",
]


class DecodingFailure(Exception):
    """Base class for typed decoding failures."""


class SupportSpaceEmpty(DecodingFailure):
    """rank(S) = n - k: the syndrome leaves no annihilator rows to work with."""


class SupportMismatch(DecodingFailure):
    """Per-block kernel dimensions do not add up to rank(S)."""


class ResidualCheckFailed(DecodingFailure):
    """The decoded candidate failed post-decoding verification."""


@dataclass(frozen=True)
class SupportRecovery:
    """Result of the support-recovery stage.

    h_sub rows annihilate the error; per_block_kernels[i] is the canonical
    kernel basis of the i-th expanded block of h_sub (the recovered support
    basis of error block i) and per_block_t its row count.
    """

    h_sub: Matrix
    t_hat: int
    per_block_kernels: tuple[Matrix, ...]
    per_block_t: tuple[int, ...]


@dataclass(frozen=True)
class DecodingReport:
    """Successful decoding outcome with diagnostics."""

    C_hat: Matrix
    E_hat: Matrix
    A_hat: Matrix
    B_hat: Matrix
    t_hat: int
    per_block_t: tuple[int, ...]
    residual_ok: bool
    weight_ok: bool

    def to_dict(self, tower: FieldTower) -> dict:
        return {
            "status": "success",
            "t_hat": self.t_hat,
            "per_block_t": list(self.per_block_t),
            "residual_ok": self.residual_ok,
            "weight_ok": self.weight_ok,
            "C_hat": matrix_to_dict(self.C_hat, tower),
            "E_hat": matrix_to_dict(self.E_hat, tower),
            "A_hat": matrix_to_dict(self.A_hat, tower),
            "B_hat": matrix_to_dict(self.B_hat, tower),
        }


def compute_hsub(H: Matrix, S: Matrix) -> tuple[Matrix, int]:
    """Annihilator rows of P @ H aligned with the zero rows of the reduced S.

    Returns (h_sub, t_hat) with t_hat = rank(S).  Raises SupportSpaceEmpty
    when rank(S) = n - k, i.e. when no zero syndrome rows remain.
    """
    res = ref_with_transform(S)
    t_hat = res.rank
    if t_hat >= H.rows:
        raise SupportSpaceEmpty(
            f"syndrome rank {t_hat} equals the redundancy {H.rows}; "
            "error too heavy for support recovery"
        )
    ph = res.P @ H
    return ph[t_hat:, :], t_hat


def recover_block_supports(
    tower: FieldTower, h_sub: Matrix, partition: LengthPartition, t_hat: int
) -> SupportRecovery:
    """Per-block kernels of the expanded annihilator matrix.

    Under the decoding hypotheses the i-th kernel spans the GF(q) row space
    of error block i.  Raises SupportMismatch when the recovered per-block
    weights do not sum to t_hat.
    """
    kernels = []
    for blk in partition.blocks(h_sub):
        kernels.append(right_kernel(tower.ext_matrix(blk)))
    per_block_t = tuple(k.rows for k in kernels)
    if sum(per_block_t) != t_hat:
        raise SupportMismatch(
            f"recovered block weights {per_block_t} sum to {sum(per_block_t)}, "
            f"expected {t_hat}; full-rank condition likely violated"
        )
    return SupportRecovery(h_sub, t_hat, tuple(kernels), per_block_t)


def erasure_decode(H: Matrix, B: Matrix, S: Matrix) -> Matrix:
    """Solve (H @ B^T) A^T = S for A, given the support basis B over GF(q).

    Unique when the true weight is below the minimum distance; raises
    NonUniqueSolution or Inconsistent (from the solver) otherwise.
    """
    if B.rows == 0:
        return Matrix.zeros(H.field, S.cols, 0)
    bt = Matrix(H.field, B.array.T, _checked=True)
    At = solve_unique(H @ bt, S)
    return At.T


def decode(icode: InterleavedCode, Y: Matrix) -> DecodingReport:
    """Recover the transmitted codeword matrix from Y = C + E.

    Succeeds whenever wt(E) = t <= d - 2, s >= t and E has GF(q^m)-rank t.
    Every returned report has verified residual and weight; all failure
    modes raise a DecodingFailure subclass or a solver error.
    """
    code = icode.constituent
    tower, partition = code.tower, code.partition
    if Y.field != tower.ext_field:
        raise ValueError("received matrix is not over the code's field")
    if Y.shape != (icode.s, code.n):
        raise ValueError(f"received matrix has shape {Y.shape}, expected {(icode.s, code.n)}")

    S = syndrome(code.H, Y)
    h_sub, t_hat = compute_hsub(code.H, S)
    support = recover_block_supports(tower, h_sub, partition, t_hat)
    B = block_diag(support.per_block_kernels)
    A = erasure_decode(code.H, B, S)
    E_hat = A @ tower.lift(B)
    C_hat = Y - E_hat

    residual_ok = syndrome(code.H, C_hat).is_zero
    weight_ok = sum_rank_weight(tower, E_hat, partition) == t_hat
    if not residual_ok:
        raise ResidualCheckFailed("decoded candidate is not a codeword stack")
    if not weight_ok:
        raise ResidualCheckFailed("recovered error weight differs from the syndrome rank")
    return DecodingReport(
        C_hat=C_hat,
        E_hat=E_hat,
        A_hat=A,
        B_hat=B,
        t_hat=t_hat,
        per_block_t=support.per_block_t,
        residual_ok=residual_ok,
        weight_ok=weight_ok,
    )
