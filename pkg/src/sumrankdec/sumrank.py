"""Length partitions, sum-rank weights and supports, and error sampling.

A length partition n = n_1 + ... + n_l fixes the block structure of the
metric.  The weight of a matrix is the sum over blocks of the GF(q)-rank of
the block's basis expansion; supports are the corresponding GF(q) row
spaces, kept in canonical reduced-echelon form so they compare by equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gf import FieldTower
from .linalg import Matrix, block_diag, hstack, rank, row_space_basis, solve_unique

__all__ = [
    "LengthPartition",
    "ErrorModel",
    "sum_rank_weight",
    "rank_support",
    "sum_rank_support",
    "hamming_support",
    "sample_error",
    "decompose_error",
    "random_profile",
    "Infeasible",
    "SamplingFailure",
]


class Infeasible(ValueError):
    """The requested weight profile cannot be realised."""


class SamplingFailure(RuntimeError):
    """Rejection sampling exhausted its attempt budget."""


@dataclass(frozen=True)
class LengthPartition:
    """The vector (n_1, ..., n_l) of positive block lengths."""

    parts: tuple[int, ...]

    def __init__(self, parts: Sequence[int]):
        parts = tuple(int(x) for x in parts)
        if not parts or any(x < 1 for x in parts):
            raise ValueError("all block lengths must be >= 1")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def ell(self) -> int:
        return len(self.parts)

    @property
    def slices(self) -> list[slice]:
        out = []
        start = 0
        for ni in self.parts:
            out.append(slice(start, start + ni))
            start += ni
        return out

    def blocks(self, M: Matrix) -> list[Matrix]:
        """Column blocks of a matrix with n columns."""
        if M.cols != self.n:
            raise ValueError(f"matrix has {M.cols} columns, partition needs {self.n}")
        return [M[:, sl] for sl in self.slices]

    def to_dict(self) -> dict:
        return {"parts": list(self.parts)}

    @classmethod
    def from_dict(cls, d: dict) -> "LengthPartition":
        return cls(d["parts"])

    @classmethod
    def hamming(cls, n: int) -> "LengthPartition":
        return cls((1,) * n)

    @classmethod
    def full(cls, n: int) -> "LengthPartition":
        return cls((n,))


def sum_rank_weight(tower: FieldTower, M: Matrix, partition: LengthPartition) -> int:
    """Sum over blocks of the GF(q)-rank of the expanded block."""
    if M.field != tower.ext_field:
        raise ValueError("matrix is not over the tower's extension field")
    return sum(rank(tower.ext_matrix(blk)) for blk in partition.blocks(M))


def rank_support(tower: FieldTower, block: Matrix) -> Matrix:
    """Canonical basis of the GF(q) row space of the expanded block."""
    if block.field != tower.ext_field:
        raise ValueError("matrix is not over the tower's extension field")
    return row_space_basis(tower.ext_matrix(block))


def sum_rank_support(tower: FieldTower, M: Matrix, partition: LengthPartition) -> list[Matrix]:
    return [rank_support(tower, blk) for blk in partition.blocks(M)]


def hamming_support(M: Matrix) -> set[int]:
    """0-based indices of nonzero columns."""
    return {int(j) for j in np.nonzero(np.any(M.array != 0, axis=0))[0]}


@dataclass(frozen=True)
class ErrorModel:
    """An error matrix together with its decomposition E = A @ B.

    B is block-diagonal over GF(q) in canonical per-block row-space bases;
    A is over GF(q^m).  profile holds the per-block weights (t_1, ..., t_l).
    """

    tower: FieldTower
    partition: LengthPartition
    E: Matrix
    A: Matrix
    B: Matrix
    profile: tuple[int, ...]
    full_rank: bool
    seed: int | None = None

    @property
    def t(self) -> int:
        return sum(self.profile)

    @property
    def s(self) -> int:
        return self.E.rows

    def validate(self) -> None:
        tower, part = self.tower, self.partition
        assert self.E == self.A @ tower.lift(self.B)
        for ti, blk in zip(self.profile, part.blocks(self.E)):
            assert rank(tower.ext_matrix(blk)) == ti
        assert self.full_rank == (rank(self.E) == self.t)

    def to_dict(self) -> dict:
        from .linalg import matrix_to_dict

        return {
            "profile": list(self.profile),
            "full_rank": self.full_rank,
            "seed": self.seed,
            "E": matrix_to_dict(self.E, self.tower),
            "A": matrix_to_dict(self.A, self.tower),
            "B": matrix_to_dict(self.B, self.tower),
        }

    @classmethod
    def from_dict(cls, d: dict, tower: FieldTower, partition: LengthPartition) -> "ErrorModel":
        from .linalg import matrix_from_dict

        return cls(
            tower=tower,
            partition=partition,
            E=matrix_from_dict(d["E"], tower),
            A=matrix_from_dict(d["A"], tower),
            B=matrix_from_dict(d["B"], tower),
            profile=tuple(d["profile"]),
            full_rank=bool(d["full_rank"]),
            seed=d.get("seed"),
        )


def _random_full_rank(field, rows: int, cols: int, rng, budget: int) -> Matrix:
    want = min(rows, cols)
    for _ in range(budget):
        M = Matrix.random(field, rows, cols, rng)
        if rank(M) == want:
            return M
    raise SamplingFailure(f"no full-rank {rows}x{cols} matrix after {budget} draws")


def check_profile(
    tower: FieldTower,
    partition: LengthPartition,
    profile: Sequence[int],
    s: int,
    require_full_rank: bool,
) -> tuple[int, ...]:
    profile = tuple(int(x) for x in profile)
    if len(profile) != partition.ell:
        raise Infeasible(f"profile has {len(profile)} entries, partition has {partition.ell} blocks")
    if s < 1:
        raise Infeasible("interleaving order must be >= 1")
    for ti, ni in zip(profile, partition.parts):
        if ti < 0 or ti > min(ni, tower.m * s):
            raise Infeasible(f"block weight {ti} infeasible for block length {ni}, m*s = {tower.m * s}")
    if require_full_rank and sum(profile) > s:
        raise Infeasible(f"full-rank errors need t <= s, got t = {sum(profile)}, s = {s}")
    return profile


def sample_error(
    tower: FieldTower,
    partition: LengthPartition,
    profile: Sequence[int],
    s: int,
    require_full_rank: bool = True,
    seed=None,
    rng: np.random.Generator | None = None,
    max_attempts: int = 1000,
) -> ErrorModel:
    """Draw an error with the given per-block weights via rejection sampling.

    B blocks are uniform full-rank t_i x n_i matrices over GF(q); A is
    uniform over GF(q^m)^(s x t) subject to rk_q(A_block_i) = t_i, plus
    rk(A) = t over GF(q^m) when require_full_rank is set.  Deterministic for
    a given seed.
    """
    profile = check_profile(tower, partition, profile, s, require_full_rank)
    t = sum(profile)
    if rng is None:
        rng = np.random.default_rng(seed)
    Fq, Fqm = tower.base_field, tower.ext_field

    if t == 0:
        E = Matrix.zeros(Fqm, s, partition.n)
        return ErrorModel(tower, partition, E, Matrix.zeros(Fqm, s, 0),
                          Matrix.zeros(Fq, 0, partition.n), profile, full_rank=True,
                          seed=seed if isinstance(seed, int) else None)

    for _ in range(max_attempts):
        b_blocks = [
            _random_full_rank(Fq, ti, ni, rng, max_attempts) if ti else Matrix.zeros(Fq, 0, ni)
            for ti, ni in zip(profile, partition.parts)
        ]
        B = block_diag(b_blocks)
        A = Matrix.random(Fqm, s, t, rng)
        ok = True
        col = 0
        for ti in profile:
            if ti and rank(tower.ext_matrix(A[:, col : col + ti])) != ti:
                ok = False
                break
            col += ti
        if ok and require_full_rank and rank(A) != t:
            ok = False
        if not ok:
            continue
        E = A @ tower.lift(B)
        if any(
            rank(tower.ext_matrix(blk)) != ti
            for ti, blk in zip(profile, partition.blocks(E))
        ):
            continue
        full = rank(E) == t
        if require_full_rank and not full:
            continue
        return ErrorModel(tower, partition, E, A, B, profile, full_rank=full,
                          seed=seed if isinstance(seed, int) else None)
    raise SamplingFailure(f"no admissible error after {max_attempts} attempts")


def random_profile(
    rng: np.random.Generator,
    tower: FieldTower,
    partition: LengthPartition,
    t: int,
    s: int,
) -> tuple[int, ...]:
    """Random per-block weight profile summing to t within feasibility caps."""
    caps = [min(ni, tower.m * s) for ni in partition.parts]
    if t > sum(caps) or t < 0:
        raise Infeasible(f"total weight {t} infeasible for caps {caps}")
    prof = [0] * partition.ell
    for _ in range(t):
        open_blocks = [i for i in range(partition.ell) if prof[i] < caps[i]]
        prof[open_blocks[int(rng.integers(len(open_blocks)))]] += 1
    return tuple(prof)


def decompose_error(
    tower: FieldTower, E: Matrix, partition: LengthPartition
) -> tuple[Matrix, Matrix]:
    """Factor E as A @ B with B the canonical block-diagonal support basis."""
    blocks = partition.blocks(E)
    b_blocks = [rank_support(tower, blk) for blk in blocks]
    a_blocks = []
    for blk, bb in zip(blocks, b_blocks):
        if bb.rows == 0:
            a_blocks.append(Matrix.zeros(tower.ext_field, E.rows, 0))
            continue
        # E_i = A_i @ B_i with B_i full row rank: solve B_i^T X = E_i^T
        At = solve_unique(tower.lift(bb).T, blk.T)
        a_blocks.append(At.T)
    A = hstack(a_blocks) if a_blocks else Matrix.zeros(tower.ext_field, E.rows, 0)
    B = block_diag(b_blocks)
    return A, B
