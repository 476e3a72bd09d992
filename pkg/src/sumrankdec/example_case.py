"""A hand-checked reference decoding instance over GF(5^2).

Length-6 code with blocks (2, 2, 2), dimension 2, minimum sum-rank distance
5, interleaving order 3, corrupted by a weight-3 error with block profile
(1, 2, 0).  Every intermediate of the decoding pipeline is recorded so the
whole chain can be replayed and diffed step by step.

Entries are stored as exponents of the primitive element (None encodes the
zero element) and materialised against the tower on demand.
"""

from __future__ import annotations

from dataclasses import dataclass

from .code import InterleavedCode, LinearCode
from .gf import FieldTower
from .linalg import Matrix
from .sumrank import LengthPartition

__all__ = ["ReferenceInstance", "load"]

_EXT_MODULUS = [2, 4, 1]  # x^2 + 4x + 2, primitive over GF(5)

_H = [
    [0, None, None, None, 8, 19],
    [None, 0, None, None, 5, 12],
    [None, None, 0, None, 17, 1],
    [None, None, None, 0, 22, 18],
]
_G = [
    [4, 7, 21, 4, 3, 5],
    [20, 11, 10, 21, 17, 3],
]
_C = [
    [20, 22, 0, 6, 11, 10],
    [23, 7, 4, None, 17, 9],
    [15, 0, 22, 12, 22, 10],
]
_E = [
    [19, 1, 6, 9, None, None],
    [17, 23, 10, 7, None, None],
    [2, 8, 15, 6, None, None],
]
_Y = [
    [17, 8, 18, 16, 11, 10],
    [11, 3, 22, 7, 17, 9],
    [7, 4, 23, 0, 22, 10],
]
_S = [
    [19, 17, 2],
    [1, 23, 8],
    [6, 10, 15],
    [9, 7, 6],
]
_H_SUB = [[0, 6, None, None, 18, 16]]
_A_T = [
    [19, 17, 2],
    [6, 10, 15],
    [9, 7, 6],
]
_B_BLOCKS = [[[1, 2]], [[1, 0], [0, 1]], []]


@dataclass(frozen=True)
class ReferenceInstance:
    tower: FieldTower
    partition: LengthPartition
    code: LinearCode
    icode: InterleavedCode
    G: Matrix
    C: Matrix
    E: Matrix
    Y: Matrix
    S: Matrix
    h_sub: Matrix
    A: Matrix
    B_blocks: tuple[Matrix, ...]
    profile: tuple[int, ...]
    t: int
    d: int


def _mat(tower: FieldTower, exponents) -> Matrix:
    rows = [[0 if e is None else tower.alpha_power(e) for e in row] for row in exponents]
    return Matrix(tower.ext_field, rows)


def load() -> ReferenceInstance:
    tower = FieldTower(5, 1, 2, _EXT_MODULUS)
    partition = LengthPartition([2, 2, 2])
    H = _mat(tower, _H)
    code = LinearCode(tower, partition, H, d=5)
    base = tower.base_field
    b_blocks = tuple(
        Matrix(base, blk) if blk else Matrix.zeros(base, 0, 2) for blk in _B_BLOCKS
    )
    return ReferenceInstance(
        tower=tower,
        partition=partition,
        code=code,
        icode=InterleavedCode(code, 3),
        G=_mat(tower, _G),
        C=_mat(tower, _C),
        E=_mat(tower, _E),
        Y=_mat(tower, _Y),
        S=_mat(tower, _S),
        h_sub=_mat(tower, _H_SUB),
        A=_mat(tower, _A_T).T,
        B_blocks=b_blocks,
        profile=(1, 2, 0),
        t=3,
        d=5,
    )
