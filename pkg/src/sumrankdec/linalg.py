"""Exact dense linear algebra over finite fields.

Matrices wrap read-only numpy int64 arrays of field codes together with the
field object that interprets them.  All elimination routines are
deterministic: the pivot for the leftmost unprocessed column is always the
topmost row with a nonzero entry, and echelon forms are fully reduced, so
kernels and row-space bases are canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "Matrix",
    "RefResult",
    "ref_with_transform",
    "rank",
    "right_kernel",
    "solve_unique",
    "row_space_basis",
    "row_spaces_equal",
    "row_space_intersection",
    "block_diag",
    "hstack",
    "vstack",
    "NonUniqueSolution",
    "Inconsistent",
]


class LinearSystemError(Exception):
    """Base class for failures of exact linear solving."""


class NonUniqueSolution(LinearSystemError):
    """The coefficient matrix does not have full column rank."""


class Inconsistent(LinearSystemError):
    """The right-hand side is not in the column space of the matrix."""


class Matrix:
    """Immutable dense matrix of field codes."""

    __slots__ = ("field", "_a")

    def __init__(self, field, data, _checked: bool = False):
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"matrix data must be 2-dimensional, got shape {arr.shape}")
        if not _checked and arr.size:
            if arr.min() < 0 or arr.max() >= field.order:
                raise ValueError(f"entries out of range for field of order {field.order}")
        if arr.flags.writeable:
            arr = arr.copy()
            arr.setflags(write=False)
        self.field = field
        self._a = arr

    # ---- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64), _checked=True)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64), _checked=True)

    @classmethod
    def random(cls, field, rows: int, cols: int, rng: np.random.Generator) -> "Matrix":
        return cls(field, field.random(rng, (rows, cols)), _checked=True)

    # ---- shape and access ---------------------------------------------------
    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self._a.T, _checked=True)

    @property
    def is_zero(self) -> bool:
        return bool(np.all(self._a == 0))

    def __getitem__(self, key):
        out = self._a[key]
        if np.isscalar(out) or out.ndim == 0:
            return int(out)
        if out.ndim != 2:
            raise TypeError("1-d slices are ambiguous; use row()/col() or 2-d slices")
        return Matrix(self.field, out, _checked=True)

    def row(self, i: int) -> "Matrix":
        return Matrix(self.field, self._a[i : i + 1, :], _checked=True)

    def col(self, j: int) -> "Matrix":
        return Matrix(self.field, self._a[:, j : j + 1], _checked=True)

    def tolist(self) -> list[list[int]]:
        return self._a.tolist()

    # ---- arithmetic ----------------------------------------------------------
    def _compat(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise ValueError("matrices belong to different fields")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._compat(other)
        if other.shape != self.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix(self.field, self.field.add(self._a, other._a), _checked=True)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._compat(other)
        if other.shape != self.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix(self.field, self.field.sub(self._a, other._a), _checked=True)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.field.neg(self._a), _checked=True)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._compat(other)
        if self.cols != other.rows:
            raise ValueError(f"inner dimensions differ: {self.shape} @ {other.shape}")
        return Matrix(self.field, self.field.matmul(self._a, other._a), _checked=True)

    def scale(self, c: int) -> "Matrix":
        return Matrix(self.field, self.field.mul(int(c), self._a), _checked=True)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self._a, other._a))
        )

    def __hash__(self):
        return hash((self.field, self._a.shape, self._a.tobytes()))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field!r})"


def hstack(mats: Sequence[Matrix]) -> Matrix:
    field = mats[0].field
    for m in mats[1:]:
        if m.field != field:
            raise ValueError("matrices belong to different fields")
    return Matrix(field, np.hstack([m.array for m in mats]), _checked=True)


def vstack(mats: Sequence[Matrix]) -> Matrix:
    field = mats[0].field
    for m in mats[1:]:
        if m.field != field:
            raise ValueError("matrices belong to different fields")
    return Matrix(field, np.vstack([m.array for m in mats]), _checked=True)


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    """Block-diagonal assembly; empty blocks contribute rows/cols of zeros."""
    if not blocks:
        raise ValueError("need at least one block")
    field = blocks[0].field
    for b in blocks[1:]:
        if b.field != field:
            raise ValueError("matrices belong to different fields")
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        out[r : r + b.rows, c : c + b.cols] = b.array
        r += b.rows
        c += b.cols
    return Matrix(field, out, _checked=True)


# ---------------------------------------------------------------------------
# Elimination engine
# ---------------------------------------------------------------------------


def _rref_arrays(field, arr: np.ndarray, transform: bool):
    """Reduced row-echelon form with optional transform tracking.

    Returns (R, T, pivots) where T @ arr == R (T None unless requested).
    Pivot choice: leftmost unprocessed column, topmost nonzero row.
    """
    a = np.array(arr, dtype=np.int64)
    r, c = a.shape
    t = np.eye(r, dtype=np.int64) if transform else None
    pivots: list[int] = []
    row = 0
    for col in range(c):
        if row == r:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        pr = row + int(nz[0])
        if pr != row:
            a[[row, pr]] = a[[pr, row]]
            if transform:
                t[[row, pr]] = t[[pr, row]]
        pv = int(a[row, col])
        if pv != 1:
            f = field.inv(pv)
            a[row, :] = field.mul(f, a[row, :])
            if transform:
                t[row, :] = field.mul(f, t[row, :])
        others = np.nonzero(a[:, col])[0]
        others = others[others != row]
        if others.size:
            fac = a[others, col][:, None]
            a[others, :] = field.sub(a[others, :], field.mul(fac, a[row, :][None, :]))
            if transform:
                t[others, :] = field.sub(t[others, :], field.mul(fac, t[row, :][None, :]))
        pivots.append(col)
        row += 1
    return a, t, pivots


@dataclass(frozen=True)
class RefResult:
    """Output of ref_with_transform: P invertible with P @ S = R reduced."""

    P: Matrix
    R: Matrix
    rank: int
    pivots: tuple[int, ...]


def ref_with_transform(M: Matrix) -> RefResult:
    a, t, pivots = _rref_arrays(M.field, M.array, transform=True)
    return RefResult(
        P=Matrix(M.field, t, _checked=True),
        R=Matrix(M.field, a, _checked=True),
        rank=len(pivots),
        pivots=tuple(pivots),
    )


def rref(M: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    a, _, pivots = _rref_arrays(M.field, M.array, transform=False)
    return Matrix(M.field, a, _checked=True), tuple(pivots)


def rank(M: Matrix) -> int:
    _, _, pivots = _rref_arrays(M.field, M.array, transform=False)
    return len(pivots)


def row_space_basis(M: Matrix) -> Matrix:
    """Canonical (reduced-echelon) basis of the row space, zero rows dropped."""
    R, pivots = rref(M)
    return R[: len(pivots), :]


def row_spaces_equal(M1: Matrix, M2: Matrix) -> bool:
    return row_space_basis(M1) == row_space_basis(M2)


def right_kernel(M: Matrix) -> Matrix:
    """Canonical basis of {v : M @ v^T = 0}, one vector per matrix row.

    The basis is returned in reduced echelon form, so equal kernels compare
    equal as matrices.  An empty result has shape (0, cols).
    """
    field = M.field
    R, pivots = rref(M)
    c = M.cols
    free = [j for j in range(c) if j not in pivots]
    if not free:
        return Matrix.zeros(field, 0, c)
    basis = np.zeros((len(free), c), dtype=np.int64)
    rarr = R.array
    for bi, fcol in enumerate(free):
        basis[bi, fcol] = 1
        for pi, pcol in enumerate(pivots):
            basis[bi, pcol] = field.neg(int(rarr[pi, fcol]))
    out, _, piv = _rref_arrays(field, basis, transform=False)
    return Matrix(field, out[: len(piv), :], _checked=True)


def solve_unique(M: Matrix, rhs: Matrix) -> Matrix:
    """Unique X with M @ X = rhs; M must have full column rank.

    Raises NonUniqueSolution when rank(M) < M.cols and Inconsistent when the
    system has no solution.
    """
    M._compat(rhs)
    if rhs.rows != M.rows:
        raise ValueError(f"rhs has {rhs.rows} rows, expected {M.rows}")
    b = M.cols
    aug = hstack([M, rhs])
    R, pivots = rref(aug)
    if any(p >= b for p in pivots):
        raise Inconsistent("system has no solution")
    if len(pivots) < b:
        raise NonUniqueSolution(f"matrix has rank {len(pivots)} < {b} columns")
    return R[:b, b:]


def row_space_intersection(M1: Matrix, M2: Matrix) -> Matrix:
    """Canonical basis of the intersection of two row spaces (Zassenhaus)."""
    M1._compat(M2)
    if M1.cols != M2.cols:
        raise ValueError("matrices must have equal column counts")
    field = M1.field
    n = M1.cols
    top = np.hstack([M1.array, M1.array])
    bot = np.hstack([M2.array, np.zeros_like(M2.array)])
    stacked = np.vstack([top, bot])
    R, pivots = rref(Matrix(field, stacked, _checked=True))
    rarr = R.array
    inter_rows = []
    for i in range(len(pivots)):
        if not np.any(rarr[i, :n]):
            inter_rows.append(rarr[i, n:])
    if not inter_rows:
        return Matrix.zeros(field, 0, n)
    return row_space_basis(Matrix(field, np.array(inter_rows), _checked=True))


def matrix_to_dict(M: Matrix, tower) -> dict:
    if M.field == tower.ext_field:
        label = "ext"
    elif M.field == tower.base_field:
        label = "base"
    else:
        raise ValueError("matrix field does not belong to the tower")
    return {"rows": M.rows, "cols": M.cols, "field": label, "data": M.tolist()}


def matrix_from_dict(d: dict, tower) -> Matrix:
    label = d["field"]
    if label == "ext":
        field = tower.ext_field
    elif label == "base":
        field = tower.base_field
    else:
        raise ValueError(f"unknown field label {label!r}")
    rows, cols = int(d["rows"]), int(d["cols"])
    data = np.asarray(d["data"], dtype=np.int64).reshape(rows, cols)
    return Matrix(field, data)
