"""Dense exact linear algebra over a :class:`~lrcmr.gf.FieldSpec`."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import DuplicatePoint, FieldMismatch, NoSolution
from .gf import Fe, FieldSpec


class GfMatrix:
    """Immutable ``rows x cols`` matrix of packed field elements."""

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data):
        arr = np.array(data, dtype=np.int64, copy=True)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("GfMatrix data must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise ValueError(f"entries must lie in [0, {field.q})")
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> GfMatrix:
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, k: int) -> GfMatrix:
        return cls(field, np.eye(k, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __repr__(self) -> str:
        return f"GfMatrix({self.rows}x{self.cols} over {self.field!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GfMatrix)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.field, self.shape, self.data.tobytes()))

    def __getitem__(self, idx) -> int:
        return int(self.data[idx])

    def entry(self, i: int, j: int) -> Fe:
        return Fe(self.field, int(self.data[i, j]))

    def columns(self, cols: Iterable[int]) -> GfMatrix:
        return GfMatrix(self.field, self.data[:, list(cols)])

    def take_rows(self, rows: Iterable[int]) -> GfMatrix:
        return GfMatrix(self.field, self.data[list(rows), :].reshape(-1, self.cols))

    @property
    def T(self) -> GfMatrix:
        return GfMatrix(self.field, self.data.T)

    def vstack(self, other: GfMatrix) -> GfMatrix:
        _same_field(self, other)
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return GfMatrix(self.field, np.vstack([self.data, other.data]))

    def __matmul__(self, other: GfMatrix) -> GfMatrix:
        _same_field(self, other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return GfMatrix.zeros(f, self.rows, other.cols)
        return GfMatrix(f, kernels.matmul(self.data, other.data, *f.kernel_args()))

    def is_zero(self) -> bool:
        return not self.data.any()

    def rank(self) -> int:
        return rank(self)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "data": [int(v) for v in self.data.ravel()]}

    @classmethod
    def from_json(cls, field: FieldSpec, obj: dict) -> GfMatrix:
        r, c = int(obj["rows"]), int(obj["cols"])
        data = list(obj["data"])
        if len(data) != r * c:
            raise ValueError("matrix JSON: rows*cols != len(data)")
        return cls(field, np.array(data, dtype=np.int64).reshape(r, c))


def _same_field(a: GfMatrix, b: GfMatrix) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")


def rank_of_columns(M: GfMatrix, subsets) -> np.ndarray:
    """Batched ``rank(M[:, s])`` for each row ``s`` of ``subsets``."""
    subsets = np.asarray(subsets, dtype=np.int64)
    if subsets.ndim == 1:
        subsets = subsets.reshape(1, -1)
    if M.rows == 0 or subsets.shape[1] == 0:
        return np.zeros(subsets.shape[0], dtype=np.int64)
    return kernels.rank_batch(M.data, subsets, *M.field.kernel_args())


def rank(M: GfMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return int(rank_of_columns(M, np.arange(M.cols))[0])


def rref(M: GfMatrix) -> tuple[GfMatrix, list[int]]:
    """Reduced row echelon form; pivot is the leftmost column, first nonzero
    row at or below the current pivot row."""
    f = M.field
    A = [list(map(int, row)) for row in M.data]
    R, C = M.shape
    pivots: list[int] = []
    prow = 0
    for c in range(C):
        if prow == R:
            break
        piv = next((i for i in range(prow, R) if A[i][c]), None)
        if piv is None:
            continue
        A[prow], A[piv] = A[piv], A[prow]
        inv = f.inv(A[prow][c])
        A[prow] = [f.mul(inv, x) for x in A[prow]]
        for i in range(R):
            if i != prow and A[i][c]:
                fac = A[i][c]
                A[i] = [f.sub(x, f.mul(fac, y)) for x, y in zip(A[i], A[prow])]
        pivots.append(c)
        prow += 1
    return GfMatrix(f, np.array(A, dtype=np.int64).reshape(R, C)), pivots


def null_space(M: GfMatrix) -> GfMatrix:
    """Basis of ``{x : M x^T = 0}`` as rows; free variables set to unit vectors."""
    f = M.field
    C = M.cols
    E, pivots = rref(M)
    free = [c for c in range(C) if c not in set(pivots)]
    basis = np.zeros((len(free), C), dtype=np.int64)
    for b, fc in enumerate(free):
        basis[b, fc] = 1
        for r, pc in enumerate(pivots):
            basis[b, pc] = f.neg(int(E.data[r, fc]))
    return GfMatrix(f, basis)


def row_basis(M: GfMatrix) -> GfMatrix:
    """Nonzero rows of ``rref(M)``."""
    E, pivots = rref(M)
    return E.take_rows(range(len(pivots)))


def solve(A: GfMatrix, b: Sequence[int]) -> np.ndarray:
    """Some ``x`` with ``A x = b``; free variables are zero."""
    f = A.field
    b = np.asarray([int(v) for v in b], dtype=np.int64).reshape(-1, 1)
    if b.shape[0] != A.rows:
        raise ValueError(f"rhs length {b.shape[0]} != {A.rows} rows")
    aug = GfMatrix(f, np.hstack([A.data.reshape(A.rows, A.cols), b]))
    E, pivots = rref(aug)
    if A.cols in pivots:
        raise NoSolution("right-hand side is not in the column space")
    x = np.zeros(A.cols, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = E.data[r, A.cols]
    return x


def row_space_equal(A: GfMatrix, B: GfMatrix) -> bool:
    _same_field(A, B)
    if A.cols != B.cols:
        raise ValueError("column counts differ")
    ra, rb = rank(A), rank(B)
    if ra != rb:
        return False
    return rank(A.vstack(B)) == ra


def vandermonde(points: Sequence, height: int, start_power: int = 0) -> GfMatrix:
    """Entry ``(i, j) = points[j] ** (start_power + i)``."""
    if not points:
        raise ValueError("need at least one point")
    f = points[0].field if isinstance(points[0], Fe) else None
    if f is None:
        raise TypeError("points must be Fe values")
    vals = [int(pt.value) for pt in points]
    if len(set(vals)) != len(vals):
        raise DuplicatePoint("vandermonde points must be distinct")
    data = [[f.pow(v, start_power + i) for v in vals] for i in range(height)]
    return GfMatrix(f, np.array(data, dtype=np.int64).reshape(height, len(vals)))
