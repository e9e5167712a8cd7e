"""Dense matrices over a FieldCtx: RREF, rank, kernels, row-space tests.

Matrices over F_2 are eliminated as bit-packed Python integers (one int per
row, bit j = column j); every other field uses vectorized numpy row
operations.  Both paths produce the same canonical RREF.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeMismatch
from .field import FieldCtx


class FMatrix:
    __slots__ = ("ctx", "data")

    def __init__(self, ctx: FieldCtx, data, cols: int | None = None):
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0 and cols is not None:
            arr = arr.reshape(0, cols)
        if arr.ndim != 2:
            raise ShapeMismatch("matrix data must be two-dimensional")
        self.ctx = ctx
        self.data = arr

    @classmethod
    def zeros(cls, ctx, rows: int, cols: int) -> "FMatrix":
        return cls(ctx, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, ctx, k: int) -> "FMatrix":
        return cls(ctx, np.eye(k, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def __eq__(self, other):
        return (
            isinstance(other, FMatrix)
            and other.ctx == self.ctx
            and other.shape == self.shape
            and np.array_equal(other.data, self.data)
        )

    def __repr__(self):
        return f"FMatrix({self.rows}x{self.cols} over F_{self.ctx.size})"


def _is_gf2(ctx) -> bool:
    return ctx.p == 2 and ctx.s == 1


def pack_rows(data: np.ndarray) -> list[int]:
    if data.shape[0] == 0:
        return []
    packed = np.packbits(data.astype(np.uint8), axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def unpack_rows(rows: list[int], cols: int) -> np.ndarray:
    if not rows:
        return np.zeros((0, cols), dtype=np.int64)
    nbytes = (cols + 7) // 8
    buf = b"".join(r.to_bytes(nbytes, "little") for r in rows)
    bits = np.unpackbits(
        np.frombuffer(buf, dtype=np.uint8).reshape(len(rows), nbytes), axis=1, bitorder="little"
    )
    return bits[:, :cols].astype(np.int64)


def gf2_echelon(rows, limit: int | None = None) -> dict[int, int]:
    """Insert rows into an echelon basis keyed by lowest set bit (pivot column)."""
    basis: dict[int, int] = {}
    for v in rows:
        while v:
            low = v & -v
            b = basis.get(low)
            if b is None:
                basis[low] = v
                break
            v ^= b
        if limit is not None and len(basis) >= limit:
            break
    return basis


def _gf2_rref(data: np.ndarray):
    cols = data.shape[1]
    basis = gf2_echelon(pack_rows(data), limit=cols)
    keys = sorted(basis)
    rows = [basis[k] for k in keys]
    # back-substitution: clear every other pivot bit, highest pivots first
    for i in range(len(rows) - 1, -1, -1):
        r = rows[i]
        for j in range(i + 1, len(rows)):
            if r & keys[j]:
                r ^= rows[j]
        rows[i] = r
    pivots = [k.bit_length() - 1 for k in keys]
    return unpack_rows(rows, cols), pivots


def _generic_rref(ctx: FieldCtx, data: np.ndarray):
    A = data.copy()
    nrows, ncols = A.shape
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        lead = A[r, c]
        if lead != 1:
            A[r, c:] = ctx.mul(A[r, c:], ctx.inv(lead))
        col = A[:, c].copy()
        col[r] = 0
        idx = np.flatnonzero(col)
        if idx.size:
            A[idx, c:] = ctx.sub(A[idx, c:], ctx.mul(col[idx, None], A[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rref(M: FMatrix) -> tuple[FMatrix, int, list[int]]:
    """Reduced row-echelon form with zero rows dropped, its rank and pivot columns."""
    if M.rows == 0 or M.cols == 0:
        return FMatrix(M.ctx, np.zeros((0, M.cols), dtype=np.int64)), 0, []
    if _is_gf2(M.ctx):
        R, piv = _gf2_rref(M.data)
    else:
        R, piv = _generic_rref(M.ctx, M.data)
    return FMatrix(M.ctx, R), len(piv), piv


def rank(M: FMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    if _is_gf2(M.ctx):
        return len(gf2_echelon(pack_rows(M.data), limit=M.cols))
    return rref(M)[1]


def kernel_from_rref(R: FMatrix, pivots: list[int]) -> FMatrix:
    ctx, cols = R.ctx, R.cols
    piv = set(pivots)
    free = [c for c in range(cols) if c not in piv]
    K = np.zeros((len(free), cols), dtype=np.int64)
    if free:
        K[np.arange(len(free)), free] = 1
        if pivots:
            K[:, pivots] = ctx.neg(R.data[:, free]).T
    return FMatrix(ctx, K)


def kernel_basis(M: FMatrix) -> FMatrix:
    """Basis of {v : M v^T = 0}, one vector per non-pivot column."""
    R, _, piv = rref(M)
    return kernel_from_rref(R, piv)


def _check_pair(A: FMatrix, B: FMatrix):
    A.ctx.check(B.ctx)
    if A.cols != B.cols:
        raise ShapeMismatch(f"column counts differ: {A.cols} vs {B.cols}")


def stack(A: FMatrix, B: FMatrix) -> FMatrix:
    _check_pair(A, B)
    return FMatrix(A.ctx, np.concatenate([A.data, B.data], axis=0))


def submatrix(M: FMatrix, rows=None, cols=None) -> FMatrix:
    d = M.data
    if rows is not None:
        d = d[np.asarray(rows, dtype=np.int64)]
    if cols is not None:
        d = d[:, np.asarray(cols, dtype=np.int64)]
    return FMatrix(M.ctx, d.reshape(len(d), -1) if d.size == 0 else d)


def transpose(M: FMatrix) -> FMatrix:
    return FMatrix(M.ctx, M.data.T.copy())


def mat_mul(A: FMatrix, B: FMatrix) -> FMatrix:
    A.ctx.check(B.ctx)
    if A.cols != B.rows:
        raise ShapeMismatch(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    ctx = A.ctx
    out = np.zeros((A.rows, B.cols), dtype=np.int64)
    if ctx.s == 1:
        # integer matmul is exact as long as the accumulated sum fits in int64
        if A.cols * (ctx.p - 1) ** 2 < (1 << 62):
            return FMatrix(ctx, (A.data @ B.data) % ctx.p)
    for t in range(A.cols):
        out = ctx.add(out, ctx.mul(A.data[:, t, None], B.data[None, t, :]))
    return FMatrix(ctx, out)


def rowspace_contains(A: FMatrix, B: FMatrix) -> bool:
    """True when every row of B lies in the row space of A."""
    _check_pair(A, B)
    if B.rows == 0:
        return True
    return rank(stack(A, B)) == rank(A)


def rowspace_equal(A: FMatrix, B: FMatrix) -> bool:
    _check_pair(A, B)
    return rref(A)[0] == rref(B)[0]
