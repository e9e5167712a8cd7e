"""Linear codes and the code algebra: duals, Schur products, traces, subfield subcodes."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import CtxMismatch, ShapeMismatch
from .field import FieldCtx, SubfieldCtx, parse_descriptor
from .fmatrix import (
    FMatrix,
    gf2_echelon,
    kernel_basis,
    kernel_from_rref,
    pack_rows,
    rank,
    rref,
    rowspace_contains,
)

# product rows are generated in blocks of this many to bound memory
_PRODUCT_CHUNK = 4096


class LinearCode:
    """A linear [n, k] code over ``ctx``.

    ``basis`` is any full-rank generator matrix; the canonical RREF generator
    ``gen`` is computed on first use and is what equality compares.
    """

    def __init__(self, ctx: FieldCtx, n: int, basis: FMatrix, *, canonical: bool = False):
        if basis.cols != n:
            raise ShapeMismatch(f"generator has {basis.cols} columns, expected {n}")
        self.ctx = ctx
        self.n = n
        self.basis = basis
        self._gen = basis if canonical else None
        self._dual = None

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows, n: int | None = None) -> "LinearCode":
        """Code spanned by arbitrary (possibly dependent) rows."""
        data = np.asarray(rows, dtype=np.int64)
        if n is None:
            n = data.shape[1]
        data = data.reshape(-1, n)
        R, _, _ = rref(FMatrix(ctx, data))
        return cls(ctx, n, R, canonical=True)

    @classmethod
    def zero(cls, ctx, n: int) -> "LinearCode":
        return cls(ctx, n, FMatrix.zeros(ctx, 0, n), canonical=True)

    @classmethod
    def full(cls, ctx, n: int) -> "LinearCode":
        return cls(ctx, n, FMatrix.identity(ctx, n), canonical=True)

    @property
    def gen(self) -> FMatrix:
        if self._gen is None:
            self._gen = rref(self.basis)[0]
        return self._gen

    @property
    def k(self) -> int:
        return self.basis.rows

    @property
    def dim(self) -> int:
        return self.basis.rows

    def contains(self, other: "LinearCode") -> bool:
        _check_codes(self, other)
        return rowspace_contains(self.basis, other.basis)

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (
            other.ctx == self.ctx
            and other.n == self.n
            and other.k == self.k
            and other.gen == self.gen
        )

    def __hash__(self):
        return hash((self.ctx.key, self.n, self.gen.data.tobytes()))

    def __repr__(self):
        return f"LinearCode([{self.n}, {self.k}] over F_{self.ctx.size})"


def _check_codes(C: LinearCode, D: LinearCode):
    if C.ctx != D.ctx:
        raise CtxMismatch(f"codes over F_{C.ctx.size} and F_{D.ctx.size}")
    if C.n != D.n:
        raise ShapeMismatch(f"code lengths differ: {C.n} vs {D.n}")


def dual(C: LinearCode) -> LinearCode:
    """Orthogonal complement under the standard bilinear form."""
    if C._dual is not None:
        return C._dual
    R = C.gen
    piv = [int(np.flatnonzero(row)[0]) for row in R.data]
    D = LinearCode(C.ctx, C.n, kernel_from_rref(R, piv))
    D._dual = C
    C._dual = D
    return D


def _span_products(ctx: FieldCtx, n: int, left: np.ndarray, right: np.ndarray, pairs):
    """Code spanned by left[i] * right[j] over the given index pairs."""
    I, J = pairs
    limit = n
    if ctx.p == 2 and ctx.s == 1:
        lp, rp = pack_rows(left), pack_rows(right)
        basis = gf2_echelon((lp[i] & rp[j] for i, j in zip(I.tolist(), J.tolist())), limit=limit)
        rows = [basis[k] for k in sorted(basis)]
        from .fmatrix import unpack_rows

        return LinearCode.from_rows(ctx, unpack_rows(rows, n), n)
    acc = np.zeros((0, n), dtype=np.int64)
    for start in range(0, len(I), _PRODUCT_CHUNK):
        sl = slice(start, start + _PRODUCT_CHUNK)
        block = ctx.mul(left[I[sl]], right[J[sl]])
        acc = rref(FMatrix(ctx, np.concatenate([acc, block])))[0].data
        if acc.shape[0] == n:
            break
    return LinearCode(ctx, n, FMatrix(ctx, acc), canonical=True)


def star_product(C: LinearCode, D: LinearCode) -> LinearCode:
    """Span of all componentwise products c * d."""
    _check_codes(C, D)
    if C.k == 0 or D.k == 0:
        return LinearCode.zero(C.ctx, C.n)
    I, J = np.meshgrid(np.arange(C.k), np.arange(D.k), indexing="ij")
    return _span_products(C.ctx, C.n, C.basis.data, D.basis.data, (I.ravel(), J.ravel()))


def square(C: LinearCode) -> LinearCode:
    """C * C from the k(k+1)/2 unordered generator pairs."""
    if C.k == 0:
        return LinearCode.zero(C.ctx, C.n)
    I, J = np.triu_indices(C.k)
    return _span_products(C.ctx, C.n, C.basis.data, C.basis.data, (I, J))


def frobenius_code(C: LinearCode, q: int, i: int) -> LinearCode:
    """C^(q^i): every coordinate raised to the power q^i."""
    C.ctx.check_subfield_size(q)
    rows = C.ctx.frob(C.basis.data, q, i)
    return LinearCode(C.ctx, C.n, FMatrix(C.ctx, rows))


def trace_code(C: LinearCode, sub: SubfieldCtx) -> LinearCode:
    """Tr(C) over F_q, spanned by Tr(alpha_j c_i) for basis elements alpha_j."""
    sub.big.check(C.ctx)
    if C.k == 0:
        return LinearCode.zero(sub.small, C.n)
    rows = [sub.trace(C.ctx.mul(C.basis.data, alpha)) for alpha in sub.basis]
    return LinearCode.from_rows(sub.small, np.concatenate(rows), C.n)


def expand_rows(H: np.ndarray, sub: SubfieldCtx) -> np.ndarray:
    """Replace every big-field row by its m coordinate rows over F_q."""
    if H.shape[0] == 0:
        return np.zeros((0, H.shape[1]), dtype=np.int64)
    co = sub.coords(H)  # (rows, n, m)
    return np.transpose(co, (0, 2, 1)).reshape(-1, H.shape[1])


def subfield_subcode(C: LinearCode, sub: SubfieldCtx) -> LinearCode:
    """C ∩ F_q^n, from the F_q-expansion of a parity-check matrix of C."""
    sub.big.check(C.ctx)
    H = dual(C).basis.data
    if H.shape[0] == 0:
        return LinearCode.full(sub.small, C.n)
    E = FMatrix(sub.small, expand_rows(H, sub))
    return LinearCode(sub.small, C.n, kernel_basis(E))


def sum_code(C: LinearCode, D: LinearCode) -> LinearCode:
    _check_codes(C, D)
    return LinearCode.from_rows(C.ctx, np.concatenate([C.basis.data, D.basis.data]), C.n)


def intersect_code(C: LinearCode, D: LinearCode) -> LinearCode:
    """C ∩ D, computed as the dual of dual(C) + dual(D)."""
    _check_codes(C, D)
    return dual(sum_code(dual(C), dual(D)))


def sum_codes(codes) -> LinearCode:
    codes = list(codes)
    out = codes[0]
    for c in codes[1:]:
        out = sum_code(out, c)
    return out


def code_rank(C: LinearCode) -> int:
    return rank(C.basis)


# -- code files -----------------------------------------------------------------


def format_code(C: LinearCode, q: int | None = None, m: int = 1) -> str:
    """Line-oriented code file: header, field descriptor, then the canonical rows."""
    q = C.ctx.size if q is None else q
    lines = [f"q={q} m={m} n={C.n} k={C.k}", C.ctx.descriptor()]
    lines += [" ".join(map(str, row)) for row in C.gen.data.tolist()]
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> tuple[LinearCode, dict]:
    lines = text.splitlines()
    header = {k: int(v) for k, v in (tok.split("=") for tok in lines[0].split())}
    ctx = parse_descriptor(lines[1])
    n, k = header["n"], header["k"]
    rows = [[int(t) for t in ln.split()] for ln in lines[2 : 2 + k]]
    data = np.array(rows, dtype=np.int64).reshape(k, n)
    if np.any(data < 0) or np.any(data >= ctx.size):
        raise ValueError("entry outside the field")
    C = LinearCode(ctx, n, FMatrix(ctx, data))
    if rank(C.basis) != k:
        raise ValueError("generator rows are not independent")
    return C, header


def write_code(C: LinearCode, path, q: int | None = None, m: int = 1):
    Path(path).write_text(format_code(C, q, m))


def read_code(path) -> tuple[LinearCode, dict]:
    return parse_code(Path(path).read_text())
