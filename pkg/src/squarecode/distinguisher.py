"""Square-code distinguisher: closed-form dimension bounds, the L_p system, verdicts."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import NamedTuple

import numpy as np

from .codes import LinearCode, dual, square
from .errors import NotSystematizable, ParamDomain
from .fmatrix import FMatrix, rank

# Diagonal unknowns Z_jj are left out of L_p: with them removed the kernel
# dimension D satisfies dim (C^⊥)^2 = binom(dim C^⊥ + 1, 2) - D exactly.
# The choice was pinned empirically (see tests/test_distinguisher.py).
LP_DIAGONAL = "off"


@dataclass(frozen=True)
class BoundInputs:
    q: int
    m: int
    r: int
    n: int
    family: str = "goppa"

    def check(self, min_r: int = 1) -> "BoundInputs":
        if self.q < 2 or self.m < 1 or self.n < 1:
            raise ParamDomain("need q >= 2, m >= 1, n >= 1")
        if self.r < min_r:
            raise ParamDomain(f"need r >= {min_r}; got r={self.r}")
        if self.r * self.m >= self.n:
            raise ParamDomain(f"need rm < n (r={self.r}, m={self.m}, n={self.n})")
        return self


class Bound(NamedTuple):
    value: int  # min(n, raw)
    e: int  # optimizing exponent actually used
    raw: int  # the closed form before clamping at n
    saturated: bool  # raw >= n


def ilog_floor(q: int, x: int) -> int:
    """floor(log_q x) for x >= 1, in integers."""
    if x < 1:
        raise ParamDomain("logarithm of a non-positive number")
    e, v = 0, q
    while v <= x:
        v *= q
        e += 1
    return e


def e_alternant(q: int, r: int) -> int:
    """max{i : r >= q^i + 1} = floor(log_q(r - 1))."""
    if r < 2:
        raise ParamDomain("e_A is undefined for r < 2")
    return ilog_floor(q, r - 1)


def e_goppa(q: int, r: int) -> int:
    """min{i >= 0 : r <= (q-1)^2 q^i} + 1."""
    if r < 1:
        raise ParamDomain("need r >= 1")
    i, v = 0, (q - 1) ** 2
    while r > v:
        i += 1
        v *= q
    return i + 1


def max_e(m: int) -> int:
    """Largest e for which the e-parametrised bounds are valid: floor((m-1)/2).

    The bounds count ((m-1)/2 - e) full-size trace products beyond the first
    e + 1; for even m and e = m/2 that count is negative and the formula no
    longer bounds anything.
    """
    return (m - 1) // 2


def _half_m_times(m: int, x: int) -> int:
    num = m * x
    if num % 2:
        raise ArithmeticError("non-integral bound")  # pragma: no cover
    return num // 2


def base_raw(q: int, m: int, r: int) -> int:
    """binom(rm+1, 2) - (m/2)(r-1)(r-2), the e = 0 closed form."""
    return comb(r * m + 1, 2) - _half_m_times(m, (r - 1) * (r - 2))


def alternant_raw(q: int, m: int, r: int, e: int) -> int:
    """binom(rm+1, 2) - (m/2)(r-1)((2e+1)r - 2(q^(e+1)-1)/(q-1))."""
    geo = (q ** (e + 1) - 1) // (q - 1)
    return comb(r * m + 1, 2) - _half_m_times(m, (r - 1) * ((2 * e + 1) * r - 2 * geo))


def goppa_raw(q: int, m: int, r: int, e: int) -> int:
    """binom(rm+1, 2) - (m/2) r ((2e+1)r - 2(q-1)q^(e-1) - 1), for e >= 1."""
    if e < 1:
        raise ParamDomain("the Goppa closed form needs e >= 1")
    return comb(r * m + 1, 2) - _half_m_times(m, r * ((2 * e + 1) * r - 2 * (q - 1) * q ** (e - 1) - 1))


def argmax_alternant_T(q: int, r: int, e_max: int) -> int:
    """Smallest maximizer of T(e) = e r - q^(e+1)/(q-1) over 0..e_max (scaled to integers)."""
    vals = [(q - 1) * e * r - q ** (e + 1) for e in range(e_max + 1)]
    return vals.index(max(vals))


def argmax_goppa_T(q: int, r: int, e_max: int) -> int:
    """Smallest maximizer of T(e) = e r - (q-1) q^(e-1) over 0..e_max (scaled by q)."""
    vals = [q * e * r - (q - 1) * q**e for e in range(e_max + 1)]
    return vals.index(max(vals))


def bound_alternant(b: BoundInputs) -> Bound:
    """Upper bound on dim (Alt_r^⊥)^2, optimized over e."""
    b.check(min_r=2)
    e = min(e_alternant(b.q, b.r), max_e(b.m))
    raw = alternant_raw(b.q, b.m, b.r, e)
    return Bound(min(b.n, raw), e, raw, raw >= b.n)


def bound_goppa(b: BoundInputs) -> Bound:
    """Upper bound on dim (Goppa^⊥)^2: the e = 0 form for r < q-1, else the e_G form."""
    b.check(min_r=1)
    q, m, r = b.q, b.m, b.r
    e = 0
    if r < q - 1:
        raw = base_raw(q, m, r)
    else:
        e = min(e_goppa(q, r), max_e(m))
        raw = goppa_raw(q, m, r, e) if e >= 1 else base_raw(q, m, r)
    return Bound(min(b.n, raw), e, raw, raw >= b.n)


def bound_for(b: BoundInputs) -> Bound:
    if b.family == "alternant":
        return bound_alternant(b)
    if b.family == "goppa":
        return bound_goppa(b)
    if b.family == "grs":
        if not 1 <= b.r <= b.n:
            raise ParamDomain("GRS dimension must satisfy 1 <= r <= n")
        raw = 2 * b.r - 1
        return Bound(min(b.n, raw), 0, raw, raw >= b.n)
    raise ParamDomain(f"unknown family {b.family!r}")


def random_square_dim(n: int, k: int) -> int:
    return min(n, k * (k + 1) // 2)


def random_expected_dim(b: BoundInputs) -> int:
    k = b.r if b.family == "grs" else b.r * b.m
    return random_square_dim(b.n, k)


def measure_square_dual_dim(C: LinearCode) -> int:
    """dim (C^⊥)^2 by construction and rank."""
    return square(dual(C)).k


# -- the linearized system L_p -------------------------------------------------


def systematic_form(C: LinearCode) -> tuple[np.ndarray, list[int]]:
    """Generator with an identity block in front, and the column order used.

    When the first k columns are not independent the columns are permuted
    (pivots first); the permutation is returned.
    """
    G = C.gen
    if G.rows != C.k:
        raise NotSystematizable("generator is not of full rank")  # pragma: no cover
    piv = [int(np.flatnonzero(row)[0]) for row in G.data]
    rest = [c for c in range(C.n) if c not in set(piv)]
    perm = piv + rest
    return G.data[:, perm], perm


def build_lp_system(C: LinearCode, diagonal: str = LP_DIAGONAL) -> tuple[FMatrix, list[int]]:
    """Coefficient matrix of L_p (k rows, one column per unknown Z_jj') and the column permutation."""
    if diagonal not in ("off", "on"):
        raise ValueError("diagonal must be 'off' or 'on'")
    P, perm = systematic_form(C)
    k, n = C.k, C.n
    if diagonal == "off":
        J, Jp = np.triu_indices(n - k, k=1)
    else:
        J, Jp = np.triu_indices(n - k)
    J = J + k
    Jp = Jp + k
    data = C.ctx.mul(P[:, J], P[:, Jp]) if k else np.zeros((0, len(J)), dtype=np.int64)
    return FMatrix(C.ctx, np.asarray(data, dtype=np.int64).reshape(k, len(J))), perm


def lp_kernel_dim(C: LinearCode, diagonal: str = LP_DIAGONAL) -> int:
    M, _ = build_lp_system(C, diagonal)
    return M.cols - rank(M)


@dataclass(frozen=True)
class LpIdentity:
    D: int
    lhs: int
    measured: int
    consistent: bool
    convention: str
    D_other: int


def lp_identity_check(C: LinearCode, convention: str = LP_DIAGONAL) -> LpIdentity:
    """Compare binom(dim C^⊥ + 1, 2) - D against the directly measured dim (C^⊥)^2."""
    other = "on" if convention == "off" else "off"
    D = lp_kernel_dim(C, convention)
    D_other = lp_kernel_dim(C, other)
    dd = C.n - C.k
    measured = measure_square_dual_dim(C)
    lhs = comb(dd + 1, 2) - D
    return LpIdentity(D, lhs, measured, lhs == measured, convention, D_other)


# -- verdicts ------------------------------------------------------------------


def is_distinguishable(b: BoundInputs) -> bool:
    return bound_for(b).raw < random_expected_dim(b)


def largest_distinguishable_r(n: int, m: int, q: int = 2) -> tuple[int, float]:
    """(r*, R) with r* = max{r >= 2 : rm < n and the Goppa bound is below n}."""
    best = None
    for r in range(2, (n - 1) // m + 1):
        if bound_goppa(BoundInputs(q, m, r, n)).raw < n:
            best = r
    if best is None:
        raise ParamDomain("no distinguishable order r")
    return best, 1 - best * m / n


def format_rate(R: float) -> str:
    return f"{R:.5f}"


MCELIECE_PARAMS = (
    ("mceliece348864", 3488, 12),
    ("mceliece460896", 4608, 13),
    ("mceliece6688128", 6688, 13),
    ("mceliece6960119", 6960, 13),
    ("mceliece8192128", 8192, 13),
)


def mceliece_table() -> list[tuple[str, int, int, int, str]]:
    rows = []
    for name, n, m in MCELIECE_PARAMS:
        r, R = largest_distinguishable_r(n, m, 2)
        rows.append((name, n, m, r, format_rate(R)))
    return rows
