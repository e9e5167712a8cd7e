"""Dense univariate polynomials over a FieldCtx."""

from __future__ import annotations

import numpy as np

from .errors import DivisionByZeroPoly, RepeatedSupport
from .field import FieldCtx


class Poly:
    """Immutable polynomial; ``coeffs`` is constant-first with no trailing zeros."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        c = [int(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.ctx = ctx
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, ctx, deg: int, coef: int = 1) -> "Poly":
        return cls(ctx, (0,) * deg + (coef,))

    @property
    def deg(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def _same(self, other: "Poly"):
        self.ctx.check(other.ctx)

    def __add__(self, other: "Poly") -> "Poly":
        self._same(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = self.ctx.sadd(out[i], v)
        return Poly(self.ctx, out)

    def __neg__(self) -> "Poly":
        return Poly(self.ctx, [self.ctx.sneg(v) for v in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        ctx = self.ctx
        if not isinstance(other, Poly):
            return Poly(ctx, [ctx.smul(v, int(other)) for v in self.coeffs])
        self._same(other)
        if self.is_zero() or other.is_zero():
            return Poly(ctx)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = ctx.sadd(out[i + j], ctx.smul(a, b))
        return Poly(ctx, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent")
        result, base = Poly(self.ctx, (1,)), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other: "Poly"):
        return euclid_div(self, other)

    def __mod__(self, other: "Poly") -> "Poly":
        return euclid_div(self, other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return euclid_div(self, other)[0]

    def __eq__(self, other):
        return isinstance(other, Poly) and other.ctx == self.ctx and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.ctx.key, self.coeffs))

    def __call__(self, x):
        return eval_vec(self, x)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * self.ctx.sinv(self.lead)

    def derivative(self) -> "Poly":
        ctx = self.ctx
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            k = i % ctx.p
            # integer multiple k*c computed by repeated addition in characteristic p
            acc = 0
            for _ in range(k):
                acc = ctx.sadd(acc, c)
            out.append(acc)
        return Poly(ctx, out)

    def __str__(self):
        return ",".join(map(str, self.coeffs))

    def __repr__(self):
        return f"Poly([{self}] over F_{self.ctx.size})"


def parse_poly(ctx: FieldCtx, text: str) -> Poly:
    text = text.strip()
    return Poly(ctx, [int(t) for t in text.split(",")] if text else [])


def eval_vec(P: Poly, x) -> np.ndarray:
    """Horner evaluation of P at every entry of x."""
    ctx = P.ctx
    x = np.asarray(x, dtype=np.int64)
    acc = np.zeros_like(x)
    for c in reversed(P.coeffs):
        acc = ctx.add(ctx.mul(acc, x), c)
    return np.asarray(acc, dtype=np.int64)


def euclid_div(P: Poly, S: Poly) -> tuple[Poly, Poly]:
    """(A, B) with P = A*S + B and deg B < deg S."""
    P._same(S)
    if S.is_zero():
        raise DivisionByZeroPoly("division by the zero polynomial")
    ctx = P.ctx
    if P.deg < S.deg:
        return Poly(ctx), P
    rem = list(P.coeffs)
    ds = S.deg
    inv_lead = ctx.sinv(S.lead)
    quot = [0] * (P.deg - ds + 1)
    scoef = S.coeffs
    for k in range(P.deg - ds, -1, -1):
        c = rem[k + ds]
        if c == 0:
            continue
        t = ctx.smul(c, inv_lead)
        quot[k] = t
        for j, sv in enumerate(scoef):
            if sv:
                rem[k + j] = ctx.ssub(rem[k + j], ctx.smul(t, sv))
    return Poly(ctx, quot), Poly(ctx, rem[:ds])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def powmod(P: Poly, e: int, M: Poly) -> Poly:
    result, base = Poly(P.ctx, (1,)) % M, P % M
    while e:
        if e & 1:
            result = (result * base) % M
        e >>= 1
        if e:
            base = (base * base) % M
    return result


def _check_distinct(x):
    x = np.asarray(x, dtype=np.int64)
    if len(np.unique(x)) != len(x):
        raise RepeatedSupport("support entries must be pairwise distinct")
    return x


def locator(ctx: FieldCtx, x) -> Poly:
    """π_x(z) = prod (z - x_i)."""
    x = _check_distinct(x)
    # divide and conquer keeps the intermediate products balanced
    polys = [Poly(ctx, (ctx.sneg(int(v)), 1)) for v in x]
    if not polys:
        return Poly(ctx, (1,))
    while len(polys) > 1:
        nxt = [polys[i] * polys[i + 1] for i in range(0, len(polys) - 1, 2)]
        if len(polys) % 2:
            nxt.append(polys[-1])
        polys = nxt
    return polys[0]


def locator_derivative_eval(ctx: FieldCtx, x) -> np.ndarray:
    """(π'_x(x_1), ..., π'_x(x_n)), computed as prod_{j != i} (x_i - x_j)."""
    x = _check_distinct(x)
    n = len(x)
    out = np.ones(n, dtype=np.int64)
    for j in range(n):
        diff = ctx.sub(x, x[j])
        diff[j] = 1
        out = ctx.mul(out, diff)
    return out


def goppa_reduction_step(P: Poly, gamma: Poly, v: int, q: int) -> tuple[Poly, Poly]:
    """One reduction step for Tr(P(x)/Γ(x)^(q^v+1)).

    Divides P by Γ^(q^v - q^(v-1) + 1) = A*S + B and returns (A^q Γ, B).  The
    trace of (A^q Γ)/Γ^(q^v+1) plus the trace of B/Γ^(q^v+1) equals the trace
    of P/Γ^(q^v+1) at every point where Γ does not vanish.
    """
    if v < 1:
        raise ValueError("v must be at least 1")
    if gamma.is_zero():
        raise DivisionByZeroPoly("Γ is zero")
    S = gamma ** (q**v - q ** (v - 1) + 1)
    A, B = euclid_div(P, S)
    if A.is_zero():
        return Poly(P.ctx), B
    return (A**q) * gamma, B


def is_squarefree(P: Poly) -> bool:
    if P.deg <= 0:
        return True
    d = P.derivative()
    if d.is_zero():
        # P(z) = Q(z^p) = (Q^{1/p}(z))^p over a perfect field
        return False
    return poly_gcd(P, d).deg == 0


def _frobenius_matrix(M: Poly) -> np.ndarray:
    """Row i holds the coefficients of z^(iQ) mod M, so f^Q = coeffs(f) @ rows."""
    ctx, d = M.ctx, M.deg
    zq = powmod(Poly(ctx, (0, 1)), ctx.size, M)
    rows = np.zeros((d, d), dtype=np.int64)
    cur = Poly(ctx, (1,))
    for i in range(d):
        rows[i, : len(cur.coeffs)] = cur.coeffs
        cur = (cur * zq) % M
    return rows


def _apply_frobenius(ctx: FieldCtx, c: np.ndarray, rows: np.ndarray) -> np.ndarray:
    terms = ctx.mul(c[:, None], rows)
    return ctx.from_digits(ctx.digits(terms).sum(axis=0))


def is_irreducible(P: Poly) -> bool:
    """Ben-Or test over F_Q, Q = |field|: no factor of degree k <= deg/2 divides P."""
    d = P.deg
    if d <= 0:
        return False
    if d == 1:
        return True
    ctx = P.ctx
    M = P.monic()
    rows = _frobenius_matrix(M)
    z = Poly(ctx, (0, 1)) % M
    h = np.zeros(d, dtype=np.int64)
    h[: len(z.coeffs)] = z.coeffs
    for _ in range(d // 2):
        h = _apply_frobenius(ctx, h, rows)
        if poly_gcd(M, Poly(ctx, h) - z).deg != 0:
            return False
    return True


GOPPA_FLAVORS = ("irreducible", "squarefree", "any")


def random_goppa_poly(ctx: FieldCtx, r: int, flavor: str = "irreducible", seed=0) -> Poly:
    """Monic degree-r polynomial, deterministic in ``seed``, of the requested flavor.

    ``seed`` may be an int or a numpy Generator.
    """
    if r < 1:
        raise ValueError("degree must be at least 1")
    if flavor == "unrestricted":
        flavor = "any"
    if flavor not in GOPPA_FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    while True:
        coeffs = list(ctx.random(rng, size=r)) + [1]
        P = Poly(ctx, coeffs)
        if flavor == "any":
            return P
        if flavor == "squarefree" and is_squarefree(P):
            return P
        if flavor == "irreducible" and is_irreducible(P):
            return P
