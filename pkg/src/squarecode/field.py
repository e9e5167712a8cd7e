"""Finite fields F_{p^s} and subfield pairs F_q ⊂ F_{q^m}.

Elements are plain integers: the polynomial-basis encoding
``c_0 + c_1 p + ... + c_{s-1} p^{s-1}`` of ``c_0 + c_1 z + ... + c_{s-1} z^{s-1}``
modulo the field's modulus.  Every arithmetic method accepts either Python
ints or numpy integer arrays and works elementwise.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import (
    CtxMismatch,
    DegreeMismatch,
    InvalidSubfield,
    NotPrime,
    ParamDomain,
    ReducibleModulus,
)

MAX_FIELD_SIZE = 1 << 24
_SCALAR_TABLE_LIMIT = 1 << 20
_ADD_TABLE_LIMIT = 1 << 10
_CHUNK = 1 << 18


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _int_log(base: int, x: int) -> int | None:
    """Return a with base**a == x, or None."""
    a, v = 0, 1
    while v < x:
        v *= base
        a += 1
    return a if v == x else None


class FieldCtx:
    """The field F_p[z]/(modulus) with p^s elements.

    Build instances with :func:`field_new`, which verifies the modulus.
    """

    def __init__(self, p: int, s: int, modulus: tuple[int, ...]):
        self.p = p
        self.s = s
        self.modulus = tuple(int(c) for c in modulus)
        self.size = p**s
        self.order = self.size - 1
        self.key = (p, s, self.modulus)
        self._pw = np.array([p**i for i in range(s)], dtype=np.int64)
        self._build_tables()

    # -- construction helpers -------------------------------------------------

    def digits(self, v):
        """Coefficient vector(s) of v, constant term first (last axis has length s)."""
        v = np.asarray(v, dtype=np.int64)
        return (v[..., None] // self._pw) % self.p

    def from_digits(self, d):
        d = np.asarray(d, dtype=np.int64) % self.p
        return d @ self._pw

    def _slow_mul(self, a: int, b: int) -> int:
        # schoolbook product in F_p[z] reduced by the modulus; used only to build tables
        p, s, f = self.p, self.s, self.modulus
        da = [int(c) for c in self.digits(a)]
        db = [int(c) for c in self.digits(b)]
        prod = [0] * (2 * s - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(len(prod) - 1, s - 1, -1):
            c = prod[k]
            if c:
                for j in range(s + 1):
                    prod[k - s + j] = (prod[k - s + j] - c * f[j]) % p
        return sum(prod[i] * p**i for i in range(s))

    def _slow_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._slow_mul(result, base)
            base = self._slow_mul(base, base)
            e >>= 1
        return result

    def _mul_matrix(self, c: int) -> np.ndarray:
        # row j holds the digits of c * z^j
        return np.array(
            [self.digits(self._slow_mul(c, self.p**j)) for j in range(self.s)],
            dtype=np.int64,
        )

    def _build_tables(self):
        N, p, s = self.size, self.p, self.s
        if N == 2:
            self.generator = 1
        else:
            qs = prime_factors(self.order)
            g = 2 if N > 2 else 1
            while True:
                if all(self._slow_pow(g, self.order // l) != 1 for l in qs):
                    break
                g += 1
            self.generator = g
        exp = np.empty(self.order, dtype=np.int64)
        exp[0] = 1
        length, cur = 1, self.generator
        while length < self.order:
            take = min(length, self.order - length)
            mat = self._mul_matrix(cur)
            for start in range(0, take, _CHUNK):
                stop = min(start + _CHUNK, take)
                block = self.digits(exp[start:stop])
                exp[length + start : length + stop] = self.from_digits(block @ mat)
            length += take
            cur = self._slow_mul(cur, cur)
        log = np.zeros(N, dtype=np.int64)
        log[exp] = np.arange(self.order, dtype=np.int64)
        self._exp = exp
        self._log = log
        self._neg = None
        self._add = None
        if p != 2 and s > 1:
            allv = np.arange(N, dtype=np.int64)
            self._neg = self.from_digits(-self.digits(allv))
            if N <= _ADD_TABLE_LIMIT:
                d = self.digits(allv)
                self._add = self.from_digits(d[:, None, :] + d[None, :, :])
        self._zech_l = None
        if N <= _SCALAR_TABLE_LIMIT:
            self._exp_l = exp.tolist()
            self._log_l = log.tolist()
            if self._neg is not None:
                # Zech logarithms: g^z[k] = 1 + g^k, with -1 where 1 + g^k = 0
                one_plus = self.from_digits(self.digits(exp) + self.digits(1))
                self._zech_l = np.where(one_plus == 0, -1, log[one_plus]).tolist()
                self._neg_l = self._neg.tolist()
        else:
            self._exp_l = self._log_l = None

    # -- vectorized arithmetic ------------------------------------------------

    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.s == 1:
            return (np.asarray(a) + b) % self.p
        if self._add is not None:
            return self._add[a, b]
        return self.from_digits(self.digits(a) + self.digits(b))

    def neg(self, a):
        if self.p == 2:
            return np.asarray(a)
        if self.s == 1:
            return (-np.asarray(a)) % self.p
        return self._neg[a]

    def sub(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.s == 1:
            return (np.asarray(a) - b) % self.p
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if self.s == 1:
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[(self._log[a] + self._log[b]) % self.order]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % self.order]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if e < 0:
            a, e = self.inv(a), -e
        r = self._exp[(self._log[a] * (e % self.order)) % self.order]
        return np.where(a == 0, 0, r)

    def frob(self, a, q: int, i: int = 1):
        """a^(q^i), elementwise."""
        self.check_subfield_size(q)
        return self.power(a, pow(q, i, self.order) or self.order) if self.order > 1 else np.asarray(a)

    # -- scalar arithmetic (Python ints, used by polynomials) -----------------

    def sadd(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.s == 1:
            return (a + b) % self.p
        if self._zech_l is None:
            return int(self.add(a, b))
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log_l[a]
        z = self._zech_l[(self._log_l[b] - la) % self.order]
        return 0 if z < 0 else self._exp_l[(la + z) % self.order]

    def ssub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.s == 1:
            return (a - b) % self.p
        if self._zech_l is None:
            return int(self.sub(a, b))
        return self.sadd(a, self._neg_l[b])

    def sneg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.s == 1:
            return (-a) % self.p
        return int(self._neg[a])

    def smul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.s == 1:
            return (a * b) % self.p
        if self._exp_l is not None:
            return self._exp_l[(self._log_l[a] + self._log_l[b]) % self.order]
        return int(self.mul(a, b))

    def sinv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._exp_l is not None:
            return self._exp_l[(-self._log_l[a]) % self.order]
        return int(self.inv(a))

    def spow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self._exp_l is not None:
            return self._exp_l[(self._log_l[a] * e) % self.order]
        return int(self.power(a, e))

    # -- misc ------------------------------------------------------------------

    def check_subfield_size(self, q: int) -> int:
        """Return a with q = p^a, raising InvalidSubfield unless a divides s."""
        a = _int_log(self.p, q)
        if a is None or a == 0 or self.s % a:
            raise InvalidSubfield(f"q={q} is not a subfield size of F_{self.size}")
        return a

    def check(self, other: "FieldCtx"):
        if other is not self and other.key != self.key:
            raise CtxMismatch(f"{self.descriptor()} vs {other.descriptor()}")

    def descriptor(self) -> str:
        return f"p={self.p} s={self.s} mod={','.join(map(str, self.modulus))}"

    def random(self, rng, size=None, nonzero=False):
        lo = 1 if nonzero else 0
        return rng.integers(lo, self.size, size=size, dtype=np.int64)

    def __call__(self, v) -> "FieldElement":
        return FieldElement(self, int(v))

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FieldCtx({self.descriptor()})"


class FieldElement:
    """A single element bound to its field; a convenience wrapper around ints."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        if not 0 <= value < ctx.size:
            raise ValueError(f"{value} is not an element encoding of F_{ctx.size}")
        self.ctx = ctx
        self.value = value

    def _other(self, o) -> int:
        if isinstance(o, FieldElement):
            self.ctx.check(o.ctx)
            return o.value
        if isinstance(o, (int, np.integer)) and 0 <= o < self.ctx.size:
            return int(o)
        return NotImplemented

    def __add__(self, o):
        v = self._other(o)
        return v if v is NotImplemented else FieldElement(self.ctx, self.ctx.sadd(self.value, v))

    __radd__ = __add__

    def __sub__(self, o):
        v = self._other(o)
        return v if v is NotImplemented else FieldElement(self.ctx, self.ctx.ssub(self.value, v))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.sneg(self.value))

    def __mul__(self, o):
        v = self._other(o)
        return v if v is NotImplemented else FieldElement(self.ctx, self.ctx.smul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, o):
        v = self._other(o)
        if v is NotImplemented:
            return v
        return FieldElement(self.ctx, self.ctx.smul(self.value, self.ctx.sinv(v)))

    def __pow__(self, e: int):
        if e < 0:
            return FieldElement(self.ctx, self.ctx.spow(self.ctx.sinv(self.value), -e))
        return FieldElement(self.ctx, self.ctx.spow(self.value, e))

    def __eq__(self, o):
        if isinstance(o, FieldElement):
            return o.ctx == self.ctx and o.value == self.value
        if isinstance(o, (int, np.integer)):
            return self.value == o
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.key, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElement({self.value} in F_{self.ctx.size})"


def _lex_irreducible(p: int, s: int) -> tuple[int, ...]:
    from .poly import Poly, is_irreducible

    prime = field_new(p, 1)
    for v in range(p**s):
        low = [(v // p**i) % p for i in range(s)]
        if s > 1 and low[0] == 0:
            continue
        cand = tuple(low) + (1,)
        if is_irreducible(Poly(prime, cand)):
            return cand
    raise ReducibleModulus(f"no irreducible polynomial of degree {s} over F_{p}")  # pragma: no cover


def _check_params(p: int, s: int):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if s < 1:
        raise DegreeMismatch("extension degree must be at least 1")
    if p**s > MAX_FIELD_SIZE:
        raise ParamDomain(f"F_{p}^{s} exceeds the supported field size 2^24")


@lru_cache(maxsize=None)
def _default_modulus(p: int, s: int) -> tuple[int, ...]:
    _check_params(p, s)
    return (0, 1) if s == 1 else _lex_irreducible(p, s)


@lru_cache(maxsize=None)
def _field_cached(p: int, s: int, modulus: tuple[int, ...]) -> FieldCtx:
    _check_params(p, s)
    if len(modulus) != s + 1 or modulus[-1] != 1:
        raise DegreeMismatch(f"modulus must be monic of degree {s}")
    if any(not 0 <= c < p for c in modulus):
        raise DegreeMismatch("modulus coefficients must lie in [0, p)")
    if s > 1:
        from .poly import Poly, is_irreducible

        if not is_irreducible(Poly(field_new(p, 1), modulus)):
            raise ReducibleModulus(f"{modulus} is reducible over F_{p}")
    return FieldCtx(p, s, modulus)


def field_new(p: int, s: int, modulus=None) -> FieldCtx:
    """Return the field F_{p^s} defined by ``modulus`` (coefficients, constant first).

    Without a modulus the lexicographically smallest monic irreducible
    polynomial is chosen (ordered by its integer encoding), so contexts are
    reproducible.  Identical arguments return the same object.
    """
    p, s = int(p), int(s)
    mod = _default_modulus(p, s) if modulus is None else tuple(int(c) for c in modulus)
    return _field_cached(p, s, mod)


def parse_descriptor(text: str) -> FieldCtx:
    """Inverse of :meth:`FieldCtx.descriptor`."""
    parts = dict(tok.split("=", 1) for tok in text.split())
    mod = tuple(int(c) for c in parts["mod"].split(","))
    return field_new(int(parts["p"]), int(parts["s"]), mod)


def frobenius(x: FieldElement, q: int, i: int = 0) -> FieldElement:
    """x^(q^i)."""
    if i < 0:
        raise ValueError("i must be non-negative")
    x.ctx.check_subfield_size(q)
    return FieldElement(x.ctx, int(x.ctx.frob(x.value, q, i)))


class SubfieldCtx:
    """F_q inside ``big`` = F_{q^m}, with q = p^a.

    F_q is the fixed field of x -> x^q.  A standalone context ``small`` for F_q
    (modulus = minimal polynomial of a generator of F_q^*) carries codes over
    F_q; ``embed`` and ``restrict`` move elements between the two encodings.
    The F_q-basis of F_{q^m} is ``1, z, ..., z^{m-1}``.
    """

    def __init__(self, big: FieldCtx, a: int):
        if a < 1 or big.s % a:
            raise InvalidSubfield(f"a={a} does not divide s={big.s}")
        m = big.s // a
        if m < 2:
            raise ParamDomain("relative extension degree m must exceed 1")
        self.big, self.a, self.m = big, a, m
        self.p = big.p
        self.q = big.p**a
        p = big.p
        if a == 1:
            self.gamma = 1
            self.small = field_new(p, 1)
            self._embed = np.arange(p, dtype=np.int64)
        else:
            self.gamma = int(big.power(big.generator, big.order // (self.q - 1)))
            self.small = field_new(p, a, self._minpoly_over_prime(self.gamma))
            gpow = [big.spow(self.gamma, b) for b in range(a)]
            emb = np.zeros(self.q, dtype=np.int64)
            for v in range(self.q):
                acc = 0
                for b in range(a):
                    acc = big.sadd(acc, big.smul((v // p**b) % p, gpow[b]))
                emb[v] = acc
            self._embed = emb
        self._restrict = np.full(big.size, -1, dtype=np.int64)
        self._restrict[self._embed] = np.arange(self.q, dtype=np.int64)
        self.basis = [big.spow(p, j) if big.s > 1 else 1 for j in range(m)]
        # digits of gamma^b z^j, indexed t = j*a + b, form an F_p-basis of the big field
        rows = [
            big.digits(big.smul(big.spow(self.gamma, b), self.basis[j]))
            for j in range(m)
            for b in range(a)
        ]
        self._coord_matrix = _inverse_mod_p(np.array(rows, dtype=np.int64), p)
        gram = np.array(
            [[self.trace(big.smul(x, y)) for y in self.basis] for x in self.basis],
            dtype=np.int64,
        )
        from .fmatrix import FMatrix, rank

        if rank(FMatrix(self.small, gram)) != m:
            raise InvalidSubfield("basis fails the trace-form nondegeneracy check")  # pragma: no cover

    def _minpoly_over_prime(self, g: int) -> tuple[int, ...]:
        from .poly import Poly

        big = self.big
        poly = Poly(big, (1,))
        x = g
        for _ in range(self.a):
            poly = poly * Poly(big, (big.sneg(x), 1))
            x = big.spow(x, big.p)
        if any(c >= big.p for c in poly.coeffs):
            raise InvalidSubfield("minimal polynomial not over the prime field")  # pragma: no cover
        return tuple(poly.coeffs)

    def is_member(self, x) -> np.ndarray:
        """x in F_q  <=>  x^q == x."""
        x = np.asarray(x, dtype=np.int64)
        return self.big.frob(x, self.q, 1) == x

    def embed(self, v):
        return self._embed[np.asarray(v, dtype=np.int64)]

    def restrict(self, x):
        r = self._restrict[np.asarray(x, dtype=np.int64)]
        if np.any(r < 0):
            raise InvalidSubfield("element is not in the subfield")
        return r

    def trace_big(self, x):
        """Tr_{F_q^m/F_q}(x) as big-field encodings."""
        x = np.asarray(x, dtype=np.int64)
        acc = x.copy()
        cur = x
        for _ in range(1, self.m):
            cur = self.big.frob(cur, self.q, 1)
            acc = self.big.add(acc, cur)
        return acc

    def trace(self, x):
        """Tr_{F_q^m/F_q}(x) as encodings in ``small``."""
        return self.restrict(self.trace_big(x))

    def coords(self, x):
        """F_q-coordinates of x in the basis 1, z, ..., z^{m-1}; last axis has length m."""
        x = np.asarray(x, dtype=np.int64)
        d = self.big.digits(x)
        c = (d @ self._coord_matrix) % self.p
        c = c.reshape(x.shape + (self.m, self.a))
        return c @ np.array([self.p**b for b in range(self.a)], dtype=np.int64)

    def descriptor(self) -> str:
        return f"q={self.q} m={self.m} basis={','.join(map(str, self.basis))}"

    def __repr__(self):
        return f"SubfieldCtx({self.descriptor()} over {self.big.descriptor()})"


def _inverse_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    n = mat.shape[0]
    aug = np.concatenate([mat % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i, c])
        aug[[c, piv]] = aug[[piv, c]]
        aug[c] = (aug[c] * pow(int(aug[c, c]), -1, p)) % p
        for i in range(n):
            if i != c and aug[i, c]:
                aug[i] = (aug[i] - aug[i, c] * aug[c]) % p
    return aug[:, n:]


@lru_cache(maxsize=None)
def subfield_new(p: int, a: int, m: int, modulus=None) -> SubfieldCtx:
    """SubfieldCtx for F_{p^a} inside F_{p^(a m)}."""
    return SubfieldCtx(field_new(p, a * m, modulus), a)


def prime_power(q: int) -> tuple[int, int]:
    """(p, a) with q = p^a."""
    for p in range(2, q + 1):
        if q % p == 0:
            a = _int_log(p, q)
            if a is None or not is_prime(p):
                break
            return p, a
    raise InvalidSubfield(f"{q} is not a prime power")


def subfield_for(q: int, m: int) -> SubfieldCtx:
    """SubfieldCtx for F_q ⊂ F_{q^m} with the default modulus."""
    p, a = prime_power(q)
    return subfield_new(p, a, m)


def rel_trace(x: FieldElement, sub: SubfieldCtx) -> FieldElement:
    """Relative trace, returned as an element of the big field (it lies in F_q)."""
    sub.big.check(x.ctx)
    return FieldElement(sub.big, int(sub.trace_big(x.value)))
