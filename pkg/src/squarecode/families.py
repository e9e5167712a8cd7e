"""GRS, alternant, Goppa and B_v code constructors, plus seeded instance sampling."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .codes import LinearCode, dual, frobenius_code, star_product, subfield_subcode, trace_code
from .errors import BadDegree, GammaVanishesOnSupport, InvalidSubfield, ParamDomain, RepeatedSupport
from .field import FieldCtx, SubfieldCtx, field_new, prime_power, subfield_for
from .fmatrix import FMatrix
from .poly import Poly, eval_vec, locator_derivative_eval, parse_poly, random_goppa_poly

FAMILIES = ("grs", "alternant", "goppa")


@dataclass(frozen=True, eq=False)
class SupportMultiplier:
    ctx: FieldCtx
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.int64)
        y = np.asarray(self.y, dtype=np.int64)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        if x.shape != y.shape or x.ndim != 1:
            raise ParamDomain("support and multiplier must be vectors of equal length")
        if len(np.unique(x)) != len(x):
            raise RepeatedSupport("support entries must be pairwise distinct")
        if np.any(y == 0):
            raise ParamDomain("multiplier entries must be nonzero")
        if len(x) > self.ctx.size:
            raise ParamDomain("n exceeds the field size")

    @property
    def n(self) -> int:
        return len(self.x)

    def with_multiplier(self, y) -> "SupportMultiplier":
        return SupportMultiplier(self.ctx, self.x, y)

    def y_power(self, e: int) -> np.ndarray:
        return self.ctx.power(self.y, e)


@dataclass(frozen=True, eq=False)
class GoppaInstance:
    ctx: FieldCtx
    x: np.ndarray
    gamma: Poly

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.int64)
        object.__setattr__(self, "x", x)
        if self.gamma.deg < 1:
            raise BadDegree("Goppa polynomial must have degree at least 1")
        if len(np.unique(x)) != len(x):
            raise RepeatedSupport("support entries must be pairwise distinct")
        if np.any(eval_vec(self.gamma, x) == 0):
            raise GammaVanishesOnSupport("Γ vanishes on the support")

    @property
    def r(self) -> int:
        return self.gamma.deg

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def y(self) -> np.ndarray:
        return self.ctx.inv(eval_vec(self.gamma, self.x))

    def support_multiplier(self) -> SupportMultiplier:
        return SupportMultiplier(self.ctx, self.x, self.y)


@dataclass(frozen=True)
class FamilyParams:
    family: str
    q: int
    m: int
    n: int
    r: int
    seed: int = 0
    flavor: str = "irreducible"

    def validate(self) -> "FamilyParams":
        if self.family not in FAMILIES:
            raise ParamDomain(f"unknown family {self.family!r}")
        if self.q < 2 or self.m < 1:
            raise ParamDomain("need q >= 2 and m >= 1")
        try:
            prime_power(self.q)
        except InvalidSubfield as exc:
            raise ParamDomain(str(exc)) from None
        if self.n < 1 or self.n > self.q**self.m:
            raise ParamDomain(f"need 1 <= n <= q^m = {self.q**self.m}")
        if self.r < 1:
            raise ParamDomain("need r >= 1")
        if self.family == "grs":
            if self.r > self.n:
                raise ParamDomain("GRS dimension exceeds n")
        else:
            if self.m < 2:
                raise ParamDomain("alternant and Goppa codes need m > 1")
            if self.r * self.m >= self.n:
                raise ParamDomain(f"need rm < n (r={self.r}, m={self.m}, n={self.n})")
        return self


def grs(r: int, sm: SupportMultiplier) -> LinearCode:
    """GRS_r(x, y): rows x^a * y for 0 <= a < r."""
    if not 1 <= r <= sm.n:
        raise BadDegree(f"GRS dimension r={r} must satisfy 1 <= r <= n={sm.n}")
    ctx = sm.ctx
    rows = np.empty((r, sm.n), dtype=np.int64)
    cur = sm.y.copy()
    for a in range(r):
        rows[a] = cur
        cur = ctx.mul(cur, sm.x)
    return LinearCode(ctx, sm.n, FMatrix(ctx, rows))


def dual_multiplier(sm: SupportMultiplier) -> np.ndarray:
    """y^⊥ with y^⊥_i = 1 / (π'_x(x_i) y_i)."""
    ctx = sm.ctx
    return ctx.inv(ctx.mul(locator_derivative_eval(ctx, sm.x), sm.y))


def _alternant(r: int, sm: SupportMultiplier, sub: SubfieldCtx) -> tuple[LinearCode, bool]:
    # degrees at or beyond n saturate: GRS_n is the full space and the alternant code is zero
    saturated = r >= sm.n
    C = grs(min(r, sm.n), sm)
    return subfield_subcode(dual(C), sub), saturated


def alternant(r: int, sm: SupportMultiplier, sub: SubfieldCtx) -> LinearCode:
    """Alt_r(x, y) = GRS_r(x, y)^⊥ ∩ F_q^n."""
    sub.big.check(sm.ctx)
    if r < 1 or r * sub.m >= sm.n:
        raise ParamDomain(f"alternant degree needs 1 <= r and rm < n (r={r}, m={sub.m}, n={sm.n})")
    return _alternant(r, sm, sub)[0]


def dual_alternant(r: int, sm: SupportMultiplier, sub: SubfieldCtx) -> tuple[LinearCode, bool]:
    """Alt_r(x, y)^⊥ for any r >= 1, with a flag set when r >= n saturates."""
    sub.big.check(sm.ctx)
    if r < 1:
        raise ParamDomain("alternant degree must be at least 1")
    A, saturated = _alternant(r, sm, sub)
    return dual(A), saturated


def goppa(gi: GoppaInstance, sub: SubfieldCtx) -> LinearCode:
    """Γ(x) Goppa code = Alt_r(x, 1/Γ(x)); no rm < n requirement."""
    sub.big.check(gi.ctx)
    return _alternant(gi.r, gi.support_multiplier(), sub)[0]


def b_degree(v: int, r: int, q: int) -> int:
    """Alternant degree defining B_v."""
    if v < 0:
        raise ParamDomain("v must be non-negative")
    if v == 0:
        return 2 * r - 1
    return r * (q**v - q ** (v - 1) + 1)


def b_code(v: int, gi: GoppaInstance, sub: SubfieldCtx, with_flag: bool = False):
    """B_v = Alt_{deg_v}(x, y^(q^v+1))^⊥ (B_0 uses degree 2r-1 and y^2)."""
    sm = gi.support_multiplier()
    e = 2 if v == 0 else sub.q**v + 1
    code, saturated = dual_alternant(b_degree(v, gi.r, sub.q), sm.with_multiplier(sm.y_power(e)), sub)
    return (code, saturated) if with_flag else code


def trace_product_code(C: LinearCode, u: int, sub: SubfieldCtx) -> LinearCode:
    """Tr(C * C^(q^u))."""
    if not 0 <= u <= sub.m:
        raise ParamDomain(f"u must lie in [0, m]; got {u}")
    return trace_code(star_product(C, frobenius_code(C, sub.q, u)), sub)


def trace_product_degree(r: int, q: int, u: int) -> int:
    """Degree (r-1)(q^u+1)+1 of the dual alternant code containing Tr(C * C^(q^u))."""
    return (r - 1) * (q**u + 1) + 1


# -- sampling -----------------------------------------------------------------


def derive_seed(master: int, index: int) -> int:
    """64-bit per-trial seed; stable when trial counts grow."""
    h = hashlib.blake2b(f"{master}:{index}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "little")


def sample_support(ctx: FieldCtx, n: int, rng) -> np.ndarray:
    if n > ctx.size:
        raise ParamDomain("n exceeds the field size")
    return rng.choice(ctx.size, size=n, replace=False).astype(np.int64)


def sample_support_multiplier(ctx: FieldCtx, n: int, rng) -> SupportMultiplier:
    x = sample_support(ctx, n, rng)
    y = ctx.random(rng, size=n, nonzero=True)
    return SupportMultiplier(ctx, x, y)


def sample_goppa(ctx: FieldCtx, n: int, r: int, rng, flavor: str = "irreducible", max_tries: int = 1000) -> GoppaInstance:
    """Random support plus a Goppa polynomial resampled until it has no root on the support."""
    x = sample_support(ctx, n, rng)
    for _ in range(max_tries):
        gamma = random_goppa_poly(ctx, r, flavor, rng)
        if not np.any(eval_vec(gamma, x) == 0):
            return GoppaInstance(ctx, x, gamma)
    raise ParamDomain(f"no degree-{r} Goppa polynomial avoiding the support after {max_tries} tries")


@dataclass(eq=False)
class Instance:
    """A sampled family instance together with the fields it lives in."""

    params: FamilyParams
    sub: SubfieldCtx | None
    ctx: FieldCtx
    sm: SupportMultiplier
    gi: GoppaInstance | None = None
    notes: dict = field(default_factory=dict)

    def grs_code(self) -> LinearCode:
        return grs(self.params.r, self.sm)

    def public_code(self) -> LinearCode:
        """The code handed to the distinguisher (its dual is the structured code)."""
        p = self.params
        if p.family == "grs":
            return dual(self.grs_code())
        if p.family == "alternant":
            return alternant(p.r, self.sm, self.sub)
        return goppa(self.gi, self.sub)


def field_for(q: int, m: int):
    """(F_{q^m}, the F_q ⊂ F_{q^m} pair or None when m == 1)."""
    p, a = prime_power(q)
    if m == 1:
        return field_new(p, a), None
    sub = subfield_for(q, m)
    return sub.big, sub


def sample_instance(fp: FamilyParams) -> Instance:
    """Deterministic instance from ``fp.seed``.

    GRS instances live over F_{q^m} itself (q and m only fix the field size).
    """
    fp.validate()
    big, sub = field_for(fp.q, fp.m)
    if fp.family == "grs":
        sub = None
    rng = np.random.default_rng(fp.seed)
    if fp.family == "goppa":
        gi = sample_goppa(big, fp.n, fp.r, rng, fp.flavor)
        return Instance(fp, sub, big, gi.support_multiplier(), gi)
    return Instance(fp, sub, big, sample_support_multiplier(big, fp.n, rng))


# -- instance descriptor files ---------------------------------------------------


def format_instance(inst: Instance) -> str:
    p = inst.params
    lines = [
        f"family={p.family} q={p.q} m={p.m} n={p.n} r={p.r} seed={p.seed}",
        inst.ctx.descriptor(),
        "x=" + ",".join(map(str, inst.sm.x.tolist())),
        "y=" + ",".join(map(str, inst.sm.y.tolist())),
    ]
    if inst.gi is not None:
        lines.append(f"gamma={inst.gi.gamma}")
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> Instance:
    from .field import parse_descriptor

    lines = text.splitlines()
    head = dict(tok.split("=", 1) for tok in lines[0].split())
    fp = FamilyParams(
        head["family"], int(head["q"]), int(head["m"]), int(head["n"]), int(head["r"]), int(head["seed"])
    )
    ctx = parse_descriptor(lines[1])
    body = dict(ln.split("=", 1) for ln in lines[2:] if ln)
    x = np.array([int(t) for t in body["x"].split(",")], dtype=np.int64)
    y = np.array([int(t) for t in body["y"].split(",")], dtype=np.int64)
    sub = None
    if fp.family != "grs":
        sub = SubfieldCtx(ctx, ctx.check_subfield_size(fp.q))
    gi = None
    if "gamma" in body:
        gi = GoppaInstance(ctx, x, parse_poly(ctx, body["gamma"]))
    return Instance(fp, sub, ctx, SupportMultiplier(ctx, x, y), gi)


def write_instance(inst: Instance, path):
    Path(path).write_text(format_instance(inst))


def read_instance(path) -> Instance:
    return parse_instance(Path(path).read_text())
