"""Seeded property suites: each checks structural identities on random small instances."""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, comb

import numpy as np

from .codes import (
    LinearCode,
    dual,
    frobenius_code,
    square,
    star_product,
    subfield_subcode,
    sum_codes,
    trace_code,
)
from .distinguisher import (
    BoundInputs,
    argmax_alternant_T,
    argmax_goppa_T,
    bound_for,
    e_alternant,
    e_goppa,
    is_distinguishable,
    max_e,
    lp_identity_check,
    random_expected_dim,
    random_square_dim,
)
from .errors import UnknownSuite
from .experiments import expected_dual_dim, run_trial
from .families import (
    FamilyParams,
    GoppaInstance,
    alternant,
    b_code,
    derive_seed,
    dual_multiplier,
    goppa,
    grs,
    trace_product_degree,
    dual_alternant,
    sample_goppa,
    sample_support_multiplier,
    trace_product_code,
)
from .field import subfield_for
from .poly import Poly, eval_vec, goppa_reduction_step, random_goppa_poly

DEFAULT_SEED = 1
TIGHTNESS_FRACTION = 0.9


@dataclass
class PropertyResult:
    suite: str
    name: str
    passed: int = 0
    total: int = 0
    hard: bool = True

    def record(self, ok: bool):
        self.total += 1
        self.passed += bool(ok)

    @property
    def needed(self) -> int:
        return self.total if self.hard else ceil(TIGHTNESS_FRACTION * self.total)

    @property
    def ok(self) -> bool:
        return self.passed >= self.needed

    def line(self) -> str:
        kind = "hard" if self.hard else "statistical"
        status = "PASS" if self.ok else "FAIL"
        return f"{self.suite} {self.name} {self.passed}/{self.total} {kind} {status}"


class _Ledger:
    def __init__(self, suite: str):
        self.suite = suite
        self.props: dict[str, PropertyResult] = {}

    def __call__(self, name: str, ok: bool, hard: bool = True):
        if name not in self.props:
            self.props[name] = PropertyResult(self.suite, name, hard=hard)
        self.props[name].record(ok)

    def results(self) -> list[PropertyResult]:
        return list(self.props.values())


def _rng(seed: int, i: int):
    return np.random.default_rng(derive_seed(seed, i))


def random_code(ctx, n: int, k: int, rng) -> LinearCode:
    return LinearCode.from_rows(ctx, ctx.random(rng, size=(k, n)), n)


def _floor_log(q: int, r: int) -> int:
    f = 0
    while q ** (f + 1) <= r:
        f += 1
    return f


# -- suites --------------------------------------------------------------------


def suite_delsarte(seed: int, trials: int):
    led = _Ledger("delsarte")
    subs = [subfield_for(3, 2), subfield_for(2, 4)]
    for i in range(trials):
        rng = _rng(seed, i)
        sub = subs[i % 2]
        n = int(rng.integers(4, 15))
        k = int(rng.integers(1, n))
        C = random_code(sub.big, n, k, rng)
        led("dual-of-subcode-is-trace-of-dual", dual(subfield_subcode(C, sub)) == trace_code(dual(C), sub))
        led("dual-involution", dual(dual(C)) == C)
    return led.results()


def suite_grs(seed: int, trials: int):
    led = _Ledger("grs")
    big = subfield_for(2, 6).big
    sub4 = subfield_for(2, 4)
    sub5 = subfield_for(2, 5)
    for i in range(trials):
        rng = _rng(seed, i)
        n, k = 40, 8
        sm = sample_support_multiplier(big, n, rng)
        C = grs(k, sm)
        S = square(C)
        led("square-dim-2k-1", S.k == 2 * k - 1)
        led("square-is-grs-y2", S == grs(2 * k - 1, sm.with_multiplier(sm.y_power(2))))
        led("dual-is-grs", dual(C) == grs(n - k, sm.with_multiplier(dual_multiplier(sm))))

        r = 2 + i % 2
        sm4 = sample_support_multiplier(sub4.big, 16, rng)
        led("dual-alternant-is-trace-grs", dual(alternant(r, sm4, sub4)) == trace_code(grs(r, sm4), sub4))

        gi = sample_goppa(sub5.big, 32, 3, rng, "irreducible")
        G = goppa(gi, sub5)
        sm5 = gi.support_multiplier()
        led("binary-goppa-doubling", G == alternant(6, sm5.with_multiplier(sm5.y_power(2)), sub5))
        led("binary-goppa-gamma-squared", G == goppa(GoppaInstance(gi.ctx, gi.x, gi.gamma * gi.gamma), sub5))
    return led.results()


def suite_trace_products(seed: int, trials: int):
    led = _Ledger("trace-products")
    sub = subfield_for(2, 4)
    q, m, n = sub.q, sub.m, 16
    for i in range(trials):
        rng = _rng(seed, i)
        r = (2, 3, 4)[i % 3]
        sm = sample_support_multiplier(sub.big, n, rng)
        C = grs(r, sm)
        T = [trace_product_code(C, u, sub) for u in range(m + 1)]
        led("frobenius-symmetry", all(T[u] == T[m - u] for u in range(m + 1)))
        trC = trace_code(C, sub)
        sq = square(trC)
        led("square-in-trace-products", sum_codes(T[: m // 2 + 1]).contains(sq))
        led("middle-product-dim", T[m // 2].k <= m * r * r // 2)
        led("square-trace-dim-bound", sq.k <= m * square(C).k + comb(m, 2) * r * r)

        D = grs(int(rng.integers(1, 5)), sample_support_multiplier(sub.big, n, rng).with_multiplier(sm.y))
        D = LinearCode(D.ctx, n, D.basis)
        lhs = star_product(trC, trace_code(D, sub))
        rhs = sum_codes(trace_code(star_product(C, frobenius_code(D, q, j)), sub) for j in range(m))
        led("product-of-traces-inclusion", rhs.contains(lhs))

        f = _floor_log(q, r)
        for u in range(m + 1):
            deg = trace_product_degree(r, q, u)
            A, _ = dual_alternant(deg, sm.with_multiplier(sm.y_power(1 + q**u)), sub)
            led("trace-product-in-alternant-dual", A.contains(T[u]))
            if u <= f:
                led("trace-product-equals-alternant-dual", A == T[u])
    return led.results()


ALT_BOUND_SETS = (
    ("alternant", 2, 6, 64, 3),
    ("alternant", 3, 4, 81, 3),
    ("goppa", 3, 4, 81, 3),
    ("goppa", 5, 3, 125, 3),
    ("goppa", 2, 6, 64, 4),
)


def suite_alternant_bounds(seed: int, trials: int):
    led = _Ledger("alternant-bounds")
    for family, q, m, n, r in ALT_BOUND_SETS:
        tag = f"{family}-q{q}-m{m}-n{n}-r{r}"
        for i in range(trials):
            fp = FamilyParams(family, q, m, n, r, derive_seed(seed, i))
            rep = run_trial(fp)
            raw = bound_for(BoundInputs(q, m, r, n, family)).raw
            led("sound", rep.measured_dim <= raw)
            if rep.dual_dim == expected_dual_dim(fp):
                led(f"tight[{tag}]", rep.measured_dim == rep.predicted_dim, hard=False)
    for q in (2, 3, 4, 5, 7):
        for m in range(2, 14):
            for r in range(2, 60):
                cap = max_e(m)
                cap2 = m // 2
                led("argmax-alternant", argmax_alternant_T(q, r, cap) == min(e_alternant(q, r), cap))
                led("argmax-alternant-half-m", argmax_alternant_T(q, r, cap2) == min(e_alternant(q, r), cap2))
                # the Goppa optimization only applies in the r >= q-1 branch
                if r >= q - 1:
                    led("argmax-goppa", argmax_goppa_T(q, r, cap) == min(e_goppa(q, r), cap))
                    led("argmax-goppa-half-m", argmax_goppa_T(q, r, cap2) == min(e_goppa(q, r), cap2))
                n = q**m
                if r * m >= n:
                    continue
                for family in ("alternant", "goppa"):
                    b = BoundInputs(q, m, r, n, family)
                    if is_distinguishable(b):
                        led("deficiency-positive", random_expected_dim(b) - bound_for(b).value > 0)
    return led.results()


def suite_goppa_chain(seed: int, trials: int):
    led = _Ledger("goppa-chain")
    sub = subfield_for(2, 4)
    q, m, n = sub.q, sub.m, 16
    for i in range(trials):
        rng = _rng(seed, i)
        r = (2, 4)[i % 2]
        gi = sample_goppa(sub.big, n, r, rng)
        C = grs(r, gi.support_multiplier())
        eG = e_goppa(q, r)
        top = max(m // 2, eG)
        B = [b_code(v, gi, sub) for v in range(top + 1)]
        T = [trace_product_code(C, u, sub) for u in range(top + 1)]
        f = _floor_log(q, r)
        led("equality-below-f", all(T[u] == B[u] for u in range(f + 1)))
        led("inclusion", all(B[v].contains(T[v]) for v in range(1, top + 1)))
        led("chain", all(B[v + 1].contains(B[v]) for v in range(m // 2)))
        led("top-equals-sum", B[eG] == sum_codes(T[: eG + 1]), hard=False)
    return led.results()


def reduction_chain_check(ctx, sub, r: int, v: int, rng):
    """Random (P, Γ, v); returns (trace-identity held at every step, degrees decreased)."""
    q = sub.q
    gamma = random_goppa_poly(ctx, r, "any", rng)
    pts = np.arange(ctx.size, dtype=np.int64)
    pts = pts[eval_vec(gamma, pts) != 0]
    denom = ctx.inv(ctx.power(eval_vec(gamma, pts), q**v + 1))
    bound = r * (q**v + 1)
    P = Poly(ctx, ctx.random(rng, size=int(rng.integers(1, bound + 1))).tolist())

    def tr(F):
        return sub.trace_big(ctx.mul(eval_vec(F, pts), denom))

    target = tr(P)
    acc = np.zeros_like(target)
    identity_ok = decrease_ok = True
    cur = P
    for _ in range(bound + 1):
        nxt, rem = goppa_reduction_step(cur, gamma, v, q)
        identity_ok &= bool(np.array_equal(tr(cur), ctx.add(tr(nxt), tr(rem))))
        acc = ctx.add(acc, tr(rem))
        if nxt.is_zero():
            break
        decrease_ok &= nxt.deg < cur.deg
        cur = nxt
    else:
        decrease_ok = False
    identity_ok &= bool(np.array_equal(acc, target))
    return identity_ok, decrease_ok


def suite_reduction(seed: int, trials: int):
    led = _Ledger("lemma62")
    subs = [subfield_for(2, 4), subfield_for(3, 2), subfield_for(2, 5)]
    for i in range(trials):
        rng = _rng(seed, i)
        sub = subs[i % len(subs)]
        r = int(rng.integers(1, 4))
        v = int(rng.integers(1, 3))
        ident, dec = reduction_chain_check(sub.big, sub, r, v, rng)
        led("trace-identity", ident)
        led("degree-decrease", dec)
    return led.results()


LP_SETS = (
    ("goppa", 2, 5, 32, 3),
    ("alternant", 3, 3, 27, 2),
    ("goppa", 3, 4, 81, 3),
    ("alternant", 2, 6, 64, 4),
)


def suite_lp_identity(seed: int, trials: int):
    led = _Ledger("mp12")
    from .families import sample_instance

    for i in range(trials):
        family, q, m, n, r = LP_SETS[i % len(LP_SETS)]
        C = sample_instance(FamilyParams(family, q, m, n, r, derive_seed(seed, i))).public_code()
        led("structured", lp_identity_check(C).consistent)
        rng = _rng(seed, i)
        for ctx, n_, k_ in ((subfield_for(3, 2).small, 20, 14), (subfield_for(2, 4).small, 30, 22)):
            led("unstructured", lp_identity_check(random_code(ctx, n_, k_, rng)).consistent)
    return led.results()


def suite_random_baseline(seed: int, trials: int):
    led = _Ledger("random-baseline")
    f2 = subfield_for(2, 4).small
    f3 = subfield_for(3, 2).small
    for i in range(trials):
        rng = _rng(seed, i)
        C = random_code(f2, 300, 20, rng)
        led("full-rank-sample", C.k == 20, hard=False)
        led("square-dim-210", square(C).k == random_square_dim(300, 20), hard=False)
        for ctx in (f2, f3):
            n = int(rng.integers(5, 60))
            k = int(rng.integers(1, n))
            D = random_code(ctx, n, k, rng)
            led("square-dim-upper-bound", square(D).k <= random_square_dim(n, D.k))
    return led.results()


SUITES = {
    "delsarte": (suite_delsarte, 20),
    "grs": (suite_grs, 10),
    "trace-products": (suite_trace_products, 10),
    "alternant-bounds": (suite_alternant_bounds, 10),
    "goppa-chain": (suite_goppa_chain, 10),
    "lemma62": (suite_reduction, 20),
    "mp12": (suite_lp_identity, 10),
    "random-baseline": (suite_random_baseline, 10),
}


def run_suite(name: str, seed: int = DEFAULT_SEED, trials: int | None = None) -> list[PropertyResult]:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn, default_trials = SUITES[name]
    return fn(seed, default_trials if trials is None else trials)
