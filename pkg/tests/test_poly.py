import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from squarecode.errors import DivisionByZeroPoly, RepeatedSupport
from squarecode.field import field_new, subfield_for
from squarecode.poly import (
    Poly,
    euclid_div,
    eval_vec,
    goppa_reduction_step,
    is_irreducible,
    is_squarefree,
    locator,
    locator_derivative_eval,
    parse_poly,
    poly_gcd,
    random_goppa_poly,
)

from .conftest import SMALL_FIELDS


def rand_poly(ctx, rng, deg):
    if deg < 0:
        return Poly(ctx)
    c = ctx.random(rng, deg + 1).tolist()
    c[-1] = int(ctx.random(rng, nonzero=True))
    return Poly(ctx, c)


def has_factor_of_degree(P, d):
    """Brute force: some monic degree-d polynomial divides P."""
    ctx = P.ctx
    for low in itertools.product(range(ctx.size), repeat=d):
        if euclid_div(P, Poly(ctx, list(low) + [1]))[1].is_zero():
            return True
    return False


class TestBasics:
    def test_canonical_strip(self):
        F = field_new(3, 1)
        P = Poly(F, [1, 2, 0, 0])
        assert P.deg == 1 and P.coeffs == (1, 2)
        assert Poly(F, [0, 0]).deg == -1

    def test_degree_additive(self, ctx, rng):
        a, b = rand_poly(ctx, rng, 3), rand_poly(ctx, rng, 5)
        assert (a * b).deg == 8

    def test_text_round_trip(self):
        F = field_new(2, 4)
        P = Poly(F, [3, 0, 7, 1])
        assert str(P) == "3,0,7,1"
        assert parse_poly(F, str(P)) == P
        assert parse_poly(F, "") == Poly(F)

    def test_scalar_multiplication(self):
        F = field_new(5, 1)
        assert Poly(F, [1, 2]) * 3 == Poly(F, [3, 1])

    def test_derivative(self):
        F = field_new(3, 1)
        # (z^3 + 2z^2 + z)' = 3z^2 + 4z + 1 = z + 1 over F_3
        assert Poly(F, [0, 1, 2, 1]).derivative() == Poly(F, [1, 1])


class TestEval:
    def test_constant_one(self):
        F = field_new(2, 3)
        x = np.arange(8)
        assert np.array_equal(eval_vec(Poly(F, [1]), x), np.ones(8))

    def test_identity(self):
        F = field_new(3, 2)
        x = np.arange(9)
        assert np.array_equal(eval_vec(Poly(F, [0, 1]), x), x)

    def test_z2_plus_1_over_f3(self):
        F = field_new(3, 1)
        assert eval_vec(Poly(F, [1, 0, 1]), [0, 1, 2]).tolist() == [1, 2, 2]

    def test_matches_power_sum(self, ctx, rng):
        P = rand_poly(ctx, rng, 4)
        x = ctx.random(rng, 20)
        acc = np.zeros(20, dtype=np.int64)
        for i, c in enumerate(P.coeffs):
            acc = ctx.add(acc, ctx.mul(c, ctx.power(x, i)))
        assert np.array_equal(eval_vec(P, x), acc)


class TestDivision:
    def test_self(self):
        F = field_new(2, 4)
        S = Poly(F, [3, 1, 1])
        A, B = euclid_div(S, S)
        assert A == Poly(F, [1]) and B.is_zero()

    def test_lower_degree(self):
        F = field_new(3, 1)
        P, S = Poly(F, [1, 1]), Poly(F, [1, 0, 1])
        A, B = euclid_div(P, S)
        assert A.is_zero() and B == P

    def test_z5_plus_1(self):
        F = field_new(2, 1)
        P, S = Poly(F, [1, 0, 0, 0, 0, 1]), Poly(F, [1, 1, 1])
        A, B = euclid_div(P, S)
        assert A * S + B == P and B.deg < 2
        assert B == Poly(F, [0, 1])  # z^5 = z^2 * z^3 = z^2 mod (z^2+z+1), so z^5 + 1 = z^2 + 1 = z

    def test_by_zero(self):
        F = field_new(2, 1)
        with pytest.raises(DivisionByZeroPoly):
            euclid_div(Poly(F, [1]), Poly(F))

    def test_gcd_of_multiples(self, ctx, rng):
        g = rand_poly(ctx, rng, 2).monic()
        a, b = g * rand_poly(ctx, rng, 3), g * rand_poly(ctx, rng, 2)
        assert euclid_div(poly_gcd(a, b), g)[1].is_zero()


class TestLocator:
    def test_single_zero(self):
        F = field_new(2, 3)
        assert locator(F, [0]) == Poly(F, [0, 1])
        assert locator_derivative_eval(F, [0]).tolist() == [1]

    def test_f2_pair(self):
        F = field_new(2, 1)
        P = locator(F, [0, 1])
        assert P == Poly(F, [0, 1, 1])
        assert P.derivative() == Poly(F, [1])
        assert locator_derivative_eval(F, [0, 1]).tolist() == [1, 1]

    def test_roots(self, ctx, rng):
        n = min(ctx.size, 7)
        x = rng.choice(ctx.size, n, replace=False)
        assert not eval_vec(locator(ctx, x), x).any()

    def test_derivative_product_form(self, rng):
        F = field_new(2, 3)
        x = rng.choice(8, 5, replace=False)
        d = eval_vec(locator(F, x).derivative(), x)
        assert np.array_equal(d, locator_derivative_eval(F, x))
        assert d.all()

    def test_repeated(self):
        F = field_new(3, 1)
        with pytest.raises(RepeatedSupport):
            locator(F, [1, 1])
        with pytest.raises(RepeatedSupport):
            locator_derivative_eval(F, [2, 2])


class TestFactorTests:
    def test_z_squared_not_squarefree(self, ctx):
        assert not is_squarefree(Poly(ctx, [0, 0, 1]))

    def test_z2_z_1_irreducible_f2(self):
        assert is_irreducible(Poly(field_new(2, 1), [1, 1, 1]))

    def test_pth_power_branch(self):
        F = field_new(2, 1)
        P = Poly(F, [0, 0, 1, 0, 1])  # z^4 + z^2, derivative 0
        assert P.derivative().is_zero()
        assert not is_squarefree(P)

    @pytest.mark.parametrize("ps,deg", [((2, 1), 4), ((3, 1), 3), ((2, 2), 3), ((5, 1), 2)])
    def test_irreducible_matches_brute_force(self, ps, deg):
        F = field_new(*ps)
        for low in itertools.product(range(F.size), repeat=deg):
            P = Poly(F, list(low) + [1])
            brute = not any(has_factor_of_degree(P, d) for d in range(1, deg // 2 + 1))
            assert is_irreducible(P) == brute, P

    @pytest.mark.parametrize("ps,deg", [((2, 1), 8), ((3, 1), 5), ((3, 2), 3), ((2, 2), 4)])
    def test_irreducible_count(self, ps, deg):
        # monic irreducibles of degree d over F_Q number (1/d) sum_{e|d} mu(d/e) Q^e
        F = field_new(*ps)
        Q = F.size

        def mu(k):
            out, f = 1, 2
            while f * f <= k:
                if k % f == 0:
                    k //= f
                    if k % f == 0:
                        return 0
                    out = -out
                f += 1
            return -out if k > 1 else out

        expected = sum(mu(deg // e) * Q**e for e in range(1, deg + 1) if deg % e == 0) // deg
        got = sum(
            is_irreducible(Poly(F, list(low) + [1]))
            for low in itertools.product(range(Q), repeat=deg)
        )
        assert got == expected

    @pytest.mark.parametrize("flavor", ["irreducible", "squarefree", "any", "unrestricted"])
    def test_random_goppa_poly(self, flavor):
        F = field_new(2, 4)
        P = random_goppa_poly(F, 3, flavor, 7)
        assert P.deg == 3 and P.lead == 1
        assert P == random_goppa_poly(F, 3, flavor, 7)
        if flavor == "irreducible":
            assert is_irreducible(P)
        if flavor == "squarefree":
            assert is_squarefree(P)


class TestReductionStep:
    def test_low_degree_passthrough(self):
        F = field_new(2, 4)
        gamma = Poly(F, [2, 1, 0, 1])
        P = Poly(F, [1, 5, 3])
        nxt, rem = goppa_reduction_step(P, gamma, 1, 2)
        assert nxt.is_zero() and rem == P

    def test_degree_drops(self, rng):
        sub = subfield_for(2, 4)
        F = sub.big
        gamma = random_goppa_poly(F, 3, "irreducible", rng)
        P = rand_poly(F, rng, 7)
        nxt, _ = goppa_reduction_step(P, gamma, 1, 2)
        assert 0 <= nxt.deg < 7

    def test_pointwise_trace_identity(self, rng):
        for q, m in ((2, 4), (3, 2), (4, 2)):
            sub = subfield_for(q, m)
            F = sub.big
            for v in (1, 2):
                gamma = random_goppa_poly(F, 2, "any", rng)
                pts = np.arange(F.size)
                pts = pts[eval_vec(gamma, pts) != 0]
                w = F.inv(F.power(eval_vec(gamma, pts), q**v + 1))
                P = rand_poly(F, rng, 2 * (q**v + 1) - 1)
                nxt, rem = goppa_reduction_step(P, gamma, v, q)
                tr = lambda R: sub.trace_big(F.mul(eval_vec(R, pts), w))
                assert np.array_equal(tr(P), F.add(tr(nxt), tr(rem)))

    def test_zero_gamma(self):
        F = field_new(2, 2)
        with pytest.raises(DivisionByZeroPoly):
            goppa_reduction_step(Poly(F, [1]), Poly(F), 1, 2)


@given(st.sampled_from(SMALL_FIELDS), st.integers(-1, 8), st.integers(0, 5), st.integers(0, 2**32 - 1))
def test_division_recombines(ps, dp, ds, seed):
    F = field_new(*ps)
    rng = np.random.default_rng(seed)
    P, S = rand_poly(F, rng, dp), rand_poly(F, rng, ds)
    A, B = euclid_div(P, S)
    assert A * S + B == P
    assert B.deg < S.deg


@given(st.sampled_from([(2, 4), (3, 2), (2, 3)]), st.integers(1, 3), st.integers(1, 2), st.integers(0, 2**32 - 1))
def test_reduction_iterates_to_zero(qm, r, v, seed):
    sub = subfield_for(*qm)
    F, q = sub.big, sub.q
    rng = np.random.default_rng(seed)
    gamma = random_goppa_poly(F, r, "any", rng)
    P = rand_poly(F, rng, int(rng.integers(0, r * (q**v + 1))))
    steps, cur = 0, P
    while True:
        nxt, _ = goppa_reduction_step(cur, gamma, v, q)
        if nxt.is_zero():
            break
        assert nxt.deg < cur.deg
        cur = nxt
        steps += 1
    assert steps <= max(P.deg, 0)
