import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from squarecode.codes import (
    LinearCode,
    code_rank,
    dual,
    format_code,
    frobenius_code,
    intersect_code,
    parse_code,
    read_code,
    square,
    star_product,
    subfield_subcode,
    sum_code,
    sum_codes,
    trace_code,
    write_code,
)
from squarecode.errors import CtxMismatch, InvalidSubfield, ShapeMismatch
from squarecode.field import field_new, subfield_for
from squarecode.fmatrix import FMatrix, mat_mul, transpose

from .conftest import SMALL_FIELDS, SUBFIELD_PAIRS


def random_code(ctx, rng, n, k):
    return LinearCode.from_rows(ctx, ctx.random(rng, (k, n)), n)


def codewords(C):
    ctx = C.ctx
    out = set()
    for coefs in itertools.product(range(ctx.size), repeat=C.k):
        v = np.zeros(C.n, dtype=np.int64)
        for c, row in zip(coefs, C.basis.data):
            v = ctx.add(v, ctx.mul(c, row))
        out.add(tuple(v.tolist()))
    return out


class TestLinearCode:
    def test_canonical_equality(self, ctx, rng):
        C = random_code(ctx, rng, 8, 4)
        T = FMatrix(ctx, [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1]])
        D = LinearCode(ctx, 8, mat_mul(T, C.basis))
        assert D == C and hash(D) == hash(C)

    def test_zero_and_full(self, ctx):
        assert LinearCode.zero(ctx, 5).k == 0
        assert LinearCode.full(ctx, 5).k == 5
        assert LinearCode.full(ctx, 5).contains(LinearCode.zero(ctx, 5))

    def test_shape_checked(self):
        F = field_new(2, 1)
        with pytest.raises(ShapeMismatch):
            LinearCode(F, 4, FMatrix.identity(F, 3))

    def test_length_zero(self):
        F = field_new(3, 1)
        C = LinearCode.zero(F, 0)
        assert dual(C).k == 0 and square(C).k == 0


class TestDual:
    def test_full_space(self, ctx):
        assert dual(LinearCode.full(ctx, 4)).k == 0

    def test_repetition(self):
        F = field_new(2, 1)
        D = dual(LinearCode.from_rows(F, [[1, 1, 1]]))
        assert D.k == 2 and D == LinearCode.from_rows(F, [[1, 1, 0], [0, 1, 1]])

    def test_orthogonal_and_involutive(self, ctx, rng):
        C = random_code(ctx, rng, 9, 4)
        D = dual(C)
        assert D.k == 9 - C.k
        assert not mat_mul(C.basis, transpose(D.basis)).data.any()
        fresh = LinearCode(ctx, 9, C.basis)
        assert dual(dual(fresh)) == fresh


class TestStar:
    def test_all_ones_identity(self, ctx, rng):
        C = random_code(ctx, rng, 7, 3)
        one = LinearCode.from_rows(ctx, [[1] * 7])
        assert star_product(C, one) == C

    def test_zero(self, ctx, rng):
        assert star_product(random_code(ctx, rng, 6, 2), LinearCode.zero(ctx, 6)).k == 0

    def test_commutative(self, ctx, rng):
        C, D = random_code(ctx, rng, 10, 3), random_code(ctx, rng, 10, 2)
        assert star_product(C, D) == star_product(D, C)

    def test_square_is_self_product(self, ctx, rng):
        C = random_code(ctx, rng, 12, 3)
        assert square(C) == star_product(C, C)

    def test_dim_one(self, ctx, rng):
        C = LinearCode.from_rows(ctx, [ctx.random(rng, 6, nonzero=True)])
        assert square(C).k == 1

    @pytest.mark.parametrize("ps", [(2, 1), (3, 1), (2, 2)])
    def test_generators_span_all_products(self, ps, rng):
        F = field_new(*ps)
        C, D = random_code(F, rng, 6, 2), random_code(F, rng, 6, 2)
        prods = {tuple(F.mul(np.array(c), np.array(d)).tolist()) for c in codewords(C) for d in codewords(D)}
        E = LinearCode.from_rows(F, np.array(sorted(prods)), 6)
        assert E == star_product(C, D)

    def test_random_binary_square(self, rng):
        F = field_new(2, 1)
        hits = sum(square(random_code(F, rng, 100, 10)).k == 55 for _ in range(5))
        assert hits >= 4

    def test_mismatch(self):
        with pytest.raises(CtxMismatch):
            star_product(LinearCode.full(field_new(2, 1), 3), LinearCode.full(field_new(3, 1), 3))
        with pytest.raises(ShapeMismatch):
            star_product(LinearCode.full(field_new(2, 1), 3), LinearCode.full(field_new(2, 1), 4))


class TestFrobenius:
    def test_identity_cases(self, sub, rng):
        C = random_code(sub.big, rng, 6, 3)
        assert frobenius_code(C, sub.q, 0) == C
        assert frobenius_code(C, sub.q, sub.m) == C
        assert frobenius_code(C, sub.q, 1).k == C.k

    def test_invalid(self):
        C = LinearCode.full(field_new(2, 4), 2)
        with pytest.raises(InvalidSubfield):
            frobenius_code(C, 8, 1)


class TestTraceAndSubcode:
    def test_zero(self, sub):
        assert trace_code(LinearCode.zero(sub.big, 5), sub).k == 0
        assert subfield_subcode(LinearCode.zero(sub.big, 5), sub).k == 0

    def test_full(self, sub):
        assert trace_code(LinearCode.full(sub.big, 5), sub) == LinearCode.full(sub.small, 5)
        assert subfield_subcode(LinearCode.full(sub.big, 5), sub) == LinearCode.full(sub.small, 5)

    def test_trace_dim_bound(self, sub, rng):
        C = random_code(sub.big, rng, 12, 2)
        assert trace_code(C, sub).k <= min(12, 2 * sub.m)

    def test_subcode_is_intersection(self, rng):
        sub = subfield_for(2, 2)
        C = random_code(sub.big, rng, 5, 3)
        words = codewords(C)
        inside = {w for w in words if sub.is_member(np.array(w)).all()}
        S = subfield_subcode(C, sub)
        assert len(inside) == sub.q**S.k
        assert {tuple(sub.embed(np.array(w)).tolist()) for w in codewords(S)} == inside

    @pytest.mark.parametrize("qm", SUBFIELD_PAIRS)
    def test_delsarte(self, qm, rng):
        sub = subfield_for(*qm)
        for _ in range(3):
            n = int(rng.integers(3, 13))
            C = random_code(sub.big, rng, n, int(rng.integers(1, n)))
            assert dual(subfield_subcode(C, sub)) == trace_code(dual(C), sub)

    def test_ctx_mismatch(self):
        sub = subfield_for(2, 4)
        with pytest.raises(CtxMismatch):
            trace_code(LinearCode.full(field_new(2, 3), 3), sub)


class TestSumIntersect:
    def test_with_zero(self, ctx, rng):
        C = random_code(ctx, rng, 7, 3)
        assert sum_code(C, LinearCode.zero(ctx, 7)) == C

    def test_self_intersection(self, ctx, rng):
        C = random_code(ctx, rng, 7, 3)
        assert intersect_code(C, C) == C

    def test_modular_law(self, ctx, rng):
        C, D = random_code(ctx, rng, 9, 5), random_code(ctx, rng, 9, 6)
        assert sum_code(C, D).k + intersect_code(C, D).k == C.k + D.k

    def test_sum_codes_and_rank(self, ctx, rng):
        cs = [random_code(ctx, rng, 8, 1) for _ in range(3)]
        S = sum_codes(cs)
        assert all(S.contains(c) for c in cs) and code_rank(S) == S.k


class TestCodeFiles:
    def test_round_trip(self, tmp_path, sub, rng):
        C = random_code(sub.big, rng, 9, 4)
        path = tmp_path / "c.txt"
        write_code(C, path, q=sub.q, m=sub.m)
        D, header = read_code(path)
        assert D == C and header == {"q": sub.q, "m": sub.m, "n": 9, "k": C.k}

    def test_file_is_canonical(self, rng):
        F = field_new(3, 2)
        C = random_code(F, rng, 6, 3)
        assert format_code(C) == format_code(LinearCode(F, 6, C.gen))

    def test_rejects_bad_entries(self):
        F = field_new(2, 1)
        text = format_code(LinearCode.full(F, 2)).replace("1 0", "2 0")
        with pytest.raises(ValueError):
            parse_code(text)


@given(st.sampled_from(SMALL_FIELDS), st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_square_dimension_bound(ps, n, seed):
    F = field_new(*ps)
    rng = np.random.default_rng(seed)
    C = random_code(F, rng, n, int(rng.integers(0, n + 1)))
    assert square(C).k <= min(n, comb(C.k + 1, 2))


@given(st.sampled_from(SUBFIELD_PAIRS), st.integers(0, 2**32 - 1))
def test_product_of_traces_inclusion(qm, seed):
    sub = subfield_for(*qm)
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 12))
    C, D = random_code(sub.big, rng, n, 1), random_code(sub.big, rng, n, int(rng.integers(1, 3)))
    lhs = star_product(trace_code(C, sub), trace_code(D, sub))
    rhs = sum_codes(trace_code(star_product(C, frobenius_code(D, sub.q, i)), sub) for i in range(sub.m))
    assert rhs.contains(lhs)


@given(st.sampled_from(SUBFIELD_PAIRS), st.integers(0, 2**32 - 1))
def test_delsarte_property(qm, seed):
    sub = subfield_for(*qm)
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 12))
    C = random_code(sub.big, rng, n, int(rng.integers(0, n + 1)))
    assert dual(subfield_subcode(C, sub)) == trace_code(dual(C), sub)
