"""gfield: context construction, F_{p^2} arithmetic, discrete log vs oracles."""

from __future__ import annotations

import random

import pytest

from eisalpha.gfield import (
    Fp2Field,
    dlog_ell,
    fp2_arith,
    frobenius,
    make_context,
    norm_to_fp,
    smallest_primitive_root,
    smallest_qnr,
    sqrt_mod,
)
from oracles import index_search, primitive_root_search

CONTEXTS = [(11, 5, 1), (31, 5, 1), (61, 5, 1), (101, 5, 2), (29, 7, 1), (23, 11, 1)]


def test_make_context_examples():
    ctx = make_context(11, 5, 1)
    assert (ctx.t, ctx.r, ctx.g, ctx.qnr) == (1, 5, 2, 2)
    assert ctx.g == primitive_root_search(11)

    ctx = make_context(101, 5, 2)
    assert (ctx.t, ctx.r) == (2, 25)
    assert ctx.modulus == 25

    with pytest.raises(ValueError):
        make_context(13, 5, 1)  # 5 does not divide 12
    with pytest.raises(ValueError):
        make_context(11, 3, 1)  # ell < 5
    with pytest.raises(ValueError):
        make_context(101, 5, 3)  # s > t
    with pytest.raises(ValueError):
        make_context(15, 7, 1)  # p composite
    with pytest.raises(ValueError):
        make_context(31, 15, 1)  # ell composite


def test_smallest_choices_against_search():
    for p in (11, 23, 29, 31, 41, 43, 61, 71, 101):
        assert smallest_primitive_root(p) == primitive_root_search(p)
        qnr = smallest_qnr(p)
        squares = {(x * x) % p for x in range(1, p)}
        assert qnr == min(n for n in range(2, p) if n not in squares)


def test_fp2_field_axioms():
    rng = random.Random(0)
    for p, ell, s in CONTEXTS:
        f = make_context(p, ell, s).field()
        root = f.elt(0, 1)
        assert f.mul(root, root) == f.elt(f.qnr, 0)
        for _ in range(20):
            a = f.elt(rng.randrange(p), rng.randrange(p))
            assert f.mul(a, f.one) == a
            assert fp2_arith(f, a, f.one, "mul") == a
            if a != f.zero:
                assert fp2_arith(f, a, a, "div") == f.one
            b = f.elt(rng.randrange(p), rng.randrange(p))
            assert f.sub(f.add(a, b), b) == a
        with pytest.raises(ZeroDivisionError):
            f.div(f.one, f.zero)


def test_frobenius_and_norm():
    rng = random.Random(1)
    for p, ell, s in CONTEXTS:
        f = make_context(p, ell, s).field()
        assert frobenius(f, f.elt(3, 0)) == f.elt(3, 0)
        assert frobenius(f, f.elt(0, 1)) == f.elt(0, p - 1)
        assert norm_to_fp(f, f.one) == 1
        assert norm_to_fp(f, f.elt(0, 1)) == (-f.qnr) % p
        for _ in range(20):
            a = f.elt(rng.randrange(p), rng.randrange(p))
            assert frobenius(f, frobenius(f, a)) == a
            # norm really is a^(p+1)
            assert f.pow(a, p + 1) == f.elt(norm_to_fp(f, a), 0)
            if a != f.zero:
                assert pow(norm_to_fp(f, a), p - 1, p) == 1
            b = f.elt(rng.randrange(p), rng.randrange(p))
            assert norm_to_fp(f, f.mul(a, b)) == norm_to_fp(f, a) * norm_to_fp(f, b) % p
            assert norm_to_fp(f, frobenius(f, a)) == norm_to_fp(f, a)


def test_dlog_examples():
    ctx = make_context(11, 5, 1)
    assert dlog_ell(1, ctx) == 0
    assert dlog_ell(2, ctx) == 1
    assert dlog_ell(4, ctx) == 2
    with pytest.raises(ValueError):
        dlog_ell(0, ctx)


def test_dlog_matches_exhaustive_index_search():
    for p, ell, s in CONTEXTS:
        ctx = make_context(p, ell, s)
        for x in range(1, p):
            assert dlog_ell(x, ctx) == index_search(x, ctx.g, p) % ctx.r


def test_dlog_homomorphism_and_surjectivity():
    rng = random.Random(2)
    for p, ell, s in CONTEXTS:
        ctx = make_context(p, ell, s)
        for _ in range(500):
            x, y = rng.randrange(1, p), rng.randrange(1, p)
            assert (
                dlog_ell(x * y % p, ctx)
                == (dlog_ell(x, ctx) + dlog_ell(y, ctx)) % ctx.r
            )
        assert {dlog_ell(x, ctx) for x in range(1, p)} == set(range(ctx.r))


def test_dlog_power_sums_vanish():
    # sum of dlog(a)^2 and of dlog(a)^3 over (Z/p)^* is 0 mod ell^t
    for p, ell, s in CONTEXTS:
        ctx = make_context(p, ell, s)
        logs = [dlog_ell(a, ctx) for a in range(1, p)]
        assert sum(v * v for v in logs) % ctx.r == 0
        assert sum(v * v * v for v in logs) % ctx.r == 0


def test_sqrt_mod():
    rng = random.Random(3)
    for p in (11, 29, 101, 181, 337):
        for _ in range(30):
            a = rng.randrange(p)
            r = sqrt_mod(a, p)
            if pow(a, (p - 1) // 2, p) == p - 1:
                assert r is None
            else:
                assert r is not None and r * r % p == a
