"""zmodlin: Howell forms, membership, kernels and determinants vs brute force."""

from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eisalpha.zmodlin import (
    Modulus,
    Submodule,
    det,
    howell_form,
    howell_form_with_transform,
    intersect,
    kernel,
    membership,
    minor_det,
    module_sum,
    pivot_valuations,
    solve,
    submodule_order,
)
from oracles import kernel_enumerate, span_enumerate

MODULI = [5, 25, 7, 121]


def _rows(sub: Submodule) -> set[tuple[int, ...]]:
    return {tuple(int(x) for x in r) for r in sub.basis}


def _span_of(sub: Submodule, m: int) -> set[tuple[int, ...]]:
    if sub.nrows == 0:
        return {(0,) * sub.ambient_dim}
    return span_enumerate([tuple(int(x) for x in r) for r in sub.basis], m)


def test_modulus_factoring():
    m = Modulus(121)
    assert (m.ell, m.s) == (11, 2)
    with pytest.raises(ValueError):
        Modulus(12)
    with pytest.raises(ValueError):
        Modulus(1)


def test_howell_identity_and_zero():
    m = Modulus(25)
    sub = howell_form(np.eye(2, dtype=np.int64), m)
    assert np.array_equal(sub.basis, np.eye(2, dtype=np.int64))

    z = howell_form(np.zeros((3, 3), dtype=np.int64), Modulus(5))
    assert z.nrows == 0 and z.ambient_dim == 3


def test_howell_nontrivial_pivot_span():
    # span of {(5,0),(0,1)} mod 25 has 5*25 = 125 elements
    m = Modulus(25)
    rows = [(5, 0), (0, 1)]
    sub = howell_form(np.array(rows), m)
    assert _rows(sub) == {(5, 0), (0, 1)}
    oracle_span = span_enumerate(rows, 25)
    assert len(oracle_span) == 125
    assert _span_of(sub, 25) == oracle_span
    ok, coeffs = membership(np.array([10, 3]), sub, m)
    assert ok
    assert np.array_equal((coeffs @ sub.basis) % 25, np.array([10, 3]))


def test_membership_examples():
    m = Modulus(25)
    sub = howell_form(np.array([[5, 0]]), m)

    ok, coeffs = membership(np.zeros(2, dtype=np.int64), sub, m)
    assert ok and not np.any(coeffs)

    ok, _ = membership(np.array([1, 0]), sub, m)
    assert not ok
    assert (1, 0) not in span_enumerate([(5, 0)], 25)

    ok, coeffs = membership(np.array([10, 0]), sub, m)
    assert ok and coeffs.tolist() == [2]

    with pytest.raises(ValueError):
        membership(np.array([1, 2, 3]), sub, m)


def test_kernel_examples():
    assert kernel(np.eye(3, dtype=np.int64), Modulus(5)).nrows == 0

    full = kernel(np.zeros((2, 2), dtype=np.int64), Modulus(5))
    assert np.array_equal(full.basis, np.eye(2, dtype=np.int64))

    m = Modulus(25)
    k = kernel(np.array([[5]]), m)
    assert _rows(k) == {(5,)}
    assert kernel_enumerate([(5,)], 25) == _span_of(k, 25)


def test_module_sum_examples():
    m5sq = Modulus(25)
    e1 = howell_form(np.array([[1, 0]]), m5sq)
    e2 = howell_form(np.array([[0, 1]]), m5sq)
    s = module_sum([e1, e2], m5sq)
    assert np.array_equal(s.basis, np.eye(2, dtype=np.int64))

    zero = howell_form(np.zeros((1, 2), dtype=np.int64), m5sq)
    assert module_sum([e1, zero], m5sq) == e1

    a = howell_form(np.array([[5, 0]]), m5sq)
    b = howell_form(np.array([[0, 5]]), m5sq)
    s = module_sum([a, b], m5sq)
    assert s.nrows == 2
    assert pivot_valuations(s, m5sq) == [1, 1]
    assert _span_of(s, 25) == span_enumerate([(5, 0), (0, 5)], 25)

    with pytest.raises(ValueError):
        module_sum([e1, howell_form(np.zeros((1, 3), dtype=np.int64), m5sq)], m5sq)


def test_det_examples():
    m = Modulus(25)
    assert det(np.eye(4, dtype=np.int64), m) == 1
    assert det(np.array([[2, 1], [1, 3]]), m) == 5
    assert det(np.array([[0, 0], [1, 3]]), m) == 0
    with pytest.raises(ValueError):
        det(np.zeros((2, 3), dtype=np.int64), m)


def test_minor_det_examples():
    m = Modulus(25)
    assert minor_det(np.array([[7]]), 0, 0, m) == 1
    assert minor_det(np.eye(3, dtype=np.int64), 0, 0, m) == 1
    with pytest.raises(IndexError):
        minor_det(np.eye(2, dtype=np.int64), 2, 0, m)

    # triangle Laplacian with edge weights a,b,c: every (i,i) minor is ab+bc+ca
    rng = random.Random(7)
    for _ in range(10):
        a, b, c = (rng.randrange(25) for _ in range(3))
        lap = np.array(
            [[a + c, -a, -c], [-a, a + b, -b], [-c, -b, b + c]], dtype=np.int64
        )
        expected = (a * b + b * c + c * a) % 25
        for i in range(3):
            assert minor_det(lap, i, i, m) == expected


@st.composite
def _matrix(draw, ms=MODULI, max_dim=3):
    m = draw(st.sampled_from(ms))
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    data = draw(
        st.lists(
            st.lists(st.integers(0, m - 1), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    return m, np.array(data, dtype=np.int64)


@given(_matrix())
@settings(max_examples=150, deadline=None)
def test_howell_idempotent_and_span_preserving(case):
    m, a = case
    mod = Modulus(m)
    sub = howell_form(a, mod)
    again = howell_form(sub.basis, mod)
    assert np.array_equal(sub.basis, again.basis)
    for row in a:
        ok, _ = membership(row, sub, mod)
        assert ok


@given(_matrix())
@settings(max_examples=60, deadline=None)
def test_howell_matches_bruteforce_span(case):
    m, a = case
    sub = howell_form(a, Modulus(m))
    lhs = _span_of(sub, m)
    rhs = span_enumerate([tuple(int(x) for x in r) for r in a], m)
    assert lhs == rhs
    # elementary-divisor profile counts the span

    assert submodule_order(sub, Modulus(m)) == len(rhs)


def _random_invertible(rng, n, mod):
    while True:
        u = np.array(
            [[rng.randrange(mod.m) for _ in range(n)] for _ in range(n)],
            dtype=np.int64,
        )
        if det(u, mod) % mod.ell != 0:
            return u


def test_howell_canonicity_under_row_mixing():
    rng = random.Random(1)
    for m in MODULI:
        mod = Modulus(m)
        for _ in range(25):
            n = rng.randrange(1, 4)
            cols = rng.randrange(1, 4)
            a = np.array(
                [[rng.randrange(m) for _ in range(cols)] for _ in range(n)],
                dtype=np.int64,
            )
            u = _random_invertible(rng, n, mod)
            a2 = (u @ a) % m
            assert howell_form(a, mod) == howell_form(a2, mod)


def test_kernel_against_bruteforce():
    rng = random.Random(2)
    for m in (5, 25):
        mod = Modulus(m)
        for _ in range(20):
            n = rng.randrange(1, 4)
            cols = rng.randrange(1, 4)
            rows = [tuple(rng.randrange(m) for _ in range(cols)) for _ in range(n)]
            ker = kernel(np.array(rows, dtype=np.int64), mod)
            assert not np.any((ker.basis @ np.array(rows)) % m)
            oracle = kernel_enumerate(rows, m)
            assert submodule_order(ker, mod) == len(oracle)
            assert _span_of(ker, m) == oracle


def test_det_multiplicative():
    rng = random.Random(3)
    for m in MODULI:
        mod = Modulus(m)
        for _ in range(20):
            a = np.array([[rng.randrange(m) for _ in range(3)] for _ in range(3)])
            b = np.array([[rng.randrange(m) for _ in range(3)] for _ in range(3)])
            assert det((a @ b) % m, mod) == (det(a, mod) * det(b, mod)) % m


def test_solve_and_transform_witnesses():
    rng = random.Random(4)
    for m in (5, 25, 121):
        mod = Modulus(m)
        for _ in range(20):
            n, cols = rng.randrange(1, 4), rng.randrange(1, 4)
            a = np.array(
                [[rng.randrange(m) for _ in range(cols)] for _ in range(n)],
                dtype=np.int64,
            )
            sub, tr = howell_form_with_transform(a, mod)
            assert np.array_equal((tr @ a) % m, sub.basis)
            x = np.array([rng.randrange(m) for _ in range(n)], dtype=np.int64)
            b = (x @ a) % m
            sol = solve(a, b, mod)
            assert sol is not None
            assert np.array_equal((sol @ a) % m, b)

    assert solve(np.array([[5, 0]]), np.array([1, 0]), Modulus(25)) is None


def test_intersect_against_bruteforce():
    rng = random.Random(5)
    for m in (5, 25):
        mod = Modulus(m)
        for _ in range(15):
            dim = rng.randrange(1, 4)
            ra = [tuple(rng.randrange(m) for _ in range(dim)) for _ in range(2)]
            rb = [tuple(rng.randrange(m) for _ in range(dim)) for _ in range(2)]
            a = howell_form(np.array(ra, dtype=np.int64), mod)
            b = howell_form(np.array(rb, dtype=np.int64), mod)
            got = _span_of(intersect(a, b, mod), m)
            want = span_enumerate(ra, m) & span_enumerate(rb, m)
            assert got == want
