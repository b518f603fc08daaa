"""The supersingular module: point enumeration, L-matrix, Brandt matrices.

``SupersingularSet`` lists the supersingular j-invariants over F_{p^2} in a
canonical order with their automorphism weights.  Enumeration goes through
the Deuring polynomial H(x) = sum_{i<=m} C(m,i)^2 x^i with m = (p-1)/2, whose
roots are exactly the supersingular Legendre parameters; the roots all lie in
F_{p^2}, are found by distinct/equal-degree splitting, and are pushed to
j-invariants through the degree-6 Legendre-to-j map.

The L-matrix is the endomorphism of Z[S] (x) Z/ell^t whose column at E is
  sum_{E' != E} (1/w_{E'}) * dlog(norm(j(E') - j(E))) * ([E'] - [E]),
stored column-major: ``mat[:, j]`` is the image of the j-th basis vector.
Row-vector code should act through ``LMatrix.op`` (the transpose).

Brandt matrices are computed from the classical modular polynomials: entry
(i, j) counts js[j] among the q+1 roots of Phi_q(js[i], Y), so they are the
matrices of the degree-q Hecke correspondence in row convention.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .gfield import Fp2Elt, Fp2Field, PrimeContext, dlog_ell, sqrt_mod
from .modpoly import classical_modular_polynomial
from .zmodlin import Modulus, solve

__all__ = [
    "SupersingularSet",
    "LMatrix",
    "BrandtMatrix",
    "HeckePolynomial",
    "HeckePolynomialNotFound",
    "enumerate_supersingular",
    "supersingular_set",
    "build_l_matrix",
    "brandt_matrix",
    "hecke_polynomial_for_l",
    "log_edge_weights",
    "eichler_count",
]


# ---------------------------------------------------------------------------
# dense F_p[x] helpers (coefficients low-to-high, trailing zeros stripped)


def _ptrim(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    if nz.size == 0:
        return a[:0]
    return a[: int(nz[-1]) + 1]


def _pmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.size == 0 or b.size == 0:
        return a[:0]
    return _ptrim(np.convolve(a, b) % p)


def _pdivmod(a: np.ndarray, b: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    b = _ptrim(b)
    if b.size == 0:
        raise ZeroDivisionError("polynomial division by zero")
    r = (a % p).copy()
    db, da = b.size - 1, r.size - 1
    if da < db:
        return a[:0], _ptrim(r)
    inv_lead = pow(int(b[-1]), -1, p)
    q = np.zeros(da - db + 1, dtype=np.int64)
    for k in range(da - db, -1, -1):
        if r.size < db + k + 1:
            continue
        c = int(r[db + k]) * inv_lead % p
        if c:
            q[k] = c
            r[k : db + k + 1] = (r[k : db + k + 1] - c * b) % p
        r = _ptrim(r)
    return _ptrim(q), _ptrim(r)


def _pmod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return _pdivmod(a, b, p)[1]


def _pgcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a, b = _ptrim(a % p), _ptrim(b % p)
    while b.size:
        a, b = b, _pmod(a, b, p)
    if a.size:
        a = (a * pow(int(a[-1]), -1, p)) % p  # monic
    return a


def _ppowmod(base: np.ndarray, e: int, mod: np.ndarray, p: int) -> np.ndarray:
    out = np.array([1], dtype=np.int64)
    acc = _pmod(base, mod, p)
    while e:
        if e & 1:
            out = _pmod(_pmul(out, acc, p), mod, p)
        acc = _pmod(_pmul(acc, acc, p), mod, p)
        e >>= 1
    return out


def _pderiv(a: np.ndarray, p: int) -> np.ndarray:
    if a.size <= 1:
        return a[:0]
    return _ptrim((a[1:] * np.arange(1, a.size, dtype=np.int64)) % p)


def _deuring_polynomial(p: int) -> np.ndarray:
    m = (p - 1) // 2
    return np.array([comb(m, i) ** 2 % p for i in range(m + 1)], dtype=np.int64)


def _equal_degree_split(f: np.ndarray, d: int, p: int, rng: random.Random) -> list[np.ndarray]:
    """Split a squarefree product of degree-d irreducibles into its factors."""
    deg = f.size - 1
    if deg == d:
        return [f]
    exp = (p**d - 1) // 2
    while True:
        a = rng.randrange(p)
        probe = np.array([a, 1], dtype=np.int64)
        g = _ppowmod(probe, exp, f, p)
        g = g.copy()
        if g.size:
            g[0] = (g[0] - 1) % p
        g = _pgcd(_ptrim(g), f, p)
        if 0 < g.size - 1 < deg:
            h, r = _pdivmod(f, g, p)
            assert r.size == 0
            return _equal_degree_split(g, d, p, rng) + _equal_degree_split(h, d, p, rng)


def _fp_roots_of_split_poly(f: np.ndarray, p: int, rng: random.Random) -> list[int]:
    if f.size - 1 == 0:
        return []
    roots = []
    for lin in _equal_degree_split(f, 1, p, rng):
        # monic x + c
        roots.append((-int(lin[0])) % p)
    return roots


def _fp2_roots_of_quadratic_split_poly(
    f: np.ndarray, p: int, qnr: int, rng: random.Random
) -> list[Fp2Elt]:
    if f.size - 1 == 0:
        return []
    inv2 = pow(2, -1, p)
    qnr_inv = pow(qnr, -1, p)
    roots: list[Fp2Elt] = []
    for quad in _equal_degree_split(f, 2, p, rng):
        # monic y^2 + B y + C irreducible over F_p; disc is a non-residue,
        # so sqrt(disc) = sqrt(disc/qnr) * sqrt(qnr) with the inner sqrt in F_p
        b_c, c_c = int(quad[1]), int(quad[0])
        disc = (b_c * b_c - 4 * c_c) % p
        root_scaled = sqrt_mod(disc * qnr_inv % p, p)
        assert root_scaled is not None, "discriminant of irreducible factor is square"
        for sign in (1, -1):
            roots.append(
                Fp2Elt((-b_c) * inv2 % p, sign * root_scaled * inv2 % p)
            )
    return roots


def _legendre_to_j(lam: Fp2Elt, field: Fp2Field) -> Fp2Elt:
    num = field.sub(field.add(field.mul(lam, lam), field.one), lam)  # lam^2 - lam + 1
    num3 = field.mul(field.mul(num, num), num)
    den = field.mul(
        field.mul(lam, lam), field.mul(field.sub(lam, field.one), field.sub(lam, field.one))
    )
    return field.mul(field.elt(256), field.div(num3, den))


# ---------------------------------------------------------------------------
# supersingular set


@dataclass(frozen=True)
class SupersingularSet:
    """Supersingular j-invariants over F_{p^2}, canonically ordered.

    ``js`` is sorted ascending by (c0, c1); ``weights[i]`` is half the order
    of the automorphism group: 3 at j = 0, 2 at j = 1728, else 1.
    """

    p: int
    qnr: int
    js: tuple[Fp2Elt, ...]
    weights: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.js)

    def index_of(self, j: Fp2Elt) -> int:
        return self.js.index(j)

    def field(self) -> Fp2Field:
        return Fp2Field(self.p, self.qnr)

    def mass(self) -> Fraction:
        return sum(Fraction(1, w) for w in self.weights)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "qnr": self.qnr,
            "S": [[j.c0, j.c1] for j in self.js],
            "weights": list(self.weights),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SupersingularSet":
        js = tuple(Fp2Elt(int(c0), int(c1)) for c0, c1 in data["S"])
        return cls(
            p=int(data["p"]),
            qnr=int(data["qnr"]),
            js=js,
            weights=tuple(int(w) for w in data["weights"]),
        )

    def validate(self) -> None:
        """Structural invariants; raises AssertionError on violation."""
        p = self.p
        assert len(self.js) == len(self.weights)
        assert len(self.js) == eichler_count(p), "Eichler count mismatch"
        assert self.mass() == Fraction(p - 1, 12), "mass formula fails"
        assert list(self.js) == sorted(self.js), "not canonically sorted"
        jset = set(self.js)
        assert all(Fp2Elt(j.c0, (-j.c1) % p) in jset for j in self.js), (
            "not stable under frobenius"
        )
        for j, w in zip(self.js, self.weights):
            expected = 3 if j == (0, 0) else (2 if j == (1728 % p, 0) else 1)
            assert w == expected, f"weight {w} at j={j}"


def eichler_count(p: int) -> int:
    """Number of supersingular j-invariants in characteristic p >= 5."""
    eps = {1: 0, 5: 1, 7: 1, 11: 2}[p % 12]
    return (p - 1) // 12 + eps


def supersingular_set(p: int, qnr: int) -> SupersingularSet:
    """Enumerate S by root-finding the Deuring polynomial over F_{p^2}."""
    rng = random.Random(p)  # deterministic per prime
    field = Fp2Field(p, qnr)
    h = _deuring_polynomial(p)
    assert _pgcd(h, _pderiv(h, p), p).size == 1, "Deuring polynomial not squarefree"

    xp = _ppowmod(np.array([0, 1], dtype=np.int64), p, h, p)
    xp_minus_x = np.zeros(max(xp.size, 2), dtype=np.int64)
    xp_minus_x[: xp.size] = xp
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    h1 = _pgcd(_ptrim(xp_minus_x), h, p)
    h2, rem = _pdivmod(h, h1, p)
    assert rem.size == 0
    if h2.size:
        h2 = (h2 * pow(int(h2[-1]), -1, p)) % p

    lams: list[Fp2Elt] = [Fp2Elt(r, 0) for r in _fp_roots_of_split_poly(h1, p, rng)]
    lams += _fp2_roots_of_quadratic_split_poly(_ptrim(h2), p, qnr, rng)
    assert len(lams) == (p - 1) // 2, "Deuring polynomial did not split over F_{p^2}"

    js = sorted({_legendre_to_j(lam, field) for lam in lams})
    weights = tuple(
        3 if j == (0, 0) else (2 if j == (1728 % p, 0) else 1) for j in js
    )
    out = SupersingularSet(p=p, qnr=qnr, js=tuple(js), weights=weights)
    out.validate()
    return out


def enumerate_supersingular(ctx: PrimeContext) -> SupersingularSet:
    return supersingular_set(ctx.p, ctx.qnr)


# ---------------------------------------------------------------------------
# L-matrix


@dataclass(frozen=True)
class LMatrix:
    """Matrix of the supersingular L-operator mod ell^t, column convention."""

    modulus: int
    mat: np.ndarray  # (n, n); column j is the image of basis vector j

    @property
    def op(self) -> np.ndarray:
        """Row-convention operator: (v @ op) is the image of row vector v."""
        return self.mat.T.copy()

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "mat": [[int(x) for x in r] for r in self.mat]}


def log_edge_weights(ctx: PrimeContext, s_set: SupersingularSet) -> np.ndarray:
    """Symmetric matrix W[i][j] = dlog(norm(js[i] - js[j])) mod ell^t, 0 diagonal."""
    field = s_set.field()
    n = len(s_set)
    w = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            d = field.sub(s_set.js[i], s_set.js[j])
            w[i, j] = w[j, i] = dlog_ell(field.norm(d), ctx)
    return w


def build_l_matrix(ctx: PrimeContext, s_set: SupersingularSet) -> LMatrix:
    """Oesterle/de-Shalit formula; weights are inverted mod ell^t (w in {1,2,3})."""
    r = ctx.r
    n = len(s_set)
    w_edge = log_edge_weights(ctx, s_set)
    inv_w = np.array([pow(w, -1, r) for w in s_set.weights], dtype=np.int64)
    mat = (inv_w[:, None] * w_edge) % r
    np.fill_diagonal(mat, 0)
    for j in range(n):
        mat[j, j] = (-int(mat[:, j].sum())) % r
    assert not np.any(mat.sum(axis=0) % r), "column sums of L must vanish"
    if ctx.p % 12 == 1:
        assert np.array_equal(mat, mat.T % r), "L must be symmetric for p = 1 mod 12"
    return LMatrix(modulus=r, mat=mat)


# ---------------------------------------------------------------------------
# Brandt matrices


@dataclass(frozen=True)
class BrandtMatrix:
    """Degree-q Hecke correspondence on Z[S], row convention, row sums q+1."""

    q: int
    mat: np.ndarray

    def to_json(self) -> dict:
        return {"q": self.q, "mat": [[int(x) for x in r] for r in self.mat]}


def brandt_matrix(sset: SupersingularSet, q: int) -> BrandtMatrix:
    """Entry (i, j): multiplicity of js[j] among the roots of Phi_q(js[i], Y)."""
    if q == sset.p:
        raise ValueError("Brandt level q must differ from p")
    phi = classical_modular_polynomial(q)
    field = sset.field()
    n = len(sset)
    mat = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        x = sset.js[i]
        xpow = [field.one]
        for _ in range(q + 1):
            xpow.append(field.mul(xpow[-1], x))
        coeffs = []
        for h in range(q + 2):
            acc = field.zero
            for dx in range(q + 2):
                c = phi.get((dx, h), 0)
                if c:
                    acc = field.add(acc, field.mul(field.elt(c % sset.p), xpow[dx]))
            coeffs.append(acc)
        # strip leading zeros (degree is q+1 unless the X^(q+1) column cancels)
        poly = coeffs
        while len(poly) > 1 and poly[-1] == (0, 0):
            poly = poly[:-1]
        total = 0
        for jdx in range(n):
            root = sset.js[jdx]
            while len(poly) > 1:
                quot, rem = _fp2_synth_div(poly, root, field)
                if rem != (0, 0):
                    break
                poly = quot
                mat[i, jdx] += 1
                total += 1
        assert total == q + 1, (
            f"Phi_{q}(js[{i}], Y) does not split over S: got {total} roots"
        )
    # weight symmetry: mat[i][j] * w_j == mat[j][i] * w_i
    wvec = np.array(sset.weights, dtype=np.int64)
    assert np.array_equal(mat * wvec[None, :], (mat * wvec[None, :]).T), (
        "Brandt weight symmetry fails"
    )
    return BrandtMatrix(q=q, mat=mat)


def _fp2_synth_div(poly: list[Fp2Elt], c: Fp2Elt, field: Fp2Field):
    """Divide sum poly[k] Y^k by (Y - c): returns (quotient coeffs, remainder)."""
    acc = poly[-1]
    quot = [acc]
    for k in range(len(poly) - 2, 0, -1):
        acc = field.add(poly[k], field.mul(acc, c))
        quot.append(acc)
    rem = field.add(poly[0], field.mul(acc, c))
    return quot[::-1], rem


# ---------------------------------------------------------------------------
# Hecke polynomial representation of L


class HeckePolynomialNotFound(RuntimeError):
    """No polynomial in the available Hecke operators reproduces L."""


@dataclass(frozen=True)
class HeckePolynomial:
    """L as sum of c * prod T_q: terms are (coeff mod ell^s, sorted prime tuple)."""

    modulus: int  # ell^s
    dim: int  # |S| it was verified on
    terms: tuple[tuple[int, tuple[int, ...]], ...]

    def evaluate(self, operators: dict[int, np.ndarray], dim: int, modulus: int) -> np.ndarray:
        """Substitute matrices for the T_q; all operators must commute."""
        out = np.zeros((dim, dim), dtype=np.int64)
        for coeff, primes in self.terms:
            acc = np.eye(dim, dtype=np.int64)
            for q in primes:
                acc = (acc @ operators[q]) % modulus
            out = (out + coeff * acc) % modulus
        return out % modulus

    def primes_used(self) -> tuple[int, ...]:
        return tuple(sorted({q for _, primes in self.terms for q in primes}))

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "dim": self.dim,
            "terms": [[c, list(primes)] for c, primes in self.terms],
        }


def _monomials(primes: tuple[int, ...], max_degree: int) -> list[tuple[int, ...]]:
    """All multisets of ``primes`` with size <= max_degree, canonically ordered."""
    out: list[tuple[int, ...]] = [()]
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(max_degree):
        nxt = []
        for mono in frontier:
            start = mono[-1] if mono else primes[0]
            for q in primes:
                if q >= start:
                    nxt.append(mono + (q,))
        out.extend(nxt)
        frontier = nxt
    return sorted(set(out), key=lambda mono: (len(mono), mono))


def hecke_polynomial_for_l(
    ctx: PrimeContext,
    s_set: SupersingularSet,
    l_matrix: LMatrix,
    brandts: list[BrandtMatrix],
    degree_budget: int = 6,
    max_degree: int = 8,
) -> HeckePolynomial:
    """Find c_i and monomials m_i in the Brandt matrices with
    sum c_i m_i == L as matrices mod ell^s.

    The search solves the linear system on a single (hopefully generating)
    vector and then verifies full matrix equality; on failure it widens the
    prime set {2,3} -> {2,3,5} -> {2,3,5,7} and finally raises the degree cap.
    A failure to verify is reported via :class:`HeckePolynomialNotFound`.
    """
    m_s = ctx.ell**ctx.s
    mod = Modulus(m_s)
    n = len(s_set)
    target = l_matrix.op % m_s

    have = {b.q: b.mat % m_s for b in brandts}
    for q in (2, 3):
        if q not in have and q != ctx.p:
            have[q] = brandt_matrix(s_set, q).mat % m_s

    rng = np.random.default_rng(0)
    attempts: list[tuple[tuple[int, ...], int]] = [
        (tuple(q for q in (2, 3) if q != ctx.p), degree_budget),
        (tuple(q for q in (2, 3, 5) if q != ctx.p), degree_budget),
        (tuple(q for q in (2, 3, 5, 7) if q != ctx.p), degree_budget),
        (tuple(q for q in (2, 3, 5, 7) if q != ctx.p), max_degree),
    ]
    for primes, cap in attempts:
        for q in primes:
            if q not in have:
                have[q] = brandt_matrix(s_set, q).mat % m_s
        monos = _monomials(primes, cap)
        mono_mats = []
        for mono in monos:
            acc = np.eye(n, dtype=np.int64)
            for q in mono:
                acc = (acc @ have[q]) % m_s
            mono_mats.append(acc)
        gens = [np.eye(n, dtype=np.int64)[i] for i in range(n)]
        gens += [rng.integers(0, m_s, size=n).astype(np.int64) for _ in range(20)]
        for v in gens:
            a = np.vstack([(v @ mm) % m_s for mm in mono_mats])
            b = (v @ target) % m_s
            x = solve(a, b, mod)
            if x is None:
                continue
            built = np.zeros((n, n), dtype=np.int64)
            for c, mm in zip(x, mono_mats):
                built = (built + int(c) * mm) % m_s
            if np.array_equal(built, target):
                terms = tuple(
                    (int(c) % m_s, mono)
                    for c, mono in zip(x, monos)
                    if int(c) % m_s
                )
                return HeckePolynomial(modulus=m_s, dim=n, terms=terms)
    raise HeckePolynomialNotFound(
        f"no degree<={max_degree} polynomial in T_2,3,5,7 equals L for {ctx.label()}"
    )
