"""Exact dense linear algebra over Z/m for a prime-power modulus m = ell**s.

Matrices are numpy int64 arrays with entries reduced to [0, m).  Vectors are
rows and act on the *left* of matrices throughout the package, so ``kernel``
means the left kernel {x : x @ a == 0 mod m} and a :class:`Submodule` is a
span of row vectors.

Because Z/ell^s is not a field for s > 1, plain row echelon form does not
decide span membership.  The canonical form used here is the Howell form:

* rows in echelon order with pivot columns strictly increasing,
* every pivot normalized to a power of ell,
* entries above a pivot reduced modulo that pivot,
* the span closed under the "shadow" rows (m // pivot) * row.

Two matrices have the same row span over Z/m iff their Howell bases are
identical entrywise, and membership is decided by greedy reduction.
All functions are pure; nothing here mutates its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Modulus",
    "Submodule",
    "howell_form",
    "membership",
    "kernel",
    "module_sum",
    "solve",
    "det",
    "minor_det",
    "pivot_columns",
    "pivot_valuations",
    "submodule_order",
    "intersect",
]


class Modulus:
    """A prime-power modulus ell**s, factored once at construction."""

    __slots__ = ("m", "ell", "s")

    def __init__(self, m: int):
        if m < 2:
            raise ValueError(f"modulus must be >= 2, got {m}")
        ell = _smallest_prime_factor(m)
        s = 0
        n = m
        while n % ell == 0:
            n //= ell
            s += 1
        if n != 1:
            raise ValueError(f"modulus {m} is not a prime power")
        self.m = m
        self.ell = ell
        self.s = s

    def __repr__(self) -> str:
        return f"Modulus({self.ell}^{self.s})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Modulus) and other.m == self.m

    def __hash__(self) -> int:
        return hash(("Modulus", self.m))

    def valuation(self, x: int) -> int:
        """ell-adic valuation of x in [1, m); raises on x == 0 mod m."""
        x %= self.m
        if x == 0:
            raise ValueError("valuation of 0 is undefined here")
        v = 0
        while x % self.ell == 0:
            x //= self.ell
            v += 1
        return v

    def unit_part_inverse(self, x: int) -> tuple[int, int]:
        """Split x = ell^v * u and return (v, u^{-1} mod m)."""
        v = self.valuation(x)
        u = (x % self.m) // (self.ell**v)
        return v, pow(u, -1, self.m)


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def _as_matrix(a, mod: Modulus) -> np.ndarray:
    arr = np.asarray(a, dtype=np.int64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got ndim={arr.ndim}")
    return arr % mod.m


@dataclass(frozen=True)
class Submodule:
    """Row span of ``basis`` in (Z/m)^ambient_dim, basis in Howell form."""

    ambient_dim: int
    basis: np.ndarray  # shape (k, ambient_dim), zero rows removed

    @property
    def nrows(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Submodule)
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis.tobytes()))


def _first_nonzero(row: np.ndarray, start: int = 0) -> int | None:
    nz = np.nonzero(row[start:])[0]
    if nz.size == 0:
        return None
    return start + int(nz[0])


def _howell_rows(
    rows: np.ndarray, mod: Modulus, track: bool = False
) -> tuple[np.ndarray, list[int], np.ndarray | None]:
    """Core Howell reduction.

    Returns (basis, pivot_cols, transform) where basis is canonical and,
    when ``track`` is set, transform satisfies basis == transform @ rows
    mod m row-for-row.
    """
    m, ell, s = mod.m, mod.ell, mod.s
    nrows, ncols = rows.shape
    pend: list[tuple[np.ndarray, np.ndarray | None]] = []
    for i in range(nrows):
        tr = None
        if track:
            tr = np.zeros(nrows, dtype=np.int64)
            tr[i] = 1
        pend.append((rows[i] % m, tr))

    piv: dict[int, tuple[np.ndarray, np.ndarray | None]] = {}
    while pend:
        r, tr = pend.pop()
        j = _first_nonzero(r)
        while j is not None:
            vr = mod.valuation(int(r[j]))
            if j in piv:
                b, btr = piv[j]
                k = mod.valuation(int(b[j]))  # pivot is exactly ell^k
                if vr >= k:
                    q = int(r[j]) // (ell**k)
                    r = (r - q * b) % m
                    if track:
                        tr = (tr - q * btr) % m
                    j = _first_nonzero(r, j)
                else:
                    # incoming row has the smaller valuation: it becomes
                    # the pivot and the old pivot row is pushed back down
                    _, uinv = mod.unit_part_inverse(int(r[j]))
                    r = (uinv * r) % m
                    if track:
                        tr = (uinv * tr) % m
                    piv[j] = (r, tr)
                    q = ell ** (k - vr)
                    b2 = (b - q * r) % m
                    btr2 = (btr - q * tr) % m if track else None
                    pend.append((b2, btr2))
                    if vr > 0:
                        c = ell ** (s - vr)
                        pend.append(((c * r) % m, (c * tr) % m if track else None))
                    j = None
            else:
                _, uinv = mod.unit_part_inverse(int(r[j]))
                r = (uinv * r) % m
                if track:
                    tr = (uinv * tr) % m
                piv[j] = (r, tr)
                if vr > 0:
                    # shadow row keeps the span Howell-closed
                    c = ell ** (s - vr)
                    pend.append(((c * r) % m, (c * tr) % m if track else None))
                j = None

    cols = sorted(piv)
    # reduce entries above each pivot modulo the pivot value
    for i, j in enumerate(cols):
        b, btr = piv[j]
        for j2 in cols[i + 1 :]:
            c_row, ctr = piv[j2]
            q = int(b[j2]) // int(c_row[j2])
            if q:
                b = (b - q * c_row) % m
                if track:
                    btr = (btr - q * ctr) % m
        piv[j] = (b, btr)

    if cols:
        basis = np.vstack([piv[j][0] for j in cols])
        transform = np.vstack([piv[j][1] for j in cols]) if track else None
    else:
        basis = np.zeros((0, ncols), dtype=np.int64)
        transform = np.zeros((0, nrows), dtype=np.int64) if track else None
    return basis, cols, transform


def howell_form(a, m: Modulus) -> Submodule:
    """Canonical Howell basis of the row span of ``a`` over Z/m."""
    mat = _as_matrix(a, m)
    basis, _, _ = _howell_rows(mat, m)
    return Submodule(ambient_dim=mat.shape[1], basis=basis)


def howell_form_with_transform(a, m: Modulus) -> tuple[Submodule, np.ndarray]:
    """Howell form plus the transform T with basis == T @ a mod m."""
    mat = _as_matrix(a, m)
    basis, _, transform = _howell_rows(mat, m, track=True)
    return Submodule(ambient_dim=mat.shape[1], basis=basis), transform


def membership(v, sub: Submodule, m: Modulus) -> tuple[bool, np.ndarray | None]:
    """Decide v in span(sub.basis); on success also return witness coefficients.

    The witness c satisfies c @ sub.basis == v mod m.  Greedy reduction against
    a Howell basis is complete: v is in the span iff the residue is zero.
    """
    vec = np.asarray(v, dtype=np.int64) % m.m
    if vec.ndim != 1 or vec.shape[0] != sub.ambient_dim:
        raise ValueError(
            f"vector of length {vec.shape} against ambient dim {sub.ambient_dim}"
        )
    coeffs = np.zeros(sub.nrows, dtype=np.int64)
    r = vec.copy()
    for i in range(sub.nrows):
        row = sub.basis[i]
        j = _first_nonzero(row)
        pk = int(row[j])
        x = int(r[j])
        if x % pk:
            return False, None
        q = x // pk
        if q:
            r = (r - q * row) % m.m
            coeffs[i] = q
    if np.any(r):
        return False, None
    return True, coeffs


def kernel(a, m: Modulus) -> Submodule:
    """Left kernel {x : x @ a == 0 mod m} as a canonical Submodule."""
    mat = _as_matrix(a, m)
    n, k = mat.shape
    if n == 0:
        return Submodule(ambient_dim=0, basis=np.zeros((0, 0), dtype=np.int64))
    aug = np.hstack([mat, np.eye(n, dtype=np.int64)])
    basis, _, _ = _howell_rows(aug, m)
    left_zero = [row[k:] for row in basis if not np.any(row[:k])]
    if left_zero:
        ker_basis, _, _ = _howell_rows(np.vstack(left_zero), m)
    else:
        ker_basis = np.zeros((0, n), dtype=np.int64)
    return Submodule(ambient_dim=n, basis=ker_basis)


def module_sum(parts: list[Submodule], m: Modulus) -> Submodule:
    """Howell-canonical sum of the spans of ``parts``."""
    if not parts:
        raise ValueError("module_sum of an empty list has no ambient dimension")
    dim = parts[0].ambient_dim
    for p in parts:
        if p.ambient_dim != dim:
            raise ValueError(
                f"mismatched ambient dimensions {p.ambient_dim} != {dim}"
            )
    stacked = np.vstack([p.basis for p in parts] + [np.zeros((0, dim), dtype=np.int64)])
    return howell_form(stacked, m)


def solve(a, b, m: Modulus) -> np.ndarray | None:
    """A solution x of x @ a == b mod m, or None if none exists."""
    sub, transform = howell_form_with_transform(a, m)
    ok, coeffs = membership(b, sub, m)
    if not ok:
        return None
    return (coeffs @ transform) % m.m


def det(a, m: Modulus) -> int:
    """Determinant over Z/m via fraction-free (Bareiss) integer elimination."""
    mat = _as_matrix(a, m)
    n, k = mat.shape
    if n != k:
        raise ValueError(f"determinant of a non-square {n}x{k} matrix")
    if n == 0:
        return 1 % m.m
    w = [[int(x) for x in row] for row in mat]
    sign = 1
    prev = 1
    for col in range(n - 1):
        pivot_row = next((i for i in range(col, n) if w[i][col] != 0), None)
        if pivot_row is None:
            return 0
        if pivot_row != col:
            w[col], w[pivot_row] = w[pivot_row], w[col]
            sign = -sign
        pc = w[col][col]
        for i in range(col + 1, n):
            ric = w[i][col]
            for j in range(col + 1, n):
                w[i][j] = (w[i][j] * pc - ric * w[col][j]) // prev
            w[i][col] = 0
        prev = pc
    return (sign * w[n - 1][n - 1]) % m.m


def minor_det(a, drop_row: int, drop_col: int, m: Modulus) -> int:
    """Determinant of ``a`` with one row and one column removed."""
    mat = _as_matrix(a, m)
    n, k = mat.shape
    if n != k:
        raise ValueError("minors are only defined for square matrices")
    if not (0 <= drop_row < n and 0 <= drop_col < n):
        raise IndexError(f"minor index ({drop_row},{drop_col}) out of range for n={n}")
    sub = np.delete(np.delete(mat, drop_row, axis=0), drop_col, axis=1)
    return det(sub, m)


def pivot_columns(sub: Submodule) -> list[int]:
    return [_first_nonzero(row) for row in sub.basis]


def pivot_valuations(sub: Submodule, m: Modulus) -> list[int]:
    """ell-adic valuations of the pivots, one per basis row, ascending order."""
    vals = []
    for row in sub.basis:
        j = _first_nonzero(row)
        vals.append(m.valuation(int(row[j])))
    return vals


def submodule_order(sub: Submodule, m: Modulus) -> int:
    """Number of elements of the span (product of pivot cyclic orders)."""
    order = 1
    for v in pivot_valuations(sub, m):
        order *= m.m // (m.ell**v)
    return order


def intersect(a: Submodule, b: Submodule, m: Modulus) -> Submodule:
    """Intersection of two submodules of the same ambient space.

    Solves for combinations of a-rows lying in b via the kernel of the
    stacked system: x @ [A; B] == 0 with x split as (u, w) gives
    u @ A == -w @ B, so u @ A runs over the intersection.
    """
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if a.nrows == 0 or b.nrows == 0:
        return Submodule(a.ambient_dim, np.zeros((0, a.ambient_dim), dtype=np.int64))
    stacked = np.vstack([a.basis, b.basis])
    ker = kernel(stacked, m)
    combos = (ker.basis[:, : a.nrows] @ a.basis) % m.m
    return howell_form(combos, m)
