"""Classical modular polynomials Phi_q(X, Y) for q in {2, 3, 5, 7}.

Phi_q is the symmetric integer polynomial of degree q + 1 in each variable
vanishing exactly on pairs of j-invariants linked by a cyclic q-isogeny.
Rather than trusting a long transcribed coefficient table, Phi_q is derived
here from scratch with exact integer arithmetic:

* the q-expansion of j = E4^3 / Delta is computed over Z,
* the power sums of the roots j((tau + i)/q) are read off every q-th
  coefficient of j^m (the roots' twists by q-th roots of unity cancel),
* Newton's identities turn power sums into elementary symmetric functions,
* multiplying by (X - j(q tau)) and peeling poles against powers of j
  expresses every X-coefficient as an integer polynomial in j.

Small reference tables for q = 2, 3 are kept for an entry-by-entry
cross-check, and every Phi_q is validated against the Kronecker congruence
Phi_q(X, Y) == (X^q - Y)(X - Y^q) mod q and the symmetry Phi(X, Y) = Phi(Y, X).
"""

from __future__ import annotations

from functools import lru_cache

__all__ = ["classical_modular_polynomial", "SUPPORTED_LEVELS"]

SUPPORTED_LEVELS = (2, 3, 5, 7)

_PHI2_TABLE = {
    (3, 0): 1,
    (0, 3): 1,
    (2, 2): -1,
    (2, 1): 1488,
    (1, 2): 1488,
    (2, 0): -162000,
    (0, 2): -162000,
    (1, 1): 40773375,
    (1, 0): 8748000000,
    (0, 1): 8748000000,
    (0, 0): -157464000000000,
}

_PHI3_TABLE = {
    (4, 0): 1,
    (0, 4): 1,
    (3, 3): -1,
    (3, 2): 2232,
    (2, 3): 2232,
    (3, 1): -1069956,
    (1, 3): -1069956,
    (3, 0): 36864000,
    (0, 3): 36864000,
    (2, 2): 2587918086,
    (2, 1): 8900222976000,
    (1, 2): 8900222976000,
    (2, 0): 452984832000000,
    (0, 2): 452984832000000,
    (1, 1): -770845966336000000,
    (1, 0): 1855425871872000000000,
    (0, 1): 1855425871872000000000,
}


class _Laurent:
    """Dense integer Laurent series: coeffs[i] is the q^(off + i) coefficient.

    ``top`` is the largest exponent whose coefficient is known; operations
    propagate validity so that silent precision loss is impossible.
    """

    __slots__ = ("off", "coeffs")

    def __init__(self, off: int, coeffs: list[int]):
        self.off = off
        self.coeffs = coeffs

    @property
    def top(self) -> int:
        return self.off + len(self.coeffs) - 1

    def __getitem__(self, n: int) -> int:
        if n > self.top:
            raise IndexError(f"coefficient q^{n} beyond precision {self.top}")
        if n < self.off:
            return 0
        return self.coeffs[n - self.off]

    def truncate(self, top: int) -> "_Laurent":
        keep = top - self.off + 1
        return _Laurent(self.off, self.coeffs[: max(keep, 0)])

    def add(self, other: "_Laurent") -> "_Laurent":
        off = min(self.off, other.off)
        top = min(self.top, other.top)
        return _Laurent(off, [self[n] + other[n] for n in range(off, top + 1)])

    def scale(self, c: int) -> "_Laurent":
        return _Laurent(self.off, [c * x for x in self.coeffs])

    def mul(self, other: "_Laurent") -> "_Laurent":
        top = min(self.top + other.off, other.top + self.off)
        off = self.off + other.off
        n_out = top - off + 1
        if n_out <= 0:
            return _Laurent(off, [])
        out = [0] * n_out
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            jmax = min(len(other.coeffs), n_out - i)
            for j in range(jmax):
                out[i + j] += a * other.coeffs[j]
        return _Laurent(off, out)

    def divexact(self, c: int) -> "_Laurent":
        out = []
        for x in self.coeffs:
            q, r = divmod(x, c)
            if r:
                raise ArithmeticError("non-exact division in Newton recursion")
            out.append(q)
        return _Laurent(self.off, out)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coeffs)


def _j_series(nterms: int) -> _Laurent:
    """q-expansion of j to exponents -1 .. nterms - 2, exact over Z."""
    n = nterms  # power-series length in q^0 .. q^(n-1)
    sigma3 = [0] * n
    for d in range(1, n):
        d3 = d * d * d
        for mult in range(d, n, d):
            sigma3[mult] += d3
    e4 = [240 * s for s in sigma3]
    e4[0] = 1

    # Delta / q = prod (1 - q^k)^24, truncated
    prod = [0] * n
    prod[0] = 1
    for k in range(1, n):
        term = [0] * n
        term[0] = 1
        term[k] = -1
        for _ in range(24):
            new = [0] * n
            for i, a in enumerate(prod):
                if a == 0:
                    continue
                new[i] += a
                if i + k < n:
                    new[i + k] -= a
            prod = new
        # rebind: prod now includes (1 - q^k)^24
    # invert the unit power series prod
    inv = [0] * n
    inv[0] = 1
    for i in range(1, n):
        acc = 0
        for k in range(1, i + 1):
            acc += prod[k] * inv[i - k]
        inv[i] = -acc

    e43 = _Laurent(0, e4).mul(_Laurent(0, e4)).mul(_Laurent(0, e4))
    j = e43.mul(_Laurent(-1, inv))
    return j.truncate(nterms - 2)


def _j_of_q_tau(j: _Laurent, q: int, top: int) -> _Laurent:
    """j(q*tau): exponent n of j becomes q*n, truncated at ``top``."""
    coeffs = [0] * (top + q + 1)
    for n in range(j.off, j.top + 1):
        if q * n > top:
            break
        coeffs[q * n + q] = j[n]
    return _Laurent(-q, coeffs)


def _compute_phi(q: int) -> dict[tuple[int, int], int]:
    k_top = q + 4  # q_tau precision carried through the computation
    nu = q * (k_top + 1) + 4
    j = _j_series(nu)

    # power sums of the q roots j((tau + i)/q): every q-th coefficient of j^m
    powers = [None, j]
    for m in range(2, q + 1):
        powers.append(powers[-1].mul(j))
    psums: list[_Laurent | None] = [None]
    for m in range(1, q + 1):
        jm = powers[m]
        lo = -1 if m == q else 0  # j^m has a u-pole of order m < q unless m == q
        coeffs = [q * jm[q * n] for n in range(lo, k_top + 1)]
        psums.append(_Laurent(lo, coeffs))

    # Newton's identities: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
    esyms: list[_Laurent] = [_Laurent(0, [1] + [0] * k_top)]
    for k in range(1, q + 1):
        acc = None
        for i in range(1, k + 1):
            term = esyms[k - i].mul(psums[i])
            if i % 2 == 0:
                term = term.scale(-1)
            acc = term if acc is None else acc.add(term)
        esyms.append(acc.divexact(k).truncate(k_top))

    # A(X) = prod (X - root) = sum (-1)^k e_k X^(q-k); then * (X - j(q tau))
    a_coeffs: dict[int, _Laurent] = {}
    for k in range(q + 1):
        a_coeffs[q - k] = esyms[k] if k % 2 == 0 else esyms[k].scale(-1)
    jq = _j_of_q_tau(j, q, k_top)
    full: dict[int, _Laurent] = {q + 1: _Laurent(0, [1] + [0] * k_top)}
    for deg in range(q + 1):
        term = a_coeffs[deg].mul(jq).scale(-1)
        if deg >= 1:
            term = term.add(a_coeffs[deg - 1])
        full[deg] = term

    # peel poles against powers of j: a_deg = sum_h beta[deg,h] * j^h
    jpow = [_Laurent(0, [1] + [0] * (nu - 2))]
    for _ in range(q + 1):
        jpow.append(jpow[-1].mul(j))
    phi: dict[tuple[int, int], int] = {}
    for deg in range(q + 2):
        residual = full[deg]
        for h in range(q + 1, -1, -1):
            beta = residual[-h]
            if beta:
                residual = residual.add(jpow[h].scale(-beta).truncate(residual.top))
                phi[(deg, h)] = beta
        if not residual.is_zero():
            raise ArithmeticError(
                f"level {q}: X^{deg} coefficient is not polynomial in j"
            )
    return phi


def _kronecker_congruence_holds(q: int, phi: dict[tuple[int, int], int]) -> bool:
    """Phi_q(X, Y) == (X^q - Y)(X - Y^q) mod q."""
    want = {(q + 1, 0): 1, (q, q): -1, (1, 1): -1, (0, q + 1): 1}
    keys = set(phi) | set(want)
    return all((phi.get(k, 0) - want.get(k, 0)) % q == 0 for k in keys)


@lru_cache(maxsize=None)
def classical_modular_polynomial(q: int) -> dict[tuple[int, int], int]:
    """Coefficient table {(deg_X, deg_Y): c} of Phi_q, fully validated.

    The returned dict is cached; treat it as read-only.
    """
    if q not in SUPPORTED_LEVELS:
        raise ValueError(f"level {q} not supported (have {SUPPORTED_LEVELS})")
    phi = _compute_phi(q)
    if any(phi[k] != phi[(k[1], k[0])] for k in phi):
        raise ArithmeticError(f"level {q}: computed table is not symmetric")
    if not _kronecker_congruence_holds(q, phi):
        raise ArithmeticError(f"level {q}: Kronecker congruence fails")
    reference = {2: _PHI2_TABLE, 3: _PHI3_TABLE}.get(q)
    if reference is not None and phi != reference:
        raise ArithmeticError(f"level {q}: computed table deviates from reference")
    return phi
