"""Arithmetic in F_p and F_{p^2}, and the canonical discrete logarithm.

A :class:`PrimeContext` pins every arbitrary choice made by the rest of the
package: the primes (p, ell), the exponents s <= t with ell^t the exact power
of ell dividing p - 1, the *smallest* primitive root g mod p, and the
*smallest* quadratic non-residue qnr defining the model
F_{p^2} = F_p[x]/(x^2 - qnr).  Fixing the smallest choices makes every output
reproducible bit for bit; all downstream identities are insensitive to them.

The discrete log used everywhere is ind_g reduced mod ell^t, computed by
projecting onto the ell-Sylow subgroup and solving digit by digit
(Pohlig-Hellman); it is a surjective homomorphism (Z/p)^* -> Z/ell^t.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

__all__ = [
    "PrimeContext",
    "Fp2Elt",
    "Fp2Field",
    "make_context",
    "fp2_arith",
    "frobenius",
    "norm_to_fp",
    "dlog_ell",
    "is_prime",
    "sqrt_mod",
]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the sizes used here."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def smallest_primitive_root(p: int) -> int:
    exponents = [(p - 1) // q for q in _factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, e, p) != 1 for e in exponents):
            return g
    raise ValueError(f"no primitive root mod {p}")


def smallest_qnr(p: int) -> int:
    for n in range(2, p):
        if pow(n, (p - 1) // 2, p) == p - 1:
            return n
    raise ValueError(f"no quadratic non-residue mod {p}")


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a mod p (odd prime), or None if a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q = p - 1
    e = 0
    while q % 2 == 0:
        q //= 2
        e += 1
    z = pow(smallest_qnr(p), q, p)
    x = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    while t != 1:
        # order of t is 2^i with 0 < i < e
        i = 0
        t2 = t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(z, 1 << (e - i - 1), p)
        x = x * b % p
        z = b * b % p
        t = t * z % p
        e = i
    return x


class Fp2Elt(NamedTuple):
    """c0 + c1*sqrt(qnr) in the fixed model of F_{p^2}."""

    c0: int
    c1: int

    def to_json(self) -> list[int]:
        return [self.c0, self.c1]


@dataclass(frozen=True)
class PrimeContext:
    """All global parameters of a (p, ell, s) computation."""

    p: int
    ell: int
    s: int
    t: int
    r: int  # ell**t
    g: int  # smallest primitive root mod p
    qnr: int  # smallest quadratic non-residue mod p

    @property
    def modulus(self) -> int:
        """Coefficient modulus ell**s for homology computations."""
        return self.ell**self.s

    def field(self) -> "Fp2Field":
        return Fp2Field(self.p, self.qnr)

    def label(self) -> str:
        return f"({self.p},{self.ell},{self.s})"


def make_context(p: int, ell: int, s: int) -> PrimeContext:
    """Validate (p, ell, s) and fix all derived choices.

    Requires p, ell prime, p >= 11, ell >= 5, ell | p - 1 and 1 <= s <= t
    where ell^t exactly divides p - 1.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if not is_prime(ell):
        raise ValueError(f"ell = {ell} is not prime")
    if p < 11:
        raise ValueError(f"p = {p} < 11 is out of range")
    if ell < 5:
        raise ValueError(f"ell = {ell} < 5 is out of range")
    if (p - 1) % ell:
        raise ValueError(f"ell = {ell} does not divide p - 1 = {p - 1}")
    t = 0
    n = p - 1
    while n % ell == 0:
        n //= ell
        t += 1
    if not 1 <= s <= t:
        raise ValueError(f"s = {s} outside 1..t = {t}")
    g = smallest_primitive_root(p)
    qnr = smallest_qnr(p)
    assert pow(qnr, (p - 1) // 2, p) == p - 1
    return PrimeContext(p=p, ell=ell, s=s, t=t, r=ell**t, g=g, qnr=qnr)


class Fp2Field:
    """Arithmetic in F_p[x]/(x^2 - qnr) on Fp2Elt pairs."""

    __slots__ = ("p", "qnr")

    def __init__(self, p: int, qnr: int):
        self.p = p
        self.qnr = qnr

    def elt(self, c0: int, c1: int = 0) -> Fp2Elt:
        return Fp2Elt(c0 % self.p, c1 % self.p)

    @property
    def zero(self) -> Fp2Elt:
        return Fp2Elt(0, 0)

    @property
    def one(self) -> Fp2Elt:
        return Fp2Elt(1, 0)

    def add(self, a: Fp2Elt, b: Fp2Elt) -> Fp2Elt:
        return Fp2Elt((a.c0 + b.c0) % self.p, (a.c1 + b.c1) % self.p)

    def sub(self, a: Fp2Elt, b: Fp2Elt) -> Fp2Elt:
        return Fp2Elt((a.c0 - b.c0) % self.p, (a.c1 - b.c1) % self.p)

    def mul(self, a: Fp2Elt, b: Fp2Elt) -> Fp2Elt:
        return Fp2Elt(
            (a.c0 * b.c0 + self.qnr * a.c1 * b.c1) % self.p,
            (a.c0 * b.c1 + a.c1 * b.c0) % self.p,
        )

    def inv(self, a: Fp2Elt) -> Fp2Elt:
        n = (a.c0 * a.c0 - self.qnr * a.c1 * a.c1) % self.p
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in F_p^2")
        ninv = pow(n, -1, self.p)
        return Fp2Elt(a.c0 * ninv % self.p, -a.c1 * ninv % self.p)

    def div(self, a: Fp2Elt, b: Fp2Elt) -> Fp2Elt:
        return self.mul(a, self.inv(b))

    def pow(self, a: Fp2Elt, e: int) -> Fp2Elt:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = self.one
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def frobenius(self, a: Fp2Elt) -> Fp2Elt:
        """a^p, which is conjugation c1 -> -c1."""
        return Fp2Elt(a.c0, (-a.c1) % self.p)

    def norm(self, a: Fp2Elt) -> int:
        """a^(p+1) = c0^2 - qnr*c1^2 as an element of F_p."""
        return (a.c0 * a.c0 - self.qnr * a.c1 * a.c1) % self.p


def fp2_arith(field: Fp2Field, a: Fp2Elt, b: Fp2Elt, op: str) -> Fp2Elt:
    """Dispatch {add, sub, mul, div} in the fixed F_{p^2} model."""
    if op == "add":
        return field.add(a, b)
    if op == "sub":
        return field.sub(a, b)
    if op == "mul":
        return field.mul(a, b)
    if op == "div":
        return field.div(a, b)
    raise ValueError(f"unknown op {op!r}")


def frobenius(field: Fp2Field, a: Fp2Elt) -> Fp2Elt:
    return field.frobenius(a)


def norm_to_fp(field: Fp2Field, a: Fp2Elt) -> int:
    return field.norm(a)


def dlog_ell(x: int, ctx: PrimeContext) -> int:
    """ind_g(x) mod ell^t for x in (Z/p)^*, by Pohlig-Hellman on the ell-part.

    Raises on x == 0 mod p.  dlog_ell(x*y) == dlog_ell(x) + dlog_ell(y)
    mod ell^t, and dlog_ell(g) == 1.
    """
    p, ell, t = ctx.p, ctx.ell, ctx.t
    x %= p
    if x == 0:
        raise ValueError("discrete log of 0")
    cofactor = (p - 1) // ctx.r
    h = pow(x, cofactor, p)
    gamma = pow(ctx.g, cofactor, p)  # order ell^t
    gamma_inv = pow(gamma, -1, p)
    # gamma^(ell^(t-1)) has order ell; solve one base-ell digit at a time
    zeta = pow(gamma, ell ** (t - 1), p)
    e = 0
    cur = h
    for i in range(t):
        target = pow(cur, ell ** (t - 1 - i), p)
        digit = 0
        acc = 1
        while acc != target:
            acc = acc * zeta % p
            digit += 1
            if digit >= ell:
                raise ArithmeticError("digit search failed; inputs inconsistent")
        e += digit * ell**i
        cur = cur * pow(gamma_inv, digit * ell**i, p) % p
    return e
