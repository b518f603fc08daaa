"""Cached builders shared across test modules (contexts are expensive-ish)."""

from __future__ import annotations

from functools import lru_cache

from eisalpha.gfield import PrimeContext, make_context
from eisalpha.ssgraph import SupersingularSet, enumerate_supersingular

# the standard verification battery: every identity is checked on all of these
BATTERY = [
    (11, 5, 1),
    (31, 5, 1),
    (41, 5, 1),
    (61, 5, 1),
    (71, 5, 1),
    (101, 5, 2),
    (29, 7, 1),
    (43, 7, 1),
    (23, 11, 1),
    (181, 5, 1),
]

TREE_BATTERY = [(61, 5), (181, 5), (241, 5), (337, 7), (421, 5)]


@lru_cache(maxsize=None)
def ctx(p: int, ell: int, s: int) -> PrimeContext:
    return make_context(p, ell, s)


@lru_cache(maxsize=None)
def sset(p: int, ell: int, s: int) -> SupersingularSet:
    return enumerate_supersingular(ctx(p, ell, s))
