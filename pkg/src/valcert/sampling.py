"""Seeded random elements for the oracle sweeps.

All samplers take an explicit ``random.Random`` so that every sweep is
reproducible from its seed alone.
"""

from __future__ import annotations

import random

from .engine import value
from .keyseq import GenSeq
from .polys import Poly, RatFunc, Ring
from .values import GroupValue

__all__ = [
    "random_poly",
    "random_ratfunc",
    "random_level_element",
    "random_value_pinned",
]


def random_poly(
    rng: random.Random,
    ring: Ring,
    max_deg: int = 6,
    max_terms: int = 4,
    nonzero: bool = True,
) -> Poly:
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            e = (rng.randint(0, max_deg), rng.randint(0, max_deg))
            terms[e] = rng.randint(1, ring.p - 1)
        f = Poly(ring, terms)
        if f or not nonzero:
            return f


def random_ratfunc(rng: random.Random, ring: Ring, max_deg: int = 5) -> RatFunc:
    num = random_poly(rng, ring, max_deg, 4)
    den = random_poly(rng, ring, max_deg, 3)
    return RatFunc(num, den)


def random_level_element(
    rng: random.Random,
    level,
    i_cap: int,
    max_m: int = 2,
    max_summands: int = 3,
    weight_cap: int | None = None,
) -> RatFunc:
    """Random element of the level-k local ring.

    An F_p-combination of standard monomials u_k^m * prod K_(k,i)^(a_i)
    with every a_i < p^2, realized over the ambient (u,v) field.  Each
    summand's total key weight sum a_i * p^(2i) is capped (default: twice
    the weight of the single top-index key), which keeps degrees at a level
    the exact engine expands in well under a second while still reaching
    the extremal single-key monomials.
    """
    p = level.p
    i_cap = min(i_cap, max(level.keys))
    if weight_cap is None:
        weight_cap = 2 * p ** (2 * i_cap)
    out = RatFunc(Poly.zero(level.u.ring))
    for _ in range(rng.randint(1, max_summands)):
        part = RatFunc(Poly.const(level.u.ring, rng.randint(1, p - 1)))
        part = part * level.keys[0] ** rng.randint(0, max_m)
        budget = weight_cap
        picks = rng.sample(range(1, i_cap + 1), rng.randint(0, min(2, i_cap)))
        for i in sorted(picks, reverse=True):
            w = p ** (2 * i)
            top = min(p * p - 1, budget // w)
            if top < 1:
                continue
            a = rng.randint(1, top)
            budget -= a * w
            part = part * level.keys[i] ** a
        out = out + part
    return out


def random_value_pinned(rng: random.Random, seq: GenSeq) -> RatFunc:
    """Random base-field element of value exactly -1/p.

    Backbone 1/v^p (the minimal-denominator realization of value -1/p, since
    v(v) = 1/p^2), times a unit, plus noise of value > -1/p.
    """
    ring = seq.ring
    p = ring.p
    unit = Poly.const(ring, rng.randint(1, p - 1)) + random_poly(rng, ring, 3, 2) * Poly.var(ring, "u")
    backbone = RatFunc(unit, Poly.monomial(ring, 1, 0, p))
    noise = RatFunc(random_poly(rng, ring, 4, 3, nonzero=False), Poly.monomial(ring, 1, 0, p - 1))
    f = backbone + noise
    got = value(f, seq)
    if got != GroupValue(p, -1, 1):
        raise AssertionError(f"pinned sampler produced value {got}, wanted -1/{p}")
    return f
