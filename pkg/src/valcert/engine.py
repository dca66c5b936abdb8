"""Value computation by canonical top-down key-polynomial expansion.

The value of a polynomial is the minimum value over the terms of its
standard expansion

    f = sum  coeff * S_0^m * S_1^(a_1) * ... * S_n^(a_n),   all a_i < p^2,

obtained by writing f in base S_n for the largest applicable n and recursing
on the digit coefficients.  Top-down order is essential: the collisions
v(S_1^(p^2)) = v(S_0) that define the sequence make naive term-by-term
minima wrong, and only the expansion sees the cancellations.

Term values within one expansion are pairwise distinct.  That uniqueness is
what makes the minimum the value, so a tie is treated as an internal fault:
it aborts loudly with a dump of the offending expansion rather than risk a
silently wrong value.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .certificates import FAIL, PASS, Certificate
from .embeddings import EmbeddingConfig, embed_uv
from .keyseq import GenSeq, p_sequence, q_sequence
from .polys import Poly, RatFunc
from .values import INFINITY, GroupValue

__all__ = [
    "ExpansionTerm",
    "Expansion",
    "ValueTieError",
    "expand",
    "value",
    "cross_check",
    "multiplicativity_sweep",
    "ultrametric_sweep",
    "restriction_sweep",
]


class ValueTieError(RuntimeError):
    """Two expansion terms share a value: an implementation bug, not an input error."""


@dataclass(frozen=True)
class ExpansionTerm:
    """One standard monomial coeff * S_0^m * prod S_i^(a_i) with a_i < p^2."""

    coeff: int
    m: int
    a: tuple[int, ...]  # a[i-1] is the exponent of S_i

    def render(self) -> str:
        factors = [f"S0^{self.m}" if self.m != 1 else "S0"] if self.m else []
        for i, ai in enumerate(self.a, start=1):
            if ai:
                factors.append(f"S{i}^{ai}" if ai != 1 else f"S{i}")
        body = "*".join(factors) if factors else "1"
        return body if self.coeff == 1 else f"{self.coeff}*{body}"


@dataclass
class Expansion:
    """Standard expansion of a polynomial along a generating sequence."""

    seq: GenSeq
    terms: list[ExpansionTerm]

    def term_value(self, t: ExpansionTerm) -> GroupValue:
        val = self.seq.scale * t.m
        for i, ai in enumerate(t.a, start=1):
            if ai:
                val = val + self.seq.value(i) * ai
        return val

    def evaluate(self) -> Poly:
        """Re-multiply the expansion; must reproduce the expanded input exactly."""
        ring = self.seq.ring
        out = Poly.zero(ring)
        for t in self.terms:
            part = Poly.monomial(ring, t.coeff, t.m, 0)
            for i, ai in enumerate(t.a, start=1):
                if ai:
                    part = part * self.seq.poly(i) ** ai
            out = out + part
        return out

    def dump(self, limit: int | None = None) -> str:
        shown = self.terms if limit is None else self.terms[:limit]
        rows = [f"  {t.render():<32} value {self.term_value(t)}" for t in shown]
        if limit is not None and len(self.terms) > limit:
            rows.append(f"  ... {len(self.terms) - limit} more terms")
        return "\n".join(rows)


def expand(f: Poly, seq: GenSeq) -> Expansion:
    """Top-down standard expansion of a nonzero polynomial."""
    if f.ring != seq.ring:
        raise ValueError(f"polynomial ring {f.ring} does not match sequence ring {seq.ring}")
    if f.is_zero():
        raise ValueError("cannot expand the zero polynomial")
    raw: list[tuple[int, int, tuple]] = []
    _expand_into(f, seq, seq.p**2, (), raw)
    width = max((pairs[0][0] for _, _, pairs in raw if pairs), default=0)
    terms = []
    for c, m, pairs in raw:
        a = [0] * width
        for i, j in pairs:
            a[i - 1] = j
        terms.append(ExpansionTerm(c, m, tuple(a)))
    return Expansion(seq, terms)


def _expand_into(f: Poly, seq: GenSeq, p2: int, tail: tuple, out: list) -> None:
    # tail holds the (index, digit) exponents already peeled off above this
    # level, highest index first
    d2 = f.deg2()
    if d2 <= 0:
        for (e1, _), c in f._t.items():
            out.append((c, e1, tail))
        return
    n = seq.index_for_degree(d2)
    rest = f
    j = 0
    while not rest.is_zero():
        rest, digit = divmod(rest, seq.poly(n)) if n > 1 else _split_var(rest, seq)
        if not digit.is_zero():
            if j >= p2:
                raise AssertionError(f"digit exponent {j} >= p^2 in base-S{n} expansion")
            _expand_into(digit, seq, p2, tail + ((n, j),) if j else tail, out)
        j += 1


def _split_var(f: Poly, seq: GenSeq):
    # base S_1 is the bare second variable: peel off the v^0 layer directly
    keep = {}
    digit = {}
    for (e1, e2), c in f._t.items():
        if e2 == 0:
            digit[(e1, 0)] = c
        else:
            keep[(e1, e2 - 1)] = c
    return Poly._make(f.ring, keep), Poly._make(f.ring, digit)


def value(f: Poly | RatFunc, seq: GenSeq) -> GroupValue:
    """The valuation of f: minimum standard-expansion term value, exactly.

    Zero maps to INFINITY.  For fractions the value is value(numerator)
    minus value(denominator).
    """
    if isinstance(f, RatFunc):
        if f.num.is_zero():
            return INFINITY
        return value(f.num, seq) - value(f.den, seq)
    if f.is_zero():
        return INFINITY
    exp = expand(f, seq)
    return _min_distinct_value(exp, f)


def _min_distinct_value(exp: Expansion, f: Poly) -> GroupValue:
    # Term values share the denominator p^E, so the minimum and the
    # pairwise-distinctness assertion run on plain integer numerators.
    # The numerators come from the sequence's cached value table, keeping
    # a corrupted table detectable.
    seq = exp.seq
    p = seq.p
    width = max((len(t.a) for t in exp.terms), default=0)
    sigma = seq.scale
    vals = [seq.value(i) for i in range(1, width + 1)]
    shift = max([sigma.exp] + [v.exp for v in vals])
    m_coef = sigma.num * p ** (shift - sigma.exp)
    coefs = [v.num * p ** (shift - v.exp) for v in vals]
    seen: dict[int, ExpansionTerm] = {}
    best: int | None = None
    for t in exp.terms:
        key = t.m * m_coef
        for i, ai in enumerate(t.a):
            if ai:
                key += ai * coefs[i]
        if key in seen:
            other = seen[key]
            raise ValueTieError(
                "tied term values in a standard expansion "
                f"({other.render()} and {t.render()} both have value "
                f"{GroupValue(p, key, shift)}); the theory guarantees distinct "
                "values, so this is an internal fault.\n"
                f"input: {_clip(str(f))}\nexpansion:\n{exp.dump(limit=30)}"
            )
        seen[key] = t
        if best is None or key < best:
            best = key
    return GroupValue(p, best, shift)


def _clip(text: str, limit: int = 400) -> str:
    return text if len(text) <= limit else text[:limit] + " ..."


def _certificate(id_: str, params: dict, expected: str, actual: str, ok: bool, t0: float) -> Certificate:
    return Certificate(
        id=id_,
        params=params,
        expected=expected,
        actual=actual,
        status=PASS if ok else FAIL,
        elapsed=time.perf_counter() - t0,
    )


def cross_check(f: Poly | RatFunc, c: int, label: str = "") -> Certificate:
    """Value on (u,v) against the value of the embedded image on (x,y).

    The host valuation restricts to the base one, so the two independently
    computed values must agree exactly.
    """
    t0 = time.perf_counter()
    if isinstance(f, Poly):
        f = RatFunc(f)
    p = f.ring.p
    cfg = EmbeddingConfig(p, c)
    base = value(f, p_sequence(p))
    host = value(embed_uv(f, cfg), q_sequence(p))
    ident = label or str(f)
    return _certificate(
        f"engine/restriction/c={c}/{ident}",
        {"p": p, "c": c, "f": ident},
        str(base),
        str(host),
        base == host,
        t0,
    )


def _random_poly(rng: random.Random, seq: GenSeq, max_deg: int, max_terms: int) -> Poly:
    while True:
        n = rng.randint(1, max_terms)
        terms = {}
        for _ in range(n):
            e = (rng.randint(0, max_deg), rng.randint(0, max_deg))
            terms[e] = rng.randint(1, seq.p - 1)
        f = Poly(seq.ring, terms)
        if not f.is_zero():
            return f


def multiplicativity_sweep(seq: GenSeq, samples: int, seed: int, max_deg: int = 8) -> Certificate:
    """value(f*g) == value(f) + value(g) over seeded random pairs."""
    t0 = time.perf_counter()
    rng = random.Random(f"{seed}:mult:{seq.name}")
    bad = 0
    for _ in range(samples):
        f = _random_poly(rng, seq, max_deg, 5)
        g = _random_poly(rng, seq, max_deg, 5)
        if value(f * g, seq) != value(f, seq) + value(g, seq):
            bad += 1
    return _certificate(
        f"engine/multiplicative/engine={seq.name}",
        {"engine": seq.name, "p": seq.p, "samples": samples, "seed": seed},
        f"{samples} products split",
        f"{samples - bad} split" if bad else f"{samples} products split",
        bad == 0,
        t0,
    )


def ultrametric_sweep(seq: GenSeq, samples: int, seed: int, max_deg: int = 8) -> Certificate:
    """value(f+g) >= min of values, with equality whenever the values differ."""
    t0 = time.perf_counter()
    rng = random.Random(f"{seed}:ultra:{seq.name}")
    bad = 0
    for _ in range(samples):
        f = _random_poly(rng, seq, max_deg, 5)
        g = _random_poly(rng, seq, max_deg, 5)
        s = f + g
        vf, vg = value(f, seq), value(g, seq)
        lo = vf if vf <= vg else vg
        vs = value(s, seq)
        if vs < lo:
            bad += 1
        elif vf != vg and vs != lo:
            bad += 1
    return _certificate(
        f"engine/ultrametric/engine={seq.name}",
        {"engine": seq.name, "p": seq.p, "samples": samples, "seed": seed},
        f"{samples} sums dominated",
        f"{samples - bad} dominated" if bad else f"{samples} sums dominated",
        bad == 0,
        t0,
    )


def restriction_sweep(p: int, c: int, samples: int, seed: int, max_deg: int = 5) -> Certificate:
    """Cross-engine agreement on seeded random base-field elements."""
    t0 = time.perf_counter()
    rng = random.Random(f"{seed}:cross:{c}")
    seq = p_sequence(p)
    host = q_sequence(p)
    cfg = EmbeddingConfig(p, c)
    bad = 0
    for _ in range(samples):
        num = _random_poly(rng, seq, max_deg, 4)
        den = _random_poly(rng, seq, max_deg, 3)
        f = RatFunc(num, den)
        if value(f, seq) != value(embed_uv(f, cfg), host):
            bad += 1
    return _certificate(
        f"engine/restriction-sweep/c={c}",
        {"p": p, "c": c, "samples": samples, "seed": seed},
        f"{samples} restrictions agree",
        f"{samples - bad} agree" if bad else f"{samples} restrictions agree",
        bad == 0,
        t0,
    )
