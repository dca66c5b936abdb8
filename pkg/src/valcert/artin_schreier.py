"""The degree-p extension by x, its approximants, and dependence evidence.

The intermediate field adjoins x to the base field, and 1/x is an
Artin-Schreier generator: it satisfies X^p - X - 1/u = 0.  The unique
extension of the base valuation is computed by the host engine on (x,y).

The certificates here cover, in order:

* the gap h = x^p - u: its exact shape -u*x^(p-1), its value 2 - 1/p,
  and the fact that this exceeds the tail constant omega = p^4/(p^4-1);
* the approximant ladder h_k: the gap h_k^p - x^p has value
  1 + p^-4 + ... + p^(-4(k+1)) exactly, with everything above the leading
  key polynomial staying above omega;
* maximality: no sampled element g of the level-k local ring beats the
  ladder, and g = h_k attains the bound;
* the approximation ceiling: for every sampled base-field element f,
  v(1/x - f) < -2/p + omega/p < -1/p^2.

The last inequality, quantified over all of the base field, is the value
criterion for the extension being a *dependent* Artin-Schreier defect
extension.  A sampled sweep cannot prove the universal statement; the
report says so and presents the sweep as falsifiable evidence.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .certificates import BUDGET, FAIL, PASS, Certificate
from .embeddings import EmbeddingConfig, embed, embed_uv
from .engine import value
from .keyseq import GenSeq, p_sequence, q_sequence
from .polys import BudgetExceededError, Poly, RatFunc, ring_uv, ring_xy
from .sampling import random_level_element, random_ratfunc, random_value_pinned
from .tower import TowerLevel
from .values import INFINITY, GroupValue, omega

__all__ = [
    "ASGenerator",
    "Approximant",
    "DefectEvidence",
    "EvidenceEntry",
    "artin_schreier_generator",
    "extended_value",
    "gap_element_certificates",
    "build_approximants",
    "verify_approximant_gap",
    "gap_bound_sweep",
    "ceiling_check",
    "dependence_report",
]


@dataclass(frozen=True)
class ASGenerator:
    """The generator 1/x with its minimal-polynomial data X^p - X - 1/u."""

    cfg: EmbeddingConfig
    element: RatFunc  # 1/x in the host ring

    def minimal_poly_at(self, t: RatFunc) -> RatFunc:
        """Evaluate X^p - X - 1/u at t, inside the host ring."""
        one_over_u = 1 / embed_uv(Poly.var(ring_uv(self.cfg.p), "u"), self.cfg)
        return t ** self.cfg.p - t - one_over_u


def artin_schreier_generator(cfg: EmbeddingConfig) -> ASGenerator:
    host = ring_xy(cfg.p)
    x = RatFunc(Poly.var(host, "x"))
    return ASGenerator(cfg, 1 / x)


def extended_value(g: Poly | RatFunc, cfg: EmbeddingConfig, host_seq: GenSeq | None = None) -> GroupValue:
    """Value of an element of the base, intermediate or host field.

    Inputs on (u,v) or (x,v) coordinates are embedded into (x,y) first;
    one engine computes all three valuations, since each is the restriction
    of the host value.
    """
    host_seq = host_seq or q_sequence(cfg.p)
    return value(embed(g, cfg), host_seq)


def gap_value(p: int, k: int) -> GroupValue:
    """Closed-form ladder value 1 + p^-4 + ... + p^(-4(k+1))."""
    series = (p ** (4 * (k + 2)) - 1) // (p**4 - 1)
    return GroupValue(p, series, 4 * (k + 1))


def _timed(id_: str, params: dict, fn) -> Certificate:
    t0 = time.perf_counter()
    try:
        expected, actual, ok = fn()
        status = PASS if ok else FAIL
    except BudgetExceededError as e:
        expected, actual, status = "within budget", str(e), BUDGET
    return Certificate(id=id_, params=params, expected=expected, actual=actual, status=status, elapsed=time.perf_counter() - t0)


def gap_element_certificates(cfg: EmbeddingConfig, host_seq: GenSeq | None = None) -> list[Certificate]:
    """Exact facts about h = x^p - u, and the two rational inequalities."""
    p = cfg.p
    host_seq = host_seq or q_sequence(p)
    host = ring_xy(p)
    x = RatFunc(Poly.var(host, "x"))
    u_img = embed_uv(Poly.var(ring_uv(p), "u"), cfg)
    gap = x**p - u_img
    om = omega(p)
    certs = []

    def identity():
        rhs = -u_img * x ** (p - 1)
        ok = gap == rhs
        return "x^p - u == -u*x^(p-1)", "identity" if ok else "mismatch", ok

    certs.append(_timed("as/gap-identity", {"p": p, "c": cfg.c}, identity))

    def gapval():
        expect = GroupValue(p, 2 * p - 1, 1)  # 2 - 1/p
        got = value(gap, host_seq)
        return str(expect), str(got), got == expect

    certs.append(_timed("as/gap-value", {"p": p, "c": cfg.c}, gapval))

    def above_tail():
        got = value(gap, host_seq)
        return f"> {om}", str(got), got > om

    certs.append(_timed("as/gap-above-tail", {"p": p, "c": cfg.c}, above_tail))

    def ceiling_strict():
        lhs = Fraction(-2, p) + om / p
        rhs = Fraction(-1, p * p)
        return f"{lhs} < {rhs}", f"{lhs} < {rhs}" if lhs < rhs else f"{lhs} >= {rhs}", lhs < rhs

    certs.append(_timed("as/ceiling-strict", {"p": p, "c": cfg.c}, ceiling_strict))
    return certs


@dataclass
class Approximant:
    """Level-k approximant h_k, with the tail of its p-th-power gap.

    h_0 = v^p and h_k = h_(k-1) + (-1)^k * K_(k,k+1)^p.  The tail is
    h_k^p - x^p - (-1)^k * K_(k,k+2), an element of the host field whose
    value stays above the tail constant.
    """

    k: int
    element: RatFunc  # h_k over (u,v)
    tail: RatFunc  # over (x,y)


def build_approximants(tower: list[TowerLevel], k_max: int, cfg: EmbeddingConfig) -> list[Approximant]:
    if len(tower) <= k_max:
        raise ValueError(f"tower has {len(tower)} levels, need {k_max + 1}")
    p = cfg.p
    host = ring_xy(p)
    x = RatFunc(Poly.var(host, "x"))
    xp = x**p
    out = []
    h = tower[0].keys[1] ** p
    for k in range(k_max + 1):
        if k > 0:
            sign = 1 if k % 2 == 0 else -1
            h = h + sign * tower[k].keys[k + 1] ** p
        sign_k = 1 if k % 2 == 0 else -1
        lead = tower[k].keys[k + 2]
        tail = embed_uv(h, cfg) ** p - xp - sign_k * embed_uv(lead, cfg)
        out.append(Approximant(k=k, element=h, tail=tail))
    return out


def verify_approximant_gap(appr: Approximant, cfg: EmbeddingConfig, host_seq: GenSeq | None = None) -> Certificate:
    """Gap value of h_k^p - x^p against the ladder closed form; tail above omega."""
    p = cfg.p
    host_seq = host_seq or q_sequence(p)

    def check():
        host = ring_xy(p)
        x = RatFunc(Poly.var(host, "x"))
        gap = embed_uv(appr.element, cfg) ** p - x**p
        got = value(gap, host_seq)
        expect = gap_value(p, appr.k)
        tail_val = value(appr.tail, host_seq)
        om = omega(p)
        ok = got == expect and tail_val > om
        return (
            f"gap {expect}; tail > {om}",
            f"gap {got}; tail {tail_val}",
            ok,
        )

    return _timed(
        f"as/approximant-gap/k={appr.k}",
        {"p": p, "c": cfg.c, "k": appr.k},
        check,
    )


def gap_bound_sweep(
    level: TowerLevel,
    appr: Approximant,
    cfg: EmbeddingConfig,
    samples: int,
    seed: int,
    host_seq: GenSeq | None = None,
) -> Certificate:
    """No sampled local-ring element beats the ladder bound; h_k attains it."""
    p = cfg.p
    k = level.k
    host_seq = host_seq or q_sequence(p)
    bound = gap_value(p, k)

    def check():
        host = ring_xy(p)
        xp = RatFunc(Poly.var(host, "x")) ** p

        def gap_of(g: RatFunc) -> GroupValue:
            if g.is_zero():
                return value(-xp, host_seq)
            return value(embed_uv(g, cfg) ** p - xp, host_seq)

        attained = gap_of(appr.element)
        if attained != bound:
            return f"attained {bound}", f"attained {attained}", False
        rng = random.Random(f"{seed}:gapbound:k={k}")
        over = 0
        for _ in range(samples):
            g = random_level_element(rng, level, i_cap=k + 3)
            if gap_of(g) > bound:
                over += 1
        ok = over == 0
        return (
            f"{samples} samples <= {bound}; attained by approximant",
            f"{samples - over} samples <= bound; attained {attained}",
            ok,
        )

    return _timed(
        f"as/gap-bound-sweep/k={k}",
        {"p": p, "c": cfg.c, "k": k, "samples": samples, "seed": seed},
        check,
    )


def ceiling_check(
    f: RatFunc,
    cfg: EmbeddingConfig,
    label: str,
    host_seq: GenSeq | None = None,
) -> tuple[GroupValue, Certificate]:
    """v(1/x - f) < -2/p + omega/p < -1/p^2 for a base-field element f."""
    p = cfg.p
    host_seq = host_seq or q_sequence(p)
    host = ring_xy(p)
    x = RatFunc(Poly.var(host, "x"))
    diff = 1 / x - embed_uv(f, cfg)
    got = value(diff, host_seq)
    ceiling = Fraction(-2, p) + omega(p) / p
    crit = Fraction(-1, p * p)

    def check():
        ok = got < ceiling and ceiling < crit
        return f"< {ceiling} < {crit}", str(got), ok

    return got, _timed(
        f"as/ceiling/{label}",
        {"p": p, "c": cfg.c, "f": label},
        check,
    )


@dataclass
class EvidenceEntry:
    label: str
    value: GroupValue
    below_ceiling: bool
    below_criterion: bool


@dataclass
class DefectEvidence:
    """Sweep evidence for the dependence criterion with exponent m.

    The criterion asks that v(1/x - f) < -1/p^m for *every* base-field
    element f.  A finite sweep can only falsify that, never prove it; the
    verdict is "dependent-consistent" when no sampled element violated the
    bound, and every entry is retained so a violation would be visible.
    """

    p: int
    c: int
    m: int
    entries: list[EvidenceEntry]
    verdict: str

    note = (
        "finite sweep: falsifiable evidence for, not a proof of, the "
        "universally quantified criterion"
    )

    def to_certificate(self) -> Certificate:
        ok = self.verdict == "dependent-consistent"
        worst = max(
            (e.value.as_fraction() for e in self.entries if e.value is not INFINITY),
            default=None,
        )
        return Certificate(
            id="as/dependence",
            params={"p": self.p, "c": self.c, "m": self.m, "entries": len(self.entries)},
            expected=f"all sampled values < -1/p^{self.m}",
            actual=f"verdict {self.verdict}; supremum observed {worst}",
            status=PASS if ok else FAIL,
        )


def dependence_report(
    cfg: EmbeddingConfig,
    approximants: list[Approximant],
    samples: int = 40,
    seed: int = 0,
    m: int = 2,
    host_seq: GenSeq | None = None,
) -> DefectEvidence:
    """Run the ceiling check over the documented family of base elements.

    The family: f = 0; the reciprocals of every approximant supplied;
    seeded random elements pinned to value -1/p (the only regime where the
    ceiling needs the ladder bound); and generic seeded random elements.
    """
    p = cfg.p
    host_seq = host_seq or q_sequence(p)
    base_seq = p_sequence(p)
    crit = Fraction(-1, p**m)
    ceiling = Fraction(-2, p) + omega(p) / p
    uv = base_seq.ring

    family: list[tuple[str, RatFunc]] = [("0", RatFunc(Poly.zero(uv)))]
    for appr in approximants:
        family.append((f"1/approximant[{appr.k}]", 1 / appr.element))
    rng = random.Random(f"{seed}:dependence")
    for n in range(samples):
        family.append((f"pinned[{n}]", random_value_pinned(rng, base_seq)))
    for n in range(samples):
        f = random_ratfunc(rng, uv)
        family.append((f"generic[{n}]", f))

    host = ring_xy(p)
    x = RatFunc(Poly.var(host, "x"))
    inv_x = 1 / x
    entries = []
    for label, f in family:
        got = value(inv_x - embed_uv(f, cfg), host_seq)
        entries.append(
            EvidenceEntry(
                label=label,
                value=got,
                below_ceiling=got < ceiling,
                below_criterion=got < crit,
            )
        )
    ok = all(e.below_criterion for e in entries)
    return DefectEvidence(
        p=p,
        c=cfg.c,
        m=m,
        entries=entries,
        verdict="dependent-consistent" if ok else "criterion-violated",
    )
