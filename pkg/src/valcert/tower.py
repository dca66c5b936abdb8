"""The tower of free quadratic transforms, as explicit rational functions.

Every level-k object lives in the single ambient fraction field of (u,v):
the regular parameters u_k, v_k, the shifted chart coordinate s_k, the
descent unit in u = u_k^(p^(2k)) * unit, the level's key polynomials, the
unit factors of the twisted key recursion, and the drift terms of the
untwisted recursion.  Keeping one common ring makes every claimed identity
checkable as an exact cross-multiplied polynomial equality.

Level recursion (k >= 1, from level k-1):

    u_k = K_(k-1,1)                  v_k = K_(k-1,2) / u_k^(p^2)
    K_(k,i) = K_(k-1,i+1) / u_k^(p^(2i))          for i >= 1
    u_(k-1) = u_k^(p^2) * (s_k + 1)
    unit_k = (s_k^(p^(2(k-1))) + 1) * unit_(k-1)
    gammafactor_(k,i) = gammafactor_(k-1,i+1) * (s_k^(p^(2(i-1))) + 1)

with all level-0 unit factors equal to 1 and all level-0 drifts equal to 0.
"""

from __future__ import annotations

import time
from contextlib import nullcontext
from dataclasses import dataclass, field

from .certificates import BUDGET, FAIL, PASS, Certificate
from .engine import value
from .keyseq import GenSeq, p_sequence
from .polys import BudgetExceededError, Poly, RatFunc, support_limit
from .values import GroupValue

__all__ = [
    "TowerLevel",
    "build_tower",
    "verify_unit_descent",
    "verify_twisted_recursion",
    "verify_drift_recursion",
    "verify_value_formula",
    "key_value_formula",
    "drift_bound",
]


@dataclass
class TowerLevel:
    """All level-k data, realized over the ambient (u,v) fraction field."""

    k: int
    u: RatFunc
    v: RatFunc
    chart_shift: RatFunc | None  # s_k; None at level 0
    descent_unit: RatFunc  # the unit in u = u_k^(p^(2k)) * unit
    keys: dict[int, RatFunc] = field(default_factory=dict)
    unit_factors: dict[int, RatFunc] = field(default_factory=dict)  # i >= 2
    drifts: dict[int, RatFunc] = field(default_factory=dict)  # i >= 2

    @property
    def p(self) -> int:
        return self.u.ring.p

    def key(self, i: int) -> RatFunc:
        return self.keys[i]


def build_tower(p: int, k_max: int, i_max: int, budget: int | None = None) -> list[TowerLevel]:
    """Levels 0..k_max, each carrying key polynomials up to index i_max.

    Intermediate levels carry extra indices (level j holds i_max + k_max - j
    of them) because every recursion step consumes one index.  A support
    budget, when given, aborts with BudgetExceededError instead of silently
    truncating.
    """
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    if i_max < 2:
        raise ValueError("i_max must be >= 2")
    guard = support_limit(budget) if budget is not None else nullcontext()
    with guard:
        seq = p_sequence(p)
        one = RatFunc(Poly.one(seq.ring))
        zero = RatFunc(Poly.zero(seq.ring))
        top = i_max + k_max
        level0 = TowerLevel(
            k=0,
            u=RatFunc(seq.poly(0)),
            v=RatFunc(seq.poly(1)),
            chart_shift=None,
            descent_unit=one,
            keys={i: RatFunc(seq.poly(i)) for i in range(top + 1)},
            unit_factors={i: one for i in range(2, top + 2)},
            drifts={i: zero for i in range(2, top + 2)},
        )
        levels = [level0]
        for k in range(1, k_max + 1):
            levels.append(_next_level(levels[-1], i_max + k_max - k))
        return levels


def _next_level(prev: TowerLevel, i_top: int) -> TowerLevel:
    p = prev.p
    k = prev.k + 1
    u_k = prev.keys[1]
    v_k = prev.keys[2] / u_k ** (p**2)
    s_k = prev.u / u_k ** (p**2) - 1
    unit = (s_k ** (p ** (2 * (k - 1))) + 1) * prev.descent_unit
    keys = {0: u_k, 1: v_k}
    for i in range(2, i_top + 1):
        keys[i] = prev.keys[i + 1] / u_k ** (p ** (2 * i))
    gammas = {
        i: prev.unit_factors[i + 1] * (s_k ** (p ** (2 * (i - 1))) + 1)
        for i in range(2, i_top + 1)
    }
    drifts: dict[int, RatFunc] = {}
    prev_d2 = prev.drifts[2]
    for i in range(2, i_top + 1):
        carried = (
            prev_d2.frob(2 * i - 2) * prev.keys[i - 1] - prev.drifts[i + 1]
        ) / u_k ** (p ** (2 * i))
        if i == 2:
            fresh = u_k * v_k.frob(2)
        else:
            fresh = u_k ** (p ** (2 * (i - 2))) * v_k.frob(2 * i - 2) * keys[i - 2]
        drifts[i] = fresh - carried
    return TowerLevel(
        k=k,
        u=u_k,
        v=v_k,
        chart_shift=s_k,
        descent_unit=unit,
        keys=keys,
        unit_factors=gammas,
        drifts=drifts,
    )


def key_value_formula(p: int, k: int, i: int) -> GroupValue:
    """Closed-form value of the level-k key polynomial of index i."""
    if i == 0:
        return GroupValue(p, 1, 2 * k)
    series = (p ** (4 * i) - 1) // (p**4 - 1)
    return GroupValue(p, series, 2 * i + 2 * k)


def drift_bound(p: int, k: int, i: int) -> GroupValue:
    """Lower bound sum_(j=1..i-1) p^(4j-2i-2k) + p^(4-2i-2k) for drift values."""
    series = (p ** (4 * i) - p**4) // (p**4 - 1)  # sum of p^(4j), j = 1..i-1
    return GroupValue(p, series + p**4, 2 * i + 2 * k)


def _timed(id_: str, params: dict, fn) -> Certificate:
    t0 = time.perf_counter()
    try:
        expected, actual, ok = fn()
        status = PASS if ok else FAIL
    except BudgetExceededError as e:
        expected, actual, status = "within budget", str(e), BUDGET
    return Certificate(
        id=id_,
        params=params,
        expected=expected,
        actual=actual,
        status=status,
        elapsed=time.perf_counter() - t0,
    )


def verify_unit_descent(level: TowerLevel, seq: GenSeq | None = None) -> Certificate:
    """u equals u_k^(p^(2k)) times the descent unit, and the unit has value 0."""
    seq = seq or p_sequence(level.p)
    p, k = level.p, level.k
    base_u = RatFunc(seq.poly(0))

    def check():
        lhs = base_u
        rhs = level.u ** (p ** (2 * k)) * level.descent_unit
        identity = lhs == rhs
        unit_val = value(level.descent_unit, seq)
        ok = identity and unit_val == 0
        expected = "identity; unit value 0"
        actual = (
            f"{'identity' if identity else 'mismatch'}; unit value {unit_val}"
        )
        return expected, actual, ok

    return _timed(
        f"tower/unit-descent/k={k}",
        {"p": p, "k": k},
        check,
    )


def verify_twisted_recursion(level: TowerLevel, i: int, seq: GenSeq | None = None) -> Certificate:
    """The key recursion with unit factors, plus the unit-factor value facts.

    Identity (exact):   K_(k,2) = K_(k,1)^(p^2) - gamma * K_(k,0)
                        K_(k,i) = K_(k,i-1)^(p^2) - gamma * K_(k,0)^(p^(2(i-2))) * K_(k,i-2)
    Values: v(gamma) = 0 and v(gamma - 1) >= 2 * p^(-2(k+1)), the value
    floor for membership in the square of the level's maximal ideal.
    """
    if i < 2:
        raise ValueError("twisted recursion starts at index 2")
    seq = seq or p_sequence(level.p)
    p, k = level.p, level.k

    def check():
        gamma = level.unit_factors[i]
        if i == 2:
            rhs = level.keys[1].frob(2) - gamma * level.keys[0]
        else:
            rhs = level.keys[i - 1].frob(2) - gamma * level.keys[0] ** (p ** (2 * (i - 2))) * level.keys[i - 2]
        identity = level.keys[i] == rhs
        unit_val = value(gamma, seq)
        dist = value(gamma - 1, seq)
        floor = GroupValue(p, 2, 2 * (k + 1))
        ok = identity and unit_val == 0 and dist >= floor
        expected = f"identity; unit value 0; offset value >= {floor}"
        actual = (
            f"{'identity' if identity else 'mismatch'}; unit value {unit_val}; "
            f"offset value {dist}"
        )
        return expected, actual, ok

    return _timed(
        f"tower/twisted-recursion/k={k}/i={i}",
        {"p": p, "k": k, "i": i},
        check,
    )


def verify_drift_recursion(level: TowerLevel, i: int, seq: GenSeq | None = None) -> Certificate:
    """The untwisted key recursion with drift, and the drift value bound.

    Identity (exact):   K_(k,2) = K_(k,1)^(p^2) - K_(k,0) + drift
                        K_(k,i) = K_(k,i-1)^(p^2) - K_(k,0)^(p^(2(i-2))) * K_(k,i-2) + drift
    Bound: v(drift) >= sum_(j=1..i-1) p^(4j-2i-2k) + p^(4-2i-2k).
    """
    if i < 2:
        raise ValueError("drift recursion starts at index 2")
    seq = seq or p_sequence(level.p)
    p, k = level.p, level.k

    def check():
        drift = level.drifts[i]
        if i == 2:
            rhs = level.keys[1].frob(2) - level.keys[0] + drift
        else:
            rhs = level.keys[i - 1].frob(2) - level.keys[0] ** (p ** (2 * (i - 2))) * level.keys[i - 2] + drift
        identity = level.keys[i] == rhs
        dval = value(drift, seq)
        bound = drift_bound(p, k, i)
        ok = identity and dval >= bound
        expected = f"identity; drift value >= {bound}"
        actual = f"{'identity' if identity else 'mismatch'}; drift value {dval}"
        return expected, actual, ok

    return _timed(
        f"tower/drift-recursion/k={k}/i={i}",
        {"p": p, "k": k, "i": i},
        check,
    )


def verify_value_formula(level: TowerLevel, i: int, seq: GenSeq | None = None) -> Certificate:
    """Engine value of the level-k key polynomial against the closed form."""
    seq = seq or p_sequence(level.p)
    p, k = level.p, level.k

    def check():
        expected = key_value_formula(p, k, i)
        actual = value(level.keys[i], seq)
        return str(expected), str(actual), actual == expected

    return _timed(
        f"tower/value-formula/k={k}/i={i}",
        {"p": p, "k": k, "i": i},
        check,
    )
