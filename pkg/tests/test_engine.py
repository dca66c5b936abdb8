"""Expansion and value computation, with the independent oracles."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from valcert.engine import (
    ValueTieError,
    cross_check,
    expand,
    multiplicativity_sweep,
    restriction_sweep,
    ultrametric_sweep,
    value,
)
from valcert.keyseq import p_sequence, q_sequence
from valcert.polys import Poly, RatFunc, ring_uv
from valcert.values import GroupValue, INFINITY

R2 = ring_uv(2)
U, V = Poly.var(R2, "u"), Poly.var(R2, "v")


def rnd_poly(rng, ring, max_deg=7, max_terms=5):
    while True:
        t = {
            (rng.randint(0, max_deg), rng.randint(0, max_deg)): rng.randint(1, ring.p - 1)
            for _ in range(rng.randint(1, max_terms))
        }
        f = Poly(ring, t)
        if f:
            return f


def test_expand_sees_the_cancellation():
    # the expansion of v^(p^2) - u must be the single key monomial, not a
    # term-by-term minimum
    seq = p_sequence(2)
    e = expand(V**4 + U, seq)
    assert len(e.terms) == 1
    t = e.terms[0]
    assert t.m == 0 and t.a == (0, 1) and t.coeff == 1


def test_expand_monomial():
    e = expand(U**3, p_sequence(2))
    assert len(e.terms) == 1 and e.terms[0].m == 3 and not e.terms[0].a


def test_expand_v5():
    seq = p_sequence(2)
    e = expand(V**5, seq)
    rendered = sorted(t.render() for t in e.terms)
    assert rendered == ["S0*S1", "S1*S2"]
    assert e.evaluate() == V**5


def test_expand_rejects():
    seq = p_sequence(2)
    with pytest.raises(ValueError):
        expand(Poly.zero(R2), seq)
    with pytest.raises(ValueError):
        expand(Poly.var(ring_uv(3), "u"), seq)


def test_value_examples():
    seq = p_sequence(2)
    assert value(V**4 + U, seq) == GroupValue(2, 17, 4)
    for m in (0, 1, 5):
        assert value(U**m, seq) == m
    assert value(V**5, seq) == GroupValue(2, 5, 2)
    assert value(Poly.zero(R2), seq) is INFINITY


def test_value_ratfunc():
    seq = p_sequence(2)
    assert value(RatFunc(U, V), seq) == GroupValue(2, 3, 2)
    f = RatFunc(V**3 + U, V**2 + U * V)
    assert value(f / f, seq) == 0
    assert value(RatFunc(Poly.one(R2), V**2), seq) == GroupValue(2, -1, 1)
    assert value(RatFunc(Poly.zero(R2), V), seq) is INFINITY


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=2**30))
def test_reconstruction(seed):
    rng = random.Random(seed)
    seq = p_sequence(2)
    f = rnd_poly(rng, R2, max_deg=12)
    e = expand(f, seq)
    assert e.evaluate() == f
    assert all(a < 4 for t in e.terms for a in t.a)


def test_multiplicativity_seeded():
    seq = p_sequence(2)
    rng = random.Random("unit:mult")
    for _ in range(60):
        f, g = rnd_poly(rng, R2), rnd_poly(rng, R2)
        assert value(f * g, seq) == value(f, seq) + value(g, seq)


def test_ultrametric_seeded():
    for seq in (p_sequence(2), q_sequence(3)):
        rng = random.Random("unit:ultra")
        for _ in range(60):
            f, g = rnd_poly(rng, seq.ring), rnd_poly(rng, seq.ring)
            s = f + g
            vf, vg, vs = value(f, seq), value(g, seq), value(s, seq)
            lo = min(vf.as_fraction(), vg.as_fraction())
            if s.is_zero():
                assert vs is INFINITY
            else:
                assert vs.as_fraction() >= lo
            if vf != vg:
                assert vs == min((vf, vg), key=lambda x: x.as_fraction())


def test_sweep_certificates():
    assert multiplicativity_sweep(p_sequence(2), 50, seed=1).passed
    assert ultrametric_sweep(q_sequence(2), 50, seed=1).passed
    assert restriction_sweep(3, 2, 20, seed=1).passed


def test_distinct_values_exhaustive_small():
    # all standard-monomial values with n <= 3, m <= 16, a_i < p^2 at p=2
    seq = p_sequence(2)
    seen = set()
    for m in range(17):
        for a1 in range(4):
            for a2 in range(4):
                for a3 in range(4):
                    val = seq.scale * m + seq.value(1) * a1 + seq.value(2) * a2 + seq.value(3) * a3
                    seen.add(val.as_fraction())
    assert len(seen) == 17 * 4 * 4 * 4


def test_corrupted_value_table_aborts_loudly():
    seq = p_sequence(2)
    seq.value(1)
    seq._values[1] = seq.scale  # v(S_1) deliberately collides with v(S_0)
    with pytest.raises(ValueTieError) as info:
        value(U + V, seq)
    message = str(info.value)
    assert "tied term values" in message
    assert "expansion" in message  # diagnostic dump present


def test_cross_check_examples():
    seq = p_sequence(2)
    for f, label in ((U, "u"), (V, "v"), (seq.poly(3), "K3")):
        for c in (1, 2):
            cert = cross_check(RatFunc(f), c, label=label)
            assert cert.passed, (label, c, cert.actual)


def test_cross_check_values_match_spec():
    cert = cross_check(RatFunc(U), 1)
    assert cert.expected == "1"
    cert = cross_check(RatFunc(V), 1)
    assert cert.expected == "1/4"
