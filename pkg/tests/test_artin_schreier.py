"""The degree-p extension: generator, ladder, ceiling, dependence evidence."""

import random
from fractions import Fraction

import pytest

from valcert.artin_schreier import (
    artin_schreier_generator,
    build_approximants,
    ceiling_check,
    dependence_report,
    extended_value,
    gap_bound_sweep,
    gap_element_certificates,
    gap_value,
    verify_approximant_gap,
)
from valcert.embeddings import EmbeddingConfig, embed_uv, embed_xv
from valcert.engine import value
from valcert.keyseq import p_sequence, q_sequence
from valcert.polys import Poly, RatFunc, ring_uv, ring_xv, ring_xy
from valcert.sampling import random_ratfunc
from valcert.tower import build_tower
from valcert.values import GroupValue, omega


@pytest.fixture(scope="module")
def setup2():
    cfg = EmbeddingConfig.default(2)
    tower = build_tower(2, 2, 4)
    return cfg, tower, build_approximants(tower, 2, cfg)


@pytest.fixture(scope="module")
def setup3():
    cfg = EmbeddingConfig.default(3)
    tower = build_tower(3, 1, 3)
    return cfg, tower, build_approximants(tower, 1, cfg)


def test_embedding_config_validation():
    EmbeddingConfig(3, 2)
    EmbeddingConfig(3, 4)
    with pytest.raises(ValueError):
        EmbeddingConfig(3, 3)  # (p-1) does not divide c
    with pytest.raises(ValueError):
        EmbeddingConfig(3, 0)
    with pytest.raises(ValueError):
        EmbeddingConfig(4, 1)


def test_embeddings():
    cfg = EmbeddingConfig(2, 1)
    host = ring_xy(2)
    x, y = Poly.var(host, "x"), Poly.var(host, "y")
    u = Poly.var(ring_uv(2), "u")
    assert embed_uv(u, cfg) == RatFunc(x**2, Poly.one(host) + x)
    v_mid = Poly.var(ring_xv(2), "v")
    assert embed_xv(v_mid, cfg) == RatFunc(y**2 + x * y)
    x_mid = Poly.var(ring_xv(2), "x")
    assert embed_xv(x_mid, cfg) == RatFunc(x)


@pytest.mark.parametrize("p", [2, 3])
def test_generator(p):
    cfg = EmbeddingConfig.default(p)
    gen = artin_schreier_generator(cfg)
    assert extended_value(gen.element, cfg) == GroupValue(p, -1, 1)
    assert gen.minimal_poly_at(gen.element).is_zero()


def test_extended_value_examples():
    cfg = EmbeddingConfig.default(2)
    host = ring_xy(2)
    x = RatFunc(Poly.var(host, "x"))
    u_img = embed_uv(Poly.var(ring_uv(2), "u"), cfg)
    assert extended_value(x**2, cfg) == 1
    assert extended_value(-u_img * x, cfg) == GroupValue(2, 3, 1)  # 2 - 1/p
    # accepts intermediate-field coordinates directly
    mid = ring_xv(2)
    f = RatFunc(Poly.one(mid), Poly.var(mid, "x"))
    assert extended_value(f, cfg) == GroupValue(2, -1, 1)
    # and base coordinates, where it restricts to the base valuation
    assert extended_value(Poly.var(ring_uv(2), "u"), cfg) == 1


@pytest.mark.parametrize("p", [2, 3])
def test_gap_element_certificates(p):
    for cert in gap_element_certificates(EmbeddingConfig.default(p)):
        assert cert.passed, (cert.id, cert.actual)


def test_approximant_shape(setup2):
    cfg, tower, apprs = setup2
    seq = p_sequence(2)
    v = seq.poly(1)
    assert apprs[0].element == RatFunc(v**2)
    # h_k - h_(k-1) = (-1)^k * K_(k,k+1)^p
    for k in (1, 2):
        assert apprs[k].element - apprs[k - 1].element == tower[k].keys[k + 1] ** 2


def test_gap_ladder_p2(setup2):
    cfg, _, apprs = setup2
    host = q_sequence(2)
    frozen = {0: GroupValue(2, 17, 4), 1: GroupValue(2, 273, 8), 2: GroupValue(2, 4369, 12)}
    for appr in apprs:
        cert = verify_approximant_gap(appr, cfg, host)
        assert cert.passed, cert.actual
        assert gap_value(2, appr.k) == frozen[appr.k]


def test_gap_ladder_p3(setup3):
    cfg, _, apprs = setup3
    host = q_sequence(3)
    cert = verify_approximant_gap(apprs[0], cfg, host)
    assert cert.passed and gap_value(3, 0) == GroupValue(3, 82, 4)


def test_tail_above_omega(setup2):
    cfg, _, apprs = setup2
    host = q_sequence(2)
    for appr in apprs:
        assert value(appr.tail, host) > omega(2)


def test_gap_bound_sweep(setup2):
    cfg, tower, apprs = setup2
    host = q_sequence(2)
    for k in (0, 1):
        cert = gap_bound_sweep(tower[k], apprs[k], cfg, samples=15, seed=5, host_seq=host)
        assert cert.passed, cert.actual


def test_gap_bound_zero_element(setup2):
    cfg, _, _ = setup2
    host = ring_xy(2)
    xp = RatFunc(Poly.var(host, "x")) ** 2
    assert extended_value(-xp, cfg) == 1
    assert GroupValue(2, 1) <= gap_value(2, 0)


def test_ceiling_frozen_values(setup2):
    cfg, _, apprs = setup2
    host = q_sequence(2)
    uv = ring_uv(2)
    cases = [
        ("0", RatFunc(Poly.zero(uv)), "-1/2"),
        ("1/h0", 1 / apprs[0].element, "-15/32"),
        ("1/h1", 1 / apprs[1].element, "-239/512"),
    ]
    for label, f, want in cases:
        got, cert = ceiling_check(f, cfg, label, host)
        assert cert.passed, cert.actual
        assert str(got) == want


def test_ceiling_chain_identity(setup2):
    # two routes: direct engine value vs (1/p) * gap - 2/p
    cfg, _, apprs = setup2
    host = q_sequence(2)
    for appr in apprs:
        got, _ = ceiling_check(1 / appr.element, cfg, f"1/h{appr.k}", host)
        chain = gap_value(2, appr.k).as_fraction() / 2 - 1
        assert got.as_fraction() == chain


def test_ladder_increasing_and_bounded(setup2):
    cfg, _, apprs = setup2
    host = q_sequence(2)
    ceiling = Fraction(-2, 2) + omega(2) / 2
    seen = []
    for appr in apprs:
        got, cert = ceiling_check(1 / appr.element, cfg, f"1/h{appr.k}", host)
        assert cert.passed
        seen.append(got.as_fraction())
    assert seen == sorted(seen)
    assert all(v < ceiling for v in seen)


@pytest.mark.parametrize("p", [2, 3])
def test_dependence_report(p):
    cfg = EmbeddingConfig.default(p)
    k_max = 2 if p == 2 else 1
    tower = build_tower(p, k_max, k_max + 2)
    apprs = build_approximants(tower, k_max, cfg)
    report = dependence_report(cfg, apprs, samples=10, seed=11)
    assert report.verdict == "dependent-consistent"
    assert report.m == 2
    assert all(e.below_ceiling and e.below_criterion for e in report.entries)
    assert report.to_certificate().passed
    assert "falsifiable" in report.note


def test_restriction_c_independence():
    # base-field values agree under both admissible exponents c
    p = 3
    seq = p_sequence(p)
    rng = random.Random("c-independence")
    for _ in range(25):
        f = random_ratfunc(rng, seq.ring)
        base = value(f, seq)
        for c in (p - 1, 2 * (p - 1)):
            cfg = EmbeddingConfig(p, c)
            assert extended_value(f, cfg) == base
