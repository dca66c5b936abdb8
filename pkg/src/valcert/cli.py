"""Command-line front end: parse expressions, run checks, emit reports.

Subcommands:

    value      print the valuation of an expression on a chosen ring
    expand     print the standard expansion of a polynomial with term values
    tower      build the quadratic-transform tower and certify its identities
    ascheck    approximant ladder (t1), approximation ceiling (t2), and the
               dependence evidence report (report)
    fuzz       engine oracles: multiplicativity, ultrametric, cross-engine
    selftest   the full acceptance suite

Exit codes: 0 all certificates passed (budget-exceeded alone still exits 0,
with a warning in the report), 1 any certificate failed, 2 usage or parse
error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass

from . import __version__
from .acceptance import run_all
from .certificates import Certificate, Report
from .embeddings import EmbeddingConfig, embed
from .engine import (
    expand,
    multiplicativity_sweep,
    restriction_sweep,
    ultrametric_sweep,
    value,
)
from .keyseq import p_sequence, q_sequence
from .parsing import ParseError, parse_expr
from .polys import BudgetExceededError, Poly, RatFunc, ring_uv, ring_xv, ring_xy, support_limit
from .sampling import random_ratfunc, random_value_pinned
from .values import is_prime

RINGS = {"uv": ring_uv, "xy": ring_xy, "xv": ring_xv}


@dataclass
class RunConfig:
    p: int = 2
    c: int | None = None  # default p - 1
    k_max: int = 2
    i_max: int = 4
    samples: int = 100
    seed: int = 0
    budget: int = 2_000_000
    format: str = "text"

    def validate(self) -> None:
        if not is_prime(self.p) or self.p > 7:
            raise ValueError(f"p must be a prime <= 7, got {self.p}")
        if self.c is None:
            self.c = self.p - 1
        if self.c < 1 or self.c % (self.p - 1) != 0:
            raise ValueError(f"c must be a positive multiple of p-1, got {self.c}")
        if self.k_max < 0:
            raise ValueError("kmax must be >= 0")
        if self.i_max < 2:
            raise ValueError("imax must be >= 2")
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.format not in ("text", "structured"):
            raise ValueError(f"unknown format {self.format!r}")

    def embedding(self) -> EmbeddingConfig:
        return EmbeddingConfig(self.p, self.c)

    def echo(self) -> dict:
        return {
            "p": self.p,
            "c": self.c,
            "kmax": self.k_max,
            "imax": self.i_max,
            "samples": self.samples,
            "seed": self.seed,
            "budget": self.budget,
        }


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="valcert",
        description="exact valuation engine and dependence certificates",
    )
    ap.add_argument("--p", type=int, default=2, help="characteristic (prime <= 7)")
    ap.add_argument("--c", type=int, default=None, help="mixed-term exponent, multiple of p-1 (default p-1)")
    ap.add_argument("--kmax", type=int, default=2, help="deepest tower level")
    ap.add_argument("--imax", type=int, default=4, help="highest key-polynomial index per level")
    ap.add_argument("--samples", type=int, default=100, help="sample count for sweeps")
    ap.add_argument("--seed", type=int, default=None, help="sweep seed (overrides VALCERT_SEED)")
    ap.add_argument("--budget", type=int, default=2_000_000, help="max polynomial support size")
    ap.add_argument("--format", choices=("text", "structured"), default="text")
    ap.add_argument("--out", default=None, help="write the report to a file instead of stdout")

    sub = ap.add_subparsers(dest="command", required=True)
    S = argparse.SUPPRESS  # subcommand-level repeats of the global flags

    p_value = sub.add_parser("value", help="valuation of an expression")
    p_value.add_argument("--ring", choices=("uv", "xy", "xv"), default="uv")
    p_value.add_argument("expr")

    p_expand = sub.add_parser("expand", help="standard expansion with term values")
    p_expand.add_argument("--ring", choices=("uv", "xy"), default="uv")
    p_expand.add_argument("expr")

    p_tower = sub.add_parser("tower", help="tower certificates")
    p_tower.add_argument("--kmax", type=int, default=S)
    p_tower.add_argument("--imax", type=int, default=S)
    p_tower.add_argument("--dump-values", action="store_true", help="also print the (k, i, value) table")

    p_as = sub.add_parser("ascheck", help="extension certificates")
    p_as.add_argument("what", choices=("t1", "t2", "report"))
    p_as.add_argument("--k", type=int, default=None, help="ladder level for t1")
    p_as.add_argument("--f", default=None, help="base-field expression for t2 (on (u,v))")
    p_as.add_argument("--samples", type=int, default=S)
    p_as.add_argument("--seed", type=int, default=S)
    p_as.add_argument("--dump-values", action="store_true", help="also print the ladder value table")

    p_fuzz = sub.add_parser("fuzz", help="engine oracles")
    p_fuzz.add_argument("--what", choices=("mult", "ultra", "cross"), required=True)
    p_fuzz.add_argument("--samples", type=int, default=S)
    p_fuzz.add_argument("--seed", type=int, default=S)

    sub.add_parser("selftest", help="run the acceptance suite")
    return ap


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("VALCERT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return 0


def cmd_value(cfg: RunConfig, args, report: Report) -> str | None:
    ring = RINGS[args.ring](cfg.p)
    f = parse_expr(args.expr, ring)
    if args.ring == "uv":
        got = value(f, p_sequence(cfg.p))
    else:
        got = value(embed(f, cfg.embedding()), q_sequence(cfg.p))
    return f"{got}\n"


def cmd_expand(cfg: RunConfig, args, report: Report) -> str | None:
    ring = RINGS[args.ring](cfg.p)
    f = parse_expr(args.expr, ring)
    if isinstance(f, RatFunc):
        raise ParseError("expand takes a polynomial, not a fraction", args.expr.find("/"))
    seq = p_sequence(cfg.p) if args.ring == "uv" else q_sequence(cfg.p)
    exp = expand(f, seq)
    lines = [f"{t.render():<32} value {exp.term_value(t)}" for t in exp.terms]
    return "\n".join(lines) + "\n"


def cmd_tower(cfg: RunConfig, args, report: Report) -> str | None:
    from .tower import (
        build_tower,
        verify_drift_recursion,
        verify_twisted_recursion,
        verify_unit_descent,
        verify_value_formula,
    )

    seq = p_sequence(cfg.p)
    try:
        levels = build_tower(cfg.p, cfg.k_max, cfg.i_max, budget=cfg.budget)
    except BudgetExceededError as e:
        report.certificates.append(
            Certificate(id="tower/build", params=cfg.echo(), expected="within budget", actual=str(e), status="budget-exceeded")
        )
        return None
    extra = []
    for level in levels:
        report.certificates.append(verify_unit_descent(level, seq))
        for i in range(cfg.i_max + 1):
            report.certificates.append(verify_value_formula(level, i, seq))
            if args.dump_values:
                extra.append(f"k={level.k} i={i} value {value(level.keys[i], seq)}")
        for i in range(2, cfg.i_max + 1):
            report.certificates.append(verify_twisted_recursion(level, i, seq))
            report.certificates.append(verify_drift_recursion(level, i, seq))
    return "\n".join(extra) + "\n" if extra else None


def _ladder(cfg: RunConfig, k_max: int):
    from .artin_schreier import build_approximants
    from .tower import build_tower

    tower = build_tower(cfg.p, k_max, max(cfg.i_max, k_max + 2), budget=cfg.budget)
    return tower, build_approximants(tower, k_max, cfg.embedding())


def cmd_ascheck(cfg: RunConfig, args, report: Report) -> str | None:
    from .artin_schreier import (
        ceiling_check,
        dependence_report,
        gap_bound_sweep,
        gap_element_certificates,
        verify_approximant_gap,
    )

    host = q_sequence(cfg.p)
    if args.what == "t1":
        k = cfg.k_max if args.k is None else args.k
        tower, apprs = _ladder(cfg, k)
        report.extend(gap_element_certificates(cfg.embedding(), host))
        for appr in apprs:
            report.certificates.append(verify_approximant_gap(appr, cfg.embedding(), host))
        if cfg.samples and args.k is not None:
            report.certificates.append(
                gap_bound_sweep(tower[k], apprs[k], cfg.embedding(), cfg.samples, cfg.seed, host)
            )
        return None
    if args.what == "t2":
        _, apprs = _ladder(cfg, min(cfg.k_max, 1))
        if args.f is not None:
            f = parse_expr(args.f, ring_uv(cfg.p))
            if not isinstance(f, RatFunc):
                f = RatFunc(f)
            _, cert = ceiling_check(f, cfg.embedding(), args.f, host)
            report.certificates.append(cert)
            return None
        base = p_sequence(cfg.p)
        family = [("0", RatFunc(Poly.zero(base.ring)))]
        family += [(f"1/approximant[{a.k}]", 1 / a.element) for a in apprs]
        rng = random.Random(f"{cfg.seed}:t2")
        half = cfg.samples // 2
        family += [(f"pinned[{n}]", random_value_pinned(rng, base)) for n in range(half)]
        family += [(f"generic[{n}]", random_ratfunc(rng, base.ring)) for n in range(cfg.samples - half)]
        for label, f in family:
            _, cert = ceiling_check(f, cfg.embedding(), label, host)
            report.certificates.append(cert)
        return None
    # report
    _, apprs = _ladder(cfg, cfg.k_max)
    evidence = dependence_report(
        cfg.embedding(), apprs, samples=max(cfg.samples // 4, 10), seed=cfg.seed, host_seq=host
    )
    report.certificates.append(evidence.to_certificate())
    lines = [f"verdict: {evidence.verdict} (m={evidence.m})", f"note: {evidence.note}"]
    if args.dump_values:
        for e in evidence.entries:
            lines.append(f"{e.label:<24} value {e.value}")
    return "\n".join(lines) + "\n"


def cmd_fuzz(cfg: RunConfig, args, report: Report) -> str | None:
    if args.what == "mult":
        for seq in (p_sequence(cfg.p), q_sequence(cfg.p)):
            report.certificates.append(multiplicativity_sweep(seq, cfg.samples, cfg.seed))
    elif args.what == "ultra":
        for seq in (p_sequence(cfg.p), q_sequence(cfg.p)):
            report.certificates.append(ultrametric_sweep(seq, cfg.samples, cfg.seed))
    else:
        for c in (cfg.c, 2 * cfg.c):
            report.certificates.append(restriction_sweep(cfg.p, c, cfg.samples, cfg.seed))
    return None


def cmd_selftest(cfg: RunConfig, args, report: Report) -> str | None:
    lines = []
    for n, description, certs in run_all(seed=cfg.seed, k_max=cfg.k_max):
        report.extend(certs)
        ok = all(c.passed for c in certs)
        lines.append(f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {description} ({len(certs)} certificates)")
    return "\n".join(lines) + "\n"


COMMANDS = {
    "value": cmd_value,
    "expand": cmd_expand,
    "tower": cmd_tower,
    "ascheck": cmd_ascheck,
    "fuzz": cmd_fuzz,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    cfg = RunConfig(
        p=args.p,
        c=args.c,
        k_max=args.kmax,
        i_max=args.imax,
        samples=args.samples,
        seed=_resolve_seed(args),
        budget=args.budget,
        format=args.format,
    )
    try:
        cfg.validate()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    report = Report(tool="valcert", version=__version__, config=cfg.echo())
    try:
        with support_limit(cfg.budget):
            text = COMMANDS[args.command](cfg, args, report)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except BudgetExceededError as e:
        report.certificates.append(
            Certificate(id=args.command, params=cfg.echo(), expected="within budget", actual=str(e), status="budget-exceeded")
        )
        text = None
    out = sys.stdout
    close = False
    if args.out:
        out = open(args.out, "w")
        close = True
    try:
        if text is not None:
            out.write(text)
        if report.certificates:
            out.write(report.to_json() if cfg.format == "structured" else report.to_text())
    finally:
        if close:
            out.close()
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
