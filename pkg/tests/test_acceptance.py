"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line."""
import io
import json
import os
import random
import re
import time
from contextlib import redirect_stderr, redirect_stdout

import pytest

from qverify.catalog import polynomial as P
from qverify.catalog.registry import expand_grid, lookup, verify
from qverify.cli import main
from qverify.positivity import (
    TAGS, check_cell, enumerate_domain, instance_generators, is_member, scan,
)
from qverify.qbinom import Mono, inv_poch_q, qbin, qbinom_theorem_lhs, qbinom_theorem_rhs, trinom
from qverify.qexpr import (
    Add, Div, Int, Mono as XMono, Mul, Neg, Poch, Pow, QBin, QPower, Sub, parse, to_text,
)


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail
    return emit


def run_grid(fid: str, ranges=None, T=None, level="full"):
    """Verify ``fid`` on explicit ranges (or its full grid); returns the failing records."""
    f = lookup(fid)
    rows = f.grid(level) if ranges is None else list(expand_grid(ranges))
    recs = [verify(f, r, T) for r in rows]
    return len(recs), [r for r in recs if not r.passed]


def tally(items):
    total = sum(n for n, _ in items)
    bad = [r for _, b in items for r in b]
    return total, bad


def test_criterion_1_fq(report):
    t0 = time.perf_counter()
    n, bad = run_grid("FQ", {"v": "2..4", "i": "1..v", "L": "0..12"})
    dt = time.perf_counter() - t0
    report(1, not bad and dt < 60, f"FQ {n - len(bad)}/{n} Equal in {dt:.1f}s")


def test_criterion_2_t11_n17_and_route(report):
    grid = {"v": "2..3", "D": "0..v-1", "L": "0..8"}
    parts = {fid: run_grid(fid, grid) for fid in ("T11", "N17", "T11-ROUTE", "N17-ROUTE")}
    total, bad = tally(parts.values())
    report(2, not bad, ", ".join(f"{k} {n - len(b)}/{n}" for k, (n, b) in parts.items()))


def test_criterion_3_n16_and_bounded_parent(report):
    a = run_grid("N16", {"v": "2..4", "i": "1..v", "L": "0..10"})
    b = run_grid("B5-T44", {"v": "2..4", "i": "1..v", "L": "0..6", "M": "0..6"})
    total, bad = tally([a, b])
    report(3, not bad, f"N16 {a[0] - len(a[1])}/{a[0]}, B5-T44 {b[0] - len(b[1])}/{b[0]}")


def test_criterion_4_v2_closed_forms(report):
    ids = ["S3-Ft", "S3-I2", "S3-27", "S3-A", "S3-B", "S3-X", "S3-Y", "S3-Z", "S3-C"]
    total, bad = tally(run_grid(fid, {"L": "0..30"}) for fid in ids)
    c0 = P.alt_sum(P.SPEC_C, 0).is_zero() and P.c_closed(0).is_zero()
    report(4, not bad and c0, f"{total - len(bad)}/{total} Equal over L<=30; C(0)=0: {c0}")


def test_criterion_5_kernels(report):
    ident = [run_grid(f"KERNEL-{k}", {"L": "0..12", "a": "-L..L"}) for k in "CWO"]
    pos = [run_grid(f"POS-KERNEL-{k}", {"L": "0..20", "k": "0..L"}) for k in "CWO"]
    ti, bi = tally(ident)
    tp, bp = tally(pos)
    report(5, not bi and not bp,
           f"kernel identities {ti - len(bi)}/{ti} Equal; kernels {tp - len(bp)}/{tp} nonnegative")


def test_criterion_6_bounded_identities(report):
    lemma_n, lemma_bad = run_grid("B5-L51")
    fixed_n, fixed_bad = run_grid("B5-L51c")
    rest = {}
    for fid in ("B5-T41", "B5-T42", "B5-T43a", "B5-T43b", "B5-47x", "B5-48y", "B5-L41",
                "B5-410", "B5-414c", "B5-421"):
        rest[fid] = run_grid(fid)
    total, bad = tally(rest.values())
    detail = (f"B5-L51 as stated {lemma_n - len(lemma_bad)}/{lemma_n} Equal "
              f"(with q^(-alpha beta) on its domain: {fixed_n - len(fixed_bad)}/{fixed_n}); "
              f"other B5 families {total - len(bad)}/{total} Equal")
    report(6, not lemma_bad and not bad, detail)


def test_criterion_7_mod_20(report):
    t0 = time.perf_counter()
    recs = [verify(f"M20-{r}", {}, 60) for r in range(1, 11)]
    total, bad = len(recs), [r for r in recs if not r.passed]
    dt = time.perf_counter() - t0
    report(7, not bad and dt < 30,
           f"{total - len(bad)}/10 Equal at T=60 with nonnegative integer coefficients, {dt:.1f}s")


def test_criterion_8_series(report):
    parts = {}
    for fid, grid in (("SER-15", {"v": "2..3", "D": "0..v-1"}),
                      ("SER-19", {"v": "2..3", "D": "0..v-1"}),
                      ("SER-422", {"v": "2..3"}),
                      ("SER-11", {"v": "2..3", "i": "1..v"}),
                      ("SER-AG", {"v": "2..3", "i": "1..v"})):
        parts[fid] = run_grid(fid, grid, T=40)
    jtp = [verify("SER-JTP", {"sign": c, "s": s}, 40) for c in (1, -1) for s in (1, 2)]
    parts["SER-JTP"] = (len(jtp), [r for r in jtp if not r.passed])
    total, bad = tally(parts.values())
    report(8, not bad, f"{total - len(bad)}/{total} Equal at T=40")


def test_criterion_9_positivity(report):
    jobs = os.cpu_count() or 1
    t0 = time.perf_counter()
    cells = neg = 0
    for _, v in scan(enumerate_domain(6, 12, 12), jobs=jobs):
        cells += 1
        neg += not v.ok
    inst = inst_neg = outside = 0
    for tag in TAGS:
        for c in instance_generators(tag, (2, 3), range(11), (1, 2, 3)):
            inst += 1
            inst_neg += not check_cell(c).ok
            outside += not is_member(c)
    dt = time.perf_counter() - t0
    ok = cells > 0 and neg == 0 and inst_neg == 0 and outside == 0 and dt < 300
    report(9, ok, f"domain K<=6, N,M<=12: {cells} cells, {neg} negative; "
                  f"{inst} theorem instances, {inst_neg} negative, {outside} outside domain; "
                  f"{dt:.0f}s on {jobs} worker(s)")


# -- infrastructure --------------------------------------------------------------

def _random_ast(rng: random.Random, depth: int):
    def mono():
        if rng.random() < 0.6:
            return XMono(rng.choice((1, -1)), rng.choice([e for e in range(-4, 8) if e]))
        return XMono(rng.randint(-9, 9), 0)

    if depth <= 1 or rng.random() < 0.3:
        kind = rng.randrange(4)
        if kind == 0:
            return Int(rng.randint(0, 40))
        if kind == 1:
            return QPower(rng.randint(-5, 9))
        if kind == 2:
            args = tuple(mono() for _ in range(rng.randint(1, 3)))
            return Poch(args, mono(), rng.choice((None, rng.randint(0, 5))))
        return QBin(rng.randint(-2, 9), rng.randint(-2, 9), mono())
    kind = rng.randrange(6)
    sub = lambda: _random_ast(rng, depth - 1)  # noqa: E731
    if kind == 0:
        return Neg(sub())
    if kind == 5:
        return Pow(sub(), rng.randint(-3, 4))
    return (Add, Sub, Mul, Div)[kind - 1](sub(), sub())


def _json_run(argv):
    out = io.StringIO()
    with redirect_stdout(out), redirect_stderr(io.StringIO()):
        code = main(argv)
    return code, re.sub(r'"elapsed_ms": [0-9.e+-]+', '"elapsed_ms": 0', out.getvalue())


def test_criterion_10_infrastructure(report):
    checks = {}
    checks["qbin symmetry/recurrence/nonnegativity (top<=30)"] = all(
        qbin(n, k) == qbin(n, n - k)
        and (n == 0 or qbin(n, k) == qbin(n - 1, k - 1) + qbin(n - 1, k).shift(k))
        and (n == 0 or qbin(n, k) == qbin(n - 1, k) + qbin(n - 1, k - 1).shift(n - k))
        and all(c > 0 for _, c in qbin(n, k).items())
        for n in range(31) for k in range(n + 1))
    checks["q-binomial theorem (L<=20)"] = all(
        qbinom_theorem_lhs(L, Mono(c, s)) == qbinom_theorem_rhs(L, Mono(c, s))
        for L in range(21) for c in (1, -1) for s in range(4))
    T = 20
    checks["limit stabilization"] = (
        all([qbin(T + m, m).coeff(e) for e in range(T + 1)] == list(inv_poch_q(m, T).coeffs)
            for m in range(12))
        and all([qbin(L + M, L).coeff(e) for e in range(min(L, M) + 1)]
                == list(inv_poch_q(None, min(L, M)).coeffs)
                for L in range(T + 1) for M in range(T + 1))
        and all([trinom(L, m, n).coeff(e) for e in range(L - m - n + 1)]
                == list((inv_poch_q(m, L - m - n) * inv_poch_q(n, L - m - n)).coeffs)
                for L in range(15) for m in range(5) for n in range(5) if m + n <= L))
    rng = random.Random(500)
    asts = [_random_ast(rng, rng.randint(1, 5)) for _ in range(500)]
    checks["parser round-trip (500 ASTs)"] = all(parse(to_text(a)) == a for a in asts)
    argv = ["verify", "--family", "T11", "--v", "2..3", "--D", "0..v-1", "--L", "0..5",
            "--json", "--jobs", "1"]
    a, b = _json_run(argv), _json_run(argv)
    valid = json.loads(a[1]) is not None
    checks["byte-stable JSON"] = a == b and a[0] == 0 and valid
    failed = [k for k, ok in checks.items() if not ok]
    report(10, not failed, "; ".join(f"{k}: {'ok' if ok else 'FAILED'}" for k, ok in checks.items()))
