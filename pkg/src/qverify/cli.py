"""Command line driver: ``qverify families|verify|verify-all|scan|series``.

Exit codes: 0 everything passed, 1 a mismatch or negative coefficient,
2 usage error, 3 engine error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .catalog.records import ERROR, NEGATIVE, VerificationRecord
from .catalog.registry import (
    Family, expand_grid, lookup, parse_range, registry, verify,
)
from .errors import InvalidParams, NotFound, QVerifyError
from .gsum import GParams
from .positivity import (
    check_cell, enumerate_domain, enumerate_k2_boundary, read_checkpoint, scan,
)
from .qexpr import ExprSyntaxError, eval_expr

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ENGINE = 0, 1, 2, 3

FORMATS = ("text", "json", "csv")
CSV_FIELDS = ("family", "params", "status", "first_mismatch", "lhs_coeff", "rhs_coeff",
              "truncation", "elapsed_ms", "detail")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    level: str = "smoke"
    truncation: int | None = None  # None: the family's level default
    jobs: int = 1
    fmt: str = "text"
    resume: str | None = None

    def __post_init__(self):
        if self.level not in ("smoke", "full"):
            raise UsageError(f"unknown level {self.level!r}")
        if self.truncation is not None and self.truncation < 1:
            raise UsageError("--truncate must be at least 1")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if self.fmt not in FORMATS:
            raise UsageError(f"unknown output format {self.fmt!r}")


# -- reports -------------------------------------------------------------------

def render_records(records: Sequence[VerificationRecord], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.to_json() for r in records], sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in records:
            row = r.to_json()
            row["params"] = ";".join(f"{k}={v}" for k, v in r.params.items())
            w.writerow(row)
        return buf.getvalue()
    lines = []
    for r in records:
        ps = " ".join(f"{k}={v}" for k, v in r.params.items())
        line = f"{r.family:<14} {ps:<36} {r.status}"
        if r.first_mismatch is not None:
            line += f" at q^{r.first_mismatch}"
            if r.status != NEGATIVE:
                line += f" (lhs {r.lhs_coeff}, rhs {r.rhs_coeff})"
            else:
                line += f" ({r.lhs_coeff})"
        if r.truncation is not None:
            line += f" [T={r.truncation}]"
        if r.detail:
            line += f" -- {r.detail}"
        lines.append(line)
    return "\n".join(lines) + ("\n" if lines else "")


def exit_code(records: Iterable[VerificationRecord]) -> int:
    code = EXIT_OK
    for r in records:
        if r.status == ERROR:
            return EXIT_ENGINE
        if not r.passed:
            code = EXIT_FAIL
    return code


def summary(records: Sequence[VerificationRecord]) -> str:
    bad = sum(not r.passed for r in records)
    err = sum(r.status == ERROR for r in records)
    return f"{len(records)} checks, {len(records) - bad} passed, {bad - err} failed, {err} errors"


# -- running -------------------------------------------------------------------

def _task(job: tuple[str, dict, int | None]) -> VerificationRecord:
    fid, params, T = job
    return verify(fid, params, T)


def run_jobs(jobs: list[tuple[Family | str, dict, int | None]], n: int) -> list[VerificationRecord]:
    """Verify in input order; with ``n > 1`` the work is spread over processes."""
    if n <= 1 or len(jobs) < 2:
        return [verify(f, p, T) for f, p, T in jobs]
    named = [(f.id if isinstance(f, Family) else f, p, T) for f, p, T in jobs]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(_task, named, chunksize=max(1, len(named) // (8 * n))))


def _emit(records: list[VerificationRecord], cfg: RunConfig, out) -> int:
    out.write(render_records(records, cfg.fmt))
    print(summary(records), file=sys.stderr)
    return exit_code(records)


def family_rows(f: Family, ranges: dict[str, str], level: str) -> list[dict[str, int]]:
    """Parameter tuples for ``verify``.

    Without ranges the family's level grid is used.  Otherwise missing
    parameters fall back to the level grid's range; tuples outside the
    declared bounds are a usage error and tuples outside the cross-parameter
    constraint are dropped.
    """
    unknown = [n for n in ranges if n not in f.param_names]
    if unknown:
        raise UsageError(f"{f.id} has no parameter(s) {', '.join(unknown)}; "
                         f"expected {', '.join(f.param_names) or 'none'}")
    if not ranges:
        return f.grid(level)
    base = f.full if level == "full" else f.smoke
    spec = {}
    for name in f.param_names:
        if name in ranges:
            spec[name] = ranges[name]
        elif not callable(base) and name in base:
            spec[name] = base[name]
        else:
            raise UsageError(f"{f.id}: missing range for --{name}")
    try:
        tuples = list(expand_grid(spec))
    except (InvalidParams, KeyError) as exc:
        raise UsageError(f"bad parameter range: {exc}") from None
    rows = []
    for t in tuples:
        try:
            env = f.check_bounds(t)
        except InvalidParams as exc:
            raise UsageError(str(exc)) from None
        if f.admits(env):
            rows.append(env)
    return rows


def cmd_verify(family: str, ranges: dict[str, str], cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        f = lookup(family)
    except NotFound as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    try:
        rows = family_rows(f, ranges, cfg.level)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    T = cfg.truncation or f.truncation(cfg.level)
    return _emit(run_jobs([(f, r, T) for r in rows], cfg.jobs), cfg, out)


def cmd_verify_all(cfg: RunConfig, families: Sequence[Family] | None = None, out=None) -> int:
    out = out or sys.stdout
    fams = registry() if families is None else list(families)
    jobs = []
    for f in fams:
        T = cfg.truncation or f.truncation(cfg.level)
        jobs += [(f, r, T) for r in f.grid(cfg.level)]
    if families is not None:
        # test doubles need not be registered, so keep them in this process
        records = [verify(f, p, T) for f, p, T in jobs]
    else:
        records = run_jobs(jobs, cfg.jobs)
    return _emit(records, cfg, out)


# -- conjecture scan -------------------------------------------------------------

def _int_range(text: str, what: str) -> tuple[int, int]:
    lo, hi = parse_range(text)
    if lo.coeffs or hi.coeffs:
        raise UsageError(f"--{what} needs integer bounds")
    if lo.const < 0 or hi.const < 0:
        raise UsageError(f"--{what} bounds must be nonnegative")
    return lo.const, hi.const


def _cell_json(key, verdict_status, exponent=None, value=None) -> dict:
    K, N, M, a, b = key
    return {"K": K, "N": N, "M": M, "alphaK": a, "betaK": b, "status": verdict_status,
            "exponent": exponent, "coefficient": value}


def _describe(key) -> str:
    K, N, M, a, b = key
    p = GParams.from_scaled(N, M, a, b, K)
    return f"G(N={p.N}, M={p.M}, alpha={p.alpha}, beta={p.beta}, K={p.K})"


def cmd_scan(K: str, N: str, M: str, cfg: RunConfig, skip_integer: bool = False,
             boundary: bool = False, checkpoint: str | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        k0, k1 = _int_range(K, "K")
        n0, n1 = _int_range(N, "N")
        m0, m1 = _int_range(M, "M")
    except (UsageError, InvalidParams) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    path = cfg.resume or checkpoint
    done = read_checkpoint(cfg.resume) if cfg.resume else {}
    cells = enumerate_domain(k1, n1, m1, Kmin=k0, Nmin=n0, Mmin=m0, skip_integer=skip_integer)
    checked = resumed = 0
    violations: list[dict] = []

    def fresh():
        nonlocal resumed
        for c in cells:
            status = done.get(c.key)
            if status is None:
                yield c
                continue
            resumed += 1
            if status == NEGATIVE:
                violations.append(_cell_json(c.key, NEGATIVE))

    try:
        for cell, verdict in scan(fresh(), cfg.jobs, None, path):
            checked += 1
            if not verdict.ok:
                violations.append(_cell_json(cell.key, verdict.status, verdict.exponent,
                                             verdict.value))
        extra = []
        if boundary and k0 <= 2 <= k1:
            for cell in enumerate_k2_boundary(n1, m1):
                if cell.params.N >= n0 and cell.params.M >= m0:
                    v = check_cell(cell)
                    extra.append(_cell_json(cell.key, v.status, v.exponent, v.value))
    except QVerifyError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    violations.sort(key=lambda d: (d["K"], d["N"], d["M"], d["alphaK"], d["betaK"]))
    report = {"checked": checked, "resumed": resumed, "violations": violations}
    if boundary:
        report["k2_boundary"] = extra
    _scan_report(report, cfg.fmt, out)
    return EXIT_FAIL if violations else EXIT_OK


def _scan_report(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        return
    rows = [dict(v, group="violation") for v in report["violations"]]
    rows += [dict(v, group="k2_boundary") for v in report.get("k2_boundary", [])]
    if fmt == "csv":
        buf = io.StringIO()
        cols = ["group", "K", "N", "M", "alphaK", "betaK", "status", "exponent", "coefficient"]
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        out.write(buf.getvalue())
        return
    for v in report["violations"]:
        key = (v["K"], v["N"], v["M"], v["alphaK"], v["betaK"])
        where = f" at q^{v['exponent']} ({v['coefficient']})" if v["exponent"] is not None else ""
        out.write(f"VIOLATION {_describe(key)}{where}\n")
    for v in report.get("k2_boundary", []):
        key = (v["K"], v["N"], v["M"], v["alphaK"], v["betaK"])
        out.write(f"boundary {_describe(key)} {v['status']}\n")
    out.write(f"{report['checked']} cells checked, {report['resumed']} resumed, "
              f"{len(report['violations'])} violations\n")


# -- series and families ---------------------------------------------------------

def cmd_series(text: str, T: int, fmt: str = "text", out=None) -> int:
    out = out or sys.stdout
    try:
        s = eval_expr(text, T)
    except ExprSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QVerifyError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    coeffs = [int(c) if getattr(c, "denominator", 1) == 1 else c for c in s.coeffs]
    if fmt == "json":
        out.write(json.dumps({"expr": text, "truncation": T,
                              "coefficients": [_num(c) for c in coeffs]}, sort_keys=True) + "\n")
    elif fmt == "csv":
        out.write("exponent,coefficient\n")
        out.writelines(f"{e},{c}\n" for e, c in enumerate(coeffs))
    else:
        out.writelines(f"{e} {c}\n" for e, c in enumerate(coeffs))
    return EXIT_OK


def _num(c):
    return c if isinstance(c, int) else str(c)


def cmd_families(fmt: str = "text", out=None) -> int:
    out = out or sys.stdout
    meta = [f.metadata() for f in registry()]
    if fmt == "json":
        out.write(json.dumps(meta, sort_keys=True, indent=2) + "\n")
        return EXIT_OK
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["id", "kind", "equation", "params"])
        for m in meta:
            w.writerow([m["id"], m["kind"], m["equation"],
                        " ".join(f"{k}={v}" for k, v in m["params"].items())])
        return EXIT_OK
    for m in meta:
        ps = " ".join(f"{k}={v}" for k, v in m["params"].items()) or "-"
        line = f"{m['id']:<16} {m['kind']:<11} {m['equation']:<32} {ps}"
        if "constraint" in m:
            line += f"  [{m['constraint']}]"
        out.write(line + "\n")
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------

def _common(p: argparse.ArgumentParser, truncate=True, level=True) -> None:
    if truncate:
        p.add_argument("--truncate", type=int, metavar="T",
                       help="series truncation order (default: per family and level)")
    if level:
        p.add_argument("--level", choices=("smoke", "full"), default="smoke")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                   help="worker processes (default: available cores)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qverify", allow_abbrev=False,
                                 description="Exact verification of q-series identities.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("families", allow_abbrev=False, help="list registered families")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true")
    g.add_argument("--csv", action="store_true")

    p = sub.add_parser(
        "verify", allow_abbrev=False, help="verify one family over a parameter grid",
        epilog="Parameter ranges are given as --NAME a..b (inclusive); bounds may "
               "reference earlier parameters, e.g. --v 2..3 --i 1..v.")
    p.add_argument("--family", required=True)
    _common(p)

    p = sub.add_parser("verify-all", allow_abbrev=False, help="verify every family")
    _common(p)

    p = sub.add_parser("scan", allow_abbrev=False,
                       help="scan the conjectured positivity domain")
    p.add_argument("--K", default="1..6")
    p.add_argument("--N", default="0..12")
    p.add_argument("--M", default="0..12")
    p.add_argument("--resume", metavar="FILE",
                   help="checkpoint file: completed cells are skipped, new ones appended")
    p.add_argument("--checkpoint", metavar="FILE",
                   help="append results to FILE without reading it first")
    p.add_argument("--skip-integer", action="store_true",
                   help="skip cells with integral alpha and beta")
    p.add_argument("--boundary", action="store_true",
                   help="also report the K=2 cells on the non-strict boundary")
    _common(p, truncate=False, level=False)

    p = sub.add_parser("series", allow_abbrev=False, help="expand an expression in q")
    p.add_argument("expr")
    p.add_argument("--truncate", type=int, default=20, metavar="T")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true")
    g.add_argument("--csv", action="store_true")
    return ap


def parse_ranges(extra: Sequence[str]) -> dict[str, str]:
    """``--name a..b`` pairs left over by argparse."""
    out: dict[str, str] = {}
    i = 0
    while i < len(extra):
        tok = extra[i]
        if not tok.startswith("--") or len(tok) == 2:
            raise UsageError(f"unexpected argument {tok!r}")
        name = tok[2:]
        if "=" in name:
            name, value = name.split("=", 1)
            i += 1
        elif i + 1 < len(extra):
            value = extra[i + 1]
            i += 2
        else:
            raise UsageError(f"--{name} needs a range")
        if name in out:
            raise UsageError(f"--{name} given twice")
        out[name] = value
    return out


def _fmt(args) -> str:
    return "json" if args.json else "csv" if args.csv else "text"


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args, extra = ap.parse_known_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.cmd != "verify" and extra:
            raise UsageError(f"unrecognized arguments: {' '.join(extra)}")
        if args.cmd == "families":
            return cmd_families(_fmt(args))
        if args.cmd == "series":
            if args.truncate < 0:
                raise UsageError("--truncate must be nonnegative")
            return cmd_series(args.expr, args.truncate, _fmt(args))
        if args.cmd == "scan":
            cfg = RunConfig(jobs=args.jobs, fmt=_fmt(args), resume=args.resume)
            return cmd_scan(args.K, args.N, args.M, cfg, args.skip_integer, args.boundary,
                            args.checkpoint)
        cfg = RunConfig(args.level, args.truncate, args.jobs, _fmt(args))
        if args.cmd == "verify":
            return cmd_verify(args.family, parse_ranges(extra), cfg)
        return cmd_verify_all(cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
