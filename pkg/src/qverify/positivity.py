"""Bressoud-type positivity: the conjectured domain of G and theorem instances.

A cell is a ``GParams`` together with where it came from.  Cells are
streamed in a fixed order so long scans can be checkpointed and resumed.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

from .catalog.records import NEGATIVE, NONNEGATIVE, first_negative
from .errors import InvalidParams, InvalidTag
from .gsum import AltSumSpec, BinomFactor, GParams, g_eval
from .qpoly import QLaurent

CONJECTURE = "Conjecture1.1"
TAGS = ("Eq1.2star", "Eq1.4", "Eq1.8", "T4.5", "T4.6", "T4.7", "Eq4.15o", "Eq4.16w")
K2_BOUNDARY = "K2boundary"


@dataclass(frozen=True)
class ConjectureCell:
    params: GParams
    tag: str = CONJECTURE
    # generator inputs (v, i, D, n, L) for theorem instances
    origin: tuple[tuple[str, int], ...] = field(default=(), compare=False)

    @property
    def key(self) -> tuple[int, int, int, int, int]:
        p = self.params
        return p.K, p.N, p.M, p.alpha_k, p.beta_k


class Verdict(NamedTuple):
    status: str
    exponent: int | None = None
    value: int | None = None

    @property
    def ok(self) -> bool:
        return self.status == NONNEGATIVE


def check_nonneg(p: QLaurent) -> Verdict:
    """Smallest exponent carrying a negative coefficient, if any."""
    neg = first_negative(p)
    if neg is None:
        return Verdict(NONNEGATIVE)
    return Verdict(NEGATIVE, neg[0], neg[1])


# -- the conjectured domain ----------------------------------------------

def in_domain(K: int, N: int, M: int, a: int, b: int, strict_k2: bool = True) -> bool:
    """Membership with ``a = alpha K``, ``b = beta K`` (all constraints scaled by K)."""
    if K < 1 or N < 0 or M < 0 or a < 0 or b < 0:
        return False
    lo, hi, d = b - K * K, K * K - a, K * (N - M)
    if K == 2 and strict_k2:
        # both chains strict: the alpha+beta boundary at K = 2 has negative cells
        return K < a + b < 2 * K * K - K and lo < d < hi
    return K <= a + b <= 2 * K * K - K and lo <= d <= hi


def is_member(cell: ConjectureCell | GParams) -> bool:
    p = cell.params if isinstance(cell, ConjectureCell) else cell
    return in_domain(p.K, p.N, p.M, p.alpha_k, p.beta_k)


def _ab_pairs(K: int):
    top = 2 * K * K - K
    for a in range(top + 1):
        for b in range(max(0, K - a), top - a + 1):
            yield a, b


def enumerate_domain(
    Kmax: int,
    Nmax: int,
    Mmax: int,
    Kmin: int = 1,
    Nmin: int = 0,
    Mmin: int = 0,
    skip_integer: bool = False,
) -> Iterator[ConjectureCell]:
    """Cells ordered by ``(K, N, M, alpha K, beta K)``.

    ``skip_integer`` drops cells with integral alpha and beta, which are
    covered by a known theorem; it is off by default.
    """
    for K in range(max(Kmin, 1), Kmax + 1):
        pairs = list(_ab_pairs(K))
        for N in range(Nmin, Nmax + 1):
            for M in range(Mmin, Mmax + 1):
                for a, b in pairs:
                    if skip_integer and a % K == 0 and b % K == 0:
                        continue
                    if in_domain(K, N, M, a, b):
                        yield ConjectureCell(GParams.from_scaled(N, M, a, b, K))


def enumerate_k2_boundary(Nmax: int, Mmax: int) -> Iterator[ConjectureCell]:
    """K = 2 cells excluded only by the strict inequalities."""
    for N in range(Nmax + 1):
        for M in range(Mmax + 1):
            for a, b in _ab_pairs(2):
                if in_domain(2, N, M, a, b, strict_k2=False) and not in_domain(2, N, M, a, b):
                    yield ConjectureCell(GParams.from_scaled(N, M, a, b, 2), K2_BOUNDARY)


# -- theorem instances ---------------------------------------------------

def _third(x: int) -> int:
    assert x % 3 == 0
    return x // 3


def instance_params(tag: str, v: int, L: int, i: int | None = None, D: int | None = None,
                    n: int | None = None) -> GParams:
    """Exact G arguments prescribed by a positivity statement (scaled form)."""
    if tag not in TAGS:
        raise InvalidTag(f"unknown positivity tag {tag!r}")
    if v < 2:
        raise InvalidParams("v must be at least 2")
    if tag == "Eq1.2star":
        if i is None or not 1 <= i <= v:
            raise InvalidParams("Eq1.2star needs 1 <= i <= v")
        return GParams.from_scaled(L, L + v - i, 2 * v - i, i, v)
    if tag == "Eq4.15o":
        return GParams.from_scaled(L, L + 1, 2 * v * (v + 1), 2 * v * v, 2 * v)
    if tag == "Eq4.16w":
        return GParams.from_scaled(L - 1, L + 1, 10 * v * v + 6 * v, 10 * v * v - 4 * v, 4 * v)
    if tag == "T4.5":
        if n is None or n < 2:
            raise InvalidParams("T4.5 needs n >= 2")
        c = _third(4 ** n - 1)
        s = 2 ** (n - 2)
        return GParams.from_scaled(
            L - s, L + s, 2 * v * v * c + _third(v * (4 ** n + 2)),
            2 * v * v * c + _third(v * (4 - 4 ** n)), 2 ** n * v)
    if D is None or not 0 <= D < v:
        raise InvalidParams(f"{tag} needs 0 <= D < v")
    if tag == "Eq1.4":
        return GParams.from_scaled(L - D, L + D, (v + D) * (2 * v + 1), (v - D) * (2 * v + 1), 2 * v)
    if tag == "Eq1.8":
        return GParams.from_scaled(L - D, L + D, 2 * v * (v + D) + v, 2 * v * (v - D) + v, 2 * v)
    if n is None or n < 1:
        raise InvalidParams(f"{tag} needs n >= 1")
    c = _third(4 ** n - 1)
    s = D * 2 ** (n - 1)
    if tag == "T4.7":
        return GParams.from_scaled(
            L - s, L + s, 2 * c * v * (v + D) + v, 2 * c * v * (v - D) + v, 2 ** n * v)
    unit = 2 * v * c + 1
    return GParams.from_scaled(L - s, L + s, (v + D) * unit, (v - D) * unit, 2 ** n * v)


def instance_generators(
    tag: str,
    v: Iterable[int] = (2, 3),
    L: Iterable[int] = range(11),
    n: Iterable[int] = (1, 2, 3),
) -> Iterator[ConjectureCell]:
    """Every valid instance of ``tag`` over the given ranges (cells with N < 0 skipped)."""
    if tag not in TAGS:
        raise InvalidTag(f"unknown positivity tag {tag!r}")
    Ls = list(L)
    ns = list(n)
    for vv in v:
        if tag == "Eq1.2star":
            inner = [dict(i=i) for i in range(1, vv + 1)]
        elif tag in ("Eq4.15o", "Eq4.16w"):
            inner = [{}]
        elif tag == "T4.5":
            inner = [dict(n=k) for k in ns if k >= 2]
        elif tag in ("Eq1.4", "Eq1.8"):
            inner = [dict(D=D) for D in range(vv)]
        else:
            inner = [dict(D=D, n=k) for k in ns if k >= 1 for D in range(vv)]
        for extra in inner:
            for LL in Ls:
                try:
                    p = instance_params(tag, vv, LL, **extra)
                except InvalidParams:
                    continue
                origin = tuple(sorted(dict(extra, v=vv, L=LL).items()))
                yield ConjectureCell(p, tag, origin)


def raw_spec(tag: str, v: int) -> AltSumSpec:
    """The alternating sums behind Eq4.15o / Eq4.16w before rewriting as G."""
    if tag == "Eq4.15o":
        return AltSumSpec.of(v * (2 * v + 1), v, 0, [BinomFactor.of("2L+1", f"L-{2 * v}j")])
    if tag == "Eq4.16w":
        return AltSumSpec.of(v * (1 + 10 * v), 5 * v, 0, [BinomFactor.of("2L", f"L-1-{4 * v}j")])
    raise InvalidTag(f"no raw sum for {tag!r}")


# -- scanning --------------------------------------------------------------

def check_cell(cell: ConjectureCell) -> Verdict:
    return check_nonneg(g_eval(cell.params))


def _check_key(key: tuple[int, int, int, int, int]) -> Verdict:
    K, N, M, a, b = key
    return check_nonneg(g_eval(GParams.from_scaled(N, M, a, b, K)))


def checkpoint_line(cell: ConjectureCell, verdict: Verdict) -> str:
    K, N, M, a, b = cell.key
    return f"{K} {N} {M} {a} {b} {verdict.status}"


def read_checkpoint(path: str | os.PathLike) -> dict[tuple[int, ...], str]:
    """Completed cells from a checkpoint file (unparseable lines are ignored)."""
    done: dict[tuple[int, ...], str] = {}
    try:
        with open(path) as fh:
            for line in fh:
                parts = line.split()
                if len(parts) != 6:
                    continue
                try:
                    key = tuple(int(x) for x in parts[:5])
                except ValueError:
                    continue
                done[key] = parts[5]
    except FileNotFoundError:
        pass
    return done


def scan(
    cells: Iterable[ConjectureCell],
    jobs: int = 1,
    done: Sequence | dict | None = None,
    checkpoint: str | os.PathLike | None = None,
    chunk: int = 256,
) -> Iterator[tuple[ConjectureCell, Verdict]]:
    """Check cells in order, skipping keys in ``done`` and appending to ``checkpoint``."""
    skip = set(done or ())
    todo = (c for c in cells if c.key not in skip)
    fh = open(checkpoint, "a") if checkpoint else None
    try:
        if jobs <= 1:
            results = ((c, check_cell(c)) for c in todo)
            for c, v in results:
                if fh:
                    fh.write(checkpoint_line(c, v) + "\n")
                yield c, v
            return
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            while True:
                batch = [c for _, c in zip(range(chunk * jobs), todo)]
                if not batch:
                    break
                verdicts = pool.map(_check_key, [c.key for c in batch], chunksize=chunk)
                for c, v in zip(batch, verdicts):
                    if fh:
                        fh.write(checkpoint_line(c, v) + "\n")
                    yield c, v
                if fh:
                    fh.flush()
    finally:
        if fh:
            fh.close()
