"""The nested (n_1, ..., n_{v-1}) sums shared by the Foda-Quano type families.

All of them have the shape

    sum q^(sum_j N_j^2 + sum_{t >= s} N_t) * extra(N_1)
        * [top2 - sum_{t=1}^{v-2} N_t, n_{v-1}]_{q^2}
        * prod_{j=1}^{v-2} [n_j + top - 2 sum_{t=1}^{j} N_t + c_j, n_j]_q

with ``N_j = n_j + ... + n_{v-1}``.  The sum runs over chains
``N_1 >= N_2 >= ... >= N_{v-1} >= 0`` (equivalently over the n_j), and a
branch is cut as soon as one of its binomials is forced to vanish.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Sequence

from ..errors import InvalidParams
from ..qbinom import inv_poch_q, qbin
from ..qpoly import ONE, ZERO, QLaurent, QSeries


def chain_sum(
    v: int,
    top2: int,
    top: int,
    offsets: Sequence[int],
    linear_from: int | None = None,
    extra: Callable[[int], QLaurent] | None = None,
) -> QLaurent:
    """Evaluate the nested sum; ``offsets[j-1]`` is ``c_j`` for ``j = 1..v-2``."""
    if v < 2:
        raise InvalidParams("multi-sum needs v >= 2")
    if len(offsets) != v - 2:
        raise InvalidParams(f"expected {v - 2} offsets, got {len(offsets)}")
    acc: dict[int, object] = {}
    last = v - 1

    def lin(N: Sequence[int]) -> int:
        if linear_from is None:
            return 0
        return sum(N[t - 1] for t in range(max(linear_from, 1), last + 1))

    def finish(N: list[int], prod: QLaurent, S: int) -> None:
        f = qbin(top2 - S, N[-1], 2)
        if not f:
            return
        term = prod * f
        if extra is not None:
            x = extra(N[0])
            if not x:
                return
            term = term * x
        e = sum(n * n for n in N) + lin(N)
        for k, c in term.as_dict().items():
            acc[k + e] = acc.get(k + e, 0) + c

    def descend(j: int, N: list[int], prod: QLaurent, S: int) -> None:
        # choose N_j; S = N_1 + ... + N_{j-1}
        if j == last:
            hi = min(N[-1] if N else top2, top2 - S)
            for Nj in range(hi + 1):
                # factor j-1 needs n_{j-1} = N_{j-1} - N_j
                p = prod
                if j >= 2:
                    n = N[-1] - Nj
                    p = p * qbin(n + top - 2 * S + offsets[j - 2], n)
                    if not p:
                        continue
                finish(N + [Nj], p, S)
            return
        # factor j stays nonzero only while top + c_j - 2 (S + N_j) >= 0
        hi = (top + offsets[j - 1] - 2 * S) // 2
        if N:
            hi = min(hi, N[-1])
        for Nj in range(hi + 1):
            p = prod
            if j >= 2:
                n = N[-1] - Nj
                p = p * qbin(n + top - 2 * S + offsets[j - 2], n)
                if not p:
                    continue
            descend(j + 1, N + [Nj], p, S + Nj)

    if top2 < 0:
        return ZERO
    descend(1, [], ONE, 0)
    return QLaurent(acc)


def fq_offsets(v: int, delta: int) -> list[int]:
    """``c_j = min(delta, v-1-j)`` for ``j = 1..v-2``."""
    return [min(delta, v - 1 - j) for j in range(1, v - 1)]


@lru_cache(maxsize=None)
def fq_lhs(v: int, i: int, L: int) -> QLaurent:
    """Polynomial side of the Foda-Quano refinement (with linear term)."""
    if L < 0:
        return ZERO
    return chain_sum(v, L, 2 * L, fq_offsets(v, v - i), linear_from=i)


@lru_cache(maxsize=None)
def n16_lhs(v: int, i: int, L: int) -> QLaurent:
    """Same sum without the linear exponent term."""
    if L < 0:
        return ZERO
    return chain_sum(v, L, 2 * L, fq_offsets(v, v - i))


@lru_cache(maxsize=None)
def half_lhs(v: int, L: int) -> QLaurent:
    """Sum with ``[floor(L/2) - ..., n_{v-1}]_{q^2}`` and zero offsets."""
    if L < 0:
        return ZERO
    return chain_sum(v, L // 2, L, [0] * (v - 2))


def bounded_lhs(v: int, i: int, L: int, M: int) -> QLaurent:
    """Doubly-bounded sum carrying ``[2L+v-i+M-N_1, M-N_1]``."""
    return chain_sum(
        v, L, 2 * L, fq_offsets(v, v - i),
        extra=lambda N1: qbin(2 * L + v - i + M - N1, M - N1),
    )


# -- series analogues ------------------------------------------------------

def chain_series(v: int, linear_from: int | None, last_base: int, trunc: int) -> QSeries:
    """``sum q^(sum N_j^2 + sum_{t>=s} N_t) / ((q)_{n_1}...(q)_{n_{v-2}} (q^b;q^b)_{n_{v-1}})``."""
    out = [QSeries.zero(trunc)]
    last = v - 1

    def lin(N):
        if linear_from is None:
            return 0
        return sum(N[t - 1] for t in range(linear_from, last + 1))

    def descend(N: list[int]) -> None:
        base = sum(n * n for n in N)
        if len(N) == last:
            e = base + lin(N)
            if e > trunc:
                return
            term = inv_poch_q(N[-1], trunc, last_base)
            for j in range(last - 1):
                term = term * inv_poch_q(N[j] - N[j + 1], trunc)
            out[0] = out[0] + term.shift(e)
            return
        Nj = 0
        cap = N[-1] if N else None
        # every later N_t is >= 0, so base + Nj^2 bounds the exponent below
        while (cap is None or Nj <= cap) and base + Nj * Nj <= trunc:
            descend(N + [Nj])
            Nj += 1

    descend([])
    return out[0]
