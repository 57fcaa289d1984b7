"""Positivity-preserving kernels C, W, O and the transforms they induce.

For an input written as a binomial expansion with weights ``alpha(j)``

    C:  F(L) = sum_j alpha(j) [L, floor((L-j)/2)]
    W:  F(L) = sum_j alpha(j) [2L, L-j]
    O:  F(L) = sum_j alpha(j) [2L+1, L-j]

the kernel sum ``sum_k K_{L,k} F(k)`` equals a new expansion whose terms
are ``alpha(j)`` times a fixed power of ``q`` and a shifted binomial.
"""
from __future__ import annotations

import time
from functools import lru_cache
from typing import Callable, Mapping

from .qbinom import inv_poch_q, qbin, trinom
from .qpoly import ZERO, QLaurent, QSeries, as_series

KINDS = ("C", "W", "O")


def tri(j: int) -> int:
    """Triangular number ``j(j+1)/2`` (defined for negative ``j`` too)."""
    return j * (j + 1) // 2


def _check_kind(kind: str) -> str:
    if kind not in KINDS:
        raise ValueError(f"unknown kernel kind {kind!r}; expected one of {KINDS}")
    return kind


def kernel_weight(kind: str, m: int, k: int) -> int:
    if kind == "C":
        return tri(m) + tri(m + k)
    if kind == "W":
        return (m + k) ** 2 + k * k
    return 2 * tri(m + k) + 2 * tri(k)


def kernel_width(kind: str, k: int) -> int:
    """Second trinomial index: ``k``, ``2k`` or ``2k+1``."""
    return k if kind == "C" else 2 * k if kind == "W" else 2 * k + 1


@lru_cache(maxsize=None)
def kernel(kind: str, L: int, k: int) -> QLaurent:
    """``C_{L,k}``, ``W_{L,k}`` or ``O_{L,k}``."""
    _check_kind(kind)
    n = kernel_width(kind, k)
    if L < 0 or k < 0 or n > L:
        return ZERO
    out = ZERO
    for m in range(L - n + 1):
        out = out + trinom(L, m, n).shift(kernel_weight(kind, m, k))
    return out


def input_binomial(kind: str, L: int, j: int) -> QLaurent:
    """Binomial multiplying ``alpha(j)`` in the transform's input shape."""
    if kind == "C":
        return qbin(L, (L - j) // 2)
    if kind == "W":
        return qbin(2 * L, L - j)
    return qbin(2 * L + 1, L - j)


def output_weight(kind: str, j: int) -> int:
    if kind == "C":
        return tri(j)
    if kind == "W":
        return 2 * j * j
    return 2 * j * j + 2 * j


def output_binomial(kind: str, L: int, j: int) -> QLaurent:
    if kind == "C":
        return qbin(2 * L + 1, L - j)
    if kind == "W":
        return qbin(2 * L, L - 2 * j)
    return qbin(2 * L, L - 2 * j - 1)


def kernel_identity_sides(kind: str, L: int, a: int) -> tuple[QLaurent, QLaurent]:
    """Both sides of the kernel summation formula at shift ``a``."""
    _check_kind(kind)
    lhs = ZERO
    for k in range(L + 1):
        K = kernel(kind, L, k)
        if K:
            if kind == "C":
                b = qbin(k, (k - a) // 2)
            elif kind == "W":
                b = qbin(2 * k, k - a)
            else:
                b = qbin(2 * k + 1, k - a)
            lhs = lhs + K * b
    rhs = output_binomial(kind, L, a).shift(output_weight(kind, a))
    return lhs, rhs


def kernel_identity_check(kind: str, L: int, a: int):
    from .catalog.records import compare

    t0 = time.perf_counter()
    lhs, rhs = kernel_identity_sides(kind, L, a)
    return compare(f"KERNEL-{kind}", {"L": L, "a": a}, lhs, rhs, t0)


def transform_input(kind: str, alpha: Mapping[int, QLaurent], L: int) -> QLaurent:
    """``F(L)`` built from the weights ``alpha``."""
    out = ZERO
    for j, w in alpha.items():
        if w:
            out = out + w * input_binomial(kind, L, j)
    return out


def apply_transform(kind: str, alpha: Mapping[int, QLaurent], L: int) -> tuple[QLaurent, QLaurent]:
    """Return ``(sum_k K_{L,k} F(k), sum_j alpha(j) q^w(j) B_j(L))``."""
    _check_kind(kind)
    lhs = ZERO
    for k in range(L + 1):
        K = kernel(kind, L, k)
        if K:
            F = transform_input(kind, alpha, k)
            if F:
                lhs = lhs + K * F
    rhs = ZERO
    for j, w in alpha.items():
        if w:
            rhs = rhs + (w * output_binomial(kind, L, j)).shift(output_weight(kind, j))
    return lhs, rhs


def transform_values(kind: str, F: Callable[[int], QLaurent], L: int) -> QLaurent:
    """``sum_k K_{L,k} F(k)`` for an arbitrary polynomial-valued ``F``."""
    _check_kind(kind)
    out = ZERO
    for k in range(L + 1):
        K = kernel(kind, L, k)
        if K:
            out = out + K * F(k)
    return out


def apply_limit_transform(kind: str, F: Callable[[int], QLaurent | QSeries], trunc: int):
    """The ``L -> infinity`` transform, truncated at ``q^trunc``.

    Returns ``(lhs, rhs_builder)`` where ``lhs`` is
    ``sum_{m,k} q^w(m,k) / ((q)_m (q)_n(k)) F(k)`` and ``rhs_builder(alpha)``
    produces ``(1/(q)_inf) sum_j alpha(j) q^w(j)``.  ``F(k)`` must be a
    power series (no negative exponents).
    """
    _check_kind(kind)
    lhs = QSeries.zero(trunc)
    k = 0
    # weights are increasing in both m and k, so w(0, k) > T ends the sum
    while kernel_weight(kind, 0, k) <= trunc:
        f = F(k)
        fs = as_series(f, trunc)
        if any(fs.coeffs):
            inner = QSeries.zero(trunc)
            m = 0
            while (w := kernel_weight(kind, m, k)) <= trunc:
                inner = inner + inv_poch_q(m, trunc).shift(w)
                m += 1
            lhs = lhs + inner * inv_poch_q(kernel_width(kind, k), trunc) * fs
        k += 1

    def rhs_builder(alpha: Mapping[int, QLaurent]) -> QSeries:
        return limit_rhs(kind, alpha, trunc)

    return lhs, rhs_builder


def limit_rhs(kind: str, alpha: Mapping[int, QLaurent], trunc: int) -> QSeries:
    acc = ZERO
    for j, w in alpha.items():
        if w:
            acc = acc + w.shift(output_weight(kind, j))
    return as_series(acc, trunc) * inv_poch_q(None, trunc)
