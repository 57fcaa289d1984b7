"""Evaluators for the infinite (truncated power series) families.

Every evaluator takes a parameter mapping and a truncation order ``T`` and
returns a ``QSeries``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from ..errors import InvalidParams, NonIntegerCoefficient
from ..qbinom import Mono, PochSpec, inv_poch_q, poch, poch_infinite
from ..qpoly import ONE, QLaurent, QSeries, as_series
from .multisum import chain_series, fq_lhs, half_lhs, n16_lhs


def product_side(base: int, exps, trunc: int) -> QSeries:
    """``(q^e1, q^e2, ...; q^base)_inf / (q)_inf``."""
    spec = PochSpec.of([Mono(1, e) for e in exps], base)
    return poch_infinite(spec, trunc) * inv_poch_q(None, trunc)


def double_series(
    weight: Callable[[int, int], int],
    width: Callable[[int], int],
    f: Callable[[int], QLaurent | QSeries],
    trunc: int,
) -> QSeries:
    """``sum_{m,k} q^weight(m,k) / ((q)_m (q)_width(k)) * f(k)``.

    ``weight`` must be increasing in ``m`` and ``k`` and ``f(k)`` a power
    series; both are what lets the sums stop at the truncation order.
    """
    out = QSeries.zero(trunc)
    k = 0
    while weight(0, k) <= trunc:
        fk = as_series(f(k), trunc)
        if any(fk.coeffs):
            inner = QSeries.zero(trunc)
            m = 0
            while (w := weight(m, k)) <= trunc:
                inner = inner + inv_poch_q(m, trunc).shift(w)
                m += 1
            out = out + inner * inv_poch_q(width(k), trunc) * fk
        k += 1
    return out


def _check_vi(p) -> tuple[int, int]:
    v, i = p["v"], p["i"]
    if v < 2 or not 1 <= i <= v:
        raise InvalidParams("need v >= 2 and 1 <= i <= v")
    return v, i


def _check_vd(p) -> tuple[int, int]:
    v, D = p["v"], p["D"]
    if v < 2 or not 0 <= D < v:
        raise InvalidParams("need v >= 2 and 0 <= D < v")
    return v, D


# -- even moduli and Andrews-Gordon ----------------------------------------

def ser11_lhs(p, trunc: int) -> QSeries:
    v, i = _check_vi(p)
    return chain_series(v, i, 2, trunc)


def ser11_rhs(p, trunc: int) -> QSeries:
    v, i = _check_vi(p)
    return product_side(2 * v, (2 * v, i, 2 * v - i), trunc)


def ag_lhs(p, trunc: int) -> QSeries:
    v, i = _check_vi(p)
    return chain_series(v, i, 1, trunc)


def ag_rhs(p, trunc: int) -> QSeries:
    v, i = _check_vi(p)
    return product_side(2 * v + 1, (2 * v + 1, i, 2 * v + 1 - i), trunc)


# -- companions mod 2v(2v+1) ------------------------------------------------

def _companion(inner, v: int, D: int, trunc: int) -> QSeries:
    return double_series(
        lambda m, k: (m + k) ** 2 + k * k + D * (m + 2 * k),
        lambda k: 2 * k + D,
        lambda k: inner(v, v - D, k),
        trunc,
    )


def ser15_lhs(p, trunc: int) -> QSeries:
    v, D = _check_vd(p)
    return _companion(fq_lhs, v, D, trunc)


def ser15_rhs(p, trunc: int) -> QSeries:
    v, D = _check_vd(p)
    mod = 2 * v * (2 * v + 1)
    return product_side(mod, (mod, (2 * v + 1) * (v - D), (2 * v + 1) * (v + D)), trunc)


def ser19_lhs(p, trunc: int) -> QSeries:
    v, D = _check_vd(p)
    return _companion(n16_lhs, v, D, trunc)


def ser19_rhs(p, trunc: int) -> QSeries:
    v, D = _check_vd(p)
    mod = 2 * v * (2 * v + 1)
    return product_side(mod, (mod, v * (2 * v + 1 - 2 * D), v * (2 * v + 1 + 2 * D)), trunc)


def ser422_lhs(p, trunc: int) -> QSeries:
    v = p["v"]
    if v < 2:
        raise InvalidParams("need v >= 2")
    return double_series(
        lambda m, k: (m + 1) * m // 2 + (m + k + 1) * (m + k) // 2,
        lambda k: k,
        lambda k: half_lhs(v, k),
        trunc,
    )


def ser422_rhs(p, trunc: int) -> QSeries:
    v = p["v"]
    if v < 2:
        raise InvalidParams("need v >= 2")
    mod = 2 * v * (2 * v + 1)
    return product_side(mod, (mod, 2 * v * v, 2 * v * (v + 1)), trunc)


# -- Jacobi triple product ----------------------------------------------------

def _jtp_z(p) -> tuple[int, int]:
    c, s = p["sign"], p["s"]
    if c not in (1, -1) or s < 0:
        raise InvalidParams("JTP needs z = sign * q^s with sign = +-1 and s >= 0")
    return c, s


def _jtp_product(c: int, s: int) -> tuple[QLaurent, list[Mono]]:
    """Split ``(q^2, q/z, z q; q^2)_inf`` into a Laurent prefactor and a series part."""
    # 1/z = c q^-s since c = +-1
    args = [Mono(1, 2), Mono(c, 1 - s), Mono(c, 1 + s)]
    pre = ONE
    rest = []
    for a in args:
        e = a.exp
        while e < 0:
            pre = pre * (ONE - QLaurent.monomial(e, a.coeff))
            e += 2
        rest.append(Mono(a.coeff, e))
    return pre, rest


def jtp_shift(p) -> int:
    """Power of ``q`` that both sides are multiplied by to land in the series ring."""
    c, s = _jtp_z(p)
    pre, _ = _jtp_product(c, s)
    return max(0, -(pre.min_exp or 0))


def jtp_lhs(p, trunc: int) -> QSeries:
    """``q^shift * sum_j (-1)^j z^j q^{j^2}``."""
    c, s = _jtp_z(p)
    sh = jtp_shift(p)
    acc: dict[int, int] = {}
    # j^2 + s j + sh <= T  <=>  (2j + s)^2 <= 4(T - sh) + s^2
    r = math.isqrt(max(0, 4 * (trunc - sh) + s * s))
    for j in range((-s - r) // 2 - 1, (r - s) // 2 + 2):
        e = j * j + s * j + sh
        if 0 <= e <= trunc:
            acc[e] = acc.get(e, 0) + (-c) ** (j % 2)
    return QSeries.from_laurent(QLaurent(acc), trunc)


def jtp_rhs(p, trunc: int) -> QSeries:
    c, s = _jtp_z(p)
    pre, rest = _jtp_product(c, s)
    body = poch_infinite(PochSpec(tuple(rest), 2), trunc)
    return QSeries.from_laurent(pre.shift(jtp_shift(p)), trunc) * body


# -- the ten identities mod 20 ---------------------------------------------

def _pm(c: int, e: int, k: int) -> QLaurent:
    """``(-c q^e; q^2)_k``."""
    return poch([Mono(-c, e)], 2, k)


def _half(x) -> QLaurent:
    return x.scale(Fraction(1, 2))


def _w_even(m: int, k: int) -> int:
    return k * k + (m + k) ** 2


def _w2(m: int, k: int) -> int:
    return k * k + (m + k) ** 2 + 2 * (m + 2 * k)


def _w1(m: int, k: int) -> int:
    return k * k + (m + k) ** 2 + m + 2 * k


def _w3(m: int, k: int) -> int:
    return k * k + (m + k) ** 2 + m + 3 * k


def _odd(k: int) -> int:
    return 2 * k + 1


def _even(k: int) -> int:
    return 2 * k


def _m20_1(T):
    def f(k):
        return as_series(_pm(1, 2, k), T) / as_series(ONE + QLaurent.monomial(k + 1), T)
    return double_series(_w2, _odd, f, T)


def _m20_2(T):
    return double_series(_w2, _odd, lambda k: _pm(1, 1, k), T)


def _m20_3(T):
    def f1(k):
        return _half((ONE + QLaurent.monomial(k + 1)) * _pm(1, 0, k))

    def f2(k):
        num = as_series(_half(_pm(1, 0, k) * (ONE + QLaurent.monomial(2))).shift(k), T)
        return num / as_series(ONE + QLaurent.monomial(k + 1), T)
    return double_series(_w2, _odd, f1, T) + double_series(_w2, _odd, f2, T)


def _m20_4(T):
    return double_series(_w3, _odd, lambda k: _pm(1, 1, k), T)


def _m20_5(T):
    return double_series(_w1, _odd, lambda k: _pm(1, 2, k), T)


def _m20_6(T):
    return double_series(_w1, _odd, lambda k: _pm(1, 1, k), T)


def _m20_7(T):
    first = double_series(_w1, _even, lambda k: _half(_pm(1, 0, k)), T)
    second = double_series(_w3, _odd, lambda k: _half(_pm(1, 0, k)), T)
    return first + second * as_series(ONE + QLaurent.monomial(1), T)


def _m20_8(T):
    # q^k (-1/q; q^2)_k keeps every summand inside the series ring
    return double_series(_w_even, _even, lambda k: _pm(1, -1, k).shift(k), T)


def _m20_9(T):
    return double_series(
        _w_even, _even, lambda k: _half((ONE + QLaurent.monomial(k)) * _pm(1, 0, k)), T)


def _m20_10(T):
    return double_series(_w_even, _even, lambda k: _pm(1, 1, k), T)


M20_LHS = {
    1: _m20_1, 2: _m20_2, 3: _m20_3, 4: _m20_4, 5: _m20_5,
    6: _m20_6, 7: _m20_7, 8: _m20_8, 9: _m20_9, 10: _m20_10,
}


def m20_exponents(r: int) -> tuple[int, int, int]:
    return 20, r, 20 - r


def m20_lhs(r: int, trunc: int) -> QSeries:
    out = M20_LHS[r](trunc)
    if not out.is_integral():
        raise NonIntegerCoefficient(f"mod-20 identity {r} produced a non-integer coefficient")
    return out


def m20_rhs(r: int, trunc: int) -> QSeries:
    return product_side(20, m20_exponents(r), trunc)
