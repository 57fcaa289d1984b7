"""Evaluators for the polynomial identity families.

Each evaluator takes a parameter mapping and returns a ``QLaurent``.
"""
from __future__ import annotations

from fractions import Fraction

from ..gsum import AltSumSpec, BinomFactor, alt_sum, double_spec
from ..qbinom import Mono, poch, qbin, trinom
from ..qpoly import ONE, ZERO, QLaurent, to_polynomial
from ..transforms import kernel
from .multisum import bounded_lhs, fq_lhs, half_lhs, n16_lhs

q = QLaurent.monomial(1)


def qp(e: int) -> QLaurent:
    return QLaurent.monomial(e)


def _spec(a, b, *binoms, c=0) -> AltSumSpec:
    return AltSumSpec.of(a, b, c, [BinomFactor.of(*bf) for bf in binoms])


# -- Foda-Quano and its relatives ------------------------------------------

def fq_rhs(p) -> QLaurent:
    v, i, L = p["v"], p["i"], p["L"]
    return alt_sum(_spec(v, v - i, (f"2L+{v - i}", f"L-{v}j")), L)


def n16_rhs(p) -> QLaurent:
    v, i, L = p["v"], p["i"], p["L"]
    return alt_sum(_spec(v, 0, (f"2L+{v - i}", f"L-{v}j")), L)


def _outer_sum(L: int, delta: int, weight, inner) -> QLaurent:
    """``sum_{m,k} q^weight(m,k) (L; m, 2k+delta) inner(k)``."""
    out = ZERO
    k = 0
    while 2 * k + delta <= L:
        f = inner(k)
        if f:
            n = 2 * k + delta
            outer = ZERO
            for m in range(L - n + 1):
                outer = outer + trinom(L, m, n).shift(weight(m, k))
            out = out + outer * f
        k += 1
    return out


def t11_lhs(p) -> QLaurent:
    v, D, L = p["v"], p["D"], p["L"]
    return _outer_sum(
        L, D, lambda m, k: (m + k) ** 2 + k * k + D * (m + 2 * k),
        lambda k: fq_lhs(v, v - D, k),
    )


def t11_rhs(p) -> QLaurent:
    v, D, L = p["v"], p["D"], p["L"]
    return alt_sum(_spec((2 * v + 1) * v, (2 * v + 1) * D, ("2L", f"L-{D}-{2 * v}j")), L)


def n17_lhs(p) -> QLaurent:
    v, D, L = p["v"], p["D"], p["L"]
    return _outer_sum(
        L, D, lambda m, k: k * k + (m + k) ** 2 + (m + 2 * k) * D,
        lambda k: n16_lhs(v, v - D, k),
    )


def n17_rhs(p) -> QLaurent:
    v, D, L = p["v"], p["D"], p["L"]
    return alt_sum(_spec((2 * v + 1) * v, 2 * v * D, ("2L", f"L-{D}-{2 * v}j")), L)


def transform_route(inner, v: int, D: int, L: int) -> QLaurent:
    """Kernel transform of ``inner(v, v-D, k - floor(D/2))``, rescaled.

    Even ``D`` goes through the W kernel, odd ``D`` through O; the kernel
    sum carries an extra factor ``q^(D^2/2)`` resp. ``q^(4 T(D//2))``.
    """
    e = D // 2
    kind = "W" if D % 2 == 0 else "O"
    shift = 2 * e * e if D % 2 == 0 else 2 * e * (e + 1)
    out = ZERO
    for k in range(L + 1):
        K = kernel(kind, L, k)
        if K and k - e >= 0:
            out = out + K * inner(v, v - D, k - e)
    return out.shift(-shift)


def t11_route(p) -> QLaurent:
    return transform_route(fq_lhs, p["v"], p["D"], p["L"])


def n17_route(p) -> QLaurent:
    return transform_route(n16_lhs, p["v"], p["D"], p["L"])


def fq_lhs_p(p) -> QLaurent:
    return fq_lhs(p["v"], p["i"], p["L"])


def n16_lhs_p(p) -> QLaurent:
    return n16_lhs(p["v"], p["i"], p["L"])


# -- v = 2 variants and their closed forms --------------------------------

def poch_q(coeff: int, exp: int, d: int, n: int) -> QLaurent:
    return poch([Mono(coeff, exp)], d, n)


def q2_sum(L: int, linear: int) -> QLaurent:
    """``sum_n q^(n^2 + linear*n) [L, n]_{q^2}``."""
    out = ZERO
    for n in range(L + 1):
        out = out + qbin(L, n, 2).shift(n * n + linear * n)
    return out


SPEC_FT = _spec(2, 1, ("2L+1", "L-2j"))
SPEC_I2_EVEN = _spec(2, 0, ("2L", "L-2j"))
SPEC_I2_ODD = _spec(2, 0, ("2L+1", "L-2j"))
SPEC_27 = _spec(2, 2, ("2L+1", "L-2j"))
SPEC_A = _spec(2, 0, ("2L", "L-2j-1"))
SPEC_B = _spec(2, -2, ("2L", "L-2j"))
SPEC_X = _spec(2, -1, ("2L", "L-2j"))
SPEC_Y = _spec(2, 1, ("2L", "L-2j-1"))
SPEC_Z = _spec(2, -1, ("2L+1", "L-2j"))
SPEC_C = _spec(2, -1, ("2L", "L-2j-1"))


def s3_sum(spec: AltSumSpec):
    return lambda p: alt_sum(spec, p["L"])


def ft_closed(L: int) -> QLaurent:
    return poch_q(-1, 2, 2, L)


def i2_closed(L: int) -> QLaurent:
    return poch_q(-1, 1, 2, L)


def s27_closed(L: int) -> QLaurent:
    return poch_q(-1, 1, 2, L).shift(L)


def a_closed(L: int) -> QLaurent:
    f = ONE - qp(2 * L)
    return ZERO if not f else poch_q(-1, 1, 2, L - 1) * f


def b_closed(L: int) -> QLaurent:
    return to_polynomial(poch_q(-1, -1, 2, L).shift(L))


def x_closed(L: int) -> QLaurent:
    return (ONE + qp(L)) * poch_q(-1, 2, 2, L - 1)


def y_closed(L: int) -> QLaurent:
    f = ONE - qp(L)
    return ZERO if not f else f * poch_q(-1, 2, 2, L - 1)


def z_closed(L: int) -> QLaurent:
    bracket = ONE + qp(L) + qp(L + 1) - qp(2 * L + 1)
    return (poch_q(-1, 0, 2, L) * bracket).scale(Fraction(1, 2))


def c_closed(L: int) -> QLaurent:
    bracket = (ONE + qp(L)) * (ONE - qp(2 * L)) + qp(L - 1) * (ONE - qp(L)) * (ONE + qp(2))
    if not bracket:
        return ZERO
    return poch_q(-1, 2, 2, L - 2) * bracket


def c_recurrence(L: int) -> QLaurent:
    """C(L) via the three-term binomial relation, valid for ``L >= 1``."""
    Z = alt_sum(SPEC_Z, L - 1)
    F = alt_sum(SPEC_FT, L - 1)
    X = alt_sum(SPEC_X, L - 1)
    return (ONE + q - qp(2 * L)) * Z - F.shift(2 * L + 1) + (qp(2 * L) - q) * X


def closed(fn):
    return lambda p: fn(p["L"])


# cross relations between the v = 2 sums
def rel_212(p) -> tuple[QLaurent, QLaurent]:
    L = p["L"]
    return alt_sum(SPEC_A, L) + alt_sum(SPEC_B, L).shift(L), i2_closed(L)


def rel_28(p) -> tuple[QLaurent, QLaurent]:
    L = p["L"]
    return -alt_sum(SPEC_A, L).shift(L - 1) + alt_sum(SPEC_B, L), s27_closed(L)


def rel_215(p) -> tuple[QLaurent, QLaurent, QLaurent]:
    L = p["L"]
    X, Y = alt_sum(SPEC_X, L), alt_sum(SPEC_Y, L)
    return X.shift(L) + Y, X - Y.shift(L), ft_closed(L)


def prodinger_lhs(p) -> QLaurent:
    return qbin(p["L"], p["k"])


def prodinger_rhs(p) -> QLaurent:
    L, k = p["L"], p["k"]
    return ((ONE + q - qp(L)) * qbin(L - 1, k)
            + qbin(L - 1, k - 1).shift(2 * L - 2 * k)
            + (qp(L) - q) * qbin(L - 2, k))


# -- Burge-type bounded identities -----------------------------------------

def lemma51_lhs(p) -> QLaurent:
    a, b, j, m1, m2, M = (p[x] for x in ("alpha", "beta", "j", "m1", "m2", "M"))
    out = ZERO
    for i in range(M + 1):
        t = qbin(m1 + m2 + M - i, M - i)
        if t:
            t = t * qbin(m1, i + j + a)
        if t:
            t = t * qbin(m2, i - j + b)
        if t:
            out = out + t.shift(i * i + (a + b) * i)
    return out


def lemma51_rhs(p) -> QLaurent:
    """Right side exactly as the lemma is usually quoted (see ``lemma51_fixed_rhs``)."""
    a, b, j, m1, m2, M = (p[x] for x in ("alpha", "beta", "j", "m1", "m2", "M"))
    return (qbin(m1 + M - j + b, M + j + a) * qbin(m2 + M + j + a, M - j + b)).shift(
        j * j + (a - b) * j)


def lemma51_holds(p) -> bool:
    """Hypothesis under which the corrected right side is valid.

    The left side only depends on ``alpha + j`` and ``beta - j``; the identity
    fails whenever both are positive.
    """
    return min(p["alpha"] + p["j"], p["beta"] - p["j"]) <= 0


def lemma51_fixed_rhs(p) -> QLaurent:
    """Quoted right side times the missing ``q^(-alpha beta)``."""
    return lemma51_rhs(p).shift(-p["alpha"] * p["beta"])


def t41_lhs(p) -> QLaurent:
    L, M, a, b, j = (p[x] for x in ("L", "M", "a", "b", "j"))
    out = ZERO
    for i in range(M + 1):
        t = (qbin(2 * L + b + M - i, M - i)
             * qbin(L - (a - 1) * j, L - i - a * j)
             * qbin(L + b + (a - 1) * j, L + b - i + a * j))
        out = out + t.shift(i * i)
    return out


def t41_rhs(p) -> QLaurent:
    L, M, a, b, j = (p[x] for x in ("L", "M", "a", "b", "j"))
    return (qbin(L + M - a * j, L - (a + 1) * j)
            * qbin(L + b + M + a * j, L + b + (a + 1) * j)).shift(j * j)


def t42_lhs(p) -> QLaurent:
    return alt_sum(double_spec(p["v"], p["v"]), p["L"], M=p["M"])


def t42_rhs(p) -> QLaurent:
    return alt_sum(double_spec(p["v"], p["v"] - 1), p["L"], M=p["M"])


def _burge_step(L: int, M: int, v: int, b: int, top_extra: int) -> QLaurent:
    out = ZERO
    for i in range(M + 1):
        F = alt_sum(double_spec(v, b), L - i, M=i)
        if F:
            out = out + (qbin(2 * L + top_extra + M - i, M - i) * F).shift(i * i)
    return out


def t43a_lhs(p) -> QLaurent:
    return _burge_step(p["L"], p["M"], p["v"], p["b"], p["b"])


def t43a_rhs(p) -> QLaurent:
    return alt_sum(double_spec(p["v"] + 1, p["b"]), p["L"], M=p["M"])


def t43b_lhs(p) -> QLaurent:
    return _burge_step(p["L"], p["M"], p["v"], p["v"], p["v"])


def t43b_rhs(p) -> QLaurent:
    return alt_sum(double_spec(p["v"] + 1, p["v"] + 1), p["L"], M=p["M"])


def burge47_lhs(p) -> QLaurent:
    return alt_sum(double_spec(1, 0), p["L"], M=p["M"])


def burge48_lhs(p) -> QLaurent:
    return alt_sum(double_spec(1, 1), p["L"], M=p["M"])


def burge_rhs(p) -> QLaurent:
    return qbin(p["L"] + p["M"], p["L"], 2)


def l41_lhs(p) -> QLaurent:
    L, M, i = p["L"], p["M"], p["i"]
    out = ZERO
    for n in range(min(L, M) + 1):
        out = out + (qbin(2 * L + 2 - i + M - n, M - n) * qbin(L, n, 2)).shift(n * n)
    return out


def l41_rhs(p) -> QLaurent:
    return alt_sum(double_spec(2, 2 - p["i"]), p["L"], M=p["M"])


def b410_lhs(p) -> QLaurent:
    return bounded_lhs(p["v"], 1, p["L"], p["M"])


def b410_rhs(p) -> QLaurent:
    return alt_sum(double_spec(p["v"], p["v"]), p["L"], M=p["M"])


def b410_alt(p) -> QLaurent:
    return alt_sum(double_spec(p["v"], p["v"] - 1), p["L"], M=p["M"])


def t44_lhs(p) -> QLaurent:
    return bounded_lhs(p["v"], p["i"], p["L"], p["M"])


def t44_rhs(p) -> QLaurent:
    return alt_sum(double_spec(p["v"], p["v"] - p["i"]), p["L"], M=p["M"])


def b414c_lhs(p) -> QLaurent:
    return half_lhs(p["v"], p["L"])


def b414c_rhs(p) -> QLaurent:
    v = p["v"]
    spec = AltSumSpec.of(v, 0, 0, [BinomFactor.of("L", f"L-{2 * v}j", div=2)])
    return alt_sum(spec, p["L"])


def b421_lhs(p) -> QLaurent:
    v, L = p["v"], p["L"]
    out = ZERO
    for k in range(L + 1):
        f = half_lhs(v, k)
        if not f:
            continue
        outer = ZERO
        for m in range(L - k + 1):
            outer = outer + trinom(L, m, k).shift(m * (m + 1) // 2 + (m + k) * (m + k + 1) // 2)
        out = out + outer * f
    return out


def b421_rhs(p) -> QLaurent:
    v = p["v"]
    return alt_sum(_spec(v * (2 * v + 1), v, ("2L+1", f"L-{2 * v}j")), p["L"])
