"""Alternating j-sums of Gaussian binomials.

Every polynomial right-hand side in the catalog is a finite sum

    sum_j (-1)^j q^(a j^2 + b j + c) * prod [top_i(j), bottom_i(j)]_{q^d_i}

with tops and bottoms affine in ``j`` and the family parameters.  The
j-range is derived from binomial support, so callers never pick bounds.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import InvalidParams, NonIntegerExponent
from .qbinom import qbin
from .qpoly import ZERO, QLaurent

_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*([A-Za-z_]\w*)?")


@dataclass(frozen=True)
class Affine:
    """``const + sum coeff*var`` with integer coefficients."""

    coeffs: tuple[tuple[str, int], ...] = ()
    const: int = 0

    @classmethod
    def parse(cls, text: str | int) -> Affine:
        if isinstance(text, int):
            return cls((), text)
        coeffs: dict[str, int] = {}
        const = 0
        pos = 0
        s = text.strip()
        if not s:
            raise ValueError("empty affine expression")
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"cannot parse affine form {text!r} at {pos}")
            sign = -1 if m.group(1) == "-" else 1
            num = int(m.group(2)) if m.group(2) else 1
            if m.group(3):
                coeffs[m.group(3)] = coeffs.get(m.group(3), 0) + sign * num
            else:
                const += sign * num
            pos = m.end()
        return cls(tuple(sorted((k, v) for k, v in coeffs.items() if v)), const)

    def coeff(self, var: str) -> int:
        return dict(self.coeffs).get(var, 0)

    def eval(self, env: Mapping[str, int]) -> int:
        try:
            return self.const + sum(c * env[v] for v, c in self.coeffs)
        except KeyError as exc:
            raise InvalidParams(f"missing parameter {exc.args[0]!r}") from None

    def split_j(self, env: Mapping[str, int]) -> tuple[int, int]:
        """Return ``(slope, intercept)`` as a function of ``j``."""
        rest = {v: c for v, c in self.coeffs if v != "j"}
        intercept = self.const + sum(c * env[v] for v, c in rest.items())
        return self.coeff("j"), intercept


@dataclass(frozen=True)
class BinomFactor:
    """``[top, floor(bottom / div)]`` in base ``q^d``."""

    top: Affine
    bottom: Affine
    d: int = 1
    div: int = 1

    @classmethod
    def of(cls, top, bottom, d: int = 1, div: int = 1) -> BinomFactor:
        return cls(Affine.parse(top), Affine.parse(bottom), d, div)


@dataclass(frozen=True)
class AltSumSpec:
    """Exponent ``a j^2 + b j + c`` (exact rationals) and binomial factors."""

    a: Fraction
    b: Fraction
    c: Fraction = Fraction(0)
    binoms: tuple[BinomFactor, ...] = field(default_factory=tuple)
    alternating: bool = True

    @classmethod
    def of(cls, a, b, c=0, binoms=(), alternating=True) -> AltSumSpec:
        return cls(Fraction(a), Fraction(b), Fraction(c), tuple(binoms), alternating)

    def exponent(self, j: int) -> int:
        e = self.a * j * j + self.b * j + self.c
        if e.denominator != 1:
            raise NonIntegerExponent(f"exponent {e} at j={j}")
        return int(e)


def _ceil_div(p: int, q: int) -> int:
    return -((-p) // q)


def _bounds(spec: AltSumSpec, env: Mapping[str, int]) -> tuple[int, int] | None:
    """Smallest j-interval outside which some binomial vanishes."""
    lo, hi = -math.inf, math.inf
    for bf in spec.binoms:
        ts, ti = bf.top.split_j(env)
        bs, bi = bf.bottom.split_j(env)
        # floor(x/div) in [0, top]  <=>  0 <= x <= div*top + div - 1
        for slope, icpt in ((bs, bi), (bf.div * ts - bs, bf.div * ti + bf.div - 1 - bi)):
            # slope*j + icpt >= 0
            if slope > 0:
                lo = max(lo, _ceil_div(-icpt, slope))
            elif slope < 0:
                hi = min(hi, icpt // (-slope))
            elif icpt < 0:
                return None
    if lo == -math.inf or hi == math.inf:
        raise InvalidParams("alternating sum has unbounded j-range")
    if lo > hi:
        return None
    return int(lo), int(hi)


def j_range(spec: AltSumSpec, env: Mapping[str, int]) -> range:
    b = _bounds(spec, env)
    return range(0) if b is None else range(b[0], b[1] + 1)


def alt_sum_term(spec: AltSumSpec, env: Mapping[str, int], j: int) -> QLaurent:
    envj = dict(env, j=j)
    prod = None
    for bf in spec.binoms:
        top = bf.top.eval(envj)
        bottom = bf.bottom.eval(envj) // bf.div
        f = qbin(top, bottom, bf.d)
        if f.is_zero():
            return ZERO
        prod = f if prod is None else prod * f
    if prod is None:
        prod = QLaurent.monomial(0)
    sign = -1 if spec.alternating and j % 2 else 1
    return prod.scale(sign).shift(spec.exponent(j))


def alt_sum(spec: AltSumSpec, L: int | None = None, **params: int) -> QLaurent:
    """Evaluate the finite alternating sum for the given parameters."""
    env = dict(params)
    if L is not None:
        env["L"] = L
    acc: dict[int, object] = {}
    for j in j_range(spec, env):
        _accumulate(acc, alt_sum_term(spec, env, j))
    return QLaurent(acc)


def _accumulate(acc: dict, p: QLaurent, sign: int = 1) -> None:
    for e, v in p.as_dict().items():
        acc[e] = acc.get(e, 0) + sign * v


# -- the G functional ---------------------------------------------------

@dataclass(frozen=True)
class GParams:
    """Arguments of ``G(N, M, alpha, beta, K)``."""

    N: int
    M: int
    alpha: Fraction
    beta: Fraction
    K: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.K < 1:
            raise InvalidParams("K must be a positive integer")
        if self.N < 0 or self.M < 0:
            raise InvalidParams("N and M must be natural numbers")
        ak, bk = self.alpha * self.K, self.beta * self.K
        if ak.denominator != 1 or bk.denominator != 1 or ak < 0 or bk < 0:
            raise InvalidParams("alpha*K and beta*K must be natural numbers")

    @property
    def alpha_k(self) -> int:
        return int(self.alpha * self.K)

    @property
    def beta_k(self) -> int:
        return int(self.beta * self.K)

    @classmethod
    def from_scaled(cls, N: int, M: int, alpha_k: int, beta_k: int, K: int) -> GParams:
        return cls(N, M, Fraction(alpha_k, K), Fraction(beta_k, K), K)


def g_exponent(p: GParams, j: int) -> int:
    # K j ((alpha+beta) j + (alpha-beta)) / 2
    e = Fraction(j * ((p.alpha_k + p.beta_k) * j + (p.alpha_k - p.beta_k)), 2)
    if e.denominator != 1:
        raise NonIntegerExponent(f"G exponent {e} at j={j} for {p}")
    return int(e)


def g_range(p: GParams) -> range:
    # 0 <= N - K j <= N + M
    return range(_ceil_div(-p.M, p.K), p.N // p.K + 1)


def g_eval(p: GParams) -> QLaurent:
    """``G(N, M, alpha, beta, K; q) = sum_j (-1)^j q^{...} [N+M, N-Kj]``."""
    acc: dict[int, int] = {}
    top = p.N + p.M
    for j in g_range(p):
        b = qbin(top, p.N - p.K * j)
        s = g_exponent(p, j)
        sign = -1 if j % 2 else 1
        for e, v in b.as_dict().items():
            acc[e + s] = acc.get(e + s, 0) + sign * v
    return QLaurent(acc)


def alt_sum_double(L: int, M: int, v: int, b: int) -> QLaurent:
    """``F_b(L, M, v)``: the two-binomial alternating sum behind the bounded identities."""
    return alt_sum(double_spec(v, b), L=L, M=M)


def double_spec(v: int, b: int) -> AltSumSpec:
    """``sum (-1)^j q^{v j^2} [L+M-(v-1)j, L-vj] [L+b+M+(v-1)j, L+b+vj]``."""
    return AltSumSpec.of(v, 0, 0, (
        BinomFactor.of(f"L+M-{v - 1}j", f"L-{v}j"),
        BinomFactor.of(f"L+{b}+M+{v - 1}j", f"L+{b}+{v}j"),
    ))
