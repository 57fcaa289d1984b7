"""Gaussian binomials, q-trinomials and q-Pochhammer symbols."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DivergentSpec, NotAPolynomial
from .qpoly import ONE, ZERO, QLaurent, QSeries, poly_substitute_power

# Memo limits: binomials with top above CACHE_MAX_TOP or base power above
# CACHE_MAX_BASE are still computed, just never stored.
CACHE_MAX_TOP = 400
CACHE_MAX_BASE = 4

_cache: dict[tuple[int, int, int], QLaurent] = {}
_lock = threading.Lock()


@dataclass(frozen=True)
class BinomKey:
    top: int
    bottom: int
    d: int = 1

    def canonical(self) -> BinomKey:
        return BinomKey(self.top, min(self.bottom, self.top - self.bottom), self.d)


def configure_cache(max_top: int = 400, max_base: int = 4) -> None:
    global CACHE_MAX_TOP, CACHE_MAX_BASE
    CACHE_MAX_TOP, CACHE_MAX_BASE = max_top, max_base


def clear_cache() -> None:
    with _lock:
        _cache.clear()


def cache_size() -> int:
    return len(_cache)


def _cacheable(top: int, d: int) -> bool:
    return top <= CACHE_MAX_TOP and d <= CACHE_MAX_BASE


def _pascal(top: int, k: int) -> QLaurent:
    """[top, k]_q with k <= top - k, filling the k x (top-k) Pascal rectangle.

    Uses [a+b, a] = [a+b-1, a-1] + q^a [a+b-1, a]; rectangle coordinates are
    (a, b) with a the bottom index and b = top - bottom.
    """
    m = top - k
    store = _cacheable(top, 1)
    local: dict[tuple[int, int], QLaurent] = {}

    def get(a: int, b: int) -> QLaurent:
        if a == 0 or b == 0:
            return ONE
        key = (a + b, min(a, b), 1)
        hit = _cache.get(key)
        if hit is not None:
            return hit
        return local[(a, b)]

    for a in range(1, k + 1):
        for b in range(1, m + 1):
            key = (a + b, min(a, b), 1)
            if key in _cache or (a, b) in local:
                continue
            if (b, a) in local:
                local[(a, b)] = local[(b, a)]
                continue
            val = get(a - 1, b) + get(a, b - 1).shift(a)
            if store and _cacheable(a + b, 1):
                with _lock:
                    _cache.setdefault(key, val)
            else:
                local[(a, b)] = val
    return get(k, m)


def qbin(top: int, bottom: int, d: int = 1) -> QLaurent:
    """Gaussian binomial ``[top, bottom]`` in base ``q^d``; zero outside ``0 <= bottom <= top``."""
    if bottom < 0 or bottom > top:
        return ZERO
    k = min(bottom, top - bottom)
    if k == 0:
        return ONE
    key = (top, k, d)
    hit = _cache.get(key)
    if hit is not None:
        return hit
    if d == 1:
        return _pascal(top, k)
    val = poly_substitute_power(qbin(top, k, 1), d)
    if _cacheable(top, d):
        with _lock:
            _cache.setdefault(key, val)
    return val


def trinom(L: int, m: int, n: int) -> QLaurent:
    """q-trinomial ``(L; m, n) = [L, m] [L - m, n]``."""
    if m < 0 or n < 0 or m + n > L:
        return ZERO
    return qbin(L, m) * qbin(L - m, n)


@dataclass(frozen=True)
class Mono:
    """Signed monomial ``coeff * q^exp`` used as a Pochhammer argument."""

    coeff: int | Fraction = 1
    exp: int = 0

    def as_laurent(self) -> QLaurent:
        return QLaurent.monomial(self.exp, self.coeff)


@dataclass(frozen=True)
class PochSpec:
    """``(a_1, ..., a_r; q^d)_n``; ``length=None`` stands for infinity."""

    factors: tuple[Mono, ...]
    d: int = 1
    length: int | None = None

    @classmethod
    def of(cls, factors: Iterable[Mono | tuple], d: int = 1, length: int | None = None):
        fs = tuple(f if isinstance(f, Mono) else Mono(*f) for f in factors)
        return cls(fs, d, length)


def _factor(a: Mono, shift: int) -> QLaurent:
    # 1 - a q^shift
    return ONE - QLaurent.monomial(a.exp + shift, a.coeff)


def poch_finite(spec: PochSpec) -> QLaurent:
    """Finite product ``prod_a prod_{j<n} (1 - a q^{d j})``.

    Negative ``n`` follows ``(a;q)_{-n} = 1/(a/q; 1/q)_n`` and is supported
    only when that reciprocal is itself a Laurent monomial.
    """
    n = spec.length
    if n is None:
        raise DivergentSpec("infinite Pochhammer symbol needs poch_infinite")
    out = ONE
    if n >= 0:
        for a in spec.factors:
            for j in range(n):
                out = out * _factor(a, spec.d * j)
        return out
    for a in spec.factors:
        for j in range(1, -n + 1):
            out = out * _factor(a, -spec.d * j)
    if out.is_zero() or not out.is_monomial():
        raise NotAPolynomial(f"(a;q)_{n} is not a Laurent polynomial here")
    return out ** -1


def poch(factors: Sequence[Mono | tuple], d: int, n: int) -> QLaurent:
    return poch_finite(PochSpec.of(factors, d, n))


def poch_infinite(spec: PochSpec, trunc: int) -> QSeries:
    """Truncated ``prod_a prod_{j>=0} (1 - a q^{d j})`` as a power series."""
    if spec.length is not None:
        return QSeries.from_laurent(poch_finite(spec), trunc)
    if spec.d < 1:
        raise DivergentSpec("Pochhammer base must be q^d with d >= 1")
    coeffs = [1] + [0] * trunc
    for a in spec.factors:
        if a.coeff == 0:
            continue
        if a.exp < 0:
            raise DivergentSpec(f"factor with q^{a.exp} leaves the power-series ring")
        j = 0
        while a.exp + spec.d * j <= trunc:
            e = a.exp + spec.d * j
            c = a.coeff
            if e == 0:
                if c == 1:
                    return QSeries.zero(trunc)
                coeffs = [x * (1 - c) for x in coeffs]
            else:
                # multiply in place by (1 - c q^e), high exponents first
                for t in range(trunc, e - 1, -1):
                    if coeffs[t - e]:
                        coeffs[t] -= c * coeffs[t - e]
            j += 1
    return QSeries(coeffs, trunc)


def qbinom_theorem_rhs(L: int, z: Mono) -> QLaurent:
    """Right side ``(-z; q)_L`` of the finite q-binomial theorem."""
    return poch([Mono(-z.coeff, z.exp)], 1, L)


def qbinom_theorem_lhs(L: int, z: Mono) -> QLaurent:
    """``sum_n q^{n(n-1)/2} z^n [L, n]``."""
    out = ZERO
    zl = z.as_laurent()
    for n in range(L + 1):
        out = out + (zl ** n).shift(n * (n - 1) // 2) * qbin(L, n)
    return out


def inv_poch_q(n: int, trunc: int, d: int = 1) -> QSeries:
    """``1 / (q^d; q^d)_n`` truncated; ``n=None`` gives ``1/(q^d;q^d)_inf``."""
    return _inv_poch(n, trunc, d)


_inv_cache: dict[tuple, QSeries] = {}


def _inv_poch(n, trunc, d):
    key = (n, trunc, d)
    hit = _inv_cache.get(key)
    if hit is not None:
        return hit
    # multiply by 1/(1 - q^{d j}) = running prefix sums with stride d j
    coeffs = [1] + [0] * trunc
    j = 1
    while (n is None or j <= n) and d * j <= trunc:
        e = d * j
        for t in range(e, trunc + 1):
            coeffs[t] += coeffs[t - e]
        j += 1
    val = QSeries(coeffs, trunc)
    with _lock:
        _inv_cache[key] = val
    return val
