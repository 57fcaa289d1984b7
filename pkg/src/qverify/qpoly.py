"""Exact Laurent polynomials and truncated power series in one variable ``q``.

Coefficients are Python ints whenever possible and ``Fraction`` otherwise;
a Fraction with unit denominator is always stored as an int so that the
integral fast paths (Kronecker-substitution products) stay available.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Mapping, Union

from .errors import NonIntegerCoefficient, NotAPolynomial, ZeroConstantTerm

Coeff = Union[int, Fraction]

# below this length the schoolbook product beats packing into big ints
_KRONECKER_MIN = 12


def _norm(c) -> Coeff:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, float):
        raise TypeError("floating-point coefficients are not supported")
    return _norm(Fraction(c))


def _schoolbook(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _pack(arr: list[int], nbytes: int) -> int:
    pos = b"".join((x if x > 0 else 0).to_bytes(nbytes, "little") for x in arr)
    neg = b"".join((-x if x < 0 else 0).to_bytes(nbytes, "little") for x in arr)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _int_mul(a: list[int], b: list[int]) -> list[int]:
    """Dense product of two integer coefficient lists."""
    if min(len(a), len(b)) < _KRONECKER_MIN:
        return _schoolbook(a, b)
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    n = len(a) + len(b) - 1
    if ma == 0 or mb == 0:
        return [0] * n
    bound = ma * mb * min(len(a), len(b))
    nbytes = (bound.bit_length() + 8) // 8
    half = 1 << (8 * nbytes - 1)
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    # each digit c_i + half lies in [0, 2^(8*nbytes)), so no borrows survive
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * n, "little")
    raw = (prod + bias).to_bytes(nbytes * n, "little")
    return [
        int.from_bytes(raw[k * nbytes:(k + 1) * nbytes], "little") - half
        for k in range(n)
    ]


def _dense_mul(a: list, b: list) -> list:
    """Dense product for int or Fraction coefficient lists."""
    da = lcm(*(x.denominator for x in a if isinstance(x, Fraction))) if any(
        isinstance(x, Fraction) for x in a) else 1
    db = lcm(*(x.denominator for x in b if isinstance(x, Fraction))) if any(
        isinstance(x, Fraction) for x in b) else 1
    if da == 1 and db == 1:
        return _int_mul(a, b)
    ia = [int(x * da) for x in a]
    ib = [int(x * db) for x in b]
    scale = da * db
    return [_norm(Fraction(c, scale)) for c in _int_mul(ia, ib)]


class QLaurent:
    """Immutable sparse Laurent polynomial ``sum c_e q^e`` with exact coefficients.

    The coefficient map never stores zeros, so structural equality of the
    maps is equality of polynomials.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Coeff] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if not isinstance(e, int):
                    raise TypeError(f"exponent must be int, got {e!r}")
                v = _norm(v)
                if v:
                    c[e] = v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: dict) -> QLaurent:
        # caller guarantees int keys, normalized nonzero values
        obj = cls.__new__(cls)
        obj._c = coeffs
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, e: int = 0, c: Coeff = 1) -> QLaurent:
        return cls({e: c})

    @classmethod
    def from_dense(cls, coeffs: Iterable[Coeff], offset: int = 0) -> QLaurent:
        return cls._raw({offset + k: v for k, v in enumerate(map(_norm, coeffs)) if v})

    # -- queries -------------------------------------------------------
    def coeff(self, e: int) -> Coeff:
        return self._c.get(e, 0)

    def __getitem__(self, e: int) -> Coeff:
        return self._c.get(e, 0)

    def items(self) -> Iterator[tuple[int, Coeff]]:
        return iter(sorted(self._c.items()))

    def as_dict(self) -> dict[int, Coeff]:
        return dict(self._c)

    @property
    def min_exp(self) -> int | None:
        return min(self._c) if self._c else None

    @property
    def max_exp(self) -> int | None:
        return max(self._c) if self._c else None

    def degree(self) -> int | None:
        return self.max_exp

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self._c.values())

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def dense(self) -> tuple[int, list[Coeff]]:
        """Return ``(offset, coefficient list)`` covering min..max exponent."""
        if not self._c:
            return 0, []
        lo, hi = min(self._c), max(self._c)
        out = [0] * (hi - lo + 1)
        for e, v in self._c.items():
            out[e - lo] = v
        return lo, out

    # -- arithmetic ----------------------------------------------------
    @staticmethod
    def _coerce(x) -> QLaurent:
        if isinstance(x, QLaurent):
            return x
        if isinstance(x, (int, Fraction)):
            return QLaurent({0: x})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other._c) > len(self._c):
            big, small = other._c, self._c
        else:
            big, small = self._c, other._c
        out = dict(big)
        for e, v in small.items():
            s = out.get(e, 0) + v
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return QLaurent._raw(out)

    __radd__ = __add__

    def __neg__(self) -> QLaurent:
        return QLaurent._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QLaurent:
        if n < 0:
            if not self.is_monomial():
                raise NotAPolynomial("only monomials are invertible in the Laurent ring")
            (e, c), = self._c.items()
            return QLaurent({e * n: Fraction(c) ** n})
        out = QLaurent.monomial(0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, e: int) -> QLaurent:
        """Multiply by ``q^e``."""
        if e == 0:
            return self
        return QLaurent._raw({k + e: v for k, v in self._c.items()})

    def scale(self, c: Coeff) -> QLaurent:
        c = _norm(c)
        if not c:
            return QLaurent._raw({})
        return QLaurent._raw({k: _norm(v * c) for k, v in self._c.items()})

    def substitute_power(self, d: int) -> QLaurent:
        return poly_substitute_power(self, d)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"QLaurent({self})"

    def __str__(self) -> str:
        return _format_terms(sorted(self._c.items()))


def _format_terms(items) -> str:
    parts = []
    for e, c in items:
        if e == 0:
            body = str(c)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            if c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                body = f"{c}*{mono}"
        parts.append(body)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


ZERO = QLaurent()
ONE = QLaurent.monomial(0)
Q = QLaurent.monomial(1)


def poly_mul(a: QLaurent, b: QLaurent) -> QLaurent:
    if not a._c or not b._c:
        return ZERO
    if len(a._c) == 1 or len(b._c) == 1:
        if len(a._c) != 1:
            a, b = b, a
        (e, c), = a._c.items()
        return b.scale(c).shift(e)
    oa, da = a.dense()
    ob, db = b.dense()
    return QLaurent.from_dense(_dense_mul(da, db), oa + ob)


def poly_substitute_power(a: QLaurent, d: int) -> QLaurent:
    """Replace ``q`` by ``q^d``."""
    if d < 1:
        raise ValueError("substitution power must be positive")
    if d == 1:
        return a
    return QLaurent._raw({d * e: v for e, v in a._c.items()})


def to_polynomial(a: QLaurent) -> QLaurent:
    """Assert that ``a`` is an ordinary polynomial with integer coefficients."""
    if a._c and min(a._c) < 0:
        raise NotAPolynomial(f"negative exponent {min(a._c)} in {a}")
    for e, v in a._c.items():
        if not isinstance(v, int):
            raise NonIntegerCoefficient(f"coefficient {v} at q^{e}")
    return a


class QSeries:
    """Power series ``sum_{e=0}^{T} c_e q^e + O(q^{T+1})``.

    Arithmetic between series requires the same truncation order ``T``.
    """

    __slots__ = ("trunc", "_c")

    def __init__(self, coeffs: Iterable[Coeff], trunc: int):
        if trunc < 0:
            raise ValueError("truncation order must be >= 0")
        c = [_norm(x) for x in coeffs][: trunc + 1]
        c.extend([0] * (trunc + 1 - len(c)))
        self.trunc = trunc
        self._c = tuple(c)

    @classmethod
    def _raw(cls, coeffs: list, trunc: int) -> QSeries:
        obj = cls.__new__(cls)
        obj.trunc = trunc
        obj._c = tuple(coeffs)
        return obj

    @classmethod
    def zero(cls, trunc: int) -> QSeries:
        return cls._raw([0] * (trunc + 1), trunc)

    @classmethod
    def one(cls, trunc: int) -> QSeries:
        return cls._raw([1] + [0] * trunc, trunc)

    @classmethod
    def from_laurent(cls, p: QLaurent, trunc: int) -> QSeries:
        """Truncate a Laurent polynomial; negative exponents are rejected."""
        if p.min_exp is not None and p.min_exp < 0:
            raise NotAPolynomial(f"cannot embed {p} in a power series")
        out = [0] * (trunc + 1)
        for e, v in p._c.items():
            if e <= trunc:
                out[e] = v
        return cls._raw(out, trunc)

    @property
    def coeffs(self) -> tuple[Coeff, ...]:
        return self._c

    def __getitem__(self, e: int) -> Coeff:
        if not 0 <= e <= self.trunc:
            raise IndexError(f"exponent {e} outside 0..{self.trunc}")
        return self._c[e]

    def __len__(self) -> int:
        return self.trunc + 1

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self._c)

    def to_laurent(self) -> QLaurent:
        return QLaurent.from_dense(self._c)

    def truncate(self, trunc: int) -> QSeries:
        if trunc > self.trunc:
            raise ValueError("cannot raise the truncation order")
        return QSeries._raw(list(self._c[: trunc + 1]), trunc)

    def _check(self, other) -> QSeries:
        if isinstance(other, QLaurent):
            return QSeries.from_laurent(other, self.trunc)
        if isinstance(other, (int, Fraction)):
            return QSeries([other], self.trunc)
        if not isinstance(other, QSeries):
            return NotImplemented
        if other.trunc != self.trunc:
            raise ValueError(f"truncation mismatch: {self.trunc} vs {other.trunc}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return QSeries._raw([_norm(x + y) for x, y in zip(self._c, other._c)], self.trunc)

    __radd__ = __add__

    def __neg__(self) -> QSeries:
        return QSeries._raw([-x for x in self._c], self.trunc)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        prod = _dense_mul(list(self._c), list(other._c))
        return QSeries._raw(prod[: self.trunc + 1], self.trunc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * series_inverse_unit(other)

    def __rtruediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return other * series_inverse_unit(self)

    def scale(self, c: Coeff) -> QSeries:
        return QSeries._raw([_norm(x * c) for x in self._c], self.trunc)

    def shift(self, e: int) -> QSeries:
        """Multiply by ``q^e`` (``e >= 0``), dropping terms above ``T``."""
        if e < 0:
            raise NotAPolynomial("negative shift leaves the power-series ring")
        if e > self.trunc:
            return QSeries.zero(self.trunc)
        return QSeries._raw([0] * e + list(self._c[: self.trunc + 1 - e]), self.trunc)

    def substitute_power(self, d: int) -> QSeries:
        if d < 1:
            raise ValueError("substitution power must be positive")
        out = [0] * (self.trunc + 1)
        for e in range(0, self.trunc // d + 1):
            out[d * e] = self._c[e]
        return QSeries._raw(out, self.trunc)

    def __eq__(self, other) -> bool:
        if isinstance(other, QSeries):
            if other.trunc != self.trunc:
                raise ValueError(
                    f"series equality needs equal truncation ({self.trunc} vs {other.trunc})")
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.trunc, self._c))

    def __repr__(self) -> str:
        return f"QSeries({self}, T={self.trunc})"

    def __str__(self) -> str:
        body = _format_terms((e, c) for e, c in enumerate(self._c) if c)
        return f"{body} + O(q^{self.trunc + 1})"


def series_inverse_unit(s: QSeries) -> QSeries:
    """Multiplicative inverse of a series with nonzero constant term."""
    a = s._c
    if not a[0]:
        raise ZeroConstantTerm("series has zero constant term")
    inv0 = Fraction(1) / a[0] if a[0] not in (1, -1) else a[0]
    out = [_norm(inv0)]
    for n in range(1, s.trunc + 1):
        acc = 0
        for k in range(1, n + 1):
            if a[k]:
                acc += a[k] * out[n - k]
        out.append(_norm(-acc * inv0))
    return QSeries._raw(out, s.trunc)


def as_series(x, trunc: int) -> QSeries:
    if isinstance(x, QSeries):
        return x if x.trunc == trunc else x.truncate(trunc)
    if isinstance(x, QLaurent):
        return QSeries.from_laurent(x, trunc)
    return QSeries([x], trunc)
