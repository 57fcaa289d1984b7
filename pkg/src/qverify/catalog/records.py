"""Verification verdicts."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..qpoly import QLaurent, QSeries

EQUAL = "Equal"
MISMATCH = "Mismatch"
NONNEGATIVE = "NonNegative"
NEGATIVE = "NegativeCoefficient"
ERROR = "Error"

PASSING = frozenset({EQUAL, NONNEGATIVE})


def _jsonable(c):
    if c is None or isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return str(c)
    return c


@dataclass
class VerificationRecord:
    family: str
    params: dict[str, Any]
    status: str
    first_mismatch: int | None = None
    lhs_coeff: Any = None
    rhs_coeff: Any = None
    truncation: int | None = None
    elapsed_ms: float = 0.0
    detail: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.status == MISMATCH and self.first_mismatch is None:
            raise ValueError("a Mismatch record needs its discrepancy exponent")

    @property
    def passed(self) -> bool:
        return self.status in PASSING

    def to_json(self) -> dict[str, Any]:
        out = {
            "family": self.family,
            "params": dict(self.params),
            "status": self.status,
            "first_mismatch": self.first_mismatch,
            "lhs_coeff": _jsonable(self.lhs_coeff),
            "rhs_coeff": _jsonable(self.rhs_coeff),
            "truncation": self.truncation,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "detail": self.detail,
        }
        return out


def _coeff_maps(x) -> dict[int, Any]:
    if isinstance(x, QSeries):
        return {e: c for e, c in enumerate(x.coeffs) if c}
    if isinstance(x, QLaurent):
        return x.as_dict()
    return {0: x} if x else {}


def first_difference(lhs, rhs) -> tuple[int, Any, Any] | None:
    a, b = _coeff_maps(lhs), _coeff_maps(rhs)
    diff = [e for e in set(a) | set(b) if a.get(e, 0) != b.get(e, 0)]
    if not diff:
        return None
    e = min(diff)
    return e, a.get(e, 0), b.get(e, 0)


def elapsed_since(t0: float) -> float:
    return (time.perf_counter() - t0) * 1000.0


def compare(family: str, params: dict, lhs, rhs, t0: float, trunc: int | None = None) -> VerificationRecord:
    d = first_difference(lhs, rhs)
    if d is None:
        return VerificationRecord(family, params, EQUAL, truncation=trunc, elapsed_ms=elapsed_since(t0))
    e, a, b = d
    return VerificationRecord(family, params, MISMATCH, e, a, b, trunc, elapsed_since(t0))


def first_negative(p) -> tuple[int, Any] | None:
    neg = [(e, c) for e, c in _coeff_maps(p).items() if c < 0]
    return min(neg) if neg else None
