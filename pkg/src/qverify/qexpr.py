"""A small language for q-series: products, binomials and rational combinations.

Grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | factor
    factor := atom ('^' int)?
    atom   := int | 'q' | '(' expr ')'
            | 'P(' mono (',' mono)* ';' mono (';' (nat | 'inf'))? ')'
            | 'qbin(' int ',' int (';' mono)? ')'
    mono   := ['-'] ('q' ('^' int)? | nat)
    int    := ['-'] nat

``q^n`` with a literal exponent is a single ``QPower`` node.  Error
positions are 1-based character columns; the end of input is ``len + 1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import DivergentSpec, NotAPolynomial, QVerifyError, ZeroConstantTerm
from .qbinom import Mono as PMono
from .qbinom import PochSpec, poch_finite, poch_infinite, qbin
from .qpoly import ONE, ZERO, QLaurent, QSeries, series_inverse_unit


class ExprSyntaxError(QVerifyError, SyntaxError):
    def __init__(self, position: int, expected, found: str = ""):
        self.position = position
        self.expected = frozenset(expected)
        want = ", ".join(sorted(self.expected))
        got = f" but found {found!r}" if found else " but reached end of input"
        super().__init__(f"at position {position}: expected one of {want}{got}")
        self.offset = position


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class QPower:
    exp: int


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Div:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class Mono:
    """Signed monomial ``coeff * q^exp`` appearing inside ``P`` and ``qbin``."""

    coeff: int
    exp: int


@dataclass(frozen=True)
class Poch:
    args: tuple[Mono, ...]
    base: Mono
    length: int | None = None


@dataclass(frozen=True)
class QBin:
    top: int
    bottom: int
    base: Mono = Mono(1, 1)


Node = Union[Int, QPower, Neg, Add, Sub, Mul, Div, Pow, Poch, QBin]


# -- tokens ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)|(.))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "name", "op", "eof"
    text: str
    pos: int  # 0-based


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            out.append(_Tok("eof", "", n))
            return out
        m = _TOKEN.match(text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(_Tok("int", m.group(1), start))
        elif m.group(2):
            out.append(_Tok("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^(),;":
                raise ExprSyntaxError(start + 1, {"an expression"}, ch)
            out.append(_Tok("op", ch, start))
        pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected):
        t = self.tok
        raise ExprSyntaxError(t.pos + 1, expected, t.text)

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("op", "name") and t.text == text

    def expect(self, text: str) -> None:
        if not self.at(text):
            self.fail({repr(text)})
        self.i += 1

    def nat(self) -> int:
        t = self.tok
        if t.kind != "int":
            self.fail({"integer"})
        self.i += 1
        return int(t.text)

    def signed(self) -> int:
        if self.at("-"):
            self.i += 1
            return -self.nat()
        return self.nat()

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "eof":
            self.fail({"'+'", "'-'", "'*'", "'/'", "end of input"})
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.tok.text
            self.i += 1
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.at("*") or self.at("/"):
            op = self.tok.text
            self.i += 1
            rhs = self.unary()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def unary(self) -> Node:
        if self.at("-"):
            self.i += 1
            return Neg(self.unary())
        return self.factor()

    def factor(self) -> Node:
        if self.at("q") and self.toks[self.i + 1].text == "^":
            self.i += 2
            node: Node = QPower(self.signed())
        else:
            node = self.atom()
        if self.at("^"):
            self.i += 1
            node = Pow(node, self.signed())
        return node

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return Int(int(t.text))
        if self.at("q"):
            self.i += 1
            return QPower(1)
        if self.at("("):
            self.i += 1
            node = self.expr()
            self.expect(")")
            return node
        if self.at("P"):
            self.i += 1
            self.expect("(")
            args = [self.mono()]
            while self.at(","):
                self.i += 1
                args.append(self.mono())
            self.expect(";")
            base = self.mono()
            length = None
            closing = {"';'", "')'"}
            if self.at(";"):
                self.i += 1
                closing = {"')'"}
                if self.at("inf"):
                    self.i += 1
                elif self.tok.kind == "int":
                    length = self.nat()
                else:
                    self.fail({"integer", "'inf'"})
            if not self.at(")"):
                self.fail(closing)
            self.i += 1
            return Poch(tuple(args), base, length)
        if self.at("qbin"):
            self.i += 1
            self.expect("(")
            top = self.signed()
            self.expect(",")
            bottom = self.signed()
            base = Mono(1, 1)
            if self.at(";"):
                self.i += 1
                base = self.mono()
            self.expect(")")
            return QBin(top, bottom, base)
        self.fail({"integer", "'q'", "'('", "'P('", "'qbin('"})

    def mono(self) -> Mono:
        sign = 1
        if self.at("-"):
            self.i += 1
            sign = -1
        if self.at("q"):
            self.i += 1
            e = 1
            if self.at("^"):
                self.i += 1
                e = self.signed()
            return Mono(sign, e)
        if self.tok.kind == "int":
            return Mono(sign * self.nat(), 0)
        self.fail({"'q'", "integer"})


def parse(text: str) -> Node:
    return _Parser(text).parse()


# -- printing ------------------------------------------------------------------

def _mono_text(m: Mono) -> str:
    if m.exp == 0:
        return str(m.coeff)
    if m.coeff not in (1, -1):
        raise ValueError(f"monomial {m} has no textual form")
    sign = "-" if m.coeff < 0 else ""
    return f"{sign}q" if m.exp == 1 else f"{sign}q^{m.exp}"


_ATOMIC = (Int, QPower, Poch, QBin)


def to_text(node: Node) -> str:
    """Render with the fewest parentheses that reparse to the same tree."""
    if isinstance(node, Int):
        if node.value < 0:
            return f"({node.value})"
        return str(node.value)
    if isinstance(node, QPower):
        return "q" if node.exp == 1 else f"q^{node.exp}"
    if isinstance(node, Neg):
        inner = to_text(node.arg)
        if not isinstance(node.arg, (*_ATOMIC, Neg, Pow)) or _int_neg(node.arg):
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, (Add, Sub)):
        op = "+" if isinstance(node, Add) else "-"
        right = to_text(node.right)
        if isinstance(node.right, (Add, Sub)):
            right = f"({right})"
        return f"{to_text(node.left)} {op} {right}"
    if isinstance(node, (Mul, Div)):
        op = "*" if isinstance(node, Mul) else "/"
        left = to_text(node.left)
        if isinstance(node.left, (Add, Sub)):
            left = f"({left})"
        right = to_text(node.right)
        if isinstance(node.right, (Add, Sub, Mul, Div)):
            right = f"({right})"
        return f"{left} {op} {right}"
    if isinstance(node, Pow):
        base = to_text(node.base)
        if not isinstance(node.base, (Int, Poch, QBin)) or _int_neg(node.base):
            base = f"({base})"
        return f"{base}^{node.exp}"
    if isinstance(node, Poch):
        args = ",".join(_mono_text(a) for a in node.args)
        length = "inf" if node.length is None else str(node.length)
        return f"P({args};{_mono_text(node.base)};{length})"
    if isinstance(node, QBin):
        if node.base == Mono(1, 1):
            return f"qbin({node.top},{node.bottom})"
        return f"qbin({node.top},{node.bottom};{_mono_text(node.base)})"
    raise TypeError(f"not an expression node: {node!r}")


def _int_neg(node) -> bool:
    return isinstance(node, Int) and node.value < 0


# -- evaluation ----------------------------------------------------------------

class _LS:
    """Laurent series known exactly up to (and including) exponent ``prec``.

    ``prec=None`` marks an exact Laurent polynomial.
    """

    __slots__ = ("p", "prec")

    def __init__(self, p: QLaurent, prec: int | None):
        if prec is not None:
            p = QLaurent({e: c for e, c in p.items() if e <= prec})
        self.p = p
        self.prec = prec

    def val(self) -> int | None:
        """Lowest known nonzero exponent; ``None`` if nothing nonzero is known."""
        return self.p.min_exp

    def _vlow(self) -> int:
        v = self.val()
        return v if v is not None else self.prec + 1

    def is_exact_zero(self) -> bool:
        return self.prec is None and not self.p

    def __add__(self, other: _LS) -> _LS:
        return _LS(self.p + other.p, _minp(self.prec, other.prec))

    def __neg__(self) -> _LS:
        return _LS(-self.p, self.prec)

    def __mul__(self, other: _LS) -> _LS:
        if self.is_exact_zero() or other.is_exact_zero():
            return _LS(ZERO, None)
        prec = None
        if self.prec is not None:
            prec = self.prec + other._vlow()
        if other.prec is not None:
            prec = _minp(prec, other.prec + self._vlow())
        return _LS(self.p * other.p, prec)

    def inverse(self) -> _LS:
        vb = self.val()
        if vb is None:
            raise ZeroConstantTerm("division by a series with no known nonzero term")
        if self.prec is None and self.p.is_monomial():
            return _LS(self.p ** -1, None)
        if self.prec is None:
            rel = None
        else:
            rel = self.prec - vb
        unit = self.p.shift(-vb)
        if rel is None:
            raise _NeedPrecision()
        s = QSeries.from_laurent(unit, rel)
        inv = series_inverse_unit(s).to_laurent()
        return _LS(inv.shift(-vb), rel - vb)


class _NeedPrecision(Exception):
    """An exact operand has to be divided by; the caller fixes the precision."""


def _minp(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _pmono(m: Mono) -> PMono:
    return PMono(m.coeff, m.exp)


def _base_power(m: Mono) -> int:
    if m.coeff != 1 or m.exp < 1:
        raise DivergentSpec(f"base must be q^d with d >= 1, got {_mono_text(m)}")
    return m.exp


class _Eval:
    def __init__(self, prec: int):
        self.prec = prec

    def run(self, node: Node) -> _LS:
        return getattr(self, type(node).__name__)(node)

    def Int(self, n: Int) -> _LS:
        return _LS(QLaurent.monomial(0, n.value) if n.value else ZERO, None)

    def QPower(self, n: QPower) -> _LS:
        return _LS(QLaurent.monomial(n.exp), None)

    def Neg(self, n: Neg) -> _LS:
        return -self.run(n.arg)

    def Add(self, n: Add) -> _LS:
        return self.run(n.left) + self.run(n.right)

    def Sub(self, n: Sub) -> _LS:
        return self.run(n.left) + (-self.run(n.right))

    def Mul(self, n: Mul) -> _LS:
        return self.run(n.left) * self.run(n.right)

    def Div(self, n: Div) -> _LS:
        return self.run(n.left) * self._inverse(self.run(n.right))

    def _inverse(self, d: _LS) -> _LS:
        try:
            return d.inverse()
        except _NeedPrecision:
            return _LS(d.p, self.prec).inverse()

    def Pow(self, n: Pow) -> _LS:
        b = self.run(n.base)
        e = abs(n.exp)
        out = _LS(ONE, None)
        while e:
            if e & 1:
                out = out * b
            b = b * b
            e >>= 1
        return self._inverse(out) if n.exp < 0 else out

    def Poch(self, n: Poch) -> _LS:
        d = _base_power(n.base)
        if n.length is not None:
            return _LS(poch_finite(PochSpec(tuple(_pmono(a) for a in n.args), d, n.length)), None)
        pre = ONE
        rest = []
        for a in n.args:
            e = a.exp
            while e < 0:
                pre = pre * (ONE - QLaurent.monomial(e, a.coeff))
                e += d
            rest.append(PMono(a.coeff, e))
        body = poch_infinite(PochSpec(tuple(rest), d), max(self.prec, 0))
        return _LS(pre, None) * _LS(body.to_laurent(), max(self.prec, 0))

    def QBin(self, n: QBin) -> _LS:
        return _LS(qbin(n.top, n.bottom, _base_power(n.base)), None)


def eval_expr(node: Node | str, trunc: int) -> QSeries:
    """Truncated power series of ``node`` through ``q^trunc``."""
    if isinstance(node, str):
        node = parse(node)
    pad = 0
    for _ in range(12):
        val = _Eval(trunc + pad).run(node)
        if val.prec is None or val.prec >= trunc:
            neg = [e for e, c in val.p.items() if e < 0 and c]
            if neg:
                raise NotAPolynomial(f"expression has a q^{min(neg)} term")
            return QSeries.from_laurent(
                QLaurent({e: c for e, c in val.p.items() if e <= trunc}), trunc)
        pad = 2 * pad + (trunc - val.prec) + 1
    raise DivergentSpec("could not reach the requested truncation order")
