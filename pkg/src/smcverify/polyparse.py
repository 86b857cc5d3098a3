"""Parser and canonical printer for polynomials with rational coefficients.

Grammar (whitespace ignored)::

    expr   := [sign] term (sign term)*
    term   := factor ('*' factor)*
    factor := atom ['^' INT]
    atom   := INT ['/' INT] | VAR | '(' expr ')'

Parenthesized products are expanded eagerly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import MultiPoly
from .errors import PolySyntaxError, UnknownVariable, ZeroPolynomial

DEFAULT_VARS = ("x", "y", "z")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass(frozen=True)
class ParsedInput:
    poly: MultiPoly
    variable_names: tuple[str, ...]
    source_text: str


def numbered_vars(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, n + 1))


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex) if m.lastindex else m.start()
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), start))
        elif m.group(3) is not None:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.index = {v: k for k, v in enumerate(variables)}
        self.n = len(variables)

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise PolySyntaxError(pos, f"expected '{op}', found {val or 'end of input'!r}")

    def parse(self) -> MultiPoly:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise PolySyntaxError(pos, f"unexpected {val!r}")
        return p

    def expr(self) -> MultiPoly:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        total = self.term() * sign
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                total = total + t if val == "+" else total - t
            else:
                return total

    def term(self) -> MultiPoly:
        p = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.factor()
            else:
                return p

    def factor(self) -> MultiPoly:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise PolySyntaxError(pos, "exponent must be a nonnegative integer")
            return base ** int(val)
        return base

    def atom(self) -> MultiPoly:
        kind, val, pos = self.take()
        if kind == "int":
            num = int(val)
            nk, nv, _ = self.peek()
            if nk == "op" and nv == "/":
                self.take()
                dk, dv, dpos = self.take()
                if dk != "int":
                    raise PolySyntaxError(dpos, "denominator must be an integer")
                if int(dv) == 0:
                    raise PolySyntaxError(dpos, "zero denominator")
                return MultiPoly.const(self.n, Fraction(num, int(dv)))
            return MultiPoly.const(self.n, num)
        if kind == "var":
            if val not in self.index:
                raise UnknownVariable(f"unknown variable {val!r} at position {pos}")
            return MultiPoly.var(self.n, self.index[val])
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise PolySyntaxError(pos, f"unexpected {val or 'end of input'!r}")


def parse_poly(text: str, variables: Sequence[str] = DEFAULT_VARS) -> ParsedInput:
    poly = _Parser(text, variables).parse()
    if poly.is_zero():
        raise ZeroPolynomial(f"{text!r} is the zero polynomial")
    return ParsedInput(poly, tuple(variables), text)


def homogeneity(p: MultiPoly) -> int | None:
    return p.homogeneity()


def support(p: MultiPoly) -> set[tuple[int, ...]]:
    return p.support()


def format_poly(p: MultiPoly, variables: Sequence[str] = DEFAULT_VARS) -> str:
    """Canonical text: graded-lex order, explicit '*', '^' only for exponents >= 2."""
    if p.is_zero():
        return "0"
    pieces = []
    for e, c in p.sorted_terms():
        mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(variables, e) if k)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        pieces.append(("-" if c < 0 else "+", body))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text
