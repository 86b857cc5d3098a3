"""Bivariate rational functions in (L, T); gcd reduction is delegated to sympy."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

import sympy

from .multipoly import MultiPoly, grlex_key

Scalar = Union[int, Fraction]

_L, _T = sympy.symbols("L T")


def _to_sympy(p: MultiPoly) -> sympy.Poly:
    return sympy.Poly.from_dict(
        {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()} or {(0, 0): 0},
        _L, _T, domain="QQ",
    )


def _from_sympy(p: sympy.Poly) -> MultiPoly:
    return MultiPoly(2, {tuple(e): Fraction(int(c.p), int(c.q)) for e, c in p.as_dict().items()})


class BivarRatFun:
    """num/den in Q(L, T); reduced, with the grlex-leading coefficient of den equal to 1.

    Negative powers of L or T are absorbed into the denominator by the caller
    multiplying through; MultiPoly exponents stay nonnegative.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None, *, reduced: bool = False):
        if den is None:
            den = MultiPoly.const(2, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = MultiPoly(2), MultiPoly.const(2, 1)
            return
        if not reduced:
            sn, sd = _to_sympy(num), _to_sympy(den)
            g = sympy.gcd(sn, sd)
            if g.total_degree() > 0:
                sn, sd = sympy.div(sn, g)[0], sympy.div(sd, g)[0]
                num, den = _from_sympy(sn), _from_sympy(sd)
        lead = den.sorted_terms()[0][1]
        if lead != 1:
            num, den = num * (1 / lead), den * (1 / lead)
        self.num, self.den = num, den

    @classmethod
    def const(cls, c: Scalar) -> "BivarRatFun":
        return cls(MultiPoly.const(2, c))

    @classmethod
    def poly(cls, terms: Mapping[tuple[int, int], Scalar]) -> "BivarRatFun":
        return cls(MultiPoly(2, terms))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BivarRatFun) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: "BivarRatFun") -> "BivarRatFun":
        return BivarRatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "BivarRatFun":
        return BivarRatFun(-self.num, self.den, reduced=True)

    def __sub__(self, other: "BivarRatFun") -> "BivarRatFun":
        return self + (-other)

    def __mul__(self, other: Union["BivarRatFun", Scalar]) -> "BivarRatFun":
        if not isinstance(other, BivarRatFun):
            other = BivarRatFun.const(other)
        return BivarRatFun(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "BivarRatFun") -> "BivarRatFun":
        return BivarRatFun(self.num * other.den, self.den * other.num)

    def to_text(self) -> str:
        return f"({_poly_text(self.num)}) / ({_poly_text(self.den)})"


def _poly_text(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for (i, j), c in sorted(p.terms.items(), key=lambda kv: grlex_key(kv[0])):
        mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in (("L", i), ("T", j)) if k)
        mag = abs(c)
        body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
        out.append(("-" if c < 0 else "+", body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text
