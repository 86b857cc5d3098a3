"""Univariate rational functions over Q in canonical reduced form."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Union

from .unipoly import UniPoly, poly_gcd, root_multiplicity

Scalar = Union[int, Fraction]


class RatFun:
    """num/den with gcd removed and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly | None = None, *, reduced: bool = False):
        if den is None:
            den = UniPoly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = UniPoly(), UniPoly.const(1)
            return
        if not reduced:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc()
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def const(cls, c: Scalar) -> "RatFun":
        return cls(UniPoly.const(c))

    @classmethod
    def from_factored(cls, num: UniPoly, den_roots: Counter, den_scale: Scalar = 1) -> "RatFun":
        """num / (den_scale * prod (s - r)^k); cancellation by root evaluation, no Euclid."""
        roots = Counter({Fraction(r): k for r, k in den_roots.items() if k > 0})
        if num.is_zero():
            return cls(UniPoly())
        for r in sorted(roots):
            while roots[r] and num(r) == 0:
                num = num.shift_divide_root(r)
                roots[r] -= 1
        den = UniPoly.from_roots(r for r in sorted(roots) for _ in range(roots[r]))
        return cls(num * (1 / Fraction(den_scale)), den, reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatFun.const(other)
        return isinstance(other, RatFun) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFun(({self.num.to_str('s')}) / ({self.den.to_str('s')}))"

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den, reduced=True)

    def __add__(self, other: Union["RatFun", Scalar]) -> "RatFun":
        if not isinstance(other, RatFun):
            other = RatFun.const(other)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other: Union["RatFun", Scalar]) -> "RatFun":
        if not isinstance(other, RatFun):
            other = RatFun.const(other)
        return self + (-other)

    def __mul__(self, other: Union["RatFun", Scalar]) -> "RatFun":
        if not isinstance(other, RatFun):
            other = RatFun.const(other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["RatFun", Scalar]) -> "RatFun":
        if not isinstance(other, RatFun):
            other = RatFun.const(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __call__(self, value: Scalar) -> Fraction:
        d = self.den(value)
        if d == 0:
            raise ZeroDivisionError(f"pole at {value}")
        return self.num(value) / d

    def equals_cross(self, other: "RatFun") -> bool:
        return self.num * other.den == other.num * self.den


def ratfun_pole_data(f: RatFun, r: Scalar) -> tuple[int, Fraction]:
    """(order of the pole at r, lim (s - r)^order f(s)); order 0 gives the value f(r)."""
    r = Fraction(r)
    if f.is_zero():
        return 0, Fraction(0)
    order = root_multiplicity(f.den, r)
    den = f.den
    for _ in range(order):
        den = den.shift_divide_root(r)
    return order, f.num(r) / den(r)
