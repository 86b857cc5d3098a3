"""Dense univariate polynomials over Q."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Union

from ..errors import ZeroPolynomial

Scalar = Union[int, Fraction]


def _strip(coeffs: Iterable[Scalar]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class UniPoly:
    """Coefficients stored low degree first; the zero polynomial is ()."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self.coeffs = _strip(coeffs)

    @classmethod
    def const(cls, c: Scalar) -> "UniPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def linear_root(cls, r: Scalar) -> "UniPoly":
        """The monic factor (Y - r)."""
        return cls((-Fraction(r), 1))

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "UniPoly":
        p = cls.const(1)
        for r in roots:
            p = p * cls.linear_root(r)
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return UniPoly(c / lc for c in self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(other)
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({self.to_str()})"

    def to_str(self, var: str = "Y") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __add__(self, other: Union["UniPoly", Scalar]) -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = UniPoly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __sub__(self, other: Union["UniPoly", Scalar]) -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = UniPoly.const(other)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "UniPoly":
        return UniPoly.const(other) - self

    def __mul__(self, other: Union["UniPoly", Scalar]) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = Fraction(other)
            return UniPoly(c * a for a in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        result = UniPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.coeffs[-1]
        if len(rem) - 1 < dq:
            return UniPoly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lc
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quot), UniPoly(rem[:dq])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def __call__(self, value: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def shift_divide_root(self, r: Fraction) -> "UniPoly":
        """Synthetic division by (Y - r); the caller guarantees r is a root."""
        out = [Fraction(0)] * (len(self.coeffs) - 1)
        acc = Fraction(0)
        for k in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * r + self.coeffs[k]
            out[k - 1] = acc
        return UniPoly(out)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm. Factors are monic; multiplicities strictly increase."""
    if p.is_zero():
        raise ZeroPolynomial("squarefree decomposition of 0")
    if p.degree == 0:
        return []
    p = p.monic()
    dp = p.derivative()
    a0 = poly_gcd(p, dp)
    b = p.exact_div(a0)
    c = dp.exact_div(a0)
    d = c - b.derivative()
    out: list[tuple[UniPoly, int]] = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a, i))
        i += 1
    return out


def squarefree_part(p: UniPoly) -> UniPoly:
    p = p.monic()
    return p.exact_div(poly_gcd(p, p.derivative()))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for k in range(1, isqrt(n) + 1):
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
    return small + large[::-1]


def integer_coefficients(p: UniPoly) -> list[int]:
    """Primitive integer multiple of p (sign kept)."""
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g > 1 else ints


def rational_roots(p: UniPoly) -> list[Fraction]:
    """Distinct rational roots, ascending."""
    if p.is_zero():
        raise ZeroPolynomial("roots of 0")
    roots: set[Fraction] = set()
    coeffs = integer_coefficients(p)
    while coeffs and coeffs[0] == 0:
        roots.add(Fraction(0))
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return sorted(roots)
    q = UniPoly(coeffs)
    for num in _divisors(coeffs[0]):
        for den in _divisors(coeffs[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and q(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def splits_over_q(p: UniPoly) -> bool:
    """True when a squarefree p is a product of rational linear factors."""
    return len(rational_roots(p)) == p.degree


def root_multiplicity(p: UniPoly, r: Fraction) -> int:
    k = 0
    while not p.is_zero() and p(r) == 0:
        p = p.shift_divide_root(r)
        k += 1
    return k
