"""Sparse multivariate polynomials over Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


def grlex_key(e: Exponent) -> tuple:
    """Sort key placing higher total degree first, then lexicographically larger first."""
    return (-sum(e), tuple(-x for x in e))


class MultiPoly:
    """Map from exponent tuple to nonzero Fraction, in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | Iterable[tuple[Exponent, Scalar]] = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Fraction] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if clean[e] == 0:
                    del clean[e]
        self.terms = clean

    @classmethod
    def const(cls, nvars: int, c: Scalar) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, e: Sequence[int], c: Scalar = 1) -> "MultiPoly":
        return cls(len(e), {tuple(e): c})

    @classmethod
    def linear_form(cls, coeffs: Sequence[Scalar]) -> "MultiPoly":
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MultiPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self.sorted_terms()})"

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]))

    def support(self) -> set[Exponent]:
        return set(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneity(self) -> int | None:
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.nvars, out)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: Union["MultiPoly", Scalar]) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = Fraction(other)
            return MultiPoly(self.nvars, {e: c * v for e, v in self.terms.items()})
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        result = MultiPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return MultiPoly(self.nvars, out)

    def times_var(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            f[i] += 1
            out[tuple(f)] = c
        return MultiPoly(self.nvars, out)

    def permute(self, perm: Sequence[int]) -> "MultiPoly":
        """New exponent in slot i is the old exponent of variable perm[i]."""
        return MultiPoly(self.nvars, {tuple(e[p] for p in perm): c for e, c in self.terms.items()})

    def min_exponents(self) -> Exponent:
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def divide_monomial(self, m: Exponent) -> "MultiPoly":
        return MultiPoly(self.nvars, {tuple(a - b for a, b in zip(e, m)): c for e, c in self.terms.items()})

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total
