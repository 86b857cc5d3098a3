"""Lattice classification of 1-symmetric plane curves and the semi-simple standard form

    f = x^a1 y^a2 z^a3 prod_q (y^t + c_q x^u z^(t-u))^(b_q).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .arith import MultiPoly, UniPoly, rational_roots, squarefree_decomposition
from .errors import HyperplaneArrangement, NotDegreeD, NotHomogeneous, NotStandardForm, ZeroPolynomial
from . import logder

# identity, the three transpositions, the two 3-cycles
PERMUTATIONS: tuple[tuple[int, int, int], ...] = (
    (0, 1, 2),
    (1, 0, 2),
    (2, 1, 0),
    (0, 2, 1),
    (1, 2, 0),
    (2, 0, 1),
)


@dataclass(frozen=True)
class LatticePoint:
    u: int
    v: int


@dataclass(frozen=True)
class SupportLine:
    """Points (u, v) with normal . (u, v) = offset; `degenerate` when the support is one point."""

    normal: tuple[int, int]
    offset: int
    degenerate: bool = False


@dataclass(frozen=True)
class StandardFormData:
    a1: int
    a2: int
    a3: int
    t: int
    u: int
    b: tuple[int, ...]
    c: Optional[tuple[Fraction, ...]] = None
    permutation_applied: tuple[int, int, int] = (0, 1, 2)
    d: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "b", tuple(self.b))
        if self.c is not None:
            object.__setattr__(self, "c", tuple(Fraction(x) for x in self.c))
        object.__setattr__(self, "d", self.a1 + self.a2 + self.a3 + self.t * sum(self.b))
        if self.u != 0 and (gcd(self.t, self.u) != 1 or not 0 < self.u < self.t):
            raise ValueError(f"invalid (t, u) = ({self.t}, {self.u})")
        if any(x < 1 for x in self.b):
            raise ValueError("branch multiplicities must be positive")
        if self.c is not None and (len(set(self.c)) != len(self.c) or 0 in self.c or len(self.c) != len(self.b)):
            raise ValueError("c values must be distinct, nonzero and one per branch")

    @property
    def m(self) -> int:
        return len(self.b)

    @property
    def a(self) -> tuple[int, int, int]:
        return (self.a1, self.a2, self.a3)

    @property
    def sum_b(self) -> int:
        return sum(self.b)

    def is_reduced(self) -> bool:
        return all(x == 1 for x in self.b) and all(x <= 1 for x in self.a)

    def key(self) -> tuple:
        return (self.t, self.u, self.b, self.a)

    def reduced(self) -> "StandardFormData":
        """Standard form of f_red (same branches, exponents capped at 1)."""
        return StandardFormData(
            min(self.a1, 1), min(self.a2, 1), min(self.a3, 1), self.t, self.u,
            (1,) * self.m, self.c, self.permutation_applied,
        )


def phi_map(d: int, exponent: Sequence[int]) -> LatticePoint:
    e1, e2, e3 = exponent
    if e1 + e2 + e3 != d or min(exponent) < 0:
        raise NotDegreeD(f"{tuple(exponent)} is not a degree-{d} exponent")
    return LatticePoint(-e2, d - e1)


def support_line(f: MultiPoly) -> SupportLine | None:
    d = f.homogeneity()
    if d is None:
        raise NotHomogeneous("input polynomial is not homogeneous")
    pts = sorted({(p.u, p.v) for p in (phi_map(d, e) for e in f.terms)})
    if len(pts) == 1:
        return SupportLine((0, 0), 0, degenerate=True)
    (u0, v0), (u1, v1) = pts[0], pts[1]
    du, dv = u1 - u0, v1 - v0
    g = gcd(du, dv)
    nu, nv = -dv // g, du // g
    if nu < 0 or (nu == 0 and nv < 0):
        nu, nv = -nu, -nv
    offset = nu * u0 + nv * v0
    if any(nu * u + nv * v != offset for u, v in pts):
        return None
    return SupportLine((nu, nv), offset)


def binary_shadow(sf_t: int, sf_u: int, h: MultiPoly) -> UniPoly | None:
    """P(Y) = sum e_q Y^q when h = sum e_q y^(t(M-q)) (x^u z^(t-u))^q, else None."""
    deg = h.homogeneity()
    mcount = deg // sf_t
    coeffs = [Fraction(0)] * (mcount + 1)
    for (e1, e2, e3), c in h.terms.items():
        if sf_u == 0:
            q = e3
            ok = e1 == 0
        else:
            q, r = divmod(e1, sf_u)
            ok = r == 0 and e3 == q * (sf_t - sf_u)
        if not ok or e2 != sf_t * (mcount - q):
            return None
        coeffs[q] = c
    return UniPoly(coeffs)


def _try_extract(g: MultiPoly, perm: tuple[int, int, int]) -> StandardFormData | None:
    a = g.min_exponents()
    h = g.divide_monomial(a)
    dh = h.homogeneity()
    if dh == 0:
        return None
    if h.terms.get((0, dh, 0)) is None:
        return None
    y_free = [e for e in h.terms if e[1] == 0]
    if len(y_free) != 1:
        return None
    big_a, _, big_c = y_free[0]
    mcount = gcd(big_a, dh)
    t, u = dh // mcount, big_a // mcount
    if u == t:
        return None
    shadow = binary_shadow(t, u, h)
    if shadow is None or shadow.coeffs[0] == 0:
        return None
    parts = squarefree_decomposition(shadow)
    b: list[int] = []
    roots: list[tuple[int, Fraction]] = []
    split = True
    for factor, mult in parts:
        b.extend([mult] * factor.degree)
        rr = rational_roots(factor)
        if len(rr) != factor.degree:
            split = False
        roots.extend((mult, r) for r in rr)
    c = None
    if split:
        # (y^t + c x^u z^(t-u)) vanishes where Y = x^u z^(t-u) / y^t = -1/c
        pairs = sorted((mult, -1 / r) for mult, r in roots)
        b = [mult for mult, _ in pairs]
        c = tuple(cq for _, cq in pairs)
    else:
        b.sort()
    return StandardFormData(a[0], a[1], a[2], t, u, tuple(b), c, perm)


def extract_standard_form(f: MultiPoly) -> StandardFormData:
    if f.is_zero():
        raise ZeroPolynomial("zero input")
    if f.homogeneity() is None:
        raise NotHomogeneous("input polynomial is not homogeneous")
    if f.nvars != 3:
        raise NotStandardForm("standard forms live in three variables")
    for perm in PERMUTATIONS:
        sf = _try_extract(f.permute(perm), perm)
        if sf is not None:
            return sf
    raise NotStandardForm("no variable permutation puts the input in semi-simple standard form")


def stand_in_c(sf: StandardFormData) -> tuple[Fraction, ...]:
    """Rational branch constants: the recorded c if any, else the deterministic c_q = q + 1."""
    return sf.c if sf.c is not None else tuple(Fraction(q + 1) for q in range(sf.m))


def build_poly(sf: StandardFormData, c: Sequence[Fraction] | None = None) -> MultiPoly:
    """The polynomial in standard coordinates (the recorded permutation is not undone)."""
    cs = tuple(c) if c is not None else stand_in_c(sf)
    f = MultiPoly.monomial((sf.a1, sf.a2, sf.a3))
    for cq, bq in zip(cs, sf.b):
        branch = MultiPoly(3, {(0, sf.t, 0): 1, (sf.u, 0, sf.t - sf.u): cq})
        f = f * branch ** bq
    return f


def undo_permutation(g: MultiPoly, perm: Sequence[int]) -> MultiPoly:
    inverse = [0, 0, 0]
    for i, p in enumerate(perm):
        inverse[p] = i
    return g.permute(inverse)


def nontraceless_condition(sf: StandardFormData) -> bool:
    d = sf.d
    return sf.u * (d - 3 * sf.a3) != (sf.t - sf.u) * (d - 3 * sf.a1)


def euler_characteristic(sf: StandardFormData) -> int:
    """chi of the reduced curve, by the case split 2 if a1 = a2 = 0 else 3, taken verbatim."""
    if sf.u == 0:
        raise HyperplaneArrangement("u = 0: the curve is a line arrangement")
    return 2 if sf.a1 == 0 and sf.a2 == 0 else 3


def fixed_point_euler_characteristic(sf: StandardFormData) -> int:
    """Independent count: chi = number of C*-fixed points [1:0:0], [0:1:0], [0:0:1] on the curve."""
    if sf.u == 0:
        raise HyperplaneArrangement("u = 0: the curve is a line arrangement")
    # the branches pass through [1:0:0] and [0:0:1]; [0:1:0] lies only on x = 0 or z = 0
    return 2 + (1 if max(sf.a1, sf.a3) >= 1 else 0)


def euler_characteristic_flag(sf: StandardFormData) -> bool:
    """True when the verbatim case split and the fixed-point count disagree."""
    return euler_characteristic(sf) != fixed_point_euler_characteristic(sf)


@dataclass(frozen=True)
class Classification:
    tag: str
    sf: StandardFormData | None = None
    nontraceless: bool | None = None
    witness_agrees: bool | None = None


def classify(f: MultiPoly) -> Classification:
    if f.homogeneity() is None:
        raise NotHomogeneous("input polynomial is not homogeneous")
    if len(f.terms) == 1:
        return Classification("NormalCrossingMonomialLike")
    try:
        sf = extract_standard_form(f)
    except NotStandardForm:
        sf = None
    if sf is not None and sf.u == 0:
        return Classification("DecomposableArrangement", sf)
    if sf is not None:
        flag = nontraceless_condition(sf)
        agrees = None
        if not logder.is_cone(f):
            agrees = (logder.find_semisimple_nontraceless(f) is not None) == flag
        return Classification("StandardForm", sf, flag, agrees)
    if logder.is_cone(f):
        return Classification("Cone")
    return Classification("NoDiagonalSymmetry")
