"""Bernstein-Sato root sets for the tractable cases, and the -3/d membership verdict.

Quasi-homogeneous isolated curve germs use the classical description of the roots
through the weighted degrees of a monomial basis of the Milnor algebra.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

from .arith import MultiPoly, rref
from .errors import BadParameters, InternalInconsistency, NonIsolated, NotWeightedHomogeneous, Unsupported
from .logder import WeightVector
from .standardform import StandardFormData, nontraceless_condition, stand_in_c

TAGS = ("monomial", "milnor", "thom_sebastiani", "generic_component")


@dataclass(frozen=True)
class RootSet:
    roots: frozenset
    provenance: dict  # root -> tuple of tags
    multiplicities: Optional[dict] = None
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        for r in self.roots:
            if r >= 0:
                raise InternalInconsistency(f"non-negative root {r}")
        if self.roots and Fraction(-1) not in self.roots:
            raise InternalInconsistency("-1 missing from a nonempty root set")

    @classmethod
    def build(cls, tagged: Iterable[tuple[Fraction, str]], multiplicities: Optional[dict] = None,
              notes: Sequence[str] = ()) -> "RootSet":
        prov: dict = {}
        for r, tag in tagged:
            prov.setdefault(Fraction(r), set()).add(tag)
        prov = {r: tuple(sorted(tags)) for r, tags in prov.items()}
        return cls(frozenset(prov), prov, multiplicities, tuple(notes))

    def __contains__(self, r: object) -> bool:
        return r in self.roots

    def sorted(self) -> list[Fraction]:
        return sorted(self.roots)

    def union(self, other: "RootSet") -> "RootSet":
        tagged = [(r, t) for rs in (self, other) for r, tags in rs.provenance.items() for t in tags]
        return RootSet.build(tagged, notes=self.notes + other.notes)


def monomial_bs(exponents: Sequence[int]) -> RootSet:
    """b(s) = prod_t prod_{l=1..a_t} (s + l/a_t)."""
    if not exponents or any(a < 1 for a in exponents):
        raise BadParameters("exponents must be a nonempty list of positive integers")
    mult: Counter = Counter()
    for a in exponents:
        for ell in range(1, a + 1):
            mult[Fraction(-ell, a)] += 1
    return RootSet.build(((r, "monomial") for r in mult), dict(mult))


# ---------------------------------------------------------------- Milnor algebra


def _integer_weights(w: Sequence[Fraction]) -> tuple[int, int]:
    w = [Fraction(x) for x in w]
    if len(w) != 2 or any(x <= 0 for x in w):
        raise NotWeightedHomogeneous("weights must be two positive rationals")
    scale = lcm(*(x.denominator for x in w))
    w1, w2 = (int(x * scale) for x in w)
    return w1, w2


@dataclass(frozen=True)
class MilnorSpectrum:
    weights: tuple[int, int]
    wdeg: int
    dims: dict  # weighted degree -> dimension of the Milnor algebra in that degree
    milnor_number: int

    def roots(self) -> list[Fraction]:
        w1, w2 = self.weights
        return [Fraction(-(delta + w1 + w2), self.wdeg) for delta in sorted(self.dims)]


def milnor_spectrum(g: MultiPoly, w: WeightVector | Sequence[Fraction]) -> MilnorSpectrum:
    """Graded dimensions of Q[x,y]/(g_x, g_y) by exact linear algebra, degree by degree."""
    weights = w.w if isinstance(w, WeightVector) else w
    w1, w2 = _integer_weights(weights)
    if g.nvars != 2:
        raise NotWeightedHomogeneous("expected a polynomial in two variables")
    degs = {w1 * e[0] + w2 * e[1] for e in g.terms}
    if len(degs) != 1:
        raise NotWeightedHomogeneous("polynomial is not weighted homogeneous for the given weights")
    big_w = degs.pop()
    if big_w == 0:
        raise NotWeightedHomogeneous("constant polynomial")
    gx, gy = g.derivative(0), g.derivative(1)
    socle = 2 * big_w - 2 * (w1 + w2)
    top = socle + max(w1, w2)

    by_degree: dict[int, list[tuple[int, int]]] = {}
    for i in range(top // w1 + 1):
        for j in range((top - i * w1) // w2 + 1):
            by_degree.setdefault(i * w1 + j * w2, []).append((i, j))

    dims: dict[int, int] = {}
    for delta in sorted(by_degree):
        monos = by_degree[delta]
        index = {e: k for k, e in enumerate(monos)}
        rows = []
        for gen, shift in ((gx, big_w - w1), (gy, big_w - w2)):
            if gen.is_zero():
                continue
            for e in by_degree.get(delta - shift, []):
                row = [Fraction(0)] * len(monos)
                for (a, b), c in gen.terms.items():
                    row[index[(a + e[0], b + e[1])]] = c
                rows.append(row)
        rank = len(rref(rows)[1]) if rows else 0
        dim = len(monos) - rank
        if dim:
            if delta > socle:
                raise NonIsolated("Milnor algebra does not vanish above the socle degree")
            dims[delta] = dim
    mu = sum(dims.values())
    expected = Fraction(big_w - w1, w1) * Fraction(big_w - w2, w2)
    if mu != expected:
        raise NonIsolated(f"Milnor number {mu} differs from the weighted formula {expected}")
    return MilnorSpectrum((w1, w2), big_w, dims, mu)


def milnor_qh_curve_bs(g: MultiPoly, w: WeightVector | Sequence[Fraction]) -> RootSet:
    spec = milnor_spectrum(g, w)
    tagged = [(r, "milnor") for r in spec.roots()] + [(Fraction(-1), "milnor")]
    return RootSet.build(tagged)


def brieskorn_pham(a: int, b: int) -> MultiPoly:
    return MultiPoly(2, {(a, 0): 1, (0, b): 1})


# ---------------------------------------------------------------- Thom-Sebastiani

TS_T2_NOTE = (
    "t = 2: the displayed Thom-Sebastiani set is {-1} and omits -3/2, while the membership "
    "rule [-3/t root] <=> [t in {2,3}] includes it; both are reported, not reconciled"
)


def thom_sebastiani_roots(t: int, u: int) -> RootSet:
    """The displayed root set for y^t + x^u z^(t-u)."""
    from math import gcd

    if not (1 <= u < t) or gcd(t, u) != 1:
        raise BadParameters(f"need 1 <= u < t with gcd(t, u) = 1, got ({t}, {u})")
    tagged = [(Fraction(-1), "thom_sebastiani")]
    for e in range(1, t):
        for l1 in range(1, u):
            tagged.append((-(Fraction(e, t) + Fraction(l1, u)), "thom_sebastiani"))
        for l2 in range(1, t - u):
            tagged.append((-(Fraction(e, t) + Fraction(l2, t - u)), "thom_sebastiani"))
    notes = (TS_T2_NOTE,) if t == 2 else ()
    return RootSet.build(tagged, notes=notes)


def membership_rule(t: int) -> bool:
    """-3/t is a root of b_f for f = y^t + x^u z^(t-u) exactly when t in {2, 3}."""
    return t in (2, 3)


# ---------------------------------------------------------------- b_D for reduced standard forms


@dataclass(frozen=True)
class LocalGerm:
    point: str
    poly: MultiPoly
    weights: tuple[int, int]


def local_germs(sf: StandardFormData, c: Sequence[Fraction] | None = None) -> list[LocalGerm]:
    """Local equations at the C*-fixed points that can be singular."""
    cs = tuple(c) if c is not None else stand_in_c(sf)
    t, u = sf.t, sf.u
    out = []
    # [0:0:1]: coordinates (x, y)
    g = MultiPoly.monomial((sf.a1, sf.a2))
    for cq in cs:
        g = g * MultiPoly(2, {(0, t): 1, (u, 0): cq})
    out.append(LocalGerm("[0:0:1]", g, (t, u)))
    # [1:0:0]: coordinates (z, y)
    g = MultiPoly.monomial((sf.a3, sf.a2))
    for cq in cs:
        g = g * MultiPoly(2, {(0, t): 1, (t - u, 0): cq})
    out.append(LocalGerm("[1:0:0]", g, (t, t - u)))
    if sf.a1 and sf.a3:
        # [0:1:0]: only the lines x = 0 and z = 0 pass
        out.append(LocalGerm("[0:1:0]", MultiPoly(2, {(1, 1): 1}), (1, 1)))
    return out


def bD_roots(sf: StandardFormData) -> RootSet:
    """Union of local b-function roots over the singular points of the reduced curve.

    Irrational c_q are replaced by the rational stand-ins c_q = q + 1: the Milnor
    algebra degree sequence of these germs depends only on (t, u, m, a).
    """
    if sf.u == 0:
        raise Unsupported("u = 0: line arrangement")
    if not sf.is_reduced():
        raise Unsupported("b_D is only computed for reduced standard forms")
    notes = () if sf.c is not None else ("c_q replaced by the stand-ins q + 1",)
    total = RootSet.build([(Fraction(-1), "milnor")], notes=notes)
    for germ in local_germs(sf):
        total = total.union(milnor_qh_curve_bs(germ.poly, [Fraction(x) for x in germ.weights]))
    return total


def generic_component_roots(sf: StandardFormData) -> RootSet:
    """Roots -l/e of b_f seen at generic points of a component of multiplicity e."""
    tagged = [(Fraction(-1), "generic_component")]
    for e in [x for x in sf.a if x] + list(sf.b):
        tagged += [(Fraction(-ell, e), "generic_component") for ell in range(1, e + 1)]
    return RootSet.build(tagged)


# ---------------------------------------------------------------- verdict


@dataclass(frozen=True)
class RootVerdict:
    d: int
    c_holds: bool
    b_holds: Optional[bool]  # None: unknown
    a_verdict: str  # "not a root" | "root" | "unknown"
    c_source: str
    b_source: str
    notes: tuple[str, ...] = field(default=())


def minus_nd_root_verdict(sf: StandardFormData, c_holds: Optional[bool] = None,
                          b_roots: Optional[RootSet] = None) -> RootVerdict:
    """(a) -3/d not a root of b_f  <=>  (b) -3/d not a root of b_D  and  (c) non-traceless.

    c_holds defaults to the non-traceless condition; pass the derivation search
    result to use that route instead. b_roots overrides the b_D computation.
    """
    if sf.u == 0:
        raise Unsupported("u = 0: line arrangement")
    target = Fraction(-3, sf.d)
    c_source = "nontraceless_condition" if c_holds is None else "derivation_search"
    if c_holds is None:
        c_holds = nontraceless_condition(sf)
    notes: list[str] = []
    if b_roots is None:
        try:
            b_roots = bD_roots(sf)
            b_source = "bD_roots"
        except Unsupported as exc:
            b_roots, b_source = None, f"unknown ({exc})"
    else:
        b_source = "supplied"
    b_holds = None if b_roots is None else target not in b_roots
    if b_roots is not None:
        notes += list(b_roots.notes)
    if not c_holds or b_holds is False:
        verdict = "root"
    elif b_holds:
        verdict = "not a root"
    else:
        verdict = "unknown"
    return RootVerdict(sf.d, c_holds, b_holds, verdict, c_source, b_source, tuple(notes))
