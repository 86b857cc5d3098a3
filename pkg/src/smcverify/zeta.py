"""Topological and motivic zeta functions of a decorated resolution graph, and the
residue of the motivic zeta function at the candidate pole -3/d.

All curves in the graphs are rational and meet in single points, so stratum
classes are polynomials in L read off the graph: [E_j°] = L + 1 - (number of
components met), [E_i ∩ E_j] = 1, and the open complement is whatever remains
of [F0] = L^2 + L + 1 + n_exc * L.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from .arith import MultiPoly, RatFun, UniPoly, ratfun_pole_data
from .arith.bivariate import BivarRatFun
from .errors import InvalidGraph, NotAllowed, UnsupportedCase
from .resolution import ResolutionGraph, alpha_terms, build_resolution_graph
from .standardform import StandardFormData

LinFactor = tuple[int, int]  # (nu, N) standing for nu + N s


# ---------------------------------------------------------------- strata


@dataclass(frozen=True)
class Strata:
    """Open strata of a configuration: components, pairwise intersections, complement."""

    components: tuple[str, ...]
    component_class: dict  # id -> UniPoly in L
    edges: tuple[tuple[str, str], ...]
    complement_class: UniPoly


def f0_class(g: ResolutionGraph) -> UniPoly:
    return UniPoly((1, 1 + g.n_exceptional, 1))


def strata(g: ResolutionGraph, include_nondivisor: bool = False) -> Strata:
    """Strata of the divisor components (N >= 1), or of every node when include_nondivisor."""
    keep = [n.id for n in g.nodes if include_nondivisor or n.N >= 1]
    keep_set = set(keep)
    edges = tuple(e for e in g.edges if e[0] in keep_set and e[1] in keep_set)
    deg = Counter()
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    cls = {k: UniPoly((1 - deg[k], 1)) for k in keep}
    rest = f0_class(g)
    for k in keep:
        rest = rest - cls[k]
    rest = rest - len(edges)
    return Strata(tuple(keep), cls, edges, rest)


def _check_graph(g: ResolutionGraph) -> None:
    for n in g.nodes:
        if n.nu < 1 or n.N < 0:
            raise InvalidGraph(f"node {n.id} has invalid numerical data")


# ---------------------------------------------------------------- topological


def _int_mul_linear(p: list[int], a: int, b: int) -> list[int]:
    """p * (a s + b), coefficients low degree first."""
    out = [0] * (len(p) + 1)
    for k, c in enumerate(p):
        out[k] += b * c
        out[k + 1] += a * c
    return out


def _int_div_linear(p: list[int], a: int, b: int) -> list[int] | None:
    """p / (a s + b) when the division is exact over Z (equivalently over Q, a s + b primitive)."""
    n = len(p) - 1
    if n < 1:
        return None
    q = [0] * n
    top, r = divmod(p[n], a)
    if r:
        return None
    q[n - 1] = top
    for k in range(n - 1, 0, -1):
        c, r = divmod(p[k] - b * q[k], a)
        if r:
            return None
        q[k - 1] = c
    if p[0] - b * q[0]:
        return None
    return q


def _primitive(factors: Sequence[LinFactor]) -> tuple[Fraction, Counter]:
    """Split prod (nu + N s) into a scalar and primitive integer factors (N', nu') with N' > 0."""
    scale, keys = Fraction(1), Counter()
    for nu, N in factors:
        if N == 0:
            scale *= nu
            continue
        g = gcd(nu, N) * (1 if N > 0 else -1)
        scale *= g
        keys[(N // g, nu // g)] += 1
    return scale, keys


def sum_linear_fractions(terms: Sequence[tuple[Fraction, Sequence[LinFactor]]], extra: Sequence[LinFactor] = ()) -> RatFun:
    """sum_i c_i / prod (nu + N s), all multiplied by 1 / prod(extra); exact and reduced.

    Works over the common denominator prod (N' s + nu')^m with integer
    coefficients; the only cancellation step is exact division by those factors.
    """
    parsed = [(Fraction(c), *_primitive(fs)) for c, fs in terms if c]
    common: Counter = Counter()
    for _, _, keys in parsed:
        for k, m in keys.items():
            common[k] = max(common[k], m)
    full = [1]
    for (a, b) in sorted(common):
        for _ in range(common[(a, b)]):
            full = _int_mul_linear(full, a, b)
    weights = [c / scale for c, scale, _ in parsed]
    big = lcm(*(w.denominator for w in weights)) if weights else 1
    num = [0] * len(full)
    for w, (_, _, keys) in zip(weights, parsed):
        part = full
        for (a, b), m in keys.items():
            for _ in range(m):
                part = _int_div_linear(part, a, b)
        k = int(w * big)
        for i, c in enumerate(part):
            num[i] += k * c
    while num and num[-1] == 0:
        num.pop()
    if not num:
        return RatFun(UniPoly())
    escale, ekeys = _primitive(extra)
    den_keys = common + ekeys
    for key in sorted(den_keys):
        while den_keys[key]:
            q = _int_div_linear(num, *key)
            if q is None:
                break
            num = q
            den_keys[key] -= 1
    den = [1]
    for (a, b) in sorted(den_keys):
        for _ in range(den_keys[(a, b)]):
            den = _int_mul_linear(den, a, b)
    scale = escale * big
    return RatFun(UniPoly(Fraction(c) / scale for c in num), UniPoly(den), reduced=True)


def topological_bracket_terms(g: ResolutionGraph, include_nondivisor: bool = False) -> list[tuple[Fraction, list[LinFactor]]]:
    st = strata(g, include_nondivisor)
    data = {n.id: (n.nu, n.N) for n in g.nodes}
    terms: list[tuple[Fraction, list[LinFactor]]] = [(st.complement_class(1), [])]
    terms += [(st.component_class[k](1), [data[k]]) for k in st.components]
    terms += [(Fraction(1), [data[a], data[b]]) for a, b in st.edges]
    return terms


def topological_zeta(g: ResolutionGraph, include_nondivisor: bool = False) -> RatFun:
    """Z^top(s) = (chi(E_∅°) + sum chi(E_j°)/(nu_j + N_j s) + sum_edges 1/(..)(..)) / (3 + d s).

    For a homogeneous polynomial the global and the local-at-origin topological
    zeta functions coincide, so there is a single function.
    """
    _check_graph(g)
    return sum_linear_fractions(topological_bracket_terms(g, include_nondivisor), extra=[(3, g.d)])


def topological_zeta_compact(sf: StandardFormData) -> RatFun:
    """Closed formula grouping each Hirzebruch-Jung chain by its determinant."""
    if sf.u < 1:
        raise UnsupportedCase("u = 0")
    if sf.a1 * sf.a2 * sf.a3 == 0:
        raise UnsupportedCase("the compact formula needs a1*a2*a3 != 0")
    t, u, m = sf.t, sf.u, sf.m
    e = (t + u, t * u * sf.sum_b + t * sf.a1 + u * sf.a2)
    ep = (2 * t - u, t * (t - u) * sf.sum_b + t * sf.a3 + (t - u) * sf.a2)
    lx, ly, lz = (1, sf.a1), (1, sf.a2), (1, sf.a3)
    terms: list[tuple[Fraction, list[LinFactor]]] = []
    for big, side_det, side_line in ((e, u, lx), (ep, t - u, lz)):
        terms.append((Fraction(-m), [big]))
        terms.append((Fraction(t), [big, ly]))
        terms.append((Fraction(side_det), [big, side_line]))
        terms += [(Fraction(1), [big, (1, bq)]) for bq in sf.b]
    terms.append((Fraction(1), [lx, lz]))
    return sum_linear_fractions(terms, extra=[(3, sf.d)])


def compact_residue_terms(sf: StandardFormData) -> Fraction:
    """(alpha_z u - (t-u) alpha_x + alpha) / (alpha alpha_x alpha_z) evaluated with alpha = alpha_E."""
    d = sf.d
    a = Fraction(sf.t + sf.u) - Fraction(3 * (sf.t * sf.u * sf.sum_b + sf.t * sf.a1 + sf.u * sf.a2), d)
    ax = 1 - Fraction(3 * sf.a1, d)
    az = 1 - Fraction(3 * sf.a3, d)
    return (az * sf.u - (sf.t - sf.u) * ax + a) / (a * ax * az)


# ---------------------------------------------------------------- motivic


@dataclass(frozen=True)
class MotivicTerm:
    """cls(L) * prod over factors (nu, N) of (L - 1) / (L^nu T^-N - 1), where T = L^-s."""

    cls: UniPoly
    factors: tuple[LinFactor, ...]


@dataclass(frozen=True)
class MotivicZeta:
    terms: tuple[MotivicTerm, ...]
    d: int
    local: bool

    def euler_specialization(self) -> RatFun:
        """Term-wise L -> 1: [X] -> chi(X), (L-1)/(L^(nu+Ns)-1) -> 1/(nu+Ns)."""
        return sum_linear_fractions([(t.cls(1), list(t.factors)) for t in self.terms], extra=[(3, self.d)])

    def to_bivariate(self) -> BivarRatFun:
        """Reduced element of Q(L, T)."""
        L_minus_1 = MultiPoly(2, {(1, 0): 1, (0, 0): -1})

        def den_factor(nu: int, N: int) -> MultiPoly:
            return MultiPoly(2, {(nu, 0): 1, (0, N): -1})

        common: Counter = Counter()
        for t in self.terms:
            for f, k in Counter(t.factors).items():
                common[f] = max(common[f], k)
        full_den = MultiPoly.const(2, 1)
        for f in sorted(common):
            full_den = full_den * den_factor(*f) ** common[f]
        num = MultiPoly(2)
        for t in self.terms:
            piece = MultiPoly(2, {(i, 0): c for i, c in enumerate(t.cls.coeffs)})
            own = Counter(t.factors)
            for (nu, N), k in own.items():
                piece = piece * (L_minus_1 * MultiPoly(2, {(0, N): 1})) ** k
            for f in sorted(common):
                piece = piece * den_factor(*f) ** (common[f] - own.get(f, 0))
            num = num + piece
        # prefactor L^-3 (L-1) L^(3+ds) / (L^(3+ds) - 1) = (L-1) / (L^3 - T^d) globally,
        # and (L-1) T^d / (L^3 (L^3 - T^d)) without the L^(3+ds) factor
        pre_den = MultiPoly(2, {(3, 0): 1, (0, self.d): -1})
        num = num * L_minus_1
        if self.local:
            num = num * MultiPoly(2, {(0, self.d): 1})
            pre_den = pre_den * MultiPoly(2, {(3, 0): 1})
        return BivarRatFun(num, full_den * pre_den)


def motivic_zeta_expression(g: ResolutionGraph, local: bool = False, include_nondivisor: bool = False) -> MotivicZeta:
    _check_graph(g)
    st = strata(g, include_nondivisor)
    data = {n.id: (n.nu, n.N) for n in g.nodes}
    terms = [MotivicTerm(st.complement_class, ())]
    terms += [MotivicTerm(st.component_class[k], (data[k],)) for k in st.components]
    terms += [MotivicTerm(UniPoly.const(1), (data[a], data[b])) for a, b in st.edges]
    return MotivicZeta(tuple(terms), g.d, local)


# ---------------------------------------------------------------- residue at -3/d


@dataclass(frozen=True)
class DecoratedConfig:
    """Decorated curve configuration (C, A): beta per node, kappa at the beta = 0 nodes."""

    nodes: tuple[str, ...]
    beta: dict
    kappa: dict
    edges: tuple[tuple[str, str], ...]
    component_class: dict
    complement_class: UniPoly
    strict: frozenset = frozenset()  # strict transforms; the kappa term needs exceptional curves

    def neighbors(self, k: str) -> list[str]:
        return [b for a, b in self.edges if a == k] + [a for a, b in self.edges if b == k]

    def violations(self) -> list[str]:
        out = []
        for k in self.nodes:
            if self.beta[k] != 0:
                continue
            nb = self.neighbors(k)
            if k in self.strict:
                out.append(f"{k}: beta = 0 on a strict transform (kappa*N = sum N fails there)")
            elif len(nb) != 2:
                out.append(f"{k}: beta = 0 but valence {len(nb)}")
            elif any(self.beta[j] == 0 for j in nb):
                out.append(f"{k}: beta = 0 next to another beta = 0 node")
            elif self.beta[nb[0]] + self.beta[nb[1]] != 0:
                out.append(f"{k}: neighbour betas do not sum to 0")
            elif self.kappa.get(k) is None:
                out.append(f"{k}: self-intersection unknown")
        return out

    def is_allowed(self) -> bool:
        return not self.violations()


def config_from_graph(g: ResolutionGraph, include_nondivisor: bool = True) -> DecoratedConfig:
    """Lines with a_i = 0 stay in as non-divisor curves with beta = 1 unless include_nondivisor is False."""
    st = strata(g, include_nondivisor)
    alpha = alpha_terms(g)
    return DecoratedConfig(
        nodes=st.components,
        beta={k: alpha[k] for k in st.components},
        kappa={k: g.node(k).kappa for k in st.components},
        edges=st.edges,
        component_class=dict(st.component_class),
        complement_class=st.complement_class,
        strict=frozenset(n.id for n in g.nodes if n.kind != "exceptional"),
    )


@dataclass(frozen=True)
class ResidueTerm:
    """coeff * cls(L) * prod_k (L - 1) / (L^(k/d) - 1); L^(1/d) is the variable M."""

    cls: UniPoly
    ks: tuple[int, ...]


def _ipoly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _ieval(p: dict, q: int) -> int:
    return sum(c * q ** e for e, c in p.items())


def _divisors(k: int) -> list[int]:
    return [n for n in range(1, k + 1) if k % n == 0]


_CYCLOTOMIC: dict[int, list[int]] = {}


def cyclotomic(n: int) -> list[int]:
    """Dense integer coefficients (low first) of the n-th cyclotomic polynomial."""
    if n not in _CYCLOTOMIC:
        poly = [-1] + [0] * (n - 1) + [1]
        for e in range(1, n):
            if n % e == 0:
                poly = _idiv_exact(poly, cyclotomic(e))
        _CYCLOTOMIC[n] = poly
    return _CYCLOTOMIC[n]


def _idivmod(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Division by a monic integer polynomial."""
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [0], rem
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db]
        quot[k] = c
        if c:
            for j, bj in enumerate(b):
                rem[k + j] -= c * bj
    return quot, rem[:db]


def _idiv_exact(a: list[int], b: list[int]) -> list[int]:
    q, r = _idivmod(a, b)
    if any(r):
        raise ArithmeticError("inexact cyclotomic division")
    return q


@dataclass(frozen=True)
class ResidueExpr:
    """Sum of ResidueTerms as an element of Q(M), M = L^(1/d).

    `is_zero` is decided exactly: the cleared numerator N(M) has integer
    coefficients bounded by H, and it is evaluated at M = 2^B with 2^B > 2H,
    where a nonzero N cannot vanish and from which its coefficients can be read.
    """

    terms: tuple[ResidueTerm, ...]
    d: int

    def __sub__(self, other: "ResidueExpr") -> "ResidueExpr":
        if other.d != self.d:
            raise ValueError("residues with different d")
        neg = tuple(ResidueTerm(-t.cls, t.ks) for t in other.terms)
        return ResidueExpr(self.terms + neg, self.d)

    def euler_specialization(self) -> Fraction:
        total = Fraction(0)
        for t in self.terms:
            v = t.cls(1)
            for k in t.ks:
                v *= Fraction(self.d, k)
            total += v
        return total

    @cached_property
    def _cleared(self) -> tuple[list[tuple[dict, tuple]], tuple, int]:
        """Numerators (sparse int polys in M) grouped by denominator, a shared denominator,
        and a bound on the coefficients of the cleared numerator.

        Denominators are tuples of k meaning prod (M^k - 1). The shared one is built
        greedily: each factor of a part is matched to an unused shared M^s - 1 with
        k | s, so it stays a multiple of every part while keeping the degree low.
        """
        d = self.d
        lm1 = {d: 1, 0: -1}
        grouped: dict[tuple, dict] = {}
        for t in self.terms:
            ints = [c for c in t.cls.coeffs]
            if any(c.denominator != 1 for c in ints):
                raise ValueError("stratum classes must have integer coefficients")
            num = {d * i: int(c) for i, c in enumerate(ints) if c}
            if not num:
                continue
            for k in t.ks:
                num = _ipoly_mul(num, lm1)
                if k < 0:
                    num = _ipoly_mul(num, {-k: -1})
            key = tuple(sorted((abs(k) for k in t.ks), reverse=True))
            acc = grouped.setdefault(key, {})
            for e, c in num.items():
                acc[e] = acc.get(e, 0) + c
        parts = [(num, key) for key, num in ((k, {e: c for e, c in n.items() if c}) for k, n in grouped.items()) if num]
        shared: list[int] = []
        matches = []
        for _, key in sorted(parts, key=lambda p: -max(p[1], default=0)):
            used: set[int] = set()
            pairs = []
            for k in key:
                slot = next((i for i, s_ in enumerate(shared) if i not in used and s_ % k == 0), None)
                if slot is None:
                    shared.append(k)
                    slot = len(shared) - 1
                used.add(slot)
                pairs.append((k, shared[slot]))
            matches.append((key, used, pairs))
        growth = {}
        for key, used, pairs in matches:
            g = 1 << (len(shared) - len(used))
            for k, s_ in pairs:
                g *= s_ // k
            growth[key] = max(growth.get(key, 0), g)
        bound = sum(sum(abs(c) for c in num.values()) * growth[key] for num, key in parts)
        return parts, tuple(shared), bound

    def _numerator_at(self, q: int) -> tuple[int, int]:
        parts, shared, _ = self._cleared
        pw: dict[int, int] = {}
        for k in set(shared).union(*(key for _, key in parts)):
            pw[k] = q ** k - 1
        dval = 1
        for k in shared:
            dval *= pw[k]
        total = 0
        for num, key in parts:
            own = 1
            for k in key:
                own *= pw[k]
            total += _ieval(num, q) * (dval // own)
        return total, dval

    def _base_bits(self) -> int:
        _, _, bound = self._cleared
        return max(bound.bit_length() + 2, 2)

    @cached_property
    def _zero(self) -> bool:
        return self._numerator_at(1 << self._base_bits())[0] == 0

    def is_zero(self) -> bool:
        return self._zero

    def numerator_coefficients(self) -> list[int]:
        """Dense coefficients of the cleared numerator, decoded from one evaluation."""
        bits = self._base_bits()
        value, _ = self._numerator_at(1 << bits)
        if value == 0:
            return []
        sign = -1 if value < 0 else 1
        value = abs(value)
        mask = (1 << bits) - 1
        half = 1 << (bits - 1)
        coeffs = []
        while value:
            digit = value & mask
            value >>= bits
            if digit >= half:
                digit -= 1 << bits
                value += 1
            coeffs.append(sign * digit)
        return coeffs

    def to_ratfun(self) -> RatFun:
        """Reduced rational function in M; cancellation is done per cyclotomic factor."""
        num = self.numerator_coefficients()
        if not num:
            return RatFun(UniPoly())
        _, shared, _ = self._cleared
        phis: Counter = Counter()
        for k in shared:
            for j in _divisors(k):
                phis[j] += 1
        for j in sorted(phis):
            while phis[j]:
                q, r = _idivmod(num, cyclotomic(j))
                if any(r):
                    break
                num = q
                phis[j] -= 1
        den = UniPoly.const(1)
        for j in sorted(phis):
            if phis[j]:
                den = den * UniPoly(cyclotomic(j)) ** phis[j]
        return RatFun(UniPoly(num), den, reduced=True)


def motivic_residue(cfg: DecoratedConfig, d: int) -> ResidueExpr:
    """sum over strata avoiding beta = 0 of [C_I°] prod (L-1)/(L^beta - 1)
    plus, for each beta = 0 node i, kappa_i (L-1)^2 / ((L^beta_i1 - 1)(L^beta_i2 - 1))."""
    bad = cfg.violations()
    if bad:
        raise NotAllowed("; ".join(bad))

    def k_of(node: str) -> int:
        kd = cfg.beta[node] * d
        if kd.denominator != 1:
            raise ValueError(f"d * beta is not integral at {node}")
        return int(kd)

    terms = [ResidueTerm(cfg.complement_class, ())]
    for k in cfg.nodes:
        if cfg.beta[k] != 0:
            terms.append(ResidueTerm(cfg.component_class[k], (k_of(k),)))
    for a, b in cfg.edges:
        if cfg.beta[a] != 0 and cfg.beta[b] != 0:
            terms.append(ResidueTerm(UniPoly.const(1), (k_of(a), k_of(b))))
    for k in cfg.nodes:
        if cfg.beta[k] == 0:
            n1, n2 = cfg.neighbors(k)
            terms.append(ResidueTerm(UniPoly.const(cfg.kappa[k]), (k_of(n1), k_of(n2))))
    return ResidueExpr(tuple(terms), d)


# ---------------------------------------------------------------- poles


@dataclass(frozen=True)
class PoleInfo:
    pole: Fraction
    candidate_order: int
    topological_order: int
    actual_order: Optional[int]
    basis: str  # "residue" | "topological-lower-bound" | "undetermined"


def _max_clique(ids: set, edges: Sequence[tuple[str, str]]) -> int:
    if not ids:
        return 0
    return 2 if any(a in ids and b in ids for a, b in edges) else 1


def candidate_and_actual_poles(g: ResolutionGraph, ztop: RatFun | None = None) -> list[PoleInfo]:
    ztop = ztop or topological_zeta(g)
    critical = Fraction(-3, g.d)
    div = [n for n in g.nodes if n.N >= 1]
    ratios = sorted({Fraction(-n.nu, n.N) for n in div} | {critical}, reverse=True)
    out = []
    for r in ratios:
        on = {n.id for n in div if Fraction(-n.nu, n.N) == r}
        cand = _max_clique(on, g.edges) + (1 if r == critical else 0)
        top = ratfun_pole_data(ztop, r)[0]
        if r != critical:
            out.append(PoleInfo(r, cand, top, top, "topological-lower-bound"))
            continue
        cfg = config_from_graph(g)
        if cfg.is_allowed():
            res = motivic_residue(cfg, g.d)
            out.append(PoleInfo(r, cand, top, 0 if res.is_zero() else 1, "residue"))
        else:
            out.append(PoleInfo(r, cand, top, None, "undetermined"))
    return out


def topological_zeta_from_sf(sf: StandardFormData) -> RatFun:
    return topological_zeta(build_resolution_graph(sf))
