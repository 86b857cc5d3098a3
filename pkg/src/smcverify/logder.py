"""Degree-zero logarithmic derivations of a homogeneous polynomial.

A matrix Q encodes the linear vector field sum_{r,c} Q[r][c] x_r d/dx_c.  It sends
the linear form sum_c v_c x_c to the form with coefficient vector Q v, so the
induced map on linear forms has matrix Q (trace and semi-simplicity read off Q).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .arith import MultiPoly, RatMatrix, UniPoly, jordan_chevalley, minimal_polynomial, nullspace, rref
from .arith.unipoly import poly_gcd, rational_roots
from .errors import ConeInput, InternalInconsistency, NonRationalEigenvalues, NotHomogeneous, NotInSpace, NotSemisimple


@dataclass(frozen=True)
class DerivationSpace:
    n: int
    basis: tuple[RatMatrix, ...]
    kind: str  # "annihilating" | "logarithmic"

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class WeightVector:
    w: tuple[Fraction, ...]
    w_degree: Fraction


@dataclass(frozen=True)
class BetaPolynomial:
    poly: UniPoly
    factor_ps: tuple[int, ...]
    n: int
    d: int
    statement: str = field(default="b_D(s) | b_f(s) | b_D(s)*beta(s)")


def _require_homogeneous(f: MultiPoly) -> int:
    d = f.homogeneity()
    if d is None:
        raise NotHomogeneous("input polynomial is not homogeneous")
    return d


def apply_derivation(q: RatMatrix, f: MultiPoly) -> MultiPoly:
    """delta . f for delta = sum q_rc x_r d/dx_c."""
    out = MultiPoly(f.nvars)
    for c in range(f.nvars):
        dc = f.derivative(c)
        if dc.is_zero():
            continue
        for r in range(f.nvars):
            if q[r, c]:
                out = out + dc.times_var(r) * q[r, c]
    return out


def annihilates(q: RatMatrix, f: MultiPoly) -> bool:
    return apply_derivation(q, f).is_zero()


def _matrices_from_vectors(vectors: Sequence[Sequence[Fraction]], n: int) -> tuple[RatMatrix, ...]:
    red, _ = rref(vectors) if vectors else ([], [])
    return tuple(RatMatrix([row[r * n:(r + 1) * n] for r in range(n)]) for row in red)


def degree0_annihilating(f: MultiPoly) -> DerivationSpace:
    _require_homogeneous(f)
    n = f.nvars
    columns: list[dict] = []
    monos: dict[tuple, int] = {}
    for r in range(n):
        for c in range(n):
            col = f.derivative(c).times_var(r).terms
            for e in col:
                monos.setdefault(e, len(monos))
            columns.append(col)
    rows = [[Fraction(0)] * (n * n) for _ in monos]
    for k, col in enumerate(columns):
        for e, v in col.items():
            rows[monos[e]][k] = v
    kern = nullspace(rows, n * n) if rows else [[Fraction(int(i == j)) for i in range(n * n)] for j in range(n * n)]
    basis = _matrices_from_vectors(kern, n)
    for q in basis:
        if not annihilates(q, f):
            raise InternalInconsistency("nullspace vector fails to annihilate f")
    return DerivationSpace(n, basis, "annihilating")


def degree0_logarithmic(f: MultiPoly) -> DerivationSpace:
    d = _require_homogeneous(f)
    ann = degree0_annihilating(f)
    n = f.nvars
    vectors = [q.flat() for q in ann.basis] + [RatMatrix.identity(n).flat()]
    basis = _matrices_from_vectors(vectors, n)
    e0, c0 = next(iter(f.terms.items()))
    for q in basis:
        image = apply_derivation(q, f)
        if image != f * (image.terms.get(e0, Fraction(0)) / c0):
            raise InternalInconsistency("logarithmic basis element is not an eigenvector of f")
    if d > 0 and len(basis) != ann.dimension + 1:
        raise InternalInconsistency("Euler field lies in the annihilating space")
    return DerivationSpace(n, basis, "logarithmic")


def symmetry_dimension(f: MultiPoly) -> int:
    return degree0_annihilating(f).dimension


def is_cone(f: MultiPoly) -> bool:
    """True iff some nonzero constant field sum c_i d/dx_i kills f."""
    _require_homogeneous(f)
    n = f.nvars
    partials = [f.derivative(i).terms for i in range(n)]
    monos = sorted({e for p in partials for e in p})
    rows = [[p.get(e, Fraction(0)) for p in partials] for e in monos]
    if not rows:
        return True
    return bool(nullspace(rows, n))


def find_semisimple_nontraceless(f: MultiPoly, space: DerivationSpace | None = None) -> RatMatrix | None:
    """A semi-simple annihilating derivation of nonzero trace, or None if none exists."""
    _require_homogeneous(f)
    if is_cone(f):
        raise ConeInput("the divisor is a cone: a constant vector field annihilates f")
    space = space or degree0_annihilating(f)
    tau = next((q for q in space.basis if q.trace() != 0), None)
    if tau is None:
        return None
    s, nil = jordan_chevalley(tau)
    if not (annihilates(s, f) and annihilates(nil, f)):
        raise InternalInconsistency("Jordan-Chevalley parts left the annihilating space")
    return s


def find_diagonal(f: MultiPoly) -> list[WeightVector]:
    """Non-Euler diagonal derivations, normalized to weight-degree 0 (the Euler-free coset rep)."""
    _require_homogeneous(f)
    n = f.nvars
    rows = [[Fraction(x) for x in e] for e in sorted(f.terms)]
    kern = nullspace(rows, n)
    red, _ = rref(kern) if kern else ([], [])
    return [WeightVector(tuple(v), Fraction(0)) for v in red]


def monomials_of_degree(n: int, p: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(n), p):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, key=lambda e: tuple(-x for x in e))


def _eigen_linear_forms(q: RatMatrix) -> list[tuple[Fraction, list[Fraction]]]:
    """Eigen-decomposition over Q of the action on linear forms: pairs (lambda, v) with Q v = lambda v."""
    mp = minimal_polynomial(q)
    if poly_gcd(mp, mp.derivative()).degree > 0:
        raise NotSemisimple("generator is not semi-simple")
    roots = rational_roots(mp)
    if len(roots) != mp.degree:
        raise NonRationalEigenvalues(f"minimal polynomial {mp.to_str()} does not split over Q")
    n = q.n
    pairs = []
    for lam in roots:
        shifted = q - RatMatrix.identity(n).scale(lam)
        for v in shifted.kernel():
            pairs.append((lam, v))
    if len(pairs) != n:
        raise InternalInconsistency("eigenvectors do not span")
    return pairs


def _check_gens(f: MultiPoly, gens: Sequence[RatMatrix]) -> None:
    for g in gens:
        if not annihilates(g, f):
            raise NotInSpace("generator does not annihilate f")


def _xi_diagonal_full(gens: Sequence[RatMatrix], n: int, p: int) -> bool:
    """Xi_p = R_p for diagonal generators: every monomial is good for some generator."""
    data = [(g.diagonal(), -g.trace()) for g in gens]
    for e in monomials_of_degree(n, p):
        if not any(sum(w * k for w, k in zip(ws, e)) != bad for ws, bad in data):
            return False
    return True


def xi_space(f: MultiPoly, p: int, gens: Sequence[RatMatrix]) -> list[list[Fraction]]:
    """Basis (rref) of Xi_p inside R_p, as coefficient vectors over monomials_of_degree(n, p)."""
    _check_gens(f, gens)
    n = f.nvars
    monos = monomials_of_degree(n, p)
    index = {e: k for k, e in enumerate(monos)}
    vectors: list[list[Fraction]] = []
    for g in gens:
        pairs = _eigen_linear_forms(g)
        bad = -g.trace()
        forms = [MultiPoly.linear_form(v) for _, v in pairs]
        for e in monomials_of_degree(n, p):
            lam = sum((pairs[i][0] * k for i, k in enumerate(e)), Fraction(0))
            if lam == bad:
                continue
            prod = MultiPoly.const(n, 1)
            for form, k in zip(forms, e):
                if k:
                    prod = prod * form ** k
            vec = [Fraction(0)] * len(monos)
            for mono, c in prod.terms.items():
                vec[index[mono]] = c
            vectors.append(vec)
    red, _ = rref(vectors) if vectors else ([], [])
    return red


def beta_polynomial(f: MultiPoly, gens: Sequence[RatMatrix]) -> BetaPolynomial:
    """prod over 0 <= p < (d-1)n with Xi_p != R_p of (s + (p+n)/d)."""
    d = _require_homogeneous(f)
    _check_gens(f, gens)
    n = f.nvars
    diagonal = all(g.is_diagonal() for g in gens)
    for g in gens:
        _eigen_linear_forms(g)
    ps = []
    for p in range((d - 1) * n):
        if diagonal:
            full = bool(gens) and _xi_diagonal_full(gens, n, p)
        else:
            full = len(xi_space(f, p, gens)) == len(monomials_of_degree(n, p))
        if not full:
            ps.append(p)
    poly = UniPoly.from_roots(-Fraction(p + n, d) for p in ps)
    return BetaPolynomial(poly, tuple(ps), n, d)
