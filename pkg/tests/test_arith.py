"""Exact arithmetic substrate: polynomials, rational functions, matrices."""

from collections import Counter
from fractions import Fraction
from itertools import product

from hypothesis import given, settings, strategies as st

from smcverify.arith import (
    MultiPoly,
    RatFun,
    RatMatrix,
    UniPoly,
    jordan_chevalley,
    minimal_polynomial,
    nullspace,
    poly_gcd,
    ratfun_pole_data,
    rational_roots,
    squarefree_decomposition,
)
from smcverify.arith.matrix import is_nilpotent, is_semisimple
from smcverify.arith.unipoly import root_multiplicity, splits_over_q

Y = UniPoly.x()
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def upoly(max_deg=4):
    return st.lists(small, min_size=1, max_size=max_deg + 1).map(UniPoly)


def reassemble(parts):
    out = UniPoly.const(1)
    for f, k in parts:
        out = out * f**k
    return out


class TestUniPoly:
    def test_squarefree_examples(self):
        p = (Y - 1) * (Y - 2) ** 2
        assert squarefree_decomposition(p) == [(Y - 1, 1), (Y - 2, 2)]
        assert squarefree_decomposition(Y**3 + Y**2) == [(Y + 1, 1), (Y, 2)]
        assert squarefree_decomposition(Y**2) == [(Y, 2)]

    @given(upoly(), upoly(3))
    def test_squarefree_reassembles(self, a, b):
        p = a * b * b
        if p.is_zero() or p.degree == 0:
            return
        parts = squarefree_decomposition(p)
        assert reassemble(parts) == p.monic()
        assert sum(k * f.degree for f, k in parts) == p.degree
        for f, _ in parts:
            assert poly_gcd(f, f.derivative()).degree == 0

    def test_rational_roots(self):
        p = (2 * Y + 1) * (Y - 3) ** 2 * (Y**2 + 1)
        assert rational_roots(p) == [Fraction(-1, 2), Fraction(3)]
        assert root_multiplicity(p, Fraction(3)) == 2
        assert not splits_over_q(Y**2 - 2)
        assert splits_over_q((Y - Fraction(1, 3)) * Y)

    @given(upoly(), upoly())
    def test_divmod(self, a, b):
        if b.is_zero():
            return
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree


class TestRatFun:
    def test_normal_form(self):
        f = RatFun(UniPoly([2, 2]), UniPoly([4, 4]))
        assert f.num == UniPoly.const(Fraction(1, 2)) and f.den == UniPoly.const(1)
        g = RatFun(UniPoly([1]), UniPoly([2, 2]))
        assert g.den.lc() == 1

    @given(upoly(3), upoly(3), upoly(3), upoly(3))
    def test_field(self, a, b, c, d):
        if b.is_zero() or d.is_zero():
            return
        f, g = RatFun(a, b), RatFun(c, d)
        assert (f + g) - g == f
        if not g.is_zero():
            assert (f * g) / g == f

    def test_pole_data_examples(self):
        s = Y
        assert ratfun_pole_data(RatFun(UniPoly.const(1), s + 1), -1) == (1, 1)
        assert ratfun_pole_data(RatFun(s + 1, s + 1), -1) == (0, 1)
        f = RatFun(UniPoly.const(1), (2 * s + 1) ** 2 * (s + 1))
        assert ratfun_pole_data(f, Fraction(-1, 2)) == (2, Fraction(1, 2))

    @given(st.lists(st.sampled_from([Fraction(-1), Fraction(-1, 2), Fraction(-3, 4), Fraction(2)]), min_size=1, max_size=5),
           upoly(3), st.sampled_from([Fraction(-1), Fraction(-1, 2), Fraction(-3, 4)]))
    def test_pole_order_drops(self, roots, num, r):
        if num.is_zero():
            return
        f = RatFun(num, UniPoly.from_roots(roots))
        k, _ = ratfun_pole_data(f, r)
        if k >= 1:
            assert ratfun_pole_data(f * RatFun(UniPoly.linear_root(r)), r)[0] == k - 1

    def test_leading_coefficient_by_limit(self):
        # brute force: (s - r)^k F evaluated at r after cancelling by hand
        f = RatFun(UniPoly([3, 1]), UniPoly.from_roots([-1, -1, Fraction(-1, 3)]))
        k, lead = ratfun_pole_data(f, -1)
        assert k == 2
        assert lead == Fraction(3 - 1, 1) / (-1 + Fraction(1, 3))

    def test_from_factored(self):
        f = RatFun.from_factored(UniPoly([1]), Counter({Fraction(-1): 2}), 4)
        assert f == RatFun(UniPoly.const(1), 4 * (Y + 1) ** 2)


def rmat(rows):
    return RatMatrix([[Fraction(x) for x in r] for r in rows])


def all_monic_divisors(p: UniPoly):
    parts = squarefree_decomposition(p)
    for ks in product(*[range(k + 1) for _, k in parts]):
        out = UniPoly.const(1)
        for (f, _), k in zip(parts, ks):
            out = out * f**k
        yield out


class TestMatrix:
    def test_minimal_polynomial_examples(self):
        assert minimal_polynomial(RatMatrix.zero(3)) == Y
        assert minimal_polynomial(RatMatrix.identity(3)) == Y - 1
        a = RatMatrix.diag([1, 1, 2])
        p = minimal_polynomial(a)
        assert p == (Y - 1) * (Y - 2)
        # no proper monic divisor kills a
        for q in all_monic_divisors(p):
            if q != p:
                assert not a.eval_poly(q).is_zero()

    def test_jc_examples(self):
        a = RatMatrix.diag([2, 3, 5])
        assert jordan_chevalley(a) == (a, RatMatrix.zero(3))
        j = rmat([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        assert jordan_chevalley(j) == (RatMatrix.zero(3), j)
        s, n = jordan_chevalley(rmat([[1, 1], [0, 1]]))
        assert s == RatMatrix.identity(2) and n == rmat([[0, 1], [0, 0]])

    def test_jc_irrational_eigenvalues(self):
        # companion block of Y^2 - 2 doubled into a 4x4 non-semisimple matrix
        c = [[0, 2, 1, 0], [1, 0, 0, 1], [0, 0, 0, 2], [0, 0, 1, 0]]
        s, n = jordan_chevalley(rmat(c))
        assert s + n == rmat(c) and s * n == n * s
        assert is_semisimple(s) and is_nilpotent(n) and not n.is_zero()

    def test_nullspace(self):
        rows = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)]]
        ns = nullspace(rows, 3)
        assert len(ns) == 2
        for v in ns:
            assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


entries = st.integers(-3, 3).map(Fraction) | st.fractions(-3, 3, max_denominator=3)
mat3 = st.lists(st.lists(entries, min_size=3, max_size=3), min_size=3, max_size=3).map(RatMatrix)
jordan_shapes = st.sampled_from([
    [[1, 1, 0], [0, 1, 0], [0, 0, 2]],
    [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
    [[2, 1, 0], [0, 2, 1], [0, 0, 2]],
    [[0, -2, 1], [1, 0, 0], [0, 0, 0]],
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
])


@st.composite
def conjugated(draw):
    j = rmat(draw(jordan_shapes))
    p = draw(mat3)
    if p.rank() < 3:
        p = RatMatrix.identity(3)
    return p * j * p.inverse()


@settings(max_examples=200)
@given(mat3 | conjugated())
def test_jc_postconditions_random(a):
    s, n = jordan_chevalley(a)
    assert s + n == a
    assert s * n == n * s
    assert (n * n * n).is_zero()
    m = minimal_polynomial(s)
    assert poly_gcd(m, m.derivative()).degree == 0


def test_multipoly_basics():
    x, y, z = (MultiPoly.var(3, i) for i in range(3))
    f = x * y + z**2
    assert f.homogeneity() == 2
    assert (x + y).homogeneity() == 1 and (x + x * y).homogeneity() is None
    assert f.derivative(2) == z * 2
    assert f.evaluate([1, 2, 3]) == 11
