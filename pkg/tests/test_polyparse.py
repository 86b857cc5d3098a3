from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from smcverify.arith import MultiPoly
from smcverify.errors import PolySyntaxError, UnknownVariable, ZeroPolynomial
from smcverify.polyparse import format_poly, homogeneity, numbered_vars, parse_poly, support
from smcverify.standardform import StandardFormData, build_poly, phi_map


def test_examples():
    p = parse_poly("y^5 - x^3*z^2")
    assert len(p.poly.terms) == 2 and homogeneity(p.poly) == 5
    q = parse_poly("x*y*z*(y^3 - x^2*z)").poly
    assert support(q) == {(1, 4, 1), (3, 1, 2)}
    assert q.homogeneity() == 6


def test_zero_rejected():
    with pytest.raises(ZeroPolynomial):
        parse_poly("0")
    with pytest.raises(ZeroPolynomial):
        parse_poly("x*y - y*x")


def test_syntax_errors_carry_position():
    with pytest.raises(PolySyntaxError) as exc:
        parse_poly("x + * y")
    assert exc.value.position == 4
    with pytest.raises(PolySyntaxError):
        parse_poly("(x + y")
    with pytest.raises(PolySyntaxError):
        parse_poly("x^")


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_poly("x + w")


def test_rational_coefficients_and_numbered_vars():
    p = parse_poly("3/4*x1^2 - x2*x3", numbered_vars(3)).poly
    assert p.terms[(2, 0, 0)] == Fraction(3, 4)
    assert p.terms[(0, 1, 1)] == -1


def test_homogeneity():
    assert homogeneity(parse_poly("x^2*y + z^3").poly) == 3
    assert homogeneity(parse_poly("x^2 + x").poly) is None
    assert homogeneity(parse_poly("(y*z - x^2)*(y*z - x^2 + y^2)").poly) == 4


def test_support():
    assert support(parse_poly("y^5 + x^3*z^2").poly) == {(0, 5, 0), (3, 0, 2)}
    assert support(parse_poly("x*y*z").poly) == {(1, 1, 1)}


def test_expanded_standard_form_is_collinear_under_phi():
    f = build_poly(StandardFormData(0, 0, 0, 2, 1, (2, 2), (Fraction(1), Fraction(2))))
    pts = [phi_map(8, e) for e in support(f)]
    assert len(pts) == 5
    (u0, v0), (u1, v1) = (pts[0].u, pts[0].v), (pts[1].u, pts[1].v)
    assert all((p.u - u0) * (v1 - v0) == (p.v - v0) * (u1 - u0) for p in pts)


exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
coeffs = st.fractions(-9, 9, max_denominator=5).filter(bool)
polys = st.dictionaries(exps, coeffs, min_size=1, max_size=6).map(lambda t: MultiPoly(3, t))


@given(polys)
def test_print_parse_roundtrip(p):
    text = format_poly(p)
    assert parse_poly(text).poly == p
    assert format_poly(parse_poly(text).poly) == text


hom = st.integers(1, 3).flatmap(
    lambda d: st.dictionaries(
        st.tuples(st.integers(0, d), st.integers(0, d)).filter(lambda e: e[0] + e[1] <= d).map(lambda e: (e[0], e[1], d - e[0] - e[1])),
        coeffs, min_size=1, max_size=4,
    ).map(lambda t: MultiPoly(3, t))
)


@given(hom, hom)
def test_homogeneity_additive(p, q):
    assert homogeneity(p * q) == homogeneity(p) + homogeneity(q)
