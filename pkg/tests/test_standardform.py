from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from smcverify.errors import HyperplaneArrangement, NotDegreeD, NotHomogeneous, NotStandardForm, ZeroPolynomial
from smcverify.polyparse import parse_poly
from smcverify.standardform import (
    StandardFormData,
    build_poly,
    classify,
    euler_characteristic,
    euler_characteristic_flag,
    extract_standard_form,
    nontraceless_condition,
    phi_map,
    support_line,
    undo_permutation,
)


def P(text):
    return parse_poly(text).poly


def test_phi_map():
    def uv(pt):
        return pt.u, pt.v

    assert uv(phi_map(7, (0, 7, 0))) == (-7, 7)
    assert uv(phi_map(7, (3, 0, 4))) == (0, 4)
    assert uv(phi_map(3, (1, 1, 1))) == (-1, 2)
    with pytest.raises(NotDegreeD):
        phi_map(4, (1, 1, 1))


def test_support_line():
    line = support_line(P("y^5 - x^3*z^2"))
    for pt in [(-5, 5), (0, 2)]:
        assert line.normal[0] * pt[0] + line.normal[1] * pt[1] == line.offset
    assert support_line(P("x^3 + y^3 + z^3")) is None
    assert support_line(P("x*y^2")).degenerate


class TestExtract:
    def test_quintic(self):
        sf = extract_standard_form(P("y^5 - x^3*z^2"))
        assert (sf.a, sf.t, sf.u, sf.m, sf.b, sf.c) == ((0, 0, 0), 5, 3, 1, (1,), (Fraction(-1),))

    def test_sextic_with_lines(self):
        sf = extract_standard_form(P("x*y*z*(y^3 - x^2*z)"))
        assert (sf.a, sf.t, sf.u, sf.m, sf.b, sf.c) == ((1, 1, 1), 3, 2, 1, (1,), (Fraction(-1),))

    def test_two_branches(self):
        f = P("x*(y^2 - 2*x*z)*(y^2 - 4*x*z)")
        sf = extract_standard_form(f)
        assert (sf.a, sf.t, sf.u, sf.m, sf.b) == ((1, 0, 0), 2, 1, 2, (1, 1))
        assert sorted(sf.c) == [-4, -2]
        assert undo_permutation(build_poly(sf), sf.permutation_applied) == f

    def test_permuted_input(self):
        sf = extract_standard_form(P("x^5 - y^3*z^2"))
        assert (sf.t, sf.u) in {(5, 3), (5, 2)}
        assert sf.permutation_applied != (0, 1, 2)

    def test_irrational_branches_keep_multiplicities(self):
        # y^6 + x^4 z^2: gcd(6, 4) = 2 branches y^3 + c x^2 z with c^2 = -1
        sf = extract_standard_form(P("y^6 + x^4*z^2"))
        assert (sf.t, sf.u, sf.m, sf.b, sf.c) == (3, 2, 2, (1, 1), None)

    @pytest.mark.parametrize("d,r", [(6, 4), (6, 3), (8, 2), (9, 6), (10, 4)])
    def test_pencil_family(self, d, r):
        m = gcd(d, r)
        sf = extract_standard_form(P(f"y^{d} + x^{r}*z^{d - r}"))
        assert (sf.m, sf.t, sf.u) == (m, d // m, r // m)

    def test_errors(self):
        with pytest.raises(NotStandardForm):
            extract_standard_form(P("x^3 + y^3 + z^3"))
        with pytest.raises(NotHomogeneous):
            extract_standard_form(P("x^3 + y"))
        with pytest.raises(ZeroPolynomial):
            extract_standard_form(P("x") - P("x"))


sfs = st.builds(
    lambda t, k, a, b: StandardFormData(*a, t, [u for u in range(1, t) if gcd(t, u) == 1][k % len([u for u in range(1, t) if gcd(t, u) == 1])], b),
    st.integers(2, 7), st.integers(0, 10), st.tuples(*[st.integers(0, 3)] * 3), st.lists(st.integers(1, 3), min_size=1, max_size=3).map(lambda b: tuple(sorted(b))),
)


@given(sfs, st.lists(st.fractions(-5, 5, max_denominator=3).filter(bool), min_size=3, max_size=3, unique=True))
def test_roundtrip(sf, cs):
    f = build_poly(sf, cs[: sf.m])
    got = extract_standard_form(f)
    assert got.d == sf.d == got.a1 + got.a2 + got.a3 + got.t * sum(got.b)
    assert gcd(got.t, got.u) == 1
    assert undo_permutation(build_poly(got), got.permutation_applied) == f
    if got.permutation_applied == (0, 1, 2):
        assert (got.a, got.t, got.u, sorted(got.b)) == (sf.a, sf.t, sf.u, sorted(sf.b))
        assert sorted(zip(got.b, got.c)) == sorted(zip(sf.b, cs[: sf.m]))


def test_nontraceless():
    assert nontraceless_condition(StandardFormData(0, 0, 0, 5, 3, (1,)))
    for a in range(4):
        assert not nontraceless_condition(StandardFormData(a, 2, a, 2, 1, (1, 2)))
    assert not nontraceless_condition(StandardFormData(0, 0, 0, 2, 1, (1,)))
    assert nontraceless_condition(StandardFormData(1, 0, 0, 2, 1, (1,)))


class TestClassify:
    def test_tags(self):
        assert classify(P("x^2*y*z^3")).tag == "NormalCrossingMonomialLike"
        c = classify(P("y^5 - x^3*z^2"))
        assert c.tag == "StandardForm" and c.nontraceless and c.witness_agrees
        assert classify(P("x*y*(x + y)")).tag == "DecomposableArrangement"
        assert classify(P("x^3 + y^3 + z^3")).tag == "NoDiagonalSymmetry"

    def test_traceless_witness_agrees(self):
        c = classify(P("y^2 + x*z"))
        assert c.nontraceless is False and c.witness_agrees


def test_euler_case_split():
    assert euler_characteristic(StandardFormData(0, 0, 0, 5, 3, (1,))) == 2
    assert euler_characteristic(StandardFormData(1, 1, 1, 3, 2, (1,))) == 3
    sf = StandardFormData(0, 0, 5, 5, 3, (1,))
    assert euler_characteristic(sf) == 2
    # the fixed-point count sees [0:1:0] on z = 0 and disagrees; reported, not fixed
    assert euler_characteristic_flag(sf)
    with pytest.raises(HyperplaneArrangement):
        euler_characteristic(StandardFormData(0, 0, 0, 1, 0, (1,)))
