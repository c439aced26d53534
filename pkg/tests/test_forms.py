from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrkit import E, ONE, FieldElement, HomogeneousForm, format_form, monomials_of_degree, parse_form
from arrkit.forms import monomial_index

rationals = st.fractions(
    min_value=Fraction(-20), max_value=Fraction(20), max_denominator=8
)
coefficients = st.builds(FieldElement, rationals, rationals)


def forms_of_degree(d, max_terms=5):
    monos = monomials_of_degree(d)
    return st.dictionaries(st.sampled_from(monos), coefficients, max_size=max_terms).map(
        lambda terms: HomogeneousForm(d, terms)
    )


def test_monomial_order_graded_lex():
    assert monomials_of_degree(2) == [
        (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)
    ]
    for d in range(6):
        monos = monomials_of_degree(d)
        assert [monomial_index(m) for m in monos] == list(range(len(monos)))


def test_linear_product():
    x = HomogeneousForm.variable(0)
    y = HomogeneousForm.variable(1)
    xy = x * y
    assert xy.degree == 2
    assert xy.coefficient((1, 1, 0)) == ONE
    # (x + e*y)^2 = x^2 + 2e*xy + 3y^2
    f = HomogeneousForm.linear(1, E, 0)
    sq = f * f
    assert sq.coefficient((2, 0, 0)) == ONE
    assert sq.coefficient((1, 1, 0)) == FieldElement(0, 2)
    assert sq.coefficient((0, 2, 0)) == FieldElement(3)


def test_partial_derivatives():
    f = parse_form("x^2*y+(2)*y^2*z")
    assert f.partial("x") == parse_form("(2)*x*y", degree=2)
    assert f.partial("y") == parse_form("x^2+(4)*y*z", degree=2)
    assert f.partial("z") == parse_form("(2)*y^2", degree=2)


def test_evaluate():
    f = parse_form("x^2+(-3)*y^2")
    # vanishes at (e, 1, anything)
    assert f.evaluate([E, ONE, FieldElement(7)]) == FieldElement(0)
    assert f.evaluate([FieldElement(2), ONE, ONE]) == FieldElement(1)


def test_exact_divide_round_trip():
    f = parse_form("x+(e)*y")
    g = parse_form("x^2+(-1)*y*z")
    prod = f * g
    assert prod.exact_divide(f) == g
    assert g.exact_divide(f) is None
    with pytest.raises(ValueError):
        prod.exact_divide(g)


def test_primitive_scaling():
    f = parse_form("(1/2)*x+(3/4*e)*y")
    prim = f.primitive()
    assert prim == parse_form("(2)*x+(3*e)*y")
    assert prim.primitive() == prim


def test_parse_format_round_trip():
    for text in ("x", "x+y+z", "x^2+(-3)*y*z", "(1/2)*x^3+(e)*x*y*z+(-2/3*e)*z^3"):
        f = parse_form(text)
        assert parse_form(format_form(f)) == f


def test_degree_mismatch_rejected():
    with pytest.raises(ValueError):
        HomogeneousForm(2, {(1, 0, 0): ONE})
    with pytest.raises(ValueError):
        parse_form("x+y^2")


@settings(max_examples=100, deadline=None)
@given(forms_of_degree(3))
def test_euler_identity(f):
    # x*f_x + y*f_y + z*f_z = deg(f) * f
    x, y, z = (HomogeneousForm.variable(i) for i in range(3))
    lhs = x * f.partial(0) + y * f.partial(1) + z * f.partial(2)
    assert lhs == f * FieldElement(f.degree)


@settings(max_examples=100, deadline=None)
@given(forms_of_degree(2), forms_of_degree(2))
def test_multiplication_consistent_with_evaluation(f, g):
    pt = [FieldElement(2, 1), FieldElement(-1, Fraction(1, 2)), ONE]
    assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)


@settings(max_examples=100, deadline=None)
@given(forms_of_degree(2))
def test_exact_divide_recovers_factor(f):
    divisor = parse_form("x+(e)*y+(-1)*z")
    prod = f * divisor
    if f.is_zero():
        assert prod.is_zero()
    else:
        assert prod.exact_divide(divisor) == f
