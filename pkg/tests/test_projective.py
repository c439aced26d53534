from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrkit import E, ONE, ZERO, FieldElement, ProjectiveLine, ProjectivePoint, incident, meet

rationals = st.fractions(
    min_value=Fraction(-10), max_value=Fraction(10), max_denominator=6
)
coords = st.builds(FieldElement, rationals, rationals)
triples = st.tuples(coords, coords, coords).filter(lambda t: any(t))


def test_canonical_leading_one():
    p = ProjectivePoint(FieldElement(0, 2), FieldElement(-1), FieldElement(2))
    assert p.coords[0] == ONE
    assert p.coords[1] == FieldElement(0, Fraction(-1, 6))
    assert p.coords[2] == FieldElement(0, Fraction(1, 3))


def test_canonicalize_skips_leading_zeros():
    p = ProjectivePoint(ZERO, ZERO, FieldElement(-5))
    assert p.coords == (ZERO, ZERO, ONE)


def test_zero_triple_rejected():
    with pytest.raises(ValueError):
        ProjectivePoint(ZERO, ZERO, ZERO)


def test_scaling_invariance():
    p = ProjectivePoint(FieldElement(2), FieldElement(4), FieldElement(-2))
    q = ProjectivePoint(FieldElement(-1), FieldElement(-2), FieldElement(1))
    assert p == q
    assert hash(p) == hash(q)


def test_meet_example():
    # 2x - ez = 0 and 2y - z = 0 meet at (e/2, 1/2, 1)
    l1 = ProjectiveLine(FieldElement(2), ZERO, -E)
    l2 = ProjectiveLine(ZERO, FieldElement(2), FieldElement(-1))
    pt = meet(l1, l2)
    assert pt == ProjectivePoint(
        FieldElement(0, Fraction(1, 2)), FieldElement(Fraction(1, 2)), ONE
    )
    assert incident(pt, l1) and incident(pt, l2)


def test_meet_of_equal_lines_rejected():
    l1 = ProjectiveLine(ONE, E, ZERO)
    with pytest.raises(ValueError):
        meet(l1, ProjectiveLine(FieldElement(2), FieldElement(0, 2), ZERO))


def test_point_and_line_types_distinct():
    p = ProjectivePoint(ONE, ZERO, ZERO)
    l = ProjectiveLine(ONE, ZERO, ZERO)
    assert p != l


@settings(max_examples=100, deadline=None)
@given(triples, triples)
def test_meet_incidence_and_symmetry(t1, t2):
    l1 = ProjectiveLine(*t1)
    l2 = ProjectiveLine(*t2)
    if l1 == l2:
        return
    pt = meet(l1, l2)
    assert incident(pt, l1)
    assert incident(pt, l2)
    assert meet(l2, l1) == pt


@settings(max_examples=100, deadline=None)
@given(triples, coords.filter(bool))
def test_canonicalization_idempotent_and_scale_free(t, scale):
    p = ProjectivePoint(*t)
    q = ProjectivePoint(*(c * scale for c in t))
    assert p == q
    assert ProjectivePoint(*p.coords) == p
