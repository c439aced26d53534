from __future__ import annotations

import random
from math import comb

import pytest

from arrkit import (
    DegreeCapExceeded,
    FatPointScheme,
    FieldElement,
    ONE,
    ZERO,
    containment_check,
    containment_oracle,
    hilbert_function,
    membership,
    minimal_generators,
    power_graded_span,
    symbolic_graded_piece,
    vanishing_matrix,
    witness_line_factors,
)
from arrkit.arrangement import Arrangement, defining_polynomial, singular_locus
from arrkit.forms import HomogeneousForm, format_form, monomial_index, parse_form
from arrkit.linalg import ReducedEchelon, rank
from arrkit.projective import ProjectiveLine, ProjectivePoint

F = FieldElement


def P(x, y, z) -> ProjectivePoint:
    return ProjectivePoint(F(x), F(y), F(z))


PX, PY, PZ = P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)


def _vector(form: HomogeneousForm) -> list[FieldElement]:
    row = [ZERO] * comb(form.degree + 2, 2)
    for mono, coef in form.terms.items():
        row[monomial_index(mono)] = coef
    return row


def _span(forms) -> ReducedEchelon:
    forms = list(forms)
    ech = ReducedEchelon(comb(forms[0].degree + 2, 2))
    for form in forms:
        ech.add_row(_vector(form))
    return ech


def _same_span(forms_a, forms_b) -> bool:
    ech_a, ech_b = _span(forms_a), _span(forms_b)
    if ech_a.rank != ech_b.rank:
        return False
    return all(ech_a.contains(_vector(f)) for f in forms_b)


def _vanishes_to_order(form: HomogeneousForm, point: ProjectivePoint, order: int) -> bool:
    for a in range(order):
        for b in range(order - a):
            for c in range(order - a - b):
                g = form
                for _ in range(a):
                    g = g.partial("x")
                for _ in range(b):
                    g = g.partial("y")
                for _ in range(c):
                    g = g.partial("z")
                if g.evaluate(point.coords):
                    return False
    return True


@pytest.fixture(scope="module")
def coord_simple():
    return FatPointScheme.uniform([PX, PY, PZ], 1)


@pytest.fixture(scope="module")
def coord_double(coord_simple):
    return coord_simple.thickened(2)


@pytest.fixture(scope="module")
def single_point():
    return FatPointScheme([(PZ, 1)])


def test_scheme_rejects_duplicates_and_bad_multiplicity():
    with pytest.raises(ValueError):
        FatPointScheme([(PZ, 1), (P(0, 0, 2), 1)])
    with pytest.raises(ValueError):
        FatPointScheme([(PZ, 0)])


def test_conditions_count_mixed_multiplicities():
    scheme = FatPointScheme([(PX, 1), (PY, 2)])
    assert scheme.conditions_count == 1 + 3
    assert len(vanishing_matrix(scheme, 2)) == 4


def test_vanishing_matrix_single_point_selects_z(single_point):
    matrix = vanishing_matrix(single_point, 1)
    assert len(matrix) == 1 and len(matrix[0]) == 3
    z_col = monomial_index((0, 0, 1))
    assert matrix[0][z_col] != ZERO
    assert all(entry == ZERO for i, entry in enumerate(matrix[0]) if i != z_col)
    piece = symbolic_graded_piece(single_point, 1)
    assert _same_span(piece.forms, [parse_form("x", 1), parse_form("y", 1)])


def test_vanishing_matrix_three_simple_points(coord_simple):
    matrix = vanishing_matrix(coord_simple, 2)
    assert len(matrix) == 3 and len(matrix[0]) == 6
    assert rank(matrix, 6) == 3
    piece = symbolic_graded_piece(coord_simple, 2)
    quadrics = [parse_form(s, 2) for s in ("x*y", "x*z", "y*z")]
    assert piece.dimension == 3
    assert _same_span(piece.forms, quadrics)


def test_vanishing_matrix_three_double_points(coord_double):
    matrix = vanishing_matrix(coord_double, 3)
    assert len(matrix) == 9 and len(matrix[0]) == 10
    assert rank(matrix, 10) == 9
    piece = symbolic_graded_piece(coord_double, 3)
    assert [format_form(f) for f in piece.forms] == ["x*y*z"]


def test_graded_piece_empty_cases(coord_double, single_point):
    assert symbolic_graded_piece(coord_double, 0).dimension == 0
    assert symbolic_graded_piece(FatPointScheme([(PZ, 3)]), 2).dimension == 0
    with pytest.raises(ValueError):
        symbolic_graded_piece(single_point, -1)


def test_hilbert_function_small_schemes(coord_double, single_point):
    empty = FatPointScheme([])
    for d in (0, 1, 4):
        assert hilbert_function(empty, d) == comb(d + 2, 2)
    assert hilbert_function(single_point, 1) == 2
    assert hilbert_function(coord_double, 3) == 1


def test_hilbert_function_saturates_at_point_count(a312):
    points = singular_locus(a312).points()
    assert len(points) == 127
    scheme = FatPointScheme.uniform(points, 1)
    for d in (20, 21):
        assert hilbert_function(scheme, d) == comb(d + 2, 2) - 127


def test_minimal_generators_examples(coord_simple, coord_double, single_point):
    assert [format_form(f) for f in minimal_generators(single_point).forms] == ["x", "y"]
    assert [format_form(f) for f in minimal_generators(coord_simple).forms] == [
        "x*y", "x*z", "y*z",
    ]
    gens = minimal_generators(coord_double)
    assert [format_form(f) for f in gens.forms] == [
        "x*y*z", "x^2*y^2", "x^2*z^2", "y^2*z^2",
    ]
    assert gens.degrees() == (3, 4, 4, 4)


def test_minimal_generators_are_minimal(coord_double):
    gens = list(minimal_generators(coord_double).forms)
    for i, form in enumerate(gens):
        others = gens[:i] + gens[i + 1:]
        assert not membership(form, others, 1)


def test_degree_cap_carries_partial_data(coord_double, single_point):
    with pytest.raises(DegreeCapExceeded) as info:
        minimal_generators(single_point, max_degree=2)
    assert [format_form(f) for f in info.value.partial_generators] == ["x", "y"]
    assert info.value.dimensions == {0: 0, 1: 2, 2: 5}
    with pytest.raises(DegreeCapExceeded) as info:
        minimal_generators(coord_double, max_degree=2)
    assert info.value.partial_generators == ()
    assert info.value.dimensions == {0: 0, 1: 0, 2: 0}


def test_power_graded_span_examples():
    linear = [parse_form("x", 1), parse_form("y", 1)]
    basis = power_graded_span(linear, 2, 2)
    assert basis.dimension == 3
    assert _same_span(basis.forms, [parse_form(s, 2) for s in ("x^2", "x*y", "y^2")])
    assert power_graded_span(linear, 2, 1).dimension == 0
    quadrics = [parse_form(s, 2) for s in ("x*y", "x*z", "y*z")]
    products = power_graded_span(quadrics, 2, 4)
    assert products.dimension == 6
    expected = [parse_form(s, 4) for s in (
        "x^2*y^2", "x^2*z^2", "y^2*z^2", "x^2*y*z", "x*y^2*z", "x*y*z^2",
    )]
    assert _same_span(products.forms, expected)
    with pytest.raises(ValueError):
        power_graded_span(linear, 0, 2)


def test_power_span_r1_matches_point_ideal_piece(single_point):
    linear = [parse_form("x", 1), parse_form("y", 1)]
    span = power_graded_span(linear, 1, 3)
    piece = symbolic_graded_piece(single_point, 3)
    assert span.dimension == piece.dimension == 9
    assert _same_span(span.forms, piece.forms)


def test_ordinary_square_of_quadrics_starts_in_degree_four():
    quadrics = [parse_form(s, 2) for s in ("x*y", "x*z", "y*z")]
    assert power_graded_span(quadrics, 2, 3).dimension == 0
    assert power_graded_span(quadrics, 2, 4).dimension == 6


def test_membership_examples():
    quadrics = [parse_form(s, 2) for s in ("x*y", "x*z", "y*z")]
    assert not membership(parse_form("x*y*z", 3), quadrics, 2)
    assert membership(parse_form("x^2*y^2", 4), quadrics, 2)
    pair = [parse_form("x", 1), parse_form("x+(e)*y", 1)]
    cube = pair[1] * pair[1] * pair[0]
    assert membership(cube, pair, 2)
    assert membership(HomogeneousForm.zero(4), quadrics, 2)
    with pytest.raises(ValueError):
        membership(parse_form("x", 1), pair, 0)


def test_containment_three_coordinate_points(coord_simple):
    report = containment_check(coord_simple, 2, 2)
    assert not report.contained
    assert [format_form(w) for w in report.witnesses] == ["x*y*z"]
    assert report.witness_degrees == (3,)
    assert report.degrees_scanned == (3, 4)
    payload = report.to_payload()
    assert payload["contained"] is False
    assert payload["witnesses"] == ["x*y*z"]
    assert payload["witness_degrees"] == [3]


def test_containment_single_point(single_point):
    report = containment_check(single_point, 3, 2)
    assert report.contained
    assert report.witnesses == ()
    assert report.degrees_scanned == (3,)


def test_containment_validates_inputs(coord_simple, coord_double):
    with pytest.raises(ValueError):
        containment_check(coord_simple, 0, 2)
    with pytest.raises(ValueError):
        containment_check(coord_simple, 2, 0)
    with pytest.raises(ValueError):
        containment_check(coord_simple, 2, 2, threads=0)
    with pytest.raises(ValueError):
        containment_check(coord_double, 2, 2)


def test_containment_propagates_degree_cap(coord_simple):
    with pytest.raises(DegreeCapExceeded):
        containment_check(coord_simple, 2, 2, max_degree=2)


def test_witness_line_factors_examples(a19):
    triangle = Arrangement(
        [ProjectiveLine(ONE, ZERO, ZERO), ProjectiveLine(ZERO, ONE, ZERO),
         ProjectiveLine(ZERO, ZERO, ONE)],
        ("l1", "l2", "l3"),
    )
    factors, quotient = witness_line_factors(parse_form("x^2*y", 3), triangle)
    assert factors == (0, 0, 1)
    assert quotient.degree == 0 and format_form(quotient) == "(1)"
    square = parse_form("x+y", 1) * parse_form("x+y", 1)
    factors, quotient = witness_line_factors(square, triangle)
    assert factors == ()
    assert quotient == square
    product = defining_polynomial(a19)
    factors, quotient = witness_line_factors(product, a19)
    assert factors == tuple(range(19))
    assert quotient.degree == 0
    for line in a19.lines:
        assert quotient.exact_divide(line.form()) is None


def test_symbolic_basis_vanishes_to_order(coord_double):
    for degree in (3, 4, 5):
        piece = symbolic_graded_piece(coord_double, degree)
        for form in piece.forms:
            for point, mult in zip(coord_double.points, coord_double.multiplicities):
                assert _vanishes_to_order(form, point, mult)
    fat = FatPointScheme([(PZ, 3)])
    for form in symbolic_graded_piece(fat, 3).forms:
        assert _vanishes_to_order(form, PZ, 3)


def test_piece_dimensions_monotone_under_generic_line(coord_double):
    # x + y + z vanishes at none of the three coordinate points
    line = parse_form("x+y+z", 1)
    previous = symbolic_graded_piece(coord_double, 0)
    for degree in range(1, 7):
        current = symbolic_graded_piece(coord_double, degree)
        assert current.dimension >= previous.dimension
        if previous.forms:
            ech = _span(current.forms)
            for form in previous.forms:
                assert ech.contains(_vector(line * form))
        previous = current


def test_ordinary_power_inside_symbolic_100_instances():
    rng = random.Random(31207)
    coord_pool = [-2, -1, 0, 1, 2]
    done = 0
    while done < 100:
        n_points = rng.randint(1, 3)
        points: list[ProjectivePoint] = []
        while len(points) < n_points:
            x = F(rng.choice(coord_pool), rng.choice((-1, 0, 0, 1)))
            y = F(rng.choice(coord_pool))
            z = F(rng.choice((0, 1, 1, 1)))
            if not (x or y or z):
                continue
            point = ProjectivePoint(x, y, z)
            if all(point != q for q in points):
                points.append(point)
        scheme = FatPointScheme.uniform(points, 1)
        m = rng.randint(1, 3)
        generators = minimal_generators(scheme, max_degree=15)
        alpha = min(f.degree for f in generators.forms)
        degree = m * alpha + rng.randint(0, 1)
        span = power_graded_span(generators, m, degree)
        piece = symbolic_graded_piece(scheme.thickened(m), degree)
        assert span.dimension <= piece.dimension
        if span.forms:
            ech = _span(piece.forms)
            for form in span.forms:
                assert ech.contains(_vector(form))
        done += 1


def test_containment_agrees_with_oracle_on_random_schemes():
    rng = random.Random(46337)
    sizes = [2, 3, 3, 4, 4, 5, 4, 3, 6, 4]
    for n_points in sizes:
        points: list[ProjectivePoint] = []
        while len(points) < n_points:
            point = ProjectivePoint(
                F(rng.randrange(-2, 3), rng.randrange(-1, 2)),
                F(rng.randrange(-2, 3), rng.randrange(-1, 2)),
                F(1),
            )
            if all(point != q for q in points):
                points.append(point)
        scheme = FatPointScheme.uniform(points, 1)
        report = containment_check(scheme, 3, 2, max_degree=30)
        if report.witnesses:
            cap = max(report.witness_degrees) + 1
        else:
            symbolic = minimal_generators(scheme.thickened(3), max_degree=30)
            cap = max(f.degree for f in symbolic.forms) + 1
        verdict, _ = containment_oracle(scheme, 3, 2, cap)
        assert report.contained == verdict


def test_containment_agrees_with_oracle_on_collinear_scheme():
    points = [P(t, 1, 0) for t in (0, 1, 2)] + [PZ, P(1, 1, 1)]
    scheme = FatPointScheme.uniform(points, 1)
    report = containment_check(scheme, 3, 2, max_degree=30)
    symbolic = minimal_generators(scheme.thickened(3), max_degree=30)
    cap = max(f.degree for f in symbolic.forms) + 1
    verdict, _ = containment_oracle(scheme, 3, 2, cap)
    assert report.contained == verdict


def test_oracle_detects_known_failure(coord_simple):
    assert containment_oracle(coord_simple, 2, 2, 6) == (False, 3)
    assert containment_oracle(FatPointScheme([(PZ, 1)]), 3, 2, 6) == (True, None)
