"""Exact tools for line arrangements over Q(sqrt(3)): construction,
freeness certificates, singular-locus combinatorics, and symbolic-power
containment checks for their fat-point ideals."""

from .field import E, ONE, ZERO, FieldElement, parse_field_element
from .forms import HomogeneousForm, Monomial, format_form, monomials_of_degree, parse_form
from .projective import ProjectiveLine, ProjectivePoint, canonicalize_triple, incident, meet
from .arrangement import (
    Arrangement,
    FreenessCertificate,
    SingularLocus,
    WeakCombinatorics,
    defining_polynomial,
    freeness_replay,
    points_on_line,
    singular_locus,
    transform_lines,
    weak_combinatorics,
)
from .families import build_a31_3, build_family_12k7
from .isomorphism import incidence_isomorphic
from .ideals import (
    ContainmentReport,
    DegreeCapExceeded,
    FatPointScheme,
    GeneratorSet,
    GradedBasis,
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

__version__ = "0.1.0"

__all__ = [
    "E",
    "ONE",
    "ZERO",
    "FieldElement",
    "parse_field_element",
    "HomogeneousForm",
    "Monomial",
    "format_form",
    "monomials_of_degree",
    "parse_form",
    "ProjectiveLine",
    "ProjectivePoint",
    "canonicalize_triple",
    "incident",
    "meet",
    "Arrangement",
    "FreenessCertificate",
    "SingularLocus",
    "WeakCombinatorics",
    "defining_polynomial",
    "freeness_replay",
    "points_on_line",
    "singular_locus",
    "transform_lines",
    "weak_combinatorics",
    "build_a31_3",
    "build_family_12k7",
    "incidence_isomorphic",
    "ContainmentReport",
    "DegreeCapExceeded",
    "FatPointScheme",
    "GeneratorSet",
    "GradedBasis",
    "containment_check",
    "containment_oracle",
    "hilbert_function",
    "membership",
    "minimal_generators",
    "power_graded_span",
    "symbolic_graded_piece",
    "vanishing_matrix",
    "witness_line_factors",
    "__version__",
]
