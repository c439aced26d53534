"""Certified addition orders for the built-in arrangements.

Each order lists lines in an order whose freeness replay is valid, along
with the expected exponent triple after each step and, from the third
step on, the expected restriction exponents {1, t-1}. These serve as the
regression fixtures for the replay engine and as the canonical output
order of the builders.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .field import FieldElement
from .projective import ProjectiveLine


def line(a=0, b=0, c=0, ae=0, be=0, ce=0) -> ProjectiveLine:
    """Line a*x + b*y + c*z with rational and sqrt(3) parts per coefficient."""
    return ProjectiveLine(FieldElement(a, ae), FieldElement(b, be), FieldElement(c, ce))


@dataclass(frozen=True)
class AdditionStep:
    label: str
    line: ProjectiveLine
    exponents_after: Tuple[int, int, int]
    restriction_pair: Optional[Tuple[int, int]]


ADDITION_ORDER_19: tuple[AdditionStep, ...] = (
    AdditionStep("l1", line(c=1), (0, 0, 1), None),
    AdditionStep("l2", line(ae=1, b=1), (0, 1, 1), None),
    AdditionStep("l3", line(ae=1, b=-1), (1, 1, 1), (1, 1)),
    AdditionStep("l4", line(b=1), (1, 1, 2), (1, 1)),
    AdditionStep("l5", line(a=1), (1, 1, 3), (1, 1)),
    AdditionStep("l6", line(a=1, be=1), (1, 1, 4), (1, 1)),
    AdditionStep("l7", line(a=1, be=-1), (1, 1, 5), (1, 1)),
    AdditionStep("l8", line(a=2, ce=-1), (1, 2, 5), (1, 5)),
    AdditionStep("l9", line(a=2, ce=1), (1, 3, 5), (1, 5)),
    AdditionStep("l10", line(a=1, be=1, ce=1), (1, 4, 5), (1, 5)),
    AdditionStep("l11", line(a=1, be=-1, ce=-1), (1, 5, 5), (1, 5)),
    AdditionStep("l12", line(a=1, be=1, ce=-1), (1, 5, 6), (1, 5)),
    AdditionStep("l13", line(a=1, be=-1, ce=1), (1, 5, 7), (1, 5)),
    AdditionStep("l14", line(a=2, ce=-2), (1, 6, 7), (1, 7)),
    AdditionStep("l15", line(a=1, ce=1), (1, 7, 7), (1, 7)),
    AdditionStep("l16", line(a=1, be=1, ce=2), (1, 7, 8), (1, 7)),
    AdditionStep("l17", line(a=1, be=-1, ce=2), (1, 7, 9), (1, 7)),
    AdditionStep("l18", line(a=1, be=-1, ce=-2), (1, 7, 10), (1, 7)),
    AdditionStep("l19", line(a=1, be=1, ce=-2), (1, 7, 11), (1, 7)),
)

EXTENSION_ORDER_31_2: tuple[AdditionStep, ...] = (
    AdditionStep("l20", line(ae=1, b=1, c=-1), (1, 8, 11), (1, 11)),
    AdditionStep("l21", line(ae=1, b=1, c=1), (1, 9, 11), (1, 11)),
    AdditionStep("l22", line(ae=1, b=-1, c=1), (1, 10, 11), (1, 11)),
    AdditionStep("l23", line(ae=1, b=-1, c=-1), (1, 11, 11), (1, 11)),
    AdditionStep("l24", line(b=2, c=-1), (1, 11, 12), (1, 11)),
    AdditionStep("l25", line(b=2, c=1), (1, 11, 13), (1, 11)),
    AdditionStep("l26", line(a=1, be=1, ce=3), (1, 12, 13), (1, 13)),
    AdditionStep("l27", line(a=1, be=1, ce=-3), (1, 13, 13), (1, 13)),
    AdditionStep("l28", line(a=1, be=-1, ce=3), (1, 13, 14), (1, 13)),
    AdditionStep("l29", line(a=1, be=-1, ce=-3), (1, 13, 15), (1, 13)),
    AdditionStep("l30", line(a=2, ce=3), (1, 13, 16), (1, 13)),
    AdditionStep("l31", line(a=2, ce=-3), (1, 13, 17), (1, 13)),
)

EXTENSION_ORDER_31_3: tuple[AdditionStep, ...] = (
    AdditionStep("l20", line(ae=1, b=1, c=1), (1, 8, 11), (1, 11)),
    AdditionStep("l21", line(ae=1, b=1, c=-1), (1, 9, 11), (1, 11)),
    AdditionStep("l22", line(ae=1, b=-1, c=1), (1, 10, 11), (1, 11)),
    AdditionStep("l23", line(ae=1, b=-1, c=-1), (1, 11, 11), (1, 11)),
    AdditionStep("l24", line(b=2, c=-1), (1, 11, 12), (1, 11)),
    AdditionStep("l25", line(b=2, c=1), (1, 11, 13), (1, 11)),
    AdditionStep("l26", line(a=4, ce=1), (1, 12, 13), (1, 13)),
    AdditionStep("l27", line(a=4, ce=-1), (1, 13, 13), (1, 13)),
    AdditionStep("l28", line(a=2, be=-2, ce=1), (1, 13, 14), (1, 13)),
    AdditionStep("l29", line(a=2, be=-2, ce=-1), (1, 13, 15), (1, 13)),
    AdditionStep("l30", line(a=2, be=2, ce=-1), (1, 13, 16), (1, 13)),
    AdditionStep("l31", line(a=2, be=2, ce=1), (1, 13, 17), (1, 13)),
)

FINAL_EXPONENTS_19 = (1, 7, 11)
FINAL_EXPONENTS_31 = (1, 13, 17)

# Multiplicity histogram shared by both 31-line arrangements.
T_VECTOR_31 = {2: 54, 3: 42, 4: 21, 5: 6, 6: 1, 8: 3}

ORDER_31_2: tuple[AdditionStep, ...] = ADDITION_ORDER_19 + EXTENSION_ORDER_31_2
ORDER_31_3: tuple[AdditionStep, ...] = ADDITION_ORDER_19 + EXTENSION_ORDER_31_3
