"""Builders for the packaged arrangement families."""
from __future__ import annotations

from .arrangement import Arrangement
from .field import FieldElement
from .orders import ORDER_31_2, ORDER_31_3, ADDITION_ORDER_19, line
from .projective import ProjectiveLine


def _dedupe(lines: list[ProjectiveLine]) -> list[ProjectiveLine]:
    unique: list[ProjectiveLine] = []
    seen = set()
    for candidate in lines:
        if candidate not in seen:
            seen.add(candidate)
            unique.append(candidate)
    return unique


def _in_certified_order(lines: list[ProjectiveLine], order) -> Arrangement:
    ordered = [step.line for step in order]
    if set(ordered) != set(lines):
        raise AssertionError("constructed lines disagree with the certified order fixture")
    return Arrangement(ordered, [step.label for step in order])


def build_family_12k7(k: int) -> Arrangement:
    """The 12k+7 line family; k = 1 and k = 2 give the 19- and 31-line
    arrangements with certified addition orders.

    Lines: 2x - i*e*z, x - e*y + i*e*z, x + e*y - i*e*z for |i| <= k+1;
    2y - j*z, e*x - y + j*z, e*x + y - j*z for |j| <= k-1; plus z.
    """
    if k < 1:
        raise ValueError("k must be >= 1 (the j-index family is empty below k=1)")
    lines: list[ProjectiveLine] = []
    for i in range(-(k + 1), k + 2):
        lines.append(line(a=2, ce=-i))
        lines.append(line(a=1, be=-1, ce=i))
        lines.append(line(a=1, be=1, ce=-i))
    for j in range(-(k - 1), k):
        lines.append(line(b=2, c=-j))
        lines.append(line(ae=1, b=-1, c=j))
        lines.append(line(ae=1, b=1, c=-j))
    lines.append(line(c=1))
    unique = _dedupe(lines)
    if len(unique) != 12 * k + 7:
        raise AssertionError(f"family construction gave {len(unique)} lines, expected {12 * k + 7}")
    if k == 1:
        return _in_certified_order(unique, ADDITION_ORDER_19)
    if k == 2:
        return _in_certified_order(unique, ORDER_31_2)
    return Arrangement(unique)


_ROTATION_BASE = (
    line(a=1),
    line(a=1, ce=-1),
    line(a=1, ce=1),
    line(a=2, ce=-1),
    line(a=2, ce=1),
    line(a=4, ce=-1),
    line(a=4, ce=1),
    line(b=2),
    line(b=2, c=-1),
    line(b=2, c=1),
)


def build_a31_3() -> Arrangement:
    """The second 31-line arrangement: ten base lines, each rotated by 0,
    60 and 120 degrees about the origin, plus the line at infinity.

    A rotation acts on a line's normal vector (a, b) and fixes the constant
    coefficient; the 60-degree matrix has entries 1/2 and e/2, so after
    clearing the factor 2 the images stay over the field:
    (a, b, c) -> (a - e*b, e*a + b, 2c) and (a + e*b, -e*a + b, -2c).
    """
    e = FieldElement(0, 1)
    two = FieldElement(2)
    lines: list[ProjectiveLine] = []
    for base in _ROTATION_BASE:
        a, b, c = base.coords
        lines.append(ProjectiveLine(a, b, c))
        lines.append(ProjectiveLine(a - e * b, e * a + b, two * c))
        lines.append(ProjectiveLine(a + e * b, b - e * a, -two * c))
    lines.append(line(c=1))
    unique = _dedupe(lines)
    if len(unique) != 31:
        raise AssertionError(f"rotation construction gave {len(unique)} lines, expected 31")
    return _in_certified_order(unique, ORDER_31_3)
