"""Exact points and lines of the projective plane over Q(sqrt(3)).

Both kinds of objects are stored as canonical coordinate triples: scaled
so that the first nonzero coordinate equals 1. Equality and hashing use
the canonical triple, which makes deduplication and fixture comparison
exact.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Tuple, Union

from .field import FieldElement
from .forms import HomogeneousForm

CoordLike = Union[FieldElement, int, Fraction]
Triple = Tuple[FieldElement, FieldElement, FieldElement]


def canonicalize_triple(raw: Iterable[CoordLike]) -> Triple:
    """Scale a nonzero triple so its first nonzero entry is 1; idempotent."""
    coords = tuple(c if isinstance(c, FieldElement) else FieldElement(c) for c in raw)
    if len(coords) != 3:
        raise ValueError("projective objects need exactly three coordinates")
    for coord in coords:
        if coord:
            inv = coord.inverse()
            return (coords[0] * inv, coords[1] * inv, coords[2] * inv)
    raise ValueError("the zero triple is not a projective object")


class _CanonicalTriple:
    __slots__ = ("coords",)

    def __init__(self, c0: CoordLike, c1: CoordLike = None, c2: CoordLike = None) -> None:
        if c1 is None and c2 is None:
            raw = tuple(c0)  # type: ignore[arg-type]
        else:
            raw = (c0, c1, c2)
        self.coords = canonicalize_triple(raw)

    def __iter__(self) -> Iterator[FieldElement]:
        return iter(self.coords)

    def __getitem__(self, index: int) -> FieldElement:
        return self.coords[index]

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.coords))

    def sort_key(self) -> tuple:
        return tuple((c.rat, c.irr) for c in self.coords)

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.coords)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(repr(c) for c in self.coords)})"


class ProjectivePoint(_CanonicalTriple):
    """A point of P^2 in canonical coordinates."""


class ProjectiveLine(_CanonicalTriple):
    """A line of P^2, stored by the coefficients of a*x + b*y + c*z."""

    def form(self) -> HomogeneousForm:
        return HomogeneousForm.linear(*self.coords)

    def evaluate(self, point: ProjectivePoint) -> FieldElement:
        a, b, c = self.coords
        px, py, pz = point.coords
        return a * px + b * py + c * pz


def meet(l1: ProjectiveLine, l2: ProjectiveLine) -> ProjectivePoint:
    """The unique common point of two distinct lines (exact cross product)."""
    a0, a1, a2 = l1.coords
    b0, b1, b2 = l2.coords
    cross = (a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0)
    if not any(cross):
        raise ValueError("identical lines have no unique meet")
    return ProjectivePoint(cross)


def incident(point: ProjectivePoint, line: ProjectiveLine) -> bool:
    return not line.evaluate(point)
