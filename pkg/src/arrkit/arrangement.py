"""Line arrangements in P^2: singular locus, weak combinatorics, and
inductive-freeness certificate replay."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .field import FieldElement
from .forms import HomogeneousForm
from .linalg import det3
from .projective import ProjectiveLine, ProjectivePoint, incident, meet

LineKey = Union[int, str, ProjectiveLine]


class Arrangement:
    """An ordered list of pairwise-distinct projective lines with labels.

    The order only matters for freeness certificates; set-like operations
    (locus, combinatorics, isomorphism) ignore it.
    """

    __slots__ = ("lines", "labels", "_label_index")

    def __init__(self, lines: Iterable[ProjectiveLine], labels: Optional[Iterable[str]] = None) -> None:
        lines = tuple(lines)
        if labels is None:
            labels = tuple(f"l{i + 1}" for i in range(len(lines)))
        else:
            labels = tuple(labels)
        if len(labels) != len(lines):
            raise ValueError("labels must match lines one-to-one")
        if len(set(lines)) != len(lines):
            raise ValueError("arrangement lines must be pairwise distinct")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be pairwise distinct")
        self.lines = lines
        self.labels = labels
        self._label_index = {label: i for i, label in enumerate(labels)}

    def __len__(self) -> int:
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Arrangement):
            return NotImplemented
        return self.lines == other.lines and self.labels == other.labels

    def line_index(self, key: LineKey) -> int:
        if isinstance(key, int):
            if not 0 <= key < len(self.lines):
                raise ValueError(f"line index {key} out of range")
            return key
        if isinstance(key, str):
            if key not in self._label_index:
                raise ValueError(f"no line labeled {key!r}")
            return self._label_index[key]
        if isinstance(key, ProjectiveLine):
            for i, line in enumerate(self.lines):
                if line == key:
                    return i
            raise ValueError(f"line {key} is not in the arrangement")
        raise TypeError(f"cannot interpret {key!r} as a line")

    def reorder(self, order: Sequence[LineKey]) -> "Arrangement":
        indices = [self.line_index(k) for k in order]
        if sorted(indices) != list(range(len(self.lines))):
            raise ValueError("order must cover all lines exactly once")
        return Arrangement(
            [self.lines[i] for i in indices], [self.labels[i] for i in indices]
        )

    def line_set(self) -> frozenset[ProjectiveLine]:
        return frozenset(self.lines)


@dataclass(frozen=True)
class LocusPoint:
    point: ProjectivePoint
    multiplicity: int
    line_indices: Tuple[int, ...]


class SingularLocus:
    """All pairwise intersection points of an arrangement, with incidences."""

    __slots__ = ("entries", "_by_point")

    def __init__(self, entries: Sequence[LocusPoint]) -> None:
        self.entries = tuple(entries)
        self._by_point = {entry.point: entry for entry in self.entries}

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def points(self) -> list[ProjectivePoint]:
        return [entry.point for entry in self.entries]

    def entry(self, point: ProjectivePoint) -> LocusPoint:
        return self._by_point[point]

    def t_vector(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for entry in self.entries:
            counts[entry.multiplicity] = counts.get(entry.multiplicity, 0) + 1
        return dict(sorted(counts.items()))


def singular_locus(arr: Arrangement) -> SingularLocus:
    if len(arr) < 2:
        raise ValueError("the singular locus needs at least two lines")
    incidence: Dict[ProjectivePoint, set[int]] = {}
    lines = arr.lines
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            point = meet(lines[i], lines[j])
            incidence.setdefault(point, set()).update((i, j))
    entries = [
        LocusPoint(point, len(idxs), tuple(sorted(idxs)))
        for point, idxs in incidence.items()
    ]
    entries.sort(key=lambda entry: entry.point.sort_key())
    locus = SingularLocus(entries)
    pair_total = sum(comb(entry.multiplicity, 2) for entry in locus)
    if pair_total != comb(len(arr), 2):
        raise AssertionError("pair-count identity violated; incidence bug")
    return locus


@dataclass(frozen=True)
class WeakCombinatorics:
    n: int
    t: Dict[int, int]

    def pair_count(self) -> int:
        return sum(count * comb(mult, 2) for mult, count in self.t.items())


def weak_combinatorics(arr: Arrangement) -> WeakCombinatorics:
    locus = singular_locus(arr)
    combinatorics = WeakCombinatorics(len(arr), locus.t_vector())
    if combinatorics.pair_count() != comb(len(arr), 2):
        raise AssertionError("pair-count identity violated")
    return combinatorics


def points_on_line(arr: Arrangement, line: LineKey) -> int:
    """Number of singular points on a member line (the restriction size)."""
    if len(arr) < 2:
        raise ValueError("needs at least two lines")
    index = arr.line_index(line)
    target = arr.lines[index]
    seen = set()
    for other in arr.lines:
        if other == target:
            continue
        seen.add(meet(target, other))
    return len(seen)


@dataclass(frozen=True)
class ReplayStep:
    label: str
    line: ProjectiveLine
    restriction_count: int
    exponents_after: Optional[Tuple[int, int, int]]
    valid: bool


class FreenessCertificate:
    """Ordered addition steps with exponent triples and restriction counts."""

    __slots__ = ("steps", "verdict", "failing_step")

    def __init__(self, steps: Sequence[ReplayStep], verdict: bool, failing_step: Optional[int]) -> None:
        self.steps = tuple(steps)
        self.verdict = verdict
        self.failing_step = failing_step

    def final_exponents(self) -> Optional[Tuple[int, int, int]]:
        if not self.verdict or not self.steps:
            return None
        return self.steps[-1].exponents_after

    def to_payload(self) -> dict:
        return {
            "verdict": self.verdict,
            "failing_step": self.failing_step,
            "final_exponents": list(self.final_exponents() or ()),
            "steps": [
                {
                    "label": step.label,
                    "line": str(step.line),
                    "restriction_count": step.restriction_count,
                    "exponents": list(step.exponents_after or ()),
                    "valid": step.valid,
                }
                for step in self.steps
            ],
        }


def freeness_replay(arr: Arrangement, order: Optional[Sequence[LineKey]] = None) -> FreenessCertificate:
    """Replay line additions, tracking exponents by the addition rule.

    After one line the exponents are {0,0,1}; after two, {0,1,1}. For the
    i-th line (i >= 3) with t singular points on it inside the partial
    arrangement, the step is valid iff {1, t-1} is a sub-multiset of the
    current exponents; the remaining exponent then increases by 1.
    """
    ordered = arr if order is None else arr.reorder(order)
    lines = ordered.lines
    steps: list[ReplayStep] = []
    exponents: Optional[Tuple[int, int, int]] = None
    for i, line in enumerate(lines):
        partial_points = {meet(line, other) for other in lines[:i]}
        t = len(partial_points)
        if i == 0:
            exponents = (0, 0, 1)
        elif i == 1:
            exponents = (0, 1, 1)
        else:
            pool = list(exponents)  # type: ignore[arg-type]
            valid = True
            for needed in (1, t - 1):
                if needed in pool:
                    pool.remove(needed)
                else:
                    valid = False
                    break
            if not valid:
                steps.append(ReplayStep(ordered.labels[i], line, t, None, False))
                return FreenessCertificate(steps, False, i)
            exponents = tuple(sorted((1, t - 1, pool[0] + 1)))  # type: ignore[assignment]
        if sum(exponents) != i + 1:
            raise AssertionError("exponent sum must equal the line count")
        steps.append(ReplayStep(ordered.labels[i], line, t, exponents, True))
    return FreenessCertificate(steps, True, None)


def defining_polynomial(arr: Arrangement) -> HomogeneousForm:
    """Product of the linear forms; the empty arrangement gives 1."""
    product = HomogeneousForm.constant(1)
    for line in arr.lines:
        product = product * line.form()
    return product


def transform_lines(arr: Arrangement, matrix: Sequence[Sequence[FieldElement]]) -> Arrangement:
    """Apply an invertible coordinate change to every line's coefficients."""
    if not det3(matrix):
        raise ValueError("transformation matrix must be invertible")
    new_lines = []
    for line in arr.lines:
        a, b, c = line.coords
        new_lines.append(
            ProjectiveLine(
                matrix[0][0] * a + matrix[0][1] * b + matrix[0][2] * c,
                matrix[1][0] * a + matrix[1][1] * b + matrix[1][2] * c,
                matrix[2][0] * a + matrix[2][1] * b + matrix[2][2] * c,
            )
        )
    return Arrangement(new_lines, arr.labels)


def vanishing_order(form: HomogeneousForm, point: ProjectivePoint, lines: Sequence[ProjectiveLine]) -> int:
    """Number of times incident lines divide `form` at `point`, counted by
    iterated exact division (used to audit the defining polynomial)."""
    order = 0
    current = form
    progress = True
    while progress and not current.is_zero() and current.degree > 0:
        progress = False
        for line in lines:
            if not incident(point, line):
                continue
            quotient = current.exact_divide(line.form())
            if quotient is not None:
                current = quotient
                order += 1
                progress = True
                break
    return order
