"""Incidence-structure isomorphism of line arrangements.

Two arrangements are isomorphic when some bijection of lines induces a
bijection of singular points preserving incidence. The search refines on
per-line multiplicity profiles, then backtracks over profile-compatible
assignments with pairwise meet-multiplicity consistency, and finally
verifies the induced point bijection in full.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .arrangement import Arrangement, singular_locus


class _IncidenceData:
    __slots__ = ("n", "profiles", "colors", "point_sets")

    def __init__(self, arr: Arrangement) -> None:
        self.n = len(arr)
        locus = singular_locus(arr) if self.n >= 2 else None
        per_line: list[list[int]] = [[] for _ in range(self.n)]
        self.colors: dict[tuple[int, int], int] = {}
        self.point_sets: set[frozenset[int]] = set()
        if locus is not None:
            for entry in locus:
                self.point_sets.add(frozenset(entry.line_indices))
                for i in entry.line_indices:
                    per_line[i].append(entry.multiplicity)
                for a in entry.line_indices:
                    for b in entry.line_indices:
                        if a < b:
                            self.colors[(a, b)] = entry.multiplicity
        self.profiles: list[tuple[int, ...]] = [tuple(sorted(p)) for p in per_line]

    def color(self, i: int, j: int) -> int:
        if i == j:
            return 0
        key = (i, j) if i < j else (j, i)
        return self.colors.get(key, 1)


def _search(a: _IncidenceData, b: _IncidenceData) -> Optional[List[int]]:
    n = a.n
    candidates: list[list[int]] = []
    for i in range(n):
        matches = [j for j in range(n) if b.profiles[j] == a.profiles[i]]
        if not matches:
            return None
        candidates.append(matches)
    order = sorted(range(n), key=lambda i: (len(candidates[i]), i))
    assignment: list[int] = [-1] * n
    used = [False] * n

    def backtrack(depth: int) -> bool:
        if depth == n:
            return True
        i = order[depth]
        for j in candidates[i]:
            if used[j]:
                continue
            consistent = True
            for prev_depth in range(depth):
                k = order[prev_depth]
                if a.color(i, k) != b.color(assignment[k], j):
                    consistent = False
                    break
            if not consistent:
                continue
            assignment[i] = j
            used[j] = True
            if backtrack(depth + 1):
                return True
            assignment[i] = -1
            used[j] = False
        return False

    return assignment if backtrack(0) else None


def incidence_isomorphic(a: Arrangement, b: Arrangement) -> bool:
    if len(a) != len(b):
        return False
    if len(a) <= 1:
        return True
    data_a = _IncidenceData(a)
    data_b = _IncidenceData(b)
    if sorted(data_a.profiles) != sorted(data_b.profiles):
        return False
    mapping = _search(data_a, data_b)
    if mapping is None:
        return False
    mapped_points = {frozenset(mapping[i] for i in s) for s in data_a.point_sets}
    return mapped_points == data_b.point_sets
