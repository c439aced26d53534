"""Text file formats: arrangements, label orders, fat-point schemes, reports.

All formats are line-oriented UTF-8 with `#` comments.  Field elements use
the package's textual syntax (no interior whitespace), so rows split on
whitespace.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, List, Sequence, Union

from .arrangement import Arrangement
from .field import FieldElement, parse_field_element
from .ideals import FatPointScheme
from .projective import ProjectiveLine, ProjectivePoint

PathLike = Union[str, Path]


def _content_lines(path: PathLike) -> List[str]:
    out = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def write_arrangement(path: PathLike, arrangement: Arrangement) -> None:
    rows = [f"lines={len(arrangement.lines)}"]
    for line in arrangement.lines:
        rows.append(" ".join(str(c) for c in line.coords))
    Path(path).write_text("\n".join(rows) + "\n", encoding="utf-8")


def read_arrangement(path: PathLike) -> Arrangement:
    """Arrangement file: header `lines=<n>`, then n rows of three field
    elements.  Lines get default labels l1..ln in file order."""
    lines = _content_lines(path)
    if not lines or not lines[0].startswith("lines="):
        raise ValueError(f"{path}: expected 'lines=<n>' header")
    try:
        count = int(lines[0].split("=", 1)[1])
    except ValueError as exc:
        raise ValueError(f"{path}: bad line count in header") from exc
    rows = lines[1:]
    if len(rows) != count:
        raise ValueError(f"{path}: header says {count} lines, found {len(rows)}")
    built = []
    for row in rows:
        tokens = row.split()
        if len(tokens) != 3:
            raise ValueError(f"{path}: expected three field elements, got {row!r}")
        built.append(ProjectiveLine(tuple(parse_field_element(t) for t in tokens)))
    return Arrangement(built)


def write_order(path: PathLike, labels: Iterable[str]) -> None:
    Path(path).write_text("\n".join(labels) + "\n", encoding="utf-8")


def read_order(path: PathLike) -> List[str]:
    """Label order file: one label per line."""
    out = []
    for line in _content_lines(path):
        tokens = line.split()
        if len(tokens) != 1:
            raise ValueError(f"{path}: expected one label per line, got {line!r}")
        out.append(tokens[0])
    return out


def write_scheme(path: PathLike, scheme: FatPointScheme) -> None:
    rows = []
    for point, mult in zip(scheme.points, scheme.multiplicities):
        rows.append(" ".join(str(c) for c in point.coords) + f" {mult}")
    Path(path).write_text("\n".join(rows) + "\n", encoding="utf-8")


def read_scheme(path: PathLike) -> FatPointScheme:
    """Scheme file: rows `point_x point_y point_z multiplicity`."""
    assignments = []
    for line in _content_lines(path):
        tokens = line.split()
        if len(tokens) != 4:
            raise ValueError(f"{path}: expected 'px py pz m', got {line!r}")
        point = ProjectivePoint(tuple(parse_field_element(t) for t in tokens[:3]))
        try:
            mult = int(tokens[3])
        except ValueError as exc:
            raise ValueError(f"{path}: bad multiplicity in {line!r}") from exc
        assignments.append((point, mult))
    return FatPointScheme(assignments)


def write_points(path: PathLike, points: Iterable[ProjectivePoint]) -> None:
    rows = [" ".join(str(c) for c in point.coords) for point in points]
    Path(path).write_text("\n".join(rows) + "\n", encoding="utf-8")


def read_points(path: PathLike) -> List[ProjectivePoint]:
    """Point list file: rows of three field elements."""
    out = []
    for line in _content_lines(path):
        tokens = line.split()
        if len(tokens) != 3:
            raise ValueError(f"{path}: expected three field elements, got {line!r}")
        out.append(ProjectivePoint(tuple(parse_field_element(t) for t in tokens)))
    return out


def json_report(payload: dict) -> str:
    """Canonical JSON serialization: sorted keys, stable separators."""
    return json.dumps(payload, sort_keys=True, separators=(",", ": "), indent=1)
