"""Sparse homogeneous forms in x, y, z over Q(sqrt(3)).

The monomial order everywhere is graded lexicographic with x > y > z;
within a fixed degree this is plain lexicographic comparison of the
exponent triples.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Tuple, Union

from .field import FieldElement

Monomial = Tuple[int, int, int]
VARIABLE_NAMES = ("x", "y", "z")

_MONOMIAL_PART = re.compile(r"([xyz])(?:\^(\d+))?$")


def monomial_degree(mono: Monomial) -> int:
    return mono[0] + mono[1] + mono[2]


def monomial_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])


def monomials_of_degree(d: int) -> list[Monomial]:
    """All degree-d monomials in descending graded-lex order (x > y > z)."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def monomial_index(mono: Monomial) -> int:
    """Position of `mono` within monomials_of_degree(its degree)."""
    a, b, c = mono
    d = a + b + c
    block_offset = (d - a) * (d - a + 1) // 2
    return block_offset + (d - a - b)


def format_monomial(mono: Monomial) -> str:
    if mono == (0, 0, 0):
        return "1"
    parts = []
    for name, exp in zip(VARIABLE_NAMES, mono):
        if exp == 1:
            parts.append(name)
        elif exp > 1:
            parts.append(f"{name}^{exp}")
    return "*".join(parts)


def parse_monomial(text: str) -> Monomial:
    compact = "".join(text.split())
    if compact == "1":
        return (0, 0, 0)
    exps = [0, 0, 0]
    for piece in compact.split("*"):
        m = _MONOMIAL_PART.fullmatch(piece)
        if not m:
            raise ValueError(f"cannot parse monomial {text!r}")
        idx = VARIABLE_NAMES.index(m.group(1))
        exps[idx] += int(m.group(2)) if m.group(2) else 1
    return (exps[0], exps[1], exps[2])


CoefficientLike = Union[FieldElement, int, Fraction]


class HomogeneousForm:
    """A homogeneous polynomial of fixed degree with sparse exact terms.

    The zero form keeps an explicit degree so graded containers stay
    well-typed. Stored coefficients are always nonzero.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[Monomial, CoefficientLike] = ()) -> None:
        if degree < 0:
            raise ValueError("degree must be non-negative")
        clean: dict[Monomial, FieldElement] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coef in items:
            mono = (int(mono[0]), int(mono[1]), int(mono[2]))
            if min(mono) < 0:
                raise ValueError(f"negative exponent in {mono}")
            if monomial_degree(mono) != degree:
                raise ValueError(f"monomial {mono} has degree != {degree}")
            fe = coef if isinstance(coef, FieldElement) else FieldElement(coef)
            if fe:
                accumulated = clean.get(mono)
                if accumulated is None:
                    clean[mono] = fe
                else:
                    total = accumulated + fe
                    if total:
                        clean[mono] = total
                    else:
                        del clean[mono]
        self.degree = degree
        self.terms = clean

    @classmethod
    def zero(cls, degree: int) -> "HomogeneousForm":
        return cls(degree, {})

    @classmethod
    def constant(cls, value: CoefficientLike) -> "HomogeneousForm":
        return cls(0, {(0, 0, 0): value})

    @classmethod
    def monomial(cls, mono: Monomial, coef: CoefficientLike = 1) -> "HomogeneousForm":
        return cls(monomial_degree(mono), {mono: coef})

    @classmethod
    def variable(cls, index: int) -> "HomogeneousForm":
        mono = tuple(1 if i == index else 0 for i in range(3))
        return cls(1, {mono: 1})  # type: ignore[dict-item]

    @classmethod
    def linear(cls, a: CoefficientLike, b: CoefficientLike, c: CoefficientLike) -> "HomogeneousForm":
        return cls(1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self.terms.items())))

    def coefficient(self, mono: Monomial) -> FieldElement:
        return self.terms.get(mono, FieldElement(0))

    def sorted_terms(self) -> list[tuple[Monomial, FieldElement]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("the zero form has no leading monomial")
        return max(self.terms)

    def __neg__(self) -> "HomogeneousForm":
        return HomogeneousForm(self.degree, {m: -c for m, c in self.terms.items()})

    def __add__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        merged = dict(self.terms)
        for mono, coef in other.terms.items():
            merged[mono] = merged.get(mono, FieldElement(0)) + coef
        return HomogeneousForm(self.degree, merged)

    def __sub__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: CoefficientLike) -> "HomogeneousForm":
        fe = factor if isinstance(factor, FieldElement) else FieldElement(factor)
        if not fe:
            return HomogeneousForm.zero(self.degree)
        return HomogeneousForm(self.degree, {m: c * fe for m, c in self.terms.items()})

    def __mul__(self, other: "HomogeneousForm | FieldElement | int | Fraction") -> "HomogeneousForm":
        if isinstance(other, (FieldElement, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        degree = self.degree + other.degree
        acc: dict[Monomial, FieldElement] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = monomial_mul(m1, m2)
                prod = c1 * c2
                existing = acc.get(mono)
                acc[mono] = prod if existing is None else existing + prod
        return HomogeneousForm(degree, acc)

    def __rmul__(self, other: "FieldElement | int | Fraction") -> "HomogeneousForm":
        if isinstance(other, (FieldElement, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def partial(self, var: "int | str") -> "HomogeneousForm":
        """Formal partial derivative; degree drops by one (floor at zero)."""
        idx = VARIABLE_NAMES.index(var) if isinstance(var, str) else var
        new_degree = max(self.degree - 1, 0)
        acc: dict[Monomial, FieldElement] = {}
        for mono, coef in self.terms.items():
            exp = mono[idx]
            if exp == 0:
                continue
            dropped = list(mono)
            dropped[idx] -= 1
            acc[(dropped[0], dropped[1], dropped[2])] = coef * exp
        return HomogeneousForm(new_degree, acc)

    def evaluate(self, point: Iterable[FieldElement]) -> FieldElement:
        coords = [c if isinstance(c, FieldElement) else FieldElement(c) for c in point]
        if len(coords) != 3:
            raise ValueError("evaluation needs three coordinates")
        powers: list[list[FieldElement]] = []
        for coord in coords:
            row = [FieldElement(1)]
            for _ in range(self.degree):
                row.append(row[-1] * coord)
            powers.append(row)
        total = FieldElement(0)
        for (a, b, c), coef in self.terms.items():
            total = total + coef * powers[0][a] * powers[1][b] * powers[2][c]
        return total

    def exact_divide(self, divisor: "HomogeneousForm") -> Optional["HomogeneousForm"]:
        """Quotient by a linear form when division is exact, else None.

        Iterated leading-term elimination under graded lex; the divisor's
        leading variable must divide every surviving leading monomial.
        """
        if not isinstance(divisor, HomogeneousForm) or divisor.degree != 1:
            raise ValueError("divisor must be a linear form")
        if divisor.is_zero():
            raise ValueError("division by the zero form")
        if self.is_zero():
            return HomogeneousForm.zero(max(self.degree - 1, 0))
        if self.degree < 1:
            return None
        unit_monos: tuple[Monomial, ...] = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        lead_var = next(i for i, mono in enumerate(unit_monos) if divisor.coefficient(mono))
        lead_coef = divisor.coefficient(unit_monos[lead_var])
        quotient: dict[Monomial, FieldElement] = {}
        remainder = self
        while remainder:
            lm = remainder.leading_monomial()
            if lm[lead_var] == 0:
                return None
            step = list(lm)
            step[lead_var] -= 1
            step_mono: Monomial = (step[0], step[1], step[2])
            coef = remainder.terms[lm] / lead_coef
            quotient[step_mono] = coef
            remainder = remainder - HomogeneousForm.monomial(step_mono, coef) * divisor
        return HomogeneousForm(self.degree - 1, quotient)

    def primitive(self) -> "HomogeneousForm":
        """Canonical scaling: integer-pair coefficients with content 1 and a
        positive leading coefficient."""
        if not self.terms:
            return self
        denom = 1
        for coef in self.terms.values():
            denom = denom * coef.rat.denominator // _gcd(denom, coef.rat.denominator)
            denom = denom * coef.irr.denominator // _gcd(denom, coef.irr.denominator)
        content = 0
        for coef in self.terms.values():
            content = _gcd(content, abs(int(coef.rat * denom)))
            content = _gcd(content, abs(int(coef.irr * denom)))
        factor = Fraction(denom, content if content else 1)
        scaled = self.scale(factor)
        if scaled.terms[scaled.leading_monomial()].sign() < 0:
            scaled = -scaled
        return scaled

    def __str__(self) -> str:
        return format_form(self)

    def __repr__(self) -> str:
        return f"HomogeneousForm(degree={self.degree}, terms={format_form(self)!r})"

    def __iter__(self) -> Iterator[tuple[Monomial, FieldElement]]:
        return iter(self.sorted_terms())


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def format_form(form: HomogeneousForm) -> str:
    if form.is_zero():
        return "0"
    pieces = []
    for mono, coef in form.sorted_terms():
        if mono == (0, 0, 0):
            pieces.append(f"({coef})")
        elif coef == FieldElement(1):
            pieces.append(format_monomial(mono))
        else:
            pieces.append(f"({coef})*{format_monomial(mono)}")
    return "+".join(pieces)


def parse_form(text: str, degree: "int | None" = None) -> HomogeneousForm:
    """Parse the textual form syntax emitted by format_form.

    Each term is `(coef)*mono`, `(coef)`, or a bare monomial with implied
    coefficient 1; terms are joined with `+`. `degree` is required only to
    disambiguate the zero form "0".
    """
    compact = "".join(text.split())
    if not compact:
        raise ValueError("empty form text")
    if compact == "0":
        return HomogeneousForm.zero(degree if degree is not None else 0)
    term_texts: list[str] = []
    depth = 0
    current = ""
    for ch in compact:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        if ch == "+" and depth == 0:
            term_texts.append(current)
            current = ""
        else:
            current += ch
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    term_texts.append(current)
    terms: list[tuple[Monomial, FieldElement]] = []
    for term in term_texts:
        if not term:
            raise ValueError(f"empty term in {text!r}")
        if term.startswith("("):
            close = term.index(")")
            coef = FieldElement.parse(term[1:close])
            rest = term[close + 1 :]
            if rest.startswith("*"):
                mono = parse_monomial(rest[1:])
            elif rest:
                raise ValueError(f"malformed term {term!r}")
            else:
                mono = (0, 0, 0)
        else:
            coef = FieldElement(1)
            mono = parse_monomial(term)
        terms.append((mono, coef))
    inferred = monomial_degree(terms[0][0])
    if degree is not None and degree != inferred:
        raise ValueError(f"form text has degree {inferred}, expected {degree}")
    return HomogeneousForm(inferred, terms)
