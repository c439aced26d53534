"""Exact arithmetic in the real quadratic field Q(e), where e = sqrt(3)."""
from __future__ import annotations

from fractions import Fraction
from typing import Union

Rationalish = Union[int, Fraction]
Coercible = Union["FieldElement", int, Fraction]


class FieldElement:
    """An element ``rat + irr*e`` of Q(sqrt(3)), with exact rational parts.

    ``e*e == 3`` exactly. Instances are value objects: hashable, totally
    ordered by the real embedding with ``e > 0``, and never mutated after
    construction. ``int`` and ``Fraction`` operands coerce automatically.
    """

    __slots__ = ("rat", "irr")

    def __init__(self, rat: Rationalish = 0, irr: Rationalish = 0) -> None:
        self.rat = Fraction(rat)
        self.irr = Fraction(irr)

    @staticmethod
    def _coerce(value: Coercible) -> "FieldElement | None":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (int, Fraction)):
            return FieldElement(value)
        return None

    def __bool__(self) -> bool:
        return bool(self.rat) or bool(self.irr)

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)  # type: ignore[arg-type]
        if o is None:
            return NotImplemented
        return self.rat == o.rat and self.irr == o.irr

    def __hash__(self) -> int:
        return hash((self.rat, self.irr))

    def __neg__(self) -> "FieldElement":
        return FieldElement(-self.rat, -self.irr)

    def __pos__(self) -> "FieldElement":
        return self

    def __add__(self, other: Coercible) -> "FieldElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.rat + o.rat, self.irr + o.irr)

    __radd__ = __add__

    def __sub__(self, other: Coercible) -> "FieldElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.rat - o.rat, self.irr - o.irr)

    def __rsub__(self, other: Coercible) -> "FieldElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: Coercible) -> "FieldElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(
            self.rat * o.rat + 3 * self.irr * o.irr,
            self.rat * o.irr + self.irr * o.rat,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "FieldElement":
        return FieldElement(self.rat, -self.irr)

    def norm(self) -> Fraction:
        """Field norm ``rat**2 - 3*irr**2``; zero only for the zero element."""
        return self.rat * self.rat - 3 * self.irr * self.irr

    def inverse(self) -> "FieldElement":
        n = self.norm()
        if n == 0:
            # rat**2 == 3*irr**2 forces rat == irr == 0 since sqrt(3) is irrational
            raise ZeroDivisionError("inverse of zero in Q(sqrt(3))")
        return FieldElement(self.rat / n, -self.irr / n)

    def __truediv__(self, other: Coercible) -> "FieldElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Coercible) -> "FieldElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def sign(self) -> int:
        """Sign of ``rat + irr*sqrt(3)`` as a real number: -1, 0, or 1."""
        a, b = self.rat, self.irr
        if not a and not b:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        # opposite strict signs; compare |a| with |b|*sqrt(3) via squares
        rational_dominates = a * a > 3 * b * b
        if a > 0:
            return 1 if rational_dominates else -1
        return -1 if rational_dominates else 1

    def _cmp(self, other: Coercible) -> "int | None":
        o = self._coerce(other)
        if o is None:
            return None
        return (self - o).sign()

    def __lt__(self, other: Coercible) -> bool:
        c = self._cmp(other)
        if c is None:
            return NotImplemented
        return c < 0

    def __le__(self, other: Coercible) -> bool:
        c = self._cmp(other)
        if c is None:
            return NotImplemented
        return c <= 0

    def __gt__(self, other: Coercible) -> bool:
        c = self._cmp(other)
        if c is None:
            return NotImplemented
        return c > 0

    def __ge__(self, other: Coercible) -> bool:
        c = self._cmp(other)
        if c is None:
            return NotImplemented
        return c >= 0

    def __abs__(self) -> "FieldElement":
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        return float(self.rat) + float(self.irr) * 3 ** 0.5

    def __str__(self) -> str:
        if not self.irr:
            return str(self.rat)
        if self.irr == 1:
            etail = "e"
        elif self.irr == -1:
            etail = "-e"
        else:
            etail = f"{self.irr}*e"
        if not self.rat:
            return etail
        joiner = "" if etail.startswith("-") else "+"
        return f"{self.rat}{joiner}{etail}"

    def __repr__(self) -> str:
        return f"FieldElement({self.rat!r}, {self.irr!r})"

    @classmethod
    def parse(cls, text: str) -> "FieldElement":
        """Parse the textual syntax: `p/q`, `r/s*e`, `p/q+r/s*e`, `e`, `-e`."""
        compact = "".join(text.split())
        if not compact:
            raise ValueError("empty field-element text")
        parts: list[str] = []
        current = ""
        for ch in compact:
            if ch in "+-" and current and current[-1] not in "*/+-":
                parts.append(current)
                current = ch
            else:
                current += ch
        parts.append(current)
        rat = Fraction(0)
        irr = Fraction(0)
        try:
            for part in parts:
                if part.endswith("e"):
                    coef = part[:-1].rstrip("*")
                    if coef in ("", "+"):
                        irr += 1
                    elif coef == "-":
                        irr -= 1
                    else:
                        irr += Fraction(coef)
                else:
                    rat += Fraction(part)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse field element {text!r}") from exc
        return cls(rat, irr)


ZERO = FieldElement(0)
ONE = FieldElement(1)
E = FieldElement(0, 1)


def parse_field_element(text: str) -> FieldElement:
    return FieldElement.parse(text)
