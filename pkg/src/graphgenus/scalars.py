"""Exact scalars graded by integer powers of pi^2.

Curvature norms and wheel weights are rational multiples of powers of
pi^2, so they are kept symbolic: a value is ``coef * (pi^2)**pi2``.
The coefficient stays a Fraction as long as every operation is exact;
a root that does not exist in the rationals degrades the coefficient
to a float (double precision, relative error a few ulps).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math


def nth_root_int(value: int, k: int) -> int | None:
    """Exact integer k-th root of a nonnegative integer, or None."""
    if value < 0:
        return None
    if value in (0, 1):
        return value
    root = round(value ** (1.0 / k))
    for cand in (root - 1, root, root + 1):
        if cand >= 0 and cand ** k == value:
            return cand
    return None


def nth_root_fraction(value: Fraction, k: int) -> Fraction | None:
    """Exact rational k-th root, or None when no such rational exists."""
    if value < 0:
        return None
    num = nth_root_int(value.numerator, k)
    den = nth_root_int(value.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


@dataclass(frozen=True)
class PiScalar:
    """A number coef * (pi^2)**pi2; exact when coef is a Fraction."""

    coef: Fraction | float
    pi2: int = 0

    @staticmethod
    def of(value, pi2: int = 0) -> "PiScalar":
        return PiScalar(Fraction(value), pi2)

    @property
    def exact(self) -> bool:
        return isinstance(self.coef, Fraction)

    def __bool__(self) -> bool:
        return bool(self.coef)

    def __neg__(self) -> "PiScalar":
        return PiScalar(-self.coef, self.pi2)

    def _coerce(self, other) -> "PiScalar":
        if isinstance(other, PiScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return PiScalar(Fraction(other), 0)
        if isinstance(other, float):
            return PiScalar(other, 0)
        raise TypeError(f"cannot combine PiScalar with {type(other)!r}")

    def __add__(self, other) -> "PiScalar":
        other = self._coerce(other)
        if self.coef == 0:
            return other
        if other.coef == 0:
            return self
        if self.pi2 != other.pi2:
            raise ValueError("cannot add scalars of different pi^2 grade exactly")
        return PiScalar(self.coef + other.coef, self.pi2)

    def __radd__(self, other) -> "PiScalar":
        return self.__add__(other)

    def __sub__(self, other) -> "PiScalar":
        return self.__add__(-self._coerce(other))

    def __mul__(self, other) -> "PiScalar":
        other = self._coerce(other)
        return PiScalar(self.coef * other.coef, self.pi2 + other.pi2)

    def __rmul__(self, other) -> "PiScalar":
        return self.__mul__(other)

    def __truediv__(self, other) -> "PiScalar":
        other = self._coerce(other)
        return PiScalar(self.coef / other.coef, self.pi2 - other.pi2)

    def __pow__(self, k: int) -> "PiScalar":
        if not isinstance(k, int) or k < 0:
            raise ValueError("PiScalar powers must be nonnegative integers")
        return PiScalar(self.coef ** k, self.pi2 * k)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, float)):
            other = self._coerce(other)
        if not isinstance(other, PiScalar):
            return NotImplemented
        if self.coef == 0 and other.coef == 0:
            return True
        return self.coef == other.coef and self.pi2 == other.pi2

    def __hash__(self):
        if self.coef == 0:
            return hash(0)
        return hash((self.coef, self.pi2))

    def root(self, k: int) -> "PiScalar":
        """k-th root; exact when the grade divides and the coef has one."""
        if k == 1:
            return self
        if self.exact and self.pi2 % k == 0:
            exact = nth_root_fraction(self.coef, k)
            if exact is not None:
                return PiScalar(exact, self.pi2 // k)
        return PiScalar(float(self) ** (1.0 / k), 0)

    def __float__(self) -> float:
        return float(self.coef) * math.pi ** (2 * self.pi2)

    def render(self, use_float: bool = False) -> str:
        """Deterministic text form: '48', '192*pi^2', '-1/5760*pi^4'."""
        if use_float or not self.exact:
            return f"{float(self):.12g}"
        if self.pi2 == 0:
            return str(self.coef)
        power = "pi^2" if self.pi2 == 1 else f"pi^{2 * self.pi2}"
        return f"{self.coef}*{power}"


def parse_pi_scalar(text: str) -> PiScalar:
    """Parse 'p/q', 'p/q*pi^2', 'p/q*pi^4', ... (inverse of render)."""
    text = text.strip()
    if "*" in text:
        head, tail = text.split("*", 1)
        if not tail.startswith("pi^"):
            raise ValueError(f"bad scalar literal {text!r}")
        power = int(tail[3:])
        if power % 2 != 0:
            raise ValueError("only even powers of pi are representable")
        return PiScalar(Fraction(head), power // 2)
    return PiScalar(Fraction(text), 0)
