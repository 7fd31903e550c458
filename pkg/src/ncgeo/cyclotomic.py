"""Exact arithmetic in the field Q(omega), omega a primitive cube root of unity.

Every scalar in the engine is a + b*omega with a, b rational and
omega**2 = -1 - omega.  This field contains all eigenvalues and structure
constants that show up for conjugacy-class calculi whose elements have
order three, so no floating point is ever needed.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union

RationalLike = Union[int, Fraction]
CycLike = Union["Cyclotomic", int, Fraction]


class Cyclotomic:
    """An element a + b*omega of Q(omega), stored as two Fractions."""

    __slots__ = ("re", "om")

    def __init__(self, re: RationalLike = 0, om: RationalLike = 0) -> None:
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "om", Fraction(om))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Cyclotomic is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "Cyclotomic":
        return _small_int(n)

    @classmethod
    def omega_power(cls, k: int) -> "Cyclotomic":
        """Return omega**k (1, omega, or -1-omega)."""
        k %= 3
        if k == 0:
            return ONE
        if k == 1:
            return OMEGA
        return OMEGA2

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.om

    def is_rational(self) -> bool:
        return not self.om

    def is_integer(self) -> bool:
        return not self.om and self.re.denominator == 1

    # -- field structure ---------------------------------------------------

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation, omega -> omega**2: (a, b) -> (a - b, -b)."""
        return Cyclotomic(self.re - self.om, -self.om)

    def norm(self) -> Fraction:
        """Field norm x * conj(x) = a**2 - a*b + b**2 (a rational >= 0)."""
        return self.re * self.re - self.re * self.om + self.om * self.om

    def inverse(self) -> "Cyclotomic":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(omega)")
        return Cyclotomic((self.re - self.om) / n, -self.om / n)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: CycLike) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Cyclotomic(self.re + other.re, self.om + other.om)

    __radd__ = __add__

    def __sub__(self, other: CycLike) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Cyclotomic(self.re - other.re, self.om - other.om)

    def __rsub__(self, other: CycLike) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: CycLike) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.re, self.om, other.re, other.om
        # (a + b*w)(c + d*w) = ac + (ad + bc)w + bd*w^2,  w^2 = -1 - w
        bd = b * d
        return Cyclotomic(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def __truediv__(self, other: CycLike) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: CycLike) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(-self.re, -self.om)

    def __pow__(self, k: int) -> "Cyclotomic":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- equality / hashing ------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return not self.om and self.re == other
        if isinstance(other, Cyclotomic):
            return self.re == other.re and self.om == other.om
        return NotImplemented

    def __hash__(self) -> int:
        if not self.om:
            return hash(self.re)
        return hash((self.re, self.om))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- formatting / serialization ----------------------------------------

    def __repr__(self) -> str:
        return f"Cyclotomic({self.re!r}, {self.om!r})"

    def __str__(self) -> str:
        if not self.om:
            return str(self.re)
        if not self.re:
            return f"{self.om}w"
        sign = "+" if self.om > 0 else "-"
        return f"{self.re}{sign}{abs(self.om)}w"

    def to_json(self) -> Union[str, dict]:
        """Serialize: plain "p/q" string when rational, {re, om} otherwise."""
        if not self.om:
            return str(self.re)
        return {"re": str(self.re), "om": str(self.om)}

    @classmethod
    def from_json(cls, data: Union[str, int, dict]) -> "Cyclotomic":
        if isinstance(data, dict):
            return cls(Fraction(data.get("re", 0)), Fraction(data.get("om", 0)))
        return cls(Fraction(data))


def _coerce(value: CycLike) -> "Cyclotomic":
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, int):
        return _small_int(value)
    if isinstance(value, Fraction):
        return Cyclotomic(value)
    return NotImplemented


@lru_cache(maxsize=4096)
def _small_int(n: int) -> Cyclotomic:
    """Interned integer scalars; keeps big integer matrices memory-light."""
    return Cyclotomic(n)


ZERO = Cyclotomic(0)
ONE = Cyclotomic(1)
OMEGA = Cyclotomic(0, 1)
OMEGA2 = Cyclotomic(-1, -1)


def cyc(re: RationalLike = 0, om: RationalLike = 0) -> Cyclotomic:
    """Shorthand constructor used throughout the test suite."""
    return Cyclotomic(re, om)
