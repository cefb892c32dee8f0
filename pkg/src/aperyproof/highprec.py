"""Fixed-point decimals carrying a certified error radius."""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

Number = Union[int, Fraction]


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _round_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    return q + 1 if 2 * r >= b else q


@dataclass(frozen=True)
class HighPrec:
    """Value mantissa * 10**-scale; the target lies within error * 10**-scale."""

    mantissa: int
    scale: int
    error: int = 0

    def __post_init__(self):
        if self.error < 0:
            raise ValueError("error bound must be nonnegative")

    # construction -----------------------------------------------------------

    @classmethod
    def from_fraction(cls, q: Number, scale: int) -> "HighPrec":
        q = Fraction(q)
        num = q.numerator * 10 ** scale
        m, r = divmod(num, q.denominator)
        if r == 0:
            return cls(m, scale, 0)
        return cls(_round_div(num, q.denominator), scale, 1)

    @classmethod
    def from_interval(cls, lo: Number, hi: Number, scale: int) -> "HighPrec":
        lo, hi = Fraction(lo), Fraction(hi)
        if hi < lo:
            lo, hi = hi, lo
        mid = (lo + hi) / 2
        m = _round_div(mid.numerator * 10 ** scale, mid.denominator)
        rad = (hi - lo) / 2 * 10 ** scale
        return cls(m, scale, _ceil_div(rad.numerator, rad.denominator) + 1)

    @classmethod
    def from_decimal(cls, d: decimal.Decimal, ulps: int = 1) -> "HighPrec":
        """Import a Decimal whose last digit is off by at most ``ulps``."""
        sign, digits, exp = d.as_tuple()
        m = int("".join(map(str, digits)) or "0")
        if sign:
            m = -m
        if exp > 0:
            return cls(m * 10 ** exp, 0, ulps * 10 ** exp)
        return cls(m, -exp, ulps)

    # intervals --------------------------------------------------------------

    @property
    def value(self) -> Fraction:
        return Fraction(self.mantissa, 10 ** self.scale)

    @property
    def radius(self) -> Fraction:
        return Fraction(self.error, 10 ** self.scale)

    def lower(self) -> Fraction:
        return Fraction(self.mantissa - self.error, 10 ** self.scale)

    def upper(self) -> Fraction:
        return Fraction(self.mantissa + self.error, 10 ** self.scale)

    def contains(self, x: Number) -> bool:
        return self.lower() <= Fraction(x) <= self.upper()

    def overlaps(self, other: "HighPrec") -> bool:
        return self.lower() <= other.upper() and other.lower() <= self.upper()

    def is_positive(self) -> bool:
        return self.mantissa - self.error > 0

    def is_negative(self) -> bool:
        return self.mantissa + self.error < 0

    def contains_zero(self) -> bool:
        return abs(self.mantissa) <= self.error

    def certainly_below(self, other: Union["HighPrec", Number]) -> bool:
        hi = other.lower() if isinstance(other, HighPrec) else Fraction(other)
        return self.upper() < hi

    # arithmetic -------------------------------------------------------------

    def rescale(self, scale: int) -> "HighPrec":
        if scale >= self.scale:
            f = 10 ** (scale - self.scale)
            return HighPrec(self.mantissa * f, scale, self.error * f)
        f = 10 ** (self.scale - scale)
        m, r = divmod(self.mantissa, f)
        err = _ceil_div(self.error, f)
        if r:
            m = _round_div(self.mantissa, f)
            err += 1
        return HighPrec(m, scale, err)

    def _align(self, other: "HighPrec") -> tuple["HighPrec", "HighPrec"]:
        s = max(self.scale, other.scale)
        return self.rescale(s), other.rescale(s)

    def __add__(self, other) -> "HighPrec":
        if not isinstance(other, HighPrec):
            other = HighPrec.from_fraction(other, self.scale)
        a, b = self._align(other)
        return HighPrec(a.mantissa + b.mantissa, a.scale, a.error + b.error)

    __radd__ = __add__

    def __neg__(self) -> "HighPrec":
        return HighPrec(-self.mantissa, self.scale, self.error)

    def __sub__(self, other) -> "HighPrec":
        return self + (-other if isinstance(other, HighPrec) else -Fraction(other))

    def __rsub__(self, other) -> "HighPrec":
        return (-self) + other

    def __mul__(self, other) -> "HighPrec":
        if isinstance(other, HighPrec):
            m = self.mantissa * other.mantissa
            e = (abs(self.mantissa) * other.error + abs(other.mantissa) * self.error
                 + self.error * other.error)
            return HighPrec(m, self.scale + other.scale, e).rescale(max(self.scale, other.scale))
        q = Fraction(other)
        num = self.mantissa * q.numerator
        m, r = divmod(num, q.denominator)
        err = abs(q) * self.error
        e = _ceil_div(err.numerator, err.denominator)
        if r:
            m = _round_div(num, q.denominator)
            e += 1
        return HighPrec(m, self.scale, e)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "HighPrec":
        return self * (1 / Fraction(other))

    def __pow__(self, e: int) -> "HighPrec":
        out = HighPrec(10 ** self.scale, self.scale)
        for _ in range(e):
            out = out * self
        return out

    # rendering --------------------------------------------------------------

    def digits_str(self, places: int | None = None) -> str:
        """Decimal rendering truncated toward zero."""
        places = self.scale if places is None else min(places, self.scale)
        m = abs(self.mantissa) // 10 ** (self.scale - places)
        s = str(m).rjust(places + 1, "0")
        body = s[:-places] + "." + s[-places:] if places else s
        return ("-" if self.mantissa < 0 and m else "") + body

    def error_str(self) -> str:
        return f"{self.error}e-{self.scale}"

    def __str__(self) -> str:
        return f"{self.digits_str()} +/- {self.error_str()}"

    def __float__(self) -> float:
        return self.mantissa / 10 ** self.scale


def sqrt_fraction(q: Number, scale: int) -> HighPrec:
    """sqrt(q) for rational q >= 0 as a certified interval."""
    q = Fraction(q)
    r = isqrt(q.numerator * 10 ** (2 * scale) // q.denominator)
    return HighPrec.from_interval(Fraction(r, 10 ** scale), Fraction(r + 1, 10 ** scale), scale)


def sqrt2_interval(scale: int) -> tuple[Fraction, Fraction]:
    r = isqrt(2 * 10 ** (2 * scale))
    return Fraction(r, 10 ** scale), Fraction(r + 1, 10 ** scale)


def rate_interval(scale: int) -> tuple[Fraction, Fraction]:
    """Bracket of (sqrt(2) - 1)^4 = 17 - 12 sqrt(2)."""
    lo2, hi2 = sqrt2_interval(scale)
    return 17 - 12 * hi2, 17 - 12 * lo2


def decimal_context(digits: int) -> decimal.Context:
    return decimal.Context(prec=digits + 10, rounding=decimal.ROUND_HALF_EVEN)


def to_decimal(x: Number, ctx: decimal.Context) -> decimal.Decimal:
    x = Fraction(x)
    return ctx.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator))
