"""Apéry's rational function R_n, its linear forms and its telescoping certificate."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence, Union

from .exact_core import (
    InconsistentSystem,
    Poly,
    ProductForm,
    RankDeficient,
    RatFunc,
    clear_denominators,
    dn,
    harmonic,
    pf_decompose,
    solve_linear,
    sum_int_polys,
)
from .highprec import HighPrec


class InvariantError(ArithmeticError):
    """A property that the mathematics guarantees has failed."""


class ConsistencyError(ArithmeticError):
    """Two independent computations of the same object disagree."""


class DomainError(ValueError):
    pass


class ShapeError(ValueError):
    pass


class RankError(ValueError):
    pass


def recurrence_coeffs(n: int) -> tuple[int, int, int]:
    """(a, b, c) with a x_{n+1} + b x_n + c x_{n-1} = 0."""
    return (n + 1) ** 3, -(2 * n + 1) * (17 * n * n + 17 * n + 5), n ** 3


# ---------------------------------------------------------------------------
# R_n and coefficients
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def apery_product(n: int) -> ProductForm:
    factors = [(1, -j, 2) for j in range(1, n + 1)] + [(1, j, -2) for j in range(n + 1)]
    return ProductForm.build(1, None, factors)


def build_R(n: int) -> RatFunc:
    """R_n(t) = ((t-1)...(t-n) / (t(t+1)...(t+n)))^2."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    return RatFunc.from_product(apery_product(n))


@dataclass(frozen=True)
class AperyCoefficients:
    n: int
    a2: tuple[Fraction, ...]
    a1: tuple[Fraction, ...]

    def check(self) -> dict[str, bool]:
        d = dn(self.n)
        return {
            "a2_integral": all(x.denominator == 1 and x > 0 for x in self.a2),
            "a1_sum_zero": sum(self.a1) == 0,
            "Dn_a1_integral": all((d * x).denominator == 1 for x in self.a1),
        }


def _signed_binomials(n: int) -> list[int]:
    return [(-1) ** (n - k) * comb(n + k, n) * comb(n, k) for k in range(n + 1)]


@lru_cache(maxsize=None)
def apery_coeffs(n: int, cross_check: bool = True) -> AperyCoefficients:
    """A_{2k} = c_k^2 and A_{1k} = 2 c_k sum_{l != k} c_l / (l - k)."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    c = _signed_binomials(n)
    a2 = tuple(Fraction(x * x) for x in c)
    a1 = tuple(
        2 * c[k] * sum((Fraction(c[l], l - k) for l in range(n + 1) if l != k), Fraction(0))
        for k in range(n + 1)
    )
    out = AperyCoefficients(n, a2, a1)
    if cross_check:
        pf = pf_decompose(build_R(n))
        for k in range(n + 1):
            if pf.coefficient(k, 2) != a2[k] or pf.coefficient(k, 1) != a1[k]:
                raise ConsistencyError(f"coefficient mismatch at n={n}, k={k}")
    return out


@dataclass(frozen=True)
class LinearForm:
    """F = u * zeta(3) - v."""

    n: int
    u: Fraction
    v: Fraction
    kind: str = "apery"

    def integrality(self) -> dict[str, bool]:
        d = dn(self.n)
        if self.kind == "apery":
            return {"u_integral": self.u.denominator == 1,
                    "Dn3_v_integral": (d ** 3 * self.v).denominator == 1}
        return {"Dn_u_integral": (d * self.u).denominator == 1,
                "Dn4_v_integral": (d ** 4 * self.v).denominator == 1,
                "Dn3_v_integral": (d ** 3 * self.v).denominator == 1,
                "u_integral": self.u.denominator == 1}

    def evaluate(self, zeta3: HighPrec) -> HighPrec:
        return zeta3 * self.u - self.v


@lru_cache(maxsize=None)
def apery_uv(n: int) -> LinearForm:
    co = apery_coeffs(n, cross_check=False)
    u = 2 * sum(co.a2)
    v = sum((2 * co.a2[k] * harmonic(3, k) + co.a1[k] * harmonic(2, k) for k in range(n + 1)),
            Fraction(0))
    form = LinearForm(n, Fraction(u), v, "apery")
    bad = [name for name, ok in form.integrality().items() if not ok]
    if bad:
        raise InvariantError(f"n={n}: {', '.join(bad)}")
    return form


def apery_u_oracle(n: int) -> int:
    return 2 * sum(comb(n + k, n) ** 2 * comb(n, k) ** 2 for k in range(n + 1))


# ---------------------------------------------------------------------------
# certificates and telescoping
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    """S(t) = prefactor_num(t) / prefactor_den(t) * R(t)."""

    n: int
    prefactor_num: Poly
    prefactor_den: Poly
    kind: str
    den_factors: tuple[tuple[int, int], ...] = ()

    def product_form(self) -> ProductForm:
        pre = ProductForm.build(1, self.prefactor_num, [(a, b, -1) for a, b in self.den_factors])
        return family_product(self.kind, self.n) * pre

    def S(self) -> RatFunc:
        return RatFunc.from_product(self.product_form())


def family_product(kind: str, n: int) -> ProductForm:
    if kind == "apery":
        return apery_product(n)
    if kind == "ball":
        from .ball_form import ball_product
        return ball_product(n)
    raise ValueError(f"unknown family {kind!r}")


def certificate_s(n: int) -> Certificate:
    """s_n(t) = 4(2n+1)(-2t^2 + t + (2n+1)^2)."""
    if n < 1:
        raise DomainError("the telescoping identity holds for n >= 1")
    m = 2 * n + 1
    num = Poly([4 * m * m * m, 4 * m, -8 * m])
    return Certificate(n, num, Poly([1]), "apery")


def telescoping_terms(cert: Certificate) -> list[tuple[int, ProductForm]]:
    n = cert.n
    a, b, c = recurrence_coeffs(n)
    S = cert.product_form()
    return [
        (a, family_product(cert.kind, n + 1)),
        (b, family_product(cert.kind, n)),
        (c, family_product(cert.kind, n - 1)),
        (-1, S.shift(1)),
        (1, S),
    ]


def telescoping_holds(cert: Certificate) -> bool:
    """Exact check of the three-term identity against S(t+1) - S(t)."""
    return not sum_int_polys(clear_denominators(telescoping_terms(cert)))


@dataclass(frozen=True)
class AperyVerdict:
    n: int
    identity_ok: bool
    s_prime_at_1_is_zero: bool
    double_zero_at_1: bool

    @property
    def ok(self) -> bool:
        return self.identity_ok and self.s_prime_at_1_is_zero and self.double_zero_at_1


def verify_apery_telescoping(n: int, cert: Certificate | None = None) -> AperyVerdict:
    if n < 1:
        raise DomainError("the telescoping identity holds for n >= 1")
    cert = cert or certificate_s(n)
    S = cert.product_form()
    return AperyVerdict(
        n,
        telescoping_holds(cert),
        RatFunc.from_product(S).eval_derivative(1) == 0,
        apery_product(n).zero_order(1) >= 2 and S.zero_order(1) >= 2,
    )


SHAPES = {
    "apery_deg2": ("apery", 2),
    "ball_deg6": ("ball", 6),
}


def _shape_den_factors(kind: str, n: int) -> tuple[tuple[int, int], ...]:
    if kind == "ball":
        return ((2, n), (1, 2 * n - 1), (1, 2 * n))
    return ()


def fit_certificate(n: int, shape: str) -> Certificate:
    """Solve for the prefactor numerator making the telescoping identity exact.

    Any two solutions differ by p with (p/Q) R periodic in t; such a function
    vanishing at infinity is zero, so the solution is unique when it exists.
    """
    if n < 1:
        raise DomainError("the telescoping identity holds for n >= 1")
    if shape not in SHAPES:
        raise ShapeError(f"unknown shape {shape!r}")
    kind, deg = SHAPES[shape]
    dfac = _shape_den_factors(kind, n)
    a, b, c = recurrence_coeffs(n)
    base = family_product(kind, n) * ProductForm.build(1, None, [(p, q, -1) for p, q in dfac])
    terms = [
        (a, family_product(kind, n + 1)),
        (b, family_product(kind, n)),
        (c, family_product(kind, n - 1)),
    ]
    for i in range(deg + 1):
        bi = base * ProductForm.build(1, Poly([0] * i + [1]))
        terms += [(1, bi.shift(1)), (1, bi)]
    polys = clear_denominators(terms)
    lhs = sum_int_polys(polys[:3])
    cols = [(polys[3 + 2 * i], polys[4 + 2 * i]) for i in range(deg + 1)]
    cols = [sum_int_polys([p, [-x for x in q]]) for p, q in cols]
    nrows = max([len(lhs)] + [len(col) for col in cols])
    rows = [[col[r] if r < len(col) else 0 for col in cols] for r in range(nrows)]
    rhs = [lhs[r] if r < len(lhs) else 0 for r in range(nrows)]
    try:
        sol = solve_linear(rows, rhs)
    except InconsistentSystem as exc:
        raise ShapeError(f"no certificate of shape {shape} for n={n}") from exc
    except RankDeficient as exc:
        raise RankError(f"certificate of shape {shape} not unique for n={n}") from exc
    den = Poly([1])
    for p, q in dfac:
        den = den * Poly([q, p])
    return Certificate(n, Poly(sol), den, kind, dfac)


# ---------------------------------------------------------------------------
# recurrence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecurrenceWindow:
    n: int
    ok: bool
    residual: Union[Fraction, HighPrec]


def recurrence_check(seq: Sequence[Union[int, Fraction, HighPrec]], start_n: int = 0) -> list[RecurrenceWindow]:
    """Check a x_{n+1} + b x_n + c x_{n-1} = 0 on every window of ``seq``.

    ``seq[i]`` is the term of index ``start_n + i``. High-precision entries
    pass when the residual interval contains zero.
    """
    if len(seq) < 3:
        raise ValueError("need at least three terms")
    out = []
    for i in range(1, len(seq) - 1):
        n = start_n + i
        a, b, c = recurrence_coeffs(n)
        x0, x1, x2 = seq[i - 1], seq[i], seq[i + 1]
        if any(isinstance(x, HighPrec) for x in (x0, x1, x2)):
            res = _hp(x2, x0, x1) * a + _hp(x1, x0, x2) * b + _hp(x0, x1, x2) * c
            out.append(RecurrenceWindow(n, res.contains_zero(), res))
        else:
            res = a * Fraction(x2) + b * Fraction(x1) + c * Fraction(x0)
            out.append(RecurrenceWindow(n, res == 0, res))
    return out


def _hp(x, *others) -> HighPrec:
    if isinstance(x, HighPrec):
        return x
    scale = max(o.scale for o in others if isinstance(o, HighPrec))
    return HighPrec.from_fraction(x, scale)
