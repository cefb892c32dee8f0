"""Ball's very-well-poised series and its growth bound."""

from __future__ import annotations

import decimal
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .apery_form import (
    Certificate,
    ConsistencyError,
    DomainError,
    InvariantError,
    LinearForm,
    apery_uv,
    fit_certificate,
    telescoping_holds,
)
from .exact_core import Poly, ProductForm, RatFunc, harmonic, pf_decompose
from .highprec import HighPrec, decimal_context, rate_interval, to_decimal

log = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def ball_product(n: int) -> ProductForm:
    factors = [(2, n, 1)]
    factors += [(1, -j, 1) for j in range(1, n + 1)]
    factors += [(1, j, 1) for j in range(n + 1, 2 * n + 1)]
    factors += [(1, j, -4) for j in range(n + 1)]
    return ProductForm.build(factorial(n) ** 2, None, factors)


def build_ball_R(n: int) -> RatFunc:
    """n!^2 (2t+n) (t-1)...(t-n) (t+n+1)...(t+2n) / (t(t+1)...(t+n))^4."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    return RatFunc.from_product(ball_product(n))


@dataclass(frozen=True)
class BallCoefficients:
    n: int
    b: dict

    def column(self, j: int) -> list[Fraction]:
        return [self.b.get((k, j), Fraction(0)) for k in range(self.n + 1)]

    def vanishing_sums(self) -> dict[int, Fraction]:
        return {j: sum(self.column(j)) for j in (1, 2, 4)}


@lru_cache(maxsize=None)
def ball_coeffs(n: int) -> BallCoefficients:
    pf = pf_decompose(build_ball_R(n), [(k, 4) for k in range(n + 1)])
    co = BallCoefficients(n, dict(pf.terms))
    bad = {j: s for j, s in co.vanishing_sums().items() if s}
    if bad:
        raise InvariantError(f"n={n}: nonzero coefficient sums {bad}")
    return co


@lru_cache(maxsize=None)
def ball_uv(n: int) -> LinearForm:
    """u = sum_k b[k,3], v = sum_{k,j} b[k,j] H_j(k)."""
    co = ball_coeffs(n)
    u = sum(co.column(3))
    v = sum((c * harmonic(j, k) for (k, j), c in co.b.items()), Fraction(0))
    return LinearForm(n, Fraction(u), v, "ball")


@dataclass(frozen=True)
class BallFindings:
    n: int
    form: LinearForm
    integrality: dict
    equals_apery: bool


def ball_findings(n: int) -> BallFindings:
    """Integrality of Ball's coefficients and comparison with Apéry's."""
    form = ball_uv(n)
    ap = apery_uv(n)
    return BallFindings(n, form, form.integrality(), (form.u, form.v) == (ap.u, ap.v))


# ---------------------------------------------------------------------------
# certificate
# ---------------------------------------------------------------------------

def ball_prefactor(n: int) -> Poly:
    """Degree-6 numerator of the certificate, low degree first."""
    return Poly([
        n * (153 * n**5 + 183 * n**4 + 50 * n**3 - 30 * n**2 - 22 * n - 4),
        384 * n**5 + 396 * n**4 + 97 * n**3 - 29 * n**2 - 17 * n - 2,
        358 * n**4 + 339 * n**3 + 76 * n**2 - 7 * n - 3,
        2 * n * (67 * n**2 + 71 * n + 15),
        4 * n**2 + 27 * n + 5,
        -(8 * n - 1),
        -1,
    ])


class TranscriptionAlarm(ConsistencyError):
    def __init__(self, n: int, transcribed: Poly, fitted: Poly):
        super().__init__(f"n={n}: transcribed {transcribed} != fitted {fitted}")
        self.n = n
        self.transcribed = transcribed
        self.fitted = fitted


def ball_certificate(n: int, cross_check: bool = False) -> Certificate:
    if n < 1:
        raise DomainError("the telescoping identity holds for n >= 1")
    dfac = ((2, n), (1, 2 * n - 1), (1, 2 * n))
    den = Poly([n, 2]) * Poly([2 * n - 1, 1]) * Poly([2 * n, 1])
    cert = Certificate(n, ball_prefactor(n), den, "ball", dfac)
    if cross_check:
        fitted = fit_certificate(n, "ball_deg6")
        if fitted.prefactor_num != cert.prefactor_num:
            log.warning("certificate transcription differs from fit at n=%d", n)
            raise TranscriptionAlarm(n, cert.prefactor_num, fitted.prefactor_num)
    return cert


@dataclass(frozen=True)
class BallVerdict:
    n: int
    identity_ok: bool
    S_at_1_is_zero: bool

    @property
    def ok(self) -> bool:
        return self.identity_ok and self.S_at_1_is_zero


def verify_ball_telescoping(n: int, cert: Certificate | None = None) -> BallVerdict:
    if n < 1:
        raise DomainError("the telescoping identity holds for n >= 1")
    cert = cert or ball_certificate(n)
    return BallVerdict(n, telescoping_holds(cert), cert.product_form().eval(1) == 0)


# ---------------------------------------------------------------------------
# growth bound
# ---------------------------------------------------------------------------

def growth_bound(n: int, scale: int = 60) -> HighPrec:
    """20 (n+1)^4 (17 - 12 sqrt 2)^n as a certified interval."""
    lo, hi = rate_interval(scale + 2 * n + 10)
    c = 20 * (n + 1) ** 4
    return HighPrec.from_interval(c * lo ** n, c * hi ** n, scale)


@dataclass(frozen=True)
class BallBound:
    n: int
    lower_ok: bool
    upper_ok: bool
    bound_value: HighPrec
    value: HighPrec


def ball_bound(n: int, digits: int = 60) -> BallBound:
    from .analytic import eval_form

    value = eval_form("ball", n, digits)
    bound = growth_bound(n, digits)
    res = BallBound(n, value.is_positive(), value.certainly_below(bound), bound, value)
    if not (res.lower_ok and res.upper_ok):
        raise InvariantError(f"n={n}: growth bound violated, value {value}, bound {bound}")
    return res


def stationary_poly_identity() -> bool:
    """tau^5(tau+2) - (tau-1)(tau+1)^5 == -(s)(2 s^4 - 5 s^2 - 7/8), s = tau + 1/2."""
    t = Poly.t()
    lhs = t**5 * (t + 2) - (t - 1) * (t + 1) ** 5
    s = t + Fraction(1, 2)
    rhs = -s * (2 * s**4 - 5 * s**2 - Fraction(7, 8))
    return lhs == rhs


def _fprime_positive(tau: Fraction) -> bool:
    # f'(tau) = log(tau^5 (tau+2) / ((tau-1)(tau+1)^5)) > 0 iff the ratio exceeds 1
    return tau**5 * (tau + 2) > (tau - 1) * (tau + 1) ** 5


def bisect_tau0(digits: int, lo: Fraction = Fraction(1) + Fraction(1, 10**6),
                hi: Fraction = Fraction(10)) -> tuple[Fraction, Fraction]:
    if not (_fprime_positive(lo) and not _fprime_positive(hi)):
        raise ArithmeticError("f' does not change sign on the bracket")
    width = Fraction(1, 10 ** (digits + 5))
    for _ in range(20 * (digits + 10)):
        if hi - lo < width:
            return lo, hi
        mid = (lo + hi) / 2
        if _fprime_positive(mid):
            lo = mid
        else:
            hi = mid
    raise ArithmeticError("bisection did not converge")


@dataclass(frozen=True)
class BoundAnalysis:
    tau0: HighPrec
    tau0_bisection: HighPrec
    fprime_at_tau0: HighPrec
    sup_f: HighPrec
    sup_f_reduced: HighPrec
    four_log: HighPrec
    rate: HighPrec
    rate_exact: str
    prefactor_constant: Fraction
    e_squared: HighPrec
    majorant_ok: bool
    polynomial_identity_ok: bool

    def checks(self, digits: int) -> dict[str, bool]:
        tol = Fraction(1, 10**digits)
        return {
            "tau0_agree": abs(self.tau0.value - self.tau0_bisection.value) < tol,
            "fprime_zero": abs(self.fprime_at_tau0.value) < tol,
            "sup_f_closed_form": abs(self.sup_f.value - self.four_log.value) < tol,
            "sup_f_reduced": abs(self.sup_f_reduced.value - self.four_log.value) < tol,
            "rate_prefix": self.rate.digits_str(7) == "0.0294372",
            "majorant": self.majorant_ok,
            "polynomial_identity": self.polynomial_identity_ok,
        }


def bound_analysis(precision: int = 40) -> BoundAnalysis:
    from .analytic import power_tail

    if precision < 20:
        raise ValueError("precision must be at least 20 digits")
    with decimal.localcontext(decimal_context(precision)) as ctx:
        D = lambda x: to_decimal(x, ctx)  # noqa: E731
        ln = ctx.ln
        tau = D(Fraction(-1, 2)) + (D(Fraction(5, 4)) + D(2).sqrt()).sqrt()
        f = (5 * tau * ln(tau) + (tau + 2) * ln(tau + 2)
             - (tau - 1) * ln(tau - 1) - 5 * (tau + 1) * ln(tau + 1))
        fp = ln(tau**5 * (tau + 2) / ((tau - 1) * (tau + 1) ** 5))
        reduced = 2 * ln(tau + 2) + ln(tau - 1) - 5 * ln(tau + 1)
        four_log = 4 * ln(D(2).sqrt() - 1)
        e2_dec = D(2).exp()
    lo, hi = bisect_tau0(precision)

    scale = precision + 5

    def hp(d):
        return HighPrec.from_decimal(d, ulps=100).rescale(scale)

    rlo, rhi = rate_interval(scale + 5)
    rate = HighPrec.from_interval(rlo, rhi, scale)
    e2 = hp(e2_dec)
    z3, z4, z5 = (power_tail(s, 1, scale) for s in (3, 4, 5))
    # e^2 (2 z5 + 5 n z4 + 2 n^2 z3) <= 20 (n+1)^2, term by term against 20(1 + 2n + n^2)
    majorant_ok = all(x.certainly_below(bound) for x, bound in (
        (e2 * z5 * 2, 20), (e2 * z4 * 5, 40), (e2 * z3 * 2, 20)))
    return BoundAnalysis(
        tau0=hp(tau),
        tau0_bisection=HighPrec.from_interval(lo, hi, scale),
        fprime_at_tau0=hp(fp),
        sup_f=hp(f),
        sup_f_reduced=hp(reduced),
        four_log=hp(four_log),
        rate=rate,
        rate_exact="17 - 12*sqrt(2)",
        prefactor_constant=Fraction(20),
        e_squared=e2,
        majorant_ok=majorant_ok,
        polynomial_identity_ok=stationary_poly_identity(),
    )
