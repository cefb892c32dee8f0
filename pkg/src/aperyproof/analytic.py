"""Certified numerics: zeta(3), the linear forms, their coincidence and the gate."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .apery_form import ConsistencyError, apery_product, apery_uv, recurrence_check
from .ball_form import ball_coeffs, ball_product, ball_uv, growth_bound
from .exact_core import dn, harmonic, pf_decompose, RatFunc
from .highprec import HighPrec, rate_interval


@lru_cache(maxsize=None)
def bernoulli_even(p: int) -> tuple[Fraction, ...]:
    """B_2, B_4, ..., B_2p."""
    m = 2 * p
    B = [Fraction(1)]
    for k in range(1, m + 1):
        B.append(-sum((comb(k + 1, i) * B[i] for i in range(k)), Fraction(0)) / (k + 1))
    return tuple(B[2 * j] for j in range(1, p + 1))


def _rising(s: int, r: int) -> int:
    out = 1
    for i in range(r):
        out *= s + i
    return out


@lru_cache(maxsize=None)
def power_tail(s: int, a: int, scale: int) -> HighPrec:
    """sum_{m >= a} m^-s for s >= 2 with a certified radius.

    Direct terms up to N - 1, then the integral, half the first term and
    Bernoulli corrections at N. The remainder after p corrections is at most
    2 zeta(2p) / (2 pi)^(2p) * |f^(2p-1)(N)| < 4 / 36^p * (s)_(2p-1) N^(1-s-2p).
    """
    if s < 2 or a < 1:
        raise ValueError("need s >= 2 and a >= 1")
    work = scale + 10
    N = max(a, scale // 2 + 20)
    unit = 10 ** work
    acc = 0
    for m in range(a, N):
        acc += unit // m ** s
    err = N - a  # one ulp per truncated term
    target = Fraction(1, 10 ** (work + 2))
    em = Fraction(1, (s - 1) * N ** (s - 1)) + Fraction(1, 2 * N ** s)
    p = 0
    while True:
        p += 1
        if p > 4 * N:
            raise ArithmeticError("Euler-Maclaurin tail did not converge")
        bound = Fraction(4 * _rising(s, 2 * p - 1), 36 ** p * N ** (s + 2 * p - 1))
        if bound < target:
            break
    B = bernoulli_even(p)
    for j in range(1, p + 1):
        # f^(2j-1)(N) = -(s)_(2j-1) N^(-s-2j+1)
        deriv = -Fraction(_rising(s, 2 * j - 1), N ** (s + 2 * j - 1))
        em -= B[j - 1] / factorial(2 * j) * deriv
    tail = HighPrec.from_fraction(em, work)
    total = HighPrec(acc, work, err) + tail
    total = HighPrec(total.mantissa, work, total.error + 1)  # remainder < 10^-(work+2)
    return total.rescale(scale)


def zeta3_bracket(n: int) -> tuple[Fraction, Fraction]:
    """zeta(3) lies in (v_n/u_n, v_n/u_n + bound_n/u_n) since 0 < F_n < bound_n."""
    form = apery_uv(n)
    hi_bound = growth_bound(n, 30 + 2 * n).upper()
    base = form.v / form.u
    return base, base + hi_bound / form.u


@lru_cache(maxsize=None)
def zeta3(digits: int) -> HighPrec:
    """zeta(3) with |result - zeta(3)| <= radius < 10^-digits."""
    if digits < 1:
        raise ValueError("digits must be positive")
    z = power_tail(3, 1, digits + 5)
    lo, hi = zeta3_bracket(max(2, digits // 3 + 2))
    if not (z.lower() <= hi and lo <= z.upper()):
        raise ConsistencyError("zeta(3) disagrees with the linear-form bracket")
    return z


def _log10_ceil(x: Fraction) -> int:
    x = abs(Fraction(x))
    if x < 1:
        return 0
    return len(str(x.numerator // x.denominator))


def form_via_linear(kind: str, n: int, digits: int) -> HighPrec:
    form = apery_uv(n) if kind == "apery" else ball_uv(n)
    z = zeta3(digits + _log10_ceil(form.u) + 10)
    return form.evaluate(z).rescale(digits + 5)


def _apery_term(n: int, t: int) -> Fraction:
    """-R_n'(t) for integer t >= 1, from the product's logarithmic derivative."""
    if t <= n:
        return Fraction(0)
    r = apery_product(n).eval(t)
    logd = sum((Fraction(1, t - j) for j in range(1, n + 1)), Fraction(0)) \
        - sum((Fraction(1, t + j) for j in range(n + 1)), Fraction(0))
    return -2 * r * logd


def form_via_series(kind: str, n: int, digits: int, cut: int | None = None) -> HighPrec:
    """Partial sum of the defining series plus a certified partial-fraction tail.

    The tail sum_{t > T} c / (t + k)^j equals c * (Z(j, T+1) - (H_j(T+k) - H_j(T)))
    for j >= 2 where Z(j, a) = sum_{m >= a} m^-j; order-one terms are
    summed in closed form because their coefficients add up to zero.
    """
    T = cut if cut is not None else n + 20
    if kind == "apery":
        pf = pf_decompose(RatFunc.from_product(apery_product(n)))
        # -R' has coefficient 2 A_2k at order 3 and A_1k at order 2
        coeff = {}
        for (k, j), c in pf.terms.items():
            coeff[(k, j + 1)] = j * c
        partial = sum((_apery_term(n, t) for t in range(1, T + 1)), Fraction(0))
    else:
        coeff = dict(ball_coeffs(n).b)
        prod = ball_product(n)
        partial = sum((prod.eval(t) for t in range(n + 1, T + 1)), Fraction(0))
    by_order: dict[int, Fraction] = {}
    exact = partial
    for (k, j), c in coeff.items():
        if not c:
            continue
        if j == 1:
            exact -= c * (harmonic(1, T + k) - harmonic(1, T))
        else:
            by_order[j] = by_order.get(j, Fraction(0)) + c
            exact -= c * (harmonic(j, T + k) - harmonic(j, T))
    if by_order.get(1):
        raise ConsistencyError("order-one coefficients do not cancel")
    weight = sum((abs(c) for c in by_order.values()), Fraction(0))
    scale = digits + _log10_ceil(weight) + 10
    total = HighPrec.from_fraction(exact, scale)
    for j, c in sorted(by_order.items()):
        if c:
            total = total + power_tail(j, T + 1, scale) * c
    return total.rescale(digits + 5)


def eval_form(kind: str, n: int, digits: int = 40, cross_check: bool = True) -> HighPrec:
    """F_n (kind 'apery') or Ball's series (kind 'ball') to ``digits`` places."""
    if kind not in ("apery", "ball"):
        raise ValueError(f"unknown kind {kind!r}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = form_via_linear(kind, n, digits)
    if cross_check:
        b = form_via_series(kind, n, digits)
        if not a.overlaps(b):
            raise ConsistencyError(f"{kind} n={n}: {a} vs {b}")
    return a


# ---------------------------------------------------------------------------
# coincidence of the two forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoincidenceVerdict:
    n: int
    exact_equal: bool
    numeric_ok: bool
    difference: HighPrec

    @property
    def ok(self) -> bool:
        return self.exact_equal and self.numeric_ok


@dataclass(frozen=True)
class CoincidenceReport:
    verdicts: list
    seeds_ok: bool
    recurrence_apery_ok: bool
    recurrence_ball_ok: bool

    @property
    def ok(self) -> bool:
        return (self.seeds_ok and self.recurrence_apery_ok and self.recurrence_ball_ok
                and all(v.ok for v in self.verdicts))


def coincidence_check(n_max: int, digits: int = 40) -> CoincidenceReport:
    """Compare Apéry's F_n (via u zeta(3) - v) with Ball's series (summed directly)."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    verdicts = []
    tol = Fraction(1, 10 ** (digits - 2))
    for n in range(n_max + 1):
        ap, bl = apery_uv(n), ball_uv(n)
        fa = form_via_linear("apery", n, digits)
        fb = form_via_series("ball", n, digits)
        diff = fa - fb
        numeric = diff.contains_zero() and abs(diff.value) + diff.radius < tol
        verdicts.append(CoincidenceVerdict(n, (ap.u, ap.v) == (bl.u, bl.v), numeric, diff))
    seeds = all((apery_uv(n).u, apery_uv(n).v) == (ball_uv(n).u, ball_uv(n).v) for n in (0, 1))
    rec_a = all(w.ok for w in recurrence_check([apery_uv(n).u for n in range(n_max + 1)])
                + recurrence_check([apery_uv(n).v for n in range(n_max + 1)])) if n_max >= 2 else True
    rec_b = all(w.ok for w in recurrence_check([ball_uv(n).u for n in range(n_max + 1)])
                + recurrence_check([ball_uv(n).v for n in range(n_max + 1)])) if n_max >= 2 else True
    return CoincidenceReport(verdicts, seeds, rec_a, rec_b)


# ---------------------------------------------------------------------------
# the irrationality gate
# ---------------------------------------------------------------------------

def gate_constant(scale: int = 30) -> HighPrec:
    """27 (sqrt 2 - 1)^4 = 27 (17 - 12 sqrt 2)."""
    lo, hi = rate_interval(scale + 5)
    return HighPrec.from_interval(27 * lo, 27 * hi, scale)


def bound15_interval(n: int, q: int, scale: int) -> tuple[Fraction, Fraction]:
    lo, hi = rate_interval(scale + 2 * n + 10)
    c = 20 * q * (n + 1) ** 4 * 27 ** n
    return c * lo ** n, c * hi ** n


def gate_digits(n: int) -> int:
    # F_n ~ 0.0295^n; keep 25 significant digits
    return int(1.54 * n) + 25


@dataclass(frozen=True)
class GateReport:
    n: int
    q: int
    D_n: int
    gate_value: HighPrec
    bound15: HighPrec
    positivity: bool
    below_bound: bool
    below_one: bool
    dn_below_3n: bool


@dataclass(frozen=True)
class GateSummary:
    constant: HighPrec
    constant_below_one: bool
    reports: list
    first_bound_below_one: int
    first_value_below_one: int | None
    monotone_from: int | None
    ratios: list = field(default_factory=list)

    @property
    def chain_ok(self) -> bool:
        return all(r.positivity and r.below_bound for r in self.reports)


def gate_report(n: int, q: int = 1) -> GateReport:
    digits = gate_digits(n)
    F = eval_form("apery", n, digits, cross_check=False)
    d = dn(n)
    value = F * (q * d ** 3)
    lo, hi = bound15_interval(n, q, digits)
    b = HighPrec.from_interval(lo, hi, digits)
    return GateReport(n, q, d, value, b, value.is_positive(), value.certainly_below(b),
                      b.certainly_below(1), d < 3 ** n)


def first_bound_below_one(q: int = 1, limit: int = 100000) -> int:
    """Smallest n with 20 q (n+1)^4 27^n (sqrt2-1)^(4n) < 1, certified both ways."""
    for n in range(limit):
        lo, hi = bound15_interval(n, q, 20)
        if hi < 1:
            return n
        if lo < 1:
            raise ArithmeticError(f"bound at n={n} too close to 1 to decide")
    raise ArithmeticError("no crossing below the limit")


def irrationality_gate(n_max: int, q: int = 1) -> GateSummary:
    if n_max < 2 or q < 1:
        raise ValueError("need n_max >= 2 and q >= 1")
    const = gate_constant()
    reports = [gate_report(n, q) for n in range(n_max + 1)]
    first_val = next((r.n for r in reports if r.gate_value.certainly_below(1)), None)
    mono = None
    for i in range(len(reports) - 1, 0, -1):
        if reports[i].gate_value.certainly_below(reports[i - 1].gate_value):
            mono = reports[i - 1].n
        else:
            break
    ratios = []
    rate = HighPrec.from_interval(*rate_interval(40), 35)
    for n in range(n_max):
        a = eval_form("apery", n, gate_digits(n + 1), cross_check=False)
        b = eval_form("apery", n + 1, gate_digits(n + 1), cross_check=False)
        ratio = b.value / a.value
        ratios.append((n, ratio, ratio / rate.value - 1))
    return GateSummary(const, const.certainly_below(1), reports,
                       first_bound_below_one(q), first_val, mono, ratios)
