from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aperyproof.apery_form import Certificate, DomainError, apery_uv, fit_certificate
from aperyproof.ball_form import (
    TranscriptionAlarm,
    ball_bound,
    ball_certificate,
    ball_coeffs,
    ball_findings,
    ball_prefactor,
    ball_uv,
    bisect_tau0,
    bound_analysis,
    build_ball_R,
    growth_bound,
    stationary_poly_identity,
    verify_ball_telescoping,
)
from aperyproof.exact_core import Poly, RatFunc, dn

t = Poly.t()


def test_R_tilde_0():
    assert build_ball_R(0) == RatFunc(2, t**3)


def test_R_tilde_1_at_2():
    assert build_ball_R(1)(2) == Fraction(5, 324)


@pytest.mark.parametrize("n", range(1, 6))
def test_R_tilde_zeros(n):
    r = build_ball_R(n)
    assert all(r(k) == 0 for k in range(1, n + 1))
    assert r.den.degree - r.num.degree == 2 * n + 3


@given(st.integers(0, 6), st.fractions(min_value=0, max_value=50, max_denominator=20))
@settings(max_examples=60, deadline=None)
def test_R_tilde_positive_beyond_n(n, x):
    x = n + x + Fraction(1, 97)
    assert build_ball_R(n)(x) > 0


def test_coeffs_n1():
    co = ball_coeffs(1)
    assert co.column(4) == [-2, 2]
    assert co.column(3) == [5, 5]
    assert co.column(2) == [-5, 5]
    assert co.column(1) == [0, 0]


def test_coeffs_n0():
    co = ball_coeffs(0)
    assert co.b[(0, 3)] == 2
    assert all(c == 0 for key, c in co.b.items() if key != (0, 3))


@pytest.mark.parametrize("n", range(0, 15))
def test_vanishing_sums(n):
    assert not any(ball_coeffs(n).vanishing_sums().values())


@pytest.mark.parametrize("n,u,v", [(0, 2, 0), (1, 10, 12), (2, 146, Fraction(351, 2))])
def test_ball_uv_examples(n, u, v):
    form = ball_uv(n)
    assert (form.u, form.v) == (u, v)


@pytest.mark.parametrize("n", range(0, 20))
def test_ball_findings(n):
    f = ball_findings(n)
    assert f.equals_apery
    assert f.integrality["Dn_u_integral"] and f.integrality["Dn4_v_integral"]
    # stronger pattern observed: D_n^3 v is integral too
    assert (dn(n) ** 3 * f.form.v).denominator == 1


def test_prefactor_n1_coefficients():
    p = ball_prefactor(1)
    assert p.coeffs[0] == 330
    assert p.coeffs[5] == -7
    assert p.degree == 6


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_transcription_matches_fit(n):
    cert = ball_certificate(n, cross_check=True)
    assert cert.prefactor_num == fit_certificate(n, "ball_deg6").prefactor_num


def test_transcription_alarm_carries_both(monkeypatch):
    import aperyproof.ball_form as bf

    good = bf.ball_prefactor
    monkeypatch.setattr(bf, "ball_prefactor", lambda n: good(n) + Poly([0, 1]))
    with pytest.raises(TranscriptionAlarm) as exc:
        bf.ball_certificate(2, cross_check=True)
    assert exc.value.fitted == good(2)
    assert exc.value.transcribed == good(2) + Poly([0, 1])


@pytest.mark.parametrize("n", [1, 3, 6])
def test_ball_telescoping_examples(n):
    v = verify_ball_telescoping(n)
    assert v.identity_ok and v.S_at_1_is_zero and v.ok


def test_ball_telescoping_perturbed():
    c = ball_certificate(2)
    bad = Certificate(2, c.prefactor_num + Poly([0, 0, 1]), c.prefactor_den, "ball", c.den_factors)
    assert not verify_ball_telescoping(2, bad).identity_ok


def test_ball_domain():
    with pytest.raises(DomainError):
        ball_certificate(0)
    with pytest.raises(DomainError):
        verify_ball_telescoping(0)


def test_bound_n0():
    b = ball_bound(0)
    assert b.lower_ok and b.upper_ok
    assert b.value.digits_str(4) == "2.4041"
    assert b.bound_value.value == 20


def test_bound_n1():
    b = ball_bound(1)
    assert b.value.digits_str(6) == "0.020569"
    assert abs(float(b.bound_value) - 9.42) < 0.01


@pytest.mark.parametrize("n", range(0, 21))
def test_bound_holds(n):
    b = ball_bound(n, 40)
    assert b.lower_ok and b.upper_ok


def test_growth_bound_against_mpmath():
    mpmath.mp.dps = 80
    for n in (0, 3, 17):
        ref = 20 * (n + 1) ** 4 * (mpmath.sqrt(2) - 1) ** (4 * n)
        assert growth_bound(n, 60).contains(Fraction(mpmath.nstr(ref, 78)))


def test_stationary_polynomial_identity():
    assert stationary_poly_identity()


def test_bisection_bracket():
    lo, hi = bisect_tau0(30)
    mpmath.mp.dps = 50
    tau = Fraction(mpmath.nstr(-mpmath.mpf(1) / 2 + mpmath.sqrt(mpmath.mpf(5) / 4 + mpmath.sqrt(2)), 45))
    assert lo <= tau + Fraction(1, 10**44) and tau - Fraction(1, 10**44) <= hi


def test_bisection_rejects_bad_bracket():
    with pytest.raises(ArithmeticError):
        bisect_tau0(10, Fraction(2), Fraction(3))


def test_bound_analysis_examples():
    ba = bound_analysis(40)
    assert all(ba.checks(30).values())
    # the reference decimals are rounded to six places
    assert abs(ba.tau0.value - Fraction("1.132242")) < Fraction(1, 10**6)
    assert abs(ba.sup_f.value - Fraction("-3.525494")) < Fraction(1, 10**6)
    assert ba.rate.digits_str(7) == "0.0294372"
    assert ba.rate_exact == "17 - 12*sqrt(2)"
    assert ba.prefactor_constant == 20
    mpmath.mp.dps = 60
    assert ba.e_squared.contains(Fraction(mpmath.nstr(mpmath.e ** 2, 55)))


def test_bound_analysis_precision_floor():
    with pytest.raises(ValueError):
        bound_analysis(10)


def test_ball_v_matches_direct_series():
    # ṽ from the harmonic formula against mpmath summation of the series
    mpmath.mp.dps = 40
    for n in (1, 2, 3):
        form = ball_uv(n)
        series = mpmath.nsum(lambda x: mpmath.mpf(build_ball_R(n)(int(x)).numerator)
                             / build_ball_R(n)(int(x)).denominator, [n + 1, mpmath.inf])
        expected = form.u * mpmath.zeta(3) - mpmath.mpf(form.v.numerator) / form.v.denominator
        assert abs(series - expected) < mpmath.mpf(10) ** -25
        assert (form.u, form.v) == (apery_uv(n).u, apery_uv(n).v)
