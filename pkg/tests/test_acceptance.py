"""Acceptance criteria, each run at its stated range and tolerance.

Each test carries ``@pytest.mark.acceptance(number, title)``; the conftest
hook prints a PASS/FAIL line for every criterion after the run.
"""

import json
import math
import subprocess
import sys
from fractions import Fraction
from math import comb

import pytest

from aperyproof.analytic import (
    coincidence_check,
    form_via_linear,
    form_via_series,
    irrationality_gate,
    zeta3,
)
from aperyproof.apery_form import (
    apery_coeffs,
    apery_uv,
    certificate_s,
    fit_certificate,
    recurrence_check,
    verify_apery_telescoping,
)
from aperyproof.ball_form import (
    ball_bound,
    ball_certificate,
    ball_coeffs,
    ball_uv,
    bound_analysis,
    verify_ball_telescoping,
)
from aperyproof.exact_core import dn
from aperyproof.highprec import rate_interval

pytestmark = pytest.mark.usefixtures("criterion")


@pytest.mark.acceptance(1, "exactness suite, n <= 50")
def test_exactness():
    for n in range(51):
        d = dn(n)
        form = apery_uv(n)
        assert form.u.denominator == 1, n
        assert (d**3 * form.v).denominator == 1, n
        co = apery_coeffs(n)
        assert sum(co.a1) == 0, n
        assert all((d * a).denominator == 1 for a in co.a1), n
        b = ball_coeffs(n)
        assert all(s == 0 for s in b.vanishing_sums().values()), n
        bf = ball_uv(n)
        assert (d * bf.u).denominator == 1, n
        assert (d**4 * bf.v).denominator == 1, n


@pytest.mark.acceptance(2, "certificate suite, 1 <= n <= 30")
def test_certificates():
    for n in range(1, 31):
        va = verify_apery_telescoping(n)
        assert va.identity_ok and va.s_prime_at_1_is_zero, n
        vb = verify_ball_telescoping(n)
        assert vb.identity_ok and vb.S_at_1_is_zero, n
        assert fit_certificate(n, "apery_deg2").prefactor_num == certificate_s(n).prefactor_num, n
        # raises TranscriptionAlarm carrying both polynomials on mismatch
        ball_certificate(n, cross_check=True)


@pytest.mark.acceptance(3, "sequence values")
def test_sequence_values():
    u = [apery_uv(n).u for n in range(4)]
    v = [apery_uv(n).v for n in range(3)]
    assert u == [2, 10, 146, 2890]
    assert v == [0, 12, Fraction(351, 2)]
    oracle = [2 * sum(comb(n + k, n) ** 2 * comb(n, k) ** 2 for k in range(n + 1)) for n in (2, 3)]
    assert u[2:] == oracle
    # v_2 from the recurrence with seeds v_0, v_1: 8 v_2 = 3 * 39 * v_1 - v_0
    assert Fraction(3 * 39 * 12 - 0, 8) == v[2]


@pytest.mark.acceptance(4, "recurrence suite, 1 <= n <= 49")
def test_recurrence():
    N = 50
    seqs = [[apery_uv(n).u for n in range(N + 1)], [apery_uv(n).v for n in range(N + 1)],
            [ball_uv(n).u for n in range(N + 1)], [ball_uv(n).v for n in range(N + 1)]]
    for seq in seqs:
        windows = recurrence_check(seq)
        assert [w.n for w in windows] == list(range(1, N))
        assert all(w.ok for w in windows)
    # 60 significant digits: F_n shrinks like 10^(-1.54 n)
    digits = 60 + math.ceil(1.54 * N)
    F = [form_via_linear("apery", n, digits) for n in range(N + 1)]
    Ft = [form_via_series("ball", n, digits) for n in range(N + 1)]
    for seq in (F, Ft):
        windows = recurrence_check(seq)
        assert all(w.ok for w in windows), [w.n for w in windows if not w.ok]


@pytest.mark.acceptance(5, "growth bound and stationary point")
def test_growth_bound():
    for n in range(21):
        b = ball_bound(n, 60)
        assert b.lower_ok and b.upper_ok, n
    ba = bound_analysis(40)
    checks = ba.checks(30)
    assert checks["fprime_zero"] and checks["tau0_agree"]
    assert checks["sup_f_closed_form"] and checks["polynomial_identity"]


@pytest.mark.acceptance(6, "coincidence of the two forms")
def test_coincidence():
    for n in range(31):
        a, b = apery_uv(n), ball_uv(n)
        assert (a.u, a.v) == (b.u, b.v), n
    rep = coincidence_check(20, 40)
    assert rep.ok


@pytest.mark.acceptance(7, "gate reproduction")
def test_gate():
    s = irrationality_gate(40, 1)
    assert s.constant.digits_str(4) == "0.7948"
    assert s.constant_below_one
    for r in s.reports:
        if r.n >= 2:
            assert r.positivity and r.below_bound, r.n
    assert s.first_bound_below_one is not None and s.first_value_below_one is not None
    assert s.first_value_below_one < s.first_bound_below_one


@pytest.mark.acceptance(8, "convergence behaviour")
def test_convergence():
    n = 30
    digits = 60 + math.ceil(1.54 * (n + 1))
    a = form_via_linear("apery", n, digits)
    b = form_via_linear("apery", n + 1, digits)
    lo, hi = rate_interval(40)
    rate = (lo + hi) / 2
    assert abs(b.value / a.value / rate - 1) < Fraction(5, 100)
    z = zeta3(150).value
    errs = [abs(z - apery_uv(m).v / apery_uv(m).u) for m in range(1, 31)]
    assert all(x > y for x, y in zip(errs, errs[1:]))
    # order of magnitude: at least 3n log10(1/0.0295)/2 correct digits
    for m, e in enumerate(errs, start=1):
        assert -math.log10(e) >= 3 * m * math.log10(1 / 0.0295) / 2, m


@pytest.mark.acceptance(9, "CLI determinism and exit codes")
def test_cli_determinism():
    cmd = [sys.executable, "-m", "aperyproof", "verify", "--n-max", "20", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    assert first.returncode == 0 and second.returncode == 0
    assert first.stdout == second.stdout
    assert json.loads(first.stdout)["passed"] is True
    bad = subprocess.run([sys.executable, "-m", "aperyproof", "verify", "--n-max", "-3"],
                         capture_output=True, check=False)
    assert bad.returncode == 2
