from fractions import Fraction
from functools import reduce
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aperyproof.apery_form import build_R
from aperyproof.ball_form import build_ball_R
from aperyproof.exact_core import (
    DecompositionError,
    PartialFraction,
    PoleError,
    Poly,
    ProductForm,
    RatFunc,
    harmonic,
    lcm_upto,
    pf_decompose,
    primes_upto,
    rf_arithmetic,
    solve_linear,
    InconsistentSystem,
    RankDeficient,
)
from aperyproof.highprec import HighPrec

t = Poly.t()

small_ints = st.integers(min_value=-20, max_value=20)
polys = st.lists(small_ints, max_size=6).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


# -- Poly -------------------------------------------------------------------

def test_zero_poly_has_sentinel_degree():
    assert Poly().degree == float("-inf")
    assert Poly([0, 0]).is_zero()
    assert Poly([1, 2, 0]).degree == 1


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b - b == a


@given(polys, nonzero_polys)
def test_divmod_reconstructs(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(nonzero_polys, nonzero_polys, nonzero_polys)
@settings(max_examples=60)
def test_gcd_recovers_common_factor(a, b, c):
    g = (a * c).gcd(b * c)
    assert ((a * c) % g).is_zero() and ((b * c) % g).is_zero()
    assert (g % c.monic()).is_zero()


@given(polys, small_ints)
def test_shift_matches_evaluation(p, c):
    assert p.shift(c)(3) == p(3 + c)


def test_gcd_coprime_is_one():
    assert (t**2 + 1).gcd(t - 3) == Poly([1])


# -- RatFunc ----------------------------------------------------------------

def test_derivative_power_rule():
    assert rf_arithmetic("derivative", RatFunc(1, t * t)) == RatFunc(-2, t**3)


def test_shift1_substitution():
    assert rf_arithmetic("shift1", RatFunc(1, t)) == RatFunc(1, t + 1)


def test_eval_R1_at_2():
    assert rf_arithmetic("eval", build_R(1), 2) == Fraction(1, 36)


def test_eval_at_pole_reports_location():
    with pytest.raises(PoleError) as exc:
        build_R(2).eval(-1)
    assert exc.value.pole == -1


def test_canonical_form_cancels_common_factors():
    f = RatFunc((t - 1) * (t + 2), (t - 1) * (t + 5) * 3)
    assert f.num == Poly([Fraction(2, 3), Fraction(1, 3)])
    assert f.den == t + 5


def test_add_mul_against_evaluation():
    f = RatFunc(t + 1, t * t + 3)
    g = RatFunc(2, t - 4)
    x = Fraction(7, 3)
    assert rf_arithmetic("add", f, g)(x) == f(x) + g(x)
    assert rf_arithmetic("mul", f, g)(x) == f(x) * g(x)
    assert (f / g)(x) == f(x) / g(x)


def test_product_form_expansion_agrees_with_generic_path():
    pf = ProductForm.build(3, Poly([1, 1, 1]), [(2, 1, 2), (1, -4, -3), (1, 0, 1)])
    r = RatFunc.from_product(pf)
    generic = RatFunc(r.num, r.den)
    assert r == generic
    for x in (Fraction(1, 3), 5, -7):
        assert r(x) == pf.eval(x)
    assert r.shift(1) == RatFunc(generic.num.shift(1), generic.den.shift(1))


def test_product_form_cancels_cofactor_roots():
    pf = ProductForm.build(1, (t + 2) * (t - 9), [(1, 2, -3)])
    assert dict(pf.exps) == {(1, 2): -2}
    assert pf.cofactor == t - 9


@pytest.mark.parametrize("n", [1, 2, 3])
def test_derivative_against_finite_differences(n):
    # symmetric difference at h = 1e-15 on 60-digit values; error ~ h^2
    f = build_R(n)
    x = Fraction(7, 2) + n
    h = Fraction(1, 10**15)
    up = HighPrec.from_fraction(f(x + h), 60)
    dn_ = HighPrec.from_fraction(f(x - h), 60)
    fd = (up - dn_) * (1 / (2 * h))
    exact = f.derivative()(x)
    assert abs(fd.value - exact) < Fraction(1, 10**20)
    assert f.eval_derivative(x) == exact


# -- partial fractions --------------------------------------------------------

def test_pf_R1():
    pf = pf_decompose(build_R(1))
    assert pf.nonzero() == {(0, 2): 1, (1, 2): 4, (0, 1): -4, (1, 1): 4}


def test_pf_R0():
    assert pf_decompose(build_R(0)).nonzero() == {(0, 2): 1}


def test_pf_ball_R1():
    pf = pf_decompose(build_ball_R(1), [(0, 4), (1, 4)])
    assert pf.nonzero() == {(0, 4): -2, (1, 4): 2, (0, 3): 5, (1, 3): 5, (0, 2): -5, (1, 2): 5}
    assert pf.coefficient(0, 1) == 0 and pf.coefficient(1, 1) == 0


@pytest.mark.parametrize("n", range(0, 6))
def test_pf_factored_and_generic_paths_agree(n):
    r = build_ball_R(n)
    generic = RatFunc(r.num, r.den)
    poles = [(k, 4) for k in range(n + 1)]
    if n == 0:
        poles = [(0, 3)]
    a = pf_decompose(r, poles)
    b = pf_decompose(generic, poles)
    assert a.nonzero() == b.nonzero()


@pytest.mark.parametrize("n", range(0, 5))
def test_pf_reconstruction_identity(n):
    for f in (build_R(n), build_ball_R(n)):
        pf = pf_decompose(f, [(k, 4) for k in range(n + 1)])
        assert pf.reconstruct() == RatFunc(f.num, f.den)
        # decompose(reconstruct) is the identity on coefficients
        again = pf_decompose(pf.reconstruct(), [(k, 4) for k in range(n + 1)])
        assert again.nonzero() == pf.nonzero()


coeff_maps = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(1, 3)),
    st.fractions(max_denominator=50).filter(bool),
    min_size=1, max_size=6,
)


@given(coeff_maps)
@settings(max_examples=40)
def test_pf_roundtrip_property(terms):
    pf = PartialFraction(terms)
    f = pf.reconstruct()
    back = pf_decompose(f, [(k, 3) for k in range(4)])
    assert back.nonzero() == pf.nonzero()


def test_pf_rejects_polynomial_part():
    with pytest.raises(DecompositionError):
        pf_decompose(RatFunc(t**3, t * t), [(0, 2)])


def test_pf_rejects_missing_pole():
    with pytest.raises(DecompositionError):
        pf_decompose(RatFunc(1, (t + 1) * (t + 2)), [(1, 1)])


# -- lcm and harmonic sums ----------------------------------------------------

@pytest.mark.parametrize("n,expected", [(0, 1), (1, 1), (6, 60)])
def test_lcm_examples(n, expected):
    assert lcm_upto(n).value == expected


@pytest.mark.parametrize("n", range(0, 80))
def test_lcm_against_brute_force(n):
    d = lcm_upto(n).value
    assert d == reduce(lcm, range(1, n + 1), 1)
    assert all(d % m == 0 for m in range(1, n + 1))
    for p in primes_upto(3 * n + 3):
        q = p
        while q <= n:
            q *= p
        assert d % q != 0  # no prime power above n divides D_n
    if n:
        assert lcm_upto(n + 1).value % d == 0


@given(st.integers(1, 40), st.integers(0, 40), st.sampled_from([2, 3, 4]))
def test_harmonic_denominators_cleared(n, k, j):
    k = min(k, n)
    assert (lcm_upto(n).value ** j * harmonic(j, k)).denominator == 1


# -- exact linear systems ------------------------------------------------------

def test_solve_linear_unique():
    assert solve_linear([[1, 1], [1, -1], [2, 0]], [3, 1, 4]) == [2, 1]


def test_solve_linear_inconsistent_and_rank():
    with pytest.raises(InconsistentSystem):
        solve_linear([[1, 1], [1, 1]], [1, 2])
    with pytest.raises(RankDeficient):
        solve_linear([[1, 1], [2, 2]], [1, 2])
