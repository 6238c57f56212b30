from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CORPUS
from oracles import solvable_power_congruence
from rootdensity.bfset import Fraction, as_rational, bf_contains, select_fraction, solve_t
from rootdensity.intpoly import fixed_divisor, parse_poly
from rootdensity.modarith import sieve_primes

X2_1 = parse_poly("x^2+1")
CUBIC = parse_poly("x^3-x+3")


@pytest.mark.parametrize(
    "f, a, b, expected",
    [(X2_1, 1, 3, True), (CUBIC, 1, 5, False), (CUBIC, 2, 5, True), (CUBIC, 1, 3, False)],
)
def test_bf_contains_examples(f, a, b, expected):
    assert bf_contains(f, a, b) is expected


@pytest.mark.parametrize("a, b", [(0, 5), (5, 5), (1, 2), (1, 9)])
def test_bf_contains_rejects(a, b):
    with pytest.raises(ValueError):
        bf_contains(X2_1, a, b)


def test_fraction_type():
    assert Fraction(2, 5).value == Q(2, 5)
    assert str(Fraction(2, 5)) == "2/5"
    with pytest.raises(ValueError):
        Fraction(5, 5)


def test_as_rational():
    assert as_rational(0.1) == Q(1, 10)
    assert as_rational("0.333") == Q(333, 1000)
    assert as_rational("1/3") == Q(1, 3)


@pytest.mark.parametrize(
    "f, alpha, eps, b_max, expected",
    [(X2_1, Q(1, 3), "0.01", 100, Fraction(1, 3)), (X2_1, "0.5", "0.1", 100, Fraction(2, 5))],
)
def test_select_fraction_examples(f, alpha, eps, b_max, expected):
    assert select_fraction(f, alpha, eps, b_max) == expected


def test_select_fraction_odd_degree_example():
    frac = select_fraction(CUBIC, "0.4", "0.05", 1000)
    assert abs(frac.value - Q(2, 5)) <= Q(1, 20)
    r = fixed_divisor(CUBIC)
    assert solvable_power_congruence(frac.a, 2, -r, frac.b)
    assert bf_contains(CUBIC, frac.a, frac.b)


def test_select_fraction_budget():
    assert select_fraction(X2_1, "0.999999", "1e-9", 5) is None
    with pytest.raises(ValueError):
        select_fraction(X2_1, 0, "0.1", 10)
    with pytest.raises(ValueError):
        select_fraction(X2_1, "0.5", 0, 10)


@pytest.mark.parametrize("alpha", [Q(k, 100) for k in range(5, 100, 10)])
def test_density_smoke(alpha):
    frac = select_fraction(CUBIC, alpha, Q(1, 20), 10**4)
    assert frac is not None
    assert abs(frac.value - alpha) <= Q(1, 20)
    assert bf_contains(CUBIC, frac.a, frac.b)


@settings(max_examples=200, deadline=None)
@given(
    st.sampled_from(CORPUS),
    st.fractions(min_value=Q(1, 1000), max_value=Q(999, 1000), max_denominator=1000),
    st.sampled_from([Q(1, 5), Q(1, 20), Q(1, 100), Q(1, 1000)]),
)
def test_select_fraction_contract(f, alpha, eps):
    frac = select_fraction(f, alpha, eps, 10**4)
    assert frac is not None
    assert abs(frac.value - alpha) <= eps
    assert bf_contains(f, frac.a, frac.b)


@pytest.mark.parametrize("f, frac, expected", [(X2_1, Fraction(1, 3), 2), (X2_1, Fraction(2, 5), 2), (CUBIC, Fraction(2, 5), 1)])
def test_solve_t_examples(f, frac, expected):
    assert solve_t(f, frac) == expected


def test_solve_t_rejects_non_member():
    with pytest.raises(ValueError):
        solve_t(CUBIC, Fraction(1, 5))


def test_solve_t_solves_congruence(corpus_poly):
    f = corpus_poly
    r, c, n = fixed_divisor(f), f.leading, f.degree
    for b in sieve_primes(200)[1:]:
        for a in range(1, b):
            if bf_contains(f, a, b):
                t = solve_t(f, Fraction(a, b))
                assert (a * c * pow(t, n - 1, b) + r) % b == 0
                assert all((a * c * pow(s, n - 1, b) + r) % b for s in range(1, t))
