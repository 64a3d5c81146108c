import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rathyper.ratio1d import (
    FactorialRatioSpec,
    classify_univariate,
    family_spec,
    hyper_params,
    is_integral,
    landau_profile,
    legendre_valuation,
    ratio_term,
    valuation_check,
)


def prime_exponent(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def test_central_binomial():
    spec = FactorialRatioSpec((2,), (1, 1))
    assert [ratio_term(spec, n) for n in range(5)] == [1, 2, 6, 20, 70]
    prof = landau_profile(spec)
    assert prof.intervals() == [(0, Fraction(1, 2), 0), (Fraction(1, 2), 1, 1)]
    cls = classify_univariate(spec)
    assert (cls.short, cls.a, cls.b, cls.height, cls.integral) == ("family1", 1, 1, 1, True)


def test_non_integral():
    spec = FactorialRatioSpec((1, 1), (2,))
    assert not is_integral(spec)
    assert ratio_term(spec, 1) == Fraction(1, 2)


def test_height_two_not_algebraic():
    spec = FactorialRatioSpec((2, 4), (1, 1, 2, 2))
    assert spec.height == 2
    assert classify_univariate(spec).tag == "NotAlgebraic"


def test_rational_after_cancel():
    assert classify_univariate(FactorialRatioSpec((3, 1), (3, 1))).tag == "Rational"


def test_unbalanced_rejected():
    with pytest.raises(ValueError):
        landau_profile(FactorialRatioSpec((3,), (1, 1)))


def test_bad_entries_rejected():
    with pytest.raises(ValueError):
        FactorialRatioSpec((0,), (1,))
    with pytest.raises(ValueError):
        FactorialRatioSpec((2,), (1, 1), (1, 2))


def test_legendre():
    for m in range(60):
        for p in (2, 3, 5, 7):
            assert legendre_valuation(m, p) == prime_exponent(math.factorial(m), p)


@pytest.mark.parametrize("family", [1, 2, 3])
def test_families_integral_height_one(family):
    for s in range(2, 13):
        for a in range(1, s):
            b = s - a
            if math.gcd(a, b) != 1:
                continue
            spec = family_spec(family, a, b)
            cls = classify_univariate(spec)
            assert is_integral(spec)
            assert cls.height == 1
            assert (family, a, b) in cls.matches or (family in (1, 3) and (family, b, a) in cls.matches)


def test_family_terms_are_integers():
    for fam in (1, 2, 3):
        spec = family_spec(fam, 2, 3)
        assert all(ratio_term(spec, n).denominator == 1 for n in range(30))


ratio_specs = st.lists(st.integers(1, 6), min_size=1, max_size=3).flatmap(
    lambda p: st.lists(st.integers(1, 6), min_size=1, max_size=4)
    .filter(lambda q: sum(q) <= sum(p))
    .map(lambda q: FactorialRatioSpec(tuple(p), tuple(q) + (1,) * (sum(p) - sum(q))))
)


@settings(max_examples=150, deadline=None)
@given(ratio_specs, st.sampled_from([2, 3, 5, 7, 11, 13]), st.integers(0, 60))
def test_valuation_identity_matches_direct_factorisation(spec, p, n):
    term = ratio_term(spec, n)
    v = prime_exponent(term.numerator, p) - prime_exponent(term.denominator, p)
    prof = landau_profile(spec)
    rhs = 0
    pk = p
    while pk <= max(spec.p + spec.q) * n:
        rhs += prof.value(Fraction(n, pk))
        pk *= p
    assert v == rhs
    assert valuation_check(spec, p, n, prof)


@settings(max_examples=120, deadline=None)
@given(ratio_specs)
def test_integral_implies_integer_terms(spec):
    if is_integral(spec):
        assert all(ratio_term(spec, n).denominator == 1 for n in range(25))


@settings(max_examples=120, deadline=None)
@given(ratio_specs, st.integers(0, 30))
def test_hyper_params_recurrence(spec, n):
    red = spec.canceled()
    if red.is_empty():
        return
    alphas, betas, kappa = hyper_params(spec)
    lhs = ratio_term(red, n + 1) / ratio_term(red, n)
    rhs = kappa
    for a in alphas:
        rhs *= n + a
    for b in betas:
        rhs /= n + b
    assert lhs == rhs


@settings(max_examples=100, deadline=None)
@given(ratio_specs)
def test_landau_profile_matches_floor_sum(spec):
    prof = landau_profile(spec)
    for den in range(1, 13):
        for num in range(den):
            x = Fraction(num, den)
            direct = sum(math.floor(a * x) for a in spec.p) - sum(math.floor(b * x) for b in spec.q)
            assert prof.value(x) == direct
