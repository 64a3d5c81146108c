import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rathyper.catalog import (
    GESSEL_CONE,
    U2_HORN,
    U2_K,
    f0_closed_form,
    fs22_closed_form,
    gessel_function,
    gessel_series,
    one_over_1mx,
    reconstruction_fails,
    u2_series,
    u3_series,
)
from rathyper.configuration import B2, B3
from rathyper.poly import RationalFunction, SparsePoly, ratfun_equal
from rathyper.series2d import (
    InsufficientTruncation,
    expand_rational,
    fs_closed_form,
    fs_series,
    horn_rationality,
    reconstruct_auto,
    reconstruct_rational,
)
from rathyper.series2d.horn import _values_meet


def test_fs11_reconstruction():
    rec = reconstruct_rational(fs_series(1, 1, 6), (1, 1), (1, 1), 3)
    assert rec is not None and rec.dimension == 1
    assert ratfun_equal(rec.function, one_over_1mx())


def test_fs22_reconstruction():
    rec = reconstruct_rational(fs_series(2, 2, 8), (2, 2), (2, 2), 4)
    assert rec is not None and rec.dimension == 1
    assert ratfun_equal(rec.function, fs22_closed_form())


def test_gessel_reconstruction_auto():
    rec = reconstruct_auto(gessel_series(16), cap=3)
    assert rec is not None and ratfun_equal(rec.function, gessel_function())


def test_insufficient_truncation():
    with pytest.raises(InsufficientTruncation):
        reconstruct_rational(fs_series(1, 1, 3), (2, 2), (2, 2), 2)


def test_too_small_bounds_give_none():
    assert reconstruct_rational(fs_series(2, 2, 10), (1, 1), (1, 1), 3) is None


def test_u2_u3_not_reconstructible():
    assert reconstruction_fails(u2_series(14))
    assert reconstruction_fails(u3_series(14))


def test_fs_closed_form_cached():
    assert ratfun_equal(fs_closed_form(1, 1).function, one_over_1mx())
    assert fs_closed_form(1, 1) is fs_closed_form(1, 1)


X1, X2 = SparsePoly.var(0, 2), SparsePoly.var(1, 2)


@pytest.mark.parametrize("f", [one_over_1mx(), fs22_closed_form(), f0_closed_form(), gessel_function(),
                               RationalFunction(3 - X1 * X2, (1 - 2 * X1) * (1 + X2))])
def test_expand_then_reconstruct(f):
    rec = reconstruct_auto(expand_rational(f, (0, 0), 14), cap=3)
    assert rec is not None and ratfun_equal(rec.function, f)


coef = st.integers(-5, 5)


@settings(max_examples=120, deadline=None)
@given(coef, coef, coef, coef.filter(bool), coef, coef, coef)
def test_reconstruct_expand_roundtrip(p0, p1, p2, q0, q1, q2, q3):
    num = SparsePoly(2, {(0, 0): p0, (1, 0): p1, (0, 1): p2})
    den = SparsePoly(2, {(0, 0): q0, (1, 0): q1, (0, 1): q2, (1, 1): q3})
    f = RationalFunction(num, den)
    s = expand_rational(f, (0, 0), 7)
    rec = reconstruct_rational(s, (1, 1), (1, 1), 3)
    assert rec is not None
    assert ratfun_equal(rec.function, f)


# -- horn rationality ----------------------------------------------------------------

def test_values_meet():
    assert _values_meet((1, 2), 3, 3)
    assert not _values_meet((2, 4), 1, 1)
    assert _values_meet((2, -3), 1, 1)
    assert not _values_meet((-1, -1), 1, 5)
    assert _values_meet((0, 0), -1, 2)


def test_cayley_basic():
    v = horn_rationality(((-1, -1), (1, 0), (0, 1)), (-1, 0, 0))
    assert v.tag == "RationalCayley" and v.s == (1, 1)
    assert v.identity is not None and v.identity.scale == -1
    assert ratfun_equal(v.certificate, one_over_1mx())


def test_cayley_with_s22():
    v = horn_rationality(((-2, -2), (2, 0), (0, 2)), (-1, 0, 0))
    assert v.tag == "RationalCayley" and v.s == (2, 2)
    assert ratfun_equal(v.certificate, fs22_closed_form())


def test_lawrence_quadrant():
    v = horn_rationality(((1, 0), (-1, 0), (0, 1), (0, -1)), (0, 0, 0, 0))
    assert v.tag == "RationalLawrence"
    assert ratfun_equal(v.certificate, f0_closed_form())
    assert v.identity.P1.to_str() != "1"


def test_not_rational_structures():
    assert horn_rationality(B2, (0,) * 5).tag == "NotRational"
    assert horn_rationality(B3, (0,) * 5).tag == "NotRational"
    v = horn_rationality(U2_HORN, U2_K)
    assert v.tag == "NotRational" and "unpaired" in v.reason


def test_not_along_normals():
    v = horn_rationality(((1, 1), (-1, 0), (0, -1)), (0, 0, 0))
    assert v.tag == "NotRational"


def test_mixed_sign_pair_inconclusive():
    v = horn_rationality(((1, -1), (-1, 1)), (0, 0))
    assert v.tag == "Inconclusive" and not v.rational


def test_non_quadrant_uses_reconstruction():
    from rathyper.catalog import GESSEL_BHAT, GESSEL_V

    v = horn_rationality(GESSEL_BHAT, GESSEL_V, GESSEL_CONE)
    assert v.rational and v.phi_closed_form is not None


def test_input_validation():
    with pytest.raises(ValueError):
        horn_rationality(((1, 0), (0, 1)), (0, 0))
    with pytest.raises(ValueError):
        horn_rationality(((1, 0), (-1, 0)), (0,))
