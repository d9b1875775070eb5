import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from berkfekete.errors import ConfigurationError
from berkfekete.scalars import (ARCH, FieldMode, PAdicMag, as_scalar, mag_cmp, mag_div,
                                mag_max, mag_mul, mag_pow, magnitude, padic_valuation,
                                to_log_real)
from gen import nonzero_rationals, rationals

P3 = FieldMode.padic(3)


@pytest.mark.parametrize("q, p, v", [(0, 3, math.inf), (Fraction(5, 9), 3, -2), (12, 2, 2)])
def test_padic_valuation_examples(q, p, v):
    assert padic_valuation(q, p) == v


def test_padic_valuation_rejects_composite_modulus():
    with pytest.raises(ConfigurationError):
        padic_valuation(3, 6)
    with pytest.raises(ConfigurationError):
        FieldMode.padic(9)


def test_magnitude_examples():
    assert magnitude(3 + 4j, ARCH) == 5.0
    m = magnitude(Fraction(1, 9), P3)
    assert m == PAdicMag(3, -2) and float(m) == 9.0
    assert magnitude(0, ARCH) == 0.0
    assert magnitude(0, P3).is_zero


def test_mag_ops_examples():
    assert mag_pow(PAdicMag(3, -2), Fraction(1, 2)) == PAdicMag(3, -1)
    m = PAdicMag(3, 5)
    assert mag_max(PAdicMag.zero(3), m) == m
    assert mag_max(0.0, 2.5) == 2.5
    assert mag_mul(magnitude(3, P3), magnitude(Fraction(1, 3), P3)) == PAdicMag.one(3)
    assert mag_cmp(PAdicMag(3, 1), PAdicMag(3, 2)) == 1


def test_mag_div_by_zero():
    with pytest.raises(ZeroDivisionError):
        mag_div(PAdicMag(3, 1), PAdicMag.zero(3))
    with pytest.raises(ZeroDivisionError):
        mag_div(1.0, 0.0)


def test_mag_pow_of_zero_needs_positive_exponent():
    with pytest.raises(ZeroDivisionError):
        mag_pow(0.0, 0)
    assert mag_pow(PAdicMag.zero(3), 2).is_zero


def test_to_log_real_at_zero():
    assert to_log_real(PAdicMag.zero(5)) == -math.inf
    assert to_log_real(0.0) == -math.inf
    assert to_log_real(PAdicMag(5, -1)) == pytest.approx(math.log(5))


def test_padic_mode_rejects_floats():
    with pytest.raises(TypeError):
        as_scalar(0.5, P3)
    with pytest.raises(TypeError):
        as_scalar(1j, P3)


@given(rationals, rationals)
def test_ultrametric_inequality(x, y):
    mx, my, ms = magnitude(x, P3), magnitude(y, P3), magnitude(x + y, P3)
    assert ms <= max(mx, my)
    if mx != my:
        assert ms == max(mx, my)


@given(rationals, rationals)
def test_multiplicativity(x, y):
    assert magnitude(x * y, P3) == magnitude(x, P3) * magnitude(y, P3)


@given(nonzero_rationals, nonzero_rationals)
def test_log_is_monotone(x, y):
    mx, my = magnitude(x, P3), magnitude(y, P3)
    if mx <= my:
        assert to_log_real(mx) <= to_log_real(my)


@given(st.integers(-20, 20), st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_rational_powers_stay_exact(t, r):
    m = PAdicMag(7, t) ** r
    assert m.t == Fraction(t) * r
    assert m.log_coeff() == -Fraction(t) * r
