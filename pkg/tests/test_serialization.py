from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from berkfekete.berkovich import INF, Disk
from berkfekete.errors import ConfigurationError
from berkfekete.potential import Divisor, EnergyValue
from berkfekete.scalars import ARCH, FieldMode, PAdicMag
from berkfekete.serialization import (divisor_from_json, divisor_to_json, energy_from_json,
                                      load_json_arg, mag_to_json, point_from_json, point_to_json,
                                      poly_from_json, weight_from_json)
from gen import rationals

P5 = FieldMode.padic(5)


@given(rationals, st.fractions(min_value=-5, max_value=5, max_denominator=4))
def test_padic_point_round_trip(a, t):
    for S in (a, Disk(a, PAdicMag(5, t)), INF):
        assert point_from_json(point_to_json(S, P5), P5) == S


@given(st.complex_numbers(max_magnitude=1e9, allow_nan=False, allow_infinity=False))
def test_arch_point_round_trip(z):
    assert point_from_json(point_to_json(z, ARCH), ARCH) == z


def test_divisor_round_trip_and_plain_lists():
    Z = Divisor.from_pairs([(Fraction(1, 3), 2), (INF, 1)])
    assert divisor_from_json(divisor_to_json(Z, P5), P5) == Z
    assert divisor_from_json(["1/3", "inf"], P5).deg == 2
    for bad in ([], ["1", "1"], [{"point": "1", "mult": 1.5}], "x"):
        with pytest.raises(ConfigurationError):
            divisor_from_json(bad, P5)


def test_padic_rejects_floats():
    with pytest.raises(ConfigurationError):
        point_from_json(0.5, P5)


def test_arch_scalar_forms():
    assert point_from_json("1/4", ARCH) == 0.25
    assert point_from_json("1+2j", ARCH) == 1 + 2j
    assert point_from_json({"re": 1}, ARCH) == 1
    with pytest.raises(ConfigurationError):
        point_from_json({"type": "disk", "center": "0", "radius_exp": "0"}, ARCH)


def test_mag_json_handles_infinities():
    assert mag_to_json(PAdicMag(3, 2))["exp"] == "2"
    assert mag_to_json(PAdicMag(3, float("inf"))) == {"p": 3, "exp": "inf", "value": 0.0, "log": "-inf"}
    assert mag_to_json(0.0)["log"] == "-inf"


def test_load_json_arg_file(tmp_path):
    f = tmp_path / "pts.json"
    f.write_text('["0", "1"]')
    assert load_json_arg(str(f)) == ["0", "1"]
    with pytest.raises(ConfigurationError, match="line 1"):
        load_json_arg("[1,")


def test_weights_and_polys():
    assert weight_from_json("zero", P5).label == "zero"
    w = weight_from_json({"builtin": "g0", "C": 2, "kappa": 1.5}, ARCH)
    assert w.holder == (2.0, 1.5)
    for bad in ({"builtin": "g0"}, {"builtin": "green"}, {"builtin": "nope"}, [1]):
        with pytest.raises(ConfigurationError):
            weight_from_json(bad, P5)
    assert poly_from_json({"coeffs": ["1/9", 0, 1]}, P5).degree == 2
    with pytest.raises(ConfigurationError):
        poly_from_json({"coeffs": [1, 1]}, P5)


def test_energy_round_trip():
    e = EnergyValue.from_exact(Fraction(-7, 2), 5)
    assert energy_from_json(e.to_json()) == e
    assert energy_from_json({"exact": None, "approx": 1.25}).approx == 1.25
