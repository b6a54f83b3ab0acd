import pytest
from hypothesis import given

from conftest import z_localized
from spherevec.expr import ParseError, parse_element_terms, parse_field_terms, parse_localized, parse_sphere
from spherevec.ring import LocalizedFun


@pytest.mark.parametrize(
    "text, position",
    [("x +", 3), ("2*x^", 4), ("x/(x+y)", 1), ("w", 0), ("(x", 2), ("x)", 1)],
)
def test_error_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse_localized(text)
    assert info.value.position == position
    assert "^" in str(info.value)


def test_no_implicit_multiplication():
    with pytest.raises(ParseError):
        parse_localized("x y")


def test_denominator_rejected_in_A():
    with pytest.raises(ParseError):
        parse_sphere("x/z")


def test_negative_exponent_and_power_of_sum():
    assert parse_localized("x^-1") == parse_localized("1/x")
    assert parse_sphere("(x+y)^2") == parse_sphere("x^2 + 2*x*y + y^2")


@given(z_localized())
def test_print_parse_round_trip(f):
    assert parse_localized(str(f)) == f


def test_field_terms_fold_reversed_symbols():
    terms = parse_field_terms("x*D12 - D21 + z*D23")
    assert terms["12"] == parse_localized("1 + x")
    assert terms["23"] == LocalizedFun.var("z")
    with pytest.raises(ParseError):
        parse_field_terms("D11")


def test_element_terms():
    terms = parse_element_terms("z^2 (x) v0 - x/z ⊗ v1 + 1 (x) v0")
    assert terms == {0: parse_localized("z^2 + 1"), 1: parse_localized("-x/z")}
    assert parse_element_terms("0") == {}
    with pytest.raises(ParseError):
        parse_element_terms("z^2 v0")
