import pytest
from hypothesis import given, settings

from helpers import P, ring, ring_and_poly
from reeskit.errors import ParseError, UnknownVariable
from reeskit.parse import parse_poly


def test_hauser_polynomial():
    R = ring()
    Z, X, Y = R.gen("Z"), R.gen("X"), R.gen("Y")
    assert parse_poly("Z^2+Y^7+X^4*Y", R) == Z**2 + Y**7 + X**4 * Y


def test_zero_and_reduction_mod_p():
    R = ring("Z,Y", 3)
    assert parse_poly("0", R).is_zero()
    assert parse_poly("Z^2 + 3*Y", R) == R.gen("Z") ** 2


def test_precedence():
    R = ring("x,y", 5)
    x, y = R.gen("x"), R.gen("y")
    assert P("-x^2", R) == -(x**2)
    assert P("2*x^2*y", R) == x * x * y * 2
    assert P("(x+y)^2", R) == x**2 + x * y * 2 + y**2
    assert P("x - y - x", R) == -y
    assert P("--x", R) == x


def test_extension_literal():
    R = ring("x", 2, 2)
    f = P("[3]*x+[2]", R)
    assert f.terms == {(1,): 3, (0,): 2}
    with pytest.raises(ParseError):
        P("[4]", R)


@pytest.mark.parametrize(
    "text,pos",
    [("2X", 1), ("X Y", 2), ("X^", 2), ("(X+Y", 4), ("X+", 2), ("X^Y", 2), ("X $ Y", 2)],
)
def test_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as err:
        parse_poly(text, ring("X,Y"))
    assert err.value.position == pos


def test_unknown_variable():
    with pytest.raises(UnknownVariable) as err:
        parse_poly("X+T", ring("X,Y"))
    assert err.value.position == 2


@settings(max_examples=200, deadline=None)
@given(ring_and_poly(max_vars=3, max_exp=4, max_terms=6))
def test_print_parse_round_trip(data):
    R, f = data
    assert parse_poly(str(f), R) == f
