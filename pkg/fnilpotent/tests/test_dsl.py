try:
    import pytest
except ImportError as err:
    import warnings

    warnings.warn("You don't seem to have pytest, so I can't use it to test. Shame. pytest is nice.")
    warnings.warn(f"Error was: {err}")

from hypothesis import given, settings, strategies as st

from fnilpotent.dsl import format_ideal, format_ring, parse_ideal, parse_poly, parse_ring, parse_sequence, tokenize
from fnilpotent.errors import FNilpotentError, NonPrimeCharacteristicError, ParseError
from fnilpotent.polys import format_poly, make_ring
from fnilpotent.tests.objects_for_testing import plane_and_line, polys

F5 = make_ring(5, ['x', 'y'])


def test_parse_ring():
    spec = parse_ring("F2[T1,T2,T3]/(T1^2*T2, T1^2*T3)")
    assert spec == plane_and_line()
    assert format_ring(spec) == 'F2[T1,T2,T3]/(T1^2*T2, T1^2*T3)'
    bare = parse_ring("F3[x, y]")
    assert bare.A.is_zero
    assert format_ring(bare) == 'F3[x,y]'
    assert parse_ring("F2[x,y]", order='lex').order_name == 'lex'


def test_non_prime_characteristic():
    with pytest.raises(NonPrimeCharacteristicError) as excinfo:
        parse_ring("F4[x]")
    assert excinfo.value.exit_code == 2


def test_parse_poly_syntax():
    x, y = F5.gens
    assert parse_poly("3x^2y", F5) == 3 * x**2 * y
    assert parse_poly("x**2 - y", F5) == x**2 - y
    assert parse_poly("-(x + y)^2", F5) == -(x + y)**2
    assert parse_poly("2 x y + 7", F5) == 2 * x * y + 2
    assert parse_poly("x^0", F5) == F5.one


def test_parse_ideal_and_sequence():
    spec = parse_ring("F3[x,y]")
    x, y = spec.ambient.gens
    assert parse_ideal("()", spec).is_zero
    assert parse_ideal("(0)", spec).is_zero
    assert parse_ideal("(x, y^2)", spec) == spec.ideal([x, y**2])
    assert parse_sequence("x + y, y", spec) == [x + y, y]
    assert parse_sequence("(x, y)", spec) == [x, y]
    assert format_ideal(parse_ideal("(x, -y^2)", spec)) == '(x, -y^2)'


def test_errors_carry_positions():
    with pytest.raises(ParseError) as excinfo:
        parse_poly("x + w", F5)
    assert (excinfo.value.line, excinfo.value.column) == (1, 5)
    with pytest.raises(ParseError) as excinfo:
        parse_poly("x +\n  w", F5)
    assert (excinfo.value.line, excinfo.value.column) == (2, 3)
    with pytest.raises(ParseError) as excinfo:
        parse_ring("F2[x,y,x]")
    assert excinfo.value.column == 8
    with pytest.raises(ParseError) as excinfo:
        parse_ring("F2[é]")
    assert excinfo.value.column == 4
    with pytest.raises(ParseError):
        parse_poly("x^99999999999999999999", F5)
    with pytest.raises(ParseError):
        parse_poly("x +", F5)
    with pytest.raises(ParseError):
        parse_ring("Q[x]")


def test_deep_nesting_is_a_parse_error():
    text = "(" * 5000 + "x" + ")" * 5000
    with pytest.raises(ParseError):
        parse_poly(text, F5)


def test_tokenize_positions():
    tokens = tokenize("x\n  + y")
    assert [(t.text, t.line, t.column) for t in tokens] == [('x', 1, 1), ('+', 2, 3), ('y', 2, 5), ('', 2, 6)]


@settings(max_examples=50, deadline=None)
@given(polys(F5))
def test_printed_polynomials_parse_back(f):
    assert parse_poly(format_poly(f), F5) == f


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="xyz+-*^()0123 ,\n", max_size=8))
def test_garbage_only_raises_package_errors(text):
    try:
        parse_poly(text, F5)
    except FNilpotentError:
        pass
