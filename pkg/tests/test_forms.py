from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fanostrata.fields import GF, QQ
from fanostrata.forms import (
    Form,
    FormTuple,
    ParseError,
    count_monomials,
    format_form,
    monomials,
    parse_form,
    parse_tuple,
)

from conftest import form_tuples, forms


def test_monomial_basis_order_and_size():
    assert monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]
    for nvars in range(1, 5):
        for d in range(0, 5):
            assert len(monomials(nvars, d)) == count_monomials(nvars, d)


def test_parse_grammar():
    f = parse_form("3*x0^2*x1 - x2^3", 2, QQ)
    assert f.degree == 3
    assert f.coeffs == {(2, 1, 0): 3, (0, 0, 3): -1}
    g = parse_form("  1/2 * X0 ^2 +x1^2-  x1^2 ", 1, QQ)
    assert g.coeffs == {(2, 0): Fraction(1, 2)}
    assert str(parse_form("x0*x1 + x1*x0", 1, QQ)) == "2*x0*x1"
    assert parse_form("-x0 - x1", 1, GF(5)).coeffs == {(1, 0): 4, (0, 1): 4}


@pytest.mark.parametrize(
    "text",
    ["x0^2 + x1", "x3", "x0 + ", "x0 x1", "2**x0", "x0^1/2", "", "x0 + y1"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_form(text, 2, QQ)


def test_zero_form_needs_degree():
    with pytest.raises(ParseError):
        parse_form("0", 2, QQ)
    z = parse_form("0", 2, QQ, degree=3)
    assert not z and z.degree == 3 and str(z) == "0"
    assert parse_form("x0 - x0", 2, QQ).degree == 1


def test_tuple_grammar():
    t = parse_tuple("x0^2 + x1^2; x0*x1*x2", 2, QQ)
    assert t.multidegree == (2, 3)
    assert str(t) == "x0^2 + x1^2; x0*x1*x2"
    with pytest.raises(ParseError):
        parse_tuple("x0; x1", 2, QQ, multidegree=(1,))


@settings(max_examples=150, deadline=None)
@given(form_tuples())
def test_roundtrip_rationals(t):
    assert parse_tuple(str(t), t.n, QQ, t.multidegree) == t


@settings(max_examples=100, deadline=None)
@given(form_tuples(field=GF(7)))
def test_roundtrip_prime_field(t):
    assert parse_tuple(str(t), t.n, GF(7), t.multidegree) == t


def test_canonical_print_orders_lexicographically():
    f = Form.from_dict(2, 2, {(0, 0, 2): 1, (2, 0, 0): -1, (1, 1, 0): Fraction(1, 3)}, QQ)
    assert format_form(f) == "-x0^2 + 1/3*x0*x1 + x2^2"


def test_invariants_enforced():
    with pytest.raises(ValueError):
        Form(1, 2, (((1, 0), 1),), QQ)
    with pytest.raises(ValueError):
        Form(1, 1, (((1, 0), 0),), QQ)
    with pytest.raises(ValueError):
        FormTuple((Form.zero(1, 2, QQ), Form.zero(2, 2, QQ)))


def _to_sympy(f: Form):
    xs = sympy.symbols(f"x0:{f.n + 1}")
    terms = [sympy.Rational(c.numerator, c.denominator) * sympy.prod([x**a for x, a in zip(xs, e)])
             for e, c in f.terms]
    return sympy.Add(*terms), xs


@settings(max_examples=60, deadline=None)
@given(forms(), st.data())
def test_substitute_matches_sympy(f, data):
    new_vars = data.draw(st.integers(1, 3))
    images = [[data.draw(st.integers(-2, 2)) for _ in range(new_vars)] for _ in range(f.n + 1)]
    g = f.substitute(images)
    expr, xs = _to_sympy(f)
    ys = sympy.symbols(f"x0:{new_vars}")
    sub = expr.subs({x: sum(a * y for a, y in zip(row, ys)) for x, row in zip(xs, images)}, simultaneous=True)
    assert g.n == new_vars - 1
    assert sympy.expand(sub - _to_sympy(g)[0]) == 0


@settings(max_examples=60, deadline=None)
@given(forms(), st.integers(0, 3))
def test_derivative_matches_sympy(f, j):
    if j > f.n:
        return
    expr, xs = _to_sympy(f)
    assert sympy.expand(sympy.diff(expr, xs[j]) - _to_sympy(f.derivative(j))[0]) == 0


def test_vector_roundtrip():
    t = parse_tuple("x0^2 - 3*x1*x2; x2", 2, QQ)
    assert FormTuple.from_vector(2, t.multidegree, t.vector(), QQ) == t
