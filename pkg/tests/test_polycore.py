from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from towerlift import make_tower
from towerlift.errors import BoundaryUndefined, InvalidSubstitution, InvalidTower, NotAUnit, ParseError
from towerlift.polycore import GF, QQ, Element, PolyRing, format_poly, parse_poly

from .strategies import elements, polynomials

T = make_tower(0, 2, 1, "t")
T1 = make_tower(0, 1, 1, "t")
TP = make_tower(1, 1, 1, "t^2+z1", field="Fp", prime=32003)
P = T.parse


def test_sum_over_common_denominator():
    e = P("x1/y1") + P("x1")
    assert e.num == T.poly("x1 + x1*y1")
    assert (e.a, e.b) == (1, 0)


def test_times_zero():
    assert (P("x1^2*y1 - 3/t") * 0).is_zero()


def test_unit_cancellation():
    assert P("1/t") * P("t") == 1


def test_substitute_generator_image():
    assert P("x1").substitute({"x1": P("x1 + t^2")}) == P("x1 + t^2")


def test_substitute_monomial_rescaling():
    assert P("x1*y1").substitute({"y1": P("y1*t")}) == P("x1*y1*t")


def test_substitute_expansion():
    got = P("x2 - x1^2").substitute({"x1": P("x1 + x2^2")})
    assert got == P("-x2^4 - 2*x1*x2^2 + x2 - x1^2")


def test_substitute_rejects_non_unit_y_image():
    with pytest.raises(InvalidSubstitution):
        P("y1").substitute({"y1": P("y1 + 1")})


def test_canonical_form_strips_y():
    e = Element(T, T.poly("y1*x1"), 1, 0)
    assert e.num == T.poly("x1") and e.a == 0


def test_canonical_form_strips_f():
    T2 = make_tower(0, 1, 0, "t-2")
    e = Element(T2, T2.poly("(t-2)*x1"), 0, 1)
    assert e.num == T2.poly("x1") and e.b == 0


def test_canonical_form_keeps_coprime():
    e = Element(T1, T1.poly("x1 + y1"), 1, 0)
    assert e.a == 1


def test_evaluate_at_one():
    E = T1.parse
    assert E("t - 2").evaluate_at_one() == -1
    assert E("1/t").evaluate_at_one() == 1
    assert E("x1*t^2 + 1/y1").evaluate_at_one() == E("x1 + 1/y1")


def test_evaluate_at_one_needs_unit_f1():
    T0 = make_tower(0, 1, 0, "t-1")
    with pytest.raises(BoundaryUndefined):
        T0.parse("x1").evaluate_at_one()


def test_inverse_of_units_and_non_units():
    assert P("y1*t^2").inverse() * P("y1*t^2") == 1
    assert P("3").inverse() == Element.constant(T, Fraction(1, 3))
    with pytest.raises(NotAUnit):
        P("1 + t").inverse()


def test_parse_errors_carry_location():
    with pytest.raises(ParseError) as exc:
        P("x1 + * 2")
    assert exc.value.position is not None
    with pytest.raises(ParseError):
        P("w7")
    with pytest.raises(InvalidTower):
        make_tower(0, 1, 0, "x1 + t")


def test_format_round_trip():
    R = PolyRing(["x", "y"], QQ)
    p = parse_poly("3/4*x^2*y - y^3 + 7", R)
    assert parse_poly(format_poly(p), R) == p


def test_prime_field_arithmetic():
    R = PolyRing(["x"], GF(7))
    assert parse_poly("3*x", R) * parse_poly("5", R) == parse_poly("x", R)
    assert parse_poly("x/3", R) == parse_poly("5*x", R)


@settings(max_examples=300)
@given(st.data())
def test_ring_axioms(data):
    a, b, c = (data.draw(elements(T)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0


@settings(max_examples=200)
@given(st.data())
def test_ring_axioms_prime_field(data):
    a, b, c = (data.draw(elements(TP)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=200)
@given(st.data())
def test_canonical_form_is_unique(data):
    a = data.draw(elements(T))
    k = data.draw(st.integers(0, 2))
    scaled = Element(T, a.num * T.ypow(k) * T.fpow(k), a.a + k, a.b + k)
    assert scaled == a and hash(scaled) == hash(a)


@settings(max_examples=150)
@given(st.data())
def test_substitution_is_a_homomorphism(data):
    a, b = data.draw(elements(T)), data.draw(elements(T))
    img = data.draw(elements(T, max_den=0))
    m = {"x1": P("x1") + img, "y1": P("y1*t")}
    assert (a * b).substitute(m) == a.substitute(m) * b.substitute(m)
    assert (a + b).substitute(m) == a.substitute(m) + b.substitute(m)


@settings(max_examples=100)
@given(polynomials(PolyRing(["x", "y", "z"], QQ)))
def test_polynomial_parse_format(p):
    assert parse_poly(format_poly(p), p.ring) == p
