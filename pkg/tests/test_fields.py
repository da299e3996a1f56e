from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mwfamily.fields import (
    I,
    SQRT2,
    SQRT_MINUS2,
    ZETA,
    Zeta8,
    conjugate,
    decode_field,
    encode_field,
    field_sqrt,
    field_value,
    is_square_rational,
    named_constant,
    zeta8_sqrt,
)
from strategies import nonzero_zeta8s, rationals, zeta8s

X = sympy.Symbol("X")
CYCLO = X**4 + 1


def to_sympy(z):
    return sum(sympy.Rational(c.numerator, c.denominator) * X**k for k, c in enumerate(z.coeffs))


def from_sympy(expr):
    r = sympy.Poly(sympy.rem(sympy.expand(expr), CYCLO, X), X)
    cs = [Fraction(int(c.p), int(c.q)) for c in reversed(r.all_coeffs())]
    return Zeta8(*(cs + [0] * (4 - len(cs))))


def test_zeta_times_zeta_cubed():
    assert ZETA * ZETA**3 == -1


def test_named_square_roots():
    assert (ZETA + ZETA**3) ** 2 == -2
    assert (ZETA - ZETA**3) ** 2 == 2
    assert SQRT_MINUS2 * SQRT_MINUS2 == -2
    assert SQRT2 * SQRT2 == 2
    assert I * I == -1


def test_named_constant_coordinates():
    assert named_constant("i").coeffs == (0, 0, 1, 0)
    assert named_constant("sqrt2").coeffs == (0, 1, 0, -1)
    assert named_constant("sqrt_minus2").coeffs == (0, 1, 0, 1)
    assert named_constant("zeta") == ZETA
    with pytest.raises((KeyError, ValueError)):
        named_constant("pi")


def test_inverse_trivial():
    assert Zeta8(1).inverse() == 1
    assert ZETA.inverse() == -ZETA**3


def test_inverse_one_plus_zeta_linear_solve():
    # oracle: solve (1 + z) x = 1 as a 4x4 linear system over Q
    a = sympy.symbols("a0:4")
    prod = sympy.expand((1 + X) * sum(ai * X**i for i, ai in enumerate(a)))
    r = sympy.Poly(sympy.rem(prod, CYCLO, X), X)
    coeffs = list(reversed(r.all_coeffs()))
    coeffs += [0] * (4 - len(coeffs))
    eqs = [coeffs[0] - 1] + coeffs[1:4]
    sol = sympy.solve(eqs, a)
    expected = Zeta8(*(Fraction(str(sol[ai])) for ai in a))
    assert (1 + ZETA).inverse() == expected
    assert (1 + ZETA) * expected == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        Zeta8(0).inverse()


def test_is_square_rational_examples():
    assert is_square_rational(Fraction(4, 9)) == Fraction(2, 3)
    assert is_square_rational(-1) is None
    assert is_square_rational(Fraction(2)) is None
    assert is_square_rational(Fraction(126877696, 6561)) == Fraction(11264, 81)
    assert sympy.sqrt(sympy.Rational(126877696, 6561)) == sympy.Rational(11264, 81)


def test_field_value_demotes():
    z = Zeta8(3, 0, 0, 0)
    assert isinstance(field_value(z), Fraction)
    assert field_value(ZETA) is ZETA or field_value(ZETA) == ZETA


def test_conjugates_permute_square_roots():
    # sigma_k: z -> z^k
    assert conjugate(I, 3) == -I
    assert conjugate(SQRT2, 3) == -SQRT2
    assert conjugate(SQRT2, 7) == SQRT2
    assert conjugate(SQRT_MINUS2, 7) == -SQRT_MINUS2
    assert conjugate(SQRT_MINUS2, 3) == SQRT_MINUS2


def test_zeta8_sqrt_known_values():
    assert zeta8_sqrt(Zeta8(-1)) ** 2 == -1
    assert zeta8_sqrt(Zeta8(2)) ** 2 == 2
    assert zeta8_sqrt(I) ** 2 == I
    assert field_sqrt(Fraction(3)) is None  # sqrt(3) is not in Q(zeta8)


def test_json_round_trip():
    for x in (Fraction(-7, 3), Fraction(0), ZETA + Fraction(1, 2), SQRT_MINUS2):
        assert decode_field(encode_field(x)) == x
    assert encode_field(Fraction(5)) == "5"
    assert encode_field(Fraction(-7, 3)) == "-7/3"


@settings(max_examples=1000)
@given(zeta8s, zeta8s, zeta8s)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@settings(max_examples=1000)
@given(rationals, rationals, rationals)
def test_ring_axioms_mixed_with_rationals(r, s, u):
    a, b = Zeta8(r, s, u, r), Zeta8(s)
    assert a * u == Zeta8(r * u, s * u, u * u, r * u)
    assert (a + r) - r == a
    assert b * a == a * b


@settings(max_examples=300)
@given(zeta8s, zeta8s)
def test_multiplication_matches_sympy(a, b):
    assert a * b == from_sympy(to_sympy(a) * to_sympy(b))


@settings(max_examples=500)
@given(nonzero_zeta8s)
def test_inverse_property(x):
    assert x * x.inverse() == 1
    assert x / x == 1


@settings(max_examples=1000)
@given(rationals)
def test_square_witness(w):
    r = is_square_rational(w * w)
    assert r is not None and r * r == w * w and r >= 0


@settings(max_examples=300)
@given(nonzero_zeta8s)
def test_zeta8_sqrt_of_squares(x):
    r = zeta8_sqrt(x * x)
    assert r is not None and r * r == x * x


@settings(max_examples=300)
@given(zeta8s, zeta8s, st.sampled_from([1, 3, 5, 7]))
def test_conjugation_is_a_ring_map(a, b, k):
    assert conjugate(a * b, k) == conjugate(a, k) * conjugate(b, k)
    assert conjugate(a + b, k) == conjugate(a, k) + conjugate(b, k)
