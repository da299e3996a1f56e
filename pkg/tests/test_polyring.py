import math
from fractions import Fraction

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import assume, given, settings

from mwfamily.fields import SQRT2, ZETA
from mwfamily.polyring import (
    INFINITY,
    Place,
    Poly,
    RatFun,
    discriminant,
    gcd_free_basis,
    poly_gcd,
    poly_sqrt,
    resultant,
    squarefree_decompose,
    valuation,
)
from strategies import polys

t = Poly.t()
T = sympy.Symbol("t")


def to_sympy(p):
    return sum(sympy.Rational(c.numerator, c.denominator) * T**k for k, c in enumerate(p.coeffs))


def from_sympy(expr):
    cs = sympy.Poly(expr, T).all_coeffs()
    return Poly([Fraction(int(c.p), int(c.q)) for c in reversed(cs)])


def test_zero_polynomial_degree_marker():
    assert Poly().degree == -math.inf
    assert Poly().deg() == -1
    assert (t * t - 1).lc == 1


def test_gcd_examples():
    assert poly_gcd(t * t - 1, 2 * t) == 1
    assert poly_gcd(t * t - 1, t - 1) == t - 1
    f, g = t * t - 1, 2 * t + 3
    assert poly_gcd(f * f, f * g) == f.monic()
    with pytest.raises(ValueError):
        poly_gcd(Poly(), Poly())


def test_squarefree_classic_discriminant():
    f, g = t * t - 1, 2 * t
    delta = 16 * f**4 * g**4 * (f * f - g * g) ** 2
    dec = squarefree_decompose(delta)
    assert dec == [(t**4 - 6 * t * t + 1, 2), ((t * t - 1) * t, 4)]
    # oracle
    _, factors = sympy.sqf_list(to_sympy(delta))
    key = lambda pm: pm[0].sort_key()
    expected = sorted(((from_sympy(p).monic(), m) for p, m in factors), key=key)
    assert sorted(dec, key=key) == expected


def test_squarefree_trivial():
    assert squarefree_decompose(t * t) == [(t, 2)]
    p = 3 * t**3 + t + 1
    assert squarefree_decompose(p) == [(p.monic(), 1)]


def test_discriminant_examples():
    p = t**4 - 6 * t * t + 1
    assert discriminant(p) == 16384
    assert sympy.discriminant(to_sympy(p), T) == 16384
    assert discriminant(t * t) == 0
    A, B, C = Fraction(3), Fraction(-5), Fraction(7, 2)
    assert discriminant(A * t * t + B * t + C) == B * B - 4 * A * C


def test_valuation_examples():
    pt = Place(t)
    assert valuation(pt, RatFun(2 * t)) == 1
    assert valuation(pt, RatFun(t * t - 1, t)) == -1
    assert valuation(INFINITY, RatFun((t * t - 1) ** 2)) == -4
    assert valuation(pt, RatFun(0)) == math.inf
    f, g = t * t - 1, 2 * t
    delta = 16 * f**4 * g**4 * (f * f - g * g) ** 2
    assert valuation(Place(t**4 - 6 * t * t + 1), RatFun(delta)) == 2


def test_gcd_free_basis_examples():
    b = gcd_free_basis([t * t - 1, 2 * t, t**4 - 6 * t * t + 1])
    assert set(b.clusters) == {t * t - 1, t, t**4 - 6 * t * t + 1}
    b = gcd_free_basis([t * t - 1, t - 1])
    assert set(b.clusters) == {t - 1, t + 1}
    p = 3 * t**3 + t + 1
    assert b.clusters and gcd_free_basis([p]).clusters == [p.monic()]


def test_poly_sqrt():
    p = (t * t + SQRT2 * t - 1) ** 2
    r = poly_sqrt(p)
    assert r * r == p
    assert poly_sqrt(t) is None
    assert poly_sqrt(Poly.const(-4) * t * t) * poly_sqrt(Poly.const(-4) * t * t) == -4 * t * t


def test_ratfun_normal_form():
    r = RatFun(2 * t * t - 2, 4 * t - 4)
    assert r.den == 1 and r.num == (t + 1) / 2
    with pytest.raises(ZeroDivisionError):
        RatFun(t, Poly())


def test_zeta_coefficients():
    p = (t - ZETA) * (t + ZETA)
    assert p == t * t - ZETA**2


@settings(max_examples=200)
@given(polys(max_deg=4), polys(max_deg=4))
def test_gcd_matches_sympy(p, q):
    assume(not (p.is_zero() and q.is_zero()))
    expected = sympy.gcd(to_sympy(p), to_sympy(q))
    g = poly_gcd(p, q)
    assert g == from_sympy(sympy.Poly(expected, T).monic().as_expr() if expected.has(T) else 1)


@settings(max_examples=200)
@given(polys(max_deg=3), polys(max_deg=3))
def test_resultant_matches_sympy(p, q):
    assume(p.deg() >= 1 and q.deg() >= 1)
    # Sylvester determinant; sympy's own resultant disagrees on e.g. (t + 1, t^3)
    expected = sylvester(to_sympy(p), to_sympy(q), T).det()
    assert resultant(p, q) == Fraction(str(expected))


@settings(max_examples=200)
@given(polys(max_deg=2, nonzero=True), polys(max_deg=2, nonzero=True), polys(max_deg=2, nonzero=True))
def test_basis_reconstructs_sources(a, b, c):
    sources = [p for p in (a * b, b * c * c, a * c) if p.deg() >= 1]
    assume(sources)
    basis = gcd_free_basis(sources)
    cl = basis.clusters
    for i, x in enumerate(cl):
        assert x.lc == 1 and discriminant(x) != 0 if x.deg() > 1 else True
        for y in cl[i + 1:]:
            assert poly_gcd(x, y) == 1
    for s in sources:
        lc, mult = basis.factorization(s)
        acc = Poly.const(lc)
        for k, e in mult.items():
            acc = acc * k**e
        assert acc == s


@settings(max_examples=200)
@given(polys(max_deg=5, nonzero=True))
def test_squarefree_factors_coprime_and_separable(p):
    assume(p.deg() >= 1)
    dec = squarefree_decompose(p * p.deriv() if p.deg() > 1 else p)
    for i, (a, _) in enumerate(dec):
        if a.deg() > 1:
            assert discriminant(a) != 0
        for b, _ in dec[i + 1:]:
            assert poly_gcd(a, b) == 1


def _places(*rs):
    srcs = [q for r in rs for q in (r.num, r.den) if q.deg() >= 1]
    return (gcd_free_basis(srcs).places if srcs else []) + [INFINITY]


@settings(max_examples=200)
@given(polys(max_deg=3, nonzero=True), polys(max_deg=3, nonzero=True),
       polys(max_deg=3, nonzero=True), polys(max_deg=3, nonzero=True))
def test_valuation_additive_and_degree_formula(a, b, c, d):
    r1, r2 = RatFun(a, b), RatFun(c, d)
    for pl in _places(r1, r2):
        assert valuation(pl, r1 * r2) == valuation(pl, r1) + valuation(pl, r2)
    assert sum(pl.degree * valuation(pl, r1) for pl in _places(r1)) == 0
