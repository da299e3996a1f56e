"""Hypothesis strategies shared by the property tests."""

from fractions import Fraction

from hypothesis import strategies as st

from mwfamily.fields import Zeta8
from mwfamily.polyring import Poly

small_ints = st.integers(min_value=-50, max_value=50)
rationals = st.builds(
    Fraction,
    st.integers(min_value=-10**6, max_value=10**6),
    st.integers(min_value=1, max_value=10**4),
)
zeta8s = st.builds(Zeta8, rationals, rationals, rationals, rationals)
nonzero_zeta8s = zeta8s.filter(bool)


@st.composite
def polys(draw, max_deg=4, rational=True, nonzero=False):
    coeff = rationals if rational else st.one_of(rationals, zeta8s)
    cs = draw(st.lists(coeff, min_size=1, max_size=max_deg + 1))
    p = Poly(cs)
    if nonzero and p.is_zero():
        p = Poly.const(1)
    return p
