"""The compiled kernel and the pure-Python fallback must agree exactly."""

import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwfamily import _kernel_py as P
from mwfamily import kernel

C = pytest.importorskip("mwfamily._kernel", reason="compiled kernel not built")

ints = st.integers(min_value=-10**12, max_value=10**12)
elems = st.builds(lambda n, d: P.z_make(*n, d), st.tuples(ints, ints, ints, ints),
                  st.integers(min_value=1, max_value=10**6))
nonzero = elems.filter(lambda a: not P.z_is_zero(a))
polys = st.lists(elems, max_size=6).map(P.p_trim)
nonzero_polys = polys.filter(bool)


@settings(max_examples=300)
@given(elems, elems)
def test_element_ops(a, b):
    for name in ("z_add", "z_sub", "z_mul"):
        assert getattr(C, name)(a, b) == getattr(P, name)(a, b)
    assert C.z_neg(a) == P.z_neg(a)
    assert C.z_is_zero(a) == P.z_is_zero(a)
    assert C.z_is_rational(a) == P.z_is_rational(a)


@settings(max_examples=300)
@given(nonzero, elems)
def test_inverse_and_division(a, b):
    assert C.z_inv(a) == P.z_inv(a)
    assert C.z_div(b, a) == P.z_div(b, a)


@settings(max_examples=200)
@given(polys, polys, elems)
def test_poly_ops(p, q, c):
    for name in ("p_add", "p_sub", "p_mul"):
        assert getattr(C, name)(p, q) == getattr(P, name)(p, q)
    assert C.p_scale(p, c) == P.p_scale(p, c)
    assert C.p_deriv(p) == P.p_deriv(p)
    assert C.p_eval(p, c) == P.p_eval(p, c)
    assert C.p_shift_pow(p, 3) == P.p_shift_pow(p, 3)


@settings(max_examples=200)
@given(polys, nonzero_polys)
def test_poly_division_and_gcd(p, q):
    assert C.p_divmod(p, q) == P.p_divmod(p, q)
    assert C.p_gcd(p, q) == P.p_gcd(p, q)
    assert C.p_monic(q) == P.p_monic(q)


def test_backend_switch():
    assert kernel.BACKEND == ("python" if os.environ.get("MWFAMILY_PURE") else "compiled")
    out = subprocess.run(
        [sys.executable, "-c", "import mwfamily; print(mwfamily.BACKEND)"],
        env={**os.environ, "MWFAMILY_PURE": "1"}, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
