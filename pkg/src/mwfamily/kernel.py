"""Backend selection for the arithmetic kernel.

The compiled ``_kernel`` extension is used when it was built; otherwise the
pure-Python ``_kernel_py`` is loaded.  Setting ``MWFAMILY_PURE=1`` forces the
fallback.
"""

import os

if os.environ.get("MWFAMILY_PURE"):
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel as _impl
    except ImportError:
        from . import _kernel_py as _impl

BACKEND = "compiled" if _impl.__name__.endswith("._kernel") else "python"

ZERO = _impl.ZERO
ONE = _impl.ONE
z_make = _impl.z_make
z_from_ratio = _impl.z_from_ratio
z_is_zero = _impl.z_is_zero
z_is_one = _impl.z_is_one
z_is_rational = _impl.z_is_rational
z_neg = _impl.z_neg
z_add = _impl.z_add
z_sub = _impl.z_sub
z_mul = _impl.z_mul
z_inv = _impl.z_inv
z_div = _impl.z_div
p_trim = _impl.p_trim
p_add = _impl.p_add
p_sub = _impl.p_sub
p_neg = _impl.p_neg
p_scale = _impl.p_scale
p_mul = _impl.p_mul
p_monic = _impl.p_monic
p_divmod = _impl.p_divmod
p_gcd = _impl.p_gcd
p_deriv = _impl.p_deriv
p_eval = _impl.p_eval
p_shift_pow = _impl.p_shift_pow
