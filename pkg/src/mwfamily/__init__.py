"""Exact Mordell-Weil computations for Pythagorean families of elliptic curves.

The curves are y^2 = x(x - f^2)(x - g^2) over Qbar(t), with f^2 + g^2 = h^2.
Arithmetic is exact over Q(zeta8); see :mod:`mwfamily.kernel` for the
compiled/pure-Python backend switch.
"""

__version__ = "0.1.0"

from .kernel import BACKEND
from .fields import I, SQRT2, SQRT_MINUS2, ZETA, Zeta8
from .polyring import INFINITY, Place, Poly, RatFun
from .weierstrass import (
    CoordinateChange,
    WeierstrassModel,
    classify_fibers,
    euler_characteristic,
    is_globally_minimal,
    minimal_model,
    standard_invariants,
)
from .mwgroup import CurvePoint, O, add_points, gram, height, mul_scalar, pairing
from .torsion import torsion_over_Q, torsion_structure_family
from .family import (
    PythagoreanTriple,
    canonical_points,
    curve_of,
    make_triple,
    mw_certificate_qbar,
    mw_structure_qt,
    triple_from_generators,
)
from .quadric import Quadric, family_of, parametrize, rank3_member, specialize

__all__ = [
    "__version__",
    "BACKEND",
    "I",
    "SQRT2",
    "SQRT_MINUS2",
    "ZETA",
    "Zeta8",
    "INFINITY",
    "Place",
    "Poly",
    "RatFun",
    "CoordinateChange",
    "WeierstrassModel",
    "classify_fibers",
    "euler_characteristic",
    "is_globally_minimal",
    "minimal_model",
    "standard_invariants",
    "CurvePoint",
    "O",
    "add_points",
    "gram",
    "height",
    "mul_scalar",
    "pairing",
    "torsion_over_Q",
    "torsion_structure_family",
    "PythagoreanTriple",
    "canonical_points",
    "curve_of",
    "make_triple",
    "mw_certificate_qbar",
    "mw_structure_qt",
    "triple_from_generators",
    "Quadric",
    "family_of",
    "parametrize",
    "rank3_member",
    "specialize",
]
