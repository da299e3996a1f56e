"""Exact arithmetic in Q and in the cyclotomic field Q(zeta8).

Rationals are plain :class:`fractions.Fraction` values.  Elements of Q(zeta8)
are :class:`Zeta8` instances, written in the basis 1, z, z^2, z^3 with
z = exp(2*pi*i/8) and z^4 = -1.  Every constant the family computations need
lives here: i = z^2, sqrt(2) = z - z^3, sqrt(-2) = z + z^3.

A "field element" is either a Fraction or a Zeta8.  Mixed arithmetic promotes
the rational operand, and :func:`field_value` demotes a Zeta8 with vanishing
irrational part back to a Fraction.
"""

from fractions import Fraction
from math import isqrt

from . import kernel as K

__all__ = [
    "Zeta8",
    "to_z",
    "from_z",
    "field_value",
    "is_rational_value",
    "named_constant",
    "is_square_rational",
    "zeta8_sqrt",
    "field_sqrt",
    "encode_field",
    "decode_field",
    "conjugate",
    "I",
    "SQRT2",
    "SQRT_MINUS2",
    "ZETA",
]


class Zeta8:
    """Element c0 + c1*z + c2*z^2 + c3*z^3 of Q(zeta8)."""

    __slots__ = ("_z",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        cs = [Fraction(c) for c in (c0, c1, c2, c3)]
        den = 1
        for c in cs:
            den = den * c.denominator // _gcd(den, c.denominator)
        self._z = K.z_make(*(int(c * den) for c in cs), den)

    @classmethod
    def _raw(cls, z):
        obj = cls.__new__(cls)
        obj._z = z
        return obj

    @property
    def coeffs(self):
        n0, n1, n2, n3, d = self._z
        return tuple(Fraction(n, d) for n in (n0, n1, n2, n3))

    c0 = property(lambda self: self.coeffs[0])
    c1 = property(lambda self: self.coeffs[1])
    c2 = property(lambda self: self.coeffs[2])
    c3 = property(lambda self: self.coeffs[3])

    def is_rational(self):
        return K.z_is_rational(self._z)

    def __bool__(self):
        return not K.z_is_zero(self._z)

    def __eq__(self, other):
        try:
            return self._z == to_z(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self._z[0], self._z[4]))
        return hash(self._z)

    def __neg__(self):
        return Zeta8._raw(K.z_neg(self._z))

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            return Zeta8._raw(K.z_add(self._z, to_z(other)))
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        try:
            return Zeta8._raw(K.z_sub(self._z, to_z(other)))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return Zeta8._raw(K.z_sub(to_z(other), self._z))
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        try:
            return Zeta8._raw(K.z_mul(self._z, to_z(other)))
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            return Zeta8._raw(K.z_mul(self._z, K.z_inv(to_z(other))))
        except TypeError:
            return NotImplemented

    def __rtruediv__(self, other):
        try:
            return Zeta8._raw(K.z_mul(to_z(other), K.z_inv(self._z)))
        except TypeError:
            return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self._z if n >= 0 else K.z_inv(self._z)
        acc = K.ONE
        n = abs(n)
        while n:
            if n & 1:
                acc = K.z_mul(acc, base)
            base = K.z_mul(base, base)
            n >>= 1
        return Zeta8._raw(acc)

    def inverse(self):
        return Zeta8._raw(K.z_inv(self._z))

    def __repr__(self):
        return "Zeta8(%s)" % ", ".join(str(c) for c in self.coeffs)

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) + ("" if k == 0 else "*z" if k == 1 else f"*z^{k}"))
        return " + ".join(terms) if terms else "0"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def to_z(x):
    """Kernel tuple of an int, Fraction or Zeta8."""
    if isinstance(x, Zeta8):
        return x._z
    if isinstance(x, int):
        return (x, 0, 0, 0, 1)
    if isinstance(x, Fraction):
        return (x.numerator, 0, 0, 0, x.denominator)
    raise TypeError(f"not a field element: {x!r}")


def from_z(z):
    """Field value of a kernel tuple: Fraction when rational, else Zeta8."""
    if K.z_is_rational(z):
        return Fraction(z[0], z[4])
    return Zeta8._raw(z)


def field_value(x):
    """Normalize an int/Fraction/Zeta8 to its canonical field value."""
    return from_z(to_z(x))


def is_rational_value(x):
    return K.z_is_rational(to_z(x))


ZETA = Zeta8(0, 1, 0, 0)
I = Zeta8(0, 0, 1, 0)
SQRT2 = Zeta8(0, 1, 0, -1)
SQRT_MINUS2 = Zeta8(0, 1, 0, 1)

_NAMED = {"i": I, "sqrt2": SQRT2, "sqrt_minus2": SQRT_MINUS2, "zeta": ZETA}


def named_constant(name):
    try:
        return _NAMED[name]
    except KeyError:
        raise KeyError(f"unknown constant {name!r}; expected one of {sorted(_NAMED)}") from None


def conjugate(x, k):
    """Image of x under the automorphism z -> z^k, k in {1, 3, 5, 7}."""
    n0, n1, n2, n3, d = to_z(x)
    if k == 1:
        out = (n0, n1, n2, n3, d)
    elif k == 3:
        out = (n0, n3, -n2, n1, d)
    elif k == 5:
        out = (n0, -n1, n2, -n3, d)
    elif k == 7:
        out = (n0, -n3, -n2, -n1, d)
    else:
        raise ValueError("k must be one of 1, 3, 5, 7")
    return from_z(out)


def is_square_rational(c):
    """Nonnegative rational square root of c, or None."""
    c = Fraction(c)
    if c < 0:
        return None
    p, q = c.numerator, c.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def _sqrt_gaussian(a, b):
    """A square root x + y*i of a + b*i in Q(i), or None."""
    if b == 0:
        r = is_square_rational(a)
        if r is not None:
            return r, Fraction(0)
        r = is_square_rational(-a)
        if r is not None:
            return Fraction(0), r
        return None
    m = is_square_rational(a * a + b * b)
    if m is None:
        return None
    for s in (m, -m):
        x = is_square_rational((a + s) / 2)
        if x:
            return x, b / (2 * x)
    return None


def _gmul(p, q):
    return p[0] * q[0] - p[1] * q[1], p[0] * q[1] + p[1] * q[0]


def zeta8_sqrt(c):
    """A square root of c in Q(zeta8), or None when c is not a square there.

    Works in the tower Q(i)(sqrt2): c = u + v*sqrt2 with u, v in Q(i) and
    (p + q*sqrt2)^2 = c reduces to square roots in Q(i).
    """
    c0, c1, c2, c3 = (Fraction(n, to_z(c)[4]) for n in to_z(c)[:4])
    if not (c0 or c1 or c2 or c3):
        return Fraction(0)
    u = (c0, c2)
    v = ((c1 - c3) / 2, (c1 + c3) / 2)
    cands = []
    if v == (0, 0):
        p = _sqrt_gaussian(*u)
        if p is not None:
            cands.append((p, (Fraction(0), Fraction(0))))
        q = _sqrt_gaussian(u[0] / 2, u[1] / 2)
        if q is not None:
            cands.append(((Fraction(0), Fraction(0)), q))
    else:
        uu = _gmul(u, u)
        vv = _gmul(v, v)
        disc = _sqrt_gaussian(uu[0] - 2 * vv[0], uu[1] - 2 * vv[1])
        if disc is not None:
            for sgn in (1, -1):
                p2 = ((u[0] + sgn * disc[0]) / 2, (u[1] + sgn * disc[1]) / 2)
                p = _sqrt_gaussian(*p2)
                if p is None or p == (0, 0):
                    continue
                n = p[0] * p[0] + p[1] * p[1]
                q = _gmul(v, (p[0] / (2 * n), -p[1] / (2 * n)))  # v / (2p)
                cands.append((p, q))
    target = to_z(c)
    for p, q in cands:
        # p + q*sqrt2 in the z-basis: sqrt2 = z - z^3, i = z^2
        w = Zeta8(p[0], q[0] + q[1], p[1], q[1] - q[0])
        if K.z_mul(w._z, w._z) == target:
            return field_value(w)
    return None


def field_sqrt(c):
    """Square root of a Fraction/Zeta8 inside Q(zeta8), or None."""
    if is_rational_value(c):
        r = is_square_rational(field_value(c))
        if r is not None:
            return r
    return zeta8_sqrt(c)


def encode_field(x):
    """JSON form: "p/q" for rationals, a 4-list of such strings otherwise."""
    x = field_value(x)
    if isinstance(x, Fraction):
        return str(x)
    return [str(c) for c in x.coeffs]


def decode_field(obj):
    if isinstance(obj, bool):
        raise ValueError("booleans are not field elements")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        return Fraction(obj.strip())
    if isinstance(obj, (list, tuple)) and len(obj) == 4:
        return field_value(Zeta8(*(Fraction(str(c)) for c in obj)))
    raise ValueError(f"cannot decode field element from {obj!r}")
