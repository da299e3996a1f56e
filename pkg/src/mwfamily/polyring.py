"""Univariate polynomials and rational functions over Q(zeta8).

Places of the rational function field are represented without ever
enumerating roots: a finite place is a monic squarefree "cluster"
polynomial standing for the set of its roots, all of which must carry the
same valuation data.  :func:`gcd_free_basis` produces clusters with that
property for a given set of polynomials.
"""

import math
from fractions import Fraction
from functools import total_ordering

from . import kernel as K
from .fields import conjugate, field_sqrt, field_value, from_z, to_z

__all__ = [
    "Poly",
    "RatFun",
    "Place",
    "PlaceBasis",
    "INFINITY",
    "ClusterSplitError",
    "poly_gcd",
    "squarefree_decompose",
    "squarefree_part",
    "resultant",
    "discriminant",
    "valuation",
    "gcd_free_basis",
    "poly_sqrt",
    "ratfun_sqrt",
]

NEG_INF = -math.inf


class ClusterSplitError(ValueError):
    """A cluster polynomial is not uniform for the function being valued."""


class Poly:
    """Polynomial in t with coefficients in Q(zeta8), immutable."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=()):
        if isinstance(coeffs, Poly):
            self._c = coeffs._c
        else:
            if not isinstance(coeffs, (list, tuple)):
                coeffs = [coeffs]
            self._c = K.p_trim([to_z(field_value(c)) if not isinstance(c, int) else (c, 0, 0, 0, 1)
                                for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, c):
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def t(cls):
        return cls._raw((K.ZERO, K.ONE))

    @classmethod
    def const(cls, c):
        return cls._raw(K.p_trim([to_z(c)]))

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Poly):
            return x
        return cls.const(x)

    # -- inspection
    @property
    def coeffs(self):
        return [from_z(c) for c in self._c]

    @property
    def degree(self):
        return len(self._c) - 1 if self._c else NEG_INF

    def deg(self):
        """Degree with -1 for the zero polynomial (integer arithmetic helper)."""
        return len(self._c) - 1

    @property
    def lc(self):
        return from_z(self._c[-1]) if self._c else Fraction(0)

    def coeff(self, i):
        return from_z(self._c[i]) if 0 <= i < len(self._c) else Fraction(0)

    def is_zero(self):
        return not self._c

    def is_constant(self):
        return len(self._c) <= 1

    def is_one(self):
        return self._c == (K.ONE,)

    def is_rational(self):
        return all(K.z_is_rational(c) for c in self._c)

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, RatFun):
            return other == self
        try:
            return self._c == Poly.const(other)._c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._c)
        return self._hash

    def sort_key(self):
        return (len(self._c), self._c)

    # -- arithmetic
    def __neg__(self):
        return Poly._raw(K.p_neg(self._c))

    def __add__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        try:
            return Poly._raw(K.p_add(self._c, Poly.coerce(other)._c))
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        try:
            return Poly._raw(K.p_sub(self._c, Poly.coerce(other)._c))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return Poly._raw(K.p_sub(Poly.coerce(other)._c, self._c))
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        if isinstance(other, Poly):
            return Poly._raw(K.p_mul(self._c, other._c))
        try:
            return Poly._raw(K.p_scale(self._c, to_z(other)))
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (Poly, RatFun)):
            return RatFun(self) / other
        try:
            return Poly._raw(K.p_scale(self._c, K.z_inv(to_z(other))))
        except TypeError:
            return NotImplemented

    def __rtruediv__(self, other):
        return RatFun(Poly.coerce(other)) / RatFun(self)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        acc = (K.ONE,)
        base = self._c
        while n:
            if n & 1:
                acc = K.p_mul(acc, base)
            n >>= 1
            if n:
                base = K.p_mul(base, base)
        return Poly._raw(acc)

    def __divmod__(self, other):
        q, r = K.p_divmod(self._c, Poly.coerce(other)._c)
        return Poly._raw(q), Poly._raw(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, other):
        """True if self divides other."""
        return not (Poly.coerce(other) % self)

    def monic(self):
        return Poly._raw(K.p_monic(self._c))

    def deriv(self):
        return Poly._raw(K.p_deriv(self._c))

    def __call__(self, x):
        if isinstance(x, (Poly, RatFun)):
            return self.compose(x)
        return from_z(K.p_eval(self._c, to_z(x)))

    def compose(self, x):
        """self(x) for x a Poly or RatFun."""
        if isinstance(x, RatFun) and not x.den.is_one():
            # homogenize: sum c_i num^i den^(n-i) / den^n
            n = self.deg()
            if n < 0:
                return RatFun(Poly())
            acc = Poly()
            num_pows = [Poly.const(1)]
            for _ in range(n):
                num_pows.append(num_pows[-1] * x.num)
            den_pow = Poly.const(1)
            for i in range(n, -1, -1):
                if self._c[i] != K.ZERO:
                    acc = acc + num_pows[i] * den_pow * from_z(self._c[i])
                den_pow = den_pow * x.den
            return RatFun(acc, x.den ** n)
        if isinstance(x, RatFun):
            x = x.num
        acc = Poly()
        for c in reversed(self._c):
            acc = acc * x + from_z(c)
        return acc

    def reverse(self, n):
        """s^n * p(1/s); requires deg p <= n."""
        if self.deg() > n:
            raise ValueError(f"degree {self.deg()} exceeds {n}")
        c = list(self._c) + [K.ZERO] * (n + 1 - len(self._c))
        return Poly._raw(K.p_trim(c[::-1]))

    def scale_var(self, c):
        """p(c*t)."""
        cz = to_z(c)
        out = []
        pw = K.ONE
        for a in self._c:
            out.append(K.z_mul(a, pw))
            pw = K.z_mul(pw, cz)
        return Poly._raw(K.p_trim(out))

    def conj(self, k):
        """Apply z -> z^k to every coefficient."""
        return Poly([conjugate(c, k) for c in self.coeffs])

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return self.format("t")

    def format(self, var="t"):
        if not self._c:
            return "0"
        terms = []
        for i in range(len(self._c) - 1, -1, -1):
            z = self._c[i]
            if K.z_is_zero(z):
                continue
            c = from_z(z)
            cs = str(c)
            if not isinstance(c, Fraction):
                cs = f"({c})"
            mon = "" if i == 0 else var if i == 1 else f"{var}^{i}"
            if mon:
                if cs == "1":
                    terms.append(mon)
                elif cs == "-1":
                    terms.append("-" + mon)
                else:
                    terms.append(f"{cs}*{mon}")
            else:
                terms.append(cs)
        return " + ".join(terms).replace("+ -", "- ")


class RatFun:
    """Reduced quotient num/den of polynomials with den monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _reduced=False):
        num = Poly.coerce(num) if not isinstance(num, RatFun) else num
        if isinstance(num, RatFun):
            if den is None:
                self.num, self.den, self._hash = num.num, num.den, None
                return
            r = num / den
            self.num, self.den, self._hash = r.num, r.den, None
            return
        den = Poly.const(1) if den is None else Poly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced and not den.is_constant():
            if num.is_zero():
                den = Poly.const(1)
            else:
                g = poly_gcd(num, den)
                if not g.is_one():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
        lc = den._c[-1]
        if lc != K.ONE:
            inv = K.z_inv(lc)
            num = Poly._raw(K.p_scale(num._c, inv))
            den = Poly._raw(K.p_scale(den._c, inv))
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RatFun):
            return x
        return cls(Poly.coerce(x))

    @classmethod
    def t(cls):
        return cls(Poly.t())

    def is_poly(self):
        return self.den.is_one()

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self):
        return self.den.is_one() and self.num.is_constant()

    def is_rational(self):
        return self.num.is_rational() and self.den.is_rational()

    def as_poly(self):
        if not self.den.is_one():
            raise ValueError("rational function is not a polynomial")
        return self.num

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            try:
                other = RatFun.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __neg__(self):
        return RatFun(-self.num, self.den, _reduced=True)

    def __add__(self, other):
        try:
            o = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return RatFun(self.num + o.num, _reduced=True)
        g = poly_gcd(self.den, o.den)
        if g.is_one():
            return RatFun(self.num * o.den + o.num * self.den, self.den * o.den, _reduced=True)
        e1 = self.den.exact_div(g)
        e2 = o.den.exact_div(g)
        num = self.num * e2 + o.num * e1
        if num.is_zero():
            return RatFun(Poly())
        h = poly_gcd(num, g)
        if not h.is_one():
            num = num.exact_div(h)
            g = g.exact_div(h)
        return RatFun(num, g * e1 * e2, _reduced=True)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            return self + (-RatFun.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return RatFun.coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (RatFun, Poly)):
            o = RatFun.coerce(other)
        else:
            try:
                c = to_z(other)
            except TypeError:
                return NotImplemented
            return RatFun(Poly._raw(K.p_scale(self.num._c, c)), self.den, _reduced=True)
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if n1.is_zero() or n2.is_zero():
            return RatFun(Poly())
        if not d2.is_one():
            g = poly_gcd(n1, d2)
            if not g.is_one():
                n1, d2 = n1.exact_div(g), d2.exact_div(g)
        if not d1.is_one():
            g = poly_gcd(n2, d1)
            if not g.is_one():
                n2, d1 = n2.exact_div(g), d1.exact_div(g)
        return RatFun(n1 * n2, d1 * d2, _reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFun(self.den, self.num, _reduced=True)

    def __truediv__(self, other):
        if isinstance(other, (RatFun, Poly)):
            return self * RatFun.coerce(other).inverse()
        try:
            c = K.z_inv(to_z(other))
        except TypeError:
            return NotImplemented
        return RatFun(Poly._raw(K.p_scale(self.num._c, c)), self.den, _reduced=True)

    def __rtruediv__(self, other):
        return RatFun.coerce(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RatFun(self.num ** n, self.den ** n, _reduced=True)

    def __call__(self, x):
        if isinstance(x, (Poly, RatFun)):
            return self.compose(x)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return field_value(self.num(x) / d)

    def compose(self, x):
        return RatFun.coerce(self.num.compose(x)) / RatFun.coerce(self.den.compose(x))

    def scale_var(self, c):
        return RatFun(self.num.scale_var(c), self.den.scale_var(c))

    def conj(self, k):
        return RatFun(self.num.conj(k), self.den.conj(k))

    def __repr__(self):
        return f"RatFun({self})"

    def __str__(self):
        return self.format("t")

    def format(self, var="t"):
        if self.den.is_one():
            return self.num.format(var)
        return f"({self.num.format(var)})/({self.den.format(var)})"


# ---------------------------------------------------------------- places

@total_ordering
class Place:
    """A finite cluster place or the place at infinity."""

    __slots__ = ("poly",)

    def __init__(self, poly=None):
        if poly is not None:
            poly = Poly.coerce(poly)
            if poly.deg() < 1:
                raise ValueError("a finite place needs a nonconstant cluster polynomial")
            poly = poly.monic()
        self.poly = poly

    @property
    def is_infinite(self):
        return self.poly is None

    @property
    def degree(self):
        """Number of geometric points in the cluster."""
        return 1 if self.poly is None else self.poly.deg()

    def _key(self):
        return (1,) if self.poly is None else (0,) + self.poly.sort_key()

    def __eq__(self, other):
        return isinstance(other, Place) and self.poly == other.poly

    def __lt__(self, other):
        return self._key() < other._key()

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return "Place(inf)" if self.poly is None else f"Place({self.poly})"


INFINITY = Place()


class PlaceBasis:
    """Pairwise coprime monic squarefree clusters refining ``sources``."""

    def __init__(self, clusters, sources):
        self.clusters = sorted(clusters, key=Poly.sort_key)
        self.sources = list(sources)

    @property
    def places(self):
        return [Place(c) for c in self.clusters]

    def factorization(self, p):
        """(constant, {cluster: multiplicity}) with p = const * prod cluster^m."""
        p = Poly.coerce(p)
        out = {}
        rest = p
        for c in self.clusters:
            m = 0
            while True:
                q, r = divmod(rest, c)
                if r:
                    break
                rest = q
                m += 1
            if m:
                out[c] = m
        if rest.deg() > 0:
            raise ValueError("polynomial is not supported on this basis")
        return rest.lc, out

    def __iter__(self):
        return iter(self.clusters)

    def __len__(self):
        return len(self.clusters)


# ---------------------------------------------------------------- algorithms

def poly_gcd(p, q):
    p, q = Poly.coerce(p), Poly.coerce(q)
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    return Poly._raw(K.p_gcd(p._c, q._c))


def squarefree_decompose(p):
    """Yun's algorithm: [(factor, multiplicity), ...] with monic factors."""
    p = Poly.coerce(p)
    if p.is_zero():
        raise ValueError("squarefree decomposition of zero")
    if p.deg() == 0:
        return []
    p = p.monic()
    dp = p.deriv()
    b = poly_gcd(p, dp)
    c = p.exact_div(b)
    d = dp.exact_div(b) - c.deriv()
    out = []
    i = 1
    while c.deg() > 0:
        a = poly_gcd(c, d)
        if a.deg() > 0:
            out.append((a, i))
        c = c.exact_div(a)
        d = d.exact_div(a) - c.deriv()
        i += 1
    return out


def squarefree_part(p, odd_only=False):
    """Product of the Yun factors (or of those with odd multiplicity)."""
    acc = Poly.const(1)
    for a, m in squarefree_decompose(p):
        if not odd_only or m % 2:
            acc = acc * a
    return acc


def resultant(p, q):
    """Resultant via the Euclidean remainder sequence."""
    p, q = Poly.coerce(p), Poly.coerce(q)
    if p.is_zero() or q.is_zero():
        return Fraction(0)
    acc = K.ONE
    a, b = p._c, q._c
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            lcb = b[-1]
            for _ in range(m):
                acc = K.z_mul(acc, lcb)
            return from_z(acc)
        _, r = K.p_divmod(a, b)
        if not r:
            return Fraction(0)
        if (m * n) % 2:
            acc = K.z_neg(acc)
        lcb = b[-1]
        for _ in range(m - (len(r) - 1)):
            acc = K.z_mul(acc, lcb)
        a, b = b, r


def discriminant(p):
    p = Poly.coerce(p)
    n = p.deg()
    if n < 1:
        raise ValueError("discriminant of a constant polynomial")
    res = to_z(field_value(resultant(p, p.deriv())))
    val = K.z_div(res, p._c[-1])
    if (n * (n - 1) // 2) % 2:
        val = K.z_neg(val)
    return from_z(val)


def _poly_valuation(c, p):
    m = 0
    while True:
        q, r = divmod(p, c)
        if r:
            break
        p = q
        m += 1
    if poly_gcd(p, c).deg() > 0:
        raise ClusterSplitError(f"cluster {c} splits for this function; refine the basis first")
    return m


def valuation(place, r, chart_weight=0):
    """Order of vanishing of r at a place; math.inf for r = 0.

    At infinity the value is deg(den) - deg(num) + chart_weight, so callers
    evaluating s-chart coordinates x(1/s) * s^(2n) pass chart_weight = 2n.
    Finite places ignore chart_weight.
    """
    r = RatFun.coerce(r)
    if r.is_zero():
        return math.inf
    if place.is_infinite:
        return r.den.deg() - r.num.deg() + chart_weight
    c = place.poly
    return _poly_valuation(c, r.num) - _poly_valuation(c, r.den)


def _refine(basis, p):
    out = []
    for b in basis:
        if p.deg() < 1:
            out.append(b)
            continue
        g = poly_gcd(b, p)
        if g.deg() < 1:
            out.append(b)
            continue
        rest = b.exact_div(g)
        p = p.exact_div(g)
        out.append(g)
        if rest.deg() > 0:
            out.append(rest)
    if p.deg() > 0:
        out.append(p.monic())
    return out


def gcd_free_basis(sources):
    clusters = []
    srcs = []
    for s in sources:
        s = Poly.coerce(s.num if isinstance(s, RatFun) else s)
        if s.is_zero():
            raise ValueError("gcd-free basis of the zero polynomial")
        srcs.append(s)
        for a, _ in squarefree_decompose(s):
            clusters = _refine(clusters, a)
    return PlaceBasis(clusters, srcs)


def poly_sqrt(p):
    """A square root of p in Q(zeta8)[t], or None."""
    p = Poly.coerce(p)
    if p.is_zero():
        return p
    w = field_sqrt(p.lc)
    if w is None:
        return None
    acc = Poly.const(w)
    for a, m in squarefree_decompose(p):
        if m % 2:
            return None
        acc = acc * a ** (m // 2)
    return acc


def ratfun_sqrt(r):
    r = RatFun.coerce(r)
    if r.is_zero():
        return r
    n = poly_sqrt(r.num)
    if n is None:
        return None
    d = poly_sqrt(r.den)
    if d is None:
        # den is monic; a constant factor may move to the numerator
        return None
    return RatFun(n, d)
