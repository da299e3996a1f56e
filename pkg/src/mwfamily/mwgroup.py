"""Group law over k(t) and the Shioda height pairing."""

from dataclasses import dataclass, field
from fractions import Fraction

from .polyring import INFINITY, Place, Poly, RatFun, gcd_free_basis, valuation
from .weierstrass import (
    chart_degree,
    classify_fibers,
    infinity_chart,
    require_minimal,
)

__all__ = [
    "CurvePoint",
    "O",
    "OffCurveError",
    "AdditiveFiberError",
    "AmbiguousComponentError",
    "LocalContribution",
    "GramReport",
    "add_points",
    "negate",
    "mul_scalar",
    "intersection_with_zero",
    "local_contribution",
    "height",
    "pairing",
    "gram",
]


class OffCurveError(ValueError):
    """A point does not satisfy the model's equation."""


class AdditiveFiberError(ValueError):
    """The section meets a non-identity component of an I_n* fiber."""


class AmbiguousComponentError(ValueError):
    """Odd N with v(y) > N/2: the component index is not determined."""


class CurvePoint:
    """Affine point (x, y) over k(t), or the point at infinity."""

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        self.x = RatFun.coerce(x) if not isinstance(x, RatFun) else x
        self.y = RatFun.coerce(y) if not isinstance(y, RatFun) else y

    @classmethod
    def infinity(cls):
        obj = cls.__new__(cls)
        obj.x = obj.y = None
        return obj

    @property
    def is_infinity(self):
        return self.x is None

    def is_rational(self):
        return self.is_infinity or (self.x.is_rational() and self.y.is_rational())

    def conj(self, k):
        if self.is_infinity:
            return self
        return CurvePoint(self.x.conj(k), self.y.conj(k))

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


O = CurvePoint.infinity()


def check_on_curve(m, P):
    if not P.is_infinity and not m.contains(P.x, P.y):
        raise OffCurveError(f"point {P!r} is not on the curve")


def negate(m, P):
    if P.is_infinity:
        return P
    return CurvePoint(P.x, -P.y - m.a1 * P.x - m.a3)


def _add(m, P, Q):
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a1, a2, a3, a4, a6 = m.coeffs
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if (y1 + y2 + a1 * x2 + a3).is_zero():
            return O
        den = 2 * y1 + a1 * x1 + a3
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
        nu = (-(x1 ** 3) + a4 * x1 + 2 * a6 - a3 * y1) / den
    else:
        dx = x2 - x1
        lam = (y2 - y1) / dx
        nu = (y1 * x2 - y2 * x1) / dx
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return CurvePoint(x3, y3)


def add_points(m, P, Q):
    check_on_curve(m, P)
    check_on_curve(m, Q)
    return _add(m, P, Q)


def _mul(m, P, k):
    if k < 0:
        return _mul(m, negate(m, P), -k)
    acc = O
    base = P
    while k:
        if k & 1:
            acc = _add(m, acc, base)
        k >>= 1
        if k:
            base = _add(m, base, base)
    return acc


def mul_scalar(m, P, k):
    check_on_curve(m, P)
    return _mul(m, P, k)


def order_of(m, P, bound=64):
    """Least k <= bound with kP = O, or None."""
    Q = P
    for k in range(1, bound + 1):
        if Q.is_infinity:
            return k
        Q = _add(m, Q, P)
    return None


# ---------------------------------------------------------------- heights

def intersection_with_zero(m, P):
    """(P . O): half the pole order of x over all places, s-chart at infinity."""
    require_minimal(m)
    if P.is_infinity:
        raise ValueError("intersection with zero is not defined for O itself")
    check_on_curve(m, P)
    n = chart_degree(m)
    finite = Fraction(P.x.den.deg(), 2)
    v_inf = valuation(INFINITY, P.x, 2 * n)
    return finite + Fraction(max(0, -v_inf), 2)


@dataclass(frozen=True)
class LocalContribution:
    """Correction c_v(P, P) at one fiber; ``value`` is per root of the cluster."""

    place: Place
    fiber_N: int
    n_index: Fraction
    value: Fraction
    count: int = 1
    parts: tuple = field(default=())

    @property
    def total(self):
        if self.parts:
            return sum((p[0].deg() * p[2] for p in self.parts), Fraction(0))
        return self.count * self.value


_ADDITIVE_VALUE = {"III": Fraction(1, 2), "IV": Fraction(2, 3),
                   "IV*": Fraction(4, 3), "III*": Fraction(3, 2)}


def _at_infinity(m, P):
    """Model and point in s = 1/t with weight n = chi; the place becomes s = 0."""
    n = chart_degree(m)
    ms = infinity_chart(m, n)
    inv_t = RatFun(Poly.const(1), Poly.t())
    s = RatFun(Poly.t())
    xs = P.x.compose(inv_t) * s ** (2 * n)
    ys = P.y.compose(inv_t) * s ** (3 * n)
    return ms, CurvePoint(xs, ys), Place(Poly.t())


def _singular_test_data(m, P):
    a1, a2, a3, a4, _ = m.coeffs
    eta = P.y + (a1 * P.x + a3) / 2
    fx = 3 * P.x * P.x + 2 * a2 * P.x + a4 - a1 * P.y
    return eta, fx


def local_contribution(m, P, fiber):
    """c_v(P, P) at ``fiber``.

    P meets a non-identity component exactly when it reduces to the singular
    point of the fiber, i.e. both partial derivatives of the Weierstrass
    equation vanish there.  Then n = min(v(eta), N/2) with
    eta = y + (a1 x + a3)/2, which is y itself for the family models.
    """
    if P.is_infinity:
        return LocalContribution(fiber.place, fiber.components, Fraction(0), Fraction(0), fiber.count)
    if fiber.place.is_infinite:
        mm, PP, place = _at_infinity(m, P)
    else:
        mm, PP, place = m, P, fiber.place
    cluster = place.poly
    eta, fx = _singular_test_data(mm, PP)
    srcs = [cluster]
    for r in (PP.x, eta, fx):
        if not r.is_zero():
            srcs.extend(p for p in (r.num, r.den) if p.deg() > 0)
    subs = [c for c in gcd_free_basis(srcs).clusters if c.divides(cluster)]
    N = fiber.components
    parts = []
    for c in subs:
        pl = Place(c)
        if valuation(pl, PP.x) < 0 or valuation(pl, eta) < 1 or valuation(pl, fx) < 1:
            parts.append((c, Fraction(0), Fraction(0)))
            continue
        if not fiber.multiplicative:
            if fiber.type_tag in _ADDITIVE_VALUE:
                parts.append((c, None, _ADDITIVE_VALUE[fiber.type_tag]))
                continue
            raise AdditiveFiberError(
                f"section meets a non-identity component of {fiber.type_tag}")
        ve = valuation(pl, eta)
        half = Fraction(N, 2)
        if N % 2 and ve > half:
            raise AmbiguousComponentError(f"odd N = {N} with v(eta) = {ve} > N/2")
        n = half if ve >= half else Fraction(ve)
        parts.append((c, n, n * (N - n) / N))
    if fiber.place.is_infinite:
        out_place = INFINITY
    else:
        out_place = fiber.place
    ns = {p[1] for p in parts}
    vals = {p[2] for p in parts}
    uniform = len(vals) == 1
    return LocalContribution(
        out_place, N,
        ns.pop() if len(ns) == 1 else None,
        vals.pop() if uniform else None,
        fiber.count,
        () if uniform else tuple(parts),
    )


def height(m, P):
    """<P, P> = 2 chi + 2 (P . O) - sum of fiber corrections."""
    if P.is_infinity:
        return Fraction(0)
    require_minimal(m)
    check_on_curve(m, P)
    summary = classify_fibers(m)
    h = 2 * summary.chi + 2 * intersection_with_zero(m, P)
    for fb in summary.fibers:
        if fb.component_group_order == 1:
            continue
        h -= local_contribution(m, P, fb).total
    return h


def pairing(m, P, Q):
    """<P, Q> by polarization."""
    if P.is_infinity or Q.is_infinity:
        return Fraction(0)
    if P == Q:
        return height(m, P)
    S = add_points(m, P, Q)
    return (height(m, S) - height(m, P) - height(m, Q)) / 2


def det(matrix):
    """Exact determinant by fraction-valued Gaussian elimination."""
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    d = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            d = -d
        d *= a[i][i]
        for r in range(i + 1, n):
            f = a[r][i] / a[i][i]
            if f:
                for c in range(i, n):
                    a[r][c] -= f * a[i][c]
    return d


@dataclass(frozen=True)
class GramReport:
    matrix: tuple
    determinant: Fraction

    def scaled(self, k=4):
        """Gram matrix of the lattice with pairing multiplied by k."""
        mat = tuple(tuple(k * v for v in row) for row in self.matrix)
        return GramReport(mat, det(mat))


def gram(m, points):
    pts = list(points)
    heights = [height(m, P) for P in pts]
    n = len(pts)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = heights[i]
        for j in range(i + 1, n):
            if pts[i].is_infinity or pts[j].is_infinity:
                v = Fraction(0)
            else:
                S = _add(m, pts[i], pts[j])
                v = (height(m, S) - heights[i] - heights[j]) / 2
            rows[i][j] = rows[j][i] = v
    mat = tuple(tuple(r) for r in rows)
    return GramReport(mat, det(mat))
