"""Long Weierstrass models over k(t): coordinate changes, invariants,
global minimality, the chart at infinity and Kodaira fiber types."""

from dataclasses import dataclass, field
from fractions import Fraction

from .fields import field_value
from .polyring import (
    INFINITY,
    Place,
    Poly,
    RatFun,
    gcd_free_basis,
    ratfun_sqrt,
    valuation,
)

__all__ = [
    "WeierstrassModel",
    "CoordinateChange",
    "StandardInvariants",
    "KodairaFiber",
    "SurfaceSummary",
    "MinimalityVerdict",
    "SingularModelError",
    "NotMinimalError",
    "UnclassifiableFiberError",
    "transform",
    "standard_invariants",
    "is_globally_minimal",
    "minimal_model",
    "euler_characteristic",
    "infinity_chart",
    "classify_fibers",
    "shioda_tate_rho",
    "kodaira_type",
]


class SingularModelError(ArithmeticError):
    """The model has vanishing discriminant."""


class NotMinimalError(ValueError):
    """An operation needing a globally minimal integral model got another."""


class UnclassifiableFiberError(ArithmeticError):
    """Valuation pattern outside the characteristic-zero Kodaira table."""


def _rf(x):
    return x if isinstance(x, RatFun) else RatFun(Poly.coerce(x) if not isinstance(x, Poly) else x)


class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over k(t).

    ``chart`` is ``"t"`` or ``("s", n)`` for a model written in s = 1/t.
    """

    __slots__ = ("a1", "a2", "a3", "a4", "a6", "chart", "_memo")

    def __init__(self, a1=0, a2=0, a3=0, a4=0, a6=0, chart="t"):
        self.a1, self.a2, self.a3, self.a4, self.a6 = (_rf(a) for a in (a1, a2, a3, a4, a6))
        if chart != "t" and not (isinstance(chart, tuple) and chart[0] == "s" and chart[1] >= 0):
            raise ValueError(f"bad chart {chart!r}")
        self.chart = chart
        self._memo = {}

    @classmethod
    def short(cls, a4, a6):
        return cls(0, 0, 0, a4, a6)

    @classmethod
    def legendre_like(cls, e1, e2, e3=0):
        """y^2 = (x - e1)(x - e2)(x - e3)."""
        e1, e2, e3 = _rf(e1), _rf(e2), _rf(e3)
        return cls(0, -(e1 + e2 + e3), 0, e1 * e2 + e1 * e3 + e2 * e3, -(e1 * e2 * e3))

    @property
    def coeffs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def is_integral(self):
        return all(a.is_poly() for a in self.coeffs)

    def is_rational(self):
        return all(a.is_rational() for a in self.coeffs)

    def is_constant(self):
        return all(a.is_constant() for a in self.coeffs)

    @property
    def field(self):
        return "Q" if self.is_rational() else "Qzeta8"

    def contains(self, x, y):
        x, y = _rf(x), _rf(y)
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = ((x + self.a2) * x + self.a4) * x + self.a6
        return lhs == rhs

    def __eq__(self, other):
        return (isinstance(other, WeierstrassModel) and self.coeffs == other.coeffs
                and self.chart == other.chart)

    def __hash__(self):
        return hash((self.coeffs, self.chart))

    def memo(self, key, fn):
        try:
            return self._memo[key]
        except KeyError:
            val = self._memo[key] = fn()
            return val

    def __repr__(self):
        return "WeierstrassModel(%s)" % ", ".join(
            f"a{i}={a}" for i, a in zip((1, 2, 3, 4, 6), self.coeffs))


@dataclass(frozen=True)
class CoordinateChange:
    """x = u^2 x' + r, y = u^3 y' + u^2 s x' + w."""

    u: RatFun
    r: RatFun
    s: RatFun
    w: RatFun

    @classmethod
    def make(cls, u=1, r=0, s=0, w=0):
        u = _rf(u)
        if u.is_zero():
            raise ValueError("coordinate change with u = 0")
        return cls(u, _rf(r), _rf(s), _rf(w))

    @classmethod
    def identity(cls):
        return cls.make()

    def is_admissible(self):
        return self.u.is_constant()

    def compose(self, other):
        """Change equal to applying self, then other on the primed model."""
        u1, r1, s1, w1 = self.u, self.r, self.s, self.w
        u2, r2, s2, w2 = other.u, other.r, other.s, other.w
        return CoordinateChange(
            u1 * u2,
            u1 * u1 * r2 + r1,
            u1 * s2 + s1,
            u1 ** 3 * w2 + u1 * u1 * s1 * r2 + w1,
        )

    def inverse(self):
        u, r, s, w = self.u, self.r, self.s, self.w
        return CoordinateChange(u.inverse(), -r / (u * u), -s / u, (r * s - w) / u ** 3)

    def map_point(self, x, y):
        """Old coordinates (x, y) to new ones."""
        x, y = _rf(x), _rf(y)
        u, r, s, w = self.u, self.r, self.s, self.w
        xp = (x - r) / (u * u)
        yp = (y - s * (x - r) - w) / u ** 3
        return xp, yp


def transform(m, c):
    """Model in the primed coordinates of ``c``."""
    u, r, s, w = c.u, c.r, c.s, c.w
    if u.is_zero():
        raise ValueError("coordinate change with u = 0")
    a1, a2, a3, a4, a6 = m.coeffs
    b1 = (a1 + 2 * s) / u
    b2 = (a2 - s * a1 + 3 * r - s * s) / u ** 2
    b3 = (a3 + r * a1 + 2 * w) / u ** 3
    b4 = (a4 - s * a3 + 2 * r * a2 - (w + r * s) * a1 + 3 * r * r - 2 * s * w) / u ** 4
    b6 = (a6 + r * a4 + r * r * a2 + r ** 3 - w * a3 - w * w - r * w * a1) / u ** 6
    return WeierstrassModel(b1, b2, b3, b4, b6, chart=m.chart)


@dataclass(frozen=True)
class StandardInvariants:
    b2: RatFun
    b4: RatFun
    b6: RatFun
    b8: RatFun
    c4: RatFun
    c6: RatFun
    delta: RatFun

    @property
    def j(self):
        if self.delta.is_zero():
            raise SingularModelError("j-invariant of a singular model")
        return self.c4 ** 3 / self.delta


def standard_invariants(m):
    def compute():
        a1, a2, a3, a4, a6 = m.coeffs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        c4 = b2 * b2 - 24 * b4
        c6 = -(b2 ** 3) + 36 * b2 * b4 - 216 * b6
        delta = -(b2 * b2 * b8) - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        return StandardInvariants(b2, b4, b6, b8, c4, c6, delta)

    return m.memo("inv", compute)


def require_nonsingular(m):
    if standard_invariants(m).delta.is_zero():
        raise SingularModelError("model has zero discriminant")


# ---------------------------------------------------------------- minimality

@dataclass(frozen=True)
class MinimalityVerdict:
    minimal: bool
    place: Place = None
    reason: str = ""

    def __bool__(self):
        return self.minimal


def chart_degree(m):
    """Least n with deg a_i <= n*i for an integral model."""
    n = 0
    for i, a in zip((1, 2, 3, 4, 6), m.coeffs):
        d = a.num.deg()
        if d > 0:
            n = max(n, -(-d // i))
    return n


def two_division_roots(m):
    """x-coordinates of 2-torsion found without factoring.

    Only the easy case is handled: the 2-division cubic has root 0 (after
    completing the square) and the remaining quadratic splits.
    """
    inv = standard_invariants(m)
    a, b, c = inv.b2 / 4, inv.b4 / 2, inv.b6 / 4
    if not c.is_zero():
        return []
    roots = [RatFun(Poly())]
    disc = a * a - 4 * b
    r = ratfun_sqrt(disc)
    if r is not None:
        roots += [(-a + r) / 2, (-a - r) / 2]
    return roots


def _finite_clusters(inv, extra=()):
    srcs = [inv.delta.num]
    if not inv.c4.is_zero():
        srcs.append(inv.c4.num)
    srcs.extend(p for p in extra if p.deg() > 0)
    basis = gcd_free_basis(srcs)
    return [c for c in basis.clusters if c.divides(inv.delta.num)]


def _minimal_at(inv, place):
    vd = valuation(place, inv.delta)
    vc = valuation(place, inv.c4)
    return vd < 12 or vc < 4


def infinity_chart(m, n):
    """Coefficients a_i'(s) = s^(n i) a_i(1/s); toggles the chart metadata."""
    if not m.is_integral():
        raise ValueError("infinity chart needs polynomial coefficients")
    if m.chart == "t":
        new_chart = ("s", n)
    elif m.chart == ("s", n):
        new_chart = "t"
    else:
        raise ValueError(f"model is in chart {m.chart!r}, not invertible with n = {n}")
    out = []
    for i, a in zip((1, 2, 3, 4, 6), m.coeffs):
        p = a.num
        if p.deg() > n * i:
            raise ValueError(f"deg a{i} = {p.deg()} exceeds {n * i}")
        out.append(RatFun(p.reverse(n * i)))
    return WeierstrassModel(*out, chart=new_chart)


S_PLACE = Place(Poly.t())  # s = 0 in the chart at infinity


def is_globally_minimal(m):
    def compute():
        if not m.is_integral():
            return MinimalityVerdict(False, None, "non_integral")
        inv = standard_invariants(m)
        if inv.delta.is_zero():
            raise SingularModelError("model has zero discriminant")
        for c in _finite_clusters(inv):
            pl = Place(c)
            if not _minimal_at(inv, pl):
                return MinimalityVerdict(False, pl, "finite")
        ms = infinity_chart(m, chart_degree(m))
        if not _minimal_at(standard_invariants(ms), S_PLACE):
            return MinimalityVerdict(False, INFINITY, "infinity")
        return MinimalityVerdict(True)

    return m.memo("minimal", compute)


def require_minimal(m):
    v = is_globally_minimal(m)
    if not v:
        raise NotMinimalError(f"model is not globally minimal ({v.reason} {v.place})")


def _short_change(m):
    inv = standard_invariants(m)
    a1, a3 = m.a1, m.a3
    return CoordinateChange.make(Fraction(1, 6), -inv.b2 / 12, -a1 / 2, a1 * inv.b2 / 24 - a3 / 2)


def _lcm(a, b):
    from .polyring import poly_gcd
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def minimal_model(m):
    """(minimal integral model, change from m to it)."""
    require_nonsingular(m)
    change = CoordinateChange.identity()
    if not m.is_integral():
        L = Poly.const(1)
        for a in m.coeffs:
            L = _lcm(L, a.den)
        c = CoordinateChange.make(RatFun(Poly.const(1), L))
        m, change = transform(m, c), change.compose(c)
    while True:
        v = is_globally_minimal(m)
        if v or v.reason == "infinity":
            break
        cl = v.place.poly
        direct = all((cl ** i).divides(a.num) for i, a in zip((1, 2, 3, 4, 6), m.coeffs))
        if not direct and not (m.a1.is_zero() and m.a2.is_zero() and m.a3.is_zero()):
            c = _short_change(m)
            m, change = transform(m, c), change.compose(c)
            continue
        if not direct:
            raise ArithmeticError("short model resisted minimalization")
        c = CoordinateChange.make(cl)
        m, change = transform(m, c), change.compose(c)
    if not v:
        c = _short_change(m)
        m, change = transform(m, c), change.compose(c)
        if not is_globally_minimal(m):
            raise ArithmeticError("minimalization at infinity failed")
    return m, change


def euler_characteristic(m):
    require_minimal(m)
    return chart_degree(m)


# ---------------------------------------------------------------- Kodaira

_GROUP = {"II": 1, "III": 2, "IV": 3, "I0*": 4, "IV*": 3, "III*": 2, "II*": 1}
_COMPONENTS = {"II": 1, "III": 2, "IV": 3, "I0*": 5, "IV*": 7, "III*": 8, "II*": 9}


def kodaira_type(v_delta, v_c4):
    """(tag, index n, components N, component-group order) in char 0."""
    if v_delta <= 0:
        return ("I0", 0, 1, 1)
    if v_c4 == 0:
        n = v_delta
        return (f"I{n}", n, n, n)
    if v_c4 == 2 and v_delta > 6:
        n = v_delta - 6
        return (f"I{n}*", n, n + 5, 4)
    tag = {2: "II", 3: "III", 4: "IV", 6: "I0*", 8: "IV*", 9: "III*", 10: "II*"}.get(v_delta)
    need = {"I0*": 2, "IV*": 3, "III*": 3, "II*": 4}.get(tag, 1)
    if tag is None or v_c4 < need:
        raise UnclassifiableFiberError(f"v(delta)={v_delta}, v(c4)={v_c4}")
    return (tag, 0, _COMPONENTS[tag], _GROUP[tag])


@dataclass(frozen=True)
class KodairaFiber:
    place: Place
    type_tag: str
    index: int
    components: int
    component_group_order: int
    count: int
    v_delta: int
    v_c4: float

    @property
    def multiplicative(self):
        return self.type_tag[0] == "I" and self.type_tag[1:].isdigit()

    @property
    def euler_number(self):
        return self.v_delta


@dataclass(frozen=True)
class SurfaceSummary:
    chi: int
    fibers: tuple
    flags: tuple = field(default=())

    @property
    def pg(self):
        return self.chi - 1

    def fiber_at(self, place):
        for fb in self.fibers:
            if fb.place == place:
                return fb
        return None

    def euler_total(self):
        return sum(fb.count * fb.v_delta for fb in self.fibers)

    def trivial_lattice_rank(self):
        return 2 + sum(fb.count * (fb.components - 1) for fb in self.fibers)


def classify_fibers(m):
    def compute():
        require_minimal(m)
        inv = standard_invariants(m)
        n = chart_degree(m)
        roots = two_division_roots(m)
        extra = [(x1 - x2).num for i, x1 in enumerate(roots) for x2 in roots[i + 1:]]
        fibers = []
        for c in _finite_clusters(inv, extra):
            pl = Place(c)
            vd = valuation(pl, inv.delta)
            vc = valuation(pl, inv.c4)
            tag, idx, N, grp = kodaira_type(vd, vc)
            fibers.append(KodairaFiber(pl, tag, idx, N, grp, c.deg(), vd, vc))
        vd = valuation(INFINITY, inv.delta, 12 * n)
        vc = valuation(INFINITY, inv.c4, 4 * n)
        if vd > 0:
            tag, idx, N, grp = kodaira_type(vd, vc)
            fibers.append(KodairaFiber(INFINITY, tag, idx, N, grp, 1, vd, vc))
        flags = () if fibers else ("no_singular_fibers",)
        summary = SurfaceSummary(n, tuple(fibers), flags)
        if summary.euler_total() != 12 * n:
            raise ArithmeticError("fiber Euler numbers do not add up to 12 chi")
        return summary

    return m.memo("fibers", compute)


def shioda_tate_rho(summary, rank):
    return summary.trivial_lattice_rank() + rank


def model_at_infinity(m):
    """s-chart model with n = chi, for valuations at infinity."""
    return infinity_chart(m, chart_degree(m))


def specialize_model(m, t0):
    """Model over Q(zeta8) obtained by t -> t0 (constant coefficients)."""
    vals = []
    for a in m.coeffs:
        vals.append(field_value(a(t0)))
    return WeierstrassModel(*vals)

