"""Torsion over k(t) for the family and over Q for specialized curves."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, isqrt, lcm

from .fields import field_value, is_square_rational
from .mwgroup import O, CurvePoint, _add, check_on_curve, negate
from .polyring import Poly, RatFun, gcd_free_basis, poly_gcd, ratfun_sqrt
from .weierstrass import (
    CoordinateChange,
    classify_fibers,
    require_nonsingular,
    standard_invariants,
    transform,
)

__all__ = [
    "TorsionReport",
    "two_torsion",
    "halve_two_torsion",
    "halve_point",
    "halving_quadratic",
    "torsion_structure_family",
    "division_polynomial",
    "torsion_over_Q",
    "is_nontorsion_Q",
    "two_primary_torsion",
]


@dataclass(frozen=True)
class TorsionReport:
    structure: tuple
    generators: tuple
    bound_source: str = ""
    points: tuple = field(default=(), compare=False)

    @property
    def order(self):
        n = 1
        for k in self.structure:
            n *= k
        return n


# ---------------------------------------------------------------- over k(t)

def _cubic(m):
    """(a, b, c) with 2-division cubic x^3 + a x^2 + b x + c."""
    inv = standard_invariants(m)
    return inv.b2 / 4, inv.b4 / 2, inv.b6 / 4


def _y_of(m, x):
    """y = -(a1 x + a3)/2 for a 2-torsion x."""
    return -(m.a1 * x + m.a3) / 2


def _cubic_root_candidates(m):
    a, b, c = _cubic(m)
    if c.is_zero():
        return [RatFun(Poly())]
    # integral cubic: roots are polynomials dividing the constant term
    if not (a.is_poly() and b.is_poly() and c.is_poly()):
        return []
    cp = c.num
    basis = gcd_free_basis([cp])
    _, mult = basis.factorization(cp)
    clusters = sorted(mult)
    roots = []
    for exps in product(*(range(mult[cl] + 1) for cl in clusters)):
        D = Poly.const(1)
        for cl, e in zip(clusters, exps):
            D = D * cl ** e
        # F(lam * D) = 0 coefficientwise: a cubic system in lam
        parts = [D ** 3, a.num * D ** 2, b.num * D, cp]
        n = max(p.deg() for p in parts)
        eqs = []
        for k in range(n + 1):
            eqs.append(Poly([parts[3].coeff(k), parts[2].coeff(k), parts[1].coeff(k), parts[0].coeff(k)]))
        g = None
        for e in eqs:
            if not e.is_zero():
                g = e if g is None else poly_gcd(g, e)
        if g is None or g.deg() != 1:
            continue
        lam = -g.coeff(0) / g.coeff(1)
        roots.append(RatFun(D * lam))
    return roots


def two_torsion(m, field=None):
    """Points of exact order 2 with coordinates in k(t).

    ``field`` is "Q" or "Qzeta8"; by default the field of the coefficients.
    """
    require_nonsingular(m)
    field = field or m.field
    a, b, c = _cubic(m)
    found = []
    for x0 in _cubic_root_candidates(m):
        if (((x0 + a) * x0 + b) * x0 + c).is_zero():
            found = [x0]
            break
    if not found:
        return []
    x0 = found[0]
    # deflate: x^2 + (a + x0) x + (b + x0 (a + x0))
    p = a + x0
    q = b + x0 * p
    roots = [x0]
    r = ratfun_sqrt(p * p - 4 * q)
    if r is not None:
        roots += [(-p + r) / 2, (-p - r) / 2]
    pts = []
    seen = set()
    for x in roots:
        if x in seen or (field == "Q" and not x.is_rational()):
            continue
        seen.add(x)
        pts.append(CurvePoint(x, _y_of(m, x)))
    return sorted(pts, key=lambda P: (P.x.num.sort_key(), P.x.den.sort_key()))


def _is_two_torsion(m, P):
    return not P.is_infinity and (2 * P.y + m.a1 * P.x + m.a3).is_zero()


def halve_point(m, P):
    """All Q in E(k(t)) with 2Q = P, for models with full rational 2-torsion."""
    check_on_curve(m, P)
    if P.is_infinity:
        return [O] + two_torsion(m, "Qzeta8")
    es = [T.x for T in two_torsion(m, "Qzeta8")]
    if len(es) != 3:
        raise ValueError("halving needs full rational 2-torsion")
    if not (m.a1.is_zero() and m.a3.is_zero()):
        raise ValueError("halving expects a model with a1 = a3 = 0")
    rs = []
    for e in es:
        r = ratfun_sqrt(P.x - e)
        if r is None:
            return []
        rs.append(r)
    a2 = m.a2
    out = []
    for s1, s2, s3 in product((1, -1), repeat=3):
        r1, r2, r3 = s1 * rs[0], s2 * rs[1], s3 * rs[2]
        x = P.x + r1 * r2 + r1 * r3 + r2 * r3
        y2 = ((x + a2) * x + m.a4) * x + m.a6
        y = ratfun_sqrt(y2)
        if y is None:
            continue
        for Q in (CurvePoint(x, y), CurvePoint(x, -y)):
            if Q not in out and _add(m, Q, Q) == P:
                out.append(Q)
    return out


def halve_two_torsion(m, T):
    if not _is_two_torsion(m, T):
        raise ValueError("input is not a point of order 2")
    return halve_point(m, T)


def halving_quadratic(f, g):
    """Coefficients (c0, c1, c2) of -f^2 g^2 + 2 g^2 x - x^2 and its discriminant."""
    f, g = Poly.coerce(f), Poly.coerce(g)
    c0 = -(f * f * g * g)
    c1 = 2 * g * g
    c2 = Poly.const(-1)
    disc = c1 * c1 - 4 * c2 * c0
    return (c0, c1, c2), disc


def _two_power_subgroup(m, limit=6):
    """All points of E[2^infinity](k(t)) by repeated halving."""
    group = [O] + two_torsion(m, "Qzeta8")
    frontier = list(group[1:])
    for _ in range(limit):
        nxt = []
        for P in frontier:
            for Q in halve_point(m, P):
                if Q not in group:
                    group.append(Q)
                    nxt.append(Q)
        if not nxt:
            break
        frontier = nxt
    return group


def _order(m, P, bound=16):
    Q = P
    for k in range(1, bound + 1):
        if Q.is_infinity:
            return k
        Q = _add(m, Q, P)
    raise ArithmeticError("point order exceeds the torsion bound")


def _structure(m, pts, p):
    """Invariant factors (p^a, p^b) and generators of a finite p-group of points."""
    orders = {P: _order(m, P) for P in pts}
    N = len(pts)
    if N == 1:
        return (), ()
    e = 0
    while p ** e < N:
        e += 1
    if p ** e != N:
        raise ArithmeticError("point set is not a p-group")
    top = max(orders.values())
    b = 0
    while p ** b < top:
        b += 1
    a = e - b
    g2 = min((P for P in pts if orders[P] == top), key=_pkey)
    if a == 0:
        return (p ** b,), (g2,)
    cyc = set()
    Q = O
    for _ in range(top):
        cyc.add(Q)
        Q = _add(m, Q, g2)
    for P in sorted(pts, key=_pkey):
        if orders[P] != p ** a:
            continue
        ok = True
        Q = P
        for _ in range(p ** a - 1):
            if Q in cyc:
                ok = False
                break
            Q = _add(m, Q, P)
        if ok:
            return (p ** a, p ** b), (P, g2)
    raise ArithmeticError("no complementary generator found")


def _pkey(P):
    if P.is_infinity:
        return ((), ())
    return (P.x.num.sort_key(), P.x.den.sort_key(), P.y.num.sort_key(), P.y.den.sort_key())


def _bound_string(m):
    summary = classify_fibers(m)
    tags = []
    total = 1
    for fb in summary.fibers:
        tags.append(fb.type_tag + (f"x{fb.count}" if fb.count > 1 else ""))
        total *= fb.component_group_order ** fb.count
    return ",".join(tags) + f": product {total}"


def torsion_structure_family(triple):
    """Torsion of y^2 = x(x - f^2)(x - g^2) over Q(zeta8)(t)."""
    from .family import curve_of, torsion_points, validate_family_triple

    validate_family_triple(triple)
    m = curve_of(triple)
    group = _two_power_subgroup(m)
    structure, gens = _structure(m, group, 2)
    T1, T2 = torsion_points(triple)
    if structure == (2, 4):
        gens = (T1, T2)
    elif structure == (4, 4):
        T3 = sorted(halve_two_torsion(m, T1), key=_pkey)[0]
        gens = (T2, T3)
    return TorsionReport(structure, tuple(gens), _bound_string(m), tuple(group))


def two_primary_torsion(m):
    """2-primary torsion over Q(zeta8)(t) for any nonsingular model over k(t).

    Odd-order torsion is not searched; ``bound_source`` says so.
    """
    require_nonsingular(m)
    group = _two_power_subgroup(m)
    structure, gens = _structure(m, group, 2)
    return TorsionReport(structure, tuple(gens), "2-primary part only; odd torsion not searched",
                         tuple(group))


# ---------------------------------------------------------------- over Q

def _require_constant(m):
    if not m.is_constant() or not m.is_rational():
        raise ValueError("expected a curve over Q")


def division_polynomial(m, n):
    """psi_n for odd n, (psi_n / psi_2) * (4x^3 + b2 x^2 + 2 b4 x + b6) for even n."""
    _require_constant(m)
    if not isinstance(n, int) or not 2 <= n <= 16:
        raise ValueError("division polynomials are provided for 2 <= n <= 16")
    return _division_polys(m, n)[n] * (_B(m) if n % 2 == 0 else 1)


def _B(m):
    inv = standard_invariants(m)
    b2, b4, b6 = (field_value(v(0)) for v in (inv.b2, inv.b4, inv.b6))
    return Poly([b6, 2 * b4, b2, 4])


def _division_polys(m, n):
    """f_k with psi_k = f_k (k odd) or psi_2 f_k (k even)."""
    inv = standard_invariants(m)
    b2, b4, b6, b8 = (field_value(v(0)) for v in (inv.b2, inv.b4, inv.b6, inv.b8))
    B = _B(m)
    B2 = B * B
    f = {0: Poly(), 1: Poly.const(1), 2: Poly.const(1)}
    f[3] = Poly([b8, 3 * b6, 3 * b4, b2, 3])
    f[4] = Poly([b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2])

    def get(k):
        if k in f:
            return f[k]
        mm = k // 2
        if k % 2:
            if mm % 2 == 0:
                val = B2 * get(mm + 2) * get(mm) ** 3 - get(mm - 1) * get(mm + 1) ** 3
            else:
                val = get(mm + 2) * get(mm) ** 3 - B2 * get(mm - 1) * get(mm + 1) ** 3
        else:
            val = get(mm) * (get(mm + 2) * get(mm - 1) ** 2 - get(mm - 2) * get(mm + 1) ** 2)
        f[k] = val
        return val

    get(n)
    return f


def _short_integral(m):
    """Integral short model y^2 = x^3 + A x + B over Z with the change to it."""
    inv = standard_invariants(m)
    c4, c6 = field_value(inv.c4(0)), field_value(inv.c6(0))
    # y^2 = x^3 - 27 c4 x - 54 c6 via u = 1/6, then clear denominators
    a1, a3 = m.a1, m.a3
    ch = CoordinateChange.make(Fraction(1, 6), -inv.b2 / 12, -a1 / 2, a1 * inv.b2 / 24 - a3 / 2)
    A, B = -27 * c4, -54 * c6
    L = 1
    for k, v in ((4, A), (6, B)):
        d = Fraction(v).denominator
        # smallest u with u^k * v integral is found by prime powers of d
        L = lcm(L, _root_cover(d, k))
    ch = ch.compose(CoordinateChange.make(Fraction(1, L)))
    ms = transform(m, ch)
    return ms, ch


def _root_cover(d, k):
    """Least u with d | u^k."""
    u = 1
    p = 2
    while d > 1:
        if p * p > d:
            p = d
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        if e:
            u *= p ** (-(-e // k))
        p += 1
    return u


def _int_coeffs(poly):
    cs = [Fraction(c) for c in poly.coeffs]
    den = 1
    for c in cs:
        den = lcm(den, c.denominator)
    out = [int(c * den) for c in cs]
    g = 0
    for c in out:
        g = gcd(g, c)
    return [c // g for c in out] if g > 1 else out


def _eval_mod(cs, x, p):
    acc = 0
    for c in reversed(cs):
        acc = (acc * x + c) % p
    return acc


def _poly_mod_gcd_deg(a, b, p):
    """Degree of gcd(a, b) over F_p (coefficient lists, ascending)."""
    def trim(v):
        v = [c % p for c in v]
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            if a[-1] == 0:
                a.pop()
                continue
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, bc in enumerate(b):
                a[i + shift] = (a[i + shift] - c * bc) % p
            a = trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


_PRIMES = [p for p in range(5, 2000) if all(p % q for q in range(2, isqrt(p) + 1))]


def integer_roots(cs):
    """Integer roots of a squarefree integer polynomial (ascending coefficients)."""
    roots = set()
    while cs and cs[0] == 0:
        roots.add(0)
        cs = cs[1:]
    if len(cs) <= 1:
        return sorted(roots)
    lc = cs[-1]
    bound = 1 + max(abs(c) for c in cs[:-1]) // abs(lc) + 1
    deriv = [i * c for i, c in enumerate(cs)][1:]
    for p in _PRIMES:
        if lc % p == 0 or _poly_mod_gcd_deg(cs, deriv, p) != 0:
            continue
        break
    else:
        raise ArithmeticError("no good prime for Hensel lifting")
    for r0 in range(p):
        if _eval_mod(cs, r0, p):
            continue
        r, mod = r0, p
        while mod <= 2 * bound:
            mod2 = mod * mod
            fr = _eval_mod(cs, r, mod2)
            dr = _eval_mod(deriv, r, mod2)
            r = (r - fr * pow(dr, -1, mod2)) % mod2
            mod = mod2
        if r > mod // 2:
            r -= mod
        acc = 0
        for c in reversed(cs):
            acc = acc * r + c
        if acc == 0:
            roots.add(r)
    return sorted(roots)


def _points_with_x(ms, xs):
    a4, a6 = Fraction(ms.a4.num.coeff(0)), Fraction(ms.a6.num.coeff(0))
    pts = []
    for x in xs:
        y2 = x ** 3 + a4 * x + a6
        y = is_square_rational(y2)
        if y is None:
            continue
        pts.append(CurvePoint(x, y))
        if y:
            pts.append(CurvePoint(x, -y))
    return pts


def _torsion_xs(ms, n):
    fpoly = division_polynomial(ms, n)
    sf = fpoly.exact_div(poly_gcd(fpoly, fpoly.deriv()))
    return integer_roots(_int_coeffs(sf))


_PRIMARY = {2: 3, 3: 2, 5: 1, 7: 1}  # largest exponent allowed by Mazur


def torsion_over_Q(m):
    """Full torsion subgroup of a curve over Q via division polynomials."""
    _require_constant(m)
    require_nonsingular(m)
    return m.memo("torsion_Q", lambda: _torsion_over_Q(m))


def _torsion_over_Q(m):
    ms, ch = _short_integral(m)
    back = ch.inverse()
    invariant = [1, 1]
    gens_a, gens_b = [], []
    all_pts = [O]
    for p, kmax in _PRIMARY.items():
        pts = [O]
        for k in range(1, kmax + 1):
            xs = _torsion_xs(ms, p ** k)
            level = [O] + _points_with_x(ms, xs)
            if len(level) == len(pts):
                break
            pts = level
        if len(pts) == 1:
            continue
        struct, gens = _structure(ms, pts, p)
        if len(struct) == 2:
            invariant[0] *= struct[0]
            invariant[1] *= struct[1]
            gens_a.append(gens[0])
            gens_b.append(gens[1])
        else:
            invariant[1] *= struct[0]
            gens_b.append(gens[0])
        all_pts = _combine(ms, all_pts, pts)
    structure = tuple(k for k in invariant if k > 1)
    gens = []
    for block in (gens_a, gens_b):
        if block:
            G = O
            for P in block:
                G = _add(ms, G, P)
            gens.append(G)
    gens = tuple(_map_back(back, P) for P in gens)
    pts = tuple(_map_back(back, P) for P in all_pts)
    return TorsionReport(structure, gens, "division polynomials, Mazur orders", pts)


def _combine(m, A, B):
    out = []
    for P in A:
        for Q in B:
            S = _add(m, P, Q)
            if S not in out:
                out.append(S)
    return out


def _map_back(ch, P):
    if P.is_infinity:
        return P
    x, y = ch.map_point(P.x, P.y)
    return CurvePoint(x, y)


def is_nontorsion_Q(m, P):
    """True iff P has infinite order on a curve over Q."""
    check_on_curve(m, P)
    if P.is_infinity:
        return False
    rep = torsion_over_Q(m)
    return P not in rep.points and negate(m, P) not in rep.points

