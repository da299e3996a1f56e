"""Pythagorean polynomial families y^2 = x(x - f^2)(x - g^2).

Triples come from generators (h1, h2) or are given directly.  The module
builds the canonical points, the 2-descent square classes, and the
Mordell-Weil certificates over Qbar(t) and over Q(t).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .fields import I, SQRT2, SQRT_MINUS2
from .lattice import integer_kernel, lattice_basis, solve_rational
from .mwgroup import O, CurvePoint, _add, _mul, gram, height, pairing
from .polyring import (
    Poly,
    RatFun,
    discriminant,
    gcd_free_basis,
    poly_gcd,
    poly_sqrt,
    squarefree_decompose,
)
from .weierstrass import (
    WeierstrassModel,
    classify_fibers,
    euler_characteristic,
    is_globally_minimal,
    minimal_model,
)

__all__ = [
    "PythagoreanTriple",
    "CanonicalPoints",
    "SquareClass",
    "FamilyError",
    "CertificateError",
    "triple_from_generators",
    "make_triple",
    "validate_family_triple",
    "curve_of",
    "canonical_points",
    "descent_image",
    "square_class_of",
    "square_class_independent",
    "mw_certificate_qbar",
    "mw_structure_qt",
    "galois_fixed_subgroup",
    "e3_e4_example",
    "bremner_ulas_triple",
    "e4_rank3_certificate",
    "torsion_points",
    "generated_by",
]


class FamilyError(ValueError):
    """Input outside the family's hypotheses."""


class CertificateError(ArithmeticError):
    """A certificate stage failed; ``stage`` names it."""

    def __init__(self, stage, message, report=None):
        super().__init__(f"{stage}: {message}")
        self.stage = stage
        self.report = report or {}


def _deg(p):
    return p.deg() if isinstance(p, Poly) else p.num.deg() - p.den.deg()


@dataclass(frozen=True)
class PythagoreanTriple:
    f: object
    g: object
    h: object
    provenance: str = "direct"
    generators: tuple = field(default=None)

    @property
    def polynomial(self):
        return all(isinstance(p, Poly) for p in (self.f, self.g, self.h) if p is not None)

    def degree_flags(self):
        flags = []
        if self.polynomial:
            if self.f.deg() != 2:
                flags.append("deg_f_not_2")
            if not 1 <= self.g.deg() <= 2:
                flags.append("deg_g_out_of_range")
        else:
            flags.append("rational_function_entries")
        return tuple(flags)

    @property
    def theorem_grade(self):
        return not self.degree_flags()

    def is_rational(self):
        return all(RatFun.coerce(p).is_rational() for p in (self.f, self.g, self.h))

    def curve_is_rational(self):
        return all(RatFun.coerce(p * p).is_rational() for p in (self.f, self.g))


def _coprime(a, b):
    a, b = RatFun.coerce(a), RatFun.coerce(b)
    return poly_gcd(a.num, b.num).deg() == 0


def triple_from_generators(h1, h2):
    h1, h2 = Poly.coerce(h1), Poly.coerce(h2)
    if h1.is_zero() or h2.is_zero() or (h1.deg() < 1 and h2.deg() < 1):
        raise FamilyError("generators must be nonzero and not both constant")
    if poly_gcd(h1, h2).deg() > 0:
        raise FamilyError("generators h1, h2 are not coprime")
    f = (h1 * h1 + h2 * h2) * Fraction(1, 2)
    g = (h1 * h1 - h2 * h2) * (1 / (2 * I))
    h = h1 * h2
    tr = PythagoreanTriple(f, g, h, "generators", (h1, h2))
    _check_identity(tr)
    if poly_gcd(f, g).deg() > 0:
        raise FamilyError("f and g are not coprime")
    return tr


def make_triple(f, g, h=None):
    """Triple from f, g, h; with h omitted, h = sqrt(f^2 + g^2) when that is a polynomial.

    If f^2 + g^2 is not a square the pair is kept with h = None: the curve and
    its torsion still make sense, the points P1, P2, Q1, Q2 do not.
    """
    f, g = (Poly.coerce(p) if not isinstance(p, RatFun) else p for p in (f, g))
    if h is None:
        h = poly_sqrt(f * f + g * g) if isinstance(f * f + g * g, Poly) else None
        tr = PythagoreanTriple(f, g, h, "direct" if h is not None else "pair")
    else:
        h = Poly.coerce(h) if not isinstance(h, RatFun) else h
        tr = PythagoreanTriple(f, g, h, "direct")
    _check_identity(tr)
    return tr


def _check_identity(tr):
    if tr.h is not None and (tr.f * tr.f + tr.g * tr.g - tr.h * tr.h) != 0:
        raise FamilyError("f^2 + g^2 != h^2")


def torsion_points(tr):
    """T1 = (g^2, 0) and T2 = (fg, i f (f - g) g); these do not involve h."""
    f, g = RatFun.coerce(tr.f), RatFun.coerce(tr.g)
    return CurvePoint(g * g, RatFun(0)), CurvePoint(f * g, I * f * (f - g) * g)


def validate_family_triple(tr, require_separable=False):
    if not tr.polynomial:
        raise FamilyError("family hypotheses need polynomial f, g, h")
    if tr.g.is_zero() or tr.f.is_zero():
        raise FamilyError("f and g must be nonzero")
    if not _coprime(tr.f, tr.g):
        raise FamilyError("f and g are not coprime")
    if tr.f.deg() != 2 or tr.g.deg() > 2:
        raise FamilyError("family needs deg f = 2 and deg g <= 2")
    if require_separable and discriminant(tr.f * tr.f - tr.g * tr.g) == 0:
        raise FamilyError("f^2 - g^2 is not separable")


def curve_of(tr):
    """y^2 = x(x - f^2)(x - g^2)."""
    if RatFun.coerce(tr.g).is_zero() or RatFun.coerce(tr.f).is_zero():
        raise FamilyError("degenerate triple: f or g is zero")
    f2 = RatFun.coerce(tr.f * tr.f)
    g2 = RatFun.coerce(tr.g * tr.g)
    if f2 == g2:
        raise FamilyError("f^2 = g^2 gives a singular curve")
    if tr.polynomial and not _coprime(tr.f, tr.g):
        raise FamilyError("f and g are not coprime")
    return WeierstrassModel.legendre_like(f2, g2)


@dataclass(frozen=True)
class CanonicalPoints:
    P1: CurvePoint
    P2: CurvePoint
    T1: CurvePoint
    T2: CurvePoint
    Q1: CurvePoint
    Q2: CurvePoint

    def as_dict(self):
        return {k: getattr(self, k) for k in ("P1", "P2", "T1", "T2", "Q1", "Q2")}


def canonical_points(tr, verify=True):
    if tr.h is None:
        raise FamilyError("f^2 + g^2 is not a square; P1, P2, Q1, Q2 are undefined")
    R = RatFun.coerce
    f, g, h = R(tr.f), R(tr.g), R(tr.h)
    c = 1 + SQRT2
    P1 = CurvePoint(-c * g * (g - h), I * c * g * (g - h) * (SQRT2 * g - h))
    P2 = CurvePoint((f - h) * (g - h), (f + g) * (f - h) * (g - h))
    T1 = CurvePoint(g * g, R(0))
    T2 = CurvePoint(f * g, I * f * (f - g) * g)
    Q1 = CurvePoint(-g * g, SQRT_MINUS2 * g * g * h)
    Q2 = CurvePoint(h * h, f * g * h)
    pts = CanonicalPoints(P1, P2, T1, T2, Q1, Q2)
    if verify:
        m = curve_of(tr)
        for name, P in pts.as_dict().items():
            if not m.contains(P.x, P.y):
                raise CertificateError("canonical_points", f"{name} is not on the curve")
        if _mul(m, P1, -2) != Q1 or _mul(m, P2, -2) != Q2:
            raise CertificateError("canonical_points", "Q1 = -2 P1 or Q2 = -2 P2 fails")
    return pts


# ---------------------------------------------------------------- descent

@dataclass(frozen=True)
class SquareClass:
    """Class in K^x/(K^x)^2 for K = Qbar(t): a monic squarefree polynomial.

    Constants are squares over Qbar, so ``constant_status`` is always
    "square" here; the field is kept for the rational-constant variant.
    """

    representative: Poly
    constant_status: str = "square"

    def __mul__(self, other):
        a, b = self.representative, other.representative
        g = poly_gcd(a, b)
        rep = (a * b).exact_div(g * g).monic()
        return SquareClass(rep, "square")

    @property
    def trivial(self):
        return self.representative.deg() == 0


def square_class_of(r):
    r = RatFun.coerce(r)
    if r.is_zero():
        raise ValueError("zero has no square class")
    rep = Poly.const(1)
    for p in (r.num, r.den):
        if p.deg() > 0:
            for a, mult in squarefree_decompose(p):
                if mult % 2:
                    rep = rep * a
    return SquareClass(rep.monic())


def descent_image(tr, P):
    """psi(x, y) = (x, x - f^2) modulo squares."""
    if P.is_infinity:
        return (SquareClass(Poly.const(1)), SquareClass(Poly.const(1)))
    f2 = RatFun.coerce(tr.f * tr.f)
    if P.x.is_zero() or P.x == f2:
        raise FamilyError("descent map needs the 2-torsion patch at x = 0 or x = f^2")
    return (square_class_of(P.x), square_class_of(P.x - f2))


def _vectors(classes):
    flat = []
    for c in classes:
        flat.append(list(c) if isinstance(c, tuple) else [c])
    width = len(flat[0]) if flat else 0
    for row in flat:
        if len(row) != width:
            raise ValueError("mixed single and paired square classes")
    vecs = [[] for _ in flat]
    for k in range(width):
        reps = [row[k].representative for row in flat]
        if any(row[k].constant_status == "undetermined" for row in flat):
            raise ValueError("undetermined constant square class")
        nonconst = [r for r in reps if r.deg() > 0]
        basis = gcd_free_basis(nonconst).clusters if nonconst else []
        for i, r in enumerate(reps):
            for cl in basis:
                vecs[i].append(1 if cl.divides(r) else 0)
    return vecs


def _f2_rank(vecs):
    rows = [int("".join(map(str, v)) or "0", 2) for v in vecs]
    rank = 0
    while rows:
        piv = max(rows)
        rows.remove(piv)
        if piv == 0:
            continue
        rank += 1
        top = piv.bit_length() - 1
        rows = [r ^ piv if (r >> top) & 1 else r for r in rows]
    return rank


def square_class_independent(classes):
    """F2-independence of square classes (or pairs of them) over Qbar(t)."""
    classes = list(classes)
    if not classes:
        return True
    return _f2_rank(_vectors(classes)) == len(classes)


# ---------------------------------------------------------------- Qbar(t) certificate

def _stage(report, name, **values):
    report["stages"].append(dict(stage=name, status="PASS", **values))


def mw_certificate_qbar(tr):
    """Certify E(Qbar(t)) = Z^2 + Z/2 + Z/4 with generators P1, P2, T1, T2."""
    from .torsion import torsion_structure_family

    report = {"stages": []}

    def fail(stage, msg, **extra):
        report["stages"].append(dict(stage=stage, status="FAIL", message=msg, **extra))
        report["verdict"] = "FAIL"
        raise CertificateError(stage, msg, report)

    # 1. hypotheses
    try:
        validate_family_triple(tr)
    except FamilyError as exc:
        fail("validity", str(exc))
    if tr.g.deg() < 1:
        fail("validity", "deg g >= 1 is needed (g constant makes the surface rational)")
    sep = tr.f * tr.f - tr.g * tr.g
    if discriminant(sep) == 0:
        extra = {}
        try:
            extra["torsion"] = list(torsion_structure_family(tr).structure)
        except Exception:  # report only
            pass
        extra["note"] = "f^2 - g^2 inseparable: torsion (Z/4)^2 and rank 0 in this case"
        fail("validity", "f^2 - g^2 is not separable", **extra)
    _stage(report, "validity", deg_f=tr.f.deg(), deg_g=tr.g.deg())

    # 2. minimal model
    m = curve_of(tr)
    if not is_globally_minimal(m):
        fail("minimal_model", "family model is not globally minimal")
    chi = euler_characteristic(m)
    if chi != tr.f.deg():
        fail("minimal_model", f"chi = {chi} differs from deg f")
    _stage(report, "minimal_model", chi=chi)

    # 3. fibers
    summary = classify_fibers(m)
    table = [(fb.place, fb.type_tag, fb.count) for fb in summary.fibers]
    n_inf = 8 * tr.f.deg() - 4 * tr.g.deg() - 2 * sep.deg()
    fb_inf = summary.fiber_at(_infinity())
    got_inf = fb_inf.index if fb_inf else 0
    if got_inf != n_inf or any(not fb.multiplicative for fb in summary.fibers):
        fail("fibers", f"fiber at infinity I{got_inf}, expected I{n_inf}")
    _stage(report, "fibers", fibers=table, euler_total=summary.euler_total())

    # 4. Shioda-Tate
    triv = summary.trivial_lattice_rank()
    closed = 8 + sep.deg() + 3 * tr.g.deg() + max(n_inf - 1, 0)
    upper = 20 - triv
    if triv != closed:
        fail("shioda_tate", f"trivial lattice rank {triv} differs from closed form {closed}")
    _stage(report, "shioda_tate", trivial_rank=triv, closed_form=closed, rho_max=20,
           rank_upper_bound=upper)

    # 5. torsion
    tors = torsion_structure_family(tr)
    if tors.structure != (2, 4):
        fail("torsion", f"torsion {tors.structure} instead of (2, 4)")
    _stage(report, "torsion", structure=list(tors.structure), bound=tors.bound_source)

    # 6. Gram matrix
    pts = canonical_points(tr)
    G = gram(m, [pts.P1, pts.P2])
    d = tr.f.deg()
    expected = ((Fraction(d, 4), Fraction(0)), (Fraction(0), Fraction(d, 2)))
    if G.matrix != expected:
        fail("gram", f"Gram matrix {G.matrix} differs from diag(deg f/4, deg f/2)")
    if upper != 2:
        fail("gram", f"rank lower bound 2 but Shioda-Tate allows {upper}")
    _stage(report, "gram", matrix=G.matrix, det=G.determinant, rank=2)

    # 7. index bound
    scaled = G.scaled(4)
    disc = scaled.determinant
    index_candidates = [n for n in (1, 2, 3, 4) if disc.denominator == 1 and disc % (n * n) == 0]
    if disc != 8 or index_candidates != [1, 2]:
        fail("index", f"scaled discriminant {disc}")
    _stage(report, "index", scaled_disc=disc, index_divides=2)

    # 8. descent
    images = [descent_image(tr, P) for P in (pts.P1, pts.P2, pts.T1, pts.T2)]
    if not square_class_independent(images):
        fail("descent", "eta images of P1, P2, T1, T2 are dependent")
    _stage(report, "descent", images=images, index=1)

    report["verdict"] = "PASS"
    report["rank"] = 2
    report["torsion"] = [2, 4]
    report["generators"] = ["P1", "P2", "T1", "T2"]
    report["points"] = pts
    report["model"] = m
    return report


def _infinity():
    from .polyring import INFINITY
    return INFINITY


# ---------------------------------------------------------------- Galois action

@dataclass
class FixedSubgroupReport:
    rank: int
    torsion_structure: tuple
    free_generators: list        # coordinate vectors
    torsion_generators: list     # coordinate vectors
    actions: dict                # k -> images of generators as coordinate vectors
    generator_points: list = field(default_factory=list)


def _tors_table(m, T1, T2):
    table = {}
    for c, d in product(range(2), range(4)):
        P = _add(m, _mul(m, T1, c), _mul(m, T2, d))
        table[P] = (c, d)
    if len(table) != 8:
        raise ArithmeticError("T1, T2 do not generate a group of order 8")
    return table


def _coords(m, P, basis, G, tors):
    """Coordinates of P in Z-basis + (Z/2 x Z/4) using the Gram matrix."""
    v = [pairing(m, P, b) for b in basis]
    coef = solve_rational([list(r) for r in G.matrix], v)
    if any(c.denominator != 1 for c in coef):
        raise ArithmeticError("point is not in the span of the basis")
    coef = [int(c) for c in coef]
    R = P
    for c, b in zip(coef, basis):
        R = _add(m, R, _mul(m, b, -c))
    if R not in tors:
        raise ArithmeticError("residual is not in the torsion subgroup")
    return coef + list(tors[R])


def _apply(action, v, r):
    """Image of coordinate vector v under a linear action given on generators."""
    out = [0] * (r + 2)
    for coeff, img in zip(v, action):
        for i in range(r + 2):
            out[i] += coeff * img[i]
    out[r] %= 2
    out[r + 1] %= 4
    return out


def _normal(v, r):
    v = list(v)
    v[r] %= 2
    v[r + 1] %= 4
    return v


def galois_fixed_subgroup(m, basis, T1, T2):
    """Gal(Q(zeta8)/Q)-fixed subgroup of <basis> + <T1, T2> (T1 order 2, T2 order 4)."""
    r = len(basis)
    G = gram(m, basis)
    if G.determinant == 0:
        raise ArithmeticError("basis is dependent")
    tors = _tors_table(m, T1, T2)
    gens = list(basis) + [T1, T2]
    actions = {}
    for k in (3, 5, 7):
        actions[k] = [_coords(m, P.conj(k), basis, G, tors) for P in gens]
    # free part fixed by all sigma modulo torsion
    rows = []
    for k in (3, 5, 7):
        for i in range(r):
            rows.append([actions[k][j][i] - (1 if i == j else 0) for j in range(r)])
    L0 = integer_kernel(rows, r)
    fixed = []
    for cs in product(range(4), repeat=len(L0)):
        free = [sum(c * v[i] for c, v in zip(cs, L0)) for i in range(r)]
        for c, d in product(range(2), range(4)):
            v = free + [c, d]
            if all(_apply(actions[k], v, r) == _normal(v, r) for k in (3, 5, 7)):
                fixed.append(v)
    free_parts = [v[:r] for v in fixed] + [[4 * x for x in w] for w in L0]
    L1 = lattice_basis(free_parts, r)
    tors_fixed = [v[r:] for v in fixed if not any(v[:r])]
    lifts = []
    for w in L1:
        for v in fixed:
            diff = [a - b for a, b in zip(w, v[:r])]
            if _in_lattice(diff, [[4 * x for x in u] for u in L0], r):
                lifts.append(w + v[r:])
                break
        else:
            raise ArithmeticError("no fixed lift for a free generator")
    tstruct, tgens = _small_torsion_structure(tors_fixed)
    rep = FixedSubgroupReport(len(L1), tstruct, lifts, [[0] * r + t for t in tgens], actions)
    rep.generator_points = [_point_of(m, v, gens, r) for v in lifts + rep.torsion_generators]
    return rep


def _in_lattice(v, basis, r):
    if not any(v):
        return True
    if not basis:
        return False
    B = lattice_basis(basis, r)
    ext = lattice_basis(basis + [v], r)
    return _covolume(B, r) == _covolume(ext, r) and len(B) == len(ext)


def _covolume(B, r):
    from .mwgroup import det
    if len(B) == r:
        return abs(det(B))
    gram_ = [[sum(a * b for a, b in zip(u, w)) for w in B] for u in B]
    return det(gram_)


def _small_torsion_structure(elems):
    """Structure of a subgroup of Z/2 x Z/4 given as its element list.

    Generators with the fewest nonzero coordinates are preferred, so the
    answer reads as T1, 2 T2 rather than T1 + 2 T2 when both work.
    """
    elems = sorted({tuple(e) for e in elems}, key=lambda e: (sum(1 for v in e if v), e[1], e[0]))
    n = len(elems)

    def order(e):
        k = 1
        while (k * e[0]) % 2 or (k * e[1]) % 4:
            k += 1
        return k

    def span(gens):
        out = {(0, 0)}
        for g in gens:
            out = {((a + k * g[0]) % 2, (b + k * g[1]) % 4) for a, b in out for k in range(4)}
        return out

    if n == 1:
        return (), []
    for e in elems:
        if order(e) == n:
            return (n,), [list(e)]
    for a in elems:
        for b in elems:
            if order(a) <= order(b) and len(span([a, b])) == n and order(a) * order(b) == n:
                return (order(a), order(b)), [list(a), list(b)]
    raise ArithmeticError("unexpected torsion subgroup")


def _point_of(m, v, gens, r):
    P = O
    for c, g in zip(v, gens):
        P = _add(m, P, _mul(m, g, c))
    return P


def mw_structure_qt(tr, basis=None, torsion=None, model=None):
    """Structure of E(Q(t)) as the Galois-fixed part of E(Qbar(t)).

    By default the Qbar(t) basis is certified with :func:`mw_certificate_qbar`.
    """
    if not tr.curve_is_rational():
        raise FamilyError("the curve is not defined over Q(t)")
    report = {}
    if basis is None:
        cert = mw_certificate_qbar(tr)
        pts = cert["points"]
        m = cert["model"]
        basis = [pts.P1, pts.P2]
        torsion = (pts.T1, pts.T2)
        report["qbar_certificate"] = "PASS"
    else:
        m = model
    fx = galois_fixed_subgroup(m, basis, *torsion)
    r = len(basis)
    names = [f"P{i + 1}" for i in range(r)] + ["T1", "T2"]
    tau = {}
    for name, img in zip(names, fx.actions[7]):
        tau[name] = img
    report.update(
        rank=fx.rank,
        torsion=list(fx.torsion_structure),
        free_generators=fx.free_generators,
        torsion_generators=fx.torsion_generators,
        tau=tau,
        generator_points=fx.generator_points,
        basis_names=names,
        model=m,
    )
    for P in fx.generator_points:
        if not P.is_rational():
            raise CertificateError("rationality", f"fixed point {P!r} has non-rational coordinates")
    return report


def generated_by(report, vectors):
    """True iff the coordinate vectors generate the reported fixed subgroup."""
    r = len(report["basis_names"]) - 2
    free = [v[:r] for v in vectors if any(v[:r])]
    L = lattice_basis(free, r)
    target = lattice_basis([v[:r] for v in report["free_generators"]], r)
    if len(L) != len(target) or (L and _covolume(L, r) != _covolume(target, r)):
        return False
    tors = {tuple(_normal(v, r)[r:]) for v in vectors if not any(v[:r])}
    closure = {(0, 0)}
    changed = True
    while changed:
        changed = False
        for a in list(closure):
            for b in tors:
                s = ((a[0] + b[0]) % 2, (a[1] + b[1]) % 4)
                if s not in closure:
                    closure.add(s)
                    changed = True
    size = 1
    for k in report["torsion"]:
        size *= k
    return len(closure) == size


# ---------------------------------------------------------------- named examples

def bremner_ulas_triple():
    t = Poly.t()
    return make_triple(I * (1 + 2 * t - t * t), I * (-1 + 2 * t + t * t), SQRT_MINUS2 * (1 + t * t))


def _pts_general(f, g, h):
    return canonical_points(PythagoreanTriple(f, g, h), verify=False)


def e3_e4_example():
    """Curves E3, E4, the twist-and-scale map and the listed identities."""
    t = RatFun.t()
    u3 = 2 * t / (5 + t * t)
    u4 = -16 * t / (-10 + t * t)
    f3, g3, h3 = u3 * u3 - 1, 2 * u3, u3 * u3 + 1
    f4 = SQRT_MINUS2 * (u4 * u4 + 32)
    g4 = -16 * u4
    h4 = SQRT_MINUS2 * (32 - u4 * u4)
    E3 = WeierstrassModel.legendre_like(f3 * f3, g3 * g3)
    E4 = WeierstrassModel.legendre_like(f4 * f4, g4 * g4)
    p3, p4 = _pts_general(f3, g3, h3), _pts_general(f4, g4, h4)
    P33 = CurvePoint(-f3, (-5 + t * t) * u3 * (-1 + u3 * u3) / (5 + t * t))
    P34 = CurvePoint(-64 / SQRT_MINUS2 * f4, 512 * (t * t + 10) * u4 * (32 + u4 * u4) / (10 - t * t))
    s = -32 * SQRT_MINUS2
    c = 1 / SQRT_MINUS2

    def phi(P):
        if P.is_infinity:
            return P
        return CurvePoint(P.x.scale_var(c) * s ** 2, P.y.scale_var(c) * s ** 3)

    def comb(*terms):
        acc = O
        for k, P in terms:
            acc = _add(E4, acc, _mul(E4, P, k))
        return acc

    checks = {
        "phi(P13) = -P14 + T14 + 2 T24": phi(p3.P1) == comb((-1, p4.P1), (1, p4.T1), (2, p4.T2)),
        "phi(P23) = -P24 + 2 T24": phi(p3.P2) == comb((-1, p4.P2), (2, p4.T2)),
        "phi(T13) = T14": phi(p3.T1) == p4.T1,
        "phi(T23) = T24": phi(p3.T2) == p4.T2,
        "phi(P33) = P34": phi(P33) == P34,
    }
    on_curve = {
        "E3": all(E3.contains(P.x, P.y) for P in (p3.P1, p3.P2, p3.T1, p3.T2, P33)),
        "E4": all(E4.contains(P.x, P.y) for P in (p4.P1, p4.P2, p4.T1, p4.T2, P34)),
    }
    # twisted E3 equals E4 after the scaling
    twisted = WeierstrassModel(*(a.scale_var(c) * s ** k for a, k in zip(E3.coeffs, (1, 2, 3, 4, 6))))
    return {
        "E3": E3, "E4": E4, "points3": p3, "points4": p4, "P33": P33, "P34": P34,
        "phi": phi, "identities": checks, "on_curve": on_curve, "phi_model": twisted == E4,
    }


def e4_rank3_certificate():
    """E4(Q(t)) = Z^3 + Z/2 + Z/2 from the Qbar(t) basis transported by phi."""
    ex = e3_e4_example()
    if not all(ex["identities"].values()) or not ex["phi_model"]:
        raise CertificateError("phi", "a listed identity fails", ex["identities"])
    E4 = ex["E4"]
    mm, ch = minimal_model(E4)

    def move(P):
        return P if P.is_infinity else CurvePoint(*ch.map_point(P.x, P.y))

    p4 = ex["points4"]
    basis = [move(p4.P1), move(p4.P2), move(ex["P34"])]
    T1, T2 = move(p4.T1), move(p4.T2)
    listed = [_mul(mm, basis[0], 2), _mul(mm, basis[1], 2), basis[2]]
    for P in listed + [T1, _mul(mm, T2, 2)]:
        if not P.is_rational():
            raise CertificateError("rationality", f"{P!r} is not Q(t)-rational")
    G = gram(mm, listed)
    report = {
        "identities": ex["identities"],
        "gram_listed": G.matrix,
        "gram_det": G.determinant,
        "heights": [height(mm, P) for P in basis],
        "upper_bound_source": "Qbar(t) basis of E3 transported by phi (cited theorem)",
    }
    fx = galois_fixed_subgroup(mm, basis, T1, T2)
    report.update(rank=fx.rank, torsion=list(fx.torsion_structure),
                  free_generators=fx.free_generators, torsion_generators=fx.torsion_generators)
    claimed = [[2, 0, 0, 0, 0], [0, 2, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 2]]
    rep_like = {"basis_names": ["P1", "P2", "P3", "T1", "T2"], "free_generators": fx.free_generators,
                "torsion": list(fx.torsion_structure)}
    report["listed_generate"] = generated_by(rep_like, claimed)
    report["model"] = mm
    return report

