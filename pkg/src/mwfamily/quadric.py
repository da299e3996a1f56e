"""Conics alpha a^2 + beta b^2 = gamma c^2 and the elliptic families they carry.

A rational point on the conic gives a pencil of lines, hence a degree-2
parametrization (f, g, h).  Substituting it into y^2 = x(x - alpha a^2)(x - beta b^2)
yields a curve over Q(t) whose specializations inherit the points
Q~1 = (-beta b^2, .) and Q~2 = (gamma c^2, .) when the relevant constants are
rational squares.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .fields import is_square_rational
from .mwgroup import CurvePoint, check_on_curve
from .polyring import Poly, RatFun, poly_gcd
from .torsion import is_nontorsion_Q, torsion_over_Q
from .weierstrass import WeierstrassModel, specialize_model, standard_invariants

__all__ = [
    "Quadric",
    "ParamSolution",
    "RationalTriple",
    "ParametrizedFamily",
    "QuadricError",
    "DegenerateConicError",
    "NotOnQuadricError",
    "SingularSpecializationError",
    "ParametrizationPoleError",
    "DegenerateMemberError",
    "parametrize",
    "validate_solution",
    "family_of",
    "specialize",
    "specialize_triple",
    "rank3_member",
    "rank3_parameters",
    "CAVEAT",
]

CAVEAT = "silverman-finite-exceptions"


class QuadricError(ValueError):
    pass


class DegenerateConicError(QuadricError):
    pass


class NotOnQuadricError(QuadricError):
    pass


class SingularSpecializationError(QuadricError, ArithmeticError):
    pass


class ParametrizationPoleError(QuadricError, ArithmeticError):
    pass


class DegenerateMemberError(QuadricError, ArithmeticError):
    pass


@dataclass(frozen=True)
class Quadric:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.abg == 0:
            raise DegenerateConicError("alpha, beta, gamma must be nonzero")
        if self.disc == 0:
            raise DegenerateConicError("beta^2 + 4 alpha gamma must be nonzero")

    @property
    def abg(self):
        return self.alpha * self.beta * self.gamma

    @property
    def disc(self):
        return self.beta ** 2 + 4 * self.alpha * self.gamma

    def __call__(self, a, b, c):
        return self.alpha * a * a + self.beta * b * b - self.gamma * c * c

    def bilinear(self, p, q):
        return self.alpha * p[0] * q[0] + self.beta * p[1] * q[1] - self.gamma * p[2] * q[2]

    def conditions(self):
        """Which of the point templates exist over Q."""
        return {
            "minus_2_gamma_square": is_square_rational(-2 * self.gamma) is not None,
            "alpha_beta_gamma_square": is_square_rational(self.abg) is not None,
        }

    def condition_bound(self):
        """Rank lower bound read off the two square conditions (0, 1 or 2)."""
        return sum(self.conditions().values())


@dataclass(frozen=True)
class RationalTriple:
    a: Fraction
    b: Fraction
    c: Fraction

    def __iter__(self):
        return iter((self.a, self.b, self.c))


@dataclass(frozen=True)
class ParamSolution:
    f: Poly
    g: Poly
    h: Poly
    base_point: tuple
    direction: tuple = field(default=None)


def validate_solution(q, f, g, h):
    """Exact identity alpha f^2 + beta g^2 = gamma h^2."""
    f, g, h = (Poly.coerce(p) for p in (f, g, h))
    return (q.alpha * f * f + q.beta * g * g - q.gamma * h * h).is_zero()


def _directions():
    """Fixed scan order of pencils t -> u + t v (u, v in Z^3)."""
    units = [(0, 1, 0), (1, 0, 0), (0, 0, 1)]
    signed = [(-1, 0, 0), (1, 0, 0), (0, -1, 0), (0, 1, 0), (0, 0, -1), (0, 0, 1),
              (1, 1, 0), (1, -1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1), (1, -1, 1)]
    for u in units + [(1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)]:
        for v in signed:
            yield u, v


def parametrize(q, p0):
    a0, b0, c0 = (Fraction(v) for v in p0)
    if (a0, b0, c0) == (0, 0, 0):
        raise NotOnQuadricError("base point must be nonzero")
    if q(a0, b0, c0) != 0:
        raise NotOnQuadricError(f"({a0}, {b0}, {c0}) is not on the quadric")
    P0 = (a0, b0, c0)
    t = Poly.t()
    for u, v in _directions():
        D = [Poly.const(ui) + vi * t for ui, vi in zip(u, v)]
        qD = q.alpha * D[0] * D[0] + q.beta * D[1] * D[1] - q.gamma * D[2] * D[2]
        B = q.alpha * a0 * D[0] + q.beta * b0 * D[1] - q.gamma * c0 * D[2]
        if qD.is_zero():
            continue
        f, g, h = (qD * P0[i] - 2 * B * D[i] for i in range(3))
        if f.deg() != 2 or h.deg() != 2 or g.deg() > 2:
            continue
        common = poly_gcd(poly_gcd(f, g), h)
        if common.deg() > 0 or g.is_zero():
            continue
        if not validate_solution(q, f, g, h):
            raise ArithmeticError("pencil produced a non-solution")
        return ParamSolution(f, g, h, P0, (u, v))
    raise DegenerateConicError("no pencil direction gives deg f = deg h = 2")


@dataclass
class ParametrizedFamily:
    quadric: Quadric
    solution: ParamSolution
    model: WeierstrassModel
    templates: dict
    rank_lower_bound: int


def _templates(q, a, b, c, R=lambda v: v):
    """Q~1 needs -2 gamma square, Q~2 needs alpha beta gamma square.

    Negative square roots are taken so that the (-2, 1, -2) case matches the
    printed points (-b^2, -2 b^2 c), (-2 c^2, -2 abc).
    """
    out = {}
    r1 = is_square_rational(-2 * q.gamma)
    if r1 is not None:
        out["Q1"] = (R(-q.beta * b * b), R(-r1 * q.beta * b * b * c))
    r2 = is_square_rational(q.abg)
    if r2 is not None:
        out["Q2"] = (R(q.gamma * c * c), R(-r2 * a * b * c))
    return out


def family_of(q, sol):
    if not validate_solution(q, sol.f, sol.g, sol.h):
        raise QuadricError("solution does not satisfy the quadric")
    f, g, h = (RatFun(p) for p in (sol.f, sol.g, sol.h))
    m = WeierstrassModel.legendre_like(q.alpha * f * f, q.beta * g * g)
    pts = {k: CurvePoint(*xy) for k, xy in _templates(q, f, g, h).items()}
    for P in pts.values():
        check_on_curve(m, P)
    return ParametrizedFamily(q, sol, m, pts, len(pts))


def specialize_triple(fam, t0):
    """(f(t0), g(t0), h(t0)) on the conic; h(t0) = 0 is a pole of a/c, b/c."""
    t0 = Fraction(t0)
    sol = fam.solution
    if sol.h(t0) == 0:
        raise ParametrizationPoleError(f"h({t0}) = 0")
    tri = RationalTriple(*(Fraction(p(t0)) for p in (sol.f, sol.g, sol.h)))
    if fam.quadric(*tri) != 0:
        raise ArithmeticError("specialized triple is off the quadric")
    return tri


def specialize(fam, t0):
    t0 = Fraction(t0)
    tri = specialize_triple(fam, t0)
    a, b, c = tri
    m = specialize_model(fam.model, t0)
    if standard_invariants(m).delta.is_zero():
        err = SingularSpecializationError(f"discriminant vanishes at t = {t0}, triple {tuple(map(str, tri))}")
        err.triple = tri
        raise err
    q = fam.quadric
    pts = {k: CurvePoint(*xy) for k, xy in _templates(q, a, b, c).items()}
    checks = {}
    for k, P in pts.items():
        check_on_curve(m, P)
        checks[k] = {"on_curve": True, "non_torsion": is_nontorsion_Q(m, P)}
    return {
        "model": m,
        "triple": tri,
        "points": pts,
        "unconditional_checks": checks,
        "rank_lower_bound": len(pts),
        "caveat": CAVEAT,
    }


# ---------------------------------------------------------------- rank 3 set

def rank3_parameters(t0):
    """u = -16 t0 / (t0^2 - 10) and the member (f1(u), g1(u), h1(u)) of S."""
    t0 = Fraction(t0)
    if t0 == 0:
        raise DegenerateMemberError("t0 = 0 is excluded")
    if t0 * t0 == 10:
        raise DegenerateMemberError("t0^2 = 10 is a pole")
    u = -16 * t0 / (t0 * t0 - 10)
    return u, RationalTriple(u * u + 32, -16 * u, -(u * u - 32))


def rank3_member(t0):
    u, tri = rank3_parameters(t0)
    a, b, c = tri
    if -2 * a * a + b * b != -2 * c * c:
        raise ArithmeticError("member of S is off the quadric")
    if a == 0 or b == 0 or c == 0:
        raise DegenerateMemberError(f"degenerate member {tri}")
    m = WeierstrassModel.legendre_like(-2 * a * a, b * b)
    if standard_invariants(m).delta.is_zero():
        raise DegenerateMemberError("singular curve")
    radicand = 2 * (a - 32) * (64 * a + b * b)
    w = is_square_rational(radicand)
    if w is None:
        raise ArithmeticError(f"2(a - 32)(64 a + b^2) = {radicand} is not a square")
    pts = {
        "Q1": CurvePoint(-b * b, -2 * b * b * c),
        "Q2": CurvePoint(-2 * c * c, -2 * a * b * c),
        "Q3": CurvePoint(-64 * a, 8 * a * w),
    }
    checks = {}
    for k, P in pts.items():
        check_on_curve(m, P)
        checks[k] = {"on_curve": True, "non_torsion": is_nontorsion_Q(m, P)}
    from .mwgroup import _add, negate

    names = sorted(pts)
    for i, k in enumerate(names):
        for j in names[i + 1:]:
            for sign, S in (("+", _add(m, pts[k], pts[j])), ("-", _add(m, pts[k], negate(m, pts[j])))):
                checks[f"{k}{sign}{j}"] = {"non_torsion": is_nontorsion_Q(m, S)}
    ok = all(v["non_torsion"] for v in checks.values())
    return {
        "t0": Fraction(t0),
        "u": u,
        "triple": tri,
        "model": m,
        "square_witness": w,
        "radicand": radicand,
        "points": pts,
        "unconditional_checks": checks,
        "torsion": list(torsion_over_Q(m).structure),
        "rank_lower_bound": 3 if ok else None,
        "certificate": "rank >= 3 (finite exceptions)" if ok else "FAIL",
        "caveat": CAVEAT,
    }
