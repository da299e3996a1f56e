"""Command-line interface.

Exit status: 0 on success, 1 when the mathematics fails (singular curve,
point off the curve, failed certificate stage), 2 for malformed input.
Errors are reported as one JSON object on standard error.
"""

import argparse
import dataclasses
import json
import sys
from fractions import Fraction

from . import __version__
from .jsonio import (
    decode_model,
    decode_point,
    decode_poly,
    dumps,
    encode_fiber,
    encode_field,
    encode_model,
    encode_place,
    encode_point,
    encode_poly,
    encode_ratfun,
)
from .polyring import Place, Poly, RatFun


class InputError(ValueError):
    """Malformed command-line or JSON input (exit 2)."""


class MathFailure(Exception):
    """A computation finished with a negative mathematical verdict (exit 1)."""

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


# ---------------------------------------------------------------- JSON output

def jsonable(obj):
    from .mwgroup import CurvePoint, GramReport, LocalContribution
    from .weierstrass import KodairaFiber, WeierstrassModel

    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > 2 ** 53 else obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, Poly):
        return encode_poly(obj)
    if isinstance(obj, RatFun):
        return encode_ratfun(obj)
    if isinstance(obj, CurvePoint):
        return encode_point(obj)
    if isinstance(obj, Place):
        return encode_place(obj)
    if isinstance(obj, WeierstrassModel):
        return encode_model(obj)
    if isinstance(obj, KodairaFiber):
        return encode_fiber(obj)
    if isinstance(obj, GramReport):
        return {"matrix": jsonable(obj.matrix), "determinant": jsonable(obj.determinant)}
    if isinstance(obj, LocalContribution):
        return {"place": jsonable(obj.place), "N": obj.fiber_N, "n": jsonable(obj.n_index),
                "value": jsonable(obj.value), "count": obj.count, "total": jsonable(obj.total)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [jsonable(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    try:
        return encode_field(obj)
    except TypeError:
        return str(obj)


def _table(obj, indent=0):
    lines = []
    pad = "  " * indent
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_table(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_table(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(pad + _inline(obj))
    return lines


def _flat(v):
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) for x in v)


def _inline(v):
    return json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else str(v)


def emit(payload, fmt):
    data = jsonable(payload)
    if fmt == "table":
        print("\n".join(_table(data)))
    else:
        print(dumps(data))


# ---------------------------------------------------------------- input

def _load_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _decode(kind, fn, obj):
    try:
        return fn(obj)
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise InputError(f"bad {kind}: {exc}") from None


def _curve(path):
    return _decode("curve", decode_model, _load_json(path))


def _point(path):
    return _decode("point", decode_point, _load_json(path))


def _rational(text, name):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--{name}: not a rational number: {text!r}") from None


def _triple_from_json(obj):
    from .family import make_triple, triple_from_generators

    if not isinstance(obj, dict):
        raise InputError("family JSON must be an object")
    keys = set(obj)
    if keys == {"h1", "h2"}:
        h1, h2 = (_decode(k, decode_poly, obj[k]) for k in ("h1", "h2"))
        return lambda: triple_from_generators(h1, h2)
    if keys in ({"f", "g", "h"}, {"f", "g"}):
        f, g = (_decode(k, decode_poly, obj[k]) for k in ("f", "g"))
        h = _decode("h", decode_poly, obj["h"]) if "h" in obj else None
        return lambda: make_triple(f, g, h)
    raise InputError("family JSON needs keys {h1, h2} or {f, g, h}")


# ---------------------------------------------------------------- commands

def cmd_analyze(args):
    from .weierstrass import classify_fibers, is_globally_minimal, minimal_model, standard_invariants

    m = args.inputs["curve"]
    inv = standard_invariants(m)
    if inv.delta.is_zero():
        raise MathFailure("singular curve: discriminant is zero")
    verdict = is_globally_minimal(m)
    out = {"minimal": verdict.minimal, "discriminant": inv.delta}
    if not verdict.minimal:
        out["non_minimal_at"] = verdict.place
        out["reason"] = verdict.reason
        m, change = minimal_model(m)
        out["minimal_model"] = m
        out["change"] = {"u": change.u, "r": change.r, "s": change.s, "w": change.w}
        out["minimal_discriminant"] = standard_invariants(m).delta
    summary = classify_fibers(m)
    out["chi"] = summary.chi
    out["fibers"] = list(summary.fibers)
    out["euler_total"] = summary.euler_total()
    out["flags"] = list(summary.flags)
    return out


def _minimal_or_fail(m):
    from .weierstrass import is_globally_minimal

    verdict = is_globally_minimal(m)
    if not verdict.minimal:
        raise MathFailure(f"model is not globally minimal at {verdict.place}; run analyze for a minimal model")


def cmd_height(args):
    from .mwgroup import height, intersection_with_zero, local_contribution
    from .weierstrass import classify_fibers

    m, P = args.inputs["curve"], args.inputs["points"][0]
    _minimal_or_fail(m)
    h = height(m, P)
    out = {"height": h}
    if not P.is_infinity:
        out["intersection_with_zero"] = intersection_with_zero(m, P)
        out["local"] = [local_contribution(m, P, fb) for fb in classify_fibers(m).fibers
                        if fb.component_group_order > 1]
    return out


def cmd_pair(args):
    from .mwgroup import pairing

    m = args.inputs["curve"]
    P, Q = args.inputs["points"]
    _minimal_or_fail(m)
    return {"pairing": pairing(m, P, Q)}


def cmd_gram(args):
    from .mwgroup import check_on_curve, gram

    m = args.inputs["curve"]
    _minimal_or_fail(m)
    for P in args.inputs["points"]:
        check_on_curve(m, P)
    G = gram(m, args.inputs["points"])
    return {"gram": G.matrix, "determinant": G.determinant}


def cmd_torsion(args):
    from .torsion import torsion_over_Q, two_primary_torsion

    m = args.inputs["curve"]
    if args.over_q or (m.is_constant() and m.is_rational()):
        if not (m.is_constant() and m.is_rational()):
            raise MathFailure("--over-q needs a curve with constant rational coefficients")
        rep = torsion_over_Q(m)
        over = "Q"
    else:
        rep = two_primary_torsion(m)
        over = "Q(zeta8)(t)"
    return {"over": over, "structure": list(rep.structure), "generators": list(rep.generators),
            "order": rep.order, "bound_source": rep.bound_source}


def cmd_family(args):
    from .family import (CertificateError, canonical_points, curve_of, mw_certificate_qbar,
                         mw_structure_qt)

    tr = args.inputs["triple"]()
    out = {"f": tr.f, "g": tr.g, "h": tr.h, "provenance": tr.provenance,
           "degree_flags": list(tr.degree_flags()), "curve": curve_of(tr)}
    if tr.h is not None:
        out["points"] = canonical_points(tr).as_dict()
    if args.certify_qbar or args.certify_qt:
        try:
            rep = mw_certificate_qbar(tr)
        except CertificateError as exc:
            out["certificate"] = _cert_json(exc.report)
            raise MathFailure(str(exc), out) from None
        out["certificate"] = _cert_json(rep)
    if args.certify_qt:
        if not tr.curve_is_rational():
            raise MathFailure("the curve is not defined over Q(t)", out)
        q = mw_structure_qt(tr)
        out["qt_structure"] = {k: q[k] for k in ("rank", "torsion", "free_generators",
                                                 "torsion_generators", "tau", "generator_points",
                                                 "basis_names")}
    return out


def _cert_json(rep):
    out = {k: v for k, v in rep.items() if k not in ("points", "model")}
    stages = []
    for st in rep.get("stages", []):
        st = dict(st)
        if "images" in st:
            st["images"] = [[c.representative for c in pair] for pair in st["images"]]
        if "fibers" in st:
            st["fibers"] = [{"place": p, "type": k, "count": n} for p, k, n in st["fibers"]]
        stages.append(st)
    out["stages"] = stages
    if "points" in rep:
        out["generators"] = {k: getattr(rep["points"], k) for k in ("P1", "P2", "T1", "T2")}
    return out


def cmd_descent(args):
    from .family import curve_of, descent_image
    from .mwgroup import check_on_curve

    tr = args.inputs["triple"]()
    m = curve_of(tr)
    out = []
    for P in args.inputs["points"]:
        check_on_curve(m, P)
        a, b = descent_image(tr, P)
        out.append({"x_class": a.representative, "x_minus_f2_class": b.representative,
                    "constant": a.constant_status})
    return {"images": out}


def _parse_point3(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise InputError("--point needs a0,b0,c0")
    return tuple(_rational(p, "point") for p in parts)


def cmd_quadric(args):
    from .quadric import family_of, parametrize

    q, p0 = args.inputs["quadric"], args.inputs["point"]
    sol = parametrize(q, p0)
    fam = family_of(q, sol)
    return {
        "alpha": q.alpha, "beta": q.beta, "gamma": q.gamma,
        "f": sol.f, "g": sol.g, "h": sol.h, "base_point": list(sol.base_point),
        "conditions": q.conditions(), "rank_lower_bound": fam.rank_lower_bound,
        "curve": fam.model, "templates": fam.templates,
    }


def _quadric_family(obj):
    from .quadric import ParamSolution, Quadric, family_of, parametrize

    if not isinstance(obj, dict) or not {"alpha", "beta", "gamma"} <= set(obj):
        raise InputError("quadric family JSON needs alpha, beta, gamma")
    q = _decode("quadric", lambda o: Quadric(*(Fraction(str(o[k])) for k in ("alpha", "beta", "gamma"))), obj)
    if {"f", "g", "h"} <= set(obj):
        f, g, h = (_decode(k, decode_poly, obj[k]) for k in ("f", "g", "h"))
        base = tuple(Fraction(str(v)) for v in obj.get("base_point", ()))
        return lambda: family_of(q, ParamSolution(f, g, h, base))
    if "point" in obj:
        p0 = obj["point"]
        p0 = _parse_point3(p0) if isinstance(p0, str) else tuple(_rational(str(v), "point") for v in p0)
        return lambda: family_of(q, parametrize(q, p0))
    raise InputError("quadric family JSON needs f, g, h or a base point")


def cmd_specialize(args):
    from .quadric import specialize

    fam = args.inputs["family"]()
    sp = specialize(fam, args.inputs["t0"])
    return {"t0": args.inputs["t0"], "triple": list(sp["triple"]), "curve": sp["model"],
            "points": sp["points"], "unconditional_checks": sp["unconditional_checks"],
            "rank_lower_bound": sp["rank_lower_bound"], "caveat": sp["caveat"]}


def cmd_rank3(args):
    from .quadric import rank3_member

    r = rank3_member(args.inputs["t0"])
    out = {k: r[k] for k in ("t0", "u", "square_witness", "radicand", "points", "unconditional_checks",
                             "torsion", "rank_lower_bound", "certificate", "caveat")}
    out["triple"] = list(r["triple"])
    out["curve"] = r["model"]
    if r["rank_lower_bound"] is None:
        raise MathFailure("rank >= 3 certificate failed", out)
    return out


def cmd_verify_paper(args):
    from .reproduce import run_all

    results = run_all()
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        payload = [{"criterion": r.number, "name": r.name, "status": "PASS" if r.passed else "FAIL",
                    "details": r.details} for r in results]
        print(dumps(payload))
    else:
        for r in results:
            print(r.line())
            for d in r.details:
                if not d.startswith("ok"):
                    print("    " + d)
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 1 if failed else 0


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _report_error("usage", message)
        sys.exit(2)


def build_parser():
    p = _Parser(prog="mwfamily", description="Exact Mordell-Weil computations for Pythagorean elliptic families.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--format", choices=("json", "table"), default=None,
                   help="output format (default: json; table for verify-paper)")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help):
        return sub.add_parser(name, parents=[common], help=help)

    s = add("analyze", help="minimality, chi, discriminant and fiber table")
    s.add_argument("curve")
    s = add("height", help="canonical height of a point")
    s.add_argument("curve")
    s.add_argument("point")
    s = add("pair", help="height pairing of two points")
    s.add_argument("curve")
    s.add_argument("P")
    s.add_argument("Q")
    s = add("gram", help="Gram matrix of points")
    s.add_argument("curve")
    s.add_argument("points", nargs="+")
    s = add("torsion", help="torsion subgroup")
    s.add_argument("curve")
    s.add_argument("--over-q", action="store_true")
    s = add("family", help="Pythagorean triple, curve and certificates")
    s.add_argument("--h1")
    s.add_argument("--h2")
    s.add_argument("--f")
    s.add_argument("--g")
    s.add_argument("--hh", help="h of the triple; derived from f^2 + g^2 when omitted")
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--certify-qbar", action="store_true")
    grp.add_argument("--certify-qt", action="store_true")
    s = add("descent", help="2-descent square classes of points")
    s.add_argument("family")
    s.add_argument("points", nargs="+")
    s = add("quadric", help="parametrize alpha a^2 + beta b^2 = gamma c^2")
    s.add_argument("--alpha", required=True)
    s.add_argument("--beta", required=True)
    s.add_argument("--gamma", required=True)
    s.add_argument("--point", required=True, help="a0,b0,c0")
    s = add("specialize", help="specialize a quadric family at t = t0")
    s.add_argument("family")
    s.add_argument("--t0", required=True)
    s = add("rank3", help="rank >= 3 member of the set S")
    s.add_argument("--t0", required=True)
    add("verify-paper", help="run every acceptance criterion")
    return p


def _read_inputs(args):
    """Parse and validate every input before any computation (errors exit 2)."""
    from .quadric import Quadric, QuadricError

    cmd = args.command
    inp = {}
    if cmd in ("analyze", "height", "pair", "gram", "torsion"):
        inp["curve"] = _curve(args.curve)
    if cmd == "height":
        inp["points"] = [_point(args.point)]
    elif cmd == "pair":
        inp["points"] = [_point(args.P), _point(args.Q)]
    elif cmd == "gram":
        inp["points"] = [_point(x) for x in args.points]
    elif cmd == "family":
        gens = args.h1 is not None or args.h2 is not None
        direct = args.f is not None or args.g is not None or args.hh is not None
        if gens == direct:
            raise InputError("give either --h1/--h2 or --f/--g/--hh")
        if gens:
            if args.h1 is None or args.h2 is None:
                raise InputError("--h1 and --h2 go together")
            obj = {"h1": args.h1, "h2": args.h2}
        else:
            if args.f is None or args.g is None:
                raise InputError("--f and --g go together (--hh is optional)")
            obj = {"f": args.f, "g": args.g}
            if args.hh is not None:
                obj["h"] = args.hh
        inp["triple"] = _triple_from_json(obj)
    elif cmd == "descent":
        inp["triple"] = _triple_from_json(_load_json(args.family))
        inp["points"] = [_point(x) for x in args.points]
    elif cmd == "quadric":
        try:
            inp["quadric"] = Quadric(*(_rational(getattr(args, k), k) for k in ("alpha", "beta", "gamma")))
        except QuadricError as exc:
            raise InputError(str(exc)) from None
        inp["point"] = _parse_point3(args.point)
    elif cmd == "specialize":
        inp["family"] = _quadric_family(_load_json(args.family))
        inp["t0"] = _rational(args.t0, "t0")
    elif cmd == "rank3":
        inp["t0"] = _rational(args.t0, "t0")
    return inp


COMMANDS = {
    "analyze": cmd_analyze,
    "height": cmd_height,
    "pair": cmd_pair,
    "gram": cmd_gram,
    "torsion": cmd_torsion,
    "family": cmd_family,
    "descent": cmd_descent,
    "quadric": cmd_quadric,
    "specialize": cmd_specialize,
    "rank3": cmd_rank3,
}


def _report_error(kind, message, payload=None):
    err = {"error": kind, "message": message}
    if payload is not None:
        err["report"] = jsonable(payload)
    sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")


def run(argv=None):
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "table" if args.command == "verify-paper" else "json"
    if args.command == "verify-paper":
        return cmd_verify_paper(args)
    try:
        args.inputs = _read_inputs(args)
    except InputError as exc:
        _report_error("input", str(exc))
        return 2
    try:
        out = COMMANDS[args.command](args)
    except MathFailure as exc:
        if exc.payload is not None:
            emit(exc.payload, args.format)
        _report_error("math", str(exc), None)
        return 1
    except (ArithmeticError, ValueError) as exc:
        _report_error("math", f"{type(exc).__name__}: {exc}")
        return 1
    emit(out, args.format)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
