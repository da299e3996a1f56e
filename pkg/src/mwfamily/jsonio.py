"""JSON encoding of field elements, polynomials, models, points and places."""

import json

from .fields import decode_field, encode_field
from .polyring import INFINITY, Place, Poly, RatFun

__all__ = [
    "encode_poly",
    "decode_poly",
    "encode_ratfun",
    "decode_ratfun",
    "encode_model",
    "decode_model",
    "encode_point",
    "decode_point",
    "encode_place",
    "encode_fiber",
    "dumps",
]


def encode_poly(p):
    return [encode_field(c) for c in Poly.coerce(p).coeffs]


def decode_poly(obj):
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, list):
        obj = [obj]
    return Poly([decode_field(c) for c in obj])


def encode_ratfun(r):
    r = RatFun.coerce(r)
    return {"num": encode_poly(r.num), "den": encode_poly(r.den)}


def decode_ratfun(obj):
    """Accepts {"num", "den"}, a bare Poly array, or a scalar."""
    if isinstance(obj, dict):
        if set(obj) - {"num", "den"} or "num" not in obj:
            raise ValueError(f"bad rational function object {obj!r}")
        return RatFun(decode_poly(obj["num"]), decode_poly(obj.get("den", [1])))
    return RatFun(decode_poly(obj))


def encode_model(m):
    chart = "t" if m.chart == "t" else {"s": m.chart[1]}
    return {"field": m.field, "chart": chart, "a": [encode_ratfun(a) for a in m.coeffs]}


def decode_model(obj):
    from .weierstrass import WeierstrassModel

    if not isinstance(obj, dict) or "a" not in obj:
        raise ValueError("curve JSON needs an \"a\" array")
    a = obj["a"]
    if not isinstance(a, list) or len(a) != 5:
        raise ValueError("\"a\" must list a1, a2, a3, a4, a6")
    chart = obj.get("chart", "t")
    if isinstance(chart, dict):
        chart = ("s", int(chart["s"]))
    elif chart != "t":
        raise ValueError(f"bad chart {chart!r}")
    return WeierstrassModel(*(decode_ratfun(c) for c in a), chart=chart)


def encode_point(P):
    if P.is_infinity:
        return "O"
    return {"x": encode_ratfun(P.x), "y": encode_ratfun(P.y)}


def decode_point(obj):
    from .mwgroup import CurvePoint

    if obj == "O":
        return CurvePoint.infinity()
    if not isinstance(obj, dict) or set(obj) != {"x", "y"}:
        raise ValueError(f"bad point {obj!r}")
    return CurvePoint(decode_ratfun(obj["x"]), decode_ratfun(obj["y"]))


def encode_place(pl):
    if pl.is_infinite:
        return {"type": "infinity"}
    return {"type": "finite", "poly": encode_poly(pl.poly)}


def decode_place(obj):
    if obj.get("type") == "infinity":
        return INFINITY
    return Place(decode_poly(obj["poly"]))


def encode_fiber(fb):
    return {
        "place": encode_place(fb.place),
        "type": fb.type_tag,
        "components": fb.components,
        "group": fb.component_group_order,
        "count": fb.count,
    }


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2)
