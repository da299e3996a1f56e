import json

from hypothesis import given, settings

from mwfamily.family import canonical_points, curve_of, make_triple
from mwfamily.jsonio import (
    decode_model,
    decode_point,
    decode_poly,
    decode_ratfun,
    encode_model,
    encode_point,
    encode_poly,
    encode_ratfun,
)
from mwfamily.polyring import Poly, RatFun
from strategies import polys

t = Poly.t()


def test_model_and_points_round_trip():
    tr = make_triple(t * t - 1, 2 * t, t * t + 1)
    m = curve_of(tr)
    blob = json.loads(json.dumps(encode_model(m)))
    assert decode_model(blob) == m and blob["field"] == "Q" and blob["chart"] == "t"
    for P in canonical_points(tr).as_dict().values():
        assert decode_point(json.loads(json.dumps(encode_point(P)))) == P
    assert decode_point("O").is_infinity


def test_exact_strings():
    assert encode_poly(t / 3 - 2) == ["-2", "1/3"]
    assert decode_poly("[1, \"1/2\"]") == 1 + t / 2


@settings(max_examples=200)
@given(polys(max_deg=3, rational=False), polys(max_deg=3, nonzero=True))
def test_ratfun_round_trip(p, q):
    r = RatFun(p, q)
    assert decode_ratfun(json.loads(json.dumps(encode_ratfun(r)))) == r
