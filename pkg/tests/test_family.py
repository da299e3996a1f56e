import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwfamily.family import (
    CertificateError,
    FamilyError,
    bremner_ulas_triple,
    canonical_points,
    curve_of,
    descent_image,
    e3_e4_example,
    e4_rank3_certificate,
    make_triple,
    mw_certificate_qbar,
    mw_structure_qt,
    square_class_independent,
    square_class_of,
    torsion_points,
    triple_from_generators,
)
from mwfamily.fields import I
from mwfamily.mwgroup import O, CurvePoint, add_points, height, mul_scalar
from mwfamily.polyring import Poly, RatFun
from mwfamily.reproduce import random_family_triple

t = Poly.t()


def test_triple_from_generators():
    tr = triple_from_generators(1, t)
    assert tr.f * tr.f + tr.g * tr.g == tr.h * tr.h
    assert tr.f == (1 + t * t) / 2
    assert tr.provenance == "generators" and tr.theorem_grade
    with pytest.raises(FamilyError):
        triple_from_generators(t, t * (t + 1))
    with pytest.raises(FamilyError):
        triple_from_generators(1, 2)


def test_make_triple_derives_h():
    tr = make_triple(t * t - 1, 2 * t)
    assert tr.h * tr.h == (t * t + 1) ** 2
    with pytest.raises(FamilyError):
        make_triple(t * t - 1, 2 * t, t * t)


def test_pair_without_h(inseparable):
    assert inseparable.h is None and inseparable.provenance == "pair"
    with pytest.raises(FamilyError):
        canonical_points(inseparable)
    T1, T2 = torsion_points(inseparable)
    m = curve_of(inseparable)
    assert m.contains(T1.x, T1.y) and m.contains(T2.x, T2.y)


def test_degenerate_curves_rejected():
    with pytest.raises(FamilyError):
        curve_of(make_triple(t, t))
    with pytest.raises(FamilyError):
        curve_of(make_triple(t * (t - 1), t * (t + 1)))


def test_canonical_points(classic):
    tr, m, pts = classic
    for P in pts.as_dict().values():
        assert m.contains(P.x, P.y)
    f, g, h = (RatFun(p) for p in (tr.f, tr.g, tr.h))
    assert pts.Q2 == CurvePoint(h * h, f * g * h)
    assert mul_scalar(m, pts.P1, -2) == pts.Q1
    assert mul_scalar(m, pts.P2, -2) == pts.Q2


def test_descent_images(classic):
    tr, m, pts = classic
    x1, x2 = descent_image(tr, pts.Q1)
    assert x1.trivial and x2.trivial  # Q1 = -2 P1 lies in 2E
    imgs = [descent_image(tr, P) for P in (pts.P1, pts.P2, pts.T1, pts.T2)]
    assert square_class_independent(imgs)
    assert not square_class_independent(imgs + [descent_image(tr, add_points(m, pts.P1, pts.T1))])
    with pytest.raises(FamilyError):
        descent_image(tr, CurvePoint(0, 0))
    assert square_class_of(RatFun(4 * t**3, t + 1)).representative == t * (t + 1)


@pytest.mark.parametrize("tr", [make_triple(t * t - 1, 2 * t, t * t + 1), triple_from_generators(1, t)])
def test_certificate_passes(tr):
    rep = mw_certificate_qbar(tr)
    assert rep["verdict"] == "PASS" and rep["rank"] == 2 and rep["torsion"] == [2, 4]
    stages = {s["stage"]: s for s in rep["stages"]}
    assert [s["stage"] for s in rep["stages"]] == [
        "validity", "minimal_model", "fibers", "shioda_tate", "torsion", "gram", "index", "descent"]
    assert stages["shioda_tate"]["rank_upper_bound"] == 2
    assert stages["index"]["scaled_disc"] == 8
    assert stages["gram"]["matrix"] == ((Fraction(1, 2), 0), (0, 1))


def test_certificate_fails_inseparable(inseparable):
    with pytest.raises(CertificateError) as exc:
        mw_certificate_qbar(inseparable)
    assert exc.value.stage == "validity"
    assert exc.value.report["verdict"] == "FAIL"
    assert exc.value.report["stages"][-1]["torsion"] == [4, 4]


def test_certificate_fails_constant_g():
    with pytest.raises(CertificateError) as exc:
        mw_certificate_qbar(make_triple(t * t, Poly.const(1)))
    assert exc.value.stage == "validity"


def test_structure_over_qt_classic(classic):
    tr, _, _ = classic
    rep = mw_structure_qt(tr)
    assert rep["rank"] == 1 and rep["torsion"] == [2, 2]
    assert rep["free_generators"] == [[0, 1, 0, 0]]
    assert rep["tau"] == {"P1": [-1, 0, 0, 0], "P2": [0, 1, 0, 0], "T1": [0, 0, 1, 0], "T2": [0, 0, 0, 3]}
    for P in rep["generator_points"]:
        assert P.is_rational()


def test_structure_over_qt_bremner_ulas():
    tr = bremner_ulas_triple()
    assert tr.curve_is_rational() and not tr.is_rational()
    rep = mw_structure_qt(tr)
    assert rep["rank"] == 1 and rep["torsion"] == [2, 4]
    gen = rep["generator_points"][0]
    assert gen.x == RatFun((t * t + 2 * t - 1) ** 2)
    assert height(rep["model"], gen) == 2


def test_structure_needs_rational_curve():
    with pytest.raises(FamilyError):
        mw_structure_qt(make_triple(I * t * t + 1, t))


def test_e3_e4_identities():
    ex = e3_e4_example()
    assert all(ex["identities"].values())
    assert all(ex["on_curve"].values())
    assert ex["phi_model"]


def test_e4_rank3():
    rep = e4_rank3_certificate()
    assert rep["rank"] == 3 and rep["torsion"] == [2, 2]
    assert rep["heights"] == [1, 2, 3]
    assert rep["gram_det"] == 96
    assert rep["listed_generate"]


@settings(max_examples=20)
@given(st.integers(min_value=0, max_value=10**9))
def test_random_triples_certify(seed):
    tr = random_family_triple(random.Random(seed))
    assert tr.f * tr.f + tr.g * tr.g == tr.h * tr.h
    rep = mw_certificate_qbar(tr)
    assert rep["verdict"] == "PASS"
    pts = rep["points"]
    m = rep["model"]
    assert height(m, pts.P1) == Fraction(tr.f.deg(), 4)
    assert height(m, pts.Q1) == tr.f.deg()
    assert mul_scalar(m, pts.T2, 4) == O
