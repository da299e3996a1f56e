import json

import pytest

from mwfamily import reproduce
from mwfamily.cli import run
from mwfamily.family import canonical_points, curve_of, make_triple
from mwfamily.jsonio import encode_model, encode_point
from mwfamily.mwgroup import CurvePoint
from mwfamily.polyring import Poly

t = Poly.t()


@pytest.fixture()
def files(tmp_path):
    tr = make_triple(t * t - 1, 2 * t, t * t + 1)
    m = curve_of(tr)
    pts = canonical_points(tr)

    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)

    return {
        "curve": write("curve.json", encode_model(m)),
        "Q1": write("q1.json", encode_point(pts.Q1)),
        "Q2": write("q2.json", encode_point(pts.Q2)),
        "P1": write("p1.json", encode_point(pts.P1)),
        "T1": write("t1.json", encode_point(pts.T1)),
        "off": write("off.json", encode_point(CurvePoint(1, 1))),
        "family": write("family.json", {"f": ["-1", "0", "1"], "g": ["0", "2"], "h": ["1", "0", "1"]}),
        "quad": write("quad.json", {"alpha": "-2", "beta": "1", "gamma": "-2", "point": [1, 0, 1]}),
        "singular": write("singular.json", {"a": ["0", "0", "0", "0", "0"]}),
        "garbage": write("garbage.json", {"b": 1}),
        "write": write,
    }


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip().startswith(("{", "[")) else out), err


def test_analyze_classic(files, capsys):
    code, out, _ = call(capsys, "analyze", files["curve"])
    assert code == 0 and out["minimal"] is True and out["chi"] == 2
    types = sorted((f["type"], f["count"], f["place"]["type"]) for f in out["fibers"])
    assert types == [("I2", 4, "finite"), ("I4", 1, "finite"), ("I4", 1, "infinity"), ("I4", 2, "finite")]
    assert out["euler_total"] == 24


def test_analyze_table(files, capsys):
    code, out, _ = call(capsys, "analyze", files["curve"], "--format", "table")
    assert code == 0 and "chi" in out
    code2, out2, _ = call(capsys, "--format", "table", "analyze", files["curve"])
    assert out2 == out


def test_output_is_deterministic(files, capsys):
    _, a, _ = call(capsys, "analyze", files["curve"])
    _, b, _ = call(capsys, "analyze", files["curve"])
    assert a == b


def test_height_and_pair(files, capsys):
    code, out, _ = call(capsys, "height", files["curve"], files["Q1"])
    assert code == 0 and out["height"] == "2"
    code, out, _ = call(capsys, "pair", files["curve"], files["Q1"], files["Q2"])
    assert code == 0 and out["pairing"] == "0"
    code, out, _ = call(capsys, "gram", files["curve"], files["Q1"], files["Q2"])
    assert out["gram"] == [["2", "0"], ["0", "4"]] and out["determinant"] == "8"


def test_off_curve_is_math_failure(files, capsys):
    code, _, err = call(capsys, "height", files["curve"], files["off"])
    assert code == 1 and json.loads(err)["error"] == "math"


def test_singular_curve(files, capsys):
    code, _, err = call(capsys, "analyze", files["singular"])
    assert code == 1 and "singular" in json.loads(err)["message"]


def test_malformed_input(files, capsys):
    code, _, err = call(capsys, "analyze", files["garbage"])
    assert code == 2 and json.loads(err)["error"] == "input"
    code, _, err = call(capsys, "analyze", "/nonexistent.json")
    assert code == 2
    code, _, err = call(capsys, "rank3", "--t0", "abc")
    assert code == 2


def test_unknown_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["analyze", "x.json", "--bogus"])
    assert exc.value.code == 2
    assert json.loads(capsys.readouterr().err)["error"] == "usage"


def test_torsion(files, capsys):
    code, out, _ = call(capsys, "torsion", files["curve"])
    assert code == 0 and out["structure"] == [2, 4]
    curve = files["write"]("e0.json", {"a": ["0", str(225**2 + 64**2), "0", str(225**2 * 64**2), "0"]})
    code, out, _ = call(capsys, "torsion", curve, "--over-q")
    assert code == 0 and out["structure"] == [2, 8]


def test_family_certify_qbar(capsys):
    code, out, _ = call(capsys, "family", "--h1", "[1]", "--h2", "[0,1]", "--certify-qbar")
    assert code == 0
    cert = out["certificate"]
    assert cert["verdict"] == "PASS" and cert["rank"] == 2 and cert["torsion"] == [2, 4]


def test_family_certify_qt(capsys):
    code, out, _ = call(capsys, "family", "--f", "[-1,0,1]", "--g", "[0,2]", "--hh", "[1,0,1]", "--certify-qt")
    assert code == 0 and out["qt_structure"]["rank"] == 1 and out["qt_structure"]["torsion"] == [2, 2]


def test_family_failed_certificate(capsys):
    code, out, err = call(capsys, "family", "--f", "[-1,0,1]", "--g", "[1,0,1]", "--certify-qbar")
    assert code == 1
    assert out["certificate"]["verdict"] == "FAIL"
    assert json.loads(err)["error"] == "math"


def test_family_bad_flags(capsys):
    code, _, _ = call(capsys, "family", "--h1", "[1]")
    assert code == 2
    code, _, _ = call(capsys, "family", "--h1", "[1]", "--h2", "[0,1]", "--f", "[1]")
    assert code == 2


def test_descent(files, capsys):
    code, out, _ = call(capsys, "descent", files["family"], files["P1"], files["Q1"])
    assert code == 0 and len(out["images"]) == 2
    assert out["images"][1]["x_class"] == ["1"]


def test_quadric_and_specialize(files, capsys):
    code, out, _ = call(capsys, "quadric", "--alpha", "1", "--beta", "1", "--gamma", "2", "--point", "1,1,1")
    assert code == 0 and out["rank_lower_bound"] == 0
    code, out, _ = call(capsys, "specialize", files["quad"], "--t0", "3/7")
    assert code == 0 and out["rank_lower_bound"] == 2 and out["caveat"] == "silverman-finite-exceptions"
    code, _, _ = call(capsys, "quadric", "--alpha", "0", "--beta", "1", "--gamma", "2", "--point", "1,1,1")
    assert code == 2


def test_rank3(capsys):
    code, out, _ = call(capsys, "rank3", "--t0", "1")
    assert code == 0 and out["square_witness"] == "11264/81" and out["rank_lower_bound"] == 3
    code, _, _ = call(capsys, "rank3", "--t0", "0")
    assert code == 1


def _fake(passed):
    return lambda: [reproduce.CheckResult(1, "stub", passed, ["ok stub"], 0.0)]


def test_verify_paper_exit_codes(monkeypatch, capsys):
    monkeypatch.setattr(reproduce, "run_all", _fake(True))
    assert run(["verify-paper"]) == 0
    assert "1/1 criteria passed" in capsys.readouterr().out
    monkeypatch.setattr(reproduce, "run_all", _fake(False))
    assert run(["verify-paper", "--format", "json"]) == 1
    assert json.loads(capsys.readouterr().out)[0]["status"] == "FAIL"
