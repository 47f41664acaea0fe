import json
import subprocess
import sys

import numpy as np
import pytest

from hyperseries.cli import fmt_float, main, parse_element
from hyperseries import quaternions

EXAMPLE = json.dumps({"algebra": "H", "stem": [{"k": 0, "c1": "1", "c2": "-k"}], "center": "k"})


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_fmt_float():
    assert fmt_float(0.1) == "0.10000000000000001"
    assert fmt_float(-0.0) == "0"
    assert fmt_float(2.0) == "2"
    assert float(fmt_float(1 / 3)) == 1 / 3


def test_parse_element():
    H = quaternions()
    assert parse_element(H, "1+2i-k").allclose(H.element([1, 2, 0, -1]), 0.0)
    assert parse_element(H, [0, 1, 0, 0]).allclose(H["i"], 0.0)
    assert parse_element(H, 3).allclose(H.scalar(3.0), 0.0)
    with pytest.raises(ValueError):
        parse_element(H, "1+q")


def test_metric(capsys):
    code, out, _ = run(["metric", "--algebra", "H", "--points", '["i", "j"]'], capsys)
    assert code == 0
    res = json.loads(out)
    assert res["sigma"] == 2.0
    assert res["tau"] == 0.0
    assert res["norm_difference"] <= res["sigma"]


def test_metric_pairs(capsys):
    code, out, _ = run(["metric", "--algebra", "H", "--points", '[["1+i", "i"], ["2", "0"]]'], capsys)
    assert code == 0
    res = json.loads(out)
    assert res[0]["tau"] == pytest.approx(5 ** 0.25, rel=1e-15)
    assert res[1]["tau"] == 2.0


def test_coeffs_system_example(capsys):
    code, out, _ = run(["coeffs", "--config", EXAMPLE, "--method", "system", "--order", "5"], capsys)
    assert code == 0
    res = json.loads(out)
    want = [[2, 0, 0, 0], [0, 0, 0, -1], [0.5, 0, 0, 0], [0, 0, 0, -0.5], [0.375, 0, 0, 0], [0, 0, 0, -0.375]]
    assert np.allclose(res["coefficients"], want, atol=1e-15)
    assert res["residuals"]["contour"] < 1e-8
    assert res["kind"] == "spherical"


@pytest.mark.parametrize("method", ["deriv", "contour"])
def test_coeffs_other_methods(method, capsys):
    cfg = json.dumps({"algebra": "H", "coeffs": ["1", "i", "0.5j"], "center": "0.5k", "radius": 0.3})
    code, out, _ = run(["coeffs", "--config", cfg, "--method", method, "--order", "3"], capsys)
    assert code == 0
    assert max(json.loads(out)["residuals"].values()) < 1e-8


def test_boundary_cassini(capsys):
    code, out, _ = run(["boundary", "--cassini", "w=i", "r=1", "--samples", "64"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "loop,phi,re,im"
    assert len(lines) == 65
    z = np.array([complex(float(r.split(",")[2]), float(r.split(",")[3])) for r in lines[1:]])
    assert np.max(np.abs(np.abs(z * z + 1) - 1)) < 1e-10


def test_boundary_two_loops_and_sigma(capsys):
    code, out, _ = run(["boundary", "--cassini", "w=2i", "r=1", "--samples", "16"], capsys)
    assert code == 0
    labels = {r.split(",")[0] for r in out.strip().splitlines()[1:]}
    assert labels == {"upper", "lower"}
    code, out, _ = run(["boundary", "--algebra", "H", "--sigma", "y=i", "r=1.5", "--samples", "32"], capsys)
    assert code == 0
    labels = {r.split(",")[0] for r in out.strip().splitlines()[1:]}
    assert labels == {"disk", "lens"}


def test_eval_power(capsys):
    cfg = json.dumps({"algebra": "H", "center": "0", "coeffs": ["1"] * 60})
    code, out, _ = run(["eval-power", "--config", cfg, "--points", '["0.5"]'], capsys)
    assert code == 0
    res = json.loads(out)["results"][0]
    assert res["value"] == [2, 0, 0, 0] or np.allclose(res["value"], [2, 0, 0, 0], atol=1e-14)


def test_eval_power_divergent_exit_code(capsys):
    cfg = json.dumps({"algebra": "H", "center": "0", "coeffs": ["1"] * 60})
    code, _, _ = run(["eval-power", "--config", cfg, "--points", '["2j"]'], capsys)
    assert code == 2


def test_eval_spherical(capsys):
    coeffs = ["2", "-k", "0.5", "-0.5k", "0.375", "-0.375k"]
    cfg = json.dumps({"algebra": "H", "center": "k", "coeffs": coeffs})
    code, out, _ = run(["eval-spherical", "--config", cfg, "--points", '["j"]'], capsys)
    assert code == 0
    res = json.loads(out)["results"][0]
    # j lies on the sphere of k: the value is 1 - j k = 1 - i
    assert np.allclose(res["value"], [1, -1, 0, 0], atol=1e-15)


def test_radius(capsys):
    cfg = json.dumps({"coeffs": [2.0 ** n for n in range(40)]})
    code, out, _ = run(["radius", "--algebra", "C", "--config", cfg], capsys)
    assert code == 0
    assert json.loads(out)["R"] == pytest.approx(0.5)


def test_verify_subset(capsys):
    code, out, _ = run(["verify", "--samples", "200", "--only", "anti_involution", "sto_inequality"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("PASS algebra.anti_involution")
    assert lines[-1] == "2/2 properties passed"


def test_verify_failure_exit_code(capsys, monkeypatch):
    from hyperseries import verify

    monkeypatch.setitem(verify.PROPERTIES, "always_fails", ("test", lambda rng, n: (1, 1, 1.0)))
    code, out, _ = run(["verify", "--only", "always_fails"], capsys)
    assert code == 3
    assert out.startswith("FAIL test.always_fails")


@pytest.mark.parametrize("argv", [
    ["metric", "--algebra", "H", "--points", "not json"],
    ["metric", "--algebra", "H", "--points", '["i", "j", "k"]'],
    ["coeffs", "--config", '{"algebra": "H"}'],
    ["boundary"],
    ["boundary", "--cassini", "w=i", "r=-1"],
    ["eval-power", "--config", '{"algebra": "H", "center": "0", "coeffs": ["1"]}', "--order", "4",
     "--points", '["0.1"]'],
    ["metric", "--algebra", "Z", "--points", '["i", "j"]'],
    ["verify", "--only", "no_such_property"],
    ["bogus-command"],
])
def test_input_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 1
    assert err


def test_out_file_and_determinism(tmp_path, capsys):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    for p in (p1, p2):
        assert main(["coeffs", "--config", EXAMPLE, "--method", "contour", "--order", "4", "--out", str(p)]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    assert json.loads(p1.read_text())["method"] == "contour"


def test_verify_output_byte_identical():
    cmd = [sys.executable, "-m", "hyperseries", "verify", "--samples", "100", "--seed", "7",
           "--only", "cone_roundtrip", "delta_norm_identity", "three_way_agreement"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
    assert a.count(b"PASS") == 3


def test_config_from_file(tmp_path, capsys):
    p = tmp_path / "cfg.json"
    p.write_text(EXAMPLE)
    code, out, _ = run(["coeffs", "--config", str(p), "--order", "1"], capsys)
    assert code == 0
    assert json.loads(out)["coefficients"][0] == [2, 0, 0, 0]
